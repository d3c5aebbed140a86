use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagrams::{AlgebraKind, Object, Orient};
use crate::error::{Error, Result};

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn transpose(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition((0..width).map(|c| self.0.iter().filter(|&&p| p > c).count()).collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let body: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// `"2,1"`, `"(2,1)"`, `""` or `"∅"`.
    fn from_str(s: &str) -> Result<Partition> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.is_empty() || t == "∅" || t == "0" {
            return Ok(Partition::empty());
        }
        let parts: std::result::Result<Vec<usize>, _> = t.split(',').map(|x| x.trim().parse::<usize>()).collect();
        let parts = parts.map_err(|e| Error::Parse(format!("partition {s:?}: {e}")))?;
        let p = Partition::new(parts.clone());
        if p.0 != parts {
            return Err(Error::Parse(format!("partition {s:?} is not weakly decreasing and positive")));
        }
        Ok(p)
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// A simple-module label: one partition for Brauer-type algebras, a pair for
/// walled ones. `object` is the object the label lives at.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Label {
    pub parts: Vec<Partition>,
    pub object: usize,
}

impl Label {
    pub fn size(&self) -> usize {
        self.parts.iter().map(Partition::size).sum()
    }

    /// Strict order: `self < other` iff `|other| < |self|`.
    pub fn less_than(&self, other: &Label) -> bool {
        other.size() < self.size()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parts.as_slice() {
            [p] => write!(f, "{p}"),
            ps => {
                let body: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "({})", body.join(","))
            }
        }
    }
}

/// The labels of `kind`, largest object first. A non-extended algebra shares
/// the labels of its extension; `object` then indexes the extension's objects.
pub fn labels(kind: AlgebraKind) -> Vec<Label> {
    let mut out = Vec::new();
    for (object, o) in kind.extended().objects().iter().enumerate() {
        match o {
            Object::Points(k) => {
                out.extend(partitions(*k).into_iter().map(|p| Label { parts: vec![p], object }));
            }
            Object::Word(w) => {
                let down = w.iter().filter(|x| **x == Orient::Down).count();
                let up = w.len() - down;
                for l in partitions(down) {
                    for m in partitions(up) {
                        out.push(Label { parts: vec![l.clone(), m], object });
                    }
                }
            }
        }
    }
    out
}

/// Parse a label for `kind`: `"2,1"` for Brauer types, `"1|1"` or `"1|"`
/// for walled ones.
pub fn parse_label(kind: AlgebraKind, s: &str) -> Result<Label> {
    let parts: Vec<Partition> = if kind.is_walled() {
        let (l, r) = s.split_once('|').ok_or_else(|| Error::Parse(format!("walled label {s:?} needs the form λ|μ")))?;
        vec![l.parse()?, r.parse()?]
    } else {
        vec![s.parse()?]
    };
    labels(kind)
        .into_iter()
        .find(|l| l.parts == parts)
        .ok_or_else(|| Error::Label(format!("{s:?} is not a label of {kind}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(partitions(3)[0], Partition::new(vec![3]));
    }

    #[test]
    fn transpose_is_an_involution() {
        for n in 0..7 {
            for p in partitions(n) {
                assert_eq!(p.transpose().transpose(), p);
                assert_eq!(p.transpose().size(), n);
            }
        }
        assert_eq!(Partition::new(vec![2, 1, 1]).transpose(), Partition::new(vec![3, 1]));
    }

    #[test]
    fn label_sets() {
        assert_eq!(labels(AlgebraKind::BrauerC { r: 2 }).len(), 3);
        assert_eq!(labels(AlgebraKind::BrauerC { r: 3 }).len(), 4);
        assert_eq!(labels(AlgebraKind::Brauer { r: 2 }).len(), 3);
        let w = labels(AlgebraKind::WalledC { r: 1, s: 1 });
        let shown: Vec<String> = w.iter().map(|l| l.to_string()).collect();
        assert_eq!(shown, vec!["((1),(1))", "(∅,∅)"]);
    }

    #[test]
    fn order_puts_largest_partitions_lowest() {
        let l = labels(AlgebraKind::BrauerC { r: 2 });
        let empty = l.iter().find(|x| x.size() == 0).unwrap();
        let two = l.iter().find(|x| x.size() == 2).unwrap();
        assert!(two.less_than(empty));
        assert!(!empty.less_than(two));
        assert!(!two.less_than(two));
    }

    #[test]
    fn parsing() {
        assert_eq!("2,1".parse::<Partition>().unwrap(), Partition::new(vec![2, 1]));
        assert_eq!("∅".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        let l = parse_label(AlgebraKind::WalledC { r: 1, s: 1 }, "|").unwrap();
        assert_eq!(l.object, 1);
        assert!(parse_label(AlgebraKind::BrauerC { r: 2 }, "3").is_err());
    }
}
