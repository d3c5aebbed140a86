//! Text and JSON notation for diagrams: `B2->T1, B1-B3, T2-T3`.

use serde::{Deserialize, Serialize};

use super::brauer::{BrauerDiagram, Dot};
use crate::error::{Error, Result};

fn render_dot(d: Dot) -> String {
    match d {
        Dot::Bottom(b) => format!("B{}", b + 1),
        Dot::Top(t) => format!("T{}", t + 1),
    }
}

fn render_pair(a: Dot, b: Dot) -> String {
    let joint = match (a, b) {
        (Dot::Bottom(_), Dot::Top(_)) => "->",
        _ => "-",
    };
    format!("{}{joint}{}", render_dot(a), render_dot(b))
}

pub fn render(d: &BrauerDiagram) -> String {
    d.pairs().into_iter().map(|(a, b)| render_pair(a, b)).collect::<Vec<_>>().join(", ")
}

fn parse_dot(s: &str) -> Result<Dot> {
    let s = s.trim();
    let bad = || Error::Parse(format!("`{s}` is not a dot name like B1 or T3"));
    let (kind, num) = s.split_at_checked(1).ok_or_else(bad)?;
    let n: usize = num.parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    match kind {
        "B" | "b" => Ok(Dot::Bottom(n - 1)),
        "T" | "t" => Ok(Dot::Top(n - 1)),
        _ => Err(bad()),
    }
}

fn parse_pairs(s: &str) -> Result<Vec<(Dot, Dot)>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|tok| {
            let (a, b) = tok
                .split_once("->")
                .or_else(|| tok.split_once('-'))
                .ok_or_else(|| Error::Parse(format!("`{tok}` is not a pair like B1-B2 or B1->T1")))?;
            Ok((parse_dot(a)?, parse_dot(b)?))
        })
        .collect()
}

fn extent(pairs: &[(Dot, Dot)]) -> (usize, usize) {
    let mut bottom = 0;
    let mut top = 0;
    for d in pairs.iter().flat_map(|(a, b)| [a, b]) {
        match *d {
            Dot::Bottom(i) => bottom = bottom.max(i + 1),
            Dot::Top(i) => top = top.max(i + 1),
        }
    }
    (bottom, top)
}

/// Parse a pair list; dot counts are the largest indices mentioned.
pub fn parse(s: &str) -> Result<BrauerDiagram> {
    let pairs = parse_pairs(s)?;
    let (bottom, top) = extent(&pairs);
    BrauerDiagram::from_pairs(bottom, top, &pairs)
}

/// JSON form `{bottom, top, pairs, coeff}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub bottom: usize,
    pub top: usize,
    pub pairs: Vec<String>,
    pub coeff: String,
}

impl DiagramJson {
    pub fn new(d: &BrauerDiagram, coeff: String) -> DiagramJson {
        DiagramJson {
            bottom: d.bottom(),
            top: d.top(),
            pairs: d.pairs().into_iter().map(|(a, b)| render_pair(a, b)).collect(),
            coeff,
        }
    }

    pub fn diagram(&self) -> Result<BrauerDiagram> {
        let pairs = parse_pairs(&self.pairs.join(","))?;
        BrauerDiagram::from_pairs(self.bottom, self.top, &pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let d = parse("B2->T1, B1-B3, T2-T3").unwrap();
        assert_eq!((d.bottom(), d.top()), (3, 3));
        assert_eq!(render(&d), "B1-B3, B2->T1, T2-T3");
        assert_eq!(parse(&render(&d)).unwrap(), d);
        let j = DiagramJson::new(&d, "1".into());
        assert_eq!(j.diagram().unwrap(), d);
        let json = serde_json::to_string(&j).unwrap();
        let back: DiagramJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back, j);
    }

    #[test]
    fn bad_input() {
        assert!(parse("B1-B1").is_err());
        assert!(parse("B1->X2").is_err());
        assert!(parse("B1-B2, B2-T1").is_err());
        assert!(parse("B2-T1").is_err());
        assert_eq!(parse("").unwrap().dots(), 0);
    }
}
