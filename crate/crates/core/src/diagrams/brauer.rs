//! Brauer diagrams: perfect matchings of `bottom + top` dots.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// A perfect matching of `bottom` dots `B1..Bi` and `top` dots `T1..Tk`.
/// Internally dots are numbered `0..i` (bottom) then `i..i+k` (top).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BrauerDiagram {
    bottom: usize,
    top: usize,
    partner: Vec<usize>,
}

/// Where a dot sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dot {
    Bottom(usize),
    Top(usize),
}

impl BrauerDiagram {
    /// Checked constructor from a partner array.
    pub fn from_partner(bottom: usize, top: usize, partner: Vec<usize>) -> Result<BrauerDiagram> {
        let n = bottom + top;
        if partner.len() != n {
            return Err(Error::Shape(format!("{} partners for {n} dots", partner.len())));
        }
        for (a, &b) in partner.iter().enumerate() {
            if b >= n || b == a || partner[b] != a {
                return Err(Error::Shape(format!("partner array {partner:?} is not a perfect matching")));
            }
        }
        Ok(BrauerDiagram { bottom, top, partner })
    }

    /// Checked constructor from dot pairs.
    pub fn from_pairs(bottom: usize, top: usize, pairs: &[(Dot, Dot)]) -> Result<BrauerDiagram> {
        let n = bottom + top;
        let mut partner = vec![usize::MAX; n];
        let index = |d: Dot| -> Result<usize> {
            match d {
                Dot::Bottom(b) if b < bottom => Ok(b),
                Dot::Top(t) if t < top => Ok(bottom + t),
                _ => Err(Error::Shape(format!("dot {d:?} outside {bottom} bottom / {top} top dots"))),
            }
        };
        for &(x, y) in pairs {
            let (a, b) = (index(x)?, index(y)?);
            if a == b || partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(Error::Shape(format!("dot used twice in {pairs:?}")));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if partner.contains(&usize::MAX) {
            return Err(Error::Shape("unmatched dot".into()));
        }
        Ok(BrauerDiagram { bottom, top, partner })
    }

    pub fn identity(n: usize) -> BrauerDiagram {
        let partner = (0..n).map(|b| n + b).chain(0..n).collect();
        BrauerDiagram { bottom: n, top: n, partner }
    }

    /// The diagram of a permutation: bottom dot `b` joined to top dot `perm[b]`.
    pub fn permutation(perm: &[usize]) -> BrauerDiagram {
        let n = perm.len();
        let mut partner = vec![0; 2 * n];
        for (b, &t) in perm.iter().enumerate() {
            partner[b] = n + t;
            partner[n + t] = b;
        }
        BrauerDiagram { bottom: n, top: n, partner }
    }

    /// The crossing in `End([2])`.
    pub fn crossing() -> BrauerDiagram {
        BrauerDiagram::permutation(&[1, 0])
    }

    /// `[2] -> [0]`.
    pub fn cap() -> BrauerDiagram {
        BrauerDiagram { bottom: 2, top: 0, partner: vec![1, 0] }
    }

    /// `[0] -> [2]`.
    pub fn cup() -> BrauerDiagram {
        BrauerDiagram { bottom: 0, top: 2, partner: vec![1, 0] }
    }

    /// Cup over cap in `End([2])`.
    pub fn cup_cap() -> BrauerDiagram {
        BrauerDiagram { bottom: 2, top: 2, partner: vec![1, 0, 3, 2] }
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn dots(&self) -> usize {
        self.bottom + self.top
    }

    pub fn dot(&self, index: usize) -> Dot {
        if index < self.bottom {
            Dot::Bottom(index)
        } else {
            Dot::Top(index - self.bottom)
        }
    }

    pub fn partner_of(&self, d: Dot) -> Dot {
        let i = match d {
            Dot::Bottom(b) => b,
            Dot::Top(t) => self.bottom + t,
        };
        self.dot(self.partner[i])
    }

    pub fn partner_array(&self) -> &[usize] {
        &self.partner
    }

    /// Pairs `(a, b)` with `a < b` in dot order (all bottoms before tops), sorted.
    pub fn pairs(&self) -> Vec<(Dot, Dot)> {
        (0..self.dots())
            .filter(|&a| a < self.partner[a])
            .map(|a| (self.dot(a), self.dot(self.partner[a])))
            .collect()
    }

    /// Through strands as `(bottom, top)`, sorted by bottom dot.
    pub fn through_strands(&self) -> Vec<(usize, usize)> {
        (0..self.bottom)
            .filter(|&b| self.partner[b] >= self.bottom)
            .map(|b| (b, self.partner[b] - self.bottom))
            .collect()
    }

    /// Bottom-bottom pairs `(a, b)`, `a < b`, sorted.
    pub fn caps(&self) -> Vec<(usize, usize)> {
        (0..self.bottom).filter(|&b| self.partner[b] < self.bottom && b < self.partner[b]).map(|b| (b, self.partner[b])).collect()
    }

    /// Top-top pairs `(a, b)`, `a < b`, sorted.
    pub fn cups(&self) -> Vec<(usize, usize)> {
        (0..self.top)
            .filter(|&t| {
                let p = self.partner[self.bottom + t];
                p >= self.bottom && t < p - self.bottom
            })
            .map(|t| (t, self.partner[self.bottom + t] - self.bottom))
            .collect()
    }

    pub fn through_count(&self) -> usize {
        self.through_strands().len()
    }

    pub fn has_cups(&self) -> bool {
        !self.cups().is_empty()
    }

    pub fn has_caps(&self) -> bool {
        !self.caps().is_empty()
    }

    /// Crossings in the drawing with straight chords, bottom dots left to
    /// right and top dots right to left around the boundary.
    pub fn crossing_number(&self) -> usize {
        let (i, k) = (self.bottom, self.top);
        let pos = |x: usize| if x < i { x } else { i + k - 1 - (x - i) };
        let chords: Vec<(usize, usize)> = (0..i + k)
            .filter(|&x| x < self.partner[x])
            .map(|x| {
                let (a, b) = (pos(x), pos(self.partner[x]));
                (a.min(b), a.max(b))
            })
            .collect();
        let mut count = 0;
        for (n, &(a, b)) in chords.iter().enumerate() {
            for &(c, d) in &chords[n + 1..] {
                let inside = |z: usize| a < z && z < b;
                if inside(c) != inside(d) {
                    count += 1;
                }
            }
        }
        count
    }

    /// The permutation `b ↦ top partner` if every strand goes through.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        if self.bottom != self.top || self.through_count() != self.bottom {
            return None;
        }
        Some((0..self.bottom).map(|b| self.partner[b] - self.bottom).collect())
    }

    /// Vertical reflection: bottoms and tops exchanged.
    pub fn star(&self) -> BrauerDiagram {
        let (i, k) = (self.bottom, self.top);
        // old top t becomes new bottom t; old bottom b becomes new top b
        let relabel = |x: usize| if x < i { k + x } else { x - i };
        let mut partner = vec![0; i + k];
        for (a, &b) in self.partner.iter().enumerate() {
            partner[relabel(a)] = relabel(b);
        }
        BrauerDiagram { bottom: k, top: i, partner }
    }

    /// Horizontal juxtaposition, `other` to the right.
    pub fn tensor(&self, other: &BrauerDiagram) -> BrauerDiagram {
        let (i1, k1, i2, k2) = (self.bottom, self.top, other.bottom, other.top);
        let left = |x: usize| if x < i1 { x } else { i1 + i2 + (x - i1) };
        let right = |x: usize| if x < i2 { i1 + x } else { i1 + i2 + k1 + (x - i2) };
        let mut partner = vec![0; i1 + i2 + k1 + k2];
        for (a, &b) in self.partner.iter().enumerate() {
            partner[left(a)] = left(b);
        }
        for (a, &b) in other.partner.iter().enumerate() {
            partner[right(a)] = right(b);
        }
        BrauerDiagram { bottom: i1 + i2, top: k1 + k2, partner }
    }

    /// Stack `self` on top of `lower`; returns the number of closed loops and
    /// the resulting diagram.
    pub fn compose(&self, lower: &BrauerDiagram) -> Result<(usize, BrauerDiagram)> {
        if self.bottom != lower.top {
            return Err(Error::ObjectMismatch(format!(
                "upper diagram has {} bottom dots, lower has {} top dots",
                self.bottom, lower.top
            )));
        }
        let (i, j, k) = (lower.bottom, lower.top, self.top);
        let lp = &lower.partner;
        let up = &self.partner;
        let mut seen = vec![false; j];
        let mut partner = vec![usize::MAX; i + k];
        // follow a path that has just entered the middle row at `m`, heading up
        let run_up = |mut m: usize, seen: &mut Vec<bool>| -> usize {
            loop {
                seen[m] = true;
                let y = up[m];
                if y >= j {
                    return i + (y - j);
                }
                seen[y] = true;
                let x = lp[i + y];
                if x < i {
                    return x;
                }
                m = x - i;
            }
        };
        let run_down = |mut m: usize, seen: &mut Vec<bool>| -> usize {
            loop {
                seen[m] = true;
                let x = lp[i + m];
                if x < i {
                    return x;
                }
                seen[x - i] = true;
                let y = up[x - i];
                if y >= j {
                    return i + (y - j);
                }
                m = y;
            }
        };
        for b in 0..i {
            if partner[b] != usize::MAX {
                continue;
            }
            let x = lp[b];
            let end = if x < i { x } else { run_up(x - i, &mut seen) };
            partner[b] = end;
            partner[end] = b;
        }
        for t in 0..k {
            if partner[i + t] != usize::MAX {
                continue;
            }
            let y = up[j + t];
            let end = if y >= j { i + (y - j) } else { run_down(y, &mut seen) };
            partner[i + t] = end;
            partner[end] = i + t;
        }
        let mut loops = 0;
        for start in 0..j {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut m = start;
            loop {
                seen[m] = true;
                let n1 = lp[i + m] - i;
                seen[n1] = true;
                let n2 = up[n1];
                if n2 == start {
                    break;
                }
                m = n2;
            }
        }
        Ok((loops, BrauerDiagram { bottom: i, top: k, partner }))
    }
}

impl Ord for BrauerDiagram {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.bottom, self.top, self.pairs()).cmp(&(other.bottom, other.top, other.pairs()))
    }
}

impl PartialOrd for BrauerDiagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All perfect matchings on `bottom + top` dots, in lexicographic order of
/// their sorted pair lists.
pub fn enumerate_diagrams(bottom: usize, top: usize) -> Vec<BrauerDiagram> {
    let n = bottom + top;
    if n % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut partner = vec![usize::MAX; n];
    fn rec(partner: &mut Vec<usize>, bottom: usize, top: usize, out: &mut Vec<BrauerDiagram>) {
        let Some(a) = partner.iter().position(|&p| p == usize::MAX) else {
            out.push(BrauerDiagram { bottom, top, partner: partner.clone() });
            return;
        };
        for b in a + 1..partner.len() {
            if partner[b] == usize::MAX {
                partner[a] = b;
                partner[b] = a;
                rec(partner, bottom, top, out);
                partner[a] = usize::MAX;
                partner[b] = usize::MAX;
            }
        }
    }
    rec(&mut partner, bottom, top, &mut out);
    out
}

/// `(n-1)!!` for even `n`, 0 for odd `n`.
pub fn matching_count(n: usize) -> usize {
    if n % 2 == 1 {
        return 0;
    }
    (1..n).step_by(2).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_diagrams(1, 1).len(), 1);
        assert_eq!(enumerate_diagrams(2, 2).len(), 3);
        assert_eq!(enumerate_diagrams(3, 1).len(), 3);
        assert_eq!(enumerate_diagrams(3, 3).len(), 15);
        assert_eq!(enumerate_diagrams(2, 1).len(), 0);
        assert_eq!(enumerate_diagrams(0, 0).len(), 1);
        let ds = enumerate_diagrams(3, 3);
        assert!(ds.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn loops_are_counted() {
        let e = BrauerDiagram::cup_cap();
        let (loops, d) = e.compose(&e).unwrap();
        assert_eq!((loops, d), (1, e.clone()));
        let (loops, d) = BrauerDiagram::cap().compose(&BrauerDiagram::cup()).unwrap();
        assert_eq!(loops, 1);
        assert_eq!(d.dots(), 0);
        let id = BrauerDiagram::identity(2);
        assert_eq!(id.compose(&e).unwrap(), (0, e.clone()));
        assert_eq!(e.compose(&id).unwrap(), (0, e));
    }

    #[test]
    fn crossing_squares_to_identity() {
        let x = BrauerDiagram::crossing();
        assert_eq!(x.compose(&x).unwrap(), (0, BrauerDiagram::identity(2)));
        assert_eq!(x.star(), x);
    }

    #[test]
    fn star_of_cap_is_cup() {
        assert_eq!(BrauerDiagram::cap().star(), BrauerDiagram::cup());
        assert_eq!(BrauerDiagram::identity(3).star(), BrauerDiagram::identity(3));
    }

    #[test]
    fn tensor_bookkeeping() {
        let id1 = BrauerDiagram::identity(1);
        assert_eq!(id1.tensor(&id1), BrauerDiagram::identity(2));
        let cc = BrauerDiagram::cap().tensor(&BrauerDiagram::cup());
        assert_eq!((cc.bottom(), cc.top()), (2, 2));
        assert_eq!(cc, BrauerDiagram::cup_cap());
        let sc = id1.tensor(&BrauerDiagram::cap());
        assert_eq!((sc.bottom(), sc.top()), (3, 1));
        assert_eq!(sc.partner_of(Dot::Bottom(1)), Dot::Bottom(2));
        assert_eq!(sc.partner_of(Dot::Bottom(0)), Dot::Top(0));
    }

    #[test]
    fn zigzag_straightens() {
        // (cap ⊗ id) ∘ (id ⊗ cup) = id
        let id1 = BrauerDiagram::identity(1);
        let upper = BrauerDiagram::cap().tensor(&id1);
        let lower = id1.tensor(&BrauerDiagram::cup());
        assert_eq!(upper.compose(&lower).unwrap(), (0, id1));
    }
}
