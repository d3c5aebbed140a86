//! Graded index spaces: super vector spaces, tensor products of them and
//! their duals, and direct sums of such tensor products.

use serde::{Deserialize, Serialize};

use super::field::Parity;
use crate::error::{Error, Result};

/// A super vector space with `even` even basis vectors followed by `odd` odd ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SuperSpace {
    pub even: usize,
    pub odd: usize,
}

impl SuperSpace {
    pub fn new(even: usize, odd: usize) -> SuperSpace {
        SuperSpace { even, odd }
    }

    pub fn dim(&self) -> usize {
        self.even + self.odd
    }

    pub fn sdim(&self) -> i64 {
        self.even as i64 - self.odd as i64
    }

    /// Parity `[i]` of the 0-based basis index `i`.
    pub fn parity(&self, i: usize) -> Parity {
        if i < self.even {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl std::fmt::Display for SuperSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}|{})", self.even, self.odd)
    }
}

/// A tensor factor: `V` itself or its dual `W = V*`. Dual basis vectors carry
/// the parity of the vector they pair with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub space: SuperSpace,
    pub dual: bool,
}

impl Factor {
    pub fn plain(space: SuperSpace) -> Factor {
        Factor { space, dual: false }
    }

    pub fn dual(space: SuperSpace) -> Factor {
        Factor { space, dual: true }
    }
}

/// An ordered tensor product of factors, flattened row-major (first factor
/// most significant). The empty product is the ground field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TensorSpace {
    factors: Vec<Factor>,
}

impl TensorSpace {
    pub fn new(factors: Vec<Factor>) -> TensorSpace {
        TensorSpace { factors }
    }

    pub fn ground() -> TensorSpace {
        TensorSpace { factors: Vec::new() }
    }

    pub fn power(space: SuperSpace, r: usize) -> TensorSpace {
        TensorSpace { factors: vec![Factor::plain(space); r] }
    }

    /// `V^{⊗r} ⊗ W^{⊗s}`.
    pub fn mixed(space: SuperSpace, r: usize, s: usize) -> TensorSpace {
        let mut factors = vec![Factor::plain(space); r];
        factors.extend(std::iter::repeat_n(Factor::dual(space), s));
        TensorSpace { factors }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.space.dim()).product()
    }

    pub fn concat(&self, other: &TensorSpace) -> TensorSpace {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        TensorSpace { factors }
    }

    /// Multi-index of a flat index.
    pub fn split(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, f) in out.iter_mut().zip(&self.factors).rev() {
            let d = f.space.dim();
            *slot = flat % d;
            flat /= d;
        }
        out
    }

    pub fn join(&self, multi: &[usize]) -> usize {
        multi
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&i, f)| acc * f.space.dim() + i)
    }

    pub fn parity_of_multi(&self, multi: &[usize]) -> Parity {
        multi
            .iter()
            .zip(&self.factors)
            .fold(Parity::Even, |acc, (&i, f)| acc + f.space.parity(i))
    }

    pub fn parity(&self, flat: usize) -> Parity {
        let mut flat = flat;
        let mut p = Parity::Even;
        for f in self.factors.iter().rev() {
            let d = f.space.dim();
            p = p + f.space.parity(flat % d);
            flat /= d;
        }
        p
    }
}

/// A direct sum of tensor spaces, flattened by concatenation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexSpace {
    summands: Vec<TensorSpace>,
    offsets: Vec<usize>,
    dim: usize,
}

impl IndexSpace {
    pub fn new(summands: Vec<TensorSpace>) -> IndexSpace {
        let mut offsets = Vec::with_capacity(summands.len());
        let mut dim = 0;
        for s in &summands {
            offsets.push(dim);
            dim += s.dim();
        }
        IndexSpace { summands, offsets, dim }
    }

    pub fn single(space: TensorSpace) -> IndexSpace {
        IndexSpace::new(vec![space])
    }

    /// A purely even space of the given dimension (ungraded modules).
    pub fn even(dim: usize) -> IndexSpace {
        IndexSpace::single(TensorSpace::new(vec![Factor::plain(SuperSpace::new(dim, 0))]))
    }

    pub fn ground() -> IndexSpace {
        IndexSpace::single(TensorSpace::ground())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn summands(&self) -> &[TensorSpace] {
        &self.summands
    }

    pub fn offset(&self, summand: usize) -> usize {
        self.offsets[summand]
    }

    pub fn as_single(&self) -> Option<&TensorSpace> {
        match self.summands.as_slice() {
            [only] => Some(only),
            _ => None,
        }
    }

    /// Summand index and local index of a flat index.
    pub fn locate(&self, flat: usize) -> (usize, usize) {
        let s = self.offsets.partition_point(|&o| o <= flat) - 1;
        (s, flat - self.offsets[s])
    }

    pub fn parity(&self, flat: usize) -> Parity {
        let (s, local) = self.locate(flat);
        self.summands[s].parity(local)
    }

    pub fn parities(&self) -> Vec<Parity> {
        (0..self.dim).map(|i| self.parity(i)).collect()
    }

    /// Distributed tensor product; summand `(i, j)` appears in lexicographic order.
    pub fn tensor(&self, other: &IndexSpace) -> IndexSpace {
        let mut summands = Vec::new();
        for a in &self.summands {
            for b in &other.summands {
                summands.push(a.concat(b));
            }
        }
        IndexSpace::new(summands)
    }

    /// Flat index in `self ⊗ other` of the pair of flat indices `(a, b)`.
    pub fn tensor_index(&self, other: &IndexSpace, a: usize, b: usize) -> usize {
        let (sa, la) = self.locate(a);
        let (sb, lb) = other.locate(b);
        let mut offset = 0;
        for (i, x) in self.summands.iter().enumerate() {
            for (j, y) in other.summands.iter().enumerate() {
                if (i, j) == (sa, sb) {
                    return offset + la * y.dim() + lb;
                }
                offset += x.dim() * y.dim();
            }
        }
        unreachable!("indices located inside their spaces")
    }

    pub fn check_same(&self, other: &IndexSpace, what: &str) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Shape(format!(
                "{what}: dimensions {} and {} differ",
                self.dim, other.dim
            )));
        }
        Ok(())
    }
}
