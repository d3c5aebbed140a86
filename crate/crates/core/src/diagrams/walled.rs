//! Oriented (walled) Brauer diagrams on words in `∨` (the space) and `∧` (its dual).

use serde::{Deserialize, Serialize};

use super::brauer::{enumerate_diagrams, BrauerDiagram};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orient {
    /// `∨`, interpreted as `V`.
    Down,
    /// `∧`, interpreted as `W = V*`.
    Up,
}

impl Orient {
    pub fn symbol(self) -> char {
        match self {
            Orient::Down => 'v',
            Orient::Up => '^',
        }
    }
}

pub fn word(r: usize, s: usize) -> Vec<Orient> {
    let mut w = vec![Orient::Down; r];
    w.extend(std::iter::repeat_n(Orient::Up, s));
    w
}

pub fn render_word(w: &[Orient]) -> String {
    w.iter().map(|o| o.symbol()).collect()
}

pub fn parse_word(s: &str) -> Result<Vec<Orient>> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            'v' | 'V' | '∨' => Ok(Orient::Down),
            '^' | 'w' | 'W' | '∧' => Ok(Orient::Up),
            _ => Err(Error::Parse(format!("`{c}` is not an orientation symbol"))),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WalledDiagram {
    bottom_word: Vec<Orient>,
    top_word: Vec<Orient>,
    diagram: BrauerDiagram,
}

/// Whether every pair joins matching orientations through the diagram, or
/// opposite orientations on the same side.
pub fn compatible(bottom_word: &[Orient], top_word: &[Orient], d: &BrauerDiagram) -> bool {
    if d.bottom() != bottom_word.len() || d.top() != top_word.len() {
        return false;
    }
    d.through_strands().iter().all(|&(b, t)| bottom_word[b] == top_word[t])
        && d.caps().iter().all(|&(a, b)| bottom_word[a] != bottom_word[b])
        && d.cups().iter().all(|&(a, b)| top_word[a] != top_word[b])
}

impl WalledDiagram {
    pub fn new(bottom_word: Vec<Orient>, top_word: Vec<Orient>, diagram: BrauerDiagram) -> Result<WalledDiagram> {
        if !compatible(&bottom_word, &top_word, &diagram) {
            return Err(Error::Shape(format!(
                "diagram is not orientation compatible with {} -> {}",
                render_word(&bottom_word),
                render_word(&top_word)
            )));
        }
        Ok(WalledDiagram { bottom_word, top_word, diagram })
    }

    pub fn identity(w: &[Orient]) -> WalledDiagram {
        WalledDiagram { bottom_word: w.to_vec(), top_word: w.to_vec(), diagram: BrauerDiagram::identity(w.len()) }
    }

    pub fn bottom_word(&self) -> &[Orient] {
        &self.bottom_word
    }

    pub fn top_word(&self) -> &[Orient] {
        &self.top_word
    }

    pub fn diagram(&self) -> &BrauerDiagram {
        &self.diagram
    }

    pub fn star(&self) -> WalledDiagram {
        WalledDiagram {
            bottom_word: self.top_word.clone(),
            top_word: self.bottom_word.clone(),
            diagram: self.diagram.star(),
        }
    }

    /// Stack `self` on `lower`; returns the loop count and the composite.
    pub fn compose(&self, lower: &WalledDiagram) -> Result<(usize, WalledDiagram)> {
        if self.bottom_word != lower.top_word {
            return Err(Error::ObjectMismatch(format!(
                "words {} and {} differ",
                render_word(&self.bottom_word),
                render_word(&lower.top_word)
            )));
        }
        let (loops, d) = self.diagram.compose(&lower.diagram)?;
        Ok((loops, WalledDiagram { bottom_word: lower.bottom_word.clone(), top_word: self.top_word.clone(), diagram: d }))
    }
}

/// All orientation-compatible diagrams between two words.
pub fn enumerate_walled(bottom_word: &[Orient], top_word: &[Orient]) -> Vec<WalledDiagram> {
    enumerate_diagrams(bottom_word.len(), top_word.len())
        .into_iter()
        .filter(|d| compatible(bottom_word, top_word, d))
        .map(|d| WalledDiagram { bottom_word: bottom_word.to_vec(), top_word: top_word.to_vec(), diagram: d })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn walled_counts() {
        for (r, s) in [(1, 1), (2, 1), (2, 2), (3, 1), (0, 3)] {
            let w = word(r, s);
            assert_eq!(enumerate_walled(&w, &w).len(), factorial(r + s), "r={r} s={s}");
        }
    }

    #[test]
    fn turn_back_squares_to_loop() {
        let w = word(1, 1);
        let all = enumerate_walled(&w, &w);
        assert_eq!(all.len(), 2);
        let id = WalledDiagram::identity(&w);
        let turn = all.into_iter().find(|d| *d != id).unwrap();
        assert_eq!(id.compose(&id).unwrap(), (0, id.clone()));
        assert_eq!(turn.compose(&turn).unwrap(), (1, turn.clone()));
    }

    #[test]
    fn incompatible_rejected() {
        let w = word(2, 0);
        assert!(WalledDiagram::new(w.clone(), w, BrauerDiagram::cup_cap()).is_err());
        assert_eq!(parse_word("v^").unwrap(), word(1, 1));
    }
}
