//! Type-A permutations in one-line notation and words in simple generators.
//!
//! Products follow `(uv)(i) = u(v(i))`. A left action by `s_i` exchanges the
//! values `i` and `i+1`; a right action exchanges the entries at positions
//! `i` and `i+1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::notation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A permutation of `{1..n}` stored as its window `w(1) .. w(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    window: Vec<i32>,
}

impl Perm {
    pub fn new(window: Vec<i32>) -> Result<Self> {
        let n = window.len();
        if n == 0 {
            return Err(Error::InvalidWindow("empty window".into()));
        }
        let mut seen = vec![false; n];
        for &v in &window {
            if v < 1 || v as usize > n {
                return Err(Error::InvalidWindow(format!(
                    "{} is not a permutation of 1..={n}",
                    notation::format_window(&window)
                )));
            }
            if std::mem::replace(&mut seen[v as usize - 1], true) {
                return Err(Error::InvalidWindow(format!(
                    "{} repeats {v}",
                    notation::format_window(&window)
                )));
            }
        }
        Ok(Perm { window })
    }

    pub(crate) fn from_trusted(window: Vec<i32>) -> Self {
        debug_assert!(Perm::new(window.clone()).is_ok());
        Perm { window }
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            window: (1..=n as i32).collect(),
        }
    }

    /// The simple transposition `s_i`, `1 <= i < n`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        Perm::identity(n).act(i, Side::Right)
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    pub fn into_window(self) -> Vec<i32> {
        self.window
    }

    /// `w(i)` for a 1-based position.
    pub fn at(&self, i: usize) -> i32 {
        self.window[i - 1]
    }

    /// 1-based position holding `value`.
    pub fn position_of(&self, value: i32) -> usize {
        self.window
            .iter()
            .position(|&v| v == value)
            .expect("value in range")
            + 1
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().zip(1..).all(|(&v, i)| v == i)
    }

    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(Perm {
            window: other.window.iter().map(|&v| self.at(v as usize)).collect(),
        })
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.rank()];
        for (i, &v) in self.window.iter().enumerate() {
            inv[v as usize - 1] = i as i32 + 1;
        }
        Perm { window: inv }
    }

    /// Coxeter length, computed as the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.window;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn act(&self, i: usize, side: Side) -> Result<Perm> {
        let n = self.rank();
        if i == 0 || i >= n {
            return Err(Error::GeneratorOutOfRange {
                family: crate::Family::A,
                rank: n,
                index: i,
            });
        }
        let mut window = self.window.clone();
        match side {
            Side::Right => window.swap(i - 1, i),
            Side::Left => {
                let (a, b) = (i as i32, i as i32 + 1);
                for v in window.iter_mut() {
                    if *v == a {
                        *v = b;
                    } else if *v == b {
                        *v = a;
                    }
                }
            }
        }
        Ok(Perm { window })
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&notation::format_window(&self.window))
    }
}

/// A word `s_{a_1} s_{a_2} .. s_{a_k}` in the simple generators, stored as
/// the 1-based generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

impl From<Vec<usize>> for Word {
    fn from(letters: Vec<usize>) -> Self {
        Word(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        for s in &self.0 {
            write!(f, "s_{s}")?;
        }
        Ok(())
    }
}
