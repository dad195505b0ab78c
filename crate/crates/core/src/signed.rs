//! Signed permutations (type B), even signed permutations (type D) and
//! their unfoldings.
//!
//! Values and positions range over `±{1..n}` with `w(-i) = -w(i)`, ordered
//! `1 < 2 < .. < n < -n < .. < -2 < -1`. The unfolding of `w` lists
//! `w(1), .., w(n), w(-n), .., w(-1)`; relabelling `-k` as `2n + 1 - k`
//! turns it into an ordinary permutation of `{1..2n}`.

use std::cmp::Ordering;
use std::fmt;

use crate::element::Family;
use crate::error::{Error, Result};
use crate::notation::format_window;
use crate::perm::{Perm, Side};

/// Rank of a signed value in the order on `±{1..n}`, counted from 0.
/// Doubles as the index of that value's slot in an unfolding.
#[inline]
pub(crate) fn pm_index(v: i32, n: usize) -> usize {
    if v > 0 {
        v as usize - 1
    } else {
        (2 * n as i32 + v) as usize
    }
}

#[inline]
pub(crate) fn pm_value(index: usize, n: usize) -> i32 {
    if index < n {
        index as i32 + 1
    } else {
        index as i32 - 2 * n as i32
    }
}

#[inline]
pub(crate) fn in_pm_range(v: i32, n: usize) -> bool {
    v != 0 && v.unsigned_abs() as usize <= n
}

/// Compares two elements of `±{1..n}` in the order
/// `1 < .. < n < -n < .. < -1`.
pub fn cmp_pm(a: i32, b: i32, n: usize) -> Result<Ordering> {
    for v in [a, b] {
        if !in_pm_range(v, n) {
            return Err(Error::ValueOutOfRange { value: v, rank: n });
        }
    }
    Ok(pm_index(a, n).cmp(&pm_index(b, n)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A signed permutation, i.e. an element of `B_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    window: Vec<i32>,
}

impl SignedPerm {
    pub fn new(window: Vec<i32>) -> Result<Self> {
        let n = window.len();
        if n == 0 {
            return Err(Error::InvalidWindow("empty window".into()));
        }
        let mut seen = vec![false; n];
        for &v in &window {
            let a = v.unsigned_abs() as usize;
            if v == 0 || a > n || std::mem::replace(&mut seen[a - 1], true) {
                return Err(Error::InvalidWindow(format!(
                    "absolute values of {} are not a permutation of 1..={n}",
                    format_window(&window)
                )));
            }
        }
        Ok(SignedPerm { window })
    }

    pub(crate) fn from_trusted(window: Vec<i32>) -> Self {
        debug_assert!(SignedPerm::new(window.clone()).is_ok());
        SignedPerm { window }
    }

    pub fn identity(n: usize) -> Self {
        SignedPerm {
            window: (1..=n as i32).collect(),
        }
    }

    /// The type-B generator `s_i`; `s_n` negates the last entry.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        SignedPerm::identity(n).act(i, Side::Right)
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

    /// `w(p)` for a signed position `p`.
    pub fn at(&self, p: i32) -> i32 {
        if p > 0 {
            self.window[p as usize - 1]
        } else {
            -self.window[(-p) as usize - 1]
        }
    }

    /// Signed position `p` with `w(p) = value`.
    pub fn position_of(&self, value: i32) -> i32 {
        let p = self
            .window
            .iter()
            .position(|&v| v.abs() == value.abs())
            .expect("value in range") as i32
            + 1;
        if self.window[p as usize - 1] == value {
            p
        } else {
            -p
        }
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().zip(1..).all(|(&v, i)| v == i)
    }

    pub fn negative_count(&self) -> usize {
        self.window.iter().filter(|&&v| v < 0).count()
    }

    pub fn parity(&self) -> Parity {
        if self.negative_count().is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn compose(&self, other: &SignedPerm) -> Result<SignedPerm> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(SignedPerm {
            window: other.window.iter().map(|&v| self.at(v)).collect(),
        })
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut inv = vec![0; self.rank()];
        for (i, &v) in self.window.iter().enumerate() {
            let p = i as i32 + 1;
            inv[v.unsigned_abs() as usize - 1] = if v > 0 { p } else { -p };
        }
        SignedPerm { window: inv }
    }

    pub fn unfold(&self) -> Unfolded {
        let mut entries = self.window.clone();
        entries.extend(self.window.iter().rev().map(|v| -v));
        Unfolded { entries }
    }

    /// Folds a length-`2n` sequence back to its first half after checking
    /// anti-symmetry.
    pub fn fold(entries: &[i32]) -> Result<SignedPerm> {
        Unfolded::from_entries(entries.to_vec()).map(|u| u.fold())
    }

    /// Type-B generator action. `s_i` (`i < n`) is realised on the unfolding
    /// as `s'_i s'_{2n-i}` and `s_n` as `s'_n`.
    pub fn act(&self, i: usize, side: Side) -> Result<SignedPerm> {
        let n = self.rank();
        if i == 0 || i > n {
            return Err(Error::GeneratorOutOfRange {
                family: Family::B,
                rank: n,
                index: i,
            });
        }
        let mut big = self.unfold().normalize();
        big = big.act(i, side)?;
        if i < n {
            big = big.act(2 * n - i, side)?;
        }
        Ok(Unfolded::denormalize(&big)?.fold())
    }

    /// Applies `w` entrywise to a list of signed values.
    pub fn apply(&self, values: &[i32]) -> Vec<i32> {
        values.iter().map(|&v| self.at(v)).collect()
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_window(&self.window))
    }
}

/// A signed permutation with an even number of negative entries, i.e. an
/// element of `D_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvenSignedPerm(SignedPerm);

impl EvenSignedPerm {
    pub fn new(window: Vec<i32>) -> Result<Self> {
        Self::from_signed(SignedPerm::new(window)?)
    }

    pub fn from_signed(w: SignedPerm) -> Result<Self> {
        match w.parity() {
            Parity::Even => Ok(EvenSignedPerm(w)),
            Parity::Odd => Err(Error::OddParity(w.to_string())),
        }
    }

    pub(crate) fn from_trusted(window: Vec<i32>) -> Self {
        let w = SignedPerm::from_trusted(window);
        debug_assert_eq!(w.parity(), Parity::Even);
        EvenSignedPerm(w)
    }

    pub fn identity(n: usize) -> Self {
        EvenSignedPerm(SignedPerm::identity(n))
    }

    /// The type-D generator `s_i`; `s_n` sends `n-1` to `-n` and `n` to
    /// `-(n-1)`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        EvenSignedPerm::identity(n).act(i, Side::Right)
    }

    pub fn as_signed(&self) -> &SignedPerm {
        &self.0
    }

    pub fn into_signed(self) -> SignedPerm {
        self.0
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn window(&self) -> &[i32] {
        self.0.window()
    }

    pub fn unfold(&self) -> Unfolded {
        self.0.unfold()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn compose(&self, other: &EvenSignedPerm) -> Result<EvenSignedPerm> {
        self.0.compose(&other.0).map(EvenSignedPerm)
    }

    pub fn inverse(&self) -> EvenSignedPerm {
        EvenSignedPerm(self.0.inverse())
    }

    /// Type-D generator action.
    ///
    /// For `i < n` this is the type-A rule. `s_n` on the left swaps the
    /// values `n-1` and `n` and flips both signs; on the right it swaps
    /// positions `n-1` and `n` and flips the signs there.
    pub fn act(&self, i: usize, side: Side) -> Result<EvenSignedPerm> {
        let n = self.rank();
        if i == 0 || i > n || n < 2 {
            return Err(Error::GeneratorOutOfRange {
                family: Family::D,
                rank: n,
                index: i,
            });
        }
        let mut window = self.0.window.clone();
        match side {
            Side::Left => {
                let (a, b) = (i as i32 - (i == n) as i32, i as i32 + (i < n) as i32);
                let flip = if i == n { -1 } else { 1 };
                for v in window.iter_mut() {
                    let s = v.signum();
                    if v.abs() == a {
                        *v = s * flip * b;
                    } else if v.abs() == b {
                        *v = s * flip * a;
                    }
                }
            }
            Side::Right => {
                let p = if i == n { n - 2 } else { i - 1 };
                window.swap(p, p + 1);
                if i == n {
                    window[p] = -window[p];
                    window[p + 1] = -window[p + 1];
                }
            }
        }
        Ok(EvenSignedPerm(SignedPerm { window }))
    }
}

impl fmt::Display for EvenSignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl AsRef<SignedPerm> for EvenSignedPerm {
    fn as_ref(&self) -> &SignedPerm {
        &self.0
    }
}

/// The unfolding of a signed permutation: `2n` entries at positions
/// `1, .., n, -n, .., -1`, where the entry at a position is the negation of
/// the entry at the mirrored position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Unfolded {
    entries: Vec<i32>,
}

impl Unfolded {
    pub fn from_entries(entries: Vec<i32>) -> Result<Self> {
        let len = entries.len();
        if len == 0 || !len.is_multiple_of(2) {
            return Err(Error::MalformedUnfolding(format!(
                "{} has odd or zero length",
                format_window(&entries)
            )));
        }
        let n = len / 2;
        let mut seen = vec![false; len];
        for &v in &entries {
            if !in_pm_range(v, n) || std::mem::replace(&mut seen[pm_index(v, n)], true) {
                return Err(Error::MalformedUnfolding(format!(
                    "{} is not a permutation of ±1..={n}",
                    format_window(&entries)
                )));
            }
        }
        for p in 0..n {
            if entries[len - 1 - p] != -entries[p] {
                return Err(Error::MalformedUnfolding(format!(
                    "{} is not anti-symmetric at positions {} and {}",
                    format_window(&entries),
                    p + 1,
                    -(p as i32 + 1)
                )));
            }
        }
        Ok(Unfolded { entries })
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn fold(&self) -> SignedPerm {
        SignedPerm {
            window: self.entries[..self.rank()].to_vec(),
        }
    }

    /// Relabels `-k` as `2n + 1 - k`, giving a permutation of `{1..2n}`.
    pub fn normalize(&self) -> Perm {
        let n = self.rank();
        Perm::from_trusted(
            self.entries
                .iter()
                .map(|&v| pm_index(v, n) as i32 + 1)
                .collect(),
        )
    }

    pub fn denormalize(p: &Perm) -> Result<Unfolded> {
        let len = p.rank();
        if !len.is_multiple_of(2) {
            return Err(Error::MalformedUnfolding(format!(
                "{p} has odd length and is not a normalized unfolding"
            )));
        }
        let n = len / 2;
        Unfolded::from_entries(
            p.window()
                .iter()
                .map(|&v| pm_value(v as usize - 1, n))
                .collect(),
        )
    }
}

impl fmt::Display for Unfolded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_window(&self.entries))
    }
}
