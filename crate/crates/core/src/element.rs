//! Family-tagged group elements with uniform dispatch.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Perm, Side, Word};
use crate::signed::{EvenSignedPerm, SignedPerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    A,
    B,
    D,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::A, Family::B, Family::D];

    /// Number of simple generators at window length `n`.
    pub fn generator_count(self, n: usize) -> usize {
        match self {
            Family::A => n.saturating_sub(1),
            Family::B | Family::D => n,
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::A | Family::B => 1,
            Family::D => 2,
        }
    }

    pub fn check_rank(self, n: usize) -> Result<()> {
        if n < self.min_rank() {
            return Err(Error::InvalidWindow(format!(
                "{self} needs a window of length at least {}",
                self.min_rank()
            )));
        }
        Ok(())
    }

    /// Group order: `n!`, `2^n n!` or `2^(n-1) n!`.
    pub fn order(self, n: usize) -> u128 {
        let fact: u128 = (1..=n as u128).product();
        match self {
            Family::A => fact,
            Family::B => fact << n,
            Family::D => fact << n.saturating_sub(1),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "a" | "A" => Ok(Family::A),
            "b" | "B" => Ok(Family::B),
            "d" | "D" => Ok(Family::D),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// An element of `S_n`, `B_n` or `D_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    A(Perm),
    B(SignedPerm),
    D(EvenSignedPerm),
}

impl Element {
    pub fn from_window(family: Family, window: Vec<i32>) -> Result<Element> {
        family.check_rank(window.len())?;
        Ok(match family {
            Family::A => Element::A(Perm::new(window)?),
            Family::B => Element::B(SignedPerm::new(window)?),
            Family::D => Element::D(EvenSignedPerm::new(window)?),
        })
    }

    pub(crate) fn from_trusted(family: Family, window: Vec<i32>) -> Element {
        match family {
            Family::A => Element::A(Perm::from_trusted(window)),
            Family::B => Element::B(SignedPerm::from_trusted(window)),
            Family::D => Element::D(EvenSignedPerm::from_trusted(window)),
        }
    }

    pub fn identity(family: Family, n: usize) -> Element {
        match family {
            Family::A => Element::A(Perm::identity(n)),
            Family::B => Element::B(SignedPerm::identity(n)),
            Family::D => Element::D(EvenSignedPerm::identity(n)),
        }
    }

    pub fn generator(family: Family, n: usize, i: usize) -> Result<Element> {
        Element::identity(family, n).act(i, Side::Right)
    }

    pub fn family(&self) -> Family {
        match self {
            Element::A(_) => Family::A,
            Element::B(_) => Family::B,
            Element::D(_) => Family::D,
        }
    }

    pub fn rank(&self) -> usize {
        self.window().len()
    }

    pub fn window(&self) -> &[i32] {
        match self {
            Element::A(w) => w.window(),
            Element::B(w) => w.window(),
            Element::D(w) => w.window(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.window().iter().zip(1..).all(|(&v, i)| v == i)
    }

    pub fn act(&self, i: usize, side: Side) -> Result<Element> {
        Ok(match self {
            Element::A(w) => Element::A(w.act(i, side)?),
            Element::B(w) => Element::B(w.act(i, side)?),
            Element::D(w) => Element::D(w.act(i, side)?),
        })
    }

    pub fn compose(&self, other: &Element) -> Result<Element> {
        Ok(match (self, other) {
            (Element::A(u), Element::A(v)) => Element::A(u.compose(v)?),
            (Element::B(u), Element::B(v)) => Element::B(u.compose(v)?),
            (Element::D(u), Element::D(v)) => Element::D(u.compose(v)?),
            _ => {
                return Err(Error::FamilyMismatch {
                    left: self.family(),
                    right: other.family(),
                })
            }
        })
    }

    pub fn inverse(&self) -> Element {
        match self {
            Element::A(w) => Element::A(w.inverse()),
            Element::B(w) => Element::B(w.inverse()),
            Element::D(w) => Element::D(w.inverse()),
        }
    }

    pub(crate) fn check_same_group(&self, other: &Element) -> Result<()> {
        if self.family() != other.family() {
            return Err(Error::FamilyMismatch {
                left: self.family(),
                right: other.family(),
            });
        }
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::notation::format_window(self.window()))
    }
}

/// Evaluates `s_{a_1} .. s_{a_k}` as a group element, i.e. the identity
/// window acted on by the letters from the right, left to right.
pub fn eval_word(family: Family, n: usize, word: &Word) -> Result<Element> {
    family.check_rank(n)?;
    let max = family.generator_count(n);
    if let Some(&bad) = word.letters().iter().find(|&&s| s == 0 || s > max) {
        return Err(Error::GeneratorOutOfRange {
            family,
            rank: n,
            index: bad,
        });
    }
    word.letters()
        .iter()
        .try_fold(Element::identity(family, n), |w, &s| w.act(s, Side::Right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_word;

    #[test]
    fn type_d_word_example() {
        let word = parse_word("s_1s_2s_1s_3s_5s_3s_2").unwrap();
        let w = eval_word(Family::D, 5, &word).unwrap();
        assert_eq!(w.window(), &[3, -5, 2, 4, -1]);
    }

    #[test]
    fn empty_word_is_identity() {
        for family in Family::ALL {
            assert!(eval_word(family, 4, &Word::empty()).unwrap().is_identity());
        }
    }

    #[test]
    fn invalid_letters() {
        let word = Word::new(vec![1, 4]);
        assert!(eval_word(Family::A, 4, &word).is_err());
        assert!(eval_word(Family::D, 4, &word).is_ok());
        assert!(eval_word(Family::B, 3, &word).is_err());
        assert!(eval_word(Family::D, 4, &Word::new(vec![0])).is_err());
    }

    #[test]
    fn type_b_words_match_unfolded_evaluation() {
        // s_i -> s'_i s'_{2n-i}, s_n -> s'_n inside S_2n.
        let n = 5;
        let word = Word::new(vec![5, 1, 2, 5, 4, 3, 5, 2, 4, 1]);
        let b = eval_word(Family::B, n, &word).unwrap();
        let mut big = Vec::new();
        for &s in word.letters() {
            big.push(s);
            if s < n {
                big.push(2 * n - s);
            }
        }
        let a = eval_word(Family::A, 2 * n, &Word::new(big)).unwrap();
        let Element::A(p) = a else { unreachable!() };
        let folded = crate::signed::Unfolded::denormalize(&p).unwrap().fold();
        assert_eq!(b.window(), folded.window());
    }

    #[test]
    fn orders() {
        assert_eq!(Family::A.order(8), 40320);
        assert_eq!(Family::B.order(3), 48);
        assert_eq!(Family::D.order(4), 192);
        assert_eq!(Family::D.order(6), 23040);
    }

    #[test]
    fn mixed_families_rejected() {
        let a = Element::identity(Family::B, 3);
        let b = Element::identity(Family::D, 3);
        assert!(matches!(a.compose(&b), Err(Error::FamilyMismatch { .. })));
    }
}
