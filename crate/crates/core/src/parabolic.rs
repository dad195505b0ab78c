//! Maximal parabolic decomposition of type-D elements.
//!
//! Every `w` in `D_n` factors as `w = Q_{n-1} Q_{n-2} .. Q_1`, where for
//! `i <= n-2` the factor `Q_i` is a minimal coset representative of
//! `W_{s_i..s_n}` modulo `W_{s_{i+1}..s_n}` and `Q_{n-1}` lies in
//! `W_{s_{n-1}, s_n}`. Representatives come in four shapes:
//!
//! | form | level `i <= n-2`                   | level `n-1`      |
//! |------|------------------------------------|------------------|
//! | 0    | `id`                               | `id`             |
//! | 1    | `s_i .. s_j`                       | `s_{n-1}`        |
//! | 2    | `s_i .. s_{n-2} s_n s_{n-1} .. s_j` | `s_n s_{n-1}`    |
//! | 3    | `s_i .. s_{n-2} s_n`               | `s_n`            |

use std::fmt;

use serde::Serialize;

use crate::element::{eval_word, Element, Family};
use crate::error::{Error, Result};
use crate::hopping::{hop_signed, HopList};
use crate::perm::Word;
use crate::signed::EvenSignedPerm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    /// The identity.
    Identity,
    /// `s_i .. s_j`.
    Chain,
    /// `s_i .. s_{n-2} s_n s_{n-1} .. s_j`.
    Turn,
    /// `s_i .. s_{n-2} s_n`.
    Fork,
}

impl Form {
    pub fn number(self) -> u8 {
        match self {
            Form::Identity => 0,
            Form::Chain => 1,
            Form::Turn => 2,
            Form::Fork => 3,
        }
    }

    pub fn from_number(k: u8) -> Result<Form> {
        match k {
            0 => Ok(Form::Identity),
            1 => Ok(Form::Chain),
            2 => Ok(Form::Turn),
            3 => Ok(Form::Fork),
            _ => Err(Error::MalformedFactor(format!("no form {k}"))),
        }
    }
}

/// One factor `Q_i` of the decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QFactor {
    rank: usize,
    level: usize,
    form: Form,
    j: Option<usize>,
}

impl QFactor {
    pub fn new(rank: usize, level: usize, form: Form, j: Option<usize>) -> Result<QFactor> {
        let bad = |why: &str| {
            Err(Error::MalformedFactor(format!(
                "level {level}, form {}, j {j:?} in D_{rank}: {why}",
                form.number()
            )))
        };
        if rank < 3 {
            return bad("the decomposition needs rank at least 3");
        }
        if level == 0 || level >= rank {
            return bad("level must lie in 1..n-1");
        }
        let wants_j = level <= rank - 2 && matches!(form, Form::Chain | Form::Turn);
        match (wants_j, j) {
            (true, Some(j)) if (level..rank).contains(&j) => {}
            (true, _) => return bad("j must satisfy i <= j <= n-1"),
            (false, Some(_)) => return bad("this form carries no j"),
            (false, None) => {}
        }
        Ok(QFactor {
            rank,
            level,
            form,
            j,
        })
    }

    pub fn identity(rank: usize, level: usize) -> Result<QFactor> {
        QFactor::new(rank, level, Form::Identity, None)
    }

    /// All `2(n-i)+2` representatives at level `i <= n-2`, or the four
    /// elements of `W_{s_{n-1},s_n}` at level `n-1`.
    pub fn candidates(rank: usize, level: usize) -> Result<Vec<QFactor>> {
        let mut out = vec![QFactor::identity(rank, level)?];
        if level == rank - 1 {
            for form in [Form::Chain, Form::Turn, Form::Fork] {
                out.push(QFactor::new(rank, level, form, None)?);
            }
        } else {
            for j in level..rank {
                out.push(QFactor::new(rank, level, Form::Chain, Some(j))?);
            }
            for j in level..rank {
                out.push(QFactor::new(rank, level, Form::Turn, Some(j))?);
            }
            out.push(QFactor::new(rank, level, Form::Fork, None)?);
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn j(&self) -> Option<usize> {
        self.j
    }

    fn top(&self) -> bool {
        self.level == self.rank - 1
    }

    /// The normalised spelling of the factor.
    pub fn word(&self) -> Word {
        let (n, i) = (self.rank, self.level);
        let letters = match (self.form, self.top()) {
            (Form::Identity, _) => vec![],
            (Form::Chain, true) => vec![n - 1],
            (Form::Turn, true) => vec![n, n - 1],
            (Form::Fork, true) => vec![n],
            (Form::Chain, false) => (i..=self.j.unwrap()).collect(),
            (Form::Turn, false) => {
                let mut w: Vec<usize> = (i..=n - 2).collect();
                w.push(n);
                w.extend((self.j.unwrap()..n).rev());
                w
            }
            (Form::Fork, false) => {
                let mut w: Vec<usize> = (i..=n - 2).collect();
                w.push(n);
                w
            }
        };
        Word::new(letters)
    }

    pub fn window(&self) -> EvenSignedPerm {
        match eval_word(Family::D, self.rank, &self.word()).expect("valid factor word") {
            Element::D(w) => w,
            _ => unreachable!(),
        }
    }

    /// Recognises a factor from any spelling of it (for example
    /// `s_1s_2s_3s_4s_5s_3` for the level-1 form-2 factor with `j = 3`).
    pub fn classify(rank: usize, level: usize, word: &Word) -> Result<QFactor> {
        let target = eval_word(Family::D, rank, word)?;
        QFactor::candidates(rank, level)?
            .into_iter()
            .find(|q| q.window().window() == target.window())
            .ok_or_else(|| {
                Error::MalformedFactor(format!(
                    "{word} is not a level-{level} representative in D_{rank}"
                ))
            })
    }

    /// `w * Q` computed by the cyclic-shift and sign-flip rules rather than
    /// letter by letter.
    pub fn act_right(&self, w: &EvenSignedPerm) -> Result<EvenSignedPerm> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                left: w.rank(),
                right: self.rank,
            });
        }
        let n = self.rank;
        let i = self.level;
        let mut win = w.window().to_vec();
        let flip = |win: &mut Vec<i32>, p: usize| win[p - 1] = -win[p - 1];
        match (self.form, self.top()) {
            (Form::Identity, _) => {}
            (Form::Chain, _) => {
                let j = self.j.unwrap_or(n - 1);
                win[i - 1..=j].rotate_left(1);
            }
            (Form::Turn, true) => {
                flip(&mut win, n - 1);
                flip(&mut win, n);
            }
            (Form::Turn, false) => {
                let j = self.j.unwrap();
                win[i - 1..j].rotate_left(1);
                flip(&mut win, j);
                flip(&mut win, n);
            }
            (Form::Fork, _) => {
                win[i - 1..n].rotate_left(1);
                flip(&mut win, n - 1);
                flip(&mut win, n);
            }
        }
        Ok(EvenSignedPerm::from_trusted(win))
    }
}

impl fmt::Display for QFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Q_{} = {} (form {}",
            self.level,
            self.word(),
            self.form.number()
        )?;
        if let Some(j) = self.j {
            write!(f, ", j = {j}")?;
        }
        f.write_str(")")
    }
}

/// The factor's window together with its normalised word.
pub fn realize_q(q: &QFactor) -> (EvenSignedPerm, Word) {
    (q.window(), q.word())
}

/// `w = Q_{n-1} .. Q_1`, stored in that (left-to-right) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    factors: Vec<QFactor>,
}

impl Decomposition {
    pub fn rank(&self) -> usize {
        self.factors[0].rank
    }

    /// Factors from `Q_{n-1}` down to `Q_1`.
    pub fn factors(&self) -> &[QFactor] {
        &self.factors
    }

    /// `Q_level`.
    pub fn factor(&self, level: usize) -> &QFactor {
        &self.factors[self.rank() - 1 - level]
    }

    /// `Q_{n-1} Q_{n-2} .. Q_from`; the identity when `from = n`.
    pub fn prefix(&self, from: usize) -> EvenSignedPerm {
        let n = self.rank();
        let mut acc = EvenSignedPerm::identity(n);
        for level in (from..n).rev() {
            acc = self.factor(level).act_right(&acc).expect("same rank");
        }
        acc
    }

    pub fn product(&self) -> EvenSignedPerm {
        self.prefix(1)
    }

    /// Concatenation of the factor words, `Q_{n-1}` first.
    pub fn word(&self) -> Word {
        self.factors
            .iter()
            .fold(Word::empty(), |acc, q| acc.concat(&q.word()))
    }

    pub fn records(&self) -> Vec<FactorRecord> {
        self.factors
            .iter()
            .map(|q| FactorRecord {
                level: q.level,
                form: q.form.number(),
                j: q.j,
                word: q.word().to_string(),
                window: q.window().window().to_vec(),
            })
            .collect()
    }
}

/// Serialised form of one factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorRecord {
    pub level: usize,
    pub form: u8,
    pub j: Option<usize>,
    pub word: String,
    pub window: Vec<i32>,
}

/// Peels off `Q_1, Q_2, ..` in turn. At level `i` exactly one candidate
/// leaves a residual `r Q_i^{-1}` that fixes `i`; the residual at level
/// `n-1` is matched against the four elements of `W_{s_{n-1},s_n}`.
pub fn decompose_d(w: &EvenSignedPerm) -> Result<Decomposition> {
    let n = w.rank();
    let mut residual = w.clone();
    let mut peeled = Vec::with_capacity(n - 1);
    for level in 1..n {
        let mut found = None;
        for q in QFactor::candidates(n, level)? {
            let rest = residual.compose(&q.window().inverse())?;
            let ok = if level < n - 1 {
                rest.window()[level - 1] == level as i32
            } else {
                rest.is_identity()
            };
            if ok {
                if found.is_some() {
                    return Err(Error::Unsupported(format!(
                        "two level-{level} representatives fit {w}"
                    )));
                }
                found = Some((q, rest));
            }
        }
        let (q, rest) = found.ok_or_else(|| {
            Error::Unsupported(format!("no level-{level} representative fits {w}"))
        })?;
        peeled.push(q);
        residual = rest;
    }
    peeled.reverse();
    Ok(Decomposition { factors: peeled })
}

fn check_factor_rank(q: &QFactor, n: usize) -> Result<()> {
    if q.rank != n {
        return Err(Error::RankMismatch {
            left: q.rank,
            right: n,
        });
    }
    Ok(())
}

/// The hop list `L_i` attached to `Q_i`; empty for form 0.
pub fn l_list(q: &QFactor) -> HopList {
    let n = q.rank as i32;
    let i = q.level as i32;
    let items: Vec<i32> = match (q.form, q.top()) {
        (Form::Identity, _) => vec![],
        (Form::Chain, true) => vec![n],
        (Form::Turn, true) => vec![n, -n],
        (Form::Fork, true) => vec![-n],
        (Form::Chain, false) => (i + 1..=q.j.unwrap() as i32 + 1).collect(),
        (Form::Turn, false) => {
            let j = q.j.unwrap() as i32;
            (i + 1..=n).chain((j + 1..=n).rev().map(|v| -v)).collect()
        }
        (Form::Fork, false) => (i + 1..n).chain([-n]).collect(),
    };
    HopList::new(items).expect("distinct by construction")
}

/// The list `T_i` with `(Q_{n-1}..Q_{i+1}) L_i = (Q_{n-1}..Q_i) T_i`,
/// defined for levels `i <= n-2`. It records where the positions named by
/// `L_i` land after `Q_i` acts on the right.
pub fn t_list(q: &QFactor) -> Result<HopList> {
    if q.top() {
        return Err(Error::MalformedFactor(format!(
            "T lists are defined below level {}",
            q.rank - 1
        )));
    }
    let n = q.rank as i32;
    let i = q.level as i32;
    let items: Vec<i32> = match q.form {
        Form::Identity => vec![],
        Form::Chain => (i..=q.j.unwrap() as i32).collect(),
        Form::Turn => {
            let j = q.j.unwrap() as i32;
            (i..j)
                .chain(j + 1..n)
                .chain([-n, n])
                .chain((j + 1..n).rev().map(|v| -v))
                .collect()
        }
        Form::Fork => (i..n).collect(),
    };
    Ok(HopList::new(items).expect("distinct by construction"))
}

/// `Q_i ⋆ w`, computed as `h_{i,L_i}(Q_i w)`.
pub fn q_star(q: &QFactor, w: &EvenSignedPerm) -> Result<EvenSignedPerm> {
    check_factor_rank(q, w.rank())?;
    let moved = q.window().compose(w)?;
    let hopped = hop_signed(moved.as_signed(), q.level as i32, &l_list(q))?;
    EvenSignedPerm::from_signed(hopped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_word;
    use crate::perm::Side;
    use crate::signed::SignedPerm;

    fn d(w: &[i32]) -> EvenSignedPerm {
        EvenSignedPerm::new(w.to_vec()).unwrap()
    }

    fn l(items: &[i32]) -> HopList {
        HopList::new(items.to_vec()).unwrap()
    }

    fn act_left_word(q: &QFactor, w: &EvenSignedPerm) -> EvenSignedPerm {
        q.word()
            .letters()
            .iter()
            .rev()
            .fold(w.clone(), |acc, &s| acc.act(s, Side::Left).unwrap())
    }

    fn q(level: usize, form: u8, j: Option<usize>) -> QFactor {
        QFactor::new(5, level, Form::from_number(form).unwrap(), j).unwrap()
    }

    #[test]
    fn malformed_factors() {
        assert!(QFactor::new(5, 0, Form::Chain, Some(1)).is_err());
        assert!(QFactor::new(5, 5, Form::Identity, None).is_err());
        assert!(QFactor::new(5, 2, Form::Chain, None).is_err());
        assert!(QFactor::new(5, 2, Form::Chain, Some(1)).is_err());
        assert!(QFactor::new(5, 2, Form::Chain, Some(5)).is_err());
        assert!(QFactor::new(5, 4, Form::Turn, Some(4)).is_err());
        assert!(QFactor::new(5, 2, Form::Fork, Some(3)).is_err());
        assert!(Form::from_number(4).is_err());
    }

    #[test]
    fn words_follow_the_templates() {
        assert_eq!(q(2, 1, Some(4)).word().to_string(), "s_2s_3s_4");
        assert_eq!(q(2, 2, Some(4)).word().to_string(), "s_2s_3s_5s_4");
        assert_eq!(q(1, 2, Some(3)).word().to_string(), "s_1s_2s_3s_5s_4s_3");
        assert_eq!(q(2, 3, None).word().to_string(), "s_2s_3s_5");
        assert_eq!(q(4, 2, None).word().to_string(), "s_5s_4");
        assert_eq!(q(4, 0, None).word().to_string(), "id");
    }

    #[test]
    fn right_actions_of_each_form() {
        let w = d(&[2, -4, -1, 5, 3]);
        assert_eq!(
            q(2, 1, Some(4)).act_right(&w).unwrap(),
            d(&[2, -1, 5, 3, -4])
        );
        assert_eq!(
            q(2, 2, Some(4)).act_right(&w).unwrap(),
            d(&[2, -1, 5, 4, -3])
        );
        assert_eq!(q(2, 3, None).act_right(&w).unwrap(), d(&[2, -1, 5, -3, 4]));
    }

    #[test]
    fn shift_rules_agree_with_words() {
        let w = d(&[2, -4, -1, 5, 3]);
        let v = d(&[-3, 1, -5, 2, 4]);
        for level in 1..5 {
            for f in QFactor::candidates(5, level).unwrap() {
                for x in [&w, &v] {
                    let by_word = x.compose(&f.window()).unwrap();
                    assert_eq!(f.act_right(x).unwrap(), by_word, "{f}");
                }
            }
        }
    }

    #[test]
    fn classify_accepts_alternate_spelling() {
        let f = QFactor::classify(5, 1, &parse_word("s_1s_2s_3s_4s_5s_3").unwrap()).unwrap();
        assert_eq!(f, q(1, 2, Some(3)));
        let f = QFactor::classify(5, 4, &parse_word("s_4s_5").unwrap()).unwrap();
        assert_eq!(f, q(4, 2, None));
        assert!(QFactor::classify(5, 2, &parse_word("s_1").unwrap()).is_err());
    }

    #[test]
    fn worked_decomposition() {
        let w = d(&[2, -4, -1, 5, 3]);
        let dec = decompose_d(&w).unwrap();
        assert_eq!(*dec.factor(4), q(4, 2, None));
        assert_eq!(*dec.factor(3), q(3, 3, None));
        assert_eq!(*dec.factor(2), q(2, 0, None));
        assert_eq!(*dec.factor(1), q(1, 2, Some(3)));
        assert_eq!(dec.product(), w);
        let spelled = eval_word(Family::D, 5, &dec.word()).unwrap();
        assert_eq!(spelled.window(), w.window());
    }

    #[test]
    fn identity_decomposes_trivially() {
        let dec = decompose_d(&EvenSignedPerm::identity(5)).unwrap();
        assert!(dec.factors().iter().all(|f| f.form() == Form::Identity));
    }

    #[test]
    fn l_lists() {
        assert_eq!(l_list(&q(1, 2, Some(3))), l(&[2, 3, 4, 5, -5, -4]));
        assert_eq!(l_list(&q(4, 2, None)), l(&[5, -5]));
        assert_eq!(l_list(&q(4, 1, None)), l(&[5]));
        assert_eq!(l_list(&q(4, 3, None)), l(&[-5]));
        assert_eq!(l_list(&q(1, 3, None)), l(&[2, 3, 4, -5]));
        assert_eq!(l_list(&q(2, 1, Some(3))), l(&[3, 4]));
        assert_eq!(l_list(&q(2, 0, None)), l(&[]));
    }

    #[test]
    fn t_lists() {
        assert_eq!(t_list(&q(2, 1, Some(3))).unwrap(), l(&[2, 3]));
        assert_eq!(t_list(&q(2, 3, None)).unwrap(), l(&[2, 3, 4]));
        assert_eq!(
            t_list(&q(1, 2, Some(1))).unwrap(),
            l(&[2, 3, 4, -5, 5, -4, -3, -2])
        );
        assert_eq!(t_list(&q(1, 2, Some(3))).unwrap(), l(&[1, 2, 4, -5, 5, -4]));
        assert!(t_list(&q(4, 1, None)).is_err());
    }

    #[test]
    fn transported_list_example() {
        let w = d(&[2, -4, -1, 5, 3]);
        let dec = decompose_d(&w).unwrap();
        let moved =
            crate::hopping::apply_to_list(dec.prefix(2).as_signed(), &l_list(dec.factor(1)))
                .unwrap();
        // Q_4 Q_3 Q_2 = [1,2,-4,5,-3] sends L_1 to [2,-4,5,-3,3,-5], which
        // differs from w↖1 only by the adjacent pair ±3. The list
        // [2,-4,-5,3,-3,5] sometimes quoted here hops v elsewhere.
        assert_eq!(dec.prefix(2), d(&[1, 2, -4, 5, -3]));
        assert_eq!(moved, l(&[2, -4, 5, -3, 3, -5]));
        let v = d(&[-4, 3, -5, -1, -2]);
        let expected = d(&[-4, -1, -5, 3, -2]);
        for list in [moved, l(&[2, -4, 5, 3, -3, -5])] {
            let got = hop_signed(v.as_signed(), 1, &list).unwrap();
            assert_eq!(got, *expected.as_signed(), "{list}");
        }
        let quoted = hop_signed(v.as_signed(), 1, &l(&[2, -4, -5, 3, -3, 5])).unwrap();
        assert_eq!(quoted, SignedPerm::new(vec![-4, -1, 3, -5, -2]).unwrap());
    }

    #[test]
    fn q_star_example() {
        let f = QFactor::classify(5, 1, &parse_word("s_1s_2s_3s_5").unwrap()).unwrap();
        let w = d(&[2, -4, -1, 5, 3]);
        assert_eq!(f.window().compose(&w).unwrap(), d(&[3, 5, -2, -1, 4]));
        assert_eq!(act_left_word(&f, &w), d(&[3, 5, -2, -1, 4]));
        assert_eq!(q_star(&f, &w).unwrap(), d(&[3, -1, -2, 5, 4]));
        assert_eq!(q_star(&q(3, 0, None), &w).unwrap(), w);
    }
}
