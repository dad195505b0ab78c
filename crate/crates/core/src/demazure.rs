//! Demazure products.
//!
//! [`demazure_oracle`] folds a reduced word of the left factor through
//! `s ⋆ w = sw` if the length goes up, `w` otherwise, with lengths taken
//! from the BFS table. The hopping routes compute the same product from
//! one-line notation alone: the ordinary product followed by a cascade of
//! hopping operators whose lists are read off the left factor.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cayley::{self, GroupTable};
use crate::element::{Element, Family};
use crate::error::{Error, Result};
use crate::hopping::{hop_a_traced, hop_signed_traced, lift_a, lift_b, lift_d, HopTrace};
use crate::perm::{Perm, Word};
use crate::signed::{EvenSignedPerm, Parity, SignedPerm, Unfolded};

/// Longest elements for which subword enumeration of `[id, w]` is allowed.
pub const DEFAULT_INTERVAL_LENGTH_BOUND: usize = 14;

/// Largest window length the oracle accepts for each family.
pub fn oracle_rank_limit(family: Family) -> usize {
    match family {
        Family::A => 8,
        Family::B | Family::D => 5,
    }
}

fn oracle_table(family: Family, n: usize) -> Result<std::sync::Arc<GroupTable>> {
    let limit = oracle_rank_limit(family);
    if n > limit {
        return Err(Error::RankTooLarge {
            family,
            rank: n,
            limit,
            what: "the Demazure oracle",
        });
    }
    cayley::table(family, n)
}

/// `u ⋆ v` through a reduced word of `u` and the length table.
pub fn demazure_oracle(u: &Element, v: &Element) -> Result<Element> {
    u.check_same_group(v)?;
    let table = oracle_table(u.family(), u.rank())?;
    let idx = table.star(table.index_of(u)?, table.index_of(v)?);
    Ok(table.element(idx))
}

/// `s_{a_1} ⋆ s_{a_2} ⋆ .. ⋆ s_{a_k}`.
pub fn star_word(family: Family, n: usize, word: &Word) -> Result<Element> {
    let table = oracle_table(family, n)?;
    let max = table.generator_count();
    if let Some(&bad) = word.letters().iter().find(|&&s| s == 0 || s > max) {
        return Err(Error::GeneratorOutOfRange {
            family,
            rank: n,
            index: bad,
        });
    }
    Ok(table.element(table.star_word(word.letters(), table.identity_index())))
}

/// One hopping operator in a product cascade, with the window it produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    pub hop: HopTrace,
    pub result: Vec<i32>,
}

/// The ordinary product followed by every hopping operator applied to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopChain {
    pub start: Vec<i32>,
    pub links: Vec<ChainLink>,
}

impl HopChain {
    /// The intermediate windows, starting with the ordinary product.
    pub fn windows(&self) -> Vec<Vec<i32>> {
        std::iter::once(self.start.clone())
            .chain(self.links.iter().map(|l| l.result.clone()))
            .collect()
    }
}

pub fn demazure_hop_a(w: &Perm, v: &Perm) -> Result<Perm> {
    demazure_hop_a_traced(w, v).map(|(p, _)| p)
}

/// `w ⋆ v = h_{n-1, w↖(n-1)} .. h_{1, w↖1}(wv)`.
pub fn demazure_hop_a_traced(w: &Perm, v: &Perm) -> Result<(Perm, HopChain)> {
    let start = w.compose(v)?;
    let mut chain = HopChain {
        start: start.window().to_vec(),
        links: Vec::new(),
    };
    let mut cur = start;
    for i in 1..w.rank() as i32 {
        let (next, hop) = hop_a_traced(&cur, i, &lift_a(w, i)?)?;
        chain.links.push(ChainLink {
            hop,
            result: next.window().to_vec(),
        });
        cur = next;
    }
    Ok((cur, chain))
}

pub fn demazure_hop_b(w: &SignedPerm, v: &SignedPerm) -> Result<SignedPerm> {
    demazure_hop_b_traced(w, v).map(|(p, _)| p)
}

/// Type-B cascade over `i = 1..n`, lists `w↖i` taken in `(i, -i]`.
pub fn demazure_hop_b_traced(w: &SignedPerm, v: &SignedPerm) -> Result<(SignedPerm, HopChain)> {
    let start = w.compose(v)?;
    signed_cascade(start, (1..=w.rank() as i32).map(|i| lift_b(w, i)))
}

pub fn demazure_hop_d(w: &EvenSignedPerm, v: &EvenSignedPerm) -> Result<EvenSignedPerm> {
    demazure_hop_d_traced(w, v).map(|(p, _)| p)
}

/// Type-D cascade over `i = 1..n-1`, lists `w↖i` taken in `(i, -i)` from
/// the left factor `w`.
pub fn demazure_hop_d_traced(
    w: &EvenSignedPerm,
    v: &EvenSignedPerm,
) -> Result<(EvenSignedPerm, HopChain)> {
    let start = w.compose(v)?.into_signed();
    let (out, chain) = signed_cascade(start, (1..w.rank() as i32).map(|i| lift_d(w, i)))?;
    Ok((EvenSignedPerm::from_signed(out)?, chain))
}

fn signed_cascade(
    start: SignedPerm,
    lists: impl Iterator<Item = Result<crate::hopping::HopList>>,
) -> Result<(SignedPerm, HopChain)> {
    let mut chain = HopChain {
        start: start.unfold().entries().to_vec(),
        links: Vec::new(),
    };
    let mut cur = start;
    for (i, list) in (1..).zip(lists) {
        let (next, hop) = hop_signed_traced(&cur, i, &list?)?;
        chain.links.push(ChainLink {
            hop,
            result: next.unfold().entries().to_vec(),
        });
        cur = next;
    }
    Ok((cur, chain))
}

/// `fold(unfold(w) ⋆ unfold(v))` with the `S_2n` product computed by type-A
/// hopping on the normalised unfoldings.
pub fn demazure_unfolded_b(w: &SignedPerm, v: &SignedPerm) -> Result<SignedPerm> {
    let big = demazure_hop_a(&w.unfold().normalize(), &v.unfold().normalize())?;
    Ok(Unfolded::denormalize(&big)?.fold())
}

/// `u ⋆ v` by the hopping route for the elements' family.
pub fn demazure_hop(u: &Element, v: &Element) -> Result<Element> {
    demazure_hop_traced(u, v).map(|(p, _)| p)
}

pub fn demazure_hop_traced(u: &Element, v: &Element) -> Result<(Element, HopChain)> {
    u.check_same_group(v)?;
    Ok(match (u, v) {
        (Element::A(a), Element::A(b)) => {
            let (p, c) = demazure_hop_a_traced(a, b)?;
            (Element::A(p), c)
        }
        (Element::B(a), Element::B(b)) => {
            let (p, c) = demazure_hop_b_traced(a, b)?;
            (Element::B(p), c)
        }
        (Element::D(a), Element::D(b)) => {
            let (p, c) = demazure_hop_d_traced(a, b)?;
            (Element::D(p), c)
        }
        _ => unreachable!("checked above"),
    })
}

/// The unfold-multiply-fold route attempted in type D, for the pair
/// `[1,4,-2,-3]`, `[4,-1,2,-3]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoldRouteReport {
    pub left: Vec<i32>,
    pub right: Vec<i32>,
    pub left_normalized: Vec<i32>,
    pub right_normalized: Vec<i32>,
    pub big_product: Vec<i32>,
    pub folded: Vec<i32>,
    pub folded_parity: Parity,
    pub true_product: Vec<i32>,
}

impl FoldRouteReport {
    /// The route fails when its answer is not the true product.
    pub fn route_fails(&self) -> bool {
        self.folded != self.true_product
    }
}

pub fn unfold_star_fold_d_counterexample() -> Result<FoldRouteReport> {
    let w = EvenSignedPerm::new(vec![1, 4, -2, -3])?;
    let v = EvenSignedPerm::new(vec![4, -1, 2, -3])?;
    let (wn, vn) = (w.unfold().normalize(), v.unfold().normalize());
    let big = demazure_hop_a(&wn, &vn)?;
    let folded = Unfolded::denormalize(&big)?.fold();
    let truth = demazure_hop_d(&w, &v)?;
    Ok(FoldRouteReport {
        left: w.window().to_vec(),
        right: v.window().to_vec(),
        left_normalized: wn.window().to_vec(),
        right_normalized: vn.window().to_vec(),
        big_product: big.window().to_vec(),
        folded_parity: folded.parity(),
        folded: folded.into_window(),
        true_product: truth.window().to_vec(),
    })
}

fn interval_table(u: &Element) -> Result<std::sync::Arc<GroupTable>> {
    cayley::table(u.family(), u.rank())
}

/// Membership mask of `[id, w]` over the table's indices: all products of
/// subsequences of one reduced word, accumulated right to left.
pub(crate) fn lower_interval_mask(table: &GroupTable, idx: usize, word: &Word) -> Vec<bool> {
    debug_assert_eq!(table.mul_word(word.letters(), 0), idx);
    let mut mask = vec![false; table.len()];
    mask[table.identity_index()] = true;
    let mut members = vec![table.identity_index()];
    for &g in word.letters().iter().rev() {
        let count = members.len();
        for k in 0..count {
            let y = table.left_mul(members[k], g);
            if !mask[y] {
                mask[y] = true;
                members.push(y);
            }
        }
    }
    mask
}

fn checked_word(table: &GroupTable, idx: usize, bound: usize) -> Result<Word> {
    let length = table.length(idx);
    if length > bound {
        return Err(Error::LengthBound { length, bound });
    }
    Ok(table.reduced_word(idx))
}

/// The lower Bruhat interval `[id, u]`.
pub fn lower_interval(u: &Element) -> Result<BTreeSet<Element>> {
    lower_interval_bounded(u, DEFAULT_INTERVAL_LENGTH_BOUND)
}

pub fn lower_interval_bounded(u: &Element, bound: usize) -> Result<BTreeSet<Element>> {
    let table = interval_table(u)?;
    let idx = table.index_of(u)?;
    let word = checked_word(&table, idx, bound)?;
    let mask = lower_interval_mask(&table, idx, &word);
    Ok(mask
        .iter()
        .enumerate()
        .filter(|(_, &m)| m)
        .map(|(i, _)| table.element(i))
        .collect())
}

/// Whether `[id, w ⋆ v]` equals `{ab : a in [id, w], b in [id, v]}`.
pub fn interval_product_check(w: &Element, v: &Element) -> Result<bool> {
    w.check_same_group(v)?;
    let table = interval_table(w)?;
    interval_product_check_indexed(
        &table,
        table.index_of(w)?,
        table.index_of(v)?,
        DEFAULT_INTERVAL_LENGTH_BOUND,
    )
}

pub(crate) fn interval_product_check_indexed(
    table: &GroupTable,
    w: usize,
    v: usize,
    bound: usize,
) -> Result<bool> {
    let wi = lower_interval_mask(table, w, &checked_word(table, w, bound)?);
    let vi = lower_interval_mask(table, v, &checked_word(table, v, bound)?);
    let prod = table.star(w, v);
    let pi = lower_interval_mask(table, prod, &checked_word(table, prod, bound)?);
    let below_v: Vec<usize> = (0..table.len()).filter(|&i| vi[i]).collect();
    let mut products = vec![false; table.len()];
    for a in (0..table.len()).filter(|&i| wi[i]) {
        let word = table.reduced_word(a);
        for &b in &below_v {
            products[table.mul_word(word.letters(), b)] = true;
        }
    }
    Ok(products == pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::eval_word;

    fn p(w: &[i32]) -> Perm {
        Perm::new(w.to_vec()).unwrap()
    }

    fn s(w: &[i32]) -> SignedPerm {
        SignedPerm::new(w.to_vec()).unwrap()
    }

    fn d(w: &[i32]) -> EvenSignedPerm {
        EvenSignedPerm::new(w.to_vec()).unwrap()
    }

    #[test]
    fn type_a_worked_product() {
        let (w, v) = (p(&[6, 5, 4, 1, 7, 2, 3]), p(&[5, 4, 3, 6, 2, 1, 7]));
        let (out, chain) = demazure_hop_a_traced(&w, &v).unwrap();
        assert_eq!(out, p(&[7, 6, 5, 4, 2, 1, 3]));
        // h_6 has an empty list and is left out of the usual display.
        assert!(chain.links[5].hop.list.is_empty());
        assert_eq!(
            chain.windows()[..6],
            vec![
                vec![7, 1, 4, 2, 5, 6, 3],
                vec![7, 4, 5, 2, 6, 1, 3],
                vec![7, 4, 5, 6, 2, 1, 3],
                vec![7, 4, 5, 6, 2, 1, 3],
                vec![7, 5, 6, 4, 2, 1, 3],
                vec![7, 6, 5, 4, 2, 1, 3],
            ]
        );
        let oracle = demazure_oracle(&Element::A(w), &Element::A(v)).unwrap();
        assert_eq!(oracle.window(), out.window());
    }

    #[test]
    fn type_b_worked_product() {
        let (w, v) = (s(&[-5, 3, 1, -2, 4]), s(&[-4, 2, -1, -3, 5]));
        let (out, chain) = demazure_hop_b_traced(&w, &v).unwrap();
        assert_eq!(out, s(&[-2, -5, -1, -3, -4]));
        assert_eq!(
            chain.windows(),
            vec![
                vec![2, 3, 5, -1, 4, -4, 1, -5, -3, -2],
                vec![2, 3, -1, 5, 4, -4, -5, 1, -3, -2],
                vec![-2, 3, -1, 5, -4, 4, -5, 1, -3, 2],
                vec![-2, -5, -1, -3, -4, 4, 3, 1, 5, 2],
                vec![-2, -5, -1, -3, -4, 4, 3, 1, 5, 2],
                vec![-2, -5, -1, -3, -4, 4, 3, 1, 5, 2],
            ]
        );
        assert_eq!(demazure_unfolded_b(&w, &v).unwrap(), out);
        let oracle = demazure_oracle(&Element::B(w), &Element::B(v)).unwrap();
        assert_eq!(oracle.window(), out.window());
    }

    #[test]
    fn type_d_worked_products() {
        let (w, v) = (d(&[2, -4, -1, 5, 3]), d(&[-4, 3, -5, -1, -2]));
        let (out, chain) = demazure_hop_d_traced(&w, &v).unwrap();
        assert_eq!(out, d(&[-1, -3, -4, -2, 5]));
        let halves: Vec<Vec<i32>> = chain.windows().iter().map(|u| u[..5].to_vec()).collect();
        assert_eq!(
            halves,
            vec![
                vec![-5, -1, -3, -2, 4],
                vec![-1, -5, -3, -2, 4],
                vec![-1, -5, -3, -2, 4],
                vec![-1, -3, -5, -2, 4],
                vec![-1, -3, -4, -2, 5],
            ]
        );
        assert_eq!(
            demazure_hop_d(&d(&[1, 4, -2, -3]), &d(&[4, -1, 2, -3])).unwrap(),
            d(&[-2, -1, 4, 3])
        );
        let oracle = demazure_oracle(&Element::D(w), &Element::D(v)).unwrap();
        assert_eq!(oracle.window(), out.window());
    }

    #[test]
    fn identity_is_neutral() {
        for family in Family::ALL {
            let id = Element::identity(family, 4);
            let w = eval_word(family, 4, &Word::new(vec![1, 3, 2, 3, 1])).unwrap();
            assert_eq!(demazure_oracle(&id, &w).unwrap(), w);
            assert_eq!(demazure_oracle(&w, &id).unwrap(), w);
            assert_eq!(demazure_hop(&id, &w).unwrap(), w);
            assert_eq!(demazure_hop(&w, &id).unwrap(), w);
        }
        let id = SignedPerm::identity(3);
        assert_eq!(demazure_unfolded_b(&id, &id).unwrap(), id);
    }

    #[test]
    fn oracle_limits() {
        let big = Element::identity(Family::D, 6);
        assert!(matches!(
            demazure_oracle(&big, &big),
            Err(Error::RankTooLarge { .. })
        ));
        let a = Element::identity(Family::A, 3);
        let b = Element::identity(Family::A, 4);
        assert!(demazure_oracle(&a, &b).is_err());
    }

    #[test]
    fn fold_route_counterexample() {
        let r = unfold_star_fold_d_counterexample().unwrap();
        assert_eq!(r.left_normalized, vec![1, 4, 7, 6, 3, 2, 5, 8]);
        assert_eq!(r.right_normalized, vec![4, 8, 2, 6, 3, 7, 1, 5]);
        assert_eq!(r.big_product, vec![7, 8, 4, 6, 3, 5, 1, 2]);
        assert_eq!(r.folded, vec![-2, -1, 4, -3]);
        assert_eq!(r.folded_parity, Parity::Odd);
        assert_eq!(r.true_product, vec![-2, -1, 4, 3]);
        assert!(r.route_fails());
    }

    #[test]
    fn small_intervals() {
        let id = Element::identity(Family::D, 4);
        assert_eq!(lower_interval(&id).unwrap(), BTreeSet::from([id.clone()]));
        let s = Element::generator(Family::D, 4, 4).unwrap();
        assert_eq!(lower_interval(&s).unwrap(), BTreeSet::from([id, s]));
        let t = cayley::table(Family::D, 3).unwrap();
        let top = (0..t.len()).max_by_key(|&i| t.length(i)).unwrap();
        assert_eq!(lower_interval(&t.element(top)).unwrap().len(), 24);
    }

    #[test]
    fn interval_bound() {
        let t = cayley::table(Family::D, 4).unwrap();
        let top = (0..t.len()).max_by_key(|&i| t.length(i)).unwrap();
        assert!(matches!(
            lower_interval_bounded(&t.element(top), 5),
            Err(Error::LengthBound { .. })
        ));
    }

    #[test]
    fn interval_product_trivial() {
        let id = Element::identity(Family::D, 3);
        assert!(interval_product_check(&id, &id).unwrap());
    }

    #[test]
    fn star_word_of_repeated_letter() {
        let w = star_word(Family::D, 4, &Word::new(vec![2, 2, 2])).unwrap();
        assert_eq!(w, Element::generator(Family::D, 4, 2).unwrap());
    }
}
