//! Verification suites: each identity is checked over a whole group (or a
//! seeded sample of it) against the BFS oracle.
//!
//! Sweeps run in parallel over independent cases. Reports are deterministic:
//! counts do not depend on scheduling and the counterexample kept is the one
//! with the smallest case index.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::{self, GroupTable};
use crate::demazure::{
    demazure_hop_a, demazure_hop_a_traced, demazure_hop_b, demazure_hop_b_traced,
    demazure_hop_d_traced, demazure_unfolded_b, interval_product_check_indexed,
    lower_interval_mask, oracle_rank_limit, unfold_star_fold_d_counterexample, HopChain,
    DEFAULT_INTERVAL_LENGTH_BOUND,
};
use crate::element::{Element, Family};
use crate::error::{Error, Result};
use crate::hopping::{apply_to_list, hop_signed, hoplists_equivalent, lift_d, HopList};
use crate::notation::format_window;
use crate::parabolic::{decompose_d, l_list, q_star, t_list, Form, QFactor};
use crate::perm::{Side, Word};
use crate::signed::{EvenSignedPerm, SignedPerm};

pub const DEFAULT_SEED: u64 = 20240617;

/// Random lists drawn per case by the lemma suites.
pub const LISTS_PER_CASE: usize = 50;

/// Exhaustive pair sweeps larger than this must be sampled instead.
pub const EXHAUSTIVE_PAIR_LIMIT: usize = 4_000_000;

/// Longest words enumerated by the subword suite.
pub const SUBWORD_MAX_LEN: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    MainTheorem,
    FoldUnfoldB,
    TypeDBad,
    HopNeg,
    HopIrrele,
    HopTrans,
    SingleTrans,
    MultTrans,
    HoppingTransfer,
    AddDk,
    AllFormHop,
    Interval,
    Subword,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::MainTheorem,
        Suite::FoldUnfoldB,
        Suite::TypeDBad,
        Suite::HopNeg,
        Suite::HopIrrele,
        Suite::HopTrans,
        Suite::SingleTrans,
        Suite::MultTrans,
        Suite::HoppingTransfer,
        Suite::AddDk,
        Suite::AllFormHop,
        Suite::Interval,
        Suite::Subword,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MainTheorem => "main-theorem",
            Suite::FoldUnfoldB => "fold-unfold-B",
            Suite::TypeDBad => "typeDbad",
            Suite::HopNeg => "hopneg",
            Suite::HopIrrele => "hopirrele",
            Suite::HopTrans => "hoptrans",
            Suite::SingleTrans => "singletrans",
            Suite::MultTrans => "multtrans",
            Suite::HoppingTransfer => "hoppingtransfer",
            Suite::AddDk => "addDk",
            Suite::AllFormHop => "allformhop",
            Suite::Interval => "interval",
            Suite::Subword => "subword",
        }
    }

    /// Whether the suite only makes sense for `D_n`.
    pub fn type_d_only(self) -> bool {
        !matches!(
            self,
            Suite::MainTheorem | Suite::FoldUnfoldB | Suite::Interval | Suite::Subword
        )
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
                Error::Parse(format!(
                    "unknown suite {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub family: Family,
    pub rank: usize,
    pub domain: Domain,
    pub unit: &'static str,
    pub checked: u64,
    pub passed: u64,
    /// Cases outside the identity's hypotheses, e.g. an odd intermediate
    /// where an element of `D_n` is required.
    pub skipped: u64,
    pub counterexample: Option<String>,
    pub observations: Vec<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.counterexample.is_none() && self.passed == self.checked
    }

    /// `N/M unit OK`.
    pub fn tally(&self) -> String {
        format!("{}/{} {} OK", self.passed, self.checked, self.unit)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}_{}: {}",
            self.suite,
            self.family,
            self.rank,
            self.tally()
        )?;
        if self.skipped > 0 {
            write!(f, " ({} skipped)", self.skipped)?;
        }
        for obs in &self.observations {
            write!(f, "\n  {obs}")?;
        }
        if let Some(c) = &self.counterexample {
            write!(f, "\ncounterexample:\n{c}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    passed: u64,
    skipped: u64,
    odd_states: u64,
    failure: Option<(usize, String)>,
}

impl Tally {
    fn record(&mut self, case: usize, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if ok {
            self.passed += 1;
        } else if self.failure.as_ref().is_none_or(|(k, _)| case < *k) {
            self.failure = Some((case, detail()));
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.passed += other.passed;
        self.skipped += other.skipped;
        self.odd_states += other.odd_states;
        self.failure = match (self.failure, other.failure) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

fn sweep<F>(cases: usize, f: F) -> Tally
where
    F: Fn(usize, &mut Tally) + Sync + Send,
{
    (0..cases)
        .into_par_iter()
        .fold(Tally::default, |mut t, k| {
            f(k, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

/// Deterministic per-case generator, independent of thread scheduling.
fn case_rng(seed: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case as u64);
    rng
}

fn element_cases(table: &GroupTable, domain: Domain) -> Vec<usize> {
    match domain {
        Domain::Exhaustive => (0..table.len()).collect(),
        Domain::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| rng.gen_range(0..table.len())).collect()
        }
    }
}

fn pair_cases(table: &GroupTable, domain: Domain) -> Result<Vec<(u32, u32)>> {
    match domain {
        Domain::Exhaustive => {
            let m = table.len();
            if m * m > EXHAUSTIVE_PAIR_LIMIT {
                return Err(Error::Unsupported(format!(
                    "{} pairs in {}_{} is too many for an exhaustive sweep; sample instead",
                    m * m,
                    table.family(),
                    table.rank()
                )));
            }
            Ok((0..m as u32)
                .flat_map(|u| (0..m as u32).map(move |v| (u, v)))
                .collect())
        }
        Domain::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = table.len() as u32;
            Ok((0..count)
                .map(|_| (rng.gen_range(0..m), rng.gen_range(0..m)))
                .collect())
        }
    }
}

/// A random list over `±{1..n}` avoiding `exclude`, of random length.
fn random_list(rng: &mut ChaCha8Rng, n: usize, exclude: &[i32]) -> Vec<i32> {
    let mut pool: Vec<i32> = (1..=n as i32)
        .flat_map(|v| [v, -v])
        .filter(|v| !exclude.contains(v))
        .collect();
    pool.shuffle(rng);
    let len = rng.gen_range(0..=pool.len());
    pool.truncate(len);
    pool
}

fn list(items: Vec<i32>) -> HopList {
    HopList::new(items).expect("distinct by construction")
}

fn d_elem(table: &GroupTable, idx: usize) -> EvenSignedPerm {
    EvenSignedPerm::new(table.window(idx).to_vec()).expect("table windows are even")
}

fn gen_d(n: usize, i: usize) -> EvenSignedPerm {
    EvenSignedPerm::generator(n, i).expect("generator in range")
}

fn signed_eq(a: &SignedPerm, b: &[i32]) -> bool {
    a.window() == b
}

/// `s_{a_1} .. s_{a_k} ⋆ x` by the oracle.
fn oracle_word_star(table: &GroupTable, word: &[usize], x: &[i32]) -> Option<Vec<i32>> {
    let idx = table.index_of_window(x)?;
    Some(table.window(table.star_word(word, idx)).to_vec())
}

/// `s_i x` with the type-D generator, for `x` of either parity.
fn d_left(i: usize, x: &SignedPerm) -> SignedPerm {
    gen_d(x.rank(), i)
        .as_signed()
        .compose(x)
        .expect("same rank")
}

fn left_word(w: &SignedPerm, word: &[usize]) -> SignedPerm {
    word.iter().rev().fold(w.clone(), |acc, &s| d_left(s, &acc))
}

/// Runs `suite` on the group of the given family and rank.
pub fn run_suite(suite: Suite, family: Family, n: usize, domain: Domain) -> Result<SuiteReport> {
    family.check_rank(n)?;
    if suite.type_d_only() && suite != Suite::TypeDBad && family != Family::D {
        return Err(Error::Unsupported(format!(
            "suite {suite} is about type D; got {family}"
        )));
    }
    if suite == Suite::FoldUnfoldB && family != Family::B {
        return Err(Error::Unsupported(format!(
            "suite {suite} is about type B; got {family}"
        )));
    }
    let limit = oracle_rank_limit(family);
    if n > limit {
        return Err(Error::RankTooLarge {
            family,
            rank: n,
            limit,
            what: "verification suites",
        });
    }
    if suite.type_d_only() && suite != Suite::TypeDBad && n < 3 {
        return Err(Error::Unsupported(format!(
            "suite {suite} needs rank at least 3"
        )));
    }
    let mut observations = Vec::new();
    let (unit, tally) = match suite {
        Suite::MainTheorem => ("pairs", main_theorem(family, n, domain, &mut observations)?),
        Suite::FoldUnfoldB => ("pairs", fold_unfold_b(n, domain)?),
        Suite::TypeDBad => ("cases", type_d_bad(&mut observations)?),
        Suite::HopNeg => ("cases", hopneg(n, domain)?),
        Suite::HopIrrele => ("cases", hopirrele(n, domain)?),
        Suite::HopTrans => ("cases", hoptrans(n, domain)?),
        Suite::SingleTrans => ("cases", singletrans(n, domain, &mut observations)?),
        Suite::MultTrans => ("cases", multtrans(n, domain)?),
        Suite::HoppingTransfer => ("cases", hoppingtransfer(n, domain)?),
        Suite::AddDk => ("cases", add_dk(n, domain)?),
        Suite::AllFormHop => ("cases", allformhop(n, domain)?),
        Suite::Interval => ("pairs", interval(family, n, domain)?),
        Suite::Subword => {
            let (tally, loose) = subword(family, n)?;
            observations.push(format!(
                "{loose} non-reduced words have product equal to their star product"
            ));
            ("words", tally)
        }
    };
    if tally.skipped > 0 {
        observations.push(format!(
            "{} cases skipped: an intermediate left D_{n}",
            tally.skipped
        ));
    }
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        family,
        rank: n,
        domain,
        unit,
        checked: tally.checked,
        passed: tally.passed,
        skipped: tally.skipped,
        counterexample: tally.failure.map(|(_, c)| c),
        observations,
    })
}

/// One line per hop, `h_{t,L} -> window`, starting from the plain product.
fn chain_lines(chain: &HopChain) -> String {
    let mut s = format!("\n  start {}", format_window(&chain.start));
    for link in &chain.links {
        s += &format!(
            "\n  {} -> {}",
            link.hop.operator(),
            format_window(&link.result)
        );
    }
    s
}

fn main_theorem(
    family: Family,
    n: usize,
    domain: Domain,
    observations: &mut Vec<String>,
) -> Result<Tally> {
    let table = cayley::table(family, n)?;
    let pairs = pair_cases(&table, domain)?;
    let tally = sweep(pairs.len(), |k, t| {
        let (u, v) = (pairs[k].0 as usize, pairs[k].1 as usize);
        let expected = table.window(table.star(u, v));
        let (wu, wv) = (table.window(u).to_vec(), table.window(v).to_vec());
        match family {
            Family::A => {
                let got = demazure_hop_a(
                    &crate::perm::Perm::new(wu.clone()).unwrap(),
                    &crate::perm::Perm::new(wv.clone()).unwrap(),
                )
                .unwrap();
                t.record(k, got.window() == expected, || {
                    let (a, b) = (
                        crate::perm::Perm::new(wu.clone()).unwrap(),
                        crate::perm::Perm::new(wv.clone()).unwrap(),
                    );
                    let chain = demazure_hop_a_traced(&a, &b).unwrap().1;
                    pair_failure(&wu, &wv, expected, got.window(), "hopping") + &chain_lines(&chain)
                });
            }
            Family::B => {
                let (a, b) = (
                    SignedPerm::new(wu.clone()).unwrap(),
                    SignedPerm::new(wv.clone()).unwrap(),
                );
                let hop = demazure_hop_b(&a, &b).unwrap();
                let unf = demazure_unfolded_b(&a, &b).unwrap();
                let ok = hop.window() == expected && unf.window() == expected;
                t.record(k, ok, || {
                    let bad = if hop.window() != expected { &hop } else { &unf };
                    let method = if hop.window() != expected {
                        "hopping"
                    } else {
                        "unfolded"
                    };
                    let mut s = pair_failure(&wu, &wv, expected, bad.window(), method);
                    if method == "hopping" {
                        s += &chain_lines(&demazure_hop_b_traced(&a, &b).unwrap().1);
                    }
                    s
                });
            }
            Family::D => {
                let (a, b) = (
                    EvenSignedPerm::new(wu.clone()).unwrap(),
                    EvenSignedPerm::new(wv.clone()).unwrap(),
                );
                match demazure_hop_d_traced(&a, &b) {
                    Ok((got, chain)) => {
                        t.odd_states += chain
                            .windows()
                            .iter()
                            .filter(|u| u[..n].iter().filter(|&&x| x < 0).count() % 2 == 1)
                            .count() as u64;
                        t.record(k, got.window() == expected, || {
                            pair_failure(&wu, &wv, expected, got.window(), "hopping")
                                + &chain_lines(&chain)
                        });
                    }
                    Err(e) => t.record(k, false, || {
                        format!(
                            "w = {}, v = {}: hopping failed: {e}",
                            format_window(&wu),
                            format_window(&wv)
                        )
                    }),
                }
            }
        }
    });
    if family == Family::D {
        observations.push(format!(
            "{} odd-parity intermediate states passed through; every product even",
            tally.odd_states
        ));
    }
    Ok(tally)
}

fn pair_failure(w: &[i32], v: &[i32], expected: &[i32], got: &[i32], method: &str) -> String {
    format!(
        "w = {}, v = {}\n  oracle   {}\n  {method:<8} {}",
        format_window(w),
        format_window(v),
        format_window(expected),
        format_window(got)
    )
}

fn fold_unfold_b(n: usize, domain: Domain) -> Result<Tally> {
    let table = cayley::table(Family::B, n)?;
    let pairs = pair_cases(&table, domain)?;
    Ok(sweep(pairs.len(), |k, t| {
        let (u, v) = (pairs[k].0 as usize, pairs[k].1 as usize);
        let expected = table.window(table.star(u, v));
        let a = SignedPerm::new(table.window(u).to_vec()).unwrap();
        let b = SignedPerm::new(table.window(v).to_vec()).unwrap();
        let got = demazure_unfolded_b(&a, &b).unwrap();
        t.record(k, got.window() == expected, || {
            pair_failure(a.window(), b.window(), expected, got.window(), "unfolded")
        });
    }))
}

fn type_d_bad(observations: &mut Vec<String>) -> Result<Tally> {
    let r = unfold_star_fold_d_counterexample()?;
    observations.push(format!(
        "S_8 product {} folds to {} ({}); true product {}",
        format_window(&r.big_product),
        format_window(&r.folded),
        r.folded_parity,
        format_window(&r.true_product)
    ));
    let mut t = Tally::default();
    t.record(0, r.route_fails(), || {
        "the unfold-multiply-fold route agreed with the true product".to_string()
    });
    Ok(t)
}

/// `h_{i,[L,j,-j,L']} = h_{i,[L,-j,j,L']}` for `i < j <= n`.
fn hopneg(n: usize, domain: Domain) -> Result<Tally> {
    let table = cayley::table(Family::D, n)?;
    let cases = element_cases(&table, domain);
    let seed = seed_of(domain);
    Ok(sweep(cases.len(), |k, t| {
        let w = SignedPerm::new(table.window(cases[k]).to_vec()).unwrap();
        let mut rng = case_rng(seed, k);
        for i in 1..n as i32 {
            for j in i + 1..=n as i32 {
                for _ in 0..LISTS_PER_CASE {
                    let ctx = random_list(&mut rng, n, &[j, -j]);
                    let cut = rng.gen_range(0..=ctx.len());
                    let (l, r) = ctx.split_at(cut);
                    let l1 = list([l, &[j, -j], r].concat());
                    let l2 = list([l, &[-j, j], r].concat());
                    let a = hop_signed(&w, i, &l1).unwrap();
                    let b = hop_signed(&w, i, &l2).unwrap();
                    t.record(k, a == b, || {
                        format!("w = {w}, i = {i}: h_{{{i},{l1}}} = {a} but h_{{{i},{l2}}} = {b}")
                    });
                }
            }
        }
    }))
}

fn seed_of(domain: Domain) -> u64 {
    match domain {
        Domain::Exhaustive => DEFAULT_SEED,
        Domain::Sampled { seed, .. } => seed,
    }
}

/// `s_j h_{i,L}(s_j w) = h_{i,s_j(L)}(w)` for `i <= n-2`, `j > i`.
fn hopirrele(n: usize, domain: Domain) -> Result<Tally> {
    let table = cayley::table(Family::D, n)?;
    let cases = element_cases(&table, domain);
    let seed = seed_of(domain);
    Ok(sweep(cases.len(), |k, t| {
        let w = SignedPerm::new(table.window(cases[k]).to_vec()).unwrap();
        let mut rng = case_rng(seed, k);
        for i in 1..=(n - 2) {
            for j in i + 1..=n {
                let sj = gen_d(n, j).into_signed();
                let moved = d_left(j, &w);
                for _ in 0..LISTS_PER_CASE {
                    let l = list(random_list(&mut rng, n, &[]));
                    let lhs = d_left(j, &hop_signed(&moved, i as i32, &l).unwrap());
                    let sl = apply_to_list(&sj, &l).unwrap();
                    let rhs = hop_signed(&w, i as i32, &sl).unwrap();
                    t.record(k, lhs == rhs, || {
                        format!("w = {w}, i = {i}, j = {j}, L = {l}: {lhs} vs {rhs}")
                    });
                }
            }
        }
    }))
}

/// Both conjugation rules plus `h_{j,[j+1]} = h_{-(j+1),[-j]}`.
fn hoptrans(n: usize, domain: Domain) -> Result<Tally> {
    let table = cayley::table(Family::D, n)?;
    let cases = element_cases(&table, domain);
    let seed = seed_of(domain);
    let m = n as i32;
    Ok(sweep(cases.len(), |k, t| {
        let w = SignedPerm::new(table.window(cases[k]).to_vec()).unwrap();
        let mut rng = case_rng(seed, k);
        for i in 1..n {
            let si = gen_d(n, i).into_signed();
            let moved = d_left(i, &w);
            let ti = i as i32;
            for _ in 0..LISTS_PER_CASE {
                let l = list(random_list(&mut rng, n, &[ti, ti + 1]));
                let lhs = d_left(i, &hop_signed(&moved, ti, &l).unwrap());
                let rhs = hop_signed(&w, ti + 1, &apply_to_list(&si, &l).unwrap()).unwrap();
                t.record(k, lhs == rhs, || {
                    format!("w = {w}, i = {i}, L = {l}: s_i h_(i,L) s_i w = {lhs}, h_(i+1,s_i L) w = {rhs}")
                });
            }
        }
        let moved = d_left(n, &w);
        for _ in 0..LISTS_PER_CASE {
            let l = list(random_list(&mut rng, n, &[m - 1, 1 - m, m, -m]));
            let lhs = d_left(n, &hop_signed(&moved, 1 - m, &l).unwrap());
            let rhs = hop_signed(&w, m, &l).unwrap();
            t.record(k, lhs == rhs, || {
                format!("w = {w}, L = {l}: s_n h_(-(n-1),L) s_n w = {lhs}, h_(n,L) w = {rhs}")
            });
        }
        for j in 1..m {
            let a = hop_signed(&w, j, &list(vec![j + 1])).unwrap();
            let b = hop_signed(&w, -(j + 1), &list(vec![-j])).unwrap();
            t.record(k, a == b, || {
                format!("w = {w}, j = {j}: h_(j,[j+1]) = {a}, h_(-(j+1),[-j]) = {b}")
            });
        }
    }))
}

/// `s_i ⋆ w = h_{i,[i+1]}(s_i w)` for `i < n` and `s_n ⋆ w = h_{n-1,[-n]}(s_n w)`.
fn singletrans(n: usize, domain: Domain, observations: &mut Vec<String>) -> Result<Tally> {
    let table = cayley::table(Family::D, n)?;
    let cases = element_cases(&table, domain);
    let m = n as i32;
    let tally = sweep(cases.len(), |k, t| {
        let idx = cases[k];
        let w = SignedPerm::new(table.window(idx).to_vec()).unwrap();
        for i in 1..=n {
            let expected = table.window(table.star_word(&[i], idx));
            let (tt, l) = if i < n {
                (i as i32, vec![i as i32 + 1])
            } else {
                (m - 1, vec![-m])
            };
            let got = hop_signed(&d_left(i, &w), tt, &list(l)).unwrap();
            t.record(k, signed_eq(&got, expected), || {
                format!(
                    "w = {w}, generator s_{i}: oracle {}, hopping {got}",
                    format_window(expected)
                )
            });
        }
    });
    match fringe_table(n) {
        Ok(rows) => {
            let consistent = rows.iter().all(|r| r.star == r.hop);
            observations.push(format!(
                "{} patterns of ±(n-1), ±n; s_n ⋆ and h_(n-1,[-n]) s_n columns {}",
                rows.len(),
                if consistent { "agree" } else { "DIFFER" }
            ));
        }
        Err(e) => observations.push(format!("fringe table unavailable: {e}")),
    }
    Ok(tally)
}

/// One row of the `s_n` case table: the relative order of `±(n-1), ±n` in
/// the unfolding before and after.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FringeRow {
    pub pattern: Vec<i32>,
    pub star: Vec<i32>,
    pub hop: Vec<i32>,
}

/// The case table for `s_n ⋆ w` against `h_{n-1,[-n]}(s_n w)`, gathered
/// over all of `D_n`. Every pattern must determine both outcomes.
pub fn fringe_table(n: usize) -> Result<Vec<FringeRow>> {
    if n < 3 {
        return Err(Error::Unsupported(
            "the fringe patterns need rank at least 3".into(),
        ));
    }
    let table = cayley::table(Family::D, n)?;
    let m = n as i32;
    let restrict = |w: &[i32]| -> Vec<i32> {
        let s = SignedPerm::new(w.to_vec()).unwrap();
        s.unfold()
            .entries()
            .iter()
            .copied()
            .filter(|v| v.abs() >= m - 1)
            .collect()
    };
    let mut rows: BTreeMap<Vec<i32>, (Vec<i32>, Vec<i32>)> = BTreeMap::new();
    for idx in 0..table.len() {
        let w = SignedPerm::new(table.window(idx).to_vec()).unwrap();
        let star = restrict(table.window(table.star_word(&[n], idx)));
        let hop = hop_signed(&d_left(n, &w), m - 1, &list(vec![-m]))?;
        let hop = restrict(hop.window());
        let pattern = restrict(w.window());
        match rows.get(&pattern) {
            Some(prev) if prev != &(star.clone(), hop.clone()) => {
                return Err(Error::Unsupported(format!(
                    "pattern {} does not determine the outcome",
                    format_window(&pattern)
                )))
            }
            _ => {
                rows.insert(pattern, (star, hop));
            }
        }
    }
    Ok(rows
        .into_iter()
        .map(|(pattern, (star, hop))| FringeRow { pattern, star, hop })
        .collect())
}

/// `(s_i..s_j) ⋆ h_{j+1,L} w = h_{i,[i+1..j+1,(s_i..s_j)(L)]}((s_i..s_j) w)`
/// with `i..j+1` kept out of `L`, and
/// `s_{n-1}s_n s_{n-2}..s_j ⋆ w = h_{n-1,[n,-n,-(n-2),..,-j]}(s_{n-1}s_n s_{n-2}..s_j w)`.
fn multtrans(n: usize, domain: Domain) -> Result<Tally> {
    let table = cayley::table(Family::D, n)?;
    let cases = element_cases(&table, domain);
    let seed = seed_of(domain);
    let m = n as i32;
    Ok(sweep(cases.len(), |k, t| {
        let idx = cases[k];
        let w = SignedPerm::new(table.window(idx).to_vec()).unwrap();
        let mut rng = case_rng(seed, k);
        for i in 1..n {
            for j in i..n {
                let word: Vec<usize> = (i..=j).collect();
                let chain = word.iter().fold(EvenSignedPerm::identity(n), |acc, &s| {
                    acc.act(s, Side::Right).unwrap()
                });
                let exclude: Vec<i32> = (i as i32..=j as i32 + 1).collect();
                for _ in 0..LISTS_PER_CASE {
                    let l = list(random_list(&mut rng, n, &exclude));
                    let inner = hop_signed(&w, j as i32 + 1, &l).unwrap();
                    let Some(lhs) = oracle_word_star(&table, &word, inner.window()) else {
                        t.skipped += 1;
                        continue;
                    };
                    let mut items: Vec<i32> = (i as i32 + 1..=j as i32 + 1).collect();
                    items.extend(apply_to_list(chain.as_signed(), &l).unwrap().items());
                    let big = list(items);
                    let rhs = hop_signed(&left_word(&w, &word), i as i32, &big).unwrap();
                    t.record(k, signed_eq(&rhs, &lhs), || {
                        format!(
                            "w = {w}, s_{i}..s_{j}, L = {l}: oracle {}, h_({i},{big}) gives {rhs}",
                            format_window(&lhs)
                        )
                    });
                }
            }
        }
        for j in 1..n - 1 {
            let mut word = vec![n - 1, n];
            word.extend((j..=n - 2).rev());
            let expected = table.window(table.star_word(&word, idx));
            let mut items = vec![m, -m];
            items.extend((j as i32..=m - 2).rev().map(|v| -v));
            let l = list(items);
            let got = hop_signed(&left_word(&w, &word), m - 1, &l).unwrap();
            t.record(k, signed_eq(&got, expected), || {
                format!(
                    "w = {w}, word {}: oracle {}, h_(n-1,{l}) gives {got}",
                    Word::new(word.clone()),
                    format_window(expected)
                )
            });
        }
    }))
}

/// `Q ⋆ w = h_{i,L_i}(Q w)` for every candidate factor `Q` at every level.
fn hoppingtransfer(n: usize, domain: Domain) -> Result<Tally> {
    let table = cayley::table(Family::D, n)?;
    let cases = element_cases(&table, domain);
    let mut factors = Vec::new();
    for level in 1..n {
        for q in QFactor::candidates(n, level)? {
            let word = q.word();
            factors.push((q, word));
        }
    }
    Ok(sweep(cases.len(), |k, t| {
        let idx = cases[k];
        let w = d_elem(&table, idx);
        for (q, word) in &factors {
            let expected = table.window(table.star_word(word.letters(), idx));
            let got = q_star(q, &w);
            let ok = matches!(&got, Ok(g) if g.window() == expected);
            t.record(k, ok, || {
                format!(
                    "w = {w}, Q = {q} ({word}): oracle {}, hopping {:?}",
                    format_window(expected),
                    got
                )
            });
        }
    }))
}

/// Memoised `~_i` decisions keyed by `(i, L, L')`.
struct EquivCache {
    n: usize,
    seen: std::sync::Mutex<BTreeMap<(i32, HopList, HopList), bool>>,
}

impl EquivCache {
    fn new(n: usize) -> Self {
        EquivCache {
            n,
            seen: Default::default(),
        }
    }

    fn check(&self, i: i32, a: &HopList, b: &HopList) -> bool {
        let key = if a <= b {
            (i, a.clone(), b.clone())
        } else {
            (i, b.clone(), a.clone())
        };
        if let Some(&v) = self.seen.lock().unwrap().get(&key) {
            return v;
        }
        let v = hoplists_equivalent(i, a, b, self.n).expect("rank checked");
        self.seen.lock().unwrap().insert(key, v);
        v
    }
}

/// `(Q_{n-1}..Q_{k+1})↖i ~_i (Q_{n-1}..Q_k)↖i` for `k < i <= n-1`.
fn add_dk(n: usize, domain: Domain) -> Result<Tally> {
    let table = cayley::table(Family::D, n)?;
    let cases = element_cases(&table, domain);
    let cache = EquivCache::new(n);
    Ok(sweep(cases.len(), |k, t| {
        let w = d_elem(&table, cases[k]);
        let dec = decompose_d(&w).unwrap();
        let prefixes: Vec<EvenSignedPerm> = (1..=n).map(|from| dec.prefix(from)).collect();
        for kk in 1..n - 1 {
            for i in kk + 1..n {
                let ti = i as i32;
                let outer = lift_d(&prefixes[kk], ti).unwrap();
                let inner = lift_d(&prefixes[kk - 1], ti).unwrap();
                t.record(k, cache.check(ti, &outer, &inner), || {
                    format!("w = {w}, k = {kk}, i = {i}: {outer} and {inner} are not ~_{i}")
                });
            }
        }
    }))
}

/// `(Q_{n-1}..Q_{i+1}) L_i ~_i w↖i` for `i <= n-2`, `L_{n-1} ~_{n-1} w↖(n-1)`,
/// and `(Q_{n-1}..Q_{i+1}) L_i = (Q_{n-1}..Q_i) T_i` as lists.
fn allformhop(n: usize, domain: Domain) -> Result<Tally> {
    let table = cayley::table(Family::D, n)?;
    let cases = element_cases(&table, domain);
    let cache = EquivCache::new(n);
    Ok(sweep(cases.len(), |k, t| {
        let w = d_elem(&table, cases[k]);
        let dec = decompose_d(&w).unwrap();
        for i in 1..n {
            let ti = i as i32;
            let q = dec.factor(i);
            let lifted = lift_d(&w, ti).unwrap();
            if i == n - 1 {
                let l = l_list(q);
                t.record(k, cache.check(ti, &l, &lifted), || {
                    format!("w = {w}: L_(n-1) = {l} is not ~ w↖(n-1) = {lifted}")
                });
                continue;
            }
            let moved = apply_to_list(dec.prefix(i + 1).as_signed(), &l_list(q)).unwrap();
            t.record(k, cache.check(ti, &moved, &lifted), || {
                format!("w = {w}, i = {i}: (Q..Q_(i+1))L_i = {moved} is not ~ w↖i = {lifted}")
            });
            if q.form() != Form::Identity {
                let via_t = apply_to_list(dec.prefix(i).as_signed(), &t_list(q).unwrap()).unwrap();
                t.record(k, via_t == moved, || {
                    format!(
                        "w = {w}, i = {i}, Q_i = {q}: (Q..Q_(i+1))L_i = {moved}, (Q..Q_i)T_i = {via_t}"
                    )
                });
            }
        }
    }))
}

fn interval(family: Family, n: usize, domain: Domain) -> Result<Tally> {
    let table = cayley::table(family, n)?;
    if table.max_length() > DEFAULT_INTERVAL_LENGTH_BOUND {
        return Err(Error::LengthBound {
            length: table.max_length(),
            bound: DEFAULT_INTERVAL_LENGTH_BOUND,
        });
    }
    let pairs = pair_cases(&table, domain)?;
    Ok(sweep(pairs.len(), |k, t| {
        let (u, v) = (pairs[k].0 as usize, pairs[k].1 as usize);
        let ok = interval_product_check_indexed(&table, u, v, DEFAULT_INTERVAL_LENGTH_BOUND)
            .unwrap_or(false);
        t.record(k, ok, || {
            format!(
                "w = {}, v = {}: [id, w ⋆ v] differs from [id, w][id, v]",
                format_window(table.window(u)),
                format_window(table.window(v))
            )
        });
    }))
}

/// Every word of length at most [`SUBWORD_MAX_LEN`] satisfies
/// `s_1..s_k <= s_1 ⋆ .. ⋆ s_k`, with equality when the word is reduced,
/// and the word is reduced exactly when `ℓ(s_1 ⋆ .. ⋆ s_k) = k`.
///
/// Equality does not force the word to be reduced (`s_1 s_1 s_1`); such
/// words are counted in the returned total rather than failed.
fn subword(family: Family, n: usize) -> Result<(Tally, u64)> {
    let table = cayley::table(family, n)?;
    let words = all_words(table.generator_count(), SUBWORD_MAX_LEN);
    let id = table.identity_index();
    let loose = std::sync::atomic::AtomicU64::new(0);
    let tally = sweep(words.len(), |k, t| {
        let word = &words[k];
        let plain = table.mul_word(word, id);
        let star = table.star_word(word, id);
        let below = lower_interval_mask(&table, star, &table.reduced_word(star))[plain];
        let reduced = table.length(plain) == word.len();
        if plain == star && !reduced {
            loose.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        }
        let ok =
            below && (!reduced || plain == star) && (reduced == (table.length(star) == word.len()));
        t.record(k, ok, || {
            format!(
                "word {}: product {}, star {}, reduced {reduced}",
                Word::new(word.clone()),
                format_window(table.window(plain)),
                format_window(table.window(star))
            )
        });
    });
    Ok((tally, loose.into_inner()))
}

/// All words over `1..=gens` of length at most `max_len`, shortest first.
pub fn all_words(gens: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier = words.clone();
    for _ in 0..max_len {
        frontier = frontier
            .iter()
            .flat_map(|w| (1..=gens).map(move |s| [w.as_slice(), &[s]].concat()))
            .collect();
        words.extend(frontier.iter().cloned());
    }
    words
}

/// Elements of the group as a convenience for callers building their own
/// sweeps.
pub fn all_elements(family: Family, n: usize) -> Result<Vec<Element>> {
    Ok(cayley::table(family, n)?.elements().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_sweeps_pass() {
        for (suite, family, n) in [
            (Suite::MainTheorem, Family::A, 3),
            (Suite::MainTheorem, Family::D, 3),
            (Suite::FoldUnfoldB, Family::B, 2),
            (Suite::Interval, Family::B, 2),
            (Suite::Subword, Family::A, 3),
            (Suite::TypeDBad, Family::D, 4),
        ] {
            let r = run_suite(suite, family, n, Domain::Exhaustive).unwrap();
            assert!(r.ok(), "{r}");
            assert!(r.checked > 0);
        }
    }

    #[test]
    fn lemma_suites_on_d3() {
        for suite in Suite::ALL.into_iter().filter(|s| s.type_d_only()) {
            let r = run_suite(suite, Family::D, 3, Domain::Exhaustive).unwrap();
            assert!(r.ok(), "{r}");
        }
    }

    #[test]
    fn type_b_cascade_has_counterexamples() {
        let r = run_suite(Suite::MainTheorem, Family::B, 2, Domain::Exhaustive).unwrap();
        assert_eq!((r.passed, r.checked), (62, 64));
        let c = r.counterexample.unwrap();
        assert!(c.starts_with("w = [-1,2], v = [-2,-1]"), "{c}");
        let r = run_suite(Suite::FoldUnfoldB, Family::B, 2, Domain::Exhaustive).unwrap();
        assert!(r.ok());
    }

    #[test]
    fn fringe_table_rows() {
        // (pattern, s_4 ⋆ w) on the entries ±3, ±4 of the unfolding. The
        // first row reads -4,-3,3,4; the hop column must equal the star one.
        let expected: [([i32; 4], [i32; 4]); 8] = [
            ([3, 4, -4, -3], [-4, -3, 3, 4]),
            ([4, 3, -3, -4], [-3, -4, 4, 3]),
            ([-3, 4, -4, 3], [-3, 4, -4, 3]),
            ([4, -3, 3, -4], [-3, 4, -4, 3]),
            ([3, -4, 4, -3], [-4, 3, -3, 4]),
            ([-4, 3, -3, 4], [-4, 3, -3, 4]),
            ([-3, -4, 4, 3], [-3, -4, 4, 3]),
            ([-4, -3, 3, 4], [-4, -3, 3, 4]),
        ];
        let rows = fringe_table(4).unwrap();
        assert_eq!(rows.len(), 8);
        for (pattern, star) in expected {
            let row = rows.iter().find(|r| r.pattern == pattern).unwrap();
            assert_eq!(row.star, star, "{pattern:?}");
            assert_eq!(row.hop, star, "{pattern:?}");
        }
    }

    #[test]
    fn wrong_family_rejected() {
        assert!(run_suite(Suite::HopNeg, Family::B, 3, Domain::Exhaustive).is_err());
        assert!(run_suite(Suite::FoldUnfoldB, Family::D, 3, Domain::Exhaustive).is_err());
    }

    #[test]
    fn sampled_runs_are_reproducible() {
        let dom = Domain::Sampled { count: 40, seed: 9 };
        let a = run_suite(Suite::MainTheorem, Family::D, 4, dom).unwrap();
        let b = run_suite(Suite::MainTheorem, Family::D, 4, dom).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.checked, 40);
    }
}
