//! Hopping operators `h_{t,L}` and the lifting lists `w↖i`.
//!
//! `h_{t,L}` repeatedly looks to the right of `t` for members of `L` that are
//! greater than `t`, takes the one that comes latest in `L`'s own order and
//! swaps it with `t`. On signed permutations the scan runs over the
//! unfolding and each swap `t <-> q` is mirrored by `-t <-> -q`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::cayley;
use crate::element::Family;
use crate::error::{Error, Result};
use crate::notation::format_window;
use crate::perm::Perm;
use crate::signed::{in_pm_range, pm_index, EvenSignedPerm, SignedPerm};

/// Largest rank for which `~_i` is decided by enumerating `D_n`.
pub const EQUIVALENCE_RANK_LIMIT: usize = 5;

/// An ordered list of distinct nonzero values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct HopList {
    items: Vec<i32>,
}

impl HopList {
    pub fn new(items: Vec<i32>) -> Result<Self> {
        for (k, &v) in items.iter().enumerate() {
            if v == 0 {
                return Err(Error::ValueOutOfRange { value: 0, rank: 0 });
            }
            if items[..k].contains(&v) {
                return Err(Error::DuplicateListItem(v));
            }
        }
        Ok(HopList { items })
    }

    pub fn empty() -> Self {
        HopList::default()
    }

    pub fn items(&self) -> &[i32] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, v: i32) -> bool {
        self.items.contains(&v)
    }

    fn check_signed(&self, n: usize) -> Result<()> {
        match self.items.iter().find(|&&v| !in_pm_range(v, n)) {
            Some(&value) => Err(Error::ValueOutOfRange { value, rank: n }),
            None => Ok(()),
        }
    }

    fn check_unsigned(&self, n: usize) -> Result<()> {
        match self.items.iter().find(|&&v| v < 1 || v as usize > n) {
            Some(&value) => Err(Error::ValueOutOfRange { value, rank: n }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for HopList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_window(&self.items))
    }
}

/// One swap performed by a hopping operator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopStep {
    /// 1-based position of `t` after the swap, counted left to right in the
    /// working sequence (the unfolding, for signed permutations).
    pub position: usize,
    pub partner: i32,
    pub window: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopTrace {
    pub t: i32,
    pub list: HopList,
    pub start: Vec<i32>,
    pub steps: Vec<HopStep>,
}

impl HopTrace {
    /// `h_{t,[..]}` in the usual subscript style.
    pub fn operator(&self) -> String {
        format!("h_{{{},{}}}", self.t, self.list)
    }
}

impl fmt::Display for HopTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} on {}", self.operator(), format_window(&self.start))?;
        for step in &self.steps {
            writeln!(
                f,
                "  swap {} with {} -> {} ({} now at position {})",
                self.t,
                step.partner,
                format_window(&step.window),
                self.t,
                step.position
            )?;
        }
        Ok(())
    }
}

/// Runs `h_{t,list}` in place on `seq`, where `slot(v)` is both the index of
/// `v`'s entry in the position table and its rank in the value order.
fn run_hops(
    seq: &mut [i32],
    slot: impl Fn(i32) -> usize,
    mirrored: bool,
    t: i32,
    list: &[i32],
    mut steps: Option<&mut Vec<HopStep>>,
) {
    let mut pos = vec![0usize; seq.len()];
    for (p, &v) in seq.iter().enumerate() {
        pos[slot(v)] = p;
    }
    let t_slot = slot(t);
    let swap = |seq: &mut [i32], pos: &mut [usize], a: i32, b: i32| {
        let (sa, sb) = (slot(a), slot(b));
        let (pa, pb) = (pos[sa], pos[sb]);
        seq[pa] = b;
        seq[pb] = a;
        pos[sa] = pb;
        pos[sb] = pa;
    };
    loop {
        let here = pos[t_slot];
        let partner = list.iter().rev().copied().find(|&q| {
            let s = slot(q);
            s > t_slot && pos[s] > here
        });
        let Some(q) = partner else { break };
        swap(seq, &mut pos, t, q);
        if mirrored && q != -t {
            swap(seq, &mut pos, -t, -q);
        }
        if let Some(steps) = steps.as_deref_mut() {
            steps.push(HopStep {
                position: seq.iter().position(|&v| v == t).unwrap() + 1,
                partner: q,
                window: seq.to_vec(),
            });
        }
    }
}

fn check_a(w: &Perm, t: i32, list: &HopList) -> Result<()> {
    let n = w.rank();
    if t < 1 || t as usize > n {
        return Err(Error::ValueOutOfRange { value: t, rank: n });
    }
    list.check_unsigned(n)
}

fn check_signed(w: &SignedPerm, t: i32, list: &HopList) -> Result<()> {
    let n = w.rank();
    if !in_pm_range(t, n) {
        return Err(Error::ValueOutOfRange { value: t, rank: n });
    }
    list.check_signed(n)
}

pub fn hop_a(w: &Perm, t: i32, list: &HopList) -> Result<Perm> {
    check_a(w, t, list)?;
    let mut seq = w.window().to_vec();
    run_hops(&mut seq, |v| v as usize - 1, false, t, list.items(), None);
    Ok(Perm::from_trusted(seq))
}

pub fn hop_a_traced(w: &Perm, t: i32, list: &HopList) -> Result<(Perm, HopTrace)> {
    check_a(w, t, list)?;
    let mut seq = w.window().to_vec();
    let mut steps = Vec::new();
    run_hops(
        &mut seq,
        |v| v as usize - 1,
        false,
        t,
        list.items(),
        Some(&mut steps),
    );
    let trace = HopTrace {
        t,
        list: list.clone(),
        start: w.window().to_vec(),
        steps,
    };
    Ok((Perm::from_trusted(seq), trace))
}

/// Signed hopping. The output may have odd parity even for even input.
pub fn hop_signed(w: &SignedPerm, t: i32, list: &HopList) -> Result<SignedPerm> {
    check_signed(w, t, list)?;
    let n = w.rank();
    let mut seq = w.unfold().entries().to_vec();
    run_hops(&mut seq, |v| pm_index(v, n), true, t, list.items(), None);
    seq.truncate(n);
    Ok(SignedPerm::from_trusted(seq))
}

/// Signed hopping with the unfolding recorded after every swap.
pub fn hop_signed_traced(w: &SignedPerm, t: i32, list: &HopList) -> Result<(SignedPerm, HopTrace)> {
    check_signed(w, t, list)?;
    let n = w.rank();
    let start = w.unfold().entries().to_vec();
    let mut seq = start.clone();
    let mut steps = Vec::new();
    run_hops(
        &mut seq,
        |v| pm_index(v, n),
        true,
        t,
        list.items(),
        Some(&mut steps),
    );
    seq.truncate(n);
    let trace = HopTrace {
        t,
        list: list.clone(),
        start,
        steps,
    };
    Ok((SignedPerm::from_trusted(seq), trace))
}

/// `w↖a` in type A: the entries left of `a` that exceed `a`, in window order.
pub fn lift_a(w: &Perm, a: i32) -> Result<HopList> {
    let n = w.rank();
    if a < 1 || a as usize > n {
        return Err(Error::ValueOutOfRange { value: a, rank: n });
    }
    let p = w.position_of(a);
    Ok(HopList {
        items: w.window()[..p - 1]
            .iter()
            .copied()
            .filter(|&v| v > a)
            .collect(),
    })
}

/// Entries of the unfolding strictly left of `i` whose rank in the signed
/// order lies in `(i, upper]`.
fn lift_signed(w: &SignedPerm, i: i32, upper: usize) -> Result<HopList> {
    let n = w.rank();
    if i < 1 || i as usize > n {
        return Err(Error::ValueOutOfRange { value: i, rank: n });
    }
    let unfolded = w.unfold();
    let entries = unfolded.entries();
    let p = entries.iter().position(|&v| v == i).unwrap();
    let lower = pm_index(i, n);
    Ok(HopList {
        items: entries[..p]
            .iter()
            .copied()
            .filter(|&v| {
                let s = pm_index(v, n);
                s > lower && s <= upper
            })
            .collect(),
    })
}

/// `w↖i` in type B: unfolding entries left of `i` lying in `(i, -i]`.
pub fn lift_b(w: &SignedPerm, i: i32) -> Result<HopList> {
    let n = w.rank();
    lift_signed(w, i, pm_index(-i.clamp(1, n as i32), n))
}

/// `w↖i` in type D: unfolding entries left of `i` lying in the open
/// interval `(i, -i)`.
pub fn lift_d(w: &EvenSignedPerm, i: i32) -> Result<HopList> {
    let n = w.rank();
    lift_signed(w.as_signed(), i, pm_index(-i.clamp(1, n as i32), n) - 1)
}

/// `w(L) = [w(l_1), .., w(l_k)]` with `w(-a) = -w(a)`.
pub fn apply_to_list(w: &SignedPerm, list: &HopList) -> Result<HopList> {
    list.check_signed(w.rank())?;
    Ok(HopList {
        items: w.apply(list.items()),
    })
}

/// Decides `L ~_i L'`: whether `h_{i,L}` and `h_{i,L'}` agree on all of
/// `D_n`.
pub fn hoplists_equivalent(i: i32, l1: &HopList, l2: &HopList, n: usize) -> Result<bool> {
    if n > EQUIVALENCE_RANK_LIMIT {
        return Err(Error::RankTooLarge {
            family: Family::D,
            rank: n,
            limit: EQUIVALENCE_RANK_LIMIT,
            what: "exhaustive list equivalence",
        });
    }
    if !in_pm_range(i, n) {
        return Err(Error::ValueOutOfRange { value: i, rank: n });
    }
    l1.check_signed(n)?;
    l2.check_signed(n)?;
    if l1 == l2 {
        return Ok(true);
    }
    let table = cayley::table(Family::D, n)?;
    Ok((0..table.len()).into_par_iter().all(|idx| {
        let w = SignedPerm::from_trusted(table.window(idx).to_vec());
        hop_signed(&w, i, l1).unwrap() == hop_signed(&w, i, l2).unwrap()
    }))
}
