//! Breadth-first enumeration of small Coxeter groups.
//!
//! A [`GroupTable`] is the ground truth for Coxeter length, reduced words and
//! descents. It is built by BFS from the identity under left multiplication
//! by the simple generators, so the BFS depth of an element is its length.

use std::collections::HashMap;
use std::io::{self, Write};
use std::sync::{Arc, Mutex, OnceLock};

use crate::element::{Element, Family};
use crate::error::{Error, Result};
use crate::notation::format_window;
use crate::perm::{Side, Word};

/// Enough for `S_8`, `B_5` and `D_6`.
pub const DEFAULT_ELEMENT_BUDGET: usize = 400_000;

const NO_PARENT: u32 = u32::MAX;

pub struct GroupTable {
    family: Family,
    rank: usize,
    gens: usize,
    windows: Vec<i32>,
    index: HashMap<Box<[i32]>, u32>,
    length: Vec<u32>,
    /// `(predecessor, 0-based generator)` with `w = s * predecessor`.
    parent: Vec<(u32, u8)>,
    left: Vec<u32>,
}

pub fn build_table(family: Family, n: usize) -> Result<GroupTable> {
    build_table_with_budget(family, n, DEFAULT_ELEMENT_BUDGET)
}

pub fn build_table_with_budget(family: Family, n: usize, budget: usize) -> Result<GroupTable> {
    family.check_rank(n)?;
    let order = family.order(n);
    if order > budget as u128 {
        return Err(Error::TableBudget {
            family,
            rank: n,
            order,
            budget,
        });
    }
    let order = order as usize;
    let gens = family.generator_count(n);
    let mut table = GroupTable {
        family,
        rank: n,
        gens,
        windows: Vec::with_capacity(order * n),
        index: HashMap::with_capacity(order),
        length: Vec::with_capacity(order),
        parent: Vec::with_capacity(order),
        left: Vec::new(),
    };
    let id = Element::identity(family, n);
    table.push(id.window(), 0, (NO_PARENT, 0));

    // Elements are appended in BFS order, so the vector doubles as the queue.
    let mut head = 0;
    let mut left = Vec::with_capacity(order * gens);
    while head < table.length.len() {
        let current = table.element(head);
        let depth = table.length[head];
        for g in 0..gens {
            let next = current.act(g + 1, Side::Left)?;
            let idx = match table.index.get(next.window()) {
                Some(&idx) => idx,
                None => table.push(next.window(), depth + 1, (head as u32, g as u8)),
            };
            left.push(idx);
        }
        head += 1;
    }
    table.left = left;
    if table.len() != order {
        return Err(Error::Unsupported(format!(
            "BFS reached {} elements of {family}_{n}, expected {order}",
            table.len()
        )));
    }
    Ok(table)
}

type TableCache = Mutex<HashMap<(Family, usize), Arc<GroupTable>>>;

/// Process-wide cache of built tables.
pub fn table(family: Family, n: usize) -> Result<Arc<GroupTable>> {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache
        .lock()
        .expect("table cache poisoned")
        .get(&(family, n))
    {
        return Ok(Arc::clone(t));
    }
    // Built outside the lock; a racing builder produces an identical table.
    let built = Arc::new(build_table(family, n)?);
    let mut guard = cache.lock().expect("table cache poisoned");
    Ok(Arc::clone(guard.entry((family, n)).or_insert(built)))
}

impl GroupTable {
    fn push(&mut self, window: &[i32], depth: u32, parent: (u32, u8)) -> u32 {
        let idx = self.length.len() as u32;
        self.windows.extend_from_slice(window);
        self.index.insert(window.into(), idx);
        self.length.push(depth);
        self.parent.push(parent);
        idx
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generator_count(&self) -> usize {
        self.gens
    }

    pub fn len(&self) -> usize {
        self.length.len()
    }

    pub fn is_empty(&self) -> bool {
        self.length.is_empty()
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn window(&self, idx: usize) -> &[i32] {
        &self.windows[idx * self.rank..(idx + 1) * self.rank]
    }

    pub fn element(&self, idx: usize) -> Element {
        Element::from_trusted(self.family, self.window(idx).to_vec())
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.len()).map(|i| self.element(i))
    }

    pub fn index_of_window(&self, window: &[i32]) -> Option<usize> {
        self.index.get(window).map(|&i| i as usize)
    }

    pub fn index_of(&self, w: &Element) -> Result<usize> {
        if w.family() != self.family || w.rank() != self.rank {
            return Err(Error::NotInGroup(format!(
                "{w} ({}_{})",
                w.family(),
                w.rank()
            )));
        }
        self.index_of_window(w.window())
            .ok_or_else(|| Error::NotInGroup(w.to_string()))
    }

    pub fn length(&self, idx: usize) -> usize {
        self.length[idx] as usize
    }

    pub fn length_of(&self, w: &Element) -> Result<usize> {
        Ok(self.length(self.index_of(w)?))
    }

    pub fn max_length(&self) -> usize {
        self.length.iter().copied().max().unwrap_or(0) as usize
    }

    /// Index of `s_{gen} * w`, with `gen` 1-based.
    pub fn left_mul(&self, idx: usize, gen: usize) -> usize {
        self.left[idx * self.gens + gen - 1] as usize
    }

    /// Predecessor and generator (1-based) on the BFS tree.
    pub fn parent(&self, idx: usize) -> Option<(usize, usize)> {
        let (p, g) = self.parent[idx];
        (p != NO_PARENT).then(|| (p as usize, g as usize + 1))
    }

    /// Reduced word read off the BFS parent chain.
    pub fn reduced_word(&self, idx: usize) -> Word {
        let mut letters = Vec::with_capacity(self.length(idx));
        let mut cur = idx;
        while let Some((p, g)) = self.parent(cur) {
            letters.push(g);
            cur = p;
        }
        Word::new(letters)
    }

    pub fn reduced_word_of(&self, w: &Element) -> Result<Word> {
        Ok(self.reduced_word(self.index_of(w)?))
    }

    /// A second reduced word, built by always peeling off the highest-index
    /// left descent.
    pub fn alternate_reduced_word(&self, idx: usize) -> Word {
        let mut letters = Vec::with_capacity(self.length(idx));
        let mut cur = idx;
        while self.length(cur) > 0 {
            let g = (1..=self.gens)
                .rev()
                .find(|&g| self.length(self.left_mul(cur, g)) < self.length(cur))
                .expect("non-identity element has a left descent");
            letters.push(g);
            cur = self.left_mul(cur, g);
        }
        Word::new(letters)
    }

    pub fn is_left_descent_index(&self, gen: usize, idx: usize) -> bool {
        self.length(self.left_mul(idx, gen)) < self.length(idx)
    }

    pub fn is_left_descent(&self, gen: usize, w: &Element) -> Result<bool> {
        if gen == 0 || gen > self.gens {
            return Err(Error::GeneratorOutOfRange {
                family: self.family,
                rank: self.rank,
                index: gen,
            });
        }
        Ok(self.is_left_descent_index(gen, self.index_of(w)?))
    }

    /// Index of the product `word * v` where each letter is applied on the
    /// left, rightmost letter first.
    pub fn mul_word(&self, word: &[usize], v: usize) -> usize {
        word.iter().rev().fold(v, |x, &g| self.left_mul(x, g))
    }

    /// Index of `u * v`.
    pub fn mul(&self, u: usize, v: usize) -> usize {
        self.mul_word(self.reduced_word(u).letters(), v)
    }

    /// `s_{a_1} ⋆ (s_{a_2} ⋆ (.. ⋆ v))`, each step resolved by lengths.
    pub fn star_word(&self, word: &[usize], v: usize) -> usize {
        word.iter().rev().fold(v, |x, &g| {
            let y = self.left_mul(x, g);
            if self.length(y) > self.length(x) {
                y
            } else {
                x
            }
        })
    }

    /// Demazure product `u ⋆ v` by indices.
    pub fn star(&self, u: usize, v: usize) -> usize {
        self.star_word(self.reduced_word(u).letters(), v)
    }

    /// One element per line: window, length and reduced word.
    pub fn dump<W: Write>(&self, out: &mut W) -> io::Result<()> {
        for idx in 0..self.len() {
            writeln!(
                out,
                "{}\t{}\t{}",
                format_window(self.window(idx)),
                self.length(idx),
                self.reduced_word(idx)
            )?;
        }
        Ok(())
    }
}
