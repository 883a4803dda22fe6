//! Incremental column echelon form.
//!
//! Vectors are inserted one at a time and reduced against the stored ones.
//! The pivot of each stored vector is its first nonzero index, so for a
//! fixed insertion order the result is fully deterministic.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{ExactScalar, SparseVec};

const NONE: usize = usize::MAX;

/// Dense scratch accumulator with a record of touched indices.
struct Workspace {
    values: Vec<ExactScalar>,
    touched: Vec<usize>,
    live: Vec<bool>,
}

impl Workspace {
    fn new(dim: usize) -> Self {
        Workspace { values: vec![ExactScalar::zero(); dim], touched: Vec::new(), live: vec![false; dim] }
    }

    fn grow(&mut self, dim: usize) {
        if self.values.len() < dim {
            self.values.resize(dim, ExactScalar::zero());
            self.live.resize(dim, false);
        }
    }

    fn load(&mut self, v: &SparseVec) {
        for (i, x) in v.iter() {
            self.values[*i] = x.clone();
            self.touch(*i);
        }
    }

    fn touch(&mut self, i: usize) -> bool {
        if !self.live[i] {
            self.live[i] = true;
            self.touched.push(i);
            true
        } else {
            false
        }
    }

    /// Drains the workspace into a sorted sparse vector.
    fn take(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.live[i] = false;
            let x = std::mem::take(&mut self.values[i]);
            if !x.is_zero() {
                out.push((i, x));
            }
        }
        self.touched.clear();
        SparseVec::from_sorted_unchecked(out)
    }
}

/// Outcome of inserting a vector.
pub enum Insert {
    /// The vector was independent; it is stored with the given pivot index.
    Independent(usize),
    /// The vector reduced to zero. With tracking enabled, the payload is the
    /// linear relation over inserted vectors (coefficient 1 on the new one).
    Dependent(Option<SparseVec>),
}

pub struct Echelon {
    dim: usize,
    pivot_owner: Vec<usize>,
    vectors: Vec<SparseVec>,
    pivots: Vec<usize>,
    /// For each stored vector, its expression in inserted vectors.
    combos: Option<Vec<SparseVec>>,
    inserted: usize,
    work: Workspace,
    combo_work: Workspace,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            pivot_owner: vec![NONE; dim],
            vectors: Vec::new(),
            pivots: Vec::new(),
            combos: None,
            inserted: 0,
            work: Workspace::new(dim),
            combo_work: Workspace::new(0),
        }
    }

    /// Echelon form that remembers how each stored vector was obtained.
    pub fn with_tracking(dim: usize) -> Self {
        let mut e = Self::new(dim);
        e.combos = Some(Vec::new());
        e
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` in place (in the workspace) and returns the remainder
    /// together with the multipliers applied to stored vectors.
    fn reduce(&mut self, v: &SparseVec, stop_at_free: bool) -> (SparseVec, Vec<(usize, ExactScalar)>) {
        let mut used = Vec::new();
        self.work.load(v);
        let mut heap: BinaryHeap<Reverse<usize>> = v.iter().map(|(i, _)| Reverse(*i)).collect();
        while let Some(Reverse(i)) = heap.pop() {
            if self.work.values[i].is_zero() {
                continue;
            }
            let owner = self.pivot_owner[i];
            if owner == NONE {
                if stop_at_free {
                    break;
                }
                continue;
            }
            let f = self.work.values[i].clone();
            for (j, y) in self.vectors[owner].iter() {
                let nv = &self.work.values[*j] - &(&f * y);
                self.work.values[*j] = nv;
                // Entries of a stored vector never precede its pivot, so an
                // already-touched index is still waiting in the heap.
                if self.work.touch(*j) {
                    heap.push(Reverse(*j));
                }
            }
            used.push((owner, f));
        }
        (self.work.take(), used)
    }

    /// Inserts a vector; returns whether it extended the span.
    pub fn insert(&mut self, v: &SparseVec) -> Insert {
        if let Some(i) = v.max_index() {
            assert!(i < self.dim, "vector index {i} out of range {}", self.dim);
        }
        let id = self.inserted;
        self.inserted += 1;
        let (rem, used) = self.reduce(v, true);
        let combo = self.combos.as_ref().map(|combos| {
            self.combo_work.grow(self.inserted);
            self.combo_work.values[id] = ExactScalar::one();
            self.combo_work.touch(id);
            for (owner, f) in &used {
                for (j, y) in combos[*owner].iter() {
                    let nv = &self.combo_work.values[*j] - &(f * y);
                    self.combo_work.values[*j] = nv;
                    self.combo_work.touch(*j);
                }
            }
            self.combo_work.take()
        });
        let lead = rem.entries().first().cloned();
        match lead {
            None => Insert::Dependent(combo),
            Some((p, lead)) => {
                let inv = lead.recip().expect("nonzero lead");
                let normalized = rem.scale(&inv);
                self.pivot_owner[p] = self.vectors.len();
                self.vectors.push(normalized);
                self.pivots.push(p);
                if let (Some(combos), Some(c)) = (self.combos.as_mut(), combo) {
                    combos.push(c.scale(&inv));
                }
                Insert::Independent(p)
            }
        }
    }

    /// Whether `v` lies in the current span.
    pub fn contains(&mut self, v: &SparseVec) -> bool {
        let (rem, _) = self.reduce(v, true);
        rem.is_zero()
    }

    /// Expresses `v` as a combination of inserted vectors, if possible.
    /// Requires tracking.
    pub fn express(&mut self, v: &SparseVec) -> Option<SparseVec> {
        let (rem, used) = self.reduce(v, true);
        if !rem.is_zero() {
            return None;
        }
        let combos = self.combos.as_ref().expect("express requires tracking");
        let mut acc = SparseVec::new();
        for (owner, f) in used {
            acc = acc.axpy(&f, &combos[owner]);
        }
        Some(acc)
    }

    /// Fully reduces `v` modulo the span: the result has no entry on a pivot.
    pub fn remainder(&mut self, v: &SparseVec) -> SparseVec {
        self.reduce(v, false).0
    }
}

/// Rank of a dense row-major matrix by ordinary rational elimination.
pub fn dense_rank(rows: usize, cols: usize, data: &mut [Vec<ExactScalar>]) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !data[r][c].is_zero()) else {
            continue;
        };
        data.swap(rank, p);
        let inv = data[rank][c].recip().expect("nonzero pivot");
        for r in rank + 1..rows {
            if data[r][c].is_zero() {
                continue;
            }
            let f = &data[r][c] * &inv;
            for k in c..cols {
                if data[rank][k].is_zero() {
                    continue;
                }
                let nv = &data[r][k] - &(&f * &data[rank][k]);
                data[r][k] = nv;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
