//! Exact sparse linear algebra over cyclotomic fields: rank, kernel,
//! consistent solves, and an incremental row-reducer that distinguishes hard
//! constraints from droppable soft ones.
//!
//! Pivoting is deterministic (leftmost column, then sparsest row), so every
//! rank, kernel basis, and solution is reproducible across runs.

use crate::cyclotomic::CycNum;
use std::collections::BTreeMap;

pub type SparseRow = BTreeMap<usize, CycNum>;

/// An exact matrix with labelled rows and columns, stored row-sparse.
#[derive(Clone)]
pub struct SliceMatrix {
    pub n_rows: usize,
    pub n_cols: usize,
    pub rows: Vec<SparseRow>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

impl SliceMatrix {
    pub fn new(n_rows: usize, n_cols: usize) -> SliceMatrix {
        SliceMatrix {
            n_rows,
            n_cols,
            rows: vec![BTreeMap::new(); n_rows],
            row_labels: vec![String::new(); n_rows],
            col_labels: vec![String::new(); n_cols],
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycNum) {
        if v.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &CycNum) {
        if v.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.rows[r].entry(c) {
            Entry::Occupied(mut e) => {
                let sum = e.get().add(v);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            Entry::Vacant(e) => {
                e.insert(v.clone());
            }
        }
    }

    /// Apply the matrix to a dense column vector.
    pub fn apply(&self, v: &[CycNum]) -> Vec<CycNum> {
        let mut out = vec![CycNum::zero(1); self.n_rows];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, a) in row {
                out[r] = out[r].add(&a.mul(&v[*c]));
            }
        }
        out
    }

    /// Sparse matrix product `self * other`.
    pub fn matmul(&self, other: &SliceMatrix) -> SliceMatrix {
        assert_eq!(self.n_cols, other.n_rows, "dimension mismatch");
        let mut out = SliceMatrix::new(self.n_rows, other.n_cols);
        for (r, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                for (c, b) in &other.rows[*k] {
                    out.add_to(r, *c, &a.mul(b));
                }
            }
        }
        out
    }

    pub fn same_entries(&self, other: &SliceMatrix) -> bool {
        if self.n_rows != other.n_rows || self.n_cols != other.n_cols {
            return false;
        }
        self.rows == other.rows
    }

    pub fn is_identity(&self) -> bool {
        if self.n_rows != self.n_cols {
            return false;
        }
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != 1 {
                return false;
            }
            match row.get(&r) {
                Some(v) if v.is_one() => {}
                _ => return false,
            }
        }
        true
    }

    pub fn rank(&self) -> usize {
        Reducer::from_rows(self.n_cols, self.rows.iter().cloned()).pivot_count()
    }

    /// Exact kernel basis; each vector is verified to be annihilated.
    pub fn kernel_basis(&self) -> Vec<Vec<CycNum>> {
        let red = Reducer::from_rows(self.n_cols, self.rows.iter().cloned());
        let basis = red.kernel_basis();
        for v in &basis {
            debug_assert!(self.apply(v).iter().all(|x| x.is_zero()));
        }
        basis
    }

    /// Solve `self * x = rhs`; None when inconsistent. Free variables are 0.
    pub fn solve(&self, rhs: &[CycNum]) -> Option<Vec<CycNum>> {
        let mut sys = LinearSystem::new(self.n_cols);
        for (row, b) in self.rows.iter().zip(rhs) {
            sys.add_row(row.clone(), b.clone());
        }
        let outcome = sys.solve();
        if outcome.consistent {
            Some(outcome.particular)
        } else {
            None
        }
    }
}

/// Incremental exact row reduction maintaining a reduced echelon set.
struct Reducer {
    n_cols: usize,
    /// pivot column -> (normalized row, rhs)
    pivots: BTreeMap<usize, (SparseRow, CycNum)>,
}

impl Reducer {
    fn new(n_cols: usize) -> Reducer {
        Reducer {
            n_cols,
            pivots: BTreeMap::new(),
        }
    }

    fn from_rows(n_cols: usize, rows: impl Iterator<Item = SparseRow>) -> Reducer {
        let mut red = Reducer::new(n_cols);
        for row in rows {
            red.insert(row, CycNum::zero(1));
        }
        red
    }

    fn pivot_count(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce a row against the pivot set.
    fn reduce(&self, mut row: SparseRow, mut rhs: CycNum) -> (SparseRow, CycNum) {
        loop {
            let hit = row
                .iter()
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            match hit {
                None => return (row, rhs),
                Some((c, v)) => {
                    let (prow, prhs) = &self.pivots[&c];
                    for (pc, pv) in prow {
                        let delta = v.mul(pv).neg();
                        add_entry(&mut row, *pc, &delta);
                    }
                    rhs = rhs.sub(&v.mul(prhs));
                    row.remove(&c);
                }
            }
        }
    }

    /// Insert a row; returns InsertOutcome describing what happened.
    fn insert(&mut self, row: SparseRow, rhs: CycNum) -> InsertOutcome {
        let (row, rhs) = self.reduce(row, rhs);
        if row.is_empty() {
            return if rhs.is_zero() {
                InsertOutcome::Redundant
            } else {
                InsertOutcome::Inconsistent
            };
        }
        // Normalize on the leftmost column and back-substitute into existing pivots.
        let (&col, lead) = row.iter().next().unwrap();
        let inv = lead.inv().expect("nonzero leading entry");
        let nrow: SparseRow = row
            .iter()
            .map(|(c, v)| (*c, v.mul(&inv)))
            .collect();
        let nrhs = rhs.mul(&inv);
        let affected: Vec<usize> = self
            .pivots
            .iter()
            .filter(|(_, (prow, _))| prow.contains_key(&col))
            .map(|(c, _)| *c)
            .collect();
        for pcol in affected {
            let (mut prow, mut prhs) = self.pivots.remove(&pcol).unwrap();
            let factor = prow.remove(&col).unwrap();
            for (c, v) in &nrow {
                if *c != col {
                    let delta = factor.mul(v).neg();
                    add_entry(&mut prow, *c, &delta);
                }
            }
            prhs = prhs.sub(&factor.mul(&nrhs));
            self.pivots.insert(pcol, (prow, prhs));
        }
        let mut stored = nrow;
        stored.remove(&col);
        stored.insert(col, CycNum::one(1));
        self.pivots.insert(col, (stored, nrhs));
        InsertOutcome::NewPivot
    }

    /// Kernel basis (rhs ignored): one vector per free column.
    fn kernel_basis(&self) -> Vec<Vec<CycNum>> {
        let mut basis = Vec::new();
        for free in 0..self.n_cols {
            if self.pivots.contains_key(&free) {
                continue;
            }
            let mut v = vec![CycNum::zero(1); self.n_cols];
            v[free] = CycNum::one(1);
            for (pcol, (prow, _)) in &self.pivots {
                if let Some(a) = prow.get(&free) {
                    v[*pcol] = a.neg();
                }
            }
            basis.push(v);
        }
        basis
    }

    fn particular(&self) -> Vec<CycNum> {
        let mut x = vec![CycNum::zero(1); self.n_cols];
        for (pcol, (_, prhs)) in &self.pivots {
            x[*pcol] = prhs.clone();
        }
        x
    }
}

fn add_entry(row: &mut SparseRow, c: usize, v: &CycNum) {
    if v.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match row.entry(c) {
        Entry::Occupied(mut e) => {
            let sum = e.get().add(v);
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
        Entry::Vacant(e) => {
            e.insert(v.clone());
        }
    }
}

enum InsertOutcome {
    NewPivot,
    Redundant,
    Inconsistent,
}

/// A linear system with hard equations and optional soft (droppable) ones.
pub struct LinearSystem {
    n_cols: usize,
    hard: Vec<(SparseRow, CycNum)>,
    soft: Vec<(SparseRow, CycNum)>,
}

/// Result of a solve: a deterministic particular solution (free variables 0,
/// soft rows honored greedily in order), plus bookkeeping.
pub struct SolveOutcome {
    pub particular: Vec<CycNum>,
    pub consistent: bool,
    /// Indices of soft rows that conflicted with earlier constraints.
    pub dropped_soft: Vec<usize>,
    pub rank: usize,
    pub nullity: usize,
}

impl LinearSystem {
    pub fn new(n_cols: usize) -> LinearSystem {
        LinearSystem {
            n_cols,
            hard: Vec::new(),
            soft: Vec::new(),
        }
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn add_row(&mut self, row: SparseRow, rhs: CycNum) {
        self.hard.push((row, rhs));
    }

    pub fn add_soft_row(&mut self, row: SparseRow, rhs: CycNum) {
        self.soft.push((row, rhs));
    }

    pub fn solve(&self) -> SolveOutcome {
        let mut red = Reducer::new(self.n_cols);
        let mut consistent = true;
        for (row, rhs) in &self.hard {
            if let InsertOutcome::Inconsistent = red.insert(row.clone(), rhs.clone()) {
                consistent = false;
            }
        }
        let hard_rank = red.pivot_count();
        let mut dropped = Vec::new();
        for (i, (row, rhs)) in self.soft.iter().enumerate() {
            if let InsertOutcome::Inconsistent = red.insert(row.clone(), rhs.clone()) {
                dropped.push(i);
            }
        }
        SolveOutcome {
            particular: red.particular(),
            consistent,
            dropped_soft: dropped,
            rank: hard_rank,
            nullity: self.n_cols - hard_rank,
        }
    }
}
