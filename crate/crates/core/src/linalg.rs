//! Exact sparse linear algebra over ℚ.
//!
//! Vectors are sorted `(index, value)` lists without zeros. Row reduction is
//! incremental: [`Echelon`] keeps one reduced vector per pivot, the pivot being
//! the smallest index present. Callers choose the column numbering so that
//! "smallest index" carries whatever priority they need.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{format_rational, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, Rational::one())],
        }
    }

    pub fn from_map(m: BTreeMap<usize, Rational>) -> Self {
        SparseVec {
            entries: m.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Accepts entries in any order; duplicates are summed.
    pub fn from_entries(it: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut m: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, c) in it {
            *m.entry(i).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(m)
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn lead(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: &Rational, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while a < x.len() || b < y.len() {
            if b == y.len() || (a < x.len() && x[a].0 < y[b].0) {
                out.push(x[a].clone());
                a += 1;
            } else if a == x.len() || y[b].0 < x[a].0 {
                out.push((y[b].0, c * &y[b].1));
                b += 1;
            } else {
                let v = &x[a].1 + c * &y[b].1;
                if !v.is_zero() {
                    out.push((x[a].0, v));
                }
                a += 1;
                b += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Rational::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&-Rational::one(), other)
    }

    /// Keeps only the entries whose index satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(usize) -> bool) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().filter(|(i, _)| keep(*i)).cloned().collect(),
        }
    }

    /// Reindexes through `f`; entries mapped to `None` are dropped.
    pub fn remap(&self, mut f: impl FnMut(usize) -> Option<usize>) -> SparseVec {
        Self::from_entries(
            self.entries
                .iter()
                .filter_map(|(i, c)| f(*i).map(|j| (j, c.clone()))),
        )
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }
}

/// Incremental row echelon form; each stored row has a distinct pivot and is
/// reduced against earlier pivots only at its own pivot position.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&usize, &SparseVec)> {
        self.rows.iter()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Remainder of `v` after elimination against the stored pivots.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_tracked(v, |_, _| {})
    }

    fn reduce_tracked(&self, v: &SparseVec, mut on_step: impl FnMut(usize, &Rational)) -> SparseVec {
        let mut v = v.clone();
        let mut floor = 0usize;
        loop {
            // first entry at or past `floor` that hits a pivot
            let hit = v
                .entries
                .iter()
                .filter(|(i, _)| *i >= floor)
                .find(|(i, _)| self.rows.contains_key(i))
                .map(|(i, c)| (*i, c.clone()));
            let Some((p, c)) = hit else { return v };
            let row = &self.rows[&p];
            let f = -(c / row.lead().expect("stored rows are nonzero").1);
            on_step(p, &f);
            v = v.axpy(&f, row);
            floor = p + 1;
        }
    }

    /// Inserts `v`; returns `true` if it was independent of the stored rows.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce_leading(v);
        match r.lead() {
            Some((p, _)) => {
                self.rows.insert(p, r);
                true
            }
            None => false,
        }
    }

    /// Reduces only until the leading entry is not a pivot (cheaper than a
    /// full reduction, enough for rank and insertion).
    fn reduce_leading(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        while let Some((p, c)) = v.lead().map(|(p, c)| (p, c.clone())) {
            match self.rows.get(&p) {
                Some(row) => {
                    let f = -(c / row.lead().unwrap().1);
                    v = v.axpy(&f, row);
                }
                None => break,
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }
}

pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    vectors.iter().filter(|v| e.insert(v)).count()
}

/// Kernel of the linear map sending source basis vector `c` to `columns[c]`,
/// returned as vectors in source coordinates.
pub fn kernel(columns: &[SparseVec]) -> Vec<SparseVec> {
    // rows: image part, with the source combination carried alongside
    let mut ech: BTreeMap<usize, (SparseVec, SparseVec)> = BTreeMap::new();
    let mut out = Vec::new();
    for (c, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        let mut comb = SparseVec::unit(c);
        while let Some((p, x)) = v.lead().map(|(p, x)| (p, x.clone())) {
            match ech.get(&p) {
                Some((row, rc)) => {
                    let f = -(x / row.lead().unwrap().1);
                    v = v.axpy(&f, row);
                    comb = comb.axpy(&f, rc);
                }
                None => break,
            }
        }
        match v.lead() {
            Some((p, _)) => {
                ech.insert(p, (v, comb));
            }
            None => out.push(comb),
        }
    }
    out
}

/// A solution of `Σ x_c·columns[c] = target`, with every column that is
/// dependent on earlier ones set to zero. `None` if no solution exists.
pub fn solve(columns: &[SparseVec], target: &SparseVec) -> Option<SparseVec> {
    let mut ech: BTreeMap<usize, (SparseVec, SparseVec)> = BTreeMap::new();
    let eliminate = |ech: &BTreeMap<usize, (SparseVec, SparseVec)>, v: &SparseVec, comb: SparseVec| {
        let mut v = v.clone();
        let mut comb = comb;
        let mut floor = 0;
        loop {
            let hit = v
                .entries
                .iter()
                .filter(|(i, _)| *i >= floor)
                .find(|(i, _)| ech.contains_key(i))
                .map(|(i, x)| (*i, x.clone()));
            let Some((p, x)) = hit else { return (v, comb) };
            let (row, rc) = &ech[&p];
            let f = -(x / row.lead().unwrap().1);
            v = v.axpy(&f, row);
            comb = comb.axpy(&f, rc);
            floor = p + 1;
        }
    };
    for (c, col) in columns.iter().enumerate() {
        let (v, comb) = eliminate(&ech, col, SparseVec::unit(c));
        if let Some((p, _)) = v.lead() {
            ech.insert(p, (v, comb));
        }
    }
    // target + Σ f_r row_r = 0  ⇒  x = −Σ f_r comb_r
    let (rest, comb) = eliminate(&ech, target, SparseVec::new());
    if rest.is_zero() {
        Some(comb.scale(&-Rational::one()))
    } else {
        None
    }
}

/// A rectangular sparse matrix stored by columns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            columns: vec![SparseVec::new(); ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    pub fn rank(&self) -> usize {
        rank(&self.columns)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (c, x) in v.entries() {
            out = out.axpy(x, &self.columns[*c]);
        }
        out
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &SparseMatrix) -> SparseMatrix {
        SparseMatrix {
            nrows: self.nrows,
            columns: rhs.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        SparseMatrix {
            nrows: self.nrows,
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    /// `row col value` lines, zero-based, preceded by a `rows cols nnz` header.
    pub fn to_triplets(&self) -> String {
        let nnz: usize = self.columns.iter().map(SparseVec::nnz).sum();
        let mut s = format!("{} {} {}\n", self.nrows, self.ncols(), nnz);
        let mut trip: Vec<(usize, usize, &Rational)> = Vec::with_capacity(nnz);
        for (c, col) in self.columns.iter().enumerate() {
            for (r, x) in col.entries() {
                trip.push((*r, c, x));
            }
        }
        trip.sort_by_key(|(r, c, _)| (*r, *c));
        for (r, c, x) in trip {
            let _ = writeln!(s, "{r} {c} {}", format_rational(x));
        }
        s
    }
}

/// Structure of a finitely generated ℚ[ℏ]/ℏ^K-module as a direct sum of
/// cyclic modules: `blocks[e-1]` counts summands `ℚ[ℏ]/ℏ^e`, so the last entry
/// is the free rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RankProfile {
    pub blocks: Vec<usize>,
}

impl RankProfile {
    pub fn zero(order: usize) -> Self {
        RankProfile {
            blocks: vec![0; order],
        }
    }

    pub fn free(rank: usize, order: usize) -> Self {
        let mut p = Self::zero(order);
        p.blocks[order - 1] = rank;
        p
    }

    /// From `dims[j] = dim_ℚ ℏ^j M` for `j = 0..=K`.
    pub fn from_dims(dims: &[usize]) -> Self {
        let order = dims.len() - 1;
        assert_eq!(dims[order], 0, "ℏ^K must annihilate the module");
        let at_least: Vec<usize> = (0..order).map(|j| dims[j] - dims[j + 1]).collect();
        let blocks = (0..order)
            .map(|j| at_least[j] - at_least.get(j + 1).copied().unwrap_or(0))
            .collect();
        RankProfile { blocks }
    }

    pub fn order(&self) -> usize {
        self.blocks.len()
    }

    pub fn free_rank(&self) -> usize {
        *self.blocks.last().unwrap_or(&0)
    }

    /// Number of cyclic summands.
    pub fn generators(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn dim_q(&self) -> usize {
        self.blocks.iter().enumerate().map(|(e, b)| (e + 1) * b).sum()
    }

    pub fn is_free(&self) -> bool {
        self.blocks[..self.blocks.len().saturating_sub(1)]
            .iter()
            .all(|&b| b == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// Blockwise difference, `None` if some count would go negative.
    pub fn checked_sub(&self, other: &RankProfile) -> Option<RankProfile> {
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(RankProfile { blocks })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn v(e: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_entries(e.iter().map(|&(i, c)| (i, rat(c))))
    }

    #[test]
    fn rank_and_kernel() {
        let cols = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, 1)]), v(&[(0, 1), (2, -1)])];
        assert_eq!(rank(&cols), 2);
        let k = kernel(&cols);
        assert_eq!(k.len(), 1);
        let m = SparseMatrix { nrows: 3, columns: cols };
        assert!(m.apply(&k[0]).is_zero());
    }

    #[test]
    fn solve_sets_dependent_columns_to_zero() {
        let cols = vec![v(&[(0, 1)]), v(&[(0, 2)]), v(&[(1, 1)])];
        let x = solve(&cols, &v(&[(0, 3), (1, 5)])).unwrap();
        assert_eq!(x, v(&[(0, 3), (2, 5)]));
        assert!(solve(&cols, &v(&[(4, 1)])).is_none());
    }

    #[test]
    fn profile_from_dims() {
        // ℚ[ℏ]/ℏ³ ⊕ ℚ[ℏ]/ℏ: dims of ℏ^j M are 4, 2, 1, 0
        let p = RankProfile::from_dims(&[4, 2, 1, 0]);
        assert_eq!(p.blocks, vec![1, 0, 1]);
        assert_eq!(p.dim_q(), 4);
        assert!(!p.is_free());
        assert!(RankProfile::from_dims(&[6, 4, 2, 0]).is_free());
    }

    #[test]
    fn triplet_export() {
        let m = SparseMatrix {
            nrows: 2,
            columns: vec![v(&[(1, 2)]), v(&[(0, -1)])],
        };
        assert_eq!(m.to_triplets(), "2 2 2\n0 1 -1\n1 0 2\n");
    }
}
