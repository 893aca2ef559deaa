//! Bigraded cochain complexes with exact rank computations: bar and cobar
//! constructions, perturbed cobar cohomology over `ℚ[ℏ]/ℏ^K`, Hochschild
//! cochains on `S(V)` and their transport to cobar derivations.
//!
//! Cells are indexed by `(degree, weight)`; differentials raise the degree by
//! one and preserve the weight.

pub mod coalgebra;
pub mod cobar;
pub mod hochschild;
pub mod perturbed;
pub mod phi;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::{RankProfile, SparseMatrix};
use crate::{Error, Result};

pub use coalgebra::{AlgebraData, CoalgebraData, CoalgebraKind, Letter, LetterLabel};
pub use cobar::{bar_complex, cobar_complex, cobar_differential, CobarComplex, CobarDerivation, CobarElement};
pub use hochschild::{gerstenhaber, hochschild_diff, PolyDiffOp};
pub use perturbed::perturbed_cohomology;
pub use phi::{diagram_defect, phi1, DiagramDefect};

#[derive(Clone, Debug)]
pub struct GradedComplex {
    cells: BTreeMap<(i64, usize), Vec<String>>,
    diffs: BTreeMap<(i64, usize), SparseMatrix>,
}

impl GradedComplex {
    /// Checks shapes and `d∘d = 0` on every cell.
    pub fn new(
        cells: BTreeMap<(i64, usize), Vec<String>>,
        diffs: BTreeMap<(i64, usize), SparseMatrix>,
    ) -> Result<Self> {
        for (&(d, w), m) in &diffs {
            let src = cells.get(&(d, w)).map_or(0, Vec::len);
            let tgt = cells.get(&(d + 1, w)).map_or(0, Vec::len);
            if m.ncols() != src || m.nrows != tgt {
                return Err(Error::Construction(format!(
                    "differential at ({d},{w}) is {}×{}, expected {tgt}×{src}",
                    m.nrows,
                    m.ncols()
                )));
            }
        }
        let bad: Vec<(i64, usize)> = diffs
            .par_iter()
            .filter_map(|(&(d, w), m)| {
                let next = diffs.get(&(d + 1, w))?;
                (!next.compose(m).is_zero()).then_some((d, w))
            })
            .collect();
        if let Some((d, w)) = bad.first() {
            return Err(Error::Construction(format!("d∘d ≠ 0 starting at cell ({d},{w})")));
        }
        Ok(GradedComplex { cells, diffs })
    }

    pub fn cells(&self) -> &BTreeMap<(i64, usize), Vec<String>> {
        &self.cells
    }

    pub fn differentials(&self) -> &BTreeMap<(i64, usize), SparseMatrix> {
        &self.diffs
    }

    pub fn dim(&self, degree: i64, weight: usize) -> usize {
        self.cells.get(&(degree, weight)).map_or(0, Vec::len)
    }

    pub fn differential(&self, degree: i64, weight: usize) -> Option<&SparseMatrix> {
        self.diffs.get(&(degree, weight))
    }

    pub fn weights(&self) -> Vec<usize> {
        let mut w: Vec<usize> = self.cells.keys().map(|k| k.1).collect();
        w.sort();
        w.dedup();
        w
    }

    /// `Σ_d (−1)^d dim C^{d,w}`.
    pub fn euler_characteristic(&self, weight: usize) -> i64 {
        self.cells
            .iter()
            .filter(|(k, _)| k.1 == weight)
            .map(|(k, b)| if k.0.rem_euclid(2) == 0 { b.len() as i64 } else { -(b.len() as i64) })
            .sum()
    }
}

/// `dim ker − rank(incoming)` for every cell, by exact rational rank.
pub fn cohomology_ranks(cx: &GradedComplex) -> BTreeMap<(i64, usize), usize> {
    let ranks: BTreeMap<(i64, usize), usize> = cx
        .diffs
        .par_iter()
        .map(|(k, m)| (*k, m.rank()))
        .collect();
    cx.cells
        .iter()
        .map(|(&(d, w), basis)| {
            let out = ranks.get(&(d, w)).copied().unwrap_or(0);
            let inc = ranks.get(&(d - 1, w)).copied().unwrap_or(0);
            ((d, w), basis.len() - out - inc)
        })
        .collect()
}

/// One cell of a cohomology report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    pub degree: i64,
    pub weight: usize,
    pub dim: usize,
    pub rank_profile: RankProfile,
}

/// Cohomology over ℚ as report cells (profiles of length one).
pub fn cohomology_report(cx: &GradedComplex) -> Vec<CellReport> {
    let ranks = cohomology_ranks(cx);
    let mut cells: Vec<CellReport> = cx
        .cells
        .iter()
        .map(|(&(d, w), b)| CellReport {
            degree: d,
            weight: w,
            dim: b.len(),
            rank_profile: RankProfile::free(ranks[&(d, w)], 1),
        })
        .collect();
    sort_cells(&mut cells);
    cells
}

/// Weight-major, then degree.
pub fn sort_cells(cells: &mut [CellReport]) {
    cells.sort_by_key(|c| (c.weight, c.degree));
}
