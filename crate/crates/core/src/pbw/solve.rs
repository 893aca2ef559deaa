//! Relations from a Poisson bivector, completed order by order.
//!
//! The first-order relations are `R_ij = ℏ·Sym(α_ij)`. A correction
//! `ℏ^m·r` added to `R_ab` leaves every defect unchanged below `ℏ^{m+1}` and
//! enters the `ℏ^{m+1}` part linearly, so the `ℏ^t` defects are cancelled by
//! solving for `ℏ^{t−1}` corrections, `t = 2, …, K−1`. At `t = 2` the only
//! candidates would be first-order terms, which are fixed by `α`: a nonzero
//! `ℏ²` defect is a genuine obstruction (for linear `α` it is the Jacobiator).
//! Higher-order failures are reported as unresolved at the ansatz bound.
//!
//! The ansatz for `ℏ^m` corrections is all ordered monomials of degree at
//! most the bound. The solver prefers low degree: unknowns are ordered by
//! (degree, pair, monomial) and every unknown dependent on earlier ones is set
//! to zero. Solutions are not unique in general.

use rayon::prelude::*;
use serde::Serialize;

use super::confluence::{confluence_defects, DefectEntry};
use super::rewrite::RewriteSystem;
use super::RelationSet;
use crate::linalg::{solve, SparseVec};
use crate::polyvector::Polyvector;
use crate::scalar::{HbarSeries, Rational};
use crate::tensor::{sym_embed, CommMonomial, NcElement, Polynomial, Word};
use crate::{Error, Result};

/// `R_ij = ℏ·Sym(α_ij)` for every pair `i < j`.
pub fn first_order_relations(alpha: &Polyvector, order: usize) -> Result<RelationSet> {
    if alpha.homogeneous_degree().is_some_and(|d| d != 2) {
        return Err(Error::Usage("first-order relations need a bivector".into()));
    }
    let n = alpha.n();
    let mut rel = RelationSet::zero(n, order);
    for j in 0..n {
        for i in 0..j {
            let r = sym_embed(&alpha.entry(i, j), order);
            let shifted = NcElement::from_terms(n, order, r.terms().iter().map(|(w, c)| (w.clone(), c.shift(1))))?;
            rel.set(i, j, shifted)?;
        }
    }
    Ok(rel)
}

/// The default ansatz degree for `ℏ^m` corrections, given the largest
/// polynomial degree `g` of the bivector: `max(2, 2 + (m−1)(g−2))`.
pub fn default_degree_bound(g: usize, m: usize) -> usize {
    let v = 2 + (m as i64 - 1) * (g as i64 - 2);
    v.max(2) as usize
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Correction {
    /// Power of ℏ carried by the correction.
    pub order: usize,
    pub pair: (usize, usize),
    pub polynomial: Polynomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum ObstructionKind {
    /// No correction can enter at this order; the defect is forced.
    Genuine,
    /// No solution among corrections of degree `≤ bound`.
    UnresolvedAtBound { bound: usize },
}

#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Solved {
        relations: RelationSet,
        corrections: Vec<Correction>,
    },
    Obstructed {
        /// Power of ℏ at which the defect survives.
        order: usize,
        kind: ObstructionKind,
        /// Nonzero defects, truncated modulo `ℏ^{order+1}`.
        residual: Vec<DefectEntry>,
        /// Relations completed below `order`.
        relations: RelationSet,
        corrections: Vec<Correction>,
    },
}

impl SolveOutcome {
    pub fn is_solved(&self) -> bool {
        matches!(self, SolveOutcome::Solved { .. })
    }

    pub fn relations(&self) -> &RelationSet {
        match self {
            SolveOutcome::Solved { relations, .. } | SolveOutcome::Obstructed { relations, .. } => relations,
        }
    }

    pub fn corrections(&self) -> &[Correction] {
        match self {
            SolveOutcome::Solved { corrections, .. } | SolveOutcome::Obstructed { corrections, .. } => corrections,
        }
    }
}

/// Coordinates `(triple, word)` of the `ℏ^t` coefficient of the defects.
fn defect_vector(defects: &[DefectEntry], t: usize, index: &mut Vec<((usize, usize, usize), Word)>) -> SparseVec {
    let mut entries = Vec::new();
    for d in defects {
        for (w, x) in d.defect.hbar_coefficient(t) {
            let key = (d.triple, w);
            let pos = match index.iter().position(|k| *k == key) {
                Some(p) => p,
                None => {
                    index.push(key);
                    index.len() - 1
                }
            };
            entries.push((pos, x));
        }
    }
    SparseVec::from_entries(entries)
}

fn defects_mod(rel: &RelationSet, order: usize) -> Result<Vec<DefectEntry>> {
    confluence_defects(&RewriteSystem::new(rel.truncate_to(order)))
}

fn nonzero(defects: Vec<DefectEntry>) -> Vec<DefectEntry> {
    defects.into_iter().filter(|d| !d.defect.is_zero()).collect()
}

fn with_correction(rel: &RelationSet, pair: (usize, usize), word: &Word, c: HbarSeries) -> Result<RelationSet> {
    let mut out = rel.clone();
    let mut r = rel.get(pair.0, pair.1);
    r.add_term(word.clone(), &c);
    out.set(pair.0, pair.1, r)?;
    Ok(out)
}

/// Completes `seed` to a relation set confluent modulo `ℏ^K`, with
/// `bound(m)` the ansatz degree for `ℏ^m` corrections.
pub fn complete_relations(seed: &RelationSet, bound: impl Fn(usize) -> usize) -> Result<SolveOutcome> {
    let (n, order) = (seed.generator_count(), seed.order());
    let mut rel = seed.clone();
    let mut corrections = Vec::new();
    for t in 1..order {
        let base = defects_mod(&rel, t + 1)?;
        if base.iter().all(|d| d.defect.is_zero()) {
            continue;
        }
        let low = base.iter().map(|d| d.defect.valuation()).min().unwrap_or(t);
        if low < t {
            return Err(Error::Structural(format!(
                "defect of order ℏ^{low} survived the previous step"
            )));
        }
        let m = t - 1;
        if m < 2 {
            return Ok(SolveOutcome::Obstructed {
                order: t,
                kind: ObstructionKind::Genuine,
                residual: nonzero(base),
                relations: rel,
                corrections,
            });
        }
        let b = bound(m);
        let mut unknowns: Vec<((usize, usize), CommMonomial)> = Vec::new();
        for d in 0..=b as u32 {
            for j in 0..n {
                for i in 0..j {
                    for mono in CommMonomial::all_of_degree(n, d) {
                        unknowns.push(((i, j), mono));
                    }
                }
            }
        }
        let mut index = Vec::new();
        let base_vec = defect_vector(&base, t, &mut index);
        let unit = HbarSeries::monomial(m, Rational::from_integer(1.into()), order);
        let shifted: Vec<Vec<DefectEntry>> = unknowns
            .par_iter()
            .map(|(pair, mono)| defects_mod(&with_correction(&rel, *pair, &mono.sorted_word(), unit.clone())?, t + 1))
            .collect::<Result<_>>()?;
        let columns: Vec<SparseVec> = shifted
            .iter()
            .map(|d| defect_vector(d, t, &mut index).sub(&base_vec))
            .collect();
        let Some(x) = solve(&columns, &base_vec.scale(&-Rational::from_integer(1.into()))) else {
            return Ok(SolveOutcome::Obstructed {
                order: t,
                kind: ObstructionKind::UnresolvedAtBound { bound: b },
                residual: nonzero(base),
                relations: rel,
                corrections,
            });
        };
        let mut per_pair: std::collections::BTreeMap<(usize, usize), Polynomial> = Default::default();
        for (col, v) in x.entries() {
            let (pair, mono) = &unknowns[*col];
            rel = with_correction(&rel, *pair, &mono.sorted_word(), unit.scale(v))?;
            per_pair
                .entry(*pair)
                .or_insert_with(|| Polynomial::zero(n))
                .add_term(mono.clone(), v);
        }
        for (pair, polynomial) in per_pair {
            corrections.push(Correction { order: m, pair, polynomial });
        }
        let check = defects_mod(&rel, t + 1)?;
        if let Some(d) = check.iter().find(|d| !d.defect.is_zero()) {
            return Err(Error::Structural(format!(
                "correction at ℏ^{m} left a defect at {:?}: {:?}",
                d.triple, d.defect
            )));
        }
    }
    Ok(SolveOutcome::Solved {
        relations: rel,
        corrections,
    })
}

/// First-order relations of `alpha` completed with the default ansatz bound.
pub fn solve_corrections(alpha: &Polyvector, order: usize, bound: Option<&dyn Fn(usize) -> usize>) -> Result<SolveOutcome> {
    let seed = first_order_relations(alpha, order)?;
    let g = alpha
        .terms()
        .values()
        .filter_map(Polynomial::degree)
        .max()
        .unwrap_or(0) as usize;
    match bound {
        Some(f) => complete_relations(&seed, f),
        None => complete_relations(&seed, |m| default_degree_bound(g, m)),
    }
}
