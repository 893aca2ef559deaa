//! Deformed commutation relations `x_i x_j − x_j x_i = R_ij(ℏ)`, their
//! rewriting to ordered monomials, and the PBW decision procedure.
//!
//! Relations come from three places: the Chevalley–Eilenberg deformation of
//! the cobar complex of `Λ⁻(V)` ([`ce`]), symmetrized Poisson bivectors with
//! an order-by-order correction search ([`solve`]), or raw input.

pub mod ce;
pub mod confluence;
pub mod rewrite;
pub mod solve;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::tensor::{NcElement, NcTermList};
use crate::{Error, Result};

pub use ce::{ce_differential, cobar_deform, relations_from_deformation, CEDifferential};
pub use confluence::{confluence_defects, pbw_check, DefectEntry, HilbertEntry, PbwReport};
pub use rewrite::{normal_form, RewriteStep, RewriteSystem};
pub use solve::{complete_relations, first_order_relations, solve_corrections, ObstructionKind, SolveOutcome};

/// One relation per pair `i < j`, each with ℏ-valuation at least one. Pairs
/// without an entry have `R_ij = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    n: usize,
    order: usize,
    relations: BTreeMap<(usize, usize), NcElement>,
}

impl RelationSet {
    pub fn zero(n: usize, order: usize) -> Self {
        RelationSet {
            n,
            order,
            relations: BTreeMap::new(),
        }
    }

    pub fn generator_count(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn set(&mut self, i: usize, j: usize, r: NcElement) -> Result<()> {
        if i >= j || j >= self.n {
            return Err(Error::Usage(format!(
                "relation pair ({i},{j}) must satisfy i < j < {}",
                self.n
            )));
        }
        if r.generator_count() != self.n {
            return Err(Error::Usage(format!(
                "relation ({i},{j}) has {} generators, expected {}",
                r.generator_count(),
                self.n
            )));
        }
        if r.order() != self.order {
            return Err(Error::TruncationMismatch {
                left: self.order,
                right: r.order(),
            });
        }
        if r.valuation() == 0 {
            return Err(Error::Usage(format!(
                "relation ({i},{j}) has a term without a factor of ℏ"
            )));
        }
        if r.is_zero() {
            self.relations.remove(&(i, j));
        } else {
            self.relations.insert((i, j), r);
        }
        Ok(())
    }

    /// `R_ij` for `i < j`.
    pub fn get(&self, i: usize, j: usize) -> NcElement {
        self.relations
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| NcElement::zero(self.n, self.order))
    }

    pub fn get_ref(&self, i: usize, j: usize) -> Option<&NcElement> {
        self.relations.get(&(i, j))
    }

    /// Nonzero relations in pair order.
    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &NcElement)> {
        self.relations.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.relations.is_empty()
    }

    /// Longest word appearing in any relation (`g`).
    pub fn max_degree(&self) -> usize {
        self.relations.values().map(NcElement::max_weight).max().unwrap_or(0)
    }

    pub fn truncate_to(&self, order: usize) -> Self {
        let mut out = Self::zero(self.n, order);
        for (&(i, j), r) in &self.relations {
            let t = r.truncate_to(order);
            if !t.is_zero() {
                out.relations.insert((i, j), t);
            }
        }
        out
    }

    /// Weight `h` of ℏ making every relation homogeneous of weight two, i.e.
    /// `|w| + h·m = 2` for every term `ℏ^m·w`. `None` if no such weight exists.
    pub fn hbar_weight(&self) -> Option<num_rational::Ratio<i64>> {
        use num_rational::Ratio;
        let mut h: Option<Ratio<i64>> = None;
        for r in self.relations.values() {
            for (w, c) in r.terms() {
                for (m, x) in c.coeffs().iter().enumerate() {
                    if num_traits::Zero::is_zero(x) {
                        continue;
                    }
                    let here = Ratio::new(2 - w.weight() as i64, m as i64);
                    match h {
                        None => h = Some(here),
                        Some(prev) if prev != here => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(h.unwrap_or_default())
    }

    pub fn to_entries(&self) -> Vec<RelationEntry> {
        self.relations
            .iter()
            .map(|(&pair, r)| RelationEntry {
                pair,
                relation: NcTermList::from_element(r),
            })
            .collect()
    }

    pub fn from_entries(n: usize, order: usize, entries: Vec<RelationEntry>) -> Result<Self> {
        let mut out = Self::zero(n, order);
        for e in entries {
            let (i, j) = e.pair;
            if out.relations.contains_key(&(i, j)) {
                return Err(Error::Usage(format!("pair ({i},{j}) listed twice")));
            }
            out.set(i, j, e.relation.into_element(n, order)?)?;
        }
        Ok(out)
    }
}

/// One entry of the relation input schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationEntry {
    pub pair: (usize, usize),
    pub relation: NcTermList,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, HbarSeries};
    use crate::tensor::Word;

    #[test]
    fn rejects_unit_valuation_and_bad_pairs() {
        let mut rs = RelationSet::zero(3, 3);
        let bad = NcElement::from_word(Word::letter(2), HbarSeries::one(3), 3);
        assert!(rs.set(0, 1, bad).is_err());
        let good = NcElement::from_word(Word::letter(2), HbarSeries::monomial(1, rat(1), 3), 3);
        assert!(rs.set(1, 0, good.clone()).is_err());
        rs.set(0, 1, good).unwrap();
        assert_eq!(rs.max_degree(), 1);
        assert_eq!(rs.hbar_weight(), Some(num_rational::Ratio::from_integer(1)));
    }
}
