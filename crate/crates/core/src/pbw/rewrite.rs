//! ℏ-truncated rewriting `x_j x_i → x_i x_j − R_ij` (`j > i`).
//!
//! Each step either keeps the ℏ-valuation of a term and removes one
//! inversion from its word (the swap), or raises the valuation (the tail of
//! `R_ij`), and terms of valuation `K` vanish. The pair (valuation,
//! inversions) therefore decreases lexicographically and rewriting
//! terminates. The leftmost descent of each word is rewritten first, which
//! fixes one normal form even when the system is not confluent.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::RelationSet;
use crate::scalar::HbarSeries;
use crate::tensor::{NcElement, Word};
use crate::{Error, Result};

/// Terms per element above which normal forms are computed in parallel.
const PARALLEL_TERMS: usize = 32;

#[derive(Clone, Debug)]
pub struct RewriteSystem {
    relations: RelationSet,
}

/// One application of a rule: `coeff·u·x_j x_i·v` with `u = word[..position]`
/// was replaced by `coeff·u·(x_i x_j − R_ij)·v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteStep {
    pub word: Word,
    pub position: usize,
    pub coeff: HbarSeries,
}

impl RewriteSystem {
    pub fn new(relations: RelationSet) -> Self {
        RewriteSystem { relations }
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn generator_count(&self) -> usize {
        self.relations.generator_count()
    }

    pub fn order(&self) -> usize {
        self.relations.order()
    }

    pub fn strategy(&self) -> &'static str {
        "leftmost-innermost"
    }

    fn check(&self, e: &NcElement) -> Result<()> {
        if e.generator_count() != self.generator_count() {
            return Err(Error::Usage(format!(
                "element has {} generators, rewrite system {}",
                e.generator_count(),
                self.generator_count()
            )));
        }
        if e.order() != self.order() {
            return Err(Error::TruncationMismatch {
                left: e.order(),
                right: self.order(),
            });
        }
        Ok(())
    }

    /// The ideal generator `x_j x_i − x_i x_j + R_ij` behind the rule for `i < j`.
    pub fn rule_generator(&self, i: usize, j: usize) -> NcElement {
        let (n, k) = (self.generator_count(), self.order());
        let mut g = self.relations.get(i, j);
        g.add_term(Word::from_indices(&[j, i]), &HbarSeries::one(k));
        g.add_term(Word::from_indices(&[i, j]), &-&HbarSeries::one(k));
        debug_assert_eq!(g.generator_count(), n);
        g
    }

    fn reduce(&self, e: &NcElement, mut log: Option<&mut Vec<RewriteStep>>) -> NcElement {
        let n = self.generator_count();
        let mut pending: BTreeMap<Word, HbarSeries> = e.terms().clone();
        let mut out = NcElement::zero(n, self.order());
        while let Some((w, c)) = pending.pop_first() {
            let Some(p) = w.leftmost_descent() else {
                out.add_term(w, &c);
                continue;
            };
            let (hi, lo) = (w.0[p] as usize, w.0[p + 1] as usize);
            let mut swapped = w.0.clone();
            swapped.swap(p, p + 1);
            accumulate(&mut pending, Word(swapped), &c);
            if let Some(r) = self.relations.get_ref(lo, hi) {
                for (rw, rc) in r.terms() {
                    let coeff = -&(&c * rc);
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut nw = Vec::with_capacity(w.0.len() + rw.0.len());
                    nw.extend_from_slice(&w.0[..p]);
                    nw.extend_from_slice(&rw.0);
                    nw.extend_from_slice(&w.0[p + 2..]);
                    accumulate(&mut pending, Word(nw), &coeff);
                }
            }
            if let Some(log) = log.as_deref_mut() {
                log.push(RewriteStep {
                    word: w,
                    position: p,
                    coeff: c,
                });
            }
        }
        out
    }

    /// Normal form together with the list of rule applications that produced it.
    pub fn normal_form_with_witness(&self, e: &NcElement) -> Result<(NcElement, Vec<RewriteStep>)> {
        self.check(e)?;
        let mut log = Vec::new();
        let nf = self.reduce(e, Some(&mut log));
        Ok((nf, log))
    }

    /// `e − Σ coeff·u·(x_j x_i − x_i x_j + R_ij)·v` over the recorded steps.
    /// For a witness of `e` this equals its normal form, which exhibits
    /// `NF(e) − e` as an element of the ideal.
    pub fn replay(&self, e: &NcElement, steps: &[RewriteStep]) -> Result<NcElement> {
        self.check(e)?;
        let (n, k) = (self.generator_count(), self.order());
        let mut acc = e.clone();
        for s in steps {
            let w = &s.word.0;
            if s.position + 1 >= w.len() || w[s.position] <= w[s.position + 1] {
                return Err(Error::Usage(format!(
                    "witness step at position {} of {:?} is not a descent",
                    s.position, s.word
                )));
            }
            let (hi, lo) = (w[s.position] as usize, w[s.position + 1] as usize);
            let u = NcElement::from_word(Word(w[..s.position].to_vec()), s.coeff.clone(), n);
            let v = NcElement::from_word(Word(w[s.position + 2..].to_vec()), HbarSeries::one(k), n);
            let term = u.checked_mul(&self.rule_generator(lo, hi))?.checked_mul(&v)?;
            acc = acc.checked_sub(&term)?;
        }
        Ok(acc)
    }
}

fn accumulate(map: &mut BTreeMap<Word, HbarSeries>, w: Word, c: &HbarSeries) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&w) {
        Some(slot) => {
            *slot += c;
            if slot.is_zero() {
                map.remove(&w);
            }
        }
        None => {
            map.insert(w, c.clone());
        }
    }
}

/// The normal form under the fixed leftmost-innermost strategy. It has no
/// descending adjacent pair and differs from `e` by an element of the ideal.
pub fn normal_form(e: &NcElement, rs: &RewriteSystem) -> Result<NcElement> {
    rs.check(e)?;
    if e.len() <= PARALLEL_TERMS {
        return Ok(rs.reduce(e, None));
    }
    let (n, k) = (rs.generator_count(), rs.order());
    let parts: Vec<NcElement> = e
        .terms()
        .par_iter()
        .map(|(w, c)| rs.reduce(&NcElement::from_word(w.clone(), c.clone(), n), None))
        .collect();
    let mut out = NcElement::zero(n, k);
    for p in parts {
        out = out.checked_add(&p)?;
    }
    Ok(out)
}
