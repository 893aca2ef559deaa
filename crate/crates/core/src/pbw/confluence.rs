//! Overlap checks and Hilbert data of the quotient.
//!
//! Rules have length-two left-hand sides, so the only ambiguities are the
//! words `x_k x_j x_i` with `k > j > i`. When every one of them resolves,
//! the diamond lemma makes ordered monomials a basis of the quotient modulo
//! `ℏ^K` and the Hilbert data is read off by counting. Otherwise the quotient
//! is computed directly: the two-sided ideal is spanned on words of bounded
//! length by the elements `ℏ^m·u·g_ij·v`, and each weight filtration piece
//! `F_w = T_{≤w}⊗ℚ[ℏ]/ℏ^K` of the quotient is decomposed into cyclic modules.

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::rewrite::{normal_form, RewriteSystem};
use super::RelationSet;
use crate::linalg::{rank, Echelon, RankProfile, SparseVec};
use crate::scalar::HbarSeries;
use crate::tensor::{CommMonomial, NcElement, Word};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectEntry {
    /// `(k, j, i)` with `k > j > i`.
    pub triple: (usize, usize, usize),
    pub defect: NcElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertEntry {
    pub weight: usize,
    pub rank_profile: RankProfile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PbwBounds {
    pub max_weight: usize,
    pub hbar_order: usize,
    /// Word length up to which the ideal was spanned, when it was.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub span_length: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PbwReport {
    pub confluent: bool,
    pub defects: Vec<DefectEntry>,
    pub hilbert: Vec<HilbertEntry>,
    pub bounds: PbwBounds,
    pub flags: Vec<String>,
}

impl PbwReport {
    pub fn nonzero_defects(&self) -> impl Iterator<Item = &DefectEntry> {
        self.defects.iter().filter(|d| !d.defect.is_zero())
    }
}

fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                out.push((k, j, i));
            }
        }
    }
    out
}

/// The defect of `x_k x_j x_i`: `NF((x_j x_k − R_jk)·x_i) − NF(x_k·(x_i x_j − R_ij))`,
/// i.e. the left overlap resolved first against the right one.
pub fn triple_defect(rs: &RewriteSystem, (k, j, i): (usize, usize, usize)) -> Result<NcElement> {
    let (n, order) = (rs.generator_count(), rs.order());
    let one = HbarSeries::one(order);
    let gen = |a: usize| NcElement::generator(a, n, order);
    let swap = |lo: usize, hi: usize| -> Result<NcElement> {
        let mut e = rs.relations().get(lo, hi).neg();
        e.add_term(Word::from_indices(&[lo, hi]), &one);
        Ok(e)
    };
    let left = swap(j, k)?.checked_mul(&gen(i))?;
    let right = gen(k).checked_mul(&swap(i, j)?)?;
    normal_form(&left, rs)?.checked_sub(&normal_form(&right, rs)?)
}

/// Defects of every overlap triple `k > j > i`, in lexicographic order of
/// `(k, j, i)`.
pub fn confluence_defects(rs: &RewriteSystem) -> Result<Vec<DefectEntry>> {
    triples(rs.generator_count())
        .into_par_iter()
        .map(|t| {
            Ok(DefectEntry {
                triple: t,
                defect: triple_defect(rs, t)?,
            })
        })
        .collect()
}

/// Number of words of each length `0..=max_len` over `n` letters.
fn word_counts(n: usize, max_len: usize) -> Vec<usize> {
    let mut out = vec![1usize];
    for _ in 0..max_len {
        out.push(out.last().unwrap() * n);
    }
    out
}

/// Coordinates `(word, m)` on words of length `≤ max_len`, ordered so that
/// longer words come first; the smallest index of a vector is then a word of
/// maximal length.
struct SpanCoords {
    n: usize,
    order: usize,
    max_len: usize,
    /// `offset[ℓ]` = number of words of length in `ℓ+1..=max_len`.
    offset: Vec<usize>,
}

impl SpanCoords {
    fn new(n: usize, order: usize, max_len: usize) -> Self {
        let counts = word_counts(n, max_len);
        let mut offset = vec![0; max_len + 1];
        for l in (0..max_len).rev() {
            offset[l] = offset[l + 1] + counts[l + 1];
        }
        SpanCoords {
            n,
            order,
            max_len,
            offset,
        }
    }

    fn word_index(&self, w: &Word) -> usize {
        let rank = w.0.iter().fold(0usize, |acc, &l| acc * self.n + l as usize);
        self.offset[w.weight()] + rank
    }

    fn length_of(&self, index: usize) -> usize {
        let word = index / self.order;
        (0..=self.max_len)
            .find(|&l| word >= self.offset[l])
            .expect("index inside the coordinate range")
    }

    fn vector(&self, e: &NcElement, shift: usize) -> SparseVec {
        let mut entries = Vec::new();
        for (w, c) in e.terms() {
            let base = self.word_index(w) * self.order;
            for (m, x) in c.coeffs().iter().enumerate() {
                if m + shift < self.order && !x.is_zero() {
                    entries.push((base + m + shift, x.clone()));
                }
            }
        }
        SparseVec::from_entries(entries)
    }
}

fn all_words(n: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w: Vec<u16>| {
                (0..n as u16).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Word).collect()
}

/// Rank profiles of `F_w(T(V)⊗ℚ[ℏ]/ℏ^K) / (I ∩ F_w)` blockwise differenced
/// over `w = 0..=max_weight`, with the ideal `I` spanned by the generators
/// `ℏ^m·u·g_ij·v` all of whose words have length `≤ span_length`.
pub fn quotient_profiles(rel: &RelationSet, max_weight: usize, span_length: usize) -> Result<Vec<RankProfile>> {
    if span_length < max_weight {
        return Err(Error::Usage(format!(
            "span length {span_length} below the weight bound {max_weight}"
        )));
    }
    let (n, order) = (rel.generator_count(), rel.order());
    let rs = RewriteSystem::new(rel.clone());
    let coords = SpanCoords::new(n, order, span_length);
    let mut gens: Vec<(NcElement, usize)> = Vec::new();
    for hi in 0..n {
        for lo in 0..hi {
            let g = rs.rule_generator(lo, hi);
            let len = g.max_weight();
            if len > span_length {
                continue;
            }
            gens.push((g, span_length - len));
        }
    }
    let vectors: Vec<SparseVec> = gens
        .par_iter()
        .flat_map_iter(|(g, room)| {
            let mut out = Vec::new();
            for lu in 0..=*room {
                for lv in 0..=(*room - lu) {
                    for u in all_words(n, lu) {
                        for v in all_words(n, lv) {
                            let uv = NcElement::from_word(u.clone(), HbarSeries::one(order), n);
                            let vv = NcElement::from_word(v, HbarSeries::one(order), n);
                            let e = uv
                                .checked_mul(g)
                                .and_then(|t| t.checked_mul(&vv))
                                .expect("same generator count and order");
                            for m in 0..order {
                                out.push(coords.vector(&e, m));
                            }
                        }
                    }
                }
            }
            out.into_iter()
        })
        .collect();
    let mut ech = Echelon::new();
    for v in &vectors {
        ech.insert(v);
    }

    let counts = word_counts(n, max_weight);
    let mut cumulative = Vec::with_capacity(max_weight + 1);
    for w in 0..=max_weight {
        let t_w: usize = counts[..=w].iter().sum();
        let rows: Vec<&SparseVec> = ech
            .rows()
            .filter(|(&p, _)| coords.length_of(p) <= w)
            .map(|(_, r)| r)
            .collect();
        let mut dims = Vec::with_capacity(order + 1);
        for j in 0..=order {
            let proj: Vec<SparseVec> = rows.iter().map(|r| r.filter(|i| i % order < j)).collect();
            dims.push((order - j) * t_w + rank(&proj) - rows.len());
        }
        cumulative.push(RankProfile::from_dims(&dims));
    }
    let mut out = Vec::with_capacity(max_weight + 1);
    for w in 0..=max_weight {
        let prof = if w == 0 {
            cumulative[0].clone()
        } else {
            cumulative[w].checked_sub(&cumulative[w - 1]).ok_or_else(|| {
                Error::Structural(format!("quotient filtration not monotone at weight {w}"))
            })?
        };
        out.push(prof);
    }
    Ok(out)
}

/// Word length up to which the ideal must be spanned, and whether that bound
/// is exact. If some weight `h` of ℏ makes every relation homogeneous, each
/// ideal element of word length `≤ D` truncated mod `ℏ^K` is a combination of
/// generators of word length `≤ D + |h|(K−1)`; otherwise a heuristic bound is
/// used.
pub fn span_length(rel: &RelationSet, max_weight: usize) -> (usize, bool) {
    let steps = rel.order().saturating_sub(1) as i64;
    match rel.hbar_weight() {
        Some(h) => {
            let pad = (h.abs() * Ratio::from_integer(steps)).ceil().to_integer();
            (max_weight + pad as usize, true)
        }
        None => {
            let per = rel.max_degree().saturating_sub(2).max(1);
            (max_weight + per * steps as usize, false)
        }
    }
}

pub fn pbw_check(rel: &RelationSet, max_weight: usize) -> Result<PbwReport> {
    let rs = RewriteSystem::new(rel.clone());
    let defects = confluence_defects(&rs)?;
    let confluent = defects.iter().all(|d| d.defect.is_zero());
    let order = rel.order();
    let mut flags = Vec::new();
    let (hilbert, span) = if confluent {
        flags.push("normal-form-count".to_string());
        let h = (0..=max_weight)
            .map(|w| HilbertEntry {
                weight: w,
                rank_profile: RankProfile::free(CommMonomial::all_of_degree(rel.generator_count(), w as u32).len(), order),
            })
            .collect();
        (h, None)
    } else {
        let (len, exact) = span_length(rel, max_weight);
        flags.push(if exact { "exact" } else { "exact-under-padding" }.to_string());
        let profiles = quotient_profiles(rel, max_weight, len)?;
        let h = profiles
            .into_iter()
            .enumerate()
            .map(|(weight, rank_profile)| HilbertEntry { weight, rank_profile })
            .collect();
        (h, Some(len))
    };
    Ok(PbwReport {
        confluent,
        defects,
        hilbert,
        bounds: PbwBounds {
            max_weight,
            hbar_order: order,
            span_length: span,
        },
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn coordinates_put_long_words_first() {
        let c = SpanCoords::new(2, 3, 3);
        assert_eq!(c.word_index(&Word::from_indices(&[0, 0, 0])), 0);
        assert_eq!(c.word_index(&Word::from_indices(&[1, 1, 1])), 7);
        assert_eq!(c.word_index(&Word::from_indices(&[0, 0])), 8);
        assert_eq!(c.word_index(&Word::empty()), 14);
        assert_eq!(c.length_of(7 * 3 + 2), 3);
        assert_eq!(c.length_of(14 * 3), 0);
    }

    #[test]
    fn free_quotient_matches_counting() {
        // abelian relations: the span computation must see S(V)⊗ℚ[ℏ]/ℏ^2
        let rel = RelationSet::zero(2, 2);
        let p = quotient_profiles(&rel, 3, 3).unwrap();
        let dims: Vec<usize> = p.iter().map(RankProfile::free_rank).collect();
        assert_eq!(dims, vec![1, 2, 3, 4]);
        assert!(p.iter().all(RankProfile::is_free));
    }

    #[test]
    fn heisenberg_span_is_free() {
        let mut rel = RelationSet::zero(3, 2);
        rel.set(0, 1, NcElement::from_word(Word::letter(2), HbarSeries::monomial(1, rat(1), 2), 3))
            .unwrap();
        let (len, exact) = span_length(&rel, 2);
        assert!(exact);
        assert_eq!(len, 3);
        let p = quotient_profiles(&rel, 2, len).unwrap();
        assert_eq!(p, vec![RankProfile::free(1, 2), RankProfile::free(3, 2), RankProfile::free(6, 2)]);
    }
}
