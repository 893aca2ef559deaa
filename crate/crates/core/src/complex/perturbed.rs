//! Cohomology of `d + d_ℏ` on a cobar complex over `ℚ[ℏ]/ℏ^K`.
//!
//! The perturbation may lower the word weight, so cells are not subcomplexes.
//! Instead the weight filtration `F_w = ⊕_{v ≤ w}` is used: each `F_w` is a
//! subcomplex, its cohomology is computed as a `ℚ[ℏ]/ℏ^K`-module, and the
//! weight-`w` report is the blockwise difference of the profiles of `F_w` and
//! `F_{w−1}`. For `d_ℏ = 0` this is exactly the cohomology of the weight-`w`
//! cell tensored with `ℚ[ℏ]/ℏ^K`.
//!
//! Modules are handled through their ℚ-expansion with coordinates
//! `(word, m)` for `ℏ^m·word`. For `H = Z/B`,
//! `dim ℏ^j H = dim(ℏ^j Z + B) − dim B`, which gives the elementary-divisor
//! profile.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::cobar::{cobar_differential, word_degree, word_weight, CobarComplex, CobarDerivation, CobarElement, CobarWord};
use super::{sort_cells, CellReport};
use crate::linalg::{kernel, Echelon, RankProfile, SparseVec};
use crate::{Error, Result};

struct DegreeSpace {
    /// Words sorted by (weight, word).
    words: Vec<CobarWord>,
    index: BTreeMap<CobarWord, usize>,
    /// Number of words of weight `≤ w` is `prefix[w]`.
    prefix: Vec<usize>,
}

pub fn perturbed_cohomology(cx: &CobarComplex, dh: &CobarDerivation, order: usize) -> Result<Vec<CellReport>> {
    let c = &cx.coalgebra;
    if dh.order != order {
        return Err(Error::TruncationMismatch {
            left: order,
            right: dh.order,
        });
    }
    if dh.degree != 1 {
        return Err(Error::Precondition(format!("perturbation has degree {}, expected 1", dh.degree)));
    }
    if let Some((q, _)) = dh.images.iter().find(|(_, e)| e.valuation() == 0) {
        return Err(Error::Precondition(format!(
            "perturbation has ℏ-valuation 0 on {:?}",
            c.letter(*q).label
        )));
    }
    let d = cobar_differential(c, order);
    let mut total = d.add(dh);
    // letters the perturbation leaves out are mapped by d alone
    for (q, img) in &d.images {
        total.images.entry(*q).or_insert_with(|| img.clone());
    }

    let all_words: Vec<&CobarWord> = cx.words.values().flatten().collect();
    let images: Vec<(CobarWord, CobarElement)> = all_words
        .par_iter()
        .map(|w| -> Result<(CobarWord, CobarElement)> {
            let img = total.apply_word(c, w)?;
            let wt = word_weight(c, w);
            if let Some(v) = img.terms().keys().find(|v| word_weight(c, v) > wt) {
                return Err(Error::Precondition(format!(
                    "perturbation raises weight: {} ↦ {}",
                    super::cobar::word_label(c, w),
                    super::cobar::word_label(c, v)
                )));
            }
            let sq = total.apply(c, &img)?;
            if !sq.is_zero() {
                return Err(Error::Precondition(format!(
                    "(d + d_ℏ)² ≠ 0 on {} in cell ({}, {})",
                    super::cobar::word_label(c, w),
                    word_degree(c, w),
                    wt
                )));
            }
            Ok(((*w).clone(), img))
        })
        .collect::<Result<Vec<_>>>()?;
    let images: BTreeMap<CobarWord, CobarElement> = images.into_iter().collect();

    let wmax = cx.weight_bound;
    let mut spaces: BTreeMap<i64, DegreeSpace> = BTreeMap::new();
    for &(deg, _) in cx.words.keys() {
        spaces.entry(deg).or_insert_with(|| DegreeSpace {
            words: Vec::new(),
            index: BTreeMap::new(),
            prefix: Vec::new(),
        });
    }
    for (deg, sp) in spaces.iter_mut() {
        for w in 0..=wmax {
            if let Some(ws) = cx.words.get(&(*deg, w)) {
                sp.words.extend(ws.iter().cloned());
            }
            sp.prefix.push(sp.words.len());
        }
        sp.index = sp.words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    }

    // columns of the total differential out of degree `deg`, in (word, m) coordinates
    let column = |deg: i64, pos: usize, m: usize| -> SparseVec {
        let src = &spaces[&deg];
        let Some(tgt) = spaces.get(&(deg + 1)) else { return SparseVec::new() };
        let img = &images[&src.words[pos]];
        let mut entries = Vec::new();
        for (v, s) in img.terms() {
            let t = tgt.index[v];
            for (p, x) in s.coeffs().iter().enumerate() {
                if p + m < order && !num_traits::Zero::is_zero(x) {
                    entries.push((t * order + p + m, x.clone()));
                }
            }
        }
        SparseVec::from_entries(entries)
    };

    let cumulative: BTreeMap<(i64, usize), RankProfile> = spaces
        .keys()
        .flat_map(|&deg| (0..=wmax).map(move |w| (deg, w)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(deg, w)| {
            let n_src = spaces[&deg].prefix[w];
            let cols: Vec<SparseVec> = (0..n_src)
                .flat_map(|pos| (0..order).map(move |m| (pos, m)))
                .map(|(pos, m)| column(deg, pos, m))
                .collect();
            let z = kernel(&cols);
            let mut b = Echelon::new();
            if let Some(prev) = spaces.get(&(deg - 1)) {
                for pos in 0..prev.prefix[w] {
                    for m in 0..order {
                        b.insert(&column(deg - 1, pos, m));
                    }
                }
            }
            let dim_b = b.rank();
            let mut dims = Vec::with_capacity(order + 1);
            for j in 0..=order {
                let mut e = b.clone();
                for v in &z {
                    let shifted = v.remap(|i| (i % order + j < order).then_some(i + j));
                    e.insert(&shifted);
                }
                dims.push(e.rank() - dim_b);
            }
            ((deg, w), RankProfile::from_dims(&dims))
        })
        .collect();

    let mut out = Vec::new();
    for (&(deg, w), ws) in &cx.words {
        let cur = &cumulative[&(deg, w)];
        let prev = if w == 0 {
            RankProfile::zero(order)
        } else {
            cumulative[&(deg, w - 1)].clone()
        };
        let rank_profile = cur.checked_sub(&prev).ok_or_else(|| {
            Error::Structural(format!(
                "filtration profiles are not monotone at ({deg}, {w}): {:?} then {:?}",
                prev.blocks, cur.blocks
            ))
        })?;
        out.push(CellReport {
            degree: deg,
            weight: w,
            dim: ws.len(),
            rank_profile,
        });
    }
    sort_cells(&mut out);
    Ok(out)
}
