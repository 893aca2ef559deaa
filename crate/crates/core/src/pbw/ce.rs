//! The Chevalley–Eilenberg chain differential and the deformation
//! `d_ℏ = −ℏ∂` of the cobar differential of `Λ⁻(V)`.
//!
//! `∂(ξ_I) = Σ_{a<b} (−1)^{a+b+1} [ξ_{i_a}, ξ_{i_b}] ∧ ξ_{I∖{i_a,i_b}}`, which on
//! weight two is `∂(ξ_i∧ξ_j) = Σ_k c_ij^k ξ_k`. With the overall minus sign in
//! `d_ℏ`, `(d + d_ℏ)(ξ_i∧ξ_j) = x_i x_j − x_j x_i − ℏ Σ_k c_ij^k x_k`, so the
//! degree-zero cohomology is the quotient by `x_i x_j − x_j x_i = ℏ[x_i, x_j]`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::RelationSet;
use crate::complex::cobar::{cobar_differential, CobarDerivation, CobarElement};
use crate::complex::coalgebra::{CoalgebraData, CoalgebraKind, LetterLabel};
use crate::polyvector::StructureConstants;
use crate::scalar::{HbarSeries, Rational};
use crate::tensor::{wedge, ExtMonomial, NcElement, Word};
use crate::{Error, Result};

pub type ExtChain = BTreeMap<ExtMonomial, Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CEDifferential {
    n: usize,
    weight_bound: usize,
    images: BTreeMap<ExtMonomial, ExtChain>,
}

fn add_to(chain: &mut ExtChain, m: ExtMonomial, c: Rational) {
    let slot = chain.entry(m.clone()).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        chain.remove(&m);
    }
}

pub fn ce_differential(c: &StructureConstants, weight_bound: usize) -> CEDifferential {
    let n = c.n();
    let top = weight_bound.min(n);
    let mut images = BTreeMap::new();
    for p in 1..=top {
        for m in ExtMonomial::all_of_degree(n, p) {
            let ix = m.indices();
            let mut img = ExtChain::new();
            for a in 0..p {
                for b in a + 1..p {
                    let rest: Vec<usize> = ix
                        .iter()
                        .enumerate()
                        .filter(|(t, _)| *t != a && *t != b)
                        .map(|(_, &v)| v as usize)
                        .collect();
                    let rest = ExtMonomial::new(&rest);
                    let base = if (a + b + 1) % 2 == 1 { -Rational::one() } else { Rational::one() };
                    for (k, v) in c.bracket(ix[a] as usize, ix[b] as usize) {
                        if let Some((merged, s)) = wedge(&ExtMonomial::new(&[k]), &rest) {
                            let coeff = &base * &v;
                            add_to(&mut img, merged, if s < 0 { -coeff } else { coeff });
                        }
                    }
                }
            }
            images.insert(m, img);
        }
    }
    CEDifferential { n, weight_bound: top, images }
}

impl CEDifferential {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight_bound(&self) -> usize {
        self.weight_bound
    }

    pub fn image(&self, m: &ExtMonomial) -> Option<&ExtChain> {
        self.images.get(m)
    }

    pub fn images(&self) -> &BTreeMap<ExtMonomial, ExtChain> {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.values().all(BTreeMap::is_empty)
    }

    pub fn apply(&self, v: &ExtChain) -> ExtChain {
        let mut out = ExtChain::new();
        for (m, c) in v {
            if let Some(img) = self.images.get(m) {
                for (t, x) in img {
                    add_to(&mut out, t.clone(), c * x);
                }
            }
        }
        out
    }

    /// The first monomial (in monomial order) on which `∂² ≠ 0`.
    pub fn square_defect(&self) -> Option<(ExtMonomial, ExtChain)> {
        self.images.iter().find_map(|(m, img)| {
            let sq = self.apply(img);
            (!sq.is_empty()).then(|| (m.clone(), sq))
        })
    }

    pub fn check_square_zero(&self) -> Result<()> {
        match self.square_defect() {
            None => Ok(()),
            Some((m, sq)) => Err(Error::Precondition(format!("∂² ≠ 0 on {m:?}: {sq:?}"))),
        }
    }
}

fn ext_letter(c: &CoalgebraData, m: &ExtMonomial) -> Result<u32> {
    c.index_of(&LetterLabel::Ext(m.clone()))
        .ok_or_else(|| Error::Usage(format!("{m:?} is not a letter of the coalgebra")))
}

/// `d_ℏ = −ℏ∂` on the letters of `CoBar(Λ⁻(V))` up to the differential's
/// weight bound, after checking `∂² = 0` and `(d + d_ℏ)² = 0` letter by letter.
/// Odd derivations square to derivations, so the letter check covers every word.
pub fn cobar_deform(ce: &CEDifferential, c: &CoalgebraData, order: usize) -> Result<CobarDerivation> {
    if c.kind != CoalgebraKind::ReducedExt || c.n != ce.n {
        return Err(Error::Usage(format!(
            "the deformation lives on Λ⁻ of {} generators",
            ce.n
        )));
    }
    if order == 0 {
        return Err(Error::Usage("truncation order must be at least 1".into()));
    }
    ce.check_square_zero()?;
    let hbar = HbarSeries::monomial(1, -Rational::one(), order);
    let mut dh = CobarDerivation::new(1, order);
    for (m, img) in &ce.images {
        let q = ext_letter(c, m)?;
        let mut e = CobarElement::zero(order);
        for (t, x) in img {
            e.add_term(vec![ext_letter(c, t)?], &hbar.scale(x));
        }
        dh.set(q, e);
    }
    let mut total = cobar_differential(c, order);
    total.images.retain(|q, _| dh.images.contains_key(q));
    let total = total.add(&dh);
    for q in total.images.keys() {
        let once = total.apply(c, &CobarElement::letter(*q, order))?;
        let twice = total.apply(c, &once)?;
        if !twice.is_zero() {
            return Err(Error::Structural(format!(
                "(d + d_ℏ)² ≠ 0 on {:?}",
                c.letter(*q).label
            )));
        }
    }
    Ok(dh)
}

/// `R_ij` from the deformation: `(d + d_ℏ)(ξ_i∧ξ_j) = x_i x_j − x_j x_i − R_ij`,
/// so `R_ij = −d_ℏ(ξ_i∧ξ_j)` with `ξ_k` read as `x_k`.
pub fn relations_from_deformation(c: &CoalgebraData, dh: &CobarDerivation) -> Result<RelationSet> {
    let n = c.n;
    let order = dh.order;
    let mut rel = RelationSet::zero(n, order);
    for j in 0..n {
        for i in 0..j {
            let q = ext_letter(c, &ExtMonomial::new(&[i, j]))?;
            let img = dh.image(q)?;
            let mut r = NcElement::zero(n, order);
            for (w, x) in img.terms() {
                let mut word = Vec::with_capacity(w.len());
                for &l in w {
                    match &c.letter(l).label {
                        LetterLabel::Ext(m) if m.degree() == 1 => word.push(m.indices()[0] as usize),
                        other => {
                            return Err(Error::Structural(format!(
                                "d_ℏ(ξ{}{}) has a letter {other:?} outside cobar degree 0",
                                i + 1,
                                j + 1
                            )))
                        }
                    }
                }
                r.add_term(Word::from_indices(&word), &-x);
            }
            rel.set(i, j, r)?;
        }
    }
    Ok(rel)
}
