//! Transport of Hochschild cochains on `S(V)` to derivations of cobar
//! algebras of `S(W)`, `W = V*`.
//!
//! Cochains are dualized with the pairing `⟨x^a, w^b⟩ = δ_{ab}·a!`. For a
//! term `c·x^γ·∂^{α₁}⊗⋯⊗∂^{α_k}` this gives
//!
//! `Ψ*(w^a) = Σ_{e₁+⋯+e_k = a−γ} c·a!/(e₁!⋯e_k!) · w^{e₁+α₁}⊗⋯⊗w^{e_k+α_k}`,
//!
//! a derivation `D_Ψ` of `CoBar(S(W))` of degree `k − 1`. The multiplication
//! dualizes to the coproduct, so `D_m` is the cobar differential.
//! `Φ(D)(σ) = p^{⊗k}(D(i(σ)))`, where `i: S(W)⁺ → S(W)` is the inclusion and
//! `p` kills every word containing the unit.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::cobar::{cobar_differential, CobarDerivation, CobarElement};
use super::coalgebra::{CoalgebraData, LetterLabel};
use super::hochschild::{compositions, PolyDiffOp};
use crate::scalar::{HbarSeries, Rational};
use crate::tensor::CommMonomial;
use crate::{Error, Result};

/// The two coalgebras involved, with enough headroom above the weight bound
/// for every image to stay inside the bases.
#[derive(Clone, Debug)]
pub struct PhiContext {
    pub weight_bound: usize,
    pub full: CoalgebraData,
    pub plus: CoalgebraData,
}

impl PhiContext {
    /// `headroom` must bound the total derivative order of the cochains used.
    pub fn new(n: usize, weight_bound: usize, headroom: usize) -> Self {
        PhiContext {
            weight_bound,
            full: CoalgebraData::full_sym(n, weight_bound + headroom),
            plus: CoalgebraData::reduced_sym(n, weight_bound + headroom),
        }
    }

    /// Letters of `S(W)` of weight `≤ weight_bound`, unit included.
    pub fn full_letters(&self) -> Vec<u32> {
        (0..self.full.len() as u32)
            .filter(|&q| self.full.letter(q).weight <= self.weight_bound)
            .collect()
    }

    /// Cogenerators of `S(W)⁺` of weight `≤ weight_bound`.
    pub fn plus_letters(&self) -> Vec<u32> {
        (0..self.plus.len() as u32)
            .filter(|&q| self.plus.letter(q).weight <= self.weight_bound)
            .collect()
    }

    fn to_plus(&self, q: u32) -> Option<u32> {
        match self.full.letter(q).weight {
            0 => None,
            _ => self.plus.index_of(&self.full.letter(q).label),
        }
    }

    fn to_full(&self, q: u32) -> u32 {
        self.full
            .index_of(&self.plus.letter(q).label)
            .expect("S(W)⁺ embeds into S(W)")
    }

    /// `p` on cobar elements.
    pub fn project(&self, e: &CobarElement) -> CobarElement {
        e.map_letters(|q| self.to_plus(q))
    }
}

fn sym_label(c: &CoalgebraData, q: u32) -> &CommMonomial {
    match &c.letter(q).label {
        LetterLabel::Sym(m) => m,
        LetterLabel::Ext(_) => unreachable!("symmetric coalgebra"),
    }
}

/// `Ψ*(w^a)` as a cobar element of `CoBar(S(W))`.
pub fn dualize_on(psi: &PolyDiffOp, ctx: &PhiContext, q: u32) -> Result<CobarElement> {
    let c = &ctx.full;
    let a = sym_label(c, q);
    let mut out = CobarElement::zero(1);
    for (orders, coeff) in psi.terms() {
        for (gamma, cg) in coeff.terms() {
            let Some(rest) = a.checked_div(gamma) else { continue };
            for es in compositions(&rest, psi.arity()) {
                let weight = es.iter().fold(a.factorial() * cg, |acc, e| acc / e.factorial());
                let mut word = Vec::with_capacity(es.len());
                for (e, alpha) in es.iter().zip(orders) {
                    let label = LetterLabel::Sym(e.mul(alpha));
                    let idx = c.index_of(&label).ok_or_else(|| {
                        Error::Precondition(format!("letter {label:?} beyond the coalgebra bound; raise the headroom"))
                    })?;
                    word.push(idx);
                }
                out.add_term(word, &HbarSeries::constant(weight, 1));
            }
        }
    }
    Ok(out)
}

/// `D_Ψ` on `CoBar(S(W))`, defined on letters of weight `≤ weight_bound`.
pub fn derivation_of(psi: &PolyDiffOp, ctx: &PhiContext) -> Result<CobarDerivation> {
    let mut d = CobarDerivation::new(psi.hochschild_degree(), 1);
    for q in ctx.full_letters() {
        d.set(q, dualize_on(psi, ctx, q)?);
    }
    Ok(d)
}

/// `Φ(D_Ψ)` on the cogenerators of `S(W)⁺` of weight `≤ weight_bound`.
pub fn phi1(psi: &PolyDiffOp, ctx: &PhiContext) -> Result<CobarDerivation> {
    let mut d = CobarDerivation::new(psi.hochschild_degree(), 1);
    for q in ctx.plus_letters() {
        d.set(q, ctx.project(&dualize_on(psi, ctx, ctx.to_full(q))?));
    }
    Ok(d)
}

/// `p^{⊗k}(Ψ*(1))`.
pub fn inner_element(psi: &PolyDiffOp, ctx: &PhiContext) -> Result<CobarElement> {
    let unit = ctx.full.unit().expect("S(W) has a unit letter");
    Ok(ctx.project(&dualize_on(psi, ctx, unit)?))
}

/// Result of evaluating `(Φ∘δ − δ∘Φ)(Ψ)` on cogenerators.
#[derive(Clone, Debug)]
pub struct DiagramDefect {
    pub arity: usize,
    /// `u = p^{⊗k}(Ψ*(1))`.
    pub inner: CobarElement,
    /// Nonzero values of the commutator on cogenerators.
    pub difference: BTreeMap<u32, CobarElement>,
    /// The scalars `s ∈ {1, −1}` with `difference(σ) = s·ad_u(σ)` on every
    /// cogenerator, where `ad_u(σ) = u⊗σ − (−1)^{k} σ⊗u`. Both appear when
    /// `ad_u` and the difference vanish together.
    pub matching_scalars: Vec<i32>,
}

impl DiagramDefect {
    pub fn vanishes(&self) -> bool {
        self.difference.is_empty()
    }
}

/// `ad_u(σ) = u⊗σ − (−1)^{|u|} σ⊗u` for a cogenerator `σ` of cobar degree one.
pub fn ad_inner(u: &CobarElement, k: usize, sigma: u32) -> CobarElement {
    let s = CobarElement::letter(sigma, u.order());
    let tail = s.mul(u);
    if k.is_multiple_of(2) {
        u.mul(&s).sub(&tail)
    } else {
        u.mul(&s).add(&tail)
    }
}

/// `δD = [d, D] = d∘D − (−1)^{|D|} D∘d` restricted to `letters`.
fn delta(d: &CobarDerivation, dd: &CobarDerivation, c: &CoalgebraData, letters: &[u32]) -> Result<CobarDerivation> {
    d.commutator(dd, c, letters.iter().copied())
}

pub fn diagram_defect(psi: &PolyDiffOp, ctx: &PhiContext) -> Result<DiagramDefect> {
    let d_full = cobar_differential(&ctx.full, 1);
    let d_plus = cobar_differential(&ctx.plus, 1);
    let dpsi = derivation_of(psi, ctx)?;
    let sigma = ctx.plus_letters();
    let full_sigma: Vec<u32> = sigma.iter().map(|&q| ctx.to_full(q)).collect();

    let lhs = delta(&d_full, &dpsi, &ctx.full, &full_sigma)?;
    let phi = phi1(psi, ctx)?;
    let rhs = delta(&d_plus, &phi, &ctx.plus, &sigma)?;
    let u = inner_element(psi, ctx)?;

    let mut difference = BTreeMap::new();
    for (&q, &fq) in sigma.iter().zip(&full_sigma) {
        let diff = ctx.project(lhs.image(fq)?).sub(rhs.image(q)?);
        if !diff.is_zero() {
            difference.insert(q, diff);
        }
    }
    let k = psi.arity();
    let mut matching_scalars = Vec::new();
    for sc in [1i32, -1] {
        let r = Rational::from_integer(sc.into());
        let ok = sigma.iter().all(|&q| {
            let want = ad_inner(&u, k, q).scale(&r);
            let got = difference.get(&q).cloned().unwrap_or_else(|| CobarElement::zero(1));
            got == want
        });
        if ok {
            matching_scalars.push(sc);
        }
    }
    Ok(DiagramDefect {
        arity: psi.arity(),
        inner: u,
        difference,
        matching_scalars,
    })
}

/// Compares `D_{dΨ}` with `[d, D_Ψ]` on `CoBar(S(W))`; returns the scalars
/// `s ∈ {1, −1}` with `D_{dΨ} = s·[d, D_Ψ]` on every letter.
pub fn hochschild_transport_signs(psi: &PolyDiffOp, ctx: &PhiContext) -> Result<Vec<i32>> {
    let d_full = cobar_differential(&ctx.full, 1);
    let letters = ctx.full_letters();
    let bracket = delta(&d_full, &derivation_of(psi, ctx)?, &ctx.full, &letters)?;
    let image = derivation_of(&super::hochschild::hochschild_diff(psi), ctx)?;
    let mut out = Vec::new();
    for s in [1i32, -1] {
        let scaled = bracket.scale(&Rational::from_integer(s.into()));
        if image.difference_on(&scaled, &letters)?.is_empty() {
            out.push(s);
        }
    }
    Ok(out)
}

/// Largest total derivative order over all terms of `psi`.
pub fn max_order(psi: &PolyDiffOp) -> usize {
    psi.terms()
        .keys()
        .map(|o| o.iter().map(|m| m.degree() as usize).sum::<usize>())
        .max()
        .unwrap_or(0)
}

/// Whether `Ψ*(1) ≠ 0`, i.e. some coefficient has a nonzero constant term.
pub fn has_unit_value(psi: &PolyDiffOp) -> bool {
    let one = CommMonomial::one(psi.n());
    psi.terms().values().any(|c| !c.coeff(&one).is_zero())
}
