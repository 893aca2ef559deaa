//! Seeded random inputs for the randomized suites.

use pbwforge::complex::PolyDiffOp;
use pbwforge::pbw::RelationSet;
use pbwforge::scalar::{rat, HbarSeries};
use pbwforge::tensor::{CommMonomial, NcElement, Polynomial, Word};
use rand::Rng;

fn small(rng: &mut impl Rng) -> i64 {
    let v = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

fn random_monomial(rng: &mut impl Rng, n: usize, max_deg: u32) -> CommMonomial {
    let mut e = vec![0u32; n];
    for _ in 0..rng.gen_range(0..=max_deg) {
        e[rng.gen_range(0..n)] += 1;
    }
    CommMonomial::new(e)
}

pub fn random_polynomial(rng: &mut impl Rng, n: usize, max_deg: u32) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for _ in 0..rng.gen_range(1..=3) {
        p.add_term(random_monomial(rng, n, max_deg), &rat(small(rng)));
    }
    p
}

/// A nonzero polydifferential cochain with coefficients of degree `≤ max_deg`
/// and differential orders `≤ 2` per slot.
pub fn random_cochain(rng: &mut impl Rng, n: usize, arity: usize, max_deg: u32) -> PolyDiffOp {
    loop {
        let mut psi = PolyDiffOp::zero(n, arity);
        for _ in 0..rng.gen_range(1..=2) {
            let orders = (0..arity).map(|_| random_monomial(rng, n, 2)).collect();
            psi.add_term(orders, &random_polynomial(rng, n, max_deg));
        }
        if !psi.is_zero() {
            return psi;
        }
    }
}

fn random_series(rng: &mut impl Rng, order: usize, min_power: usize) -> HbarSeries {
    let p = rng.gen_range(min_power..order);
    HbarSeries::monomial(p, rat(small(rng)), order)
}

/// Random relations with words of length `≤ max_deg` and ℏ-valuation `≥ 1`.
pub fn random_relations(rng: &mut impl Rng, n: usize, order: usize, max_deg: usize) -> RelationSet {
    let mut rel = RelationSet::zero(n, order);
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(0.25) {
                continue;
            }
            let mut r = NcElement::zero(n, order);
            for _ in 0..rng.gen_range(1..=3) {
                let len = rng.gen_range(0..=max_deg);
                let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
                r.add_term(Word::from_indices(&w), &random_series(rng, order, 1));
            }
            rel.set(i, j, r).expect("valuation ≥ 1 by construction");
        }
    }
    rel
}

/// A random element with words of length `≤ max_len`.
pub fn random_element(rng: &mut impl Rng, n: usize, order: usize, max_len: usize) -> NcElement {
    let mut e = NcElement::zero(n, order);
    for _ in 0..rng.gen_range(1..=4) {
        let len = rng.gen_range(0..=max_len);
        let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
        e.add_term(Word::from_indices(&w), &random_series(rng, order, 0));
    }
    e
}
