//! Hochschild cochains on `S(V)` as polydifferential operators.
//!
//! An arity-`k` operator `Σ c(x)·∂^{α₁}⊗⋯⊗∂^{α_k}` acts by
//! `(f₁,…,f_k) ↦ Σ c·∂^{α₁}f₁⋯∂^{α_k}f_k`. Its Hochschild degree is `k − 1`,
//! so arity-0 operators (constants) sit in degree −1.
//!
//! The differential and bracket are
//!
//! `dΨ(a₀,…,a_k) = a₀Ψ(a₁,…,a_k) + Σ_i (−1)^{i+1} Ψ(…,a_i a_{i+1},…) + (−1)^{k+1} Ψ(a₀,…,a_{k−1})a_k`
//!
//! `(Ψ₁∘Ψ₂) = Σ_i (−1)^{il} Ψ₁(…, Ψ₂(a_i,…,a_{i+l}), …)`, `[Ψ₁,Ψ₂] = Ψ₁∘Ψ₂ − (−1)^{kl} Ψ₂∘Ψ₁`
//!
//! with `k`, `l` the Hochschild degrees. With these signs `dΨ = −[Ψ, m]`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Rational;
use crate::tensor::{CommMonomial, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyDiffOp {
    n: usize,
    arity: usize,
    terms: BTreeMap<Vec<CommMonomial>, Polynomial>,
}

impl PolyDiffOp {
    pub fn zero(n: usize, arity: usize) -> Self {
        PolyDiffOp {
            n,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(coeff: Polynomial, orders: Vec<CommMonomial>) -> Self {
        let mut p = Self::zero(coeff.n(), orders.len());
        p.add_term(orders, &coeff);
        p
    }

    pub fn identity(n: usize) -> Self {
        Self::term(Polynomial::constant(Rational::one(), n), vec![CommMonomial::one(n)])
    }

    /// The commutative product `m(f, g) = fg`.
    pub fn multiplication(n: usize) -> Self {
        Self::term(
            Polynomial::constant(Rational::one(), n),
            vec![CommMonomial::one(n), CommMonomial::one(n)],
        )
    }

    /// An arity-0 cochain, the constant `p`.
    pub fn constant(p: Polynomial) -> Self {
        Self::term(p, vec![])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn hochschild_degree(&self) -> i64 {
        self.arity as i64 - 1
    }

    pub fn terms(&self) -> &BTreeMap<Vec<CommMonomial>, Polynomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, orders: Vec<CommMonomial>, c: &Polynomial) {
        assert_eq!(orders.len(), self.arity, "derivative orders do not match the arity");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(orders.clone()).or_insert_with(|| Polynomial::zero(self.n));
        *slot = slot.add(c);
        if slot.is_zero() {
            self.terms.remove(&orders);
        }
    }

    /// Sum of two cochains of equal arity; a zero summand of any arity is allowed.
    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        assert_eq!(self.arity, other.arity, "adding cochains of different arity");
        let mut out = self.clone();
        for (o, c) in &other.terms {
            out.add_term(o.clone(), c);
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.n, self.arity);
        for (o, c) in &self.terms {
            out.add_term(o.clone(), &c.scale(s));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// `Ψ(f₁,…,f_k)`.
    pub fn evaluate(&self, args: &[Polynomial]) -> Polynomial {
        assert_eq!(args.len(), self.arity, "wrong number of arguments");
        let mut out = Polynomial::zero(self.n);
        for (orders, c) in &self.terms {
            let mut prod = c.clone();
            for (f, a) in args.iter().zip(orders) {
                prod = prod.mul(&f.derivative(a));
                if prod.is_zero() {
                    break;
                }
            }
            out = out.add(&prod);
        }
        out
    }

    /// `Ψ₁ ∘_i Ψ₂`: `Ψ₂` inserted into slot `i` of `Ψ₁`, expanded by the
    /// Leibniz rule.
    pub fn insert(&self, i: usize, other: &Self) -> Self {
        assert!(i < self.arity, "insertion slot out of range");
        let l = other.arity;
        let mut out = Self::zero(self.n, self.arity + l - 1);
        for (o1, c1) in &self.terms {
            let alpha = &o1[i];
            for (o2, c2) in &other.terms {
                // α distributed over the coefficient of Ψ₂ and its l arguments
                for parts in compositions(alpha, l + 1) {
                    let weight = multinomial(alpha, &parts);
                    let coeff = c1.mul(&c2.derivative(&parts[0])).scale(&weight);
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut orders = Vec::with_capacity(out.arity);
                    orders.extend_from_slice(&o1[..i]);
                    for (b, g) in o2.iter().zip(&parts[1..]) {
                        orders.push(b.mul(g));
                    }
                    orders.extend_from_slice(&o1[i + 1..]);
                    out.add_term(orders, &coeff);
                }
            }
        }
        out
    }
}

/// All ordered ways to write `alpha` as a sum of `parts` multi-indices.
pub(crate) fn compositions(alpha: &CommMonomial, parts: usize) -> Vec<Vec<CommMonomial>> {
    if parts == 0 {
        return if alpha.degree() == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![alpha.clone()]];
    }
    let mut out = Vec::new();
    for (a, rest) in alpha.splittings() {
        for mut tail in compositions(&rest, parts - 1) {
            tail.insert(0, a.clone());
            out.push(tail);
        }
    }
    out
}

/// `α! / Π γ_r!`.
fn multinomial(alpha: &CommMonomial, parts: &[CommMonomial]) -> Rational {
    let denom = parts.iter().fold(Rational::one(), |acc, g| acc * g.factorial());
    alpha.factorial() / denom
}

fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// `Ψ₁∘Ψ₂ = Σ_i (−1)^{il} Ψ₁ ∘_i Ψ₂`, `l` the Hochschild degree of `Ψ₂`.
pub fn circle(p1: &PolyDiffOp, p2: &PolyDiffOp) -> PolyDiffOp {
    let l = p2.hochschild_degree();
    let mut out = PolyDiffOp::zero(p1.n, (p1.arity + p2.arity).saturating_sub(1));
    if p1.arity == 0 {
        return out;
    }
    for i in 0..p1.arity {
        let s = sign((i as i64 * l).rem_euclid(2) == 1);
        out = out.add(&p1.insert(i, p2).scale(&s));
    }
    out
}

/// `[Ψ₁,Ψ₂] = Ψ₁∘Ψ₂ − (−1)^{kl} Ψ₂∘Ψ₁`.
pub fn gerstenhaber(p1: &PolyDiffOp, p2: &PolyDiffOp) -> PolyDiffOp {
    let (k, l) = (p1.hochschild_degree(), p2.hochschild_degree());
    let arity = p1.arity + p2.arity;
    if arity == 0 {
        // two constants: both circle products are empty sums
        return PolyDiffOp::zero(p1.n, 0);
    }
    let a = circle(p1, p2);
    let b = circle(p2, p1);
    a.sub(&b.scale(&sign((k * l).rem_euclid(2) == 1)))
}

/// The Hochschild differential, term by term.
pub fn hochschild_diff(psi: &PolyDiffOp) -> PolyDiffOp {
    let n = psi.n;
    let k = psi.arity;
    let one = CommMonomial::one(n);
    let m = PolyDiffOp::multiplication(n);
    let mut out = PolyDiffOp::zero(n, k + 1);
    // a₀·Ψ(a₁,…,a_k): a₀ enters undifferentiated
    for (o, c) in &psi.terms {
        let mut orders = vec![one.clone()];
        orders.extend_from_slice(o);
        out.add_term(orders, c);
    }
    for i in 0..k {
        let s = sign(i % 2 == 0);
        out = out.add(&psi.insert(i, &m).scale(&s));
    }
    let s = sign((k + 1) % 2 == 1);
    for (o, c) in &psi.terms {
        let mut orders = o.clone();
        orders.push(one.clone());
        out.add_term(orders, &c.scale(&s));
    }
    out
}

impl PolyDiffOp {
    /// Coefficient-wise constant term, an operator with constant coefficients.
    pub fn constant_part(&self) -> Self {
        let one = CommMonomial::one(self.n);
        let mut out = Self::zero(self.n, self.arity);
        for (o, c) in &self.terms {
            let c0 = c.coeff(&one);
            if !c0.is_zero() {
                out.add_term(o.clone(), &Polynomial::constant(c0, self.n));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn differential_examples() {
        let n = 2;
        assert_eq!(hochschild_diff(&PolyDiffOp::identity(n)), PolyDiffOp::multiplication(n));
        assert!(hochschild_diff(&PolyDiffOp::multiplication(n)).is_zero());
    }

    #[test]
    fn bracket_of_m_with_itself_vanishes() {
        let m = PolyDiffOp::multiplication(2);
        assert!(gerstenhaber(&m, &m).is_zero());
    }

    #[test]
    fn differential_is_minus_bracket_with_m() {
        let n = 2;
        let psi = PolyDiffOp::term(Polynomial::var(0, n), vec![CommMonomial::new(vec![1, 1])])
            .add(&PolyDiffOp::term(Polynomial::constant(rat(3), n), vec![CommMonomial::new(vec![2, 0])]));
        let m = PolyDiffOp::multiplication(n);
        assert_eq!(hochschild_diff(&psi), gerstenhaber(&psi, &m).scale(&rat(-1)));
    }

    #[test]
    fn insertion_applies_leibniz() {
        // ∂₁ ∘ m = ∂₁⊗1 + 1⊗∂₁
        let n = 1;
        let d = PolyDiffOp::term(Polynomial::constant(rat(1), n), vec![CommMonomial::new(vec![1])]);
        let got = d.insert(0, &PolyDiffOp::multiplication(n));
        let want = PolyDiffOp::term(Polynomial::constant(rat(1), n), vec![CommMonomial::new(vec![1]), CommMonomial::one(n)])
            .add(&PolyDiffOp::term(Polynomial::constant(rat(1), n), vec![CommMonomial::one(n), CommMonomial::new(vec![1])]));
        assert_eq!(got, want);
    }
}
