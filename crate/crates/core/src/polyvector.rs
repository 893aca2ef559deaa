//! Polynomial polyvector fields, the Schouten bracket, Jacobi defects and
//! the Koszul transport of bivectors.
//!
//! A polyvector `Σ_I p_I(x) ∂_{i₁}∧⋯∧∂_{i_k}` is stored as a map from the
//! ∂-slot monomial to its coefficient. A bivector `α = Σ_{i<j} α_ij ∂_i∧∂_j`
//! induces `{f,g} = Σ_{i<j} α_ij (∂_i f ∂_j g − ∂_j f ∂_i g)`, so that
//! `{x_i, x_j} = α_ij`.
//!
//! The Schouten bracket is computed with odd coordinates `θ_i = ∂_i`:
//!
//! `[P,Q] = Σ_i (P ∂⃖/∂θ_i)·(∂Q/∂x_i) − (−1)^{(p−1)(q−1)} (Q ∂⃖/∂θ_i)·(∂P/∂x_i)`
//!
//! with right θ-derivatives. With this sign, `[X,Y]` is the Lie bracket of
//! vector fields and `½[α,α]` evaluated on `(x_a,x_b,x_c)` is the Jacobiator
//! `{x_a,{x_b,x_c}} + {x_b,{x_c,x_a}} + {x_c,{x_a,x_b}}`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{rational_str, ratio, Rational};
use crate::tensor::{wedge, CommMonomial, ExtMonomial, PolyTerm, Polynomial};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyvector {
    n: usize,
    terms: BTreeMap<ExtMonomial, Polynomial>,
}

impl Polyvector {
    pub fn zero(n: usize) -> Self {
        Polyvector {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(slots: &[usize], coeff: Polynomial) -> Self {
        let n = coeff.n();
        let (m, sign) = ExtMonomial::from_unsorted(slots).expect("repeated ∂-slot");
        let mut p = Self::zero(n);
        p.add_term(m, &coeff.scale(&Rational::from_integer(sign.into())));
        p
    }

    /// Bivector from its upper-triangular entries `α_ij`, `i < j`.
    pub fn bivector(n: usize, entries: impl IntoIterator<Item = ((usize, usize), Polynomial)>) -> Result<Self> {
        let mut p = Self::zero(n);
        for ((i, j), a) in entries {
            if !(i < j && j < n) {
                return Err(Error::Usage(format!("bivector pair ({i},{j}) must satisfy i<j<{n}")));
            }
            if a.n() != n {
                return Err(Error::Usage(format!("coefficient of ({i},{j}) is over {} generators, expected {n}", a.n())));
            }
            p.add_term(ExtMonomial::new(&[i, j]), &a);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<ExtMonomial, Polynomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, slots: &ExtMonomial) -> Polynomial {
        self.terms.get(slots).cloned().unwrap_or_else(|| Polynomial::zero(self.n))
    }

    /// `α_ij` with `α_ji = −α_ij`.
    pub fn entry(&self, i: usize, j: usize) -> Polynomial {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.coeff(&ExtMonomial::new(&[i, j])),
            std::cmp::Ordering::Greater => self.coeff(&ExtMonomial::new(&[j, i])).scale(&-Rational::one()),
            std::cmp::Ordering::Equal => Polynomial::zero(self.n),
        }
    }

    /// Multivector degree if all terms share it; `Some(d)` for any `d` is not
    /// meaningful for zero, which reports `None`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(ExtMonomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn add_term(&mut self, m: ExtMonomial, c: &Polynomial) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(|| Polynomial::zero(c.n()));
        *slot = slot.add(c);
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        for (m, p) in &self.terms {
            out.add_term(m.clone(), &p.scale(c));
        }
        out
    }

    /// Component of multivector degree `d`.
    pub fn component(&self, d: usize) -> Self {
        Polyvector {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn right_theta_derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            if let Some((pos, rest)) = m.remove(i) {
                let hops = m.degree() - 1 - pos;
                let c = if hops % 2 == 1 { c.scale(&-Rational::one()) } else { c.clone() };
                out.add_term(rest, &c);
            }
        }
        out
    }

    fn x_derivative(&self, i: usize) -> Self {
        let e = CommMonomial::var(i, self.n);
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &c.derivative(&e));
        }
        out
    }

    /// θ-wedge product with polynomial coefficients multiplied.
    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                if let Some((m, s)) = wedge(a, b) {
                    out.add_term(m, &p.mul(q).scale(&Rational::from_integer(s.into())));
                }
            }
        }
        out
    }

    /// Contracts with differentials: `P(df₁,…,df_k)` for `P` of degree `k`.
    pub fn evaluate(&self, fs: &[Polynomial]) -> Polynomial {
        let k = fs.len();
        let mut out = Polynomial::zero(self.n);
        for (m, c) in self.terms.iter().filter(|(m, _)| m.degree() == k) {
            // Σ_σ sgn(σ) Π ∂_{i_σ(r)} f_r
            let idx: Vec<usize> = m.indices().iter().map(|&i| i as usize).collect();
            for perm in permutations(k) {
                let sign = perm_sign(&perm);
                let mut prod = c.clone();
                for (r, &s) in perm.iter().enumerate() {
                    prod = prod.mul(&fs[r].derivative(&CommMonomial::var(idx[s], self.n)));
                }
                out = out.add(&prod.scale(&Rational::from_integer(sign.into())));
            }
        }
        out
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn perm_sign(p: &[usize]) -> i32 {
    let mut s = 1;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                s = -s;
            }
        }
    }
    s
}

/// Schouten–Nijenhuis bracket, extended bilinearly over homogeneous parts.
pub fn schouten(p: &Polyvector, q: &Polyvector) -> Polyvector {
    assert_eq!(p.n, q.n, "schouten bracket of polyvectors on different spaces");
    let n = p.n;
    let degs = |x: &Polyvector| {
        let mut d: Vec<usize> = x.terms.keys().map(ExtMonomial::degree).collect();
        d.sort();
        d.dedup();
        d
    };
    let mut out = Polyvector::zero(n);
    for dp in degs(p) {
        let pp = p.component(dp);
        for dq in degs(q) {
            let qq = q.component(dq);
            let odd = (dp as i64 - 1) * (dq as i64 - 1) % 2 != 0;
            for i in 0..n {
                let a = pp.right_theta_derivative(i).wedge(&qq.x_derivative(i));
                let b = qq.right_theta_derivative(i).wedge(&pp.x_derivative(i));
                out = out.add(&a);
                out = if odd { out.add(&b) } else { out.sub(&b) };
            }
        }
    }
    out
}

/// Structure constants `c_ij^k` stored for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    n: usize,
    c: BTreeMap<(usize, usize), BTreeMap<usize, Rational>>,
}

impl StructureConstants {
    pub fn zero(n: usize) -> Self {
        StructureConstants { n, c: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sets `c_ij^k`; errors unless `i < j` and all indices are in range.
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) -> Result<()> {
        if !(i < j && j < self.n && k < self.n) {
            return Err(Error::Usage(format!(
                "structure constant ({i},{j};{k}) needs i<j and indices below {}",
                self.n
            )));
        }
        let row = self.c.entry((i, j)).or_default();
        if v.is_zero() {
            row.remove(&k);
        } else {
            row.insert(k, v);
        }
        if row.is_empty() {
            self.c.remove(&(i, j));
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Rational {
        let look = |a, b| {
            self.c
                .get(&(a, b))
                .and_then(|r| r.get(&k))
                .cloned()
                .unwrap_or_else(Rational::zero)
        };
        match i.cmp(&j) {
            std::cmp::Ordering::Less => look(i, j),
            std::cmp::Ordering::Greater => -look(j, i),
            std::cmp::Ordering::Equal => Rational::zero(),
        }
    }

    /// `[e_i, e_j] = Σ_k c_ij^k e_k`.
    pub fn bracket(&self, i: usize, j: usize) -> BTreeMap<usize, Rational> {
        (0..self.n)
            .map(|k| (k, self.get(i, j, k)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &BTreeMap<usize, Rational>)> {
        self.c.iter().map(|(p, r)| (*p, r))
    }

    pub fn is_abelian(&self) -> bool {
        self.c.is_empty()
    }
}

/// Nonzero entries of `Σ_a (c_ij^a c_ak^b + c_jk^a c_ai^b + c_ki^a c_aj^b)`
/// over `i<j<k` and all `b`; empty iff `c` is a Lie algebra.
pub fn jacobi_defect(c: &StructureConstants) -> BTreeMap<(usize, usize, usize, usize), Rational> {
    let n = c.n;
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for b in 0..n {
                    let mut s = Rational::zero();
                    for a in 0..n {
                        s += c.get(i, j, a) * c.get(a, k, b);
                        s += c.get(j, k, a) * c.get(a, i, b);
                        s += c.get(k, i, a) * c.get(a, j, b);
                    }
                    if !s.is_zero() {
                        out.insert((i, j, k, b), s);
                    }
                }
            }
        }
    }
    out
}

/// `½[α,α]`; zero iff α is Poisson.
pub fn poisson_defect(alpha: &Polyvector) -> Result<Polyvector> {
    match alpha.homogeneous_degree() {
        None | Some(2) => {}
        Some(d) => {
            return Err(Error::Usage(format!(
                "poisson_defect expects a bivector, got multivector degree {d}"
            )))
        }
    }
    if alpha.is_zero() {
        return Ok(Polyvector::zero(alpha.n));
    }
    Ok(schouten(alpha, alpha).scale(&ratio(1, 2)))
}

/// Linear Poisson structure `α_ij = Σ_k c_ij^k x_k`.
pub fn lift_lie(c: &StructureConstants) -> Polyvector {
    let n = c.n;
    let mut p = Polyvector::zero(n);
    for ((i, j), row) in c.entries() {
        let mut a = Polynomial::zero(n);
        for (k, v) in row {
            a.add_term(CommMonomial::var(*k, n), v);
        }
        p.add_term(ExtMonomial::new(&[i, j]), &a);
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualTerm {
    #[serde(with = "rational_str")]
    pub coeff: Rational,
    pub xi_pair: (usize, usize),
    /// Sorted multiset of ∂_ξ slots.
    pub slots: Vec<u16>,
}

impl DualTerm {
    /// Degree in the shifted grading: `ξ_iξ_j` contributes 2, each `∂_ξ`
    /// slot −1, and a k-vector field sits in shifted degree `k − 1`.
    pub fn shifted_degree(&self) -> i64 {
        let k = self.slots.len() as i64;
        2 - k + (k - 1)
    }
}

/// The image of a bivector under the Koszul correspondence: one term
/// `c·(ξ_iξ_j)·∂_{ξ_{i₁}}∧⋯∧∂_{ξ_{i_k}}` per monomial `c·x_{i₁}⋯x_{i_k}` of `α_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualPolyvector {
    pub n: usize,
    pub terms: Vec<DualTerm>,
}

pub fn koszul_dual(alpha: &Polyvector) -> Result<DualPolyvector> {
    if !matches!(alpha.homogeneous_degree(), None | Some(2)) {
        return Err(Error::Usage("koszul_dual expects a bivector".into()));
    }
    let mut terms = Vec::new();
    for (m, poly) in alpha.terms() {
        let ix = m.indices();
        for (mono, c) in poly.terms() {
            let t = DualTerm {
                coeff: c.clone(),
                xi_pair: (ix[0] as usize, ix[1] as usize),
                slots: mono.sorted_word().0,
            };
            if t.shifted_degree() != 1 {
                return Err(Error::Structural(format!("dual term {t:?} has shifted degree {}", t.shifted_degree())));
            }
            terms.push(t);
        }
    }
    Ok(DualPolyvector { n: alpha.n(), terms })
}

impl DualPolyvector {
    /// Inverse transport back to the bivector.
    pub fn to_bivector(&self) -> Result<Polyvector> {
        let mut p = Polyvector::zero(self.n);
        for t in &self.terms {
            let (i, j) = t.xi_pair;
            let mut exps = vec![0u32; self.n];
            for &s in &t.slots {
                exps[s as usize] += 1;
            }
            p = p.add(&Polyvector::bivector(
                self.n,
                [((i, j), Polynomial::monomial(CommMonomial::new(exps), t.coeff.clone()))],
            )?);
        }
        Ok(p)
    }
}

/// One entry of the Poisson bivector input schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BivectorEntry {
    pub pair: (usize, usize),
    pub polynomial: Vec<PolyTerm>,
}

/// One entry of the structure-constant input schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructureEntry {
    pub pair: (usize, usize),
    pub value: Vec<StructureValue>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructureValue {
    pub k: usize,
    #[serde(with = "rational_str")]
    pub coeff: Rational,
}

impl StructureConstants {
    pub fn from_entries(n: usize, entries: Vec<StructureEntry>) -> Result<Self> {
        let mut c = Self::zero(n);
        for e in entries {
            let (i, j) = e.pair;
            if c.c.contains_key(&(i, j)) {
                return Err(Error::Usage(format!("pair ({i},{j}) listed twice")));
            }
            for v in e.value {
                let prev = c.get(i, j, v.k);
                c.set(i, j, v.k, prev + v.coeff)?;
            }
        }
        Ok(c)
    }

    pub fn to_entries(&self) -> Vec<StructureEntry> {
        self.c
            .iter()
            .map(|(&pair, row)| StructureEntry {
                pair,
                value: row
                    .iter()
                    .map(|(&k, v)| StructureValue { k, coeff: v.clone() })
                    .collect(),
            })
            .collect()
    }
}

impl Polyvector {
    pub fn bivector_from_entries(n: usize, entries: Vec<BivectorEntry>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        let mut parsed = Vec::new();
        for e in entries {
            if !seen.insert(e.pair) {
                return Err(Error::Usage(format!("pair {:?} listed twice", e.pair)));
            }
            parsed.push((e.pair, Polynomial::from_poly_terms(n, e.polynomial)?));
        }
        Self::bivector(n, parsed)
    }

    /// Upper-triangular entries in the input schema (bivectors only).
    pub fn to_bivector_entries(&self) -> Vec<BivectorEntry> {
        self.terms
            .iter()
            .filter(|(m, _)| m.degree() == 2)
            .map(|(m, p)| BivectorEntry {
                pair: (m.indices()[0] as usize, m.indices()[1] as usize),
                polynomial: p
                    .terms()
                    .iter()
                    .map(|(mono, c)| PolyTerm {
                        exponents: mono.exps.clone(),
                        coeff: c.clone(),
                    })
                    .collect(),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn x(i: usize, n: usize) -> Polynomial {
        Polynomial::var(i, n)
    }

    fn one(n: usize) -> Polynomial {
        Polynomial::constant(rat(1), n)
    }

    pub(crate) fn sl2() -> StructureConstants {
        let mut c = StructureConstants::zero(3);
        c.set(0, 1, 0, rat(-2)).unwrap();
        c.set(0, 2, 1, rat(1)).unwrap();
        c.set(1, 2, 2, rat(-2)).unwrap();
        c
    }

    #[test]
    fn schouten_examples() {
        let a = Polyvector::term(&[0, 1], one(2));
        assert!(schouten(&a, &a).is_zero());
        let v = Polyvector::term(&[0], x(0, 2));
        assert!(schouten(&v, &v).is_zero());
        let b = Polyvector::term(&[0, 1], x(2, 3));
        assert!(schouten(&b, &b).is_zero());
    }

    #[test]
    fn schouten_of_vector_fields_is_lie_bracket() {
        // [x₁∂₂, ∂₁] = −∂₂
        let v = Polyvector::term(&[1], x(0, 2));
        let w = Polyvector::term(&[0], one(2));
        assert_eq!(schouten(&v, &w), Polyvector::term(&[1], one(2).scale(&rat(-1))));
    }

    #[test]
    fn jacobi_examples() {
        assert!(jacobi_defect(&sl2()).is_empty());
        assert!(jacobi_defect(&StructureConstants::zero(3)).is_empty());
        let mut nj = StructureConstants::zero(3);
        nj.set(0, 1, 2, rat(1)).unwrap();
        nj.set(0, 2, 0, rat(1)).unwrap();
        let d = jacobi_defect(&nj);
        assert!(!d.is_empty());
        assert!(d.keys().all(|&(i, j, k, _)| (i, j, k) == (0, 1, 2)));
    }

    #[test]
    fn poisson_defect_examples() {
        let a = Polyvector::term(&[0, 1], x(0, 2).mul(&x(1, 2)));
        assert!(poisson_defect(&a).unwrap().is_zero());
        assert!(poisson_defect(&lift_lie(&sl2())).unwrap().is_zero());
        let h = Polyvector::term(&[0, 1], x(2, 3));
        assert!(poisson_defect(&h).unwrap().is_zero());
        let v = Polyvector::term(&[0], x(0, 2));
        assert!(matches!(poisson_defect(&v), Err(Error::Usage(_))));
    }

    #[test]
    fn lift_examples() {
        assert!(lift_lie(&StructureConstants::zero(3)).is_zero());
        let mut h = StructureConstants::zero(3);
        h.set(0, 1, 2, rat(1)).unwrap();
        assert_eq!(lift_lie(&h), Polyvector::term(&[0, 1], x(2, 3)));
        let s = lift_lie(&sl2());
        assert_eq!(s.terms().len(), 3);
        assert!(s.terms().values().all(|p| p.degree() == Some(1)));
    }

    #[test]
    fn koszul_examples() {
        let a = Polyvector::term(&[0, 1], x(2, 3));
        let d = koszul_dual(&a).unwrap();
        assert_eq!(
            d.terms,
            vec![DualTerm { coeff: rat(1), xi_pair: (0, 1), slots: vec![2] }]
        );
        let b = Polyvector::term(&[0, 1], x(0, 2).mul(&x(1, 2)));
        assert_eq!(koszul_dual(&b).unwrap().terms[0].slots, vec![0, 1]);
        assert!(koszul_dual(&Polyvector::zero(3)).unwrap().terms.is_empty());
    }
}
