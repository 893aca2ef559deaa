//! Finite-weight coalgebras and algebras given by explicit bases.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::Rational;
use crate::tensor::{wedge, CommMonomial, ExtMonomial};
use crate::{Error, Result};

/// Label of a coalgebra basis element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LetterLabel {
    /// A monomial `w^a` of a symmetric coalgebra.
    Sym(CommMonomial),
    /// A monomial `ξ_I` of an exterior coalgebra.
    Ext(ExtMonomial),
}

impl fmt::Debug for LetterLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LetterLabel::Sym(m) => write!(f, "{m:?}"),
            LetterLabel::Ext(m) if m.degree() == 1 => write!(f, "x{}", m.indices()[0] + 1),
            LetterLabel::Ext(m) => write!(f, "{m:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub label: LetterLabel,
    pub weight: usize,
    /// Degree inside the coalgebra; a letter sits in cobar degree `1 − internal_degree`.
    pub internal_degree: i64,
}

impl Letter {
    pub fn cobar_degree(&self) -> i64 {
        1 - self.internal_degree
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoalgebraKind {
    /// `S(W)⁺` with the reduced shuffle coproduct.
    ReducedSym,
    /// `S(W)` with the counital coproduct (contains the unit letter).
    FullSym,
    /// `Λ⁻(V)`, the exterior coalgebra without its unit.
    ReducedExt,
}

/// A coalgebra on an explicit, weight-bounded basis.
///
/// `coproduct[q]` lists `(a, b, c)` with `Δ(q) = Σ c·a⊗b`.
#[derive(Clone, Debug)]
pub struct CoalgebraData {
    pub kind: CoalgebraKind,
    pub n: usize,
    pub weight_bound: usize,
    pub letters: Vec<Letter>,
    pub coproduct: Vec<Vec<(u32, u32, Rational)>>,
    index: BTreeMap<LetterLabel, u32>,
}

impl CoalgebraData {
    fn build(kind: CoalgebraKind, n: usize, weight_bound: usize, mut letters: Vec<Letter>) -> Self {
        letters.sort_by(|a, b| a.weight.cmp(&b.weight).then_with(|| a.label.cmp(&b.label)));
        let index = letters
            .iter()
            .enumerate()
            .map(|(i, l)| (l.label.clone(), i as u32))
            .collect();
        let mut c = CoalgebraData {
            kind,
            n,
            weight_bound,
            letters,
            coproduct: Vec::new(),
            index,
        };
        c.coproduct = (0..c.letters.len()).map(|q| c.compute_coproduct(q)).collect();
        c
    }

    /// `S(W)⁺` on `n` generators, monomials of degree `1..=weight_bound`.
    pub fn reduced_sym(n: usize, weight_bound: usize) -> Self {
        let letters = (1..=weight_bound as u32)
            .flat_map(|d| CommMonomial::all_of_degree(n, d))
            .map(sym_letter)
            .collect();
        Self::build(CoalgebraKind::ReducedSym, n, weight_bound, letters)
    }

    /// `S(W)` with unit, monomials of degree `0..=weight_bound`.
    pub fn full_sym(n: usize, weight_bound: usize) -> Self {
        let letters = (0..=weight_bound as u32)
            .flat_map(|d| CommMonomial::all_of_degree(n, d))
            .map(sym_letter)
            .collect();
        Self::build(CoalgebraKind::FullSym, n, weight_bound, letters)
    }

    /// `Λ⁻(V)` on `n` generators: `ξ_I` for nonempty `I`, weight and
    /// internal degree `|I|`.
    pub fn reduced_ext(n: usize) -> Self {
        let letters = (1..=n)
            .flat_map(|p| ExtMonomial::all_of_degree(n, p))
            .map(|m| Letter {
                weight: m.degree(),
                internal_degree: m.degree() as i64,
                label: LetterLabel::Ext(m),
            })
            .collect();
        Self::build(CoalgebraKind::ReducedExt, n, n, letters)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letter(&self, q: u32) -> &Letter {
        &self.letters[q as usize]
    }

    pub fn index_of(&self, label: &LetterLabel) -> Option<u32> {
        self.index.get(label).copied()
    }

    pub fn unit(&self) -> Option<u32> {
        match self.kind {
            CoalgebraKind::FullSym => self.index_of(&LetterLabel::Sym(CommMonomial::one(self.n))),
            _ => None,
        }
    }

    /// Global sign of the cobar differential on a cogenerator. Together
    /// with the factor `(−1)^{|a|}` this makes `d² = 0` for graded letters
    /// and gives `d(ξ₁₂) = x₁⊗x₂ − x₂⊗x₁`.
    pub fn cobar_sign(&self) -> i32 {
        match self.kind {
            CoalgebraKind::ReducedExt => -1,
            _ => 1,
        }
    }

    fn compute_coproduct(&self, q: usize) -> Vec<(u32, u32, Rational)> {
        let mut out = Vec::new();
        match &self.letters[q].label {
            LetterLabel::Sym(m) => {
                let full = self.kind == CoalgebraKind::FullSym;
                for (a, b) in m.splittings() {
                    if !full && (a.degree() == 0 || b.degree() == 0) {
                        continue;
                    }
                    // number of position subsets with the given content
                    let c = m.factorial() / (a.factorial() * b.factorial());
                    let ia = self.index[&LetterLabel::Sym(a)];
                    let ib = self.index[&LetterLabel::Sym(b)];
                    out.push((ia, ib, c));
                }
            }
            LetterLabel::Ext(m) => {
                let ix = m.indices();
                let p = ix.len();
                for mask in 1..(1u32 << p) - 1 {
                    let a: Vec<usize> = (0..p).filter(|t| mask >> t & 1 == 1).map(|t| ix[t] as usize).collect();
                    let b: Vec<usize> = (0..p).filter(|t| mask >> t & 1 == 0).map(|t| ix[t] as usize).collect();
                    let (ma, mb) = (ExtMonomial::new(&a), ExtMonomial::new(&b));
                    let (_, s) = wedge(&ma, &mb).expect("disjoint splitting");
                    let ia = self.index[&LetterLabel::Ext(ma)];
                    let ib = self.index[&LetterLabel::Ext(mb)];
                    out.push((ia, ib, Rational::from_integer(s.into())));
                }
            }
        }
        out.sort_by_key(|x| (x.0, x.1));
        out
    }

    /// `(Δ⊗1)Δ = (1⊗Δ)Δ` on every basis element.
    pub fn check_coassociative(&self) -> Result<()> {
        for q in 0..self.letters.len() {
            let mut diff: BTreeMap<(u32, u32, u32), Rational> = BTreeMap::new();
            for (a, b, c) in &self.coproduct[q] {
                for (a1, a2, c2) in &self.coproduct[*a as usize] {
                    *diff.entry((*a1, *a2, *b)).or_insert_with(Rational::zero) += c * c2;
                }
                for (b1, b2, c2) in &self.coproduct[*b as usize] {
                    *diff.entry((*a, *b1, *b2)).or_insert_with(Rational::zero) -= c * c2;
                }
            }
            if diff.values().any(|v| !v.is_zero()) {
                return Err(Error::Construction(format!(
                    "coproduct is not coassociative on {:?}",
                    self.letters[q].label
                )));
            }
        }
        Ok(())
    }
}

fn sym_letter(m: CommMonomial) -> Letter {
    Letter {
        weight: m.degree() as usize,
        internal_degree: 0,
        label: LetterLabel::Sym(m),
    }
}

/// An algebra on an explicit weight-graded basis with a multiplication
/// table; products of total weight above `weight_bound` are not recorded.
#[derive(Clone, Debug)]
pub struct AlgebraData {
    pub names: Vec<String>,
    pub weights: Vec<usize>,
    pub weight_bound: usize,
    /// `mult[(a, b)] = Σ c·e`.
    pub mult: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
}

impl AlgebraData {
    pub fn new(
        names: Vec<String>,
        weights: Vec<usize>,
        weight_bound: usize,
        mult: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
    ) -> Result<Self> {
        let a = AlgebraData {
            names,
            weights,
            weight_bound,
            mult,
        };
        a.check_associative()?;
        Ok(a)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn product(&self, a: usize, b: usize) -> &[(usize, Rational)] {
        self.mult.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    fn times(&self, v: &BTreeMap<usize, Rational>, b: usize, left: bool) -> BTreeMap<usize, Rational> {
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        for (e, c) in v {
            let prod = if left { self.product(b, *e) } else { self.product(*e, b) };
            for (f, c2) in prod {
                *out.entry(*f).or_insert_with(Rational::zero) += c * c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `(ab)c = a(bc)` for all basis triples of total weight `≤ weight_bound`.
    pub fn check_associative(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.weights[a] + self.weights[b] + self.weights[c] > self.weight_bound {
                        continue;
                    }
                    let ab: BTreeMap<usize, Rational> = self.product(a, b).iter().cloned().collect();
                    let bc: BTreeMap<usize, Rational> = self.product(b, c).iter().cloned().collect();
                    if self.times(&ab, c, false) != self.times(&bc, a, true) {
                        return Err(Error::Construction(format!(
                            "multiplication is not associative on ({}, {}, {})",
                            self.names[a], self.names[b], self.names[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `S(ℚⁿ)`: the augmentation ideal if `unital` is false, else with `1`.
    pub fn symmetric(n: usize, weight_bound: usize, unital: bool) -> Self {
        let start = if unital { 0 } else { 1 };
        let monos: Vec<CommMonomial> = (start..=weight_bound as u32)
            .flat_map(|d| CommMonomial::all_of_degree(n, d))
            .collect();
        let index: BTreeMap<&CommMonomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mult = BTreeMap::new();
        for (i, a) in monos.iter().enumerate() {
            for (j, b) in monos.iter().enumerate() {
                let p = a.mul(b);
                if let Some(&k) = index.get(&p) {
                    mult.insert((i, j), vec![(k, Rational::one())]);
                }
            }
        }
        AlgebraData {
            names: monos.iter().map(|m| format!("{m:?}")).collect(),
            weights: monos.iter().map(|m| m.degree() as usize).collect(),
            weight_bound,
            mult,
        }
    }

    /// `ℚ[x]/(x^{top+1})` with unit, `x` of weight 1.
    pub fn truncated_polynomial(top: usize) -> Self {
        let mut mult = BTreeMap::new();
        for a in 0..=top {
            for b in 0..=top - a {
                mult.insert((a, b), vec![(a + b, Rational::one())]);
            }
        }
        AlgebraData {
            names: (0..=top).map(|e| format!("x^{e}")).collect(),
            weights: (0..=top).collect(),
            weight_bound: 2 * top + 1,
            mult,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab_sym(e: &[u32]) -> LetterLabel {
        LetterLabel::Sym(CommMonomial::new(e.to_vec()))
    }

    #[test]
    fn sym_coproduct_example() {
        let c = CoalgebraData::reduced_sym(2, 3);
        let q = c.index_of(&lab_sym(&[1, 1])).unwrap();
        let x1 = c.index_of(&lab_sym(&[1, 0])).unwrap();
        let x2 = c.index_of(&lab_sym(&[0, 1])).unwrap();
        let mut got = c.coproduct[q as usize].clone();
        got.sort_by_key(|t| (t.0, t.1));
        let mut want = vec![(x1, x2, Rational::one()), (x2, x1, Rational::one())];
        want.sort_by_key(|t| (t.0, t.1));
        assert_eq!(got, want);
        c.check_coassociative().unwrap();
        CoalgebraData::full_sym(2, 3).check_coassociative().unwrap();
    }

    #[test]
    fn ext_coproduct_examples() {
        let c = CoalgebraData::reduced_ext(2);
        let xi1 = c.index_of(&LetterLabel::Ext(ExtMonomial::new(&[0]))).unwrap();
        let xi2 = c.index_of(&LetterLabel::Ext(ExtMonomial::new(&[1]))).unwrap();
        assert!(c.coproduct[xi1 as usize].is_empty());
        let xi12 = c.index_of(&LetterLabel::Ext(ExtMonomial::new(&[0, 1]))).unwrap();
        let got = &c.coproduct[xi12 as usize];
        assert_eq!(got.len(), 2);
        assert!(got.contains(&(xi1, xi2, Rational::one())));
        assert!(got.contains(&(xi2, xi1, -Rational::one())));
        CoalgebraData::reduced_ext(4).check_coassociative().unwrap();
    }

    #[test]
    fn associativity_detected() {
        AlgebraData::symmetric(2, 4, false).check_associative().unwrap();
        let mut mult = BTreeMap::new();
        // x·x = y, x·y = x, y·x = 0: (xx)x = y·x = 0 but x(xx) = x·y = x
        mult.insert((0, 0), vec![(1, Rational::one())]);
        mult.insert((0, 1), vec![(0, Rational::one())]);
        let bad = AlgebraData::new(vec!["x".into(), "y".into()], vec![1, 1], 3, mult);
        assert!(matches!(bad, Err(Error::Construction(_))));
    }
}
