//! Tensor, symmetric and exterior monomials.
//!
//! [`NcElement`] is an element of `T(V)⊗ℚ[ℏ]/ℏ^K`; [`Polynomial`] lives in
//! `S(V)` with rational coefficients; [`ExtMonomial`] indexes a basis of `Λ(V)`.
//!
//! The symmetrization map uses the averaged (projector) convention:
//! `x_{i₁}⋯x_{i_k} ↦ (1/k!) Σ_σ x_{i_σ(1)}⊗⋯⊗x_{i_σ(k)}`, so abelianizing
//! `sym_embed(p)` returns `p` with coefficient exactly one.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{factorial, format_rational, rational_str, HbarSeries, Rational};
use crate::{Error, Result};

/// A noncommutative monomial: a sequence of generator indices.
///
/// Ordered by length first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<u16>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: usize) -> Self {
        Word(vec![i as u16])
    }

    pub fn from_indices(ix: &[usize]) -> Self {
        Word(ix.iter().map(|&i| i as u16).collect())
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Number of position pairs `a < b` with `letter(a) > letter(b)`.
    pub fn inversion_count(&self) -> usize {
        let w = &self.0;
        let mut count = 0;
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                if w[a] > w[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Position of the leftmost adjacent descent `w[p] > w[p+1]`.
    pub fn leftmost_descent(&self) -> Option<usize> {
        self.0.windows(2).position(|p| p[0] > p[1])
    }

    pub fn is_sorted(&self) -> bool {
        self.leftmost_descent().is_none()
    }

    /// Commutative image.
    pub fn abelianize(&self, n: usize) -> CommMonomial {
        let mut exps = vec![0u32; n];
        for &l in &self.0 {
            exps[l as usize] += 1;
        }
        CommMonomial { exps }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "x{}", l + 1)?;
        }
        Ok(())
    }
}

/// Element of `T(V)⊗ℚ[ℏ]/ℏ^K`: a finite map from words to series, with no
/// stored zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct NcElement {
    n: usize,
    order: usize,
    terms: BTreeMap<Word, HbarSeries>,
}

impl NcElement {
    pub fn zero(n: usize, order: usize) -> Self {
        NcElement {
            n,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, order: usize) -> Self {
        Self::from_word(Word::empty(), HbarSeries::one(order), n)
    }

    pub fn generator(i: usize, n: usize, order: usize) -> Self {
        assert!(i < n, "generator x{i} out of range for n={n}");
        Self::from_word(Word::letter(i), HbarSeries::one(order), n)
    }

    pub fn from_word(w: Word, c: HbarSeries, n: usize) -> Self {
        let mut e = Self::zero(n, c.order());
        e.add_term(w, &c);
        e
    }

    pub fn from_terms(
        n: usize,
        order: usize,
        terms: impl IntoIterator<Item = (Word, HbarSeries)>,
    ) -> Result<Self> {
        let mut e = Self::zero(n, order);
        for (w, c) in terms {
            if c.order() != order {
                return Err(Error::TruncationMismatch {
                    left: order,
                    right: c.order(),
                });
            }
            if let Some(&bad) = w.0.iter().find(|&&l| l as usize >= n) {
                return Err(Error::Usage(format!(
                    "generator index {bad} out of range for n={n}"
                )));
            }
            e.add_term(w, &c);
        }
        Ok(e)
    }

    pub fn generator_count(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Word, HbarSeries> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, HbarSeries> {
        self.terms
    }

    pub fn coeff(&self, w: &Word) -> Option<&HbarSeries> {
        self.terms.get(w)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c·w`, dropping the entry if it cancels.
    pub fn add_term(&mut self, w: Word, c: &HbarSeries) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Usage(format!(
                "generator count mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        if self.order != other.order {
            return Err(Error::TruncationMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), &-c);
        }
        Ok(out)
    }

    /// Bilinear extension of concatenation.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.n, self.order);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let c = a * b;
                out.add_term(u.concat(v), &c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &HbarSeries) -> Self {
        let mut out = Self::zero(self.n, self.order);
        for (w, a) in &self.terms {
            out.add_term(w.clone(), &(a * c));
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n, self.order);
        for (w, a) in &self.terms {
            out.add_term(w.clone(), &a.scale(c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale_rational(&-Rational::one())
    }

    /// Minimum ℏ-valuation over all terms (K for the zero element).
    pub fn valuation(&self) -> usize {
        self.terms
            .values()
            .map(HbarSeries::valuation)
            .min()
            .unwrap_or(self.order)
    }

    /// Longest word length appearing (0 for the zero element).
    pub fn max_weight(&self) -> usize {
        self.terms.keys().map(Word::weight).max().unwrap_or(0)
    }

    /// The weight-`w` homogeneous component.
    pub fn component(&self, weight: usize) -> Self {
        NcElement {
            n: self.n,
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.weight() == weight)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Commutative image in `S(V)⊗ℚ[ℏ]/ℏ^K`.
    pub fn abelianize(&self) -> BTreeMap<CommMonomial, HbarSeries> {
        let mut out: BTreeMap<CommMonomial, HbarSeries> = BTreeMap::new();
        for (w, c) in &self.terms {
            let m = w.abelianize(self.n);
            let slot = out
                .entry(m)
                .or_insert_with(|| HbarSeries::zero(self.order));
            *slot += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Specialization ℏ = 1, keeping the retained orders.
    pub fn at_hbar_one(&self) -> BTreeMap<Word, Rational> {
        self.terms
            .iter()
            .map(|(w, c)| (w.clone(), c.at_one()))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// Explicitly lowers the truncation order.
    pub fn truncate_to(&self, order: usize) -> Self {
        let mut out = Self::zero(self.n, order);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &c.truncate_to(order));
        }
        out
    }

    /// The coefficient of ℏ^power as a rational combination of words.
    pub fn hbar_coefficient(&self, power: usize) -> BTreeMap<Word, Rational> {
        self.terms
            .iter()
            .filter(|(_, c)| !c.coeff(power).is_zero())
            .map(|(w, c)| (w.clone(), c.coeff(power).clone()))
            .collect()
    }
}

impl fmt::Debug for NcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{}]{:?}", c.to_string().trim_end_matches(&format!(" [K={}]", self.order)), w)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct NcTerm {
    word: Vec<u16>,
    coeff: HbarSeries,
}

impl Serialize for NcElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<NcTerm> = self
            .terms
            .iter()
            .map(|(w, c)| NcTerm {
                word: w.0.clone(),
                coeff: c.clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

/// Raw term list as read from JSON; checked against `n` and `K` later.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NcTermList(Vec<NcTermRaw>);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NcTermRaw {
    pub word: Vec<u16>,
    pub coeff: Vec<String>,
}

impl NcTermList {
    /// Ingests terms at truncation order `order`; shorter coefficient arrays
    /// are zero-extended, nonzero terms beyond ℏ^{K−1} are rejected.
    pub fn into_element(self, n: usize, order: usize) -> Result<NcElement> {
        let mut terms = Vec::new();
        for t in self.0 {
            let cs = t
                .coeff
                .iter()
                .map(|s| crate::scalar::parse_rational(s))
                .collect::<Result<Vec<_>>>()?;
            terms.push((Word(t.word), HbarSeries::from_coeffs(cs, order)?));
        }
        NcElement::from_terms(n, order, terms)
    }

    pub fn from_element(e: &NcElement) -> Self {
        NcTermList(
            e.terms
                .iter()
                .map(|(w, c)| NcTermRaw {
                    word: w.0.clone(),
                    coeff: c.coeffs().iter().map(format_rational).collect(),
                })
                .collect(),
        )
    }
}

/// A commutative monomial `x^a`, ordered by total degree and then by exponent
/// vector.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CommMonomial {
    pub exps: Vec<u32>,
}

impl CommMonomial {
    pub fn one(n: usize) -> Self {
        CommMonomial { exps: vec![0; n] }
    }

    pub fn var(i: usize, n: usize) -> Self {
        let mut m = Self::one(n);
        m.exps[i] = 1;
        m
    }

    pub fn new(exps: Vec<u32>) -> Self {
        CommMonomial { exps }
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Self) -> Self {
        CommMonomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self − other` if componentwise nonnegative.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(CommMonomial { exps })
    }

    /// Multi-index factorial `a! = Π a_i!`.
    pub fn factorial(&self) -> Rational {
        self.exps
            .iter()
            .fold(Rational::one(), |acc, &e| acc * factorial(e))
    }

    /// The sorted word `x_1^{a_1}⋯x_n^{a_n}`.
    pub fn sorted_word(&self) -> Word {
        let mut v = Vec::with_capacity(self.degree() as usize);
        for (i, &e) in self.exps.iter().enumerate() {
            v.extend(std::iter::repeat_n(i as u16, e as usize));
        }
        Word(v)
    }

    /// All monomials in `n` variables of total degree exactly `d`.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<CommMonomial> {
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<CommMonomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(CommMonomial { exps: cur.clone() });
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
        }
        if n == 0 {
            return if d == 0 { vec![CommMonomial { exps: vec![] }] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(0, d, &mut vec![0; n], &mut out);
        out.sort();
        out
    }

    /// All splittings `self = a + b` (ordered pairs, including trivial ones).
    pub fn splittings(&self) -> Vec<(CommMonomial, CommMonomial)> {
        let mut out = vec![(Vec::new(), Vec::new())];
        for &e in &self.exps {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for (a, b) in &out {
                for x in 0..=e {
                    let mut a2: Vec<u32> = a.clone();
                    let mut b2: Vec<u32> = b.clone();
                    a2.push(x);
                    b2.push(e - x);
                    next.push((a2, b2));
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|(a, b)| (CommMonomial { exps: a }, CommMonomial { exps: b }))
            .collect()
    }
}

impl Ord for CommMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for CommMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CommMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "·")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// A polynomial in `S(V)` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<CommMonomial, Rational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational, n: usize) -> Self {
        Self::monomial(CommMonomial::one(n), c)
    }

    pub fn var(i: usize, n: usize) -> Self {
        Self::monomial(CommMonomial::var(i, n), Rational::one())
    }

    pub fn monomial(m: CommMonomial, c: Rational) -> Self {
        let mut p = Self::zero(m.n());
        p.add_term(m, &c);
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (CommMonomial, Rational)>) -> Result<Self> {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            if m.n() != n {
                return Err(Error::Usage(format!(
                    "exponent vector of length {} in a polynomial on {n} generators",
                    m.n()
                )));
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<CommMonomial, Rational> {
        &self.terms
    }

    pub fn coeff(&self, m: &CommMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(CommMonomial::degree).max()
    }

    pub fn add_term(&mut self, m: CommMonomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
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
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), &(x * y));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), &(x * c));
        }
        out
    }

    /// `∂^α p` for a multi-index α.
    pub fn derivative(&self, alpha: &CommMonomial) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            if let Some(rest) = m.checked_div(alpha) {
                // falling factorial Π a_i!/(a_i−α_i)!
                let f = m.factorial() / rest.factorial();
                out.add_term(rest, &(c * f));
            }
        }
        out
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})·{:?}", format_rational(c), m)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyTerm {
    pub exponents: Vec<u32>,
    #[serde(with = "rational_str")]
    pub coeff: Rational,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<PolyTerm> = self
            .terms
            .iter()
            .map(|(m, c)| PolyTerm {
                exponents: m.exps.clone(),
                coeff: c.clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl Polynomial {
    pub fn from_poly_terms(n: usize, terms: Vec<PolyTerm>) -> Result<Self> {
        Self::from_terms(
            n,
            terms
                .into_iter()
                .map(|t| (CommMonomial::new(t.exponents), t.coeff)),
        )
    }
}

/// Averaged symmetrization `S(V) → T(V)`, with coefficients placed at ℏ⁰.
pub fn sym_embed(p: &Polynomial, order: usize) -> NcElement {
    let mut out = NcElement::zero(p.n(), order);
    for (m, c) in p.terms() {
        let k = m.degree();
        let weight = c / factorial(k);
        // distinct orderings of the multiset, each hit a!/… times overall
        let mult = m.factorial();
        let coeff = HbarSeries::constant(weight * mult, order);
        for w in distinct_permutations(&m.sorted_word().0) {
            out.add_term(Word(w), &coeff);
        }
    }
    out
}

/// Distinct permutations of a sorted multiset, in lexicographic order.
pub fn distinct_permutations(sorted: &[u16]) -> Vec<Vec<u16>> {
    let mut cur = sorted.to_vec();
    let mut out = vec![cur.clone()];
    loop {
        // next lexicographic permutation
        let n = cur.len();
        if n < 2 {
            return out;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// A basis monomial `ξ_{i₁}∧⋯∧ξ_{i_p}` of the exterior algebra with
/// strictly increasing indices.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExtMonomial {
    indices: Vec<u16>,
}

impl ExtMonomial {
    /// Sorts the given indices; returns the sign of the sorting permutation,
    /// or `None` if an index repeats.
    pub fn from_unsorted(ix: &[usize]) -> Option<(ExtMonomial, i32)> {
        let mut v: Vec<u16> = ix.iter().map(|&i| i as u16).collect();
        let mut sign = 1;
        // insertion sort keeps track of transpositions
        for a in 1..v.len() {
            let mut b = a;
            while b > 0 && v[b - 1] > v[b] {
                v.swap(b - 1, b);
                sign = -sign;
                b -= 1;
            }
        }
        if v.windows(2).any(|p| p[0] == p[1]) {
            return None;
        }
        Some((ExtMonomial { indices: v }, sign))
    }

    /// Panics unless `ix` is strictly increasing.
    pub fn new(ix: &[usize]) -> Self {
        let (m, s) = Self::from_unsorted(ix).expect("repeated exterior index");
        assert_eq!(s, 1, "exterior indices must be strictly increasing");
        m
    }

    pub fn one() -> Self {
        ExtMonomial { indices: vec![] }
    }

    pub fn indices(&self) -> &[u16] {
        &self.indices
    }

    pub fn degree(&self) -> usize {
        self.indices.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&(i as u16)).is_ok()
    }

    /// As a 0/1 exponent vector on `n` generators.
    pub fn to_exponents(&self, n: usize) -> Vec<u32> {
        let mut e = vec![0; n];
        for &i in &self.indices {
            e[i as usize] = 1;
        }
        e
    }

    /// All subsets of `{0..n}` of size `p`, lexicographic.
    pub fn all_of_degree(n: usize, p: usize) -> Vec<ExtMonomial> {
        fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<ExtMonomial>) {
            if left == 0 {
                out.push(ExtMonomial { indices: cur.clone() });
                return;
            }
            for i in start..n {
                cur.push(i as u16);
                rec(i + 1, n, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, n, p, &mut Vec::new(), &mut out);
        out
    }

    /// Removes index `i`, returning the position it occupied.
    pub fn remove(&self, i: usize) -> Option<(usize, ExtMonomial)> {
        let pos = self.indices.binary_search(&(i as u16)).ok()?;
        let mut v = self.indices.clone();
        v.remove(pos);
        Some((pos, ExtMonomial { indices: v }))
    }
}

impl Ord for ExtMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices
            .len()
            .cmp(&other.indices.len())
            .then_with(|| self.indices.cmp(&other.indices))
    }
}

impl PartialOrd for ExtMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExtMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.indices.is_empty() {
            return write!(f, "1");
        }
        write!(f, "ξ")?;
        for i in &self.indices {
            write!(f, "{}", i + 1)?;
        }
        Ok(())
    }
}

/// `a ∧ b`: `None` when the index sets meet, otherwise the merged monomial and
/// the sign of the merge permutation.
pub fn wedge(a: &ExtMonomial, b: &ExtMonomial) -> Option<(ExtMonomial, i32)> {
    let mut sign = 1;
    let mut merged = Vec::with_capacity(a.degree() + b.degree());
    let (mut i, mut j) = (0, 0);
    let (x, y) = (&a.indices, &b.indices);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i] < y[j]) {
            merged.push(x[i]);
            i += 1;
        } else if i == x.len() || y[j] < x[i] {
            // y[j] jumps over the remaining x's
            if (x.len() - i) % 2 == 1 {
                sign = -sign;
            }
            merged.push(y[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((ExtMonomial { indices: merged }, sign))
}

/// Signed wedge of two coefficient-carrying monomials.
pub fn wedge_signed(
    a: &ExtMonomial,
    ca: &Rational,
    b: &ExtMonomial,
    cb: &Rational,
) -> Option<(ExtMonomial, Rational)> {
    let (m, s) = wedge(a, b)?;
    let c = ca * cb;
    Some((m, if s < 0 { -c } else { c }))
}
