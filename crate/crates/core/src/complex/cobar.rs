//! Cobar and bar complexes, cobar-algebra elements and derivations.

use std::collections::BTreeMap;

use num_traits::One;

use super::coalgebra::{AlgebraData, CoalgebraData};
use super::GradedComplex;
use crate::linalg::{SparseMatrix, SparseVec};
use crate::scalar::{HbarSeries, Rational};
use crate::{Error, Result};

/// A word in coalgebra letters (indices into [`CoalgebraData::letters`]).
pub type CobarWord = Vec<u32>;

/// An element of the cobar algebra `T(C[-1])⊗ℚ[ℏ]/ℏ^K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobarElement {
    order: usize,
    terms: BTreeMap<CobarWord, HbarSeries>,
}

impl CobarElement {
    pub fn zero(order: usize) -> Self {
        CobarElement {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn word(w: CobarWord, c: HbarSeries) -> Self {
        let mut e = Self::zero(c.order());
        e.add_term(w, &c);
        e
    }

    pub fn letter(q: u32, order: usize) -> Self {
        Self::word(vec![q], HbarSeries::one(order))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<CobarWord, HbarSeries> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: CobarWord, c: &HbarSeries) {
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.order);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &x.scale(c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Concatenation product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.order);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, &(a * b));
            }
        }
        out
    }

    pub fn valuation(&self) -> usize {
        self.terms
            .values()
            .map(HbarSeries::valuation)
            .min()
            .unwrap_or(self.order)
    }

    /// Rewrites letters through `map`, dropping every word containing a
    /// letter mapped to `None`.
    pub fn map_letters(&self, mut map: impl FnMut(u32) -> Option<u32>) -> Self {
        let mut out = Self::zero(self.order);
        'words: for (w, c) in &self.terms {
            let mut v = Vec::with_capacity(w.len());
            for &q in w {
                match map(q) {
                    Some(r) => v.push(r),
                    None => continue 'words,
                }
            }
            out.add_term(v, c);
        }
        out
    }
}

/// Cobar degree `Σ (1 − |q|)` of a word.
pub fn word_degree(c: &CoalgebraData, w: &[u32]) -> i64 {
    w.iter().map(|&q| c.letter(q).cobar_degree()).sum()
}

pub fn word_weight(c: &CoalgebraData, w: &[u32]) -> usize {
    w.iter().map(|&q| c.letter(q).weight).sum()
}

/// A derivation of the cobar algebra, determined by its values on letters.
/// Letters without an entry in `images` are not in the domain; applying
/// the derivation to them is an error rather than silently zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobarDerivation {
    pub degree: i64,
    pub order: usize,
    pub images: BTreeMap<u32, CobarElement>,
}

impl CobarDerivation {
    pub fn new(degree: i64, order: usize) -> Self {
        CobarDerivation {
            degree,
            order,
            images: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, q: u32, image: CobarElement) {
        self.images.insert(q, image);
    }

    pub fn image(&self, q: u32) -> Result<&CobarElement> {
        self.images
            .get(&q)
            .ok_or_else(|| Error::Precondition(format!("derivation undefined on letter {q}")))
    }

    /// `D(q₁⋯q_k) = Σ_i (−1)^{|D|·Σ_{j<i}|q_j|} q₁⋯D(q_i)⋯q_k`.
    pub fn apply_word(&self, c: &CoalgebraData, w: &[u32]) -> Result<CobarElement> {
        let mut out = CobarElement::zero(self.order);
        let mut before = 0i64;
        for (i, &q) in w.iter().enumerate() {
            let img = self.image(q)?;
            let negative = (self.degree * before).rem_euclid(2) == 1;
            for (mid, coef) in img.terms() {
                let mut nw = Vec::with_capacity(w.len() + mid.len());
                nw.extend_from_slice(&w[..i]);
                nw.extend_from_slice(mid);
                nw.extend_from_slice(&w[i + 1..]);
                if negative {
                    out.add_term(nw, &-coef);
                } else {
                    out.add_term(nw, coef);
                }
            }
            before += c.letter(q).cobar_degree();
        }
        Ok(out)
    }

    pub fn apply(&self, c: &CoalgebraData, e: &CobarElement) -> Result<CobarElement> {
        let mut out = CobarElement::zero(self.order);
        for (w, coef) in e.terms() {
            let img = self.apply_word(c, w)?;
            for (v, x) in img.terms() {
                out.add_term(v.clone(), &(x * coef));
            }
        }
        Ok(out)
    }

    /// `[D₁, D₂] = D₁D₂ − (−1)^{|D₁||D₂|} D₂D₁` on the given letters.
    pub fn commutator(&self, other: &Self, c: &CoalgebraData, letters: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut out = CobarDerivation::new(self.degree + other.degree, self.order);
        let odd = (self.degree * other.degree).rem_euclid(2) == 1;
        for q in letters {
            let gen = CobarElement::letter(q, self.order);
            let a = self.apply(c, &other.apply(c, &gen)?)?;
            let b = other.apply(c, &self.apply(c, &gen)?)?;
            out.set(q, if odd { a.add(&b) } else { a.sub(&b) });
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (q, img) in &other.images {
            let cur = out.images.remove(q).unwrap_or_else(|| CobarElement::zero(self.order));
            out.images.insert(*q, cur.add(img));
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        CobarDerivation {
            degree: self.degree,
            order: self.order,
            images: self.images.iter().map(|(q, e)| (*q, e.scale(s))).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.images.values().all(CobarElement::is_zero)
    }

    /// Images on letters, minus those of `other`, restricted to common letters.
    pub fn difference_on(&self, other: &Self, letters: &[u32]) -> Result<BTreeMap<u32, CobarElement>> {
        let mut out = BTreeMap::new();
        for &q in letters {
            let d = self.image(q)?.sub(other.image(q)?);
            if !d.is_zero() {
                out.insert(q, d);
            }
        }
        Ok(out)
    }
}

/// The cobar differential as a degree-one derivation:
/// `d(q) = ε Σ (−1)^{|a|} c·a⊗b` over `Δ(q) = Σ c·a⊗b`, with ε the
/// coalgebra's [`CoalgebraData::cobar_sign`].
pub fn cobar_differential(c: &CoalgebraData, order: usize) -> CobarDerivation {
    let mut d = CobarDerivation::new(1, order);
    let eps = c.cobar_sign();
    for q in 0..c.len() as u32 {
        let mut img = CobarElement::zero(order);
        for (a, b, coef) in &c.coproduct[q as usize] {
            let s = eps * if c.letter(*a).internal_degree.rem_euclid(2) == 1 { -1 } else { 1 };
            let v = if s < 0 { -coef.clone() } else { coef.clone() };
            img.add_term(vec![*a, *b], &HbarSeries::constant(v, order));
        }
        d.set(q, img);
    }
    d
}

/// The cobar complex with its word bases kept alongside.
#[derive(Clone, Debug)]
pub struct CobarComplex {
    pub coalgebra: CoalgebraData,
    pub weight_bound: usize,
    /// Words of each `(degree, weight)` cell, sorted.
    pub words: BTreeMap<(i64, usize), Vec<CobarWord>>,
    pub complex: GradedComplex,
    pub differential: CobarDerivation,
}

impl CobarComplex {
    pub fn position(&self, cell: (i64, usize), w: &[u32]) -> Option<usize> {
        self.words.get(&cell)?.binary_search_by(|v| v.as_slice().cmp(w)).ok()
    }
}

/// All words of total weight `≤ weight_bound` in letters of weight `≥ 1`.
fn enumerate_words(c: &CoalgebraData, weight_bound: usize) -> BTreeMap<(i64, usize), Vec<CobarWord>> {
    let mut cells: BTreeMap<(i64, usize), Vec<CobarWord>> = BTreeMap::new();
    cells.entry((0, 0)).or_default().push(Vec::new());
    let mut frontier: Vec<(CobarWord, i64, usize)> = vec![(Vec::new(), 0, 0)];
    while let Some((w, deg, wt)) = frontier.pop() {
        for (q, l) in c.letters.iter().enumerate() {
            if wt + l.weight > weight_bound {
                continue;
            }
            let mut v = w.clone();
            v.push(q as u32);
            let key = (deg + l.cobar_degree(), wt + l.weight);
            cells.entry(key).or_default().push(v.clone());
            frontier.push((v, key.0, key.1));
        }
    }
    for ws in cells.values_mut() {
        ws.sort();
    }
    cells
}

/// `CoBar(C)` restricted to weight `≤ weight_bound`.
pub fn cobar_complex(c: &CoalgebraData, weight_bound: usize) -> Result<CobarComplex> {
    c.check_coassociative()?;
    if c.letters.iter().any(|l| l.weight == 0) {
        return Err(Error::Usage(
            "cobar complex needs letters of positive weight; use a reduced coalgebra".into(),
        ));
    }
    if weight_bound > c.weight_bound && c.kind != super::coalgebra::CoalgebraKind::ReducedExt {
        return Err(Error::Usage(format!(
            "weight bound {weight_bound} exceeds the coalgebra basis bound {}",
            c.weight_bound
        )));
    }
    let words = enumerate_words(c, weight_bound);
    let d = cobar_differential(c, 1);
    let mut diffs = BTreeMap::new();
    for (&(deg, wt), src) in &words {
        let target_key = (deg + 1, wt);
        let Some(tgt) = words.get(&target_key) else { continue };
        let index: BTreeMap<&[u32], usize> = tgt.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
        let mut cols = Vec::with_capacity(src.len());
        for w in src {
            let img = d.apply_word(c, w)?;
            let col = SparseVec::from_entries(img.terms().iter().map(|(v, x)| {
                let i = *index
                    .get(v.as_slice())
                    .expect("cobar differential preserves weight and raises degree");
                (i, x.coeff(0).clone())
            }));
            cols.push(col);
        }
        diffs.insert((deg, wt), SparseMatrix { nrows: tgt.len(), columns: cols });
    }
    let labels = words
        .iter()
        .map(|(k, ws)| (*k, ws.iter().map(|w| word_label(c, w)).collect()))
        .collect();
    let complex = GradedComplex::new(labels, diffs)?;
    Ok(CobarComplex {
        coalgebra: c.clone(),
        weight_bound,
        words,
        complex,
        differential: d,
    })
}

pub fn word_label(c: &CoalgebraData, w: &[u32]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|&q| format!("{:?}", c.letter(q).label))
        .collect::<Vec<_>>()
        .join("⊗")
}

/// Bar complex `… → A⊗A → A` with `d(a₁⊗⋯⊗a_k) = Σ_i (−1)^{i−1} a₁⊗⋯⊗a_i a_{i+1}⊗⋯⊗a_k`.
/// The `k`-fold words sit in degree `1 − k`. If the algebra has elements
/// of weight zero the word length must be capped with `max_len`.
pub fn bar_complex(a: &AlgebraData, weight_bound: usize, max_len: Option<usize>) -> Result<GradedComplex> {
    a.check_associative()?;
    if weight_bound > a.weight_bound {
        return Err(Error::Usage(format!(
            "weight bound {weight_bound} exceeds the multiplication table bound {}",
            a.weight_bound
        )));
    }
    if max_len.is_none() && a.weights.contains(&0) {
        return Err(Error::Usage("bar complex of an algebra with weight-zero elements needs a length cap".into()));
    }
    let cap = max_len.unwrap_or(usize::MAX);
    let mut cells: BTreeMap<(i64, usize), Vec<Vec<usize>>> = BTreeMap::new();
    let mut frontier: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((w, wt)) = frontier.pop() {
        if w.len() == cap {
            continue;
        }
        for e in 0..a.len() {
            if wt + a.weights[e] > weight_bound {
                continue;
            }
            let mut v = w.clone();
            v.push(e);
            let nw = wt + a.weights[e];
            cells.entry((1 - v.len() as i64, nw)).or_default().push(v.clone());
            frontier.push((v, nw));
        }
    }
    for ws in cells.values_mut() {
        ws.sort();
    }
    let mut diffs = BTreeMap::new();
    for (&(deg, wt), src) in &cells {
        let Some(tgt) = cells.get(&(deg + 1, wt)) else { continue };
        let index: BTreeMap<&[usize], usize> = tgt.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
        let cols = src
            .iter()
            .map(|w| {
                let mut entries = Vec::new();
                for i in 0..w.len() - 1 {
                    let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
                    for (e, c) in a.product(w[i], w[i + 1]) {
                        let mut v = w[..i].to_vec();
                        v.push(*e);
                        v.extend_from_slice(&w[i + 2..]);
                        entries.push((index[v.as_slice()], &sign * c));
                    }
                }
                SparseVec::from_entries(entries)
            })
            .collect();
        diffs.insert((deg, wt), SparseMatrix { nrows: tgt.len(), columns: cols });
    }
    let labels = cells
        .iter()
        .map(|(k, ws)| {
            (
                *k,
                ws.iter()
                    .map(|w| w.iter().map(|&e| a.names[e].clone()).collect::<Vec<_>>().join("⊗"))
                    .collect(),
            )
        })
        .collect();
    GradedComplex::new(labels, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::coalgebra::LetterLabel;
    use crate::tensor::ExtMonomial;

    #[test]
    fn cobar_example_two_generators() {
        let c = CoalgebraData::reduced_ext(2);
        let d = cobar_differential(&c, 1);
        let xi = |ix: &[usize]| c.index_of(&LetterLabel::Ext(ExtMonomial::new(ix))).unwrap();
        let img = d.image(xi(&[0, 1])).unwrap();
        let mut want = CobarElement::zero(1);
        want.add_term(vec![xi(&[0]), xi(&[1])], &HbarSeries::one(1));
        want.add_term(vec![xi(&[1]), xi(&[0])], &-&HbarSeries::one(1));
        assert_eq!(img, &want);
        assert!(d.image(xi(&[0])).unwrap().is_zero());
    }

    #[test]
    fn cobar_d_squared_vanishes() {
        for c in [CoalgebraData::reduced_ext(3), CoalgebraData::reduced_sym(2, 4)] {
            // GradedComplex::new checks d∘d = 0
            cobar_complex(&c, 4).unwrap();
        }
    }

    #[test]
    fn trivial_algebra_has_zero_differential() {
        let a = AlgebraData::new(vec!["x".into()], vec![1], 4, BTreeMap::new()).unwrap();
        let cx = bar_complex(&a, 4, None).unwrap();
        assert!(cx.differentials().values().all(SparseMatrix::is_zero));
    }
}
