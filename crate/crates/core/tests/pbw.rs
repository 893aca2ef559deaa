use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use pbwforge::complex::coalgebra::CoalgebraData;
use pbwforge::linalg::RankProfile;
use pbwforge::pbw::confluence::{quotient_profiles, span_length};
use pbwforge::pbw::solve::default_degree_bound;
use pbwforge::pbw::*;
use pbwforge::polyvector::{jacobi_defect, lift_lie, Polyvector, StructureConstants};
use pbwforge::scalar::{rat, HbarSeries, Rational};
use pbwforge::tensor::{CommMonomial, NcElement, Polynomial, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sl2() -> StructureConstants {
    let mut c = StructureConstants::zero(3);
    c.set(0, 1, 0, rat(-2)).unwrap();
    c.set(0, 2, 1, rat(1)).unwrap();
    c.set(1, 2, 2, rat(-2)).unwrap();
    c
}

fn heis3() -> StructureConstants {
    let mut c = StructureConstants::zero(3);
    c.set(0, 1, 2, rat(1)).unwrap();
    c
}

fn nonjacobi3() -> StructureConstants {
    let mut c = heis3();
    c.set(0, 2, 0, rat(1)).unwrap();
    c
}

fn lie_relations(c: &StructureConstants, order: usize) -> RelationSet {
    let coalg = CoalgebraData::reduced_ext(c.n());
    let dh = cobar_deform(&ce_differential(c, 3), &coalg, order).unwrap();
    relations_from_deformation(&coalg, &dh).unwrap()
}

/// Structure constants read off directly, without the cobar route.
fn linear_relations(c: &StructureConstants, order: usize) -> RelationSet {
    let n = c.n();
    let mut rel = RelationSet::zero(n, order);
    for j in 0..n {
        for i in 0..j {
            let mut r = NcElement::zero(n, order);
            for (k, v) in c.bracket(i, j) {
                r.add_term(Word::letter(k), &HbarSeries::monomial(1, v, order));
            }
            rel.set(i, j, r).unwrap();
        }
    }
    rel
}

fn word(ix: &[usize], n: usize, k: usize) -> NcElement {
    NcElement::from_word(Word::from_indices(ix), HbarSeries::one(k), n)
}

/// Recursive two-way reduction on plain coefficient vectors, memoized per word.
struct Naive {
    k: usize,
    rel: HashMap<(u16, u16), Vec<(Vec<u16>, Vec<Rational>)>>,
    memo: HashMap<Vec<u16>, BTreeMap<Vec<u16>, Vec<Rational>>>,
}

type Lin = BTreeMap<Vec<u16>, Vec<Rational>>;

fn lin_add(acc: &mut Lin, other: &Lin, scale: &[Rational], k: usize) {
    for (w, c) in other {
        let slot = acc.entry(w.clone()).or_insert_with(|| vec![Rational::zero(); k]);
        for (a, x) in scale.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in c.iter().enumerate() {
                if a + b < k {
                    slot[a + b] += x * y;
                }
            }
        }
    }
    acc.retain(|_, c| c.iter().any(|x| !x.is_zero()));
}

impl Naive {
    fn new(rel: &RelationSet) -> Self {
        let mut map = HashMap::new();
        for (&(i, j), r) in rel.iter() {
            map.insert(
                (i as u16, j as u16),
                r.terms().iter().map(|(w, c)| (w.0.clone(), c.coeffs().to_vec())).collect(),
            );
        }
        Naive {
            k: rel.order(),
            rel: map,
            memo: HashMap::new(),
        }
    }

    fn unit(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.k];
        v[0] = Rational::one();
        v
    }

    fn nf(&mut self, w: &[u16]) -> Lin {
        if let Some(r) = self.memo.get(w) {
            return r.clone();
        }
        let out = match (0..w.len().saturating_sub(1)).find(|&p| w[p] > w[p + 1]) {
            None => BTreeMap::from([(w.to_vec(), self.unit())]),
            Some(p) => {
                let mut swapped = w.to_vec();
                swapped.swap(p, p + 1);
                let mut acc = self.nf(&swapped);
                let tails = self.rel.get(&(w[p + 1], w[p])).cloned().unwrap_or_default();
                for (rw, rc) in tails {
                    let mut nw = w[..p].to_vec();
                    nw.extend(&rw);
                    nw.extend(&w[p + 2..]);
                    let sub = self.nf(&nw);
                    let neg: Vec<Rational> = rc.iter().map(|x| -x).collect();
                    lin_add(&mut acc, &sub, &neg, self.k);
                }
                acc
            }
        };
        self.memo.insert(w.to_vec(), out.clone());
        out
    }

    fn nf_of(&mut self, e: &Lin) -> Lin {
        let mut acc = Lin::new();
        for (w, c) in e {
            let sub = self.nf(w);
            lin_add(&mut acc, &sub, c, self.k);
        }
        acc
    }

    /// `(x_j x_k − R_jk) x_i` against `x_k (x_i x_j − R_ij)`.
    fn defect(&mut self, k: u16, j: u16, i: u16) -> Lin {
        let mut left: Lin = BTreeMap::from([(vec![j, k, i], self.unit())]);
        let mut right: Lin = BTreeMap::from([(vec![k, i, j], self.unit())]);
        let minus_one = {
            let mut v = vec![Rational::zero(); self.k];
            v[0] = -Rational::one();
            v
        };
        for (rw, rc) in self.rel.get(&(j, k)).cloned().unwrap_or_default() {
            let mut w = rw.clone();
            w.push(i);
            lin_add(&mut left, &BTreeMap::from([(w, rc)]), &minus_one, self.k);
        }
        for (rw, rc) in self.rel.get(&(i, j)).cloned().unwrap_or_default() {
            let mut w = vec![k];
            w.extend(rw);
            lin_add(&mut right, &BTreeMap::from([(w, rc)]), &minus_one, self.k);
        }
        let mut a = self.nf_of(&left);
        let b = self.nf_of(&right);
        lin_add(&mut a, &b, &minus_one, self.k);
        a
    }
}

fn as_lin(e: &NcElement) -> Lin {
    e.terms().iter().map(|(w, c)| (w.0.clone(), c.coeffs().to_vec())).collect()
}

#[test]
fn sl2_normal_forms() {
    let rs = RewriteSystem::new(lie_relations(&sl2(), 3));
    let nf = normal_form(&word(&[1, 0], 3, 3), &rs).unwrap();
    let mut want = word(&[0, 1], 3, 3);
    want.add_term(Word::letter(0), &HbarSeries::monomial(1, rat(2), 3));
    assert_eq!(nf, want);
    let nf = normal_form(&word(&[2, 0], 3, 3), &rs).unwrap();
    let mut want = word(&[0, 2], 3, 3);
    want.add_term(Word::letter(1), &HbarSeries::monomial(1, rat(-1), 3));
    assert_eq!(nf, want);
}

#[test]
fn cobar_route_agrees_with_structure_constants_and_symmetrization() {
    for c in [sl2(), heis3(), StructureConstants::zero(3)] {
        let a = lie_relations(&c, 4);
        assert_eq!(a, linear_relations(&c, 4));
        assert_eq!(a, first_order_relations(&lift_lie(&c), 4).unwrap());
    }
    let sl = lie_relations(&sl2(), 2);
    for (i, j, k, v) in [(0, 1, 0, -2), (0, 2, 1, 1), (1, 2, 2, -2)] {
        let want = NcElement::from_word(Word::letter(k), HbarSeries::monomial(1, rat(v), 2), 3);
        assert_eq!(sl.get(i, j), want);
    }
}

#[test]
fn top_chains() {
    let top = pbwforge::tensor::ExtMonomial::new(&[0, 1, 2]);
    // sl₂ is unimodular: the two surviving terms ∓2ξ₁∧ξ₃ cancel
    let ce = ce_differential(&sl2(), 3);
    assert!(ce.image(&top).unwrap().is_empty());
    assert!(ce.check_square_zero().is_ok());
    // [x₁,x₂] = x₂, [x₁,x₃] = x₃ is not
    let mut c = StructureConstants::zero(3);
    c.set(0, 1, 1, rat(1)).unwrap();
    c.set(0, 2, 2, rat(1)).unwrap();
    let ce = ce_differential(&c, 3);
    let img = ce.image(&top).unwrap();
    assert_eq!(img.len(), 1);
    assert_eq!(img[&pbwforge::tensor::ExtMonomial::new(&[1, 2])], rat(2));
    assert!(ce.apply(img).is_empty());
}

#[test]
fn defects_match_naive_two_way_reduction() {
    for c in [sl2(), heis3(), nonjacobi3()] {
        for k in 2..=4 {
            let rel = linear_relations(&c, k);
            let got = confluence_defects(&RewriteSystem::new(rel.clone())).unwrap();
            let mut naive = Naive::new(&rel);
            for d in got {
                let (a, b, cc) = d.triple;
                assert_eq!(as_lin(&d.defect), naive.defect(a as u16, b as u16, cc as u16));
            }
        }
    }
}

#[test]
fn non_jacobi_defect_has_valuation_two() {
    let rel = linear_relations(&nonjacobi3(), 3);
    let d = confluence_defects(&RewriteSystem::new(rel)).unwrap();
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].triple, (2, 1, 0));
    let want = NcElement::from_word(Word::letter(2), HbarSeries::monomial(2, rat(1), 3), 3);
    assert_eq!(d[0].defect, want);
    // truncating at ℏ² hides the defect
    let rel2 = linear_relations(&nonjacobi3(), 2);
    assert!(pbw_check(&rel2, 3).unwrap().confluent);
}

/// Independent ideal-span Hilbert oracle on dense keys, following the
/// elementary-divisor bookkeeping directly.
fn brute_force_profiles(rel: &RelationSet, d: usize, len: usize) -> Vec<Vec<usize>> {
    let (n, k) = (rel.generator_count(), rel.order());
    type Key = (std::cmp::Reverse<usize>, Vec<u16>, usize);
    let key = |w: &[u16], m: usize| -> Key { (std::cmp::Reverse(w.len()), w.to_vec(), m) };
    let words = |l: usize| -> Vec<Vec<u16>> {
        let mut out = vec![vec![]];
        for _ in 0..l {
            out = out
                .into_iter()
                .flat_map(|w: Vec<u16>| (0..n as u16).map(move |x| [w.clone(), vec![x]].concat()))
                .collect();
        }
        out
    };
    let mut pivots: BTreeMap<Key, BTreeMap<Key, Rational>> = BTreeMap::new();
    let mut add = |mut v: BTreeMap<Key, Rational>| {
        v.retain(|_, c| !c.is_zero());
        while let Some((lead, x)) = v.iter().next().map(|(a, b)| (a.clone(), b.clone())) {
            match pivots.get(&lead) {
                Some(p) => {
                    let f = x / &p[&lead];
                    for (kk, c) in p {
                        let e = v.entry(kk.clone()).or_insert_with(Rational::zero);
                        *e -= &f * c;
                    }
                    v.retain(|_, c| !c.is_zero());
                }
                None => {
                    pivots.insert(lead, v);
                    return;
                }
            }
        }
    };
    for j in 0..n {
        for i in 0..j {
            let mut g: Vec<(Vec<u16>, usize, Rational)> = vec![(vec![j as u16, i as u16], 0, rat(1)), (vec![i as u16, j as u16], 0, rat(-1))];
            for (w, c) in rel.get(i, j).terms() {
                for (m, x) in c.coeffs().iter().enumerate() {
                    if !x.is_zero() {
                        g.push((w.0.clone(), m, x.clone()));
                    }
                }
            }
            let glen = g.iter().map(|t| t.0.len()).max().unwrap();
            for lu in 0..=len - glen {
                for lv in 0..=len - glen - lu {
                    for u in words(lu) {
                        for v in words(lv) {
                            for s in 0..k {
                                let mut vec = BTreeMap::new();
                                for (w, m, x) in &g {
                                    if m + s < k {
                                        let full = [u.clone(), w.clone(), v.clone()].concat();
                                        *vec.entry(key(&full, m + s)).or_insert_with(Rational::zero) += x;
                                    }
                                }
                                add(vec);
                            }
                        }
                    }
                }
            }
        }
    }
    let rank_of = |rows: Vec<BTreeMap<Key, Rational>>| -> usize {
        let mut piv: BTreeMap<Key, BTreeMap<Key, Rational>> = BTreeMap::new();
        let mut r = 0;
        for mut v in rows {
            v.retain(|_, c| !c.is_zero());
            while let Some((lead, x)) = v.iter().next().map(|(a, b)| (a.clone(), b.clone())) {
                match piv.get(&lead) {
                    Some(p) => {
                        let f = x / &p[&lead];
                        for (kk, c) in p {
                            *v.entry(kk.clone()).or_insert_with(Rational::zero) -= &f * c;
                        }
                        v.retain(|_, c| !c.is_zero());
                    }
                    None => {
                        piv.insert(lead, v);
                        r += 1;
                        break;
                    }
                }
            }
        }
        r
    };
    let mut cum = Vec::new();
    for w in 0..=d {
        let nw: Vec<&BTreeMap<Key, Rational>> = pivots.iter().filter(|(l, _)| l.0 .0 <= w).map(|(_, v)| v).collect();
        let tw: usize = (0..=w).map(|l| n.pow(l as u32)).sum();
        let dims: Vec<usize> = (0..=k)
            .map(|j| {
                let proj = nw.iter().map(|v| v.iter().filter(|(kk, _)| kk.2 < j).map(|(a, b)| (a.clone(), b.clone())).collect()).collect();
                (k - j) * tw + rank_of(proj) - nw.len()
            })
            .collect();
        cum.push(RankProfile::from_dims(&dims).blocks);
    }
    (0..=d)
        .map(|w| {
            if w == 0 {
                cum[0].clone()
            } else {
                cum[w].iter().zip(&cum[w - 1]).map(|(a, b)| a - b).collect()
            }
        })
        .collect()
}

#[test]
fn non_jacobi_quotient_shrinks() {
    let rel = linear_relations(&nonjacobi3(), 3);
    let report = pbw_check(&rel, 3).unwrap();
    assert!(!report.confluent);
    assert_eq!(report.flags, vec!["exact".to_string()]);
    assert_eq!(report.bounds.span_length, Some(5));
    let got: Vec<Vec<usize>> = report.hilbert.iter().map(|h| h.rank_profile.blocks.clone()).collect();
    let golden = vec![vec![0, 0, 1], vec![0, 1, 2], vec![0, 3, 3], vec![0, 6, 4]];
    assert_eq!(got, golden);
    assert_eq!(brute_force_profiles(&rel, 3, 5), golden);
    assert!(report.hilbert[3].rank_profile.free_rank() < 10);
}

#[test]
fn padding_stabilizes_for_linear_relations() {
    let rel = linear_relations(&nonjacobi3(), 3);
    let (len, exact) = span_length(&rel, 2);
    assert!(exact);
    let a = quotient_profiles(&rel, 2, len).unwrap();
    let b = quotient_profiles(&rel, 2, len + 1).unwrap();
    assert_eq!(a, b);
}

#[test]
fn lie_algebras_are_pbw() {
    for c in [sl2(), heis3()] {
        let report = pbw_check(&lie_relations(&c, 4), 6).unwrap();
        assert!(report.confluent);
        let dims: Vec<usize> = report.hilbert.iter().map(|h| h.rank_profile.free_rank()).collect();
        assert_eq!(dims, vec![1, 3, 6, 10, 15, 21, 28]);
        assert!(report.hilbert.iter().all(|h| h.rank_profile.is_free()));
    }
}

#[test]
fn confluent_count_matches_span_computation() {
    for c in [sl2(), heis3()] {
        let rel = linear_relations(&c, 2);
        let (len, _) = span_length(&rel, 3);
        let p = quotient_profiles(&rel, 3, len).unwrap();
        let dims: Vec<usize> = p.iter().map(RankProfile::free_rank).collect();
        assert_eq!(dims, vec![1, 3, 6, 10]);
    }
}

#[test]
fn two_generators_have_no_overlaps() {
    let alpha = Polyvector::bivector(2, [((0, 1), Polynomial::var(0, 2).mul(&Polynomial::var(1, 2)))]).unwrap();
    let rel = first_order_relations(&alpha, 3).unwrap();
    let half = HbarSeries::monomial(1, pbwforge::scalar::ratio(1, 2), 3);
    let mut want = NcElement::zero(2, 3);
    want.add_term(Word::from_indices(&[0, 1]), &half);
    want.add_term(Word::from_indices(&[1, 0]), &half);
    assert_eq!(rel.get(0, 1), want);
    let report = pbw_check(&rel, 5).unwrap();
    assert!(report.confluent && report.defects.is_empty());
    assert!(solve_corrections(&alpha, 3, None).unwrap().is_solved());
}

fn random_constants(rng: &mut ChaCha8Rng) -> StructureConstants {
    let mut c = StructureConstants::zero(3);
    let nnz = rng.gen_range(0..=3);
    for _ in 0..nnz {
        let (i, j) = [(0, 1), (0, 2), (1, 2)][rng.gen_range(0..3)];
        c.set(i, j, rng.gen_range(0..3), rat(rng.gen_range(-2..=2))).unwrap();
    }
    c
}

#[test]
fn confluence_iff_jacobi() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut lie, mut non) = (0, 0);
    for _ in 0..150 {
        let c = random_constants(&mut rng);
        let jacobi = jacobi_defect(&c).is_empty();
        let confluent = pbw_check(&linear_relations(&c, 3), 2).unwrap().confluent;
        assert_eq!(jacobi, confluent, "{c:?}");
        if jacobi {
            lie += 1
        } else {
            non += 1
        }
    }
    assert!(lie > 10 && non > 10, "{lie} {non}");
}

fn random_element(rng: &mut ChaCha8Rng, n: usize, k: usize, max_len: usize) -> NcElement {
    let mut e = NcElement::zero(n, k);
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(0..=max_len);
        let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
        let coeffs: Vec<Rational> = (0..k).map(|_| rat(rng.gen_range(-2..=2))).collect();
        e.add_term(Word::from_indices(&w), &HbarSeries::from_coeffs(coeffs, k).unwrap());
    }
    e
}

#[test]
fn quotient_product_is_well_defined_for_sl2() {
    let rs = RewriteSystem::new(lie_relations(&sl2(), 4));
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..40 {
        let a = random_element(&mut rng, 3, 4, 3);
        let b = random_element(&mut rng, 3, 4, 3);
        let na = normal_form(&a, &rs).unwrap();
        let nb = normal_form(&b, &rs).unwrap();
        assert_eq!(normal_form(&na, &rs).unwrap(), na);
        let lhs = normal_form(&a.checked_mul(&b).unwrap(), &rs).unwrap();
        let rhs = normal_form(&na.checked_mul(&nb).unwrap(), &rs).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn witnesses_replay() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let rs = RewriteSystem::new(linear_relations(&nonjacobi3(), 3));
    for _ in 0..30 {
        let e = random_element(&mut rng, 3, 3, 4);
        let (nf, steps) = rs.normal_form_with_witness(&e).unwrap();
        assert_eq!(rs.replay(&e, &steps).unwrap(), nf);
        assert!(nf.terms().keys().all(Word::is_sorted));
    }
}

/// Rewriting in `U(sl₂)` with the brackets themselves, no ℏ.
fn enveloping_nf(w: &[u16], c: &StructureConstants, memo: &mut HashMap<Vec<u16>, BTreeMap<Vec<u16>, Rational>>) -> BTreeMap<Vec<u16>, Rational> {
    if let Some(r) = memo.get(w) {
        return r.clone();
    }
    let out = match (0..w.len().saturating_sub(1)).find(|&p| w[p] > w[p + 1]) {
        None => BTreeMap::from([(w.to_vec(), rat(1))]),
        Some(p) => {
            let mut s = w.to_vec();
            s.swap(p, p + 1);
            let mut acc = enveloping_nf(&s, c, memo);
            // x_b x_a = x_a x_b − [x_a, x_b]
            for (k, v) in c.bracket(w[p + 1] as usize, w[p] as usize) {
                let mut nw = w[..p].to_vec();
                nw.push(k as u16);
                nw.extend(&w[p + 2..]);
                for (t, x) in enveloping_nf(&nw, c, memo) {
                    *acc.entry(t).or_insert_with(Rational::zero) -= &v * x;
                }
            }
            acc.retain(|_, x| !x.is_zero());
            acc
        }
    };
    memo.insert(w.to_vec(), out.clone());
    out
}

#[test]
fn specialization_at_hbar_one_is_the_enveloping_algebra() {
    let c = sl2();
    let order = 7;
    let rs = RewriteSystem::new(lie_relations(&c, order));
    let basis: Vec<CommMonomial> = (0..=3).flat_map(|d| CommMonomial::all_of_degree(3, d)).collect();
    let mut memo = HashMap::new();
    for a in &basis {
        for b in &basis {
            let prod = word(&a.sorted_word().0.iter().map(|&x| x as usize).collect::<Vec<_>>(), 3, order)
                .checked_mul(&word(&b.sorted_word().0.iter().map(|&x| x as usize).collect::<Vec<_>>(), 3, order))
                .unwrap();
            let nf = normal_form(&prod, &rs).unwrap();
            assert!(nf.valuation() == 0);
            let at_one: BTreeMap<Vec<u16>, Rational> = nf.at_hbar_one().into_iter().map(|(w, x)| (w.0, x)).collect();
            let w: Vec<u16> = prod.terms().keys().next().unwrap().0.clone();
            assert_eq!(at_one, enveloping_nf(&w, &c, &mut memo));
        }
    }
}

#[test]
fn solver_reproduces_lie_relations() {
    let alpha = lift_lie(&sl2());
    match solve_corrections(&alpha, 4, None).unwrap() {
        SolveOutcome::Solved { relations, corrections } => {
            assert!(corrections.is_empty());
            assert_eq!(relations, lie_relations(&sl2(), 4));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn solver_reports_the_jacobi_obstruction() {
    let alpha = lift_lie(&nonjacobi3());
    let SolveOutcome::Obstructed { order, kind, residual, .. } = solve_corrections(&alpha, 4, None).unwrap() else {
        panic!("expected an obstruction")
    };
    assert_eq!(order, 2);
    assert_eq!(kind, ObstructionKind::Genuine);
    assert_eq!(residual.len(), 1);
    let mut naive = Naive::new(&linear_relations(&nonjacobi3(), 3));
    assert_eq!(as_lin(&residual[0].defect), naive.defect(2, 1, 0));
}

/// `α_ij = ε_ijk ∂_k φ`, Poisson for every `φ` on three generators.
fn jacobian_bivector(phi: &Polynomial) -> Polyvector {
    let d = |k: usize| phi.derivative(&CommMonomial::var(k, 3));
    Polyvector::bivector(3, [((0, 1), d(2)), ((1, 2), d(0)), ((0, 2), d(1).scale(&rat(-1)))]).unwrap()
}

fn sorted_seed(alpha: &Polyvector, order: usize) -> RelationSet {
    let mut rel = RelationSet::zero(3, order);
    for j in 0..3 {
        for i in 0..j {
            let mut r = NcElement::zero(3, order);
            for (m, c) in alpha.entry(i, j).terms() {
                r.add_term(m.sorted_word(), &HbarSeries::monomial(1, c.clone(), order));
            }
            rel.set(i, j, r).unwrap();
        }
    }
    rel
}

#[test]
fn ordered_seeds_need_and_get_corrections() {
    let x = |i| Polynomial::var(i, 3);
    let phi = x(0).mul(&x(0)).mul(&x(1)).add(&x(2).mul(&x(2)).mul(&x(2)));
    let alpha = jacobian_bivector(&phi);
    assert!(pbwforge::polyvector::poisson_defect(&alpha).unwrap().is_zero());
    let seed = sorted_seed(&alpha, 4);
    assert!(!pbw_check(&seed, 2).unwrap().confluent);
    let out = complete_relations(&seed, |m| default_degree_bound(2, m)).unwrap();
    let SolveOutcome::Solved { relations, corrections } = out else { panic!("{out:?}") };
    assert!(!corrections.is_empty());
    assert!(corrections.iter().all(|c| c.order == 2));
    assert!(pbw_check(&relations, 2).unwrap().confluent);
    // the symmetrized seed needs nothing
    assert!(solve_corrections(&alpha, 4, None).unwrap().corrections().is_empty());
}

#[test]
fn default_bound() {
    assert_eq!(default_degree_bound(1, 2), 2);
    assert_eq!(default_degree_bound(2, 5), 2);
    assert_eq!(default_degree_bound(3, 3), 4);
}
