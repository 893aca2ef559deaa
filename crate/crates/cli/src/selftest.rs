//! Invariant suites behind `pbwforge selftest`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use pbwforge::complex::phi::{diagram_defect, has_unit_value, max_order, PhiContext};
use pbwforge::complex::{
    bar_complex, cobar_complex, cohomology_ranks, gerstenhaber, hochschild_diff, AlgebraData, CoalgebraData, PolyDiffOp,
};
use pbwforge::pbw::{normal_form, pbw_check, RelationSet, RewriteSystem};
use pbwforge::polyvector::StructureConstants;
use pbwforge::scalar::{rat, HbarSeries};
use pbwforge::tensor::{NcElement, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::report::{Exit, Outcome, Report};
use crate::sampling::{random_cochain, random_element, random_relations};
use crate::Suite;

pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    /// First few failing cases.
    pub failures: Vec<String>,
}

struct Tally {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            passed: self.failures.is_empty(),
            cases: self.cases,
            failures: self.failures,
        }
    }
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn cobar_suite() -> SuiteResult {
    let mut t = Tally::new("cobar");
    // complex construction verifies d∘d = 0 cell by cell
    for (n, top) in [(1, 5), (2, 5), (3, 4)] {
        match cobar_complex(&CoalgebraData::reduced_ext(n), top) {
            Ok(cx) => {
                for (&(d, w), &r) in &cohomology_ranks(&cx.complex) {
                    let want = if d == 0 { binom(w + n - 1, w) } else { 0 };
                    t.check(r == want, || format!("Λ⁻(ℚ^{n}) cell ({d},{w}): rank {r}, expected {want}"));
                }
            }
            Err(e) => t.check(false, || format!("Λ⁻(ℚ^{n}): {e}")),
        }
    }
    t.check(cobar_complex(&CoalgebraData::reduced_sym(2, 4), 4).is_ok(), || "S⁺(ℚ²) cobar".into());
    t.check(bar_complex(&AlgebraData::symmetric(2, 4, false), 4, None).is_ok(), || "S⁺(ℚ²) bar".into());
    t.check(bar_complex(&AlgebraData::symmetric(2, 3, true), 3, Some(3)).is_ok(), || "S(ℚ²) bar".into());
    t.finish()
}

fn same(x: &PolyDiffOp, y: &PolyDiffOp) -> bool {
    (x.is_zero() && y.is_zero()) || x == y
}

fn hochschild_suite(seed: u64) -> SuiteResult {
    let mut t = Tally::new("hochschild");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 1..=2 {
        let m = PolyDiffOp::multiplication(n);
        t.check(gerstenhaber(&m, &m).is_zero(), || format!("[m,m] ≠ 0 for n = {n}"));
    }
    for s in 0..100 {
        let n = 1 + s % 2;
        let m = PolyDiffOp::multiplication(n);
        let a = random_cochain(&mut rng, n, s % 3, 2);
        let b = random_cochain(&mut rng, n, (s / 3) % 3, 2);
        let c = random_cochain(&mut rng, n, (s / 9) % 3, 2);
        let d = hochschild_diff(&a);
        t.check(hochschild_diff(&d).is_zero(), || format!("d∘d ≠ 0 on {a:?}"));
        t.check(d == gerstenhaber(&a, &m).scale(&rat(-1)), || format!("d ≠ −[·,m] on {a:?}"));
        let (k, l) = (a.hochschild_degree(), b.hochschild_degree());
        let sign = if (k * l).rem_euclid(2) == 1 { rat(-1) } else { rat(1) };
        let ab = gerstenhaber(&a, &b);
        t.check(same(&ab, &gerstenhaber(&b, &a).scale(&-sign.clone())), || {
            format!("antisymmetry fails on {a:?}, {b:?}")
        });
        let lhs = gerstenhaber(&a, &gerstenhaber(&b, &c));
        let rhs = gerstenhaber(&ab, &c).add(&gerstenhaber(&b, &gerstenhaber(&a, &c)).scale(&sign));
        t.check(same(&lhs, &rhs), || format!("Jacobi fails on {a:?}, {b:?}, {c:?}"));
    }
    t.finish()
}

fn phi_suite(seed: u64) -> SuiteResult {
    let mut t = Tally::new("phi");
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    for s in 0..24 {
        let arity = s % 4;
        let psi = random_cochain(&mut rng, 2, arity, 1);
        let ctx = PhiContext::new(2, 3, max_order(&psi) + 1);
        match diagram_defect(&psi, &ctx) {
            Ok(dd) => {
                let parity = if arity % 2 == 0 { 1 } else { -1 };
                t.check(dd.matching_scalars.contains(&parity), || {
                    format!("arity {arity}: commutator is not (−1)^k·ad on {psi:?}")
                });
                if !has_unit_value(&psi) {
                    t.check(dd.vanishes(), || format!("Ψ(1) = 0 but the commutator is nonzero on {psi:?}"));
                }
            }
            Err(e) => t.check(false, || format!("{psi:?}: {e}")),
        }
    }
    t.finish()
}

fn lie(n: usize, entries: &[(usize, usize, usize, i64)]) -> StructureConstants {
    let mut c = StructureConstants::zero(n);
    for &(i, j, k, v) in entries {
        c.set(i, j, k, rat(v)).expect("valid constants");
    }
    c
}

fn linear(c: &StructureConstants, order: usize) -> RelationSet {
    let n = c.n();
    let mut rel = RelationSet::zero(n, order);
    for j in 0..n {
        for i in 0..j {
            let mut r = NcElement::zero(n, order);
            for (k, v) in c.bracket(i, j) {
                r.add_term(Word::letter(k), &HbarSeries::monomial(1, v, order));
            }
            rel.set(i, j, r).expect("valuation one");
        }
    }
    rel
}

fn pbw_suite() -> SuiteResult {
    let mut t = Tally::new("pbw");
    let sl2 = lie(3, &[(0, 1, 0, -2), (0, 2, 1, 1), (1, 2, 2, -2)]);
    let heis = lie(3, &[(0, 1, 2, 1)]);
    for (name, c) in [("sl2", &sl2), ("heis3", &heis)] {
        match pbw_check(&linear(c, 3), 4) {
            Ok(r) => {
                t.check(r.confluent, || format!("{name} is not confluent"));
                for h in &r.hilbert {
                    let want = binom(h.weight + 2, 2);
                    t.check(h.rank_profile.free_rank() == want && h.rank_profile.is_free(), || {
                        format!("{name} weight {}: {:?}", h.weight, h.rank_profile.blocks)
                    });
                }
            }
            Err(e) => t.check(false, || format!("{name}: {e}")),
        }
    }
    let bad = lie(3, &[(0, 1, 2, 1), (0, 2, 0, 1)]);
    match pbw_check(&linear(&bad, 3), 1) {
        Ok(r) => {
            let vals: Vec<usize> = r.nonzero_defects().map(|d| d.defect.valuation()).collect();
            t.check(!r.confluent && vals == [2], || format!("non-Jacobi defect valuations {vals:?}"));
        }
        Err(e) => t.check(false, || format!("non-Jacobi: {e}")),
    }
    t.finish()
}

fn termination_suite(seed: u64) -> SuiteResult {
    let mut t = Tally::new("termination");
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    for _ in 0..200 {
        let rel = random_relations(&mut rng, 3, 4, 3);
        let e = random_element(&mut rng, 3, 4, 4);
        let rs = RewriteSystem::new(rel);
        match normal_form(&e, &rs) {
            Ok(nf) => t.check(nf.terms().keys().all(Word::is_sorted), || format!("unsorted normal form of {e:?}")),
            Err(err) => t.check(false, || format!("{e:?}: {err}")),
        }
    }
    t.finish()
}

pub fn run_suites(suite: Suite, seed: u64) -> Vec<SuiteResult> {
    let all = suite == Suite::All;
    let mut out = Vec::new();
    if all || suite == Suite::Cobar {
        out.push(cobar_suite());
    }
    if all || suite == Suite::Hochschild {
        out.push(hochschild_suite(seed));
    }
    if all || suite == Suite::Phi {
        out.push(phi_suite(seed));
    }
    if all || suite == Suite::Pbw {
        out.push(pbw_suite());
    }
    if all || suite == Suite::Termination {
        out.push(termination_suite(seed));
    }
    out
}

pub fn run(suite: Suite, seed: u64) -> Outcome {
    let results = run_suites(suite, seed);
    let passed = results.iter().all(|r| r.passed);
    let status = if passed { "pass" } else { "fail" };
    let mut table = format!("selftest: {status} (seed {seed})\n");
    for r in &results {
        let _ = writeln!(
            table,
            "  {:<12} {:<4} {} cases",
            r.name,
            if r.passed { "pass" } else { "FAIL" },
            r.cases
        );
        for f in &r.failures {
            let _ = writeln!(table, "      {f}");
        }
    }
    let suite_name = format!("{suite:?}").to_lowercase();
    let mut bounds = BTreeMap::new();
    bounds.insert("seed".into(), json!(seed));
    Outcome {
        report: Report {
            command: vec!["selftest".into(), "--suite".into(), suite_name, "--seed".into(), seed.to_string()],
            input: None,
            bounds,
            status: status.into(),
            result: json!({ "suites": serde_json::to_value(&results).expect("suite results serialize") }),
            timing_ms: None,
        },
        table,
        exit: if passed { Exit::Ok } else { Exit::Invariant },
    }
}
