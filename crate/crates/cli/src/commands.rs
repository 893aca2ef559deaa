use std::collections::BTreeMap;
use std::fmt::Write as _;

use pbwforge::complex::{cobar_complex, cohomology_report, perturbed_cohomology, CellReport, CoalgebraData};
use pbwforge::pbw::solve::default_degree_bound;
use pbwforge::pbw::{
    ce_differential, cobar_deform, pbw_check as check, relations_from_deformation, solve_corrections, DefectEntry,
    ObstructionKind, RelationSet, RewriteStep, RewriteSystem, SolveOutcome,
};
use pbwforge::polyvector::{jacobi_defect, poisson_defect, StructureConstants};
use pbwforge::scalar::{format_rational, HbarSeries};
use pbwforge::tensor::{NcElement, Polynomial, Word};
use serde::Serialize;
use serde_json::{json, Value};

use crate::problem::{self, Defaults, Kind, Payload, Problem, ProblemFile};
use crate::report::{Bound, BoundSource, Exit, InputInfo, Outcome, Report};
use crate::{CliError, Deform, InputArgs};

const FALLBACK_MAX_DEGREE: usize = 4;
const FALLBACK_HBAR_ORDER: usize = 3;

fn load(input: &InputArgs) -> Result<Problem, CliError> {
    match (&input.input, &input.builtin) {
        (Some(path), None) => problem::load_file(path),
        (None, Some(name)) => problem::load_builtin(name),
        _ => Err(CliError::Usage("give exactly one of --input and --builtin".into())),
    }
}

fn echo_input(cmd: &str, input: &InputArgs) -> Vec<String> {
    let mut v = vec![cmd.to_string()];
    if let Some(p) = &input.input {
        v.push("--input".into());
        v.push(p.display().to_string());
    }
    if let Some(b) = &input.builtin {
        v.push("--builtin".into());
        v.push(b.clone());
    }
    v
}

fn resolve(flag: Option<usize>, file: Option<usize>, fallback: usize) -> Bound {
    match (flag, file) {
        (Some(value), _) => Bound { value, source: BoundSource::Flag },
        (None, Some(value)) => Bound { value, source: BoundSource::File },
        (None, None) => Bound {
            value: fallback,
            source: BoundSource::Fallback,
        },
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report data serializes")
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim S^w` on `n` generators.
fn sym_dim(n: usize, w: usize) -> usize {
    binom(w + n - 1, w)
}

fn generator_line(p: &Problem) -> String {
    let names: Vec<String> = p.generators.iter().enumerate().map(|(i, g)| format!("x{}={g}", i + 1)).collect();
    format!("generators: {}\n", names.join(" "))
}

fn header(p: &Problem) -> String {
    format!("{} ({}, sha256 {})\n{}", p.name, p.kind().as_str(), &p.sha256[..12], generator_line(p))
}

// ---------------------------------------------------------------- jacobi

pub fn jacobi(input: &InputArgs) -> Result<Outcome, CliError> {
    let p = load(input)?;
    let mut table = header(&p);
    let (result, satisfied) = match &p.payload {
        Payload::Lie(c) => {
            let d = jacobi_defect(c);
            let entries: Vec<Value> = d
                .iter()
                .map(|(&(i, j, k, b), v)| json!({ "indices": [i, j, k], "component": b, "value": format_rational(v) }))
                .collect();
            let mut grouped: BTreeMap<(usize, usize, usize), Vec<String>> = BTreeMap::new();
            for (&(i, j, k, b), v) in &d {
                grouped.entry((i, j, k)).or_default().push(format!("{}·x{}", format_rational(v), b + 1));
            }
            for ((i, j, k), comps) in grouped {
                let _ = writeln!(table, "  J(x{},x{},x{}) = {}", i + 1, j + 1, k + 1, comps.join(" + "));
            }
            (json!({ "condition": "jacobi", "defects": entries }), d.is_empty())
        }
        Payload::Poisson(alpha) => {
            let d = poisson_defect(alpha)?;
            let entries: Vec<Value> = d
                .terms()
                .iter()
                .map(|(m, poly)| json!({ "slots": m.indices(), "polynomial": to_value(poly) }))
                .collect();
            for (m, poly) in d.terms() {
                let slots: Vec<String> = m.indices().iter().map(|i| format!("x{}", i + 1)).collect();
                let _ = writeln!(table, "  ½[α,α]({}) = {poly:?}", slots.join(","));
            }
            (json!({ "condition": "poisson", "defects": entries }), d.is_zero())
        }
        Payload::Relations(_) => {
            return Err(CliError::Usage(
                "jacobi needs a lie or poisson file; relations files have no bracket to check".into(),
            ))
        }
    };
    let status = if satisfied { "satisfied" } else { "violated" };
    table.insert_str(0, &format!("jacobi: {status}\n"));
    Ok(Outcome {
        report: Report {
            command: echo_input("jacobi", input),
            input: Some(InputInfo::of(&p)),
            bounds: BTreeMap::new(),
            status: status.into(),
            result,
            timing_ms: None,
        },
        table,
        exit: if satisfied { Exit::Ok } else { Exit::Negative },
    })
}

// ---------------------------------------------------------------- relations

/// `R_ij = ℏ Σ_k c_ij^k x_k`, read off the structure constants.
fn linear_relations(c: &StructureConstants, order: usize) -> Result<RelationSet, CliError> {
    let n = c.n();
    let mut rel = RelationSet::zero(n, order);
    for j in 0..n {
        for i in 0..j {
            let mut r = NcElement::zero(n, order);
            for (k, v) in c.bracket(i, j) {
                r.add_term(Word::letter(k), &HbarSeries::monomial(1, v, order));
            }
            rel.set(i, j, r)?;
        }
    }
    Ok(rel)
}

struct Relations {
    route: &'static str,
    relations: RelationSet,
    solve: Option<Value>,
}

fn relations_for(p: &Problem, order: usize) -> Result<Relations, CliError> {
    if order < 2 {
        return Err(CliError::Usage(format!("--hbar-order must be at least 2, got {order}")));
    }
    match &p.payload {
        Payload::Lie(c) => {
            let direct = linear_relations(c, order)?;
            if !jacobi_defect(c).is_empty() {
                // no square-zero deformation exists; the constants are used as given
                return Ok(Relations {
                    route: "structure-constants",
                    relations: direct,
                    solve: None,
                });
            }
            let coalg = CoalgebraData::reduced_ext(c.n());
            let dh = cobar_deform(&ce_differential(c, c.n()), &coalg, order)?;
            let via_cobar = relations_from_deformation(&coalg, &dh)?;
            if via_cobar != direct {
                return Err(CliError::Invariant(
                    "cobar-route relations disagree with the structure constants".into(),
                ));
            }
            Ok(Relations {
                route: "chevalley-eilenberg",
                relations: via_cobar,
                solve: None,
            })
        }
        Payload::Poisson(alpha) => {
            let outcome = solve_corrections(alpha, order, None)?;
            let summary = json!({
                "status": if outcome.is_solved() { "solved" } else { "obstructed" },
                "corrections": to_value(&outcome.corrections()),
            });
            Ok(Relations {
                route: "poisson-solve",
                relations: outcome.relations().clone(),
                solve: Some(summary),
            })
        }
        Payload::Relations(_) => Ok(Relations {
            route: "relations",
            relations: p.relations(order)?,
            solve: None,
        }),
    }
}

fn defect_json(d: &DefectEntry) -> Value {
    json!({
        "triple": [d.triple.0, d.triple.1, d.triple.2],
        "valuation": d.defect.valuation(),
        "defect": to_value(&d.defect),
    })
}

fn triple_label(t: (usize, usize, usize)) -> String {
    format!("({},{},{})", t.0 + 1, t.1 + 1, t.2 + 1)
}

// ---------------------------------------------------------------- pbw-check

fn swap_side(rel: &RelationSet, lo: usize, hi: usize) -> NcElement {
    let order = rel.order();
    let mut e = rel.get(lo, hi).neg();
    e.add_term(Word::from_indices(&[lo, hi]), &HbarSeries::one(order));
    e
}

#[derive(Serialize)]
struct Reduction {
    start: NcElement,
    steps: Vec<RewriteStep>,
    normal_form: NcElement,
}

fn reduce_logged(rs: &RewriteSystem, e: NcElement) -> Result<Reduction, CliError> {
    let (nf, steps) = rs.normal_form_with_witness(&e)?;
    if rs.replay(&e, &steps)? != nf {
        return Err(CliError::Invariant("rewrite log does not replay to the normal form".into()));
    }
    Ok(Reduction {
        start: e,
        steps,
        normal_form: nf,
    })
}

/// Both resolutions of every overlap `x_k x_j x_i`.
fn witnesses(rel: &RelationSet) -> Result<Vec<Value>, CliError> {
    let n = rel.generator_count();
    let order = rel.order();
    let rs = RewriteSystem::new(rel.clone());
    let gen = |a: usize| NcElement::generator(a, n, order);
    let mut out = Vec::new();
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                let left = swap_side(rel, j, k).checked_mul(&gen(i))?;
                let right = gen(k).checked_mul(&swap_side(rel, i, j))?;
                let left = reduce_logged(&rs, left)?;
                let right = reduce_logged(&rs, right)?;
                out.push(json!({ "triple": [k, j, i], "left": to_value(&left), "right": to_value(&right) }));
            }
        }
    }
    Ok(out)
}

pub fn pbw_check(
    input: &InputArgs,
    max_degree: Option<usize>,
    hbar_order: Option<usize>,
    witness: bool,
) -> Result<Outcome, CliError> {
    let p = load(input)?;
    let d = resolve(max_degree, p.defaults.max_degree, FALLBACK_MAX_DEGREE);
    let k = resolve(hbar_order, p.defaults.hbar_order, FALLBACK_HBAR_ORDER);
    let rels = relations_for(&p, k.value)?;
    let report = check(&rels.relations, d.value)?;
    let n = p.n();

    let defects: Vec<Value> = report.nonzero_defects().map(defect_json).collect();
    let hilbert: Vec<Value> = report
        .hilbert
        .iter()
        .map(|h| {
            let free = sym_dim(n, h.weight);
            json!({
                "weight": h.weight,
                "rank_profile": to_value(&h.rank_profile),
                "free_rank": h.rank_profile.free_rank(),
                "symmetric_dim": free,
                "deficit": free.saturating_sub(h.rank_profile.free_rank()),
            })
        })
        .collect();
    let mut result = json!({
        "route": rels.route,
        "strategy": RewriteSystem::new(rels.relations.clone()).strategy(),
        "relations": to_value(&rels.relations.to_entries()),
        "confluent": report.confluent,
        "triples_checked": report.defects.len(),
        "defects": defects,
        "hilbert": hilbert,
        "flags": report.flags,
    });
    if let Some(s) = rels.solve {
        result["solve"] = s;
    }
    if witness {
        result["witness"] = Value::Array(witnesses(&rels.relations)?);
    }

    let mut bounds = BTreeMap::new();
    bounds.insert("max_degree".into(), to_value(&d));
    bounds.insert("hbar_order".into(), to_value(&k));
    if let Some(len) = report.bounds.span_length {
        bounds.insert("span_length".into(), json!(len));
    }

    let status = if report.confluent { "confluent" } else { "non-confluent" };
    let mut table = format!("pbw-check: {status}\n{}", header(&p));
    let _ = writeln!(table, "route: {}, D = {}, K = {}", rels.route, d.value, k.value);
    for e in report.nonzero_defects() {
        let _ = writeln!(
            table,
            "defect {} (ℏ-valuation {}): {:?}",
            triple_label(e.triple),
            e.defect.valuation(),
            e.defect
        );
    }
    let _ = writeln!(table, "{:>6}  {:>8}  {:>8}  profile", "weight", "free", "S^w");
    for h in &report.hilbert {
        let _ = writeln!(
            table,
            "{:>6}  {:>8}  {:>8}  {:?}",
            h.weight,
            h.rank_profile.free_rank(),
            sym_dim(n, h.weight),
            h.rank_profile.blocks
        );
    }
    if !report.flags.is_empty() {
        let _ = writeln!(table, "flags: {}", report.flags.join(", "));
    }

    let mut command = echo_input("pbw-check", input);
    command.extend(["--max-degree".into(), d.value.to_string(), "--hbar-order".into(), k.value.to_string()]);
    if witness {
        command.push("--witness".into());
    }
    Ok(Outcome {
        report: Report {
            command,
            input: Some(InputInfo::of(&p)),
            bounds,
            status: status.into(),
            result,
            timing_ms: None,
        },
        table,
        exit: if report.confluent { Exit::Ok } else { Exit::Negative },
    })
}

// ---------------------------------------------------------------- cobar

fn cells_table(table: &mut String, cells: &[CellReport]) {
    let _ = writeln!(table, "{:>6}  {:>6}  {:>6}  cohomology", "weight", "degree", "dim");
    for c in cells {
        let _ = writeln!(table, "{:>6}  {:>6}  {:>6}  {:?}", c.weight, c.degree, c.dim, c.rank_profile.blocks);
    }
}

pub fn cobar(
    input: &InputArgs,
    weights: Option<usize>,
    deform: Deform,
    hbar_order: Option<usize>,
) -> Result<Outcome, CliError> {
    let p = load(input)?;
    let n = p.n();
    let w = resolve(weights, p.defaults.max_degree, FALLBACK_MAX_DEGREE);
    let coalg = CoalgebraData::reduced_ext(n);
    let cx = cobar_complex(&coalg, w.value)?;
    let mut bounds = BTreeMap::new();
    bounds.insert("weights".into(), to_value(&w));
    let mut command = echo_input("cobar", input);
    command.extend(["--weights".into(), w.value.to_string()]);
    let cells = match deform {
        Deform::None => {
            command.extend(["--deform".into(), "none".into()]);
            cohomology_report(&cx.complex)
        }
        Deform::Ce => {
            let Payload::Lie(c) = &p.payload else {
                return Err(CliError::Usage("--deform ce needs a lie file".into()));
            };
            let k = resolve(hbar_order, p.defaults.hbar_order, FALLBACK_HBAR_ORDER);
            command.extend(["--deform".into(), "ce".into(), "--hbar-order".into(), k.value.to_string()]);
            bounds.insert("hbar_order".into(), to_value(&k));
            let dh = cobar_deform(&ce_differential(c, n), &coalg, k.value)?;
            perturbed_cohomology(&cx, &dh, k.value)?
        }
    };
    let negative_vanish = cells.iter().filter(|c| c.degree < 0).all(|c| c.rank_profile.is_zero());
    let degree_zero: Vec<Value> = cells
        .iter()
        .filter(|c| c.degree == 0)
        .map(|c| json!({ "weight": c.weight, "free_rank": c.rank_profile.free_rank(), "free": c.rank_profile.is_free() }))
        .collect();
    let euler: Vec<Value> = cx
        .complex
        .weights()
        .into_iter()
        .map(|wt| json!({ "weight": wt, "value": cx.complex.euler_characteristic(wt) }))
        .collect();
    let deform_name = match deform {
        Deform::None => "none",
        Deform::Ce => "ce",
    };
    let result = json!({
        "coalgebra": "reduced-exterior",
        "generators": n,
        "deform": deform_name,
        "cells": to_value(&cells),
        "negative_degrees_vanish": negative_vanish,
        "degree_zero": degree_zero,
        "euler_characteristic": euler,
    });
    let mut table = format!("cobar: Λ⁻ on {n} generators, weights ≤ {}, deform {deform_name}\n{}", w.value, header(&p));
    cells_table(&mut table, &cells);
    let _ = writeln!(table, "negative degrees vanish: {negative_vanish}");
    Ok(Outcome {
        report: Report {
            command,
            input: Some(InputInfo::of(&p)),
            bounds,
            status: "ok".into(),
            result,
            timing_ms: None,
        },
        table,
        exit: Exit::Ok,
    })
}

// ---------------------------------------------------------------- solve

pub fn solve(input: &InputArgs, hbar_order: Option<usize>, max_degree: Option<usize>) -> Result<Outcome, CliError> {
    let p = load(input)?;
    let Payload::Poisson(alpha) = &p.payload else {
        return Err(CliError::Usage(format!(
            "solve needs a poisson file, {} is kind {}",
            p.name,
            p.kind().as_str()
        )));
    };
    let k = resolve(hbar_order, p.defaults.hbar_order, FALLBACK_HBAR_ORDER);
    if k.value < 2 {
        return Err(CliError::Usage(format!("--hbar-order must be at least 2, got {}", k.value)));
    }
    let g = alpha.terms().values().filter_map(Polynomial::degree).max().unwrap_or(0) as usize;
    let bound = |m: usize| max_degree.unwrap_or_else(|| default_degree_bound(g, m));
    let outcome = solve_corrections(alpha, k.value, Some(&bound))?;

    let ansatz: Vec<Value> = (2..k.value.saturating_sub(1))
        .map(|m| json!({ "order": m, "degree": bound(m) }))
        .collect();
    let mut bounds = BTreeMap::new();
    bounds.insert("hbar_order".into(), to_value(&k));
    bounds.insert(
        "ansatz".into(),
        json!({
            "source": if max_degree.is_some() { "flag" } else { "default" },
            "bivector_degree": g,
            "per_order": ansatz,
        }),
    );

    let relations_file = ProblemFile {
        name: format!("{}-relations", p.name),
        description: Some(format!("relations completed from {} modulo ℏ^{}", p.name, k.value)),
        kind: Kind::Relations,
        generators: p.generators.clone(),
        structure_constants: None,
        bivector: None,
        relations: Some(outcome.relations().to_entries()),
        defaults: Defaults {
            max_degree: p.defaults.max_degree,
            hbar_order: Some(k.value),
        },
    };

    let mut table = String::new();
    let (status, obstruction) = match &outcome {
        SolveOutcome::Solved { .. } => ("solved", Value::Null),
        SolveOutcome::Obstructed { order, kind, residual, .. } => {
            let _ = writeln!(
                table,
                "obstruction at ℏ^{order}: {}",
                match kind {
                    ObstructionKind::Genuine => "genuine".to_string(),
                    ObstructionKind::UnresolvedAtBound { bound } => format!("unresolved at ansatz degree {bound}"),
                }
            );
            for d in residual {
                let _ = writeln!(table, "  residual {}: {:?}", triple_label(d.triple), d.defect);
            }
            // the kind serializes as {"kind": ..., extra fields}
            let mut ob = to_value(kind);
            ob["order"] = json!(order);
            ob["residual"] = Value::Array(residual.iter().map(defect_json).collect());
            ("obstructed", ob)
        }
    };
    let mut head = format!("solve: {status}\n{}", header(&p));
    for c in outcome.corrections() {
        let _ = writeln!(
            head,
            "  correction ℏ^{} on (x{},x{}): {:?}",
            c.order,
            c.pair.0 + 1,
            c.pair.1 + 1,
            c.polynomial
        );
    }
    if outcome.corrections().is_empty() {
        head.push_str("  no corrections\n");
    }
    head.push_str(&table);
    for (&(i, j), r) in outcome.relations().iter() {
        let _ = writeln!(head, "  R({},{}) = {r:?}", i + 1, j + 1);
    }

    let mut result = json!({
        "status": status,
        "corrections": to_value(&outcome.corrections()),
        "relations_file": to_value(&relations_file),
    });
    if !obstruction.is_null() {
        result["obstruction"] = obstruction;
        result["relations_partial"] = json!(true);
    }
    let mut command = echo_input("solve", input);
    command.extend(["--hbar-order".into(), k.value.to_string()]);
    if let Some(b) = max_degree {
        command.extend(["--max-degree".into(), b.to_string()]);
    }
    Ok(Outcome {
        report: Report {
            command,
            input: Some(InputInfo::of(&p)),
            bounds,
            status: status.into(),
            result,
            timing_ms: None,
        },
        table: head,
        exit: if outcome.is_solved() { Exit::Ok } else { Exit::Negative },
    })
}
