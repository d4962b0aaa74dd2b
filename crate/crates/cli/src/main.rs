use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use conformal_core::algebra::axiom_sweep;
use conformal_core::classify::{self, DegreeBounds};
use conformal_core::cohomology;
use conformal_core::dsl;
use conformal_core::repcheck::{self, CompositionFactor};
use conformal_core::{zoo, ConformalAlgebra, Scalar};

#[derive(Parser)]
#[command(name = "conformal", version, about = "Exact computations with Lie conformal algebras")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Skew-symmetry and Jacobi sweep over all in-bound pairs and triples.
    Axioms(AlgebraArgs),
    /// Second cohomology with rank-one coefficients.
    H2(H2Args),
    /// H^2 of the semidirect family over a grid of (a, b).
    SweepH2(SweepArgs),
    /// The staged classification of filtered deformations.
    Classify(ClassifyArgs),
    /// Axioms and structural check of the closed-form bracket.
    VerifyClosedForm(ClosedArgs),
    /// Composition-series case equations and the rank-one module search.
    Repcheck(RepArgs),
    /// Syntax check of an algebra file.
    Parse(ParseArgs),
}

fn scalar(s: &str) -> Result<Scalar, String> {
    s.parse::<Scalar>().map_err(|e| e.to_string())
}

fn int_list(s: &str) -> Result<Vec<i64>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if let Some((a, b)) = part.split_once("..") {
            let a: i64 = a.parse().map_err(|_| format!("bad range start `{a}`"))?;
            let b: i64 = b.parse().map_err(|_| format!("bad range end `{b}`"))?;
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| format!("bad integer `{part}`"))?);
        }
    }
    Ok(out)
}

fn param(s: &str) -> Result<(String, Scalar), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    Ok((k.trim().to_string(), scalar(v.trim())?))
}

#[derive(Args)]
struct AlgebraArgs {
    /// Builtin: vir, semidirect, gc1, grgc1, gcN.
    #[arg(long, conflicts_with = "file")]
    algebra: Option<String>,
    /// An algebra definition in the text format.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Parameter of the semidirect family.
    #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
    a: Option<Scalar>,
    /// Matrix size for gcN.
    #[arg(long, default_value_t = 2)]
    size: u32,
    /// Truncation bound for indexed families.
    #[arg(long, default_value_t = zoo::DEFAULT_TRUNCATION)]
    bound: i64,
    /// Values for parameters of a file algebra, as name=value.
    #[arg(long = "param", value_parser = param)]
    params: Vec<(String, Scalar)>,
}

#[derive(Args)]
struct H2Args {
    #[arg(long, default_value = "vir")]
    algebra: String,
    #[arg(long, value_parser = scalar, default_value = "0", allow_hyphen_values = true)]
    delta: Scalar,
    #[arg(long, value_parser = scalar, default_value = "0", allow_hyphen_values = true)]
    alpha: Scalar,
    #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
    a: Option<Scalar>,
    #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
    b: Option<Scalar>,
    #[arg(long, default_value_t = 10)]
    max_degree: u32,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated values of a.
    #[arg(long, value_parser = scalar, value_delimiter = ',', allow_hyphen_values = true)]
    a: Vec<Scalar>,
    /// Comma-separated values of b.
    #[arg(long, value_parser = scalar, value_delimiter = ',', allow_hyphen_values = true)]
    b: Vec<Scalar>,
    #[arg(long, default_value_t = 10)]
    max_degree: u32,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Degree slack over the natural degree of every family.
    #[arg(long, default_value_t = 1)]
    extra_degree: u32,
}

#[derive(Args)]
struct ClosedArgs {
    #[arg(long, allow_hyphen_values = true)]
    c: i64,
    #[arg(long, default_value_t = 5)]
    bound: i64,
}

#[derive(Args)]
struct RepArgs {
    /// Case 1..4 of the composition-series analysis.
    #[arg(long, default_value_t = 1)]
    case: u8,
    /// Values of i, e.g. `5..12` or `3,7`.
    #[arg(long, default_value = "5..12", allow_hyphen_values = true)]
    i: String,
    #[arg(long, value_parser = scalar, value_delimiter = ',', default_value = "1,2,3", allow_hyphen_values = true)]
    source_delta: Vec<Scalar>,
    #[arg(long, value_parser = scalar, default_value = "0", allow_hyphen_values = true)]
    source_alpha: Scalar,
    /// Target weights; defaults to the source weight.
    #[arg(long, value_parser = scalar, value_delimiter = ',', allow_hyphen_values = true)]
    target_delta: Vec<Scalar>,
    #[arg(long, value_parser = scalar, default_value = "0", allow_hyphen_values = true)]
    target_alpha: Scalar,
    #[arg(long, default_value_t = 8)]
    degree: u32,
    /// Truncation bound of the rank-one module search; 0 skips it.
    #[arg(long, default_value_t = 4)]
    rank1: i64,
    #[arg(long, default_value_t = 6)]
    rank1_degree: u32,
}

#[derive(Args)]
struct ParseArgs {
    file: PathBuf,
}

enum Failure {
    Usage(String),
}

type Outcome = Result<(Value, bool), Failure>;

fn load_algebra(a: &AlgebraArgs) -> Result<ConformalAlgebra, Failure> {
    if let Some(path) = &a.file {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let vals: BTreeMap<String, Scalar> = a.params.iter().cloned().collect();
        return dsl::parse_algebra_with(&text, &vals).map_err(|e| Failure::Usage(format!("{}:{e}", path.display())));
    }
    let name = a.algebra.as_deref().ok_or_else(|| Failure::Usage("one of --algebra or --file is required".into()))?;
    let args: Vec<Scalar> = match name {
        "semidirect" => vec![a.a.clone().ok_or_else(|| Failure::Usage("semidirect needs --a".into()))?],
        "gcN" | "gcn" => vec![Scalar::int(a.size as i64), Scalar::int(a.bound)],
        _ => vec![Scalar::int(a.bound)],
    };
    zoo::builtin(name, &args).ok_or_else(|| Failure::Usage(format!("unknown algebra `{name}`")))
}

fn axioms(a: &AlgebraArgs) -> Outcome {
    let alg = load_algebra(a)?;
    let r = axiom_sweep(&alg);
    let skew: Vec<Value> = r
        .skew_failures
        .iter()
        .map(|((x, y), w)| json!({"pair": [x.to_string(), y.to_string()], "witness": dsl::format_element(w)}))
        .collect();
    let jac: Vec<Value> = r
        .jacobi_failures
        .iter()
        .map(|((x, y, z), w)| json!({"triple": [x.to_string(), y.to_string(), z.to_string()], "witness": dsl::format_element(w)}))
        .collect();
    let ok = r.passed();
    Ok((
        json!({
            "command": "axioms",
            "algebra": alg.name,
            "generators": alg.gens().len(),
            "truncation": alg.truncation(),
            "skew_checked": r.skew_checked,
            "jacobi_checked": r.jacobi_checked,
            "skew_failures": skew,
            "jacobi_failures": jac,
            "passed": ok,
        }),
        ok,
    ))
}

fn h2(a: &H2Args) -> Outcome {
    match a.algebra.as_str() {
        "vir" => {
            let r = cohomology::vir_h2(&a.delta, &a.alpha, a.max_degree).map_err(|e| Failure::Usage(e.to_string()))?;
            let per: Vec<Value> = r.per_degree.iter().map(|(d, n)| json!({"degree": d, "dim": n})).collect();
            Ok((
                json!({
                    "command": "h2",
                    "algebra": "vir",
                    "delta": a.delta.to_string(),
                    "alpha": a.alpha.to_string(),
                    "max_degree": a.max_degree,
                    "dim": r.dim,
                    "per_degree": per,
                    "basis": r.basis.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                }),
                true,
            ))
        }
        "semidirect" => {
            let (Some(sa), Some(sb)) = (&a.a, &a.b) else {
                return Err(Failure::Usage("semidirect needs --a and --b".into()));
            };
            let (cell, _) = sweep_cell(sa, sb, a.max_degree)?;
            Ok((json!({"command": "h2", "algebra": "semidirect", "result": cell}), true))
        }
        other => Err(Failure::Usage(format!("h2 supports vir and semidirect, not `{other}`"))),
    }
}

fn sweep_cell(a: &Scalar, b: &Scalar, max_degree: u32) -> Result<(Value, bool), Failure> {
    let r = cohomology::theorem32(a, b, max_degree).map_err(|e| Failure::Usage(e.to_string()))?;
    let (vir, delta, tau) = cohomology::rhs_dimension(a, b);
    let expected = vir + delta + tau;
    let rows: Vec<Value> = r
        .rows
        .iter()
        .filter(|row| row.dim > 0)
        .map(|row| {
            json!({
                "degree": row.degree,
                "component": row.component,
                "dim": row.dim,
                "basis": row.basis.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let ok = r.dim == expected;
    let mut cell = json!({
        "a": a.to_string(),
        "b": b.to_string(),
        "max_degree": max_degree,
        "dim": r.dim,
        "expected": {"vir": vir, "delta": delta, "tau": tau, "total": expected},
        "matches": ok,
        "per_degree": rows,
    });
    if !ok {
        let mut w: Vec<String> = r.rows.iter().flat_map(|row| row.basis.iter().map(|p| p.to_string())).collect();
        if w.is_empty() {
            w.push("0".into());
        }
        cell["witness"] = json!(w);
    }
    Ok((cell, ok))
}

fn sweep(a: &SweepArgs) -> Outcome {
    let (aa, bb) = (&a.a, &a.b);
    if aa.is_empty() || bb.is_empty() {
        return Err(Failure::Usage("sweep-h2 needs --a and --b".into()));
    }
    let grid: Vec<(Scalar, Scalar)> = aa.iter().flat_map(|x| bb.iter().map(move |y| (x.clone(), y.clone()))).collect();
    let cells: Vec<Result<(Value, bool), Failure>> = grid.par_iter().map(|(x, y)| sweep_cell(x, y, a.max_degree)).collect();
    let mut out = Vec::new();
    let mut ok = true;
    for c in cells {
        let (v, good) = c?;
        ok &= good;
        out.push(v);
    }
    let mut report = json!({"command": "sweep-h2", "cells": out, "passed": ok});
    if grid.len() == 1 {
        report["dim"] = report["cells"][0]["dim"].clone();
    }
    Ok((report, ok))
}

fn classify_cmd(a: &ClassifyArgs) -> Outcome {
    let c = classify::stage_solve(&DegreeBounds::natural_plus(a.extra_degree)).map_err(|e| Failure::Usage(e.to_string()))?;
    let stages: Vec<Value> = c
        .stages
        .iter()
        .map(|s| {
            json!({
                "stage": s.name,
                "identities": s.identities.iter().map(|((x, y, z), g)| json!({"triple": [x, y, z], "component": g})).collect::<Vec<_>>(),
                "claims": s.claims.iter().map(claim_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    let fam = |f: &classify::Families| -> Value {
        let m: BTreeMap<&String, String> = f.fam.iter().map(|(k, v)| (k, v.to_string())).collect();
        json!(m)
    };
    let final_family = c.final_family();
    let failing: Vec<&classify::Claim> = c.claims().filter(|x| !x.holds).collect();
    let ok = failing.is_empty() && c.recheck.passed() && c.identities_used_pass && c.b_forced;
    let top = |t: &classify::TopStage| {
        json!({
            "f5": t.f5.to_string(),
            "f7": t.f7.to_string(),
            "l2": t.l2.to_string(),
            "l4": t.l4.to_string(),
            "b_forced_without_b4": t.b_forced_without_b4,
            "b_forced_with_b4": t.b_forced_with_b4,
        })
    };
    let report = json!({
        "command": "classify",
        "stages": stages,
        "normal_forms": c.normal_forms.iter().map(|n| json!({
            "family": n.family, "cocycle_dim": n.cocycle_dim, "coboundary_dim": n.coboundary_dim,
            "representative": n.representative, "complement_ok": n.complement_ok,
        })).collect::<Vec<_>>(),
        "relations": c.relations.iter().map(|(k, v)| json!({"name": k, "value": v.to_string()})).collect::<Vec<_>>(),
        "two_parameter_family": fam(&c.two_parameter),
        "parameters": c.parameters,
        "top_stage": top(&c.top),
        "top_stage_c_nonzero": top(&c.top_c_nonzero),
        "b_forced": c.b_forced,
        "counterexample_found": c.counterexample.is_some(),
        "final_family_b_zero": fam(&final_family),
        "recheck_passed": c.recheck.passed(),
        "identities_used_pass": c.identities_used_pass,
        "failing_claims": failing.iter().map(|x| claim_json(x)).collect::<Vec<_>>(),
        "witness": failing.iter().map(|x| x.computed.clone()).collect::<Vec<_>>(),
        "passed": ok,
    });
    Ok((report, ok))
}

fn claim_json(c: &classify::Claim) -> Value {
    json!({"label": c.label, "expected": c.expected, "computed": c.computed, "holds": c.holds})
}

fn closed(a: &ClosedArgs) -> Outcome {
    let r = classify::verify_closed_form(a.c, a.bound).map_err(|e| Failure::Usage(e.to_string()))?;
    let ok = r.passed();
    let mut witness: Vec<String> = r.axioms.skew_failures.iter().map(|(_, w)| dsl::format_element(w)).collect();
    witness.extend(r.axioms.jacobi_failures.iter().map(|(_, w)| dsl::format_element(w)));
    Ok((
        json!({
            "command": "verify-closed-form",
            "c": a.c,
            "bound": a.bound,
            "axioms_passed": r.axioms.passed(),
            "matches_reference": r.matches_reference,
            "witness": witness,
            "passed": ok,
        }),
        ok,
    ))
}

fn factor(free: bool, delta: &Scalar, alpha: &Scalar) -> CompositionFactor {
    if free {
        CompositionFactor::free(delta.clone(), alpha.clone())
    } else {
        CompositionFactor::trivial(alpha.clone())
    }
}

fn rep(a: &RepArgs) -> Outcome {
    let (src_free, tgt_free) = match a.case {
        1 => (true, true),
        2 => (false, true),
        3 => (true, false),
        4 => (false, false),
        c => return Err(Failure::Usage(format!("case must be 1..4, got {c}"))),
    };
    let is = int_list(&a.i).map_err(Failure::Usage)?;
    let sd = &a.source_delta;
    let mut cells = Vec::new();
    for i in &is {
        for d1 in sd {
            let targets = if a.target_delta.is_empty() { vec![d1.clone()] } else { a.target_delta.clone() };
            for dk in &targets {
                cells.push((*i, d1.clone(), dk.clone()));
            }
        }
    }
    let results: Vec<Result<Value, Failure>> = cells
        .par_iter()
        .map(|(i, d1, dk)| {
            let s = factor(src_free, d1, &a.source_alpha);
            let t = factor(tgt_free, dk, &a.target_alpha);
            let r = repcheck::case_solve(a.case, *i, &s, &t, a.degree).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(json!({
                "i": i,
                "source_delta": d1.to_string(),
                "target_delta": dk.to_string(),
                "dim": r.space.dim(),
                "basis": r.basis().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            }))
        })
        .collect();
    let mut table = Vec::new();
    let mut ok = true;
    for r in results {
        let v = r?;
        ok &= v["dim"] == 0;
        table.push(v);
    }
    let mut report = json!({"command": "repcheck", "case": a.case, "degree": a.degree, "cells": table});
    if a.rank1 > 0 {
        let s = repcheck::rank1_module_search(a.rank1, a.rank1_degree).map_err(|e| Failure::Usage(e.to_string()))?;
        ok &= s.only_trivial();
        let modules: Vec<Value> = s
            .modules
            .iter()
            .map(|m| {
                let acts: BTreeMap<String, String> = m.actions.iter().map(|(g, p)| (g.to_string(), p.to_string())).collect();
                json!({"kind": format!("{:?}", m.kind), "actions": acts})
            })
            .collect();
        report["rank1"] = json!({
            "truncation": a.rank1,
            "degree": a.rank1_degree,
            "modules": modules,
            "branches": s.branches.iter().map(|b| json!({
                "label": b.label,
                "weights": b.weight_candidates.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                "outcome": b.outcome,
            })).collect::<Vec<_>>(),
            "unresolved": s.unresolved,
            "only_trivial": s.only_trivial(),
        });
    }
    if !ok {
        let w: Vec<String> = table.iter().flat_map(|c| c["basis"].as_array().cloned().unwrap_or_default()).filter_map(|v| v.as_str().map(String::from)).collect();
        report["witness"] = json!(if w.is_empty() { vec!["0".to_string()] } else { w });
    }
    report["passed"] = json!(ok);
    Ok((report, ok))
}

fn parse_cmd(a: &ParseArgs) -> Outcome {
    let text = std::fs::read_to_string(&a.file).map_err(|e| Failure::Usage(format!("{}: {e}", a.file.display())))?;
    let alg = dsl::parse_algebra(&text).map_err(|e| Failure::Usage(format!("{}:{e}", a.file.display())))?;
    Ok((
        json!({
            "command": "parse",
            "algebra": alg.name,
            "generators": alg.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "brackets": alg.table().len(),
            "truncation": alg.truncation(),
            "passed": true,
        }),
        true,
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Cmd::Axioms(a) => axioms(a),
        Cmd::H2(a) => h2(a),
        Cmd::SweepH2(a) => sweep(a),
        Cmd::Classify(a) => classify_cmd(a),
        Cmd::VerifyClosedForm(a) => closed(a),
        Cmd::Repcheck(a) => rep(a),
        Cmd::Parse(a) => parse_cmd(a),
    };
    match outcome {
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok((mut report, ok)) => {
            report["schema"] = json!(1);
            let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
            match &cli.out {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, &text) {
                        eprintln!("error: {}: {e}", p.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
    }
}
