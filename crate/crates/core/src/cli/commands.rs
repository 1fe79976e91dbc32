use std::path::Path;
use std::sync::Arc;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::algebra::{build_algebra, AlgebraData, Presentation};
use crate::boxes::{check_e22, rep_from_complex, SlicedBox};
use crate::complexes::{homology, iso_test, minimalize, write_complex, ComplexFile, ProjComplex, VectorRank};
use crate::corpus;
use crate::deformations::{brustle_family, dim_scan, flat_limit, par_scan, AlgebraFamily, Grid};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::families::{estimate_par, rank_brackets, tame_heuristic, Ideal, ParMode, ParOptions};
use crate::field::{parse_rational, Field, FieldSpec, PrimeField, Rationals};

use super::report::{digest, read_input, InputDigest, Report};
use super::{AlgebraAction, BoxAction, BrustleAction, Cli, Command, ComplexAction, FamilyAction, ParAction};

macro_rules! over_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            FieldSpec::Rationals => {
                let $f = Rationals;
                $body
            }
            FieldSpec::Prime(p) => {
                let $f = PrimeField::new(p)?;
                $body
            }
        }
    };
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report payload serializes")
}

fn field_override(cli: &Cli) -> Result<Option<FieldSpec>> {
    cli.field.as_deref().map(FieldSpec::parse).transpose()
}

fn parse_window(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::invalid(format!("cannot read window `{s}`; expected lo..top"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let lo: i64 = a.trim().parse().map_err(|_| bad())?;
    let top: i64 = b.trim().parse().map_err(|_| bad())?;
    Ok((lo, top))
}

fn parse_free_ranks(s: &str) -> Result<Vec<usize>> {
    let b = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::invalid(format!("bad free rank `{}`", t.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    if b.is_empty() {
        return Err(Error::invalid("empty free-rank sequence"));
    }
    Ok(b)
}

fn parse_point(s: &str) -> Result<BigRational> {
    parse_rational(s.trim()).ok_or_else(|| Error::invalid(format!("cannot read `{s}` as a rational")))
}

fn default_grid(spec: FieldSpec) -> Grid {
    match spec {
        FieldSpec::Prime(_) => Grid::All,
        FieldSpec::Rationals => Grid::Points((0..=4).map(|x| BigRational::from_integer(x.into())).collect()),
    }
}

/// Run a parsed command. The integer is the exit code for a completed run:
/// 0, or 1 when a check fails.
pub fn execute(cli: &Cli) -> Result<(Report, i32)> {
    let field = field_override(cli)?;
    let mut inputs = Vec::new();
    let (name, options, payload, code) = match &cli.command {
        Command::Algebra {
            action: AlgebraAction::Inspect { path },
        } => {
            let pres = load_presentation(path, &mut inputs)?;
            let spec = field.unwrap_or(pres.field);
            let payload = over_field!(spec, f => inspect(&build_algebra(f, &pres)?));
            ("algebra inspect", json!({ "field": spec.to_string() }), payload, 0)
        }
        Command::Box {
            action: BoxAction::Build { path, window, full },
        } => {
            let (lo, top) = parse_window(window)?;
            let pres = load_presentation(path, &mut inputs)?;
            let spec = field.unwrap_or(pres.field);
            let payload = over_field!(spec, f => {
                let b = SlicedBox::build(Arc::new(build_algebra(f, &pres)?), lo, top)?;
                let mut v = json!({ "census": to_value(&b.census()) });
                if *full {
                    v["box"] = to_value(&b.describe());
                }
                v
            });
            let options = json!({ "field": spec.to_string(), "window": [lo, top], "full": full });
            ("box build", options, payload, 0)
        }
        Command::Complex { action } => complex_command(action, field, cli.seed, &mut inputs)?,
        Command::Par {
            action:
                ParAction::Estimate {
                    path,
                    ranks,
                    lo,
                    ideal,
                    mode,
                    samples,
                    cap,
                },
        } => {
            let mode = ParMode::parse(mode)?;
            let ideal = Ideal::parse(ideal)?;
            let ranks = VectorRank::parse(ranks, *lo)?;
            let pres = load_presentation(path, &mut inputs)?;
            let spec = field.unwrap_or(pres.field);
            let opts = ParOptions {
                mode,
                seed: cli.seed,
                samples: *samples,
                cap: *cap,
                ..ParOptions::default()
            };
            let est = estimate_par(&pres, spec, &ranks, ideal, &opts)?;
            let tame = tame_heuristic(&ranks, &est);
            let brackets = rank_brackets(&ranks, &vec![1; ranks.vertex_count()])?;
            let options = json!({
                "field": spec.to_string(),
                "ranks": ranks.tuples(),
                "lo": lo,
                "ideal": ideal.to_string(),
                "mode": mode,
                "seed": cli.seed,
                "samples": samples,
                "cap": cap,
            });
            let payload = json!({
                "estimate": to_value(&est),
                "tame_heuristic": to_value(&tame),
                "free_rank_brackets": to_value(&brackets),
            });
            ("par estimate", options, payload, 0)
        }
        Command::Family { action } => family_command(action, field, cli.seed, &mut inputs)?,
        Command::Brustle {
            action: BrustleAction::Demo { ranks },
        } => {
            let b = parse_free_ranks(ranks)?;
            inputs.push(digest("<bundled brustle family>", corpus::BRUSTLE_FAMILY.as_bytes()));
            let payload = brustle_demo(&b, cli.seed)?;
            ("brustle demo", json!({ "ranks": b, "seed": cli.seed }), payload, 0)
        }
    };
    let mut options = options;
    options["seed"] = json!(cli.seed);
    Ok((
        Report {
            tool: "quiverbox",
            version: env!("CARGO_PKG_VERSION"),
            subcommand: name.to_string(),
            inputs,
            options,
            payload,
        },
        code,
    ))
}

type Outcome = (&'static str, Value, Value, i32);

fn load_presentation(path: &Path, inputs: &mut Vec<InputDigest>) -> Result<Presentation> {
    let text = read_input(path, inputs)?;
    let pres = Presentation::parse(&text)?;
    if pres.uses_lambda() {
        return Err(Error::invalid(format!(
            "{} has relations depending on lambda; use the family subcommands",
            path.display()
        )));
    }
    Ok(pres)
}

fn inspect<F: Field>(alg: &AlgebraData<F>) -> Value {
    let f = alg.field();
    let q = alg.quiver();
    let nu: Vec<Value> = (0..alg.dim())
        .filter(|&k| alg.is_radical(k))
        .map(|k| {
            let terms: Vec<Value> = alg
                .nu(k)
                .iter()
                .map(|t| json!([alg.label(t.gamma), alg.label(t.beta), f.format(&t.coeff)]))
                .collect();
            json!({ "element": alg.label(k), "terms": terms })
        })
        .collect();
    json!({
        "field": f.name(),
        "dim": alg.dim(),
        "vertices": alg.vertex_count(),
        "arrows": q.arrows().iter().map(|a| json!({
            "name": a.name,
            "source": a.source + 1,
            "target": a.target + 1,
        })).collect::<Vec<_>>(),
        "basis": (0..alg.dim()).map(|k| alg.label(k)).collect::<Vec<_>>(),
        "peirce_dims": alg.peirce_dims(),
        "radical_dims": alg.radical_dims(),
        "nilpotency_index": alg.nilpotency_index(),
        "groebner_basis": alg.groebner().iter().map(|g| g.format(f, q)).collect::<Vec<_>>(),
        "nu": nu,
        "invariants": to_value(&alg.check_invariants()),
    })
}

struct LoadedComplex {
    file: ComplexFile,
    pres: Presentation,
}

fn load_complex(path: &Path, inputs: &mut Vec<InputDigest>) -> Result<LoadedComplex> {
    let text = read_input(path, inputs)?;
    let file = ComplexFile::parse(&text)?;
    let alg_path = path.parent().unwrap_or(Path::new(".")).join(&file.algebra);
    let pres = load_presentation(&alg_path, inputs)?;
    Ok(LoadedComplex { file, pres })
}

fn complex_command(
    action: &ComplexAction,
    field: Option<FieldSpec>,
    seed: u64,
    inputs: &mut Vec<InputDigest>,
) -> Result<Outcome> {
    let first = match action {
        ComplexAction::Check { path }
        | ComplexAction::Homology { path }
        | ComplexAction::Minimalize { path }
        | ComplexAction::Iso { path, .. } => load_complex(path, inputs)?,
    };
    let spec = field.unwrap_or(first.pres.field);
    let second = match action {
        ComplexAction::Iso { other, .. } => Some(load_complex(other, inputs)?),
        _ => None,
    };
    if let Some(s) = &second {
        if s.pres != first.pres {
            return Err(Error::AlgebraMismatch);
        }
    }
    let options = json!({ "field": spec.to_string(), "seed": seed });
    over_field!(spec, f => {
        let alg = Arc::new(build_algebra(f, &first.pres)?);
        let c = first.file.build(alg.clone())?;
        Ok(match action {
            ComplexAction::Check { .. } => {
                let (payload, ok) = check_complex(&c)?;
                ("complex check", options, payload, if ok { 0 } else { 1 })
            }
            ComplexAction::Homology { .. } => {
                ("complex homology", options, json!({ "homology": to_value(&homology(&c)) }), 0)
            }
            ComplexAction::Minimalize { .. } => {
                if let Some(n) = c.check_dsquared() {
                    return Err(Error::invalid(format!("d_{} d_{n} is not zero", n - 1)));
                }
                let m = minimalize(&c)?;
                let payload = json!({
                    "input_ranks": c.ranks().tuples(),
                    "ranks": m.ranks().tuples(),
                    "lo": m.lo(),
                    "complex": write_complex(&m, &first.file.algebra),
                });
                ("complex minimalize", options, payload, 0)
            }
            ComplexAction::Iso { .. } => {
                let other = second.as_ref().expect("iso has two inputs").file.build(alg)?;
                let v = iso_test(&c, &other, seed)?;
                ("complex iso", options, json!({ "verdict": to_value(&v) }), 0)
            }
        })
    })
}

fn check_complex<F: Field>(c: &ProjComplex<F>) -> Result<(Value, bool)> {
    let failing = c.check_dsquared();
    let minimal = c.is_minimal();
    let e22 = if minimal {
        let b = SlicedBox::build(c.algebra().clone(), c.lo(), c.top())?;
        Some(check_e22(&b, &rep_from_complex(&b, c)?)?)
    } else {
        None
    };
    let ok = failing.is_none();
    if e22.is_some_and(|e| e != ok) {
        return Err(Error::Invariant("box relations and d² disagree".into()));
    }
    Ok((
        json!({
            "lo": c.lo(),
            "ranks": c.ranks().tuples(),
            "dsquared_zero": ok,
            "failing_degree": failing,
            "minimal": minimal,
            "box_relations_hold": e22,
            "pass": ok,
        }),
        ok,
    ))
}

fn family_command(
    action: &FamilyAction,
    field: Option<FieldSpec>,
    seed: u64,
    inputs: &mut Vec<InputDigest>,
) -> Result<Outcome> {
    let path = match action {
        FamilyAction::Dims { path, .. } | FamilyAction::Flatlimit { path, .. } | FamilyAction::Parscan { path, .. } => {
            path
        }
    };
    let text = read_input(path, inputs)?;
    let fam = AlgebraFamily::parse(&text)?;
    let spec = field.unwrap_or(fam.field_spec());
    let grid_of = |g: &Option<String>| g.as_deref().map(Grid::parse).transpose().map(|g| g.unwrap_or(default_grid(spec)));
    match action {
        FamilyAction::Dims { grid, .. } => {
            let grid = grid_of(grid)?;
            let rep = over_field!(spec, f => dim_scan(&fam, &f, &grid, Execution::default())?);
            let options = json!({ "field": spec.to_string(), "grid": grid.to_string() });
            Ok(("family dims", options, to_value(&rep), 0))
        }
        FamilyAction::Flatlimit { at, .. } => {
            let at = parse_point(at)?;
            let rep = over_field!(spec, f => {
                let x = f.from_rational(&at)?;
                flat_limit(&fam, f, &x)?.describe()
            });
            let options = json!({ "field": spec.to_string(), "at": crate::field::format_rational(&at) });
            Ok(("family flatlimit", options, to_value(&rep), 0))
        }
        FamilyAction::Parscan { ranks, grid, mode, at, .. } => {
            let b = parse_free_ranks(ranks)?;
            let grid = grid_of(grid)?;
            let mode = ParMode::parse(mode)?;
            let at = parse_point(at)?;
            let opts = ParOptions {
                mode,
                seed,
                ..ParOptions::default()
            };
            let scan = par_scan(&fam, spec, &b, &grid, &at, &opts)?;
            let options = json!({
                "field": spec.to_string(),
                "ranks": b,
                "grid": grid.to_string(),
                "mode": mode,
                "at": crate::field::format_rational(&at),
                "seed": seed,
            });
            Ok(("family parscan", options, to_value(&scan), 0))
        }
    }
}

fn brustle_demo(b: &[usize], seed: u64) -> Result<Value> {
    let fam = brustle_family();
    let dims = dim_scan(&fam, &Rationals, &Grid::parse("0,1,2")?, Execution::default())?;
    let zero = BigRational::from_integer(0.into());
    let limit = flat_limit(&fam, Rationals, &zero)?.describe();
    let opts = ParOptions {
        mode: ParMode::TangentBound,
        seed,
        ..ParOptions::default()
    };
    let table = par_scan(&fam, FieldSpec::Prime(3), b, &Grid::parse("0,1")?, &zero, &opts)?;
    Ok(json!({
        "dims": to_value(&dims),
        "flat_limit": to_value(&limit),
        "par_table": to_value(&table),
        "note": "the special fibre is a derived tame algebra; that claim is not checked here",
    }))
}
