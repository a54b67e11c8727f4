// SPDX-License-Identifier: Apache-2.0

mod args;

use std::process::ExitCode;

use clap::Parser;
use realforms::explorer::{empirical_orbit_census, FlowConfig};
use realforms::geometry::orbit_dimension;
use realforms::triality::{audit_so53_conditions, verify_theta_automorphism};
use realforms::{
    check_conditions, classify, classify_manifolds, max_parabolic_classes, Error, ExactPoint, Result, Series,
};
use serde_json::{json, Value};

use args::{Cli, Command, Config, Format, FormArgs, TolArgs};

/// What a subcommand produced: a JSON document, its text rendering, and
/// whether the checked property held.
struct Outcome {
    json: Value,
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Self { json, text, ok: true }
    }
}

fn point_arg(point: Option<String>, cfg: &Config) -> Result<ExactPoint> {
    let s = point.or_else(|| cfg.str("point")).ok_or_else(|| Error::Domain("missing --point".into()))?;
    s.parse()
}

fn run(cli: Cli) -> Result<(Outcome, Format)> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    cfg.check_keys()?;
    let format = match (cli.format, cfg.str("format").as_deref()) {
        (Some(f), _) => f,
        (None, None | Some("json")) => Format::Json,
        (None, Some("text")) => Format::Text,
        (None, Some(other)) => return Err(Error::Parse(format!("unknown format `{other}`"))),
    };
    let float = |flag: bool| flag || cfg.bool("float");
    let out = match cli.command {
        Command::Classify { form, point, float: f, tol } => {
            classify_cmd(form.merge(&cfg), point_arg(point, &cfg)?, float(f), tol.merge(&cfg))?
        }
        Command::OrbitDim { form, point, float: f, tol } => {
            orbit_dim_cmd(form.merge(&cfg), point_arg(point, &cfg)?, float(f), tol.merge(&cfg))?
        }
        Command::ClassifyManifolds { form } => {
            let form = form.merge(&cfg);
            let r = classify_manifolds(&form.spec()?, form.n()?)?;
            Outcome::ok(serde_json::to_value(&r).expect("serializable"), r.statement())
        }
        Command::CheckConditions { form } => {
            let form = form.merge(&cfg);
            let r = check_conditions(&form.spec()?, form.n()?)?;
            let models: Vec<String> = r.models.iter().map(ToString::to_string).collect();
            let text = format!(
                "{} on n = {}: complexification {}, k = {}\n  (>) {}\n  (=) {}\n  status: {}{}",
                r.name,
                r.n,
                r.tag,
                r.k,
                r.condition_greater,
                r.condition_equal,
                serde_json::to_value(r.status).expect("serializable").as_str().unwrap_or_default(),
                if models.is_empty() { String::new() } else { format!("\n  models: {}", models.join(", ")) },
            );
            Outcome::ok(serde_json::to_value(&r).expect("serializable"), text)
        }
        Command::ParabolicTable { series, k } => {
            let series: Series = series
                .or_else(|| cfg.str("series"))
                .ok_or_else(|| Error::Domain("missing --series".into()))?
                .parse()?;
            let k = k.or_else(|| cfg.usize("k")).ok_or_else(|| Error::Domain("missing --k".into()))?;
            let info = max_parabolic_classes(series, k)?;
            let mut text = format!("{} (dim {})\n", info.tag, info.algebra_dim);
            for row in &info.rows {
                let mark = if row.is_max { " *" } else { "" };
                let variant = serde_json::to_value(row.variant).expect("serializable");
                let name = format!("{}_{}", variant.as_str().unwrap_or("?"), row.m);
                text += &format!("  {name:<7} dim {:>4}  codim {:>3}{mark}\n", row.dim, row.codim);
            }
            for c in &info.classes {
                text += &format!("  max: {} -> {} under {}\n", c.subspace.label(), c.quotient, c.group);
            }
            text += &format!("  classes: {} (expected {})", info.classes.len(), info.expected_class_count);
            Outcome { ok: info.count_matches(), json: serde_json::to_value(&info).expect("serializable"), text }
        }
        Command::VerifyTriality => {
            let report = verify_theta_automorphism();
            let audit = audit_so53_conditions();
            let ok = report.passed() && audit.twisted_basis_satisfies_all;
            let text = format!(
                "theta: {}/{} bracket pairs, invertible {}, inverse round trip {}, theta^3 automorphism {}, coefficients in {{0, 1/2, -1/2}} {}\n\
                 so(5,3) conditions: {} ({} independent), solution {}/{} real dims, twisted form {} real dims, contained {}",
                report.pairs_passed,
                report.pairs_checked,
                report.invertible,
                report.inverse_round_trip,
                report.cube_is_automorphism,
                report.nonzero_coefficients_are_halves,
                audit.conditions,
                audit.independent_conditions,
                audit.solution_real_dim,
                audit.ambient_real_dim,
                audit.twisted_form_real_dim,
                audit.twisted_basis_satisfies_all,
            );
            Outcome { json: json!({ "passed": ok, "triality": report, "so53_audit": audit }), text, ok }
        }
        Command::Explore { form, samples, constructed, seed, tol } => {
            let spec = form.merge(&cfg).spec()?;
            let samples = samples.or_else(|| cfg.usize("samples")).unwrap_or(1000);
            let constructed = constructed.or_else(|| cfg.usize("constructed")).unwrap_or(20);
            let seed = match seed {
                Some(s) => s,
                None => cfg.int("seed").map_or(Ok(0), |s| u64::try_from(s).map_err(|_| Error::Domain("seed must be >= 0".into())))?,
            };
            let fc = FlowConfig { seed, tol: tol.merge(&cfg).tolerances()?, ..Default::default() };
            let r = empirical_orbit_census(&spec, samples, constructed, &fc)?;
            let mut text = format!("{}: {} samples on a flag manifold of dim {}, seed {}\n", r.name, r.samples, r.n, r.seed);
            for (title, map) in [("sampled", &r.sampled), ("constructed", &r.constructed)] {
                for (label, s) in map {
                    text += &format!(
                        "  {title:<11} {label:<16} count {:>6}  dim {}..{} (expected {})  uncertain {}\n",
                        s.count, s.min_dim, s.max_dim, s.expected_dim, s.uncertain
                    );
                }
            }
            for m in &r.mismatches {
                text += &format!("  mismatch: {m}\n");
            }
            text += if r.passed() { "  PASS" } else { "  FAIL" };
            Outcome { ok: r.passed(), json: serde_json::to_value(&r).expect("serializable"), text }
        }
    };
    Ok((out, format))
}

fn classify_cmd(form: FormArgs, z: ExactPoint, float: bool, tol: TolArgs) -> Result<Outcome> {
    let spec = form.spec()?;
    let tol = tol.tolerances()?;
    let c = if float { classify(&spec, &z.to_float(), &tol)? } else { classify(&spec, &z, &tol)? };
    let mut text = c.name.clone();
    if let (Some(f), Some(v)) = (&c.form, &c.form_value) {
        text += &format!("  ({f} = {})", v.as_str().map_or_else(|| v.to_string(), str::to_owned));
    }
    text += &format!("  expected orbit dim {}", c.expected_dim);
    if c.boundary_uncertain {
        text += "  [boundary-uncertain]";
    }
    let json = json!({
        "spec": spec,
        "name": spec.to_string(),
        "point": z.canonical().to_json(),
        "mode": if float { "float" } else { "exact" },
        "classification": c,
    });
    Ok(Outcome::ok(json, text))
}

fn orbit_dim_cmd(form: FormArgs, z: ExactPoint, float: bool, tol: TolArgs) -> Result<Outcome> {
    let spec = form.spec()?;
    let tol = tol.tolerances()?;
    let (dim, c) = if float {
        let w = z.to_float();
        (orbit_dimension(&spec, &w, &tol)?, classify(&spec, &w, &tol)?)
    } else {
        (orbit_dimension(&spec, &z, &tol)?, classify(&spec, &z, &tol)?)
    };
    let ok = dim == c.expected_dim;
    let text = format!("{dim}  ({}, expected {})", c.name, c.expected_dim);
    let json = json!({
        "spec": spec,
        "name": spec.to_string(),
        "point": z.canonical().to_json(),
        "mode": if float { "float" } else { "exact" },
        "orbit_dim": dim,
        "label": c.name,
        "expected_dim": c.expected_dim,
        "matches": ok,
    });
    Ok(Outcome { json, text, ok })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, format)) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
                Format::Text => println!("{}", out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
