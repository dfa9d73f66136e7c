//! Subcommand implementations.

use std::fmt::Write as _;
use std::fs;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use rothyp::audit::{audit_range, audit_table};
use rothyp::classifier::{classify, hypersphere_matrix, ClassificationCase, SamplingPlan, Tolerances};
use rothyp::geometry::{immerse, shape_spectrum, ChartPoint};
use rothyp::lk::{lk_gauss_closed_at, lk_gauss_numeric, relative_error, FdOptions};
use rothyp::profile::{ProfileCurve, ProfileSpecDocument};
use rothyp::solvers::{fixture_profiles, solve_minimal_profile, MinimalOptions};
use rothyp::symfunc::SymmetricFunctionSet;
use rothyp::Error;

use crate::args::{
    parse_range, parse_real_range, parse_single, AuditArgs, ClassifyArgs, ExportArgs, FixtureArgs, Format, LkArgs,
    MinimalArgs, SpecArgs,
};
use crate::error::CliError;
use crate::report::{to_value, RunReport};

/// Margin left at each end of the profile domain when sampling.
const SAMPLE_MARGIN: f64 = 0.05;
/// Random chart angles are drawn from `(−ANGLE_RANGE, ANGLE_RANGE)`.
const ANGLE_RANGE: f64 = 1.2;

/// A finished command: the report, its text and CSV renderings, and the
/// failure to signal after the report is written.
pub struct Outcome {
    pub report: RunReport,
    pub text: String,
    pub csv: Option<String>,
    pub failure: Option<CliError>,
}

impl Outcome {
    fn ok(report: RunReport, text: String) -> Self {
        Self { report, text, csv: None, failure: None }
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(self.report.to_json()),
            Format::Text => Ok(self.text.clone()),
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| CliError::Usage(format!("`{}` has no CSV output", self.report.command))),
        }
    }
}

struct LoadedSpec {
    doc: ProfileSpecDocument,
    profile: ProfileCurve<f64>,
    n: usize,
}

fn load_spec(args: &SpecArgs) -> Result<LoadedSpec, CliError> {
    let text = fs::read_to_string(&args.spec).map_err(|e| CliError::Io(format!("{}: {e}", args.spec.display())))?;
    let doc: ProfileSpecDocument =
        serde_json::from_str(&text).map_err(|e| CliError::Spec(format!("{}: {e}", args.spec.display())))?;
    let profile = doc.to_profile().map_err(|e| match e {
        Error::InvalidProfile(msg) => CliError::Spec(msg),
        other => CliError::Domain(other),
    })?;
    let n = match &args.n {
        Some(s) => parse_single(s).map_err(CliError::Usage)?,
        None => doc.n,
    };
    if n < 3 {
        return Err(Error::InvalidDimension { n, min: 3 }.into());
    }
    if args.samples == 0 {
        return Err(CliError::Usage("`--samples` must be positive".into()));
    }
    Ok(LoadedSpec { doc, profile, n })
}

fn spec_inputs(args: &SpecArgs, loaded: &LoadedSpec) -> Value {
    json!({ "spec": to_value(&loaded.doc), "n": loaded.n, "samples": args.samples })
}

pub fn curvature(args: &SpecArgs, seed: u64) -> Result<Outcome, CliError> {
    let spec = load_spec(args)?;
    let n = spec.n;
    let mut points = Vec::new();
    let mut text = format!("{:>12} {:>14} {:>14} {:>14} {:>14}\n", "r", "k1", "kj", "H", "K");
    let mut csv = String::from("r,k1,kj,H,K");
    for m in 0..n {
        let _ = write!(csv, ",s{m}");
    }
    csv.push('\n');
    for r in spec.profile.sample_points(args.samples, SAMPLE_MARGIN) {
        let s = shape_spectrum(&spec.profile, r, n)?;
        let set = SymmetricFunctionSet::from_spectrum(&s);
        let table: Vec<f64> = (0..n).map(|m| set.get(m)).collect();
        let _ = writeln!(text, "{r:>12.6} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e}", s.k1, s.kj, s.mean, s.gauss);
        let _ = write!(csv, "{r:e},{:e},{:e},{:e},{:e}", s.k1, s.kj, s.mean, s.gauss);
        for v in &table {
            let _ = write!(csv, ",{v:e}");
        }
        csv.push('\n');
        points.push(json!({ "r": r, "k1": s.k1, "kj": s.kj, "mean": s.mean, "gauss": s.gauss, "s": table }));
    }
    let report = RunReport::new(
        "curvature",
        seed,
        spec_inputs(args, &spec),
        json!({ "sample_margin": SAMPLE_MARGIN }),
        json!({ "points": points }),
    );
    Ok(Outcome { report, text, csv: Some(csv), failure: None })
}

fn random_angles(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n - 2).map(|_| rng.random_range(-ANGLE_RANGE..ANGLE_RANGE)).collect()
}

pub fn lk(args: &LkArgs, seed: u64) -> Result<Outcome, CliError> {
    let spec = load_spec(&args.spec)?;
    let n = spec.n;
    let k = if args.k == "auto" {
        n - 3
    } else {
        args.k.parse::<usize>().map_err(|_| CliError::Usage(format!("`--k {}` is neither an integer nor `auto`", args.k)))?
    };
    if k > n - 2 {
        return Err(Error::InvalidOrder { order: k, max: n - 2 }.into());
    }
    let options = FdOptions::extrapolated(None);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::new();
    let mut worst = 0.0f64;
    let mut text = format!("{:>12} {:>14}\n", "r", "rel_err");
    for r in spec.profile.sample_points(args.spec.samples, SAMPLE_MARGIN) {
        let p = ChartPoint::new(r, random_angles(&mut rng, n));
        let closed = lk_gauss_closed_at(&spec.profile, &p, k)?.vector;
        let numeric = lk_gauss_numeric(&spec.profile, &p, k, &options)?;
        let err = relative_error(&closed, &numeric);
        worst = worst.max(err);
        let _ = writeln!(text, "{r:>12.6} {err:>14.6e}");
        points.push(json!({ "r": r, "angles": p.angles, "closed": closed, "numeric": numeric, "relative_error": err }));
    }
    let _ = writeln!(text, "max relative error {worst:.3e} (tolerance {:.1e})", args.tol);
    let report = RunReport::new(
        "lk",
        seed,
        json!({ "spec": to_value(&spec.doc), "n": n, "k": k, "samples": args.spec.samples }),
        json!({ "max_relative_error": args.tol, "finite_differences": to_value(&options) }),
        json!({ "points": points, "max_relative_error": worst, "within_tolerance": worst < args.tol }),
    );
    let failure = (worst >= args.tol)
        .then(|| CliError::Tolerance(format!("max relative error {worst:e} exceeds {:e}", args.tol)));
    Ok(Outcome { report, text, csv: None, failure })
}

pub fn classify_cmd(args: &ClassifyArgs, seed: u64) -> Result<Outcome, CliError> {
    let spec = load_spec(&args.spec)?;
    let n = spec.n;
    let defaults = Tolerances::default();
    let tol = Tolerances {
        fit: args.tol_fit.unwrap_or(defaults.fit),
        flat: args.tol_flat.unwrap_or(defaults.flat),
        minimal: args.tol_min.unwrap_or(defaults.minimal),
        constancy: defaults.constancy,
    };
    let plan = SamplingPlan { count: args.spec.samples, seed, ..SamplingPlan::default() };
    let inputs = spec_inputs(&args.spec, &spec);
    match classify(&spec.profile, n, &tol, &plan) {
        Ok(v) => {
            let mut outputs = json!({
                "case": v.case.name(),
                "regular": v.regular(),
                "matrix": v.candidate.a.to_rows(),
                "eta": v.candidate.eta,
                "phi_a": v.candidate.phi_a,
                "lambda": v.candidate.lambda,
                "determinant": v.candidate.determinant(),
                "residual": v.candidate.residual,
                "relative_residual": v.candidate.relative_residual,
                "diagnostics": v.diagnostics,
            });
            if v.case == ClassificationCase::Hypersphere {
                if let Some(&rho) = v.diagnostics.get("radius_estimate") {
                    outputs["stated_matrix"] = json!(hypersphere_matrix(rho, n)?.to_rows());
                }
            }
            let text = format!(
                "case {}\nregular {}\ndet A {:.6e}\nrelative residual {:.3e}\n",
                v.case.name(),
                v.regular(),
                v.candidate.determinant(),
                v.candidate.relative_residual
            );
            let report = RunReport::new("classify", seed, inputs, to_value(&tol), outputs);
            Ok(Outcome::ok(report, text))
        }
        Err(Error::Unclassifiable(reason)) => {
            let report = RunReport::new(
                "classify",
                seed,
                inputs,
                to_value(&tol),
                json!({ "case": "unclassifiable", "reason": reason }),
            );
            let text = format!("case unclassifiable\n{reason}\n");
            Ok(Outcome { report, text, csv: None, failure: Some(Error::Unclassifiable(reason).into()) })
        }
        Err(e) => Err(e.into()),
    }
}

pub fn solve_minimal(args: &MinimalArgs, seed: u64) -> Result<Outcome, CliError> {
    let n = parse_single(&args.n).map_err(CliError::Usage)?;
    let f_range = parse_real_range(&args.f_range).map_err(CliError::Usage)?;
    let options = MinimalOptions { samples: args.samples, c2: args.c2, ..MinimalOptions::default() };
    let sol = solve_minimal_profile::<f64>(n, f_range, args.c1, args.branch, options)?;
    let text = format!(
        "n {n}\nreachable f range [{}, {}]{}\nmax |H| {:.3e}\nmax ODE residual {:.3e}\nclosed form error {}\n",
        sol.reachable.0,
        sol.reachable.1,
        if sol.truncated { " (truncated at the neck)" } else { "" },
        sol.max_abs_mean_curvature,
        sol.max_ode_residual,
        sol.max_closed_form_error.map_or("n/a".to_string(), |e| format!("{e:.3e}")),
    );
    let failure = (sol.max_abs_mean_curvature >= args.tol_min).then(|| {
        CliError::Tolerance(format!("max |H| {:e} exceeds {:e}", sol.max_abs_mean_curvature, args.tol_min))
    });
    let csv = sol.to_csv();
    let report = RunReport::new(
        "solve-minimal",
        seed,
        json!({ "n": n, "c1": args.c1, "c2": args.c2, "f_range": [f_range.0, f_range.1], "branch": args.branch, "samples": args.samples }),
        json!({ "integrator": options.tolerance, "max_abs_mean_curvature": args.tol_min }),
        to_value(&sol),
    );
    Ok(Outcome { report, text, csv: Some(csv), failure })
}

pub fn audit(args: &AuditArgs, seed: u64) -> Result<Outcome, CliError> {
    let (a, b) = parse_range(&args.n).map_err(CliError::Usage)?;
    let reports = audit_range(a as i64..=b as i64)?;
    let text = audit_table(&reports);
    let zeros: Vec<i64> = reports.iter().filter(|r| !r.nonvanishing).map(|r| r.n).collect();
    let report = RunReport::new(
        "audit",
        seed,
        json!({ "n": [a, b] }),
        json!({ "arithmetic": "exact" }),
        json!({ "reports": reports, "vanishing_sums": zeros }),
    );
    Ok(Outcome::ok(report, text))
}

pub fn fixtures(args: &FixtureArgs, seed: u64) -> Result<Outcome, CliError> {
    let n = parse_single(&args.n).map_err(CliError::Usage)?;
    let set = fixture_profiles::<f64>(n)?;
    let mut text = String::new();
    let items: Vec<Value> = set
        .iter()
        .map(|fx| {
            let _ = writeln!(text, "{:<10} {}", fx.name, fx.expected.name());
            json!({
                "name": fx.name,
                "expected": fx.expected.name(),
                "spec": to_value(&ProfileSpecDocument::from_profile(&fx.profile, n)),
            })
        })
        .collect();
    let report = RunReport::new("fixtures", seed, json!({ "n": n }), json!({}), json!({ "fixtures": items }));
    Ok(Outcome::ok(report, text))
}

pub fn export(args: &ExportArgs, seed: u64) -> Result<Outcome, CliError> {
    let spec = load_spec(&args.spec)?;
    let n = spec.n;
    let m = args.angle_samples;
    if m == 0 {
        return Err(CliError::Usage("`--angle-samples` must be positive".into()));
    }
    // θ₁ covers the full circle; later angles stay inside (−π/2, π/2).
    let half = std::f64::consts::FRAC_PI_2;
    let first: Vec<f64> = (0..m).map(|i| 2.0 * std::f64::consts::PI * i as f64 / m as f64).collect();
    let rest: Vec<f64> = (0..m).map(|i| -half + std::f64::consts::PI * (i as f64 + 0.5) / m as f64).collect();
    let mut header: Vec<String> = vec!["r".into()];
    header.extend((1..n - 1).map(|j| format!("theta{j}")));
    header.extend((1..=n).map(|j| format!("x{j}")));
    let mut csv = header.join(",") + "\n";
    let mut rows = Vec::new();
    for r in spec.profile.sample_points(args.spec.samples, SAMPLE_MARGIN) {
        let mut index = vec![0usize; n - 2];
        loop {
            let angles: Vec<f64> =
                index.iter().enumerate().map(|(j, &i)| if j == 0 { first[i] } else { rest[i] }).collect();
            let x = immerse(&spec.profile, &ChartPoint::new(r, angles.clone()))?;
            let mut row = vec![r];
            row.extend(&angles);
            row.extend(&x);
            csv.push_str(&row.iter().map(|v| format!("{v:e}")).collect::<Vec<_>>().join(","));
            csv.push('\n');
            rows.push(row);
            let mut j = 0;
            while j < index.len() {
                index[j] += 1;
                if index[j] < m {
                    break;
                }
                index[j] = 0;
                j += 1;
            }
            if j == index.len() {
                break;
            }
        }
    }
    let text = format!("{} points in R^{n}\n", rows.len());
    let mut inputs = spec_inputs(&args.spec, &spec);
    inputs["angle_samples"] = json!(m);
    let report = RunReport::new("export", seed, inputs, json!({}), json!({ "columns": header, "rows": rows }));
    Ok(Outcome { report, text, csv: Some(csv), failure: None })
}
