//! Command-line reports over the model catalog: curvature tables, nullity
//! membership checks, least-squares coefficient fits, closed-form
//! classification, and seeded feasibility searches over non-Hopf frame states.
//!
//! Every report carries the schema tag `nullity-lab/1` and serializes with a
//! fixed field order, so the same invocation (seed included) produces
//! byte-identical output. Exit codes: 0 when every reported check passes,
//! 1 when a check fails, 2 on configuration or usage errors. Configuration
//! errors print a JSON error object regardless of the requested format.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nullity_core::models::{ModelFamily, ModelSpec};
use nullity_core::nonhopf::{feasibility_search, SamplerConfig, SearchOutcome};
use nullity_core::nullity::{
    classify_model, fit_nullity, membership_residual, ModelClassification, NullityFamily,
    NullityFit,
};
use nullity_core::{AmbientSpace, Error};

const SCHEMA: &str = "nullity-lab/1";

#[derive(Parser)]
#[command(name = "nullity-lab", version, about = "Nullity diagnostics for real hypersurfaces in complex space forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate closed-form against fitted kappa over a radius grid
    Table(TableArgs),
    /// Check nullity membership of a catalog model at given coefficients
    Verify(VerifyArgs),
    /// Fit nullity coefficients to a catalog model by least squares
    Fit(FitArgs),
    /// Report the closed-form classification data of a catalog model
    Classify(ClassifyArgs),
    /// Search non-Hopf frame states for a nullity-compatible configuration
    NonhopfSearch(SearchArgs),
}

/// Sign convention for the ambient space, standing in for an explicit `--c`.
#[derive(Copy, Clone, Eq, PartialEq, ValueEnum)]
enum Ambient {
    /// Complex projective space, c > 0 (default c = 4)
    Cp,
    /// Complex hyperbolic space, c < 0 (default c = -4)
    Ch,
}

impl Ambient {
    fn name(self) -> &'static str {
        match self {
            Ambient::Cp => "cp",
            Ambient::Ch => "ch",
        }
    }
}

#[derive(Debug, Copy, Clone, Eq, PartialEq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

/// Flags shared by every command that builds a catalog model.
#[derive(Args)]
struct ModelArgs {
    /// Ambient sign; defaults to the family's natural sign
    #[arg(long, value_enum)]
    ambient: Option<Ambient>,
    /// Model family, e.g. ch-geodesic-sphere
    #[arg(long)]
    family: ModelFamily,
    /// Complex dimension of the ambient space
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Holomorphic sectional curvature; defaults to +4 or -4 per ambient
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    /// Core sub-space complex dimension, for the tube-over-sub-space families
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Single radius (alternative to a grid)
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["r_min", "r_max", "steps"])]
    r: Option<f64>,
    /// Grid start radius
    #[arg(long, allow_negative_numbers = true, requires = "r_max")]
    r_min: Option<f64>,
    /// Grid end radius
    #[arg(long, allow_negative_numbers = true, requires = "r_min")]
    r_max: Option<f64>,
    /// Number of grid points (>= 1)
    #[arg(long, requires = "r_min")]
    steps: Option<usize>,
    /// Largest allowed |fitted - closed-form| per row
    #[arg(long, default_value_t = 1e-10, allow_negative_numbers = true)]
    tolerance: f64,
    #[arg(long, value_enum, default_value = "json")]
    output: OutputFormat,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Radius, for families that take one
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
    /// Nullity family: K, KM, or KMN
    #[arg(long)]
    nullity: NullityFamily,
    /// Constant curvature coefficient
    #[arg(long, allow_negative_numbers = true)]
    kappa: f64,
    /// Shape-operator coefficient (ignored for K)
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    mu: f64,
    /// Structure-tensor coefficient (ignored below KMN)
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    nu: f64,
    /// Largest residual accepted as membership
    #[arg(long, default_value_t = 1e-10, allow_negative_numbers = true)]
    tolerance: f64,
    #[arg(long, value_enum, default_value = "json")]
    output: OutputFormat,
}

#[derive(Args)]
struct FitArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Radius, for families that take one
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
    /// Nullity family: K, KM, or KMN
    #[arg(long)]
    nullity: NullityFamily,
    #[arg(long, value_enum, default_value = "json")]
    output: OutputFormat,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Radius, for families that take one
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    output: OutputFormat,
}

#[derive(Args)]
struct SearchArgs {
    /// Ambient sign; defaults to cp when neither this nor --c is given
    #[arg(long, value_enum)]
    ambient: Option<Ambient>,
    /// Holomorphic sectional curvature; defaults to +4 or -4 per ambient
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    /// Nullity family to force: K, KM, or KMN
    #[arg(long)]
    nullity: NullityFamily,
    /// Sampler seed
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Number of sampled states
    #[arg(long, default_value_t = 100_000)]
    count: usize,
    /// Slack allowed below the analytic lower bound
    #[arg(long, default_value_t = 1e-10, allow_negative_numbers = true)]
    tolerance: f64,
    #[arg(long, value_enum, default_value = "json")]
    output: OutputFormat,
}

#[derive(Serialize)]
struct ErrorReport {
    schema: &'static str,
    error: String,
}

#[derive(Serialize)]
struct TableReport {
    schema: &'static str,
    command: &'static str,
    family: ModelFamily,
    c: f64,
    n: usize,
    tolerance: f64,
    pass: bool,
    rows: Vec<TableRow>,
}

#[derive(Serialize)]
struct TableRow {
    r: Option<f64>,
    alpha: f64,
    lambdas: Vec<f64>,
    kappa_closed_form: f64,
    kappa_fitted: f64,
    abs_delta: f64,
    pass: bool,
}

#[derive(Serialize)]
struct VerifyReport {
    schema: &'static str,
    command: &'static str,
    family: ModelFamily,
    c: f64,
    n: usize,
    r: Option<f64>,
    k: Option<usize>,
    nullity: NullityFamily,
    kappa: f64,
    mu: f64,
    nu: f64,
    residual: f64,
    tolerance: f64,
    pass: bool,
}

#[derive(Serialize)]
struct FitReport {
    schema: &'static str,
    command: &'static str,
    family: ModelFamily,
    c: f64,
    n: usize,
    r: Option<f64>,
    k: Option<usize>,
    fit: NullityFit,
}

#[derive(Serialize)]
struct ClassifyReport {
    schema: &'static str,
    command: &'static str,
    n: usize,
    r: Option<f64>,
    k: Option<usize>,
    classification: ModelClassification,
}

#[derive(Serialize)]
struct SearchReport {
    schema: &'static str,
    command: &'static str,
    tolerance: f64,
    pass: bool,
    outcome: SearchOutcome,
}

/// A fully rendered report, ready to print in either format.
struct Rendered {
    json: String,
    csv: String,
    pass: bool,
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => {}
        Ok(false) => std::process::exit(1),
        Err(err) => {
            let report = ErrorReport { schema: SCHEMA, error: err.to_string() };
            println!("{}", to_json(&report));
            std::process::exit(2);
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Error> {
    let (rendered, output) = match &cli.command {
        Command::Table(a) => (cmd_table(a)?, a.output),
        Command::Verify(a) => (cmd_verify(a)?, a.output),
        Command::Fit(a) => (cmd_fit(a)?, a.output),
        Command::Classify(a) => (cmd_classify(a)?, a.output),
        Command::NonhopfSearch(a) => (cmd_nonhopf_search(a)?, a.output),
    };
    match output {
        OutputFormat::Json => println!("{}", rendered.json),
        OutputFormat::Csv => print!("{}", rendered.csv),
    }
    Ok(rendered.pass)
}

/// Resolves the curvature constant from the flag set. An explicit `--c` wins
/// but must agree in sign with `--ambient` when both are present; otherwise
/// the ambient (or the family's own sign, or cp as a last resort) picks the
/// normalized value.
fn resolve_c(
    ambient: Option<Ambient>,
    c: Option<f64>,
    family: Option<ModelFamily>,
) -> Result<f64, Error> {
    if let Some(c) = c {
        if !c.is_finite() || c == 0.0 {
            return Err(Error::InvalidAmbient(format!(
                "holomorphic sectional curvature must be finite and nonzero, got {c}"
            )));
        }
        if let Some(a) = ambient {
            let agrees = match a {
                Ambient::Cp => c > 0.0,
                Ambient::Ch => c < 0.0,
            };
            if !agrees {
                return Err(Error::InvalidAmbient(format!(
                    "--c {c} contradicts --ambient {}",
                    a.name()
                )));
            }
        }
        return Ok(c);
    }
    if let Some(a) = ambient {
        return Ok(match a {
            Ambient::Cp => 4.0,
            Ambient::Ch => -4.0,
        });
    }
    Ok(match family.map(|f| f.curvature_sign()) {
        Some(-1) => -4.0,
        _ => 4.0,
    })
}

fn build_spec(model: &ModelArgs, r: Option<f64>) -> Result<ModelSpec, Error> {
    let c = resolve_c(model.ambient, model.c, Some(model.family))?;
    let ambient = AmbientSpace::new(c, model.n)?;
    if model.family == ModelFamily::HopfAxiZero {
        if r.is_some() {
            return Err(Error::InvalidModel("hopf-axi-zero takes no radius".into()));
        }
        if model.k.is_some() {
            return Err(Error::InvalidModel(
                "hopf-axi-zero takes no sub-space dimension".into(),
            ));
        }
        return ModelSpec::axi_zero_default(ambient);
    }
    ModelSpec::new(ambient, model.family, r, model.k)
}

/// Expands the radius flags into the grid of model radii, or `[None]` for
/// families that take no radius.
fn radius_grid(a: &TableArgs) -> Result<Vec<Option<f64>>, Error> {
    if !a.model.family.requires_radius() {
        if a.r.is_some() || a.r_min.is_some() || a.r_max.is_some() || a.steps.is_some() {
            return Err(Error::InvalidModel(format!(
                "family {} takes no radius",
                a.model.family
            )));
        }
        return Ok(vec![None]);
    }
    if let Some(r) = a.r {
        return Ok(vec![Some(r)]);
    }
    let (Some(lo), Some(hi)) = (a.r_min, a.r_max) else {
        return Err(Error::InvalidModel(
            "a radius table needs --r or --r-min/--r-max/--steps".into(),
        ));
    };
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(Error::InvalidModel(format!("invalid radius range [{lo}, {hi}]")));
    }
    let steps = a.steps.unwrap_or(1);
    if steps < 1 {
        return Err(Error::InvalidModel("steps must be at least 1".into()));
    }
    if steps == 1 {
        return Ok(vec![Some(lo)]);
    }
    let span = hi - lo;
    Ok((0..steps)
        .map(|i| Some(lo + span * i as f64 / (steps - 1) as f64))
        .collect())
}

fn cmd_table(a: &TableArgs) -> Result<Rendered, Error> {
    let c = resolve_c(a.model.ambient, a.model.c, Some(a.model.family))?;
    if tolerance_invalid(a.tolerance) {
        return Err(invalid_tolerance(a.tolerance));
    }
    let mut rows = Vec::new();
    for r in radius_grid(a)? {
        let spec = build_spec(&a.model, r)?;
        let closed = spec.kappa_closed_form().ok_or_else(|| {
            Error::InvalidModel(format!(
                "family {} has no closed-form kappa column",
                a.model.family
            ))
        })?;
        let data = spec.principal_data()?;
        let frame = spec.build_frame()?;
        let fit = fit_nullity(&frame, NullityFamily::K);
        let abs_delta = (fit.kappa - closed).abs();
        rows.push(TableRow {
            r,
            alpha: data.alpha,
            lambdas: data.distinct_lambdas(),
            kappa_closed_form: closed,
            kappa_fitted: fit.kappa,
            abs_delta,
            pass: abs_delta <= a.tolerance,
        });
    }
    let pass = rows.iter().all(|row| row.pass);
    let report = TableReport {
        schema: SCHEMA,
        command: "table",
        family: a.model.family,
        c,
        n: a.model.n,
        tolerance: a.tolerance,
        pass,
        rows,
    };
    let mut csv = String::from("r,alpha,lambdas,kappa_closed_form,kappa_fitted,abs_delta,pass\n");
    for row in &report.rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            opt_sig17(row.r),
            sig17(row.alpha),
            join_sig17(&row.lambdas),
            sig17(row.kappa_closed_form),
            sig17(row.kappa_fitted),
            sig17(row.abs_delta),
            row.pass
        ));
    }
    Ok(Rendered { json: to_json(&report), csv, pass })
}

fn cmd_verify(a: &VerifyArgs) -> Result<Rendered, Error> {
    if tolerance_invalid(a.tolerance) {
        return Err(invalid_tolerance(a.tolerance));
    }
    let spec = build_spec(&a.model, a.r)?;
    let frame = spec.build_frame()?;
    let (mu, nu) = a.nullity.mask(a.mu, a.nu);
    let residual = membership_residual(&frame, a.nullity, a.kappa, mu, nu);
    let pass = residual <= a.tolerance;
    let report = VerifyReport {
        schema: SCHEMA,
        command: "verify",
        family: a.model.family,
        c: spec.ambient().c(),
        n: a.model.n,
        r: a.r,
        k: a.model.k,
        nullity: a.nullity,
        kappa: a.kappa,
        mu,
        nu,
        residual,
        tolerance: a.tolerance,
        pass,
    };
    let csv = format!(
        "family,c,n,r,k,nullity,kappa,mu,nu,residual,tolerance,pass\n{},{},{},{},{},{},{},{},{},{},{},{}\n",
        report.family,
        sig17(report.c),
        report.n,
        opt_sig17(report.r),
        opt_int(report.k),
        report.nullity,
        sig17(report.kappa),
        sig17(report.mu),
        sig17(report.nu),
        sig17(report.residual),
        sig17(report.tolerance),
        report.pass
    );
    Ok(Rendered { json: to_json(&report), csv, pass })
}

fn cmd_fit(a: &FitArgs) -> Result<Rendered, Error> {
    let spec = build_spec(&a.model, a.r)?;
    let frame = spec.build_frame()?;
    let fit = fit_nullity(&frame, a.nullity);
    let report = FitReport {
        schema: SCHEMA,
        command: "fit",
        family: a.model.family,
        c: spec.ambient().c(),
        n: a.model.n,
        r: a.r,
        k: a.model.k,
        fit,
    };
    let csv = format!(
        "family,c,n,r,k,nullity,kappa,mu,nu,residual,solution_dim\n{},{},{},{},{},{},{},{},{},{},{}\n",
        report.family,
        sig17(report.c),
        report.n,
        opt_sig17(report.r),
        opt_int(report.k),
        report.fit.family,
        sig17(report.fit.kappa),
        sig17(report.fit.mu),
        sig17(report.fit.nu),
        sig17(report.fit.residual),
        report.fit.solution_dim
    );
    Ok(Rendered { json: to_json(&report), csv, pass: true })
}

fn cmd_classify(a: &ClassifyArgs) -> Result<Rendered, Error> {
    let spec = build_spec(&a.model, a.r)?;
    let classification = classify_model(&spec)?;
    let report = ClassifyReport {
        schema: SCHEMA,
        command: "classify",
        n: a.model.n,
        r: a.r,
        k: a.model.k,
        classification,
    };
    let cls = &report.classification;
    let csv = format!(
        "family,c,alpha,lambdas,kappa_member,kappa,km_kappa,km_mu,km_solution_dim,nu\n{},{},{},{},{},{},{},{},{},{}\n",
        cls.family,
        sig17(cls.c),
        sig17(cls.alpha),
        join_sig17(&cls.lambdas),
        cls.kappa_member,
        opt_sig17(cls.kappa),
        sig17(cls.km_kappa),
        sig17(cls.km_mu),
        cls.km_solution_dim,
        sig17(cls.nu)
    );
    Ok(Rendered { json: to_json(&report), csv, pass: true })
}

fn cmd_nonhopf_search(a: &SearchArgs) -> Result<Rendered, Error> {
    if tolerance_invalid(a.tolerance) {
        return Err(invalid_tolerance(a.tolerance));
    }
    let c = resolve_c(a.ambient, a.c, None)?;
    let config = SamplerConfig::new(a.seed, a.count);
    let outcome = feasibility_search(c, a.nullity, &config)?;
    let pass = outcome.min_residual >= outcome.analytic_lower_bound - a.tolerance;
    let report = SearchReport {
        schema: SCHEMA,
        command: "nonhopf-search",
        tolerance: a.tolerance,
        pass,
        outcome,
    };
    let o = &report.outcome;
    let csv = format!(
        "family,c,seed,count,beta_min,beta_max,value_min,value_max,min_residual,analytic_lower_bound,argmin_index,argmin_alpha,argmin_beta,argmin_gamma,argmin_delta,argmin_rho,argmin_k1,argmin_k2,argmin_k3,argmin_t,pass\n{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        o.family,
        sig17(o.c),
        o.seed,
        o.count,
        sig17(o.bounds.beta_min),
        sig17(o.bounds.beta_max),
        sig17(o.bounds.value_min),
        sig17(o.bounds.value_max),
        sig17(o.min_residual),
        sig17(o.analytic_lower_bound),
        o.argmin_index,
        sig17(o.argmin.alpha),
        sig17(o.argmin.beta),
        sig17(o.argmin.gamma),
        sig17(o.argmin.delta),
        sig17(o.argmin.rho),
        sig17(o.argmin.k1),
        sig17(o.argmin.k2),
        sig17(o.argmin.k3),
        sig17(o.argmin.t),
        report.pass
    );
    Ok(Rendered { json: to_json(&report), csv, pass })
}

fn tolerance_invalid(tol: f64) -> bool {
    !(tol.is_finite() && tol > 0.0)
}

fn invalid_tolerance(tol: f64) -> Error {
    Error::Precondition(format!("tolerance must be finite and positive, got {tol}"))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports contain only finite plain data")
}

/// Renders with 17 significant digits, enough to round-trip any f64 exactly.
fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_sig17(x: Option<f64>) -> String {
    x.map(sig17).unwrap_or_default()
}

fn opt_int(x: Option<usize>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn join_sig17(values: &[f64]) -> String {
    values.iter().map(|x| sig17(*x)).collect::<Vec<_>>().join(";")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_args(family: ModelFamily) -> TableArgs {
        TableArgs {
            model: ModelArgs { ambient: None, family, n: 2, c: None, k: None },
            r: None,
            r_min: None,
            r_max: None,
            steps: None,
            tolerance: 1e-10,
            output: OutputFormat::Json,
        }
    }

    #[test]
    fn seventeen_digit_rendering_round_trips() {
        assert_eq!(sig17(1.0), "1.0000000000000000e0");
        for &x in &[std::f64::consts::PI, -3.25e-8, 1.0 / 3.0, 1e300] {
            let back: f64 = sig17(x).parse().unwrap();
            assert_eq!(back, x);
        }
        assert_eq!(join_sig17(&[1.0, -1.0]), "1.0000000000000000e0,-1.0000000000000000e0".replace(',', ";"));
    }

    #[test]
    fn curvature_resolution_prefers_explicit_values() {
        assert_eq!(resolve_c(None, Some(9.0), None).unwrap(), 9.0);
        assert_eq!(resolve_c(Some(Ambient::Ch), None, None).unwrap(), -4.0);
        assert_eq!(resolve_c(None, None, Some(ModelFamily::ChHorosphere)).unwrap(), -4.0);
        assert_eq!(resolve_c(None, None, Some(ModelFamily::CpGeodesicSphere)).unwrap(), 4.0);
        assert_eq!(resolve_c(None, None, None).unwrap(), 4.0);
        assert!(resolve_c(None, Some(0.0), None).is_err());
        assert!(resolve_c(Some(Ambient::Cp), Some(-4.0), None).is_err());
        assert!(resolve_c(Some(Ambient::Ch), Some(4.0), None).is_err());
    }

    #[test]
    fn radius_grids_expand_as_documented() {
        let mut args = table_args(ModelFamily::ChGeodesicSphere);
        args.r = Some(0.75);
        assert_eq!(radius_grid(&args).unwrap(), vec![Some(0.75)]);

        let mut args = table_args(ModelFamily::ChGeodesicSphere);
        args.r_min = Some(1.0);
        args.r_max = Some(2.0);
        args.steps = Some(3);
        assert_eq!(radius_grid(&args).unwrap(), vec![Some(1.0), Some(1.5), Some(2.0)]);

        let mut args = table_args(ModelFamily::ChGeodesicSphere);
        args.r_min = Some(1.0);
        args.r_max = Some(2.0);
        args.steps = Some(1);
        assert_eq!(radius_grid(&args).unwrap(), vec![Some(1.0)]);

        let args = table_args(ModelFamily::ChHorosphere);
        assert_eq!(radius_grid(&args).unwrap(), vec![None]);

        let mut args = table_args(ModelFamily::ChHorosphere);
        args.r = Some(0.5);
        assert!(radius_grid(&args).is_err());

        let args = table_args(ModelFamily::ChGeodesicSphere);
        assert!(radius_grid(&args).is_err());

        let mut args = table_args(ModelFamily::ChGeodesicSphere);
        args.r_min = Some(2.0);
        args.r_max = Some(1.0);
        args.steps = Some(2);
        assert!(radius_grid(&args).is_err());

        let mut args = table_args(ModelFamily::ChGeodesicSphere);
        args.r_min = Some(1.0);
        args.r_max = Some(2.0);
        args.steps = Some(0);
        assert!(radius_grid(&args).is_err());
    }

    #[test]
    fn command_line_parses_the_documented_invocations() {
        let cli = Cli::try_parse_from([
            "nullity-lab", "table", "--ambient", "ch", "--family", "ch-geodesic-sphere",
            "--r-min", "0.5", "--r-max", "1.5", "--steps", "50",
        ])
        .unwrap();
        let Command::Table(args) = cli.command else { panic!("expected table") };
        assert_eq!(args.model.family, ModelFamily::ChGeodesicSphere);
        assert_eq!(args.steps, Some(50));

        let cli = Cli::try_parse_from([
            "nullity-lab", "verify", "--family", "ch-horosphere", "--nullity", "K",
            "--kappa", "1.0", "--tolerance", "1e-8", "--output", "csv",
        ])
        .unwrap();
        let Command::Verify(args) = cli.command else { panic!("expected verify") };
        assert_eq!(args.nullity, NullityFamily::K);
        assert_eq!(args.kappa, 1.0);
        assert_eq!(args.output, OutputFormat::Csv);

        let cli = Cli::try_parse_from([
            "nullity-lab", "nonhopf-search", "--c", "-4", "--nullity", "KMN",
            "--seed", "9", "--count", "1000",
        ])
        .unwrap();
        let Command::NonhopfSearch(args) = cli.command else { panic!("expected search") };
        assert_eq!(args.c, Some(-4.0));
        assert_eq!(args.nullity, NullityFamily::KMN);

        assert!(Cli::try_parse_from(["nullity-lab", "table", "--family", "no-such-family"]).is_err());
        assert!(Cli::try_parse_from([
            "nullity-lab", "table", "--family", "ch-geodesic-sphere", "--r", "1.0", "--r-min", "0.5",
        ])
        .is_err());
    }

    #[test]
    fn reports_are_rendered_in_both_formats() {
        let mut args = table_args(ModelFamily::ChGeodesicSphere);
        args.r = Some(1.0);
        let rendered = cmd_table(&args).unwrap();
        assert!(rendered.pass);
        let parsed: serde_json::Value = serde_json::from_str(&rendered.json).unwrap();
        assert_eq!(parsed["schema"], SCHEMA);
        assert_eq!(parsed["command"], "table");
        assert_eq!(parsed["rows"].as_array().unwrap().len(), 1);
        let lines: Vec<&str> = rendered.csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("r,alpha,lambdas,"));

        let json_kappa = parsed["rows"][0]["kappa_fitted"].as_f64().unwrap();
        let csv_kappa: f64 = lines[1].split(',').nth(4).unwrap().parse().unwrap();
        assert_eq!(json_kappa, csv_kappa);
    }
}
