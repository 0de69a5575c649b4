//! Command line front end: coefficient tables, disc area integrals,
//! verification suites and the closed-form area bound constant.
//!
//! Exit codes: 0 on success, 1 when a verification suite reports a failing
//! row, 2 on usage or parameter errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use concave_core::{
    area_green, area_grid2d, area_parseval, coefficient_b_batch, m_bound, run_all_suites,
    run_area_suite, run_coefficient_suite, run_geometry_suite, run_lemma_suite, reports_to_csv,
    reports_to_json, reports_to_pretty, yamashita_max, AnalyticMap, AreaResult, Complex64,
    ConcaveMapSpec, DiscQuotient, FThetaMap, GridSpec, HalfPlane, Koebe, QuotientKind,
    TruncatedSeries, UnitModulusParameter, VerificationReport,
};

#[derive(Parser)]
#[command(name = "concave", version, about = "Concave wedge map toolkit")]
struct Cli {
    /// Seed for the randomized sweeps inside the verification suites.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Taylor coefficients B_n and A_n of the wedge map with parameters
    /// (alpha, gamma), next to the real-axis bound B_n(alpha, 1).
    Coeffs {
        /// Wedge opening parameter, in (-1, 1) or (1, 2].
        #[arg(long)]
        alpha: f64,
        /// Argument of the unit-modulus parameter x, |gamma| < pi.
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        /// Largest coefficient order to print.
        #[arg(long)]
        n: u32,
    },

    /// Dirichlet integral of a map (or its disc quotient) over |z| < r.
    Area {
        /// Which map to integrate.
        #[arg(long, value_enum)]
        family: Family,
        /// Optional quotient against the identity: z/f or f/z.
        #[arg(long, value_enum)]
        quotient: Option<Quotient>,
        /// Disc radius, in (0, 1].
        #[arg(long)]
        r: f64,
        /// Integration method.
        #[arg(long, value_enum, default_value_t = Method::Green)]
        method: Method,
        /// Rotation angle for the ftheta family.
        #[arg(long)]
        theta: Option<f64>,
        /// Opening parameter for the concave family, in (1, 2].
        #[arg(long)]
        alpha: Option<f64>,
        /// Wedge direction parameter for the concave family, |gamma| < pi.
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        /// Boundary nodes for the green method.
        #[arg(long, default_value_t = 4096)]
        nodes: u32,
        /// Series truncation order for the parseval method.
        #[arg(long, default_value_t = 256)]
        order: usize,
    },

    /// Run a verification suite; exits 1 when a checked row fails
    /// (informational rows never affect the exit code).
    Verify {
        /// Which suite to run.
        #[arg(value_enum)]
        suite: Suite,
        /// Override the opening parameters swept by the suites.
        #[arg(long, value_delimiter = ',')]
        alphas: Option<Vec<f64>>,
        /// Override the gamma grid resolution.
        #[arg(long)]
        gamma_count: Option<usize>,
        /// Override the largest coefficient order.
        #[arg(long)]
        n_max: Option<u32>,
        /// Override the radii used by the area checks.
        #[arg(long, value_delimiter = ',')]
        r_values: Option<Vec<f64>>,
    },

    /// Closed-form area bound constant M for a given opening and vertex
    /// modulus, with the profile maximum from both the scan and the
    /// endpoint formula.
    Bound {
        /// Wedge opening parameter, in (1, 2].
        #[arg(long)]
        alpha: f64,
        /// Vertex modulus |b|, in [1/(2 alpha), 1].
        #[arg(long)]
        b_abs: f64,
        /// Optional disc radius: also print the resulting bound M pi r^2.
        #[arg(long)]
        r: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Identity,
    Koebe,
    Halfplane,
    Ftheta,
    Concave,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Quotient {
    ZOverF,
    FOverZ,
}

impl From<Quotient> for QuotientKind {
    fn from(q: Quotient) -> Self {
        match q {
            Quotient::ZOverF => QuotientKind::ZOverF,
            Quotient::FOverZ => QuotientKind::FOverZ,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Green,
    Parseval,
    Grid2d,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Lemmas,
    Coefficients,
    Geometry,
    Area,
    All,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // Usage errors exit 2; --help and --version exit 0.
        Err(e) => return ExitCode::from(if e.use_stderr() { 2 } else { 0 }).after(|| {
            let _ = e.print();
        }),
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

// ExitCode has no side-effect hook; tiny adaptor so the clap error can be
// printed before returning it.
trait AfterExt {
    fn after(self, f: impl FnOnce()) -> Self;
}

impl AfterExt for ExitCode {
    fn after(self, f: impl FnOnce()) -> Self {
        f();
        self
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Coeffs { alpha, gamma, n } => {
            let text = cmd_coeffs(alpha, gamma, n, cli.format)?;
            emit(&cli.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Area {
            family,
            quotient,
            r,
            method,
            theta,
            alpha,
            gamma,
            nodes,
            order,
        } => {
            let text = cmd_area(
                family, quotient, r, method, theta, alpha, gamma, nodes, order, cli.format,
            )?;
            emit(&cli.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            alphas,
            gamma_count,
            n_max,
            r_values,
        } => {
            let mut grid = GridSpec::default();
            grid.seed = cli.seed;
            if let Some(a) = alphas {
                grid.alpha_values = a;
            }
            if let Some(g) = gamma_count {
                grid.gamma_count = g;
            }
            if let Some(n) = n_max {
                grid.n_max = n;
            }
            if let Some(r) = r_values {
                grid.r_values = r;
            }
            let rows = dispatch_suite(suite, &grid).map_err(|e| e.to_string())?;
            let text = match cli.format {
                Format::Pretty => reports_to_pretty(&rows),
                Format::Json => reports_to_json(&rows).map_err(|e| e.to_string())?,
                Format::Csv => reports_to_csv(&rows).map_err(|e| e.to_string())?,
            };
            emit(&cli.out, &text)?;
            let all_pass = rows.iter().all(|row| row.pass);
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Bound { alpha, b_abs, r } => {
            let text = cmd_bound(alpha, b_abs, r, cli.format)?;
            emit(&cli.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn dispatch_suite(suite: Suite, grid: &GridSpec) -> concave_core::Result<Vec<VerificationReport>> {
    match suite {
        Suite::Lemmas => run_lemma_suite(grid),
        Suite::Coefficients => run_coefficient_suite(grid),
        Suite::Geometry => run_geometry_suite(grid),
        Suite::Area => run_area_suite(grid),
        Suite::All => run_all_suites(grid),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    let mut owned = text.to_owned();
    if !owned.ends_with('\n') {
        owned.push('\n');
    }
    match out {
        Some(path) => std::fs::write(path, owned)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{owned}");
            Ok(())
        }
    }
}

fn cmd_coeffs(alpha: f64, gamma: f64, n: u32, format: Format) -> Result<String, String> {
    // The coefficient formulas live on (-1, 1) union (1, 2]: alpha = 1 is
    // the degenerate half-plane case where every B_n collapses to 1.
    if !alpha.is_finite() || alpha <= -1.0 || alpha > 2.0 || alpha == 1.0 {
        return Err(format!(
            "alpha must lie in (-1, 1) or (1, 2], got {alpha}"
        ));
    }
    if !gamma.is_finite() || gamma.abs() >= std::f64::consts::PI {
        return Err(format!("gamma must satisfy |gamma| < pi, got {gamma}"));
    }
    if n == 0 {
        return Err("n must be at least 1".into());
    }
    let x = UnitModulusParameter::new(gamma).map_err(|e| e.to_string())?;
    let on_axis = UnitModulusParameter::new(0.0).map_err(|e| e.to_string())?;
    let b = coefficient_b_batch(n, alpha, &x).map_err(|e| e.to_string())?;
    let b_axis = coefficient_b_batch(n, alpha, &on_axis).map_err(|e| e.to_string())?;
    let scale = alpha * x.one_plus_x();

    struct Row {
        n: usize,
        b: Complex64,
        a: Complex64,
        bound: f64,
    }
    let rows: Vec<Row> = (1..=n as usize)
        .map(|k| Row {
            n: k,
            b: b[k],
            a: scale * b[k],
            bound: b_axis[k].re,
        })
        .collect();

    match format {
        Format::Json => {
            let doc = serde_json::json!({
                "alpha": alpha,
                "gamma": gamma,
                "rows": rows.iter().map(|r| serde_json::json!({
                    "n": r.n,
                    "b_re": r.b.re,
                    "b_im": r.b.im,
                    "a_re": r.a.re,
                    "a_im": r.a.im,
                    "bound": r.bound,
                })).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())
        }
        Format::Csv => {
            let mut text = String::from("n,b_re,b_im,a_re,a_im,bound\n");
            for r in &rows {
                text.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.n, r.b.re, r.b.im, r.a.re, r.a.im, r.bound
                ));
            }
            Ok(text)
        }
        Format::Pretty => {
            let mut text = format!("coefficients for alpha = {alpha}, gamma = {gamma}\n");
            text.push_str(&format!(
                "{:>4}  {:>24}  {:>24}  {:>24}  {:>24}  {:>24}\n",
                "n", "Re B_n", "Im B_n", "Re A_n", "Im A_n", "bound B_n(alpha,1)"
            ));
            for r in &rows {
                text.push_str(&format!(
                    "{:>4}  {:>24}  {:>24}  {:>24}  {:>24}  {:>24}\n",
                    r.n, r.b.re, r.b.im, r.a.re, r.a.im, r.bound
                ));
            }
            Ok(text)
        }
    }
}

/// The maps the area command can integrate, behind one dispatch type so a
/// quotient wrapper can hold any of them.
enum FamilyMap {
    Identity,
    Koebe(Koebe),
    HalfPlane(HalfPlane),
    FTheta(FThetaMap),
    Concave(ConcaveMapSpec),
}

impl AnalyticMap for FamilyMap {
    fn eval(&self, z: Complex64) -> concave_core::Result<Complex64> {
        match self {
            FamilyMap::Identity => Ok(z),
            FamilyMap::Koebe(m) => m.eval(z),
            FamilyMap::HalfPlane(m) => m.eval(z),
            FamilyMap::FTheta(m) => AnalyticMap::eval(m, z),
            FamilyMap::Concave(m) => AnalyticMap::eval(m, z),
        }
    }

    fn deriv(&self, z: Complex64) -> concave_core::Result<Complex64> {
        match self {
            FamilyMap::Identity => Ok(Complex64::new(1.0, 0.0)),
            FamilyMap::Koebe(m) => m.deriv(z),
            FamilyMap::HalfPlane(m) => m.deriv(z),
            FamilyMap::FTheta(m) => AnalyticMap::deriv(m, z),
            FamilyMap::Concave(m) => AnalyticMap::deriv(m, z),
        }
    }
}

fn build_family(
    family: Family,
    theta: Option<f64>,
    alpha: Option<f64>,
    gamma: f64,
) -> Result<FamilyMap, String> {
    match family {
        Family::Identity => Ok(FamilyMap::Identity),
        Family::Koebe => Ok(FamilyMap::Koebe(Koebe)),
        Family::Halfplane => Ok(FamilyMap::HalfPlane(HalfPlane)),
        Family::Ftheta => {
            let theta = theta.ok_or("the ftheta family needs --theta")?;
            Ok(FamilyMap::FTheta(
                FThetaMap::new(theta).map_err(|e| e.to_string())?,
            ))
        }
        Family::Concave => {
            let alpha = alpha.ok_or("the concave family needs --alpha")?;
            Ok(FamilyMap::Concave(
                ConcaveMapSpec::normalized(alpha, gamma).map_err(|e| e.to_string())?,
            ))
        }
    }
}

/// Taylor series of the selected map (or quotient) for the parseval route.
fn build_series(
    family: Family,
    quotient: Option<Quotient>,
    theta: Option<f64>,
    alpha: Option<f64>,
    gamma: f64,
    order: usize,
) -> Result<TruncatedSeries, String> {
    if order < 2 {
        return Err("--order must be at least 2".into());
    }
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    // Coefficients of f itself, index = power of z.
    let f_coeffs: Vec<Complex64> = match family {
        Family::Identity => vec![zero, one],
        Family::Koebe => (0..=order)
            .map(|k| Complex64::new(k as f64, 0.0))
            .collect(),
        Family::Halfplane => {
            let mut v = vec![one; order + 1];
            v[0] = zero;
            v
        }
        Family::Ftheta => {
            let theta = theta.ok_or("the ftheta family needs --theta")?;
            let map = FThetaMap::new(theta).map_err(|e| e.to_string())?;
            let mut v = vec![zero; order + 1];
            for (k, c) in v.iter_mut().enumerate().skip(1) {
                *c = map.coefficient(k as u32);
            }
            v
        }
        Family::Concave => {
            let alpha = alpha.ok_or("the concave family needs --alpha")?;
            let x = UnitModulusParameter::new(gamma).map_err(|e| e.to_string())?;
            let spec = ConcaveMapSpec::normalized(alpha, gamma).map_err(|e| e.to_string())?;
            let _ = spec; // validates the parameter range
            let b = coefficient_b_batch(order as u32, alpha, &x).map_err(|e| e.to_string())?;
            let mut v = vec![zero; order + 1];
            for (k, c) in v.iter_mut().enumerate().skip(1) {
                *c = b[k];
            }
            v
        }
    };

    let series = match quotient {
        None => TruncatedSeries::new(f_coeffs).map_err(|e| e.to_string())?,
        Some(q) => {
            // f/z re-indexes one power down; z/f is its reciprocal series.
            let f_over_z: Vec<Complex64> = (1..=order + 1)
                .map(|k| f_coeffs.get(k).copied().unwrap_or(zero))
                .collect();
            let f_over_z = TruncatedSeries::new(f_over_z).map_err(|e| e.to_string())?;
            match q {
                Quotient::FOverZ => f_over_z,
                Quotient::ZOverF => f_over_z.pow_real(-1.0).map_err(|e| e.to_string())?,
            }
        }
    };
    Ok(series)
}

/// Closed-form reference value, where one is known.
fn closed_reference(family: Family, quotient: Option<Quotient>, r: f64) -> Option<f64> {
    match (family, quotient) {
        (Family::Identity, None) => Some(std::f64::consts::PI * r * r),
        // z/z is constant, so the quotient's Dirichlet integral vanishes.
        (Family::Identity, Some(_)) => Some(0.0),
        (Family::Koebe, Some(q)) => yamashita_max(q.into(), r).ok(),
        // z/j = 1 - z has |derivative| = 1.
        (Family::Halfplane, Some(Quotient::ZOverF)) => Some(std::f64::consts::PI * r * r),
        _ => None,
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_area(
    family: Family,
    quotient: Option<Quotient>,
    r: f64,
    method: Method,
    theta: Option<f64>,
    alpha: Option<f64>,
    gamma: f64,
    nodes: u32,
    order: usize,
    format: Format,
) -> Result<String, String> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(format!("r must lie in (0, 1], got {r}"));
    }

    let result: AreaResult = match method {
        Method::Parseval => {
            let series = build_series(family, quotient, theta, alpha, gamma, order)?;
            area_parseval(&series, r).map_err(|e| e.to_string())?
        }
        Method::Green | Method::Grid2d => {
            let base = build_family(family, theta, alpha, gamma)?;
            let run_on = |map: &dyn AnalyticMap| -> Result<AreaResult, String> {
                match method {
                    Method::Green => area_green(&MapRef(map), r, nodes).map_err(|e| e.to_string()),
                    Method::Grid2d => {
                        area_grid2d(|z| map.deriv(z), r, Default::default())
                            .map_err(|e| e.to_string())
                    }
                    Method::Parseval => unreachable!(),
                }
            };
            match quotient {
                None => run_on(&base)?,
                Some(q) => run_on(&DiscQuotient::new(base, q.into()))?,
            }
        }
    };

    let closed = closed_reference(family, quotient, r);
    let doc = serde_json::json!({
        "family": format!("{family:?}").to_lowercase(),
        "quotient": quotient.map(|q| match q {
            Quotient::ZOverF => "z_over_f",
            Quotient::FOverZ => "f_over_z",
        }),
        "r": r,
        "method": result.method.to_string(),
        "value": result.value,
        "nodes": result.nodes,
        "est_error": result.est_error,
        "signed_raw": result.signed_raw,
        "closed": closed,
    });

    match format {
        Format::Json => serde_json::to_string_pretty(&doc).map_err(|e| e.to_string()),
        Format::Csv => {
            let mut text =
                String::from("family,quotient,r,method,value,nodes,est_error,closed\n");
            text.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                doc["family"].as_str().unwrap(),
                doc["quotient"].as_str().unwrap_or(""),
                r,
                doc["method"].as_str().unwrap(),
                result.value,
                result.nodes,
                result.est_error,
                closed.map_or(String::new(), |c| c.to_string()),
            ));
            Ok(text)
        }
        Format::Pretty => {
            let mut text = format!(
                "area of {}{} over |z| < {}\n",
                doc["family"].as_str().unwrap(),
                doc["quotient"]
                    .as_str()
                    .map(|q| format!(" ({q})"))
                    .unwrap_or_default(),
                r
            );
            text.push_str(&format!("method    = {}\n", doc["method"].as_str().unwrap()));
            text.push_str(&format!("value     = {}\n", result.value));
            text.push_str(&format!("nodes     = {}\n", result.nodes));
            text.push_str(&format!("est_error = {}\n", result.est_error));
            if let Some(raw) = result.signed_raw {
                text.push_str(&format!("signed    = {raw}\n"));
            }
            if let Some(c) = closed {
                text.push_str(&format!("closed    = {c}\n"));
                text.push_str(&format!("deviation = {}\n", (result.value - c).abs()));
            }
            Ok(text)
        }
    }
}

// area_green takes &impl AnalyticMap; this shim lets it run on a dyn ref.
struct MapRef<'a>(&'a dyn AnalyticMap);

impl AnalyticMap for MapRef<'_> {
    fn eval(&self, z: Complex64) -> concave_core::Result<Complex64> {
        self.0.eval(z)
    }
    fn deriv(&self, z: Complex64) -> concave_core::Result<Complex64> {
        self.0.deriv(z)
    }
}

fn cmd_bound(alpha: f64, b_abs: f64, r: Option<f64>, format: Format) -> Result<String, String> {
    let mb = m_bound(alpha, b_abs).map_err(|e| e.to_string())?;
    let disc_bound = match r {
        Some(r) => {
            if !(r > 0.0 && r <= 1.0) {
                return Err(format!("r must lie in (0, 1], got {r}"));
            }
            Some(mb.m * std::f64::consts::PI * r * r)
        }
        None => None,
    };
    let doc = serde_json::json!({
        "alpha": alpha,
        "b_abs": b_abs,
        "gamma0": mb.gamma0,
        "e0_scan": mb.e0_scan,
        "e0_at_gamma0": mb.e0_at_gamma0,
        "scan_argmax_gamma": mb.scan_argmax_gamma,
        "scan_nodes": mb.scan_nodes,
        "scan_skipped": mb.scan_skipped,
        "m": mb.m,
        "r": r,
        "disc_bound": disc_bound,
    });
    match format {
        Format::Json => serde_json::to_string_pretty(&doc).map_err(|e| e.to_string()),
        Format::Csv => {
            let mut text = String::from(
                "alpha,b_abs,gamma0,e0_scan,e0_at_gamma0,scan_argmax_gamma,m,disc_bound\n",
            );
            text.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                alpha,
                b_abs,
                mb.gamma0,
                mb.e0_scan,
                mb.e0_at_gamma0.map_or(String::new(), |v| v.to_string()),
                mb.scan_argmax_gamma,
                mb.m,
                disc_bound.map_or(String::new(), |v| v.to_string()),
            ));
            Ok(text)
        }
        Format::Pretty => {
            let mut text = format!("area bound constant for alpha = {alpha}, |b| = {b_abs}\n");
            text.push_str(&format!("gamma0            = {}\n", mb.gamma0));
            text.push_str(&format!("E0 (profile scan) = {}\n", mb.e0_scan));
            match mb.e0_at_gamma0 {
                Some(v) => text.push_str(&format!("E(gamma0)         = {v}\n")),
                None => text.push_str("E(gamma0)         = singular\n"),
            }
            text.push_str(&format!(
                "scan argmax gamma = {} ({} nodes, {} skipped)\n",
                mb.scan_argmax_gamma, mb.scan_nodes, mb.scan_skipped
            ));
            text.push_str(&format!("M                 = {}\n", mb.m));
            if let (Some(r), Some(bound)) = (r, disc_bound) {
                text.push_str(&format!("M pi r^2 at r={r}  = {bound}\n"));
            }
            Ok(text)
        }
    }
}
