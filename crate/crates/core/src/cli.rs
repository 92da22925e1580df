//! Command-line front end: CSV tables of ϑ_λ, F_λ, killed densities, hitting
//! tails and transforms, plus a self-check suite per family.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use crate::eigenfunctions::{compute_eigendata, eval_F, eval_G, eval_G_laplace, g_integral, g_value, laplace_F};
use crate::error::{Error, Result};
use crate::exponents::LevyExponent;
use crate::grid::RealGrid;
use crate::kernels::{self, killed_density, killed_kernel_grid, ResolventSet};
use crate::quadrature::{gauss_legendre, QuadratureConfig};
use crate::spectral::verify_parseval;

/// Grids with more cells than this go through one shared λ-rule instead of pointwise quadrature.
const POINTWISE_CELLS: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "levy-spectral", version, about = "Spectral quantities of symmetric Lévy processes killed at the origin")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Write the CSV here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    /// Run families that fail ξΨ'' ≤ Ψ' anyway, with a warning.
    #[arg(long, global = true)]
    pub advisory: bool,
}

/// Families are written `stable:alpha=1.5`, `mix:alpha=1.5,beta=1`, `rel:alpha=1.5,m=1`,
/// `trunc:alpha=1.5,c=1`, `bmpoisson:rate=9`; grids as `min:max:count[:log]` or a single number.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// lambda,K,theta
    Theta {
        family: LevyExponent,
        #[arg(long, allow_hyphen_values = true)]
        lambda: RealGrid,
    },
    /// x,F,G,sine_envelope
    Eigfun {
        family: LevyExponent,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, allow_hyphen_values = true)]
        x: RealGrid,
    },
    /// t,x,y,killed,free
    Density {
        family: LevyExponent,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, allow_hyphen_values = true)]
        x: RealGrid,
        #[arg(long, allow_hyphen_values = true)]
        y: RealGrid,
    },
    /// t,x,tail
    Hitting {
        family: LevyExponent,
        #[arg(long, allow_hyphen_values = true)]
        t: RealGrid,
        #[arg(long, allow_hyphen_values = true)]
        x: RealGrid,
    },
    /// lambda,even,odd for f(x) = e^{−ξx} on x > 0
    Transform {
        family: LevyExponent,
        #[arg(long, allow_hyphen_values = true)]
        xi: f64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: RealGrid,
    },
    /// Self-checks for one family, or `all`.
    Validate { family: String },
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    init_threads();
    match execute(&config) {
        Ok(Output { text, code }) => match emit(&config, &text) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Accuracy { .. } | Error::Positivity { .. } => 2,
        Error::Assumption(_) => 3,
        Error::Domain(_) | Error::Parse(_) | Error::Capability { .. } => 1,
    }
}

fn init_threads() {
    if let Some(n) = std::env::var("LEVY_SPECTRAL_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn emit(config: &RunConfig, text: &str) -> std::io::Result<()> {
    match &config.out {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn csv(text: String) -> Self {
        Self { text, code: 0 }
    }
}

fn quadrature(config: &RunConfig) -> Result<QuadratureConfig> {
    let mut cfg = QuadratureConfig::default();
    if let Some(a) = config.abs_tol {
        cfg.abs_tol = a;
    }
    if let Some(r) = config.rel_tol {
        cfg.rel_tol = r;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Rejects families outside the hitting-time theory unless `--advisory` was given.
fn require_concave(exp: &LevyExponent, advisory: bool) -> Result<()> {
    let report = exp.default_assumptions();
    if report.concave_half {
        return Ok(());
    }
    let msg = kernels::advisory(exp).unwrap_or_else(|| format!("{exp}: sampled concavity check failed"));
    if advisory {
        eprintln!("warning: {msg}");
        Ok(())
    } else {
        Err(Error::Assumption(format!("{msg} (pass --advisory to run anyway)")))
    }
}

fn execute(config: &RunConfig) -> Result<Output> {
    let cfg = quadrature(config)?;
    match &config.command {
        Command::Theta { family, lambda } => cmd_theta(family, lambda, &cfg).map(Output::csv),
        Command::Eigfun { family, lambda, x } => cmd_eigfun(family, *lambda, x, &cfg).map(Output::csv),
        Command::Density { family, t, x, y } => {
            require_concave(family, config.advisory)?;
            cmd_density(family, *t, x, y, &cfg).map(Output::csv)
        }
        Command::Hitting { family, t, x } => {
            require_concave(family, config.advisory)?;
            cmd_hitting(family, t, x, &cfg).map(Output::csv)
        }
        Command::Transform { family, xi, lambda } => cmd_transform(family, *xi, lambda, &cfg).map(Output::csv),
        Command::Validate { family } => {
            let families: Vec<LevyExponent> = if family.eq_ignore_ascii_case("all") {
                suite_families()
            } else {
                vec![family.parse()?]
            };
            let mut text = String::new();
            let mut failed = false;
            for exp in &families {
                for c in validate_family(exp, &cfg) {
                    failed |= c.status == Status::Fail;
                    let _ = writeln!(text, "{c}");
                }
            }
            Ok(Output {
                text,
                code: if failed { 2 } else { 0 },
            })
        }
    }
}

fn lambdas_positive(grid: &RealGrid) -> Result<()> {
    match grid.iter().find(|l| !(*l > 0.0)) {
        Some(l) => Err(Error::domain(format!("λ must be positive, got {l}"))),
        None => Ok(()),
    }
}

pub fn cmd_theta(exp: &LevyExponent, lambda: &RealGrid, cfg: &QuadratureConfig) -> Result<String> {
    lambdas_positive(lambda)?;
    let rows: Vec<_> = lambda
        .points()
        .par_iter()
        .map(|&l| compute_eigendata(exp, l, cfg))
        .collect::<Result<_>>()?;
    let mut s = String::from("lambda,K,theta\n");
    for e in rows {
        let _ = writeln!(s, "{:?},{:?},{:?}", e.lambda, e.k, e.theta);
    }
    Ok(s)
}

pub fn cmd_eigfun(exp: &LevyExponent, lambda: f64, x: &RealGrid, cfg: &QuadratureConfig) -> Result<String> {
    if !(lambda > 0.0) {
        return Err(Error::domain(format!("λ must be positive, got {lambda}")));
    }
    let e = compute_eigendata(exp, lambda, cfg)?;
    let p = eval_F(exp, &e, x, cfg)?;
    let env = p.sine_envelope();
    let mut s = String::from("x,F,G,sine_envelope\n");
    for (k, xv) in x.iter().enumerate() {
        let _ = writeln!(s, "{:?},{:?},{:?},{:?}", xv, p.f_values[k], p.g_values[k], env[k]);
    }
    Ok(s)
}

pub fn cmd_density(exp: &LevyExponent, t: f64, x: &RealGrid, y: &RealGrid, cfg: &QuadratureConfig) -> Result<String> {
    let mut s = String::from("t,x,y,killed,free\n");
    if x.len() * y.len() <= POINTWISE_CELLS {
        for xv in x.iter() {
            for yv in y.iter() {
                let k = killed_density(exp, t, xv, yv, cfg)?;
                let f = kernels::free_density(exp, t, xv - yv, cfg)?;
                let _ = writeln!(s, "{t:?},{xv:?},{yv:?},{k:?},{f:?}");
            }
        }
        return Ok(s);
    }
    let grid = killed_kernel_grid(exp, t, x, y, cfg)?;
    let tol = 10.0 * cfg.tolerance().target(1.0);
    if grid.error > tol.max(1e-6) {
        return Err(Error::accuracy(f64::NAN, grid.error, format!("killed density grid at t = {t}")));
    }
    for (i, xv) in x.iter().enumerate() {
        for (j, yv) in y.iter().enumerate() {
            // the killed density vanishes identically on the axes
            let k = if xv == 0.0 || yv == 0.0 { 0.0 } else { grid.values[i][j] };
            let _ = writeln!(s, "{t:?},{xv:?},{yv:?},{k:?},{:?}", grid.free_values[i][j]);
        }
    }
    Ok(s)
}

pub fn cmd_hitting(exp: &LevyExponent, t: &RealGrid, x: &RealGrid, cfg: &QuadratureConfig) -> Result<String> {
    let cells: Vec<(f64, f64)> = t.iter().flat_map(|tv| x.iter().map(move |xv| (tv, xv))).collect();
    let tails: Vec<f64> = cells
        .iter()
        .map(|&(tv, xv)| kernels::hitting_tail(exp, tv, xv, cfg))
        .collect::<Result<_>>()?;
    let mut s = String::from("t,x,tail\n");
    for ((tv, xv), v) in cells.iter().zip(tails) {
        let _ = writeln!(s, "{tv:?},{xv:?},{v:?}");
    }
    Ok(s)
}

/// Πf for f(x) = e^{−ξx}1_{x>0}: the even part is half the two-sided Laplace transform of F_λ,
/// the odd part is λ/(λ² + ξ²).
pub fn cmd_transform(exp: &LevyExponent, xi: f64, lambda: &RealGrid, cfg: &QuadratureConfig) -> Result<String> {
    lambdas_positive(lambda)?;
    if !(xi > 0.0 && xi.is_finite()) {
        return Err(Error::domain(format!("--xi must be positive, got {xi}")));
    }
    let even: Vec<f64> = lambda
        .points()
        .par_iter()
        .map(|&l| Ok(0.5 * laplace_F(exp, &compute_eigendata(exp, l, cfg)?, xi, cfg)?))
        .collect::<Result<_>>()?;
    let mut s = String::from("lambda,even,odd\n");
    for (l, ev) in lambda.iter().zip(even) {
        let _ = writeln!(s, "{l:?},{ev:?},{:?}", l / (l * l + xi * xi));
    }
    Ok(s)
}

/// The families `validate all` runs through.
pub fn suite_families() -> Vec<LevyExponent> {
    ["stable:alpha=1.5", "mix:alpha=1.5,beta=1", "rel:alpha=1.5,m=1", "trunc:alpha=1.5,c=1", "bmpoisson:rate=9"]
        .iter()
        .map(|s| s.parse().expect("suite family"))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Not applicable to a family outside the theory; reported, never fatal.
    Advisory,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub family: String,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Advisory => "ADVISORY",
        };
        write!(f, "{tag} {} {}: {}", self.family, self.name, self.detail)
    }
}

/// Runs the self-check suite for one family.
pub fn validate_family(exp: &LevyExponent, cfg: &QuadratureConfig) -> Vec<Check> {
    let report = exp.default_assumptions();
    let concave = report.concave_half;
    let mut out = Vec::new();
    let mut push = |name: &'static str, needs_theory: bool, r: Result<(bool, String)>| {
        let (status, detail) = match r {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) if needs_theory && !concave => (Status::Advisory, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e) if needs_theory && !concave => (Status::Advisory, e.to_string()),
            Err(e) => (Status::Fail, e.to_string()),
        };
        out.push(Check {
            family: exp.to_string(),
            name,
            status,
            detail,
        });
    };

    push(
        "assumptions",
        true,
        Ok((
            report.monotone && report.hit_integrable && concave,
            format!(
                "monotone={} integrable={} concave_half={} worst={:e}",
                report.monotone, report.hit_integrable, report.concave_half, report.worst_violation
            ),
        )),
    );
    push("phase", false, check_phase(exp, cfg));
    push("f_at_origin", false, check_f_origin(exp, cfg));
    if exp.supports_holomorphic() && !exp.is_brownian() {
        push("g_dual_route", false, check_dual_route(exp, cfg));
    }
    push("g_envelope", true, check_envelope(exp, cfg));
    if !exp.is_brownian() {
        push("g_integral", true, check_g_integral(exp, cfg));
    }
    push("parseval", true, check_parseval(exp, cfg));
    push("laplace_f", true, check_laplace_f(exp, cfg));
    push("hitting_tail", true, check_hitting(exp, cfg));
    push("killed_density", true, check_density(exp, cfg));
    if exp.supports_holomorphic() {
        push("boundary_values", true, check_boundary(exp, cfg));
    }
    out
}

fn check_phase(exp: &LevyExponent, cfg: &QuadratureConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let mut ok = true;
    for l in [0.25, 1.0, 4.0] {
        let e = compute_eigendata(exp, l, cfg)?;
        ok &= e.theta.abs() < PI / 2.0;
        if let crate::Family::Stable { alpha } = exp.family() {
            worst = worst.max((e.theta - (PI / alpha - PI / 2.0)).abs());
        }
    }
    ok &= worst <= 1e-6;
    Ok((ok, format!("|ϑ| < π/2, closed-form deviation {worst:e}")))
}

fn check_f_origin(exp: &LevyExponent, cfg: &QuadratureConfig) -> Result<(bool, String)> {
    let e = compute_eigendata(exp, 1.0, cfg)?;
    let g0 = g_value(exp, &e, 0.0, cfg)?.value;
    let f0 = e.sin_theta - g0;
    Ok((f0.abs() <= 1e-6, format!("F_1(0) = {f0:e}")))
}

fn check_dual_route(exp: &LevyExponent, cfg: &QuadratureConfig) -> Result<(bool, String)> {
    let grid = RealGrid::linear(-5.0, 5.0, 21)?;
    let mut worst = 0.0f64;
    for l in [0.5, 1.0, 2.0] {
        let e = compute_eigendata(exp, l, cfg)?;
        let a = eval_G(exp, &e, &grid, cfg)?;
        let b = eval_G_laplace(exp, &e, &grid, cfg)?;
        for (u, v) in a.values.iter().zip(&b.values) {
            worst = worst.max((u - v).abs());
        }
    }
    Ok((worst <= 1e-5, format!("max |G_fourier − G_laplace| = {worst:e}")))
}

fn check_envelope(exp: &LevyExponent, cfg: &QuadratureConfig) -> Result<(bool, String)> {
    let grid = RealGrid::linear(-5.0, 5.0, 41)?;
    let (mut over, mut under) = (f64::NEG_INFINITY, 0.0f64);
    for l in [0.5, 1.0, 2.0] {
        let e = compute_eigendata(exp, l, cfg)?;
        let p = eval_F(exp, &e, &grid, cfg)?;
        for g in &p.g_values {
            over = over.max(g.abs() - e.sin_theta.abs());
            under = under.min(*g);
        }
    }
    let ok = over <= 1e-6 && (!exp.is_cbf() || under >= -1e-8);
    Ok((ok, format!("max |G| − sin ϑ = {over:e}, min G = {under:e}")))
}

/// 2∫₀^∞ G by Gauss-Legendre on graded panels, against twice the closed form.
fn check_g_integral(exp: &LevyExponent, cfg: &QuadratureConfig) -> Result<(bool, String)> {
    let e = compute_eigendata(exp, 1.0, cfg)?;
    let numeric = half_line_g_integral(exp, &e, cfg)?;
    let exact = g_integral(exp, &e);
    let rel = (numeric - exact).abs() / exact.abs().max(1e-300);
    Ok((rel <= 1e-4, format!("∫₀^∞ G_1 = {numeric:.8}, closed form {exact:.8}, relative {rel:e}")))
}

/// ∫₀^∞ G_λ on geometric panels out to 1e4 (G decays at least like x^{-2}).
pub fn half_line_g_integral(exp: &LevyExponent, e: &crate::EigenData, cfg: &QuadratureConfig) -> Result<f64> {
    let gl = gauss_legendre(16);
    let mut edges = vec![0.0];
    edges.extend((0..20).rev().map(|k| 0.5f64.powi(k) / e.lambda));
    while edges.last().unwrap() * e.lambda < 1e4 {
        let last = *edges.last().unwrap();
        edges.push(last * 1.25);
    }
    let nodes: Vec<(f64, f64)> = edges.windows(2).flat_map(|w| gl.mapped(w[0], w[1])).collect();
    let vals: Vec<f64> = nodes
        .par_iter()
        .map(|&(x, w)| Ok(w * g_value(exp, e, x, cfg)?.value))
        .collect::<Result<_>>()?;
    Ok(vals.iter().sum())
}

fn check_parseval(exp: &LevyExponent, cfg: &QuadratureConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for (a, b) in [(0.5, 1.0), (1.0, 1.0), (1.0, 2.0)] {
        let (_, expected, err) = verify_parseval(exp, a, b, cfg)?;
        worst = worst.max(err / expected);
    }
    Ok((worst <= 1e-3, format!("max relative deviation {worst:e}")))
}

/// Closed-form ∫F_λ e^{−ξ|x|} against quadrature of the sampled profile.
fn check_laplace_f(exp: &LevyExponent, cfg: &QuadratureConfig) -> Result<(bool, String)> {
    let (l, xi) = (1.0, 1.0);
    let e = compute_eigendata(exp, l, cfg)?;
    let closed = laplace_F(exp, &e, xi, cfg)?;
    let direct = 2.0 * half_line_laplace(exp, &e, xi, cfg)?;
    let d = (closed - direct).abs();
    Ok((d <= 1e-5, format!("closed {closed:.8}, direct {direct:.8}, |Δ| = {d:e}")))
}

/// ∫₀^∞ F_λ(x) e^{−ξx} dx from F_λ on Gauss nodes graded towards 0, up to e^{−ξx} < 1e-16.
pub fn half_line_laplace(exp: &LevyExponent, e: &crate::EigenData, xi: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let gl = gauss_legendre(16);
    let reach = 37.0 / xi;
    let width = (1.0 / e.lambda).min(1.0 / xi);
    let mut edges: Vec<f64> = vec![0.0];
    edges.extend((1..30).rev().map(|k| width * 0.5f64.powi(k)));
    let mut x = width;
    while x < reach {
        edges.push(x);
        x += width;
    }
    edges.push(reach);
    let nodes: Vec<(f64, f64)> = edges.windows(2).flat_map(|w| gl.mapped(w[0], w[1])).collect();
    let grid = RealGrid::from_points(nodes.iter().map(|n| n.0).collect())?;
    let p = eval_F(exp, e, &grid, cfg)?;
    Ok(nodes.iter().zip(&p.f_values).map(|(&(x, w), f)| w * f * (-xi * x).exp()).sum())
}

fn check_hitting(exp: &LevyExponent, cfg: &QuadratureConfig) -> Result<(bool, String)> {
    let v: Vec<f64> = [0.5, 1.0, 2.0]
        .iter()
        .map(|&t| kernels::hitting_tail(exp, t, 1.0, cfg))
        .collect::<Result<_>>()?;
    let ok = v.windows(2).all(|w| w[1] <= w[0] + 1e-8) && v.iter().all(|p| (0.0..=1.0).contains(p));
    Ok((ok, format!("P_1(τ₀ > t) at t = 0.5, 1, 2: {:.6}, {:.6}, {:.6}", v[0], v[1], v[2])))
}

fn check_density(exp: &LevyExponent, cfg: &QuadratureConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for (x, y) in [(0.5, 1.0), (1.0, 1.0), (-1.0, 2.0)] {
        let k = killed_density(exp, 1.0, x, y, cfg)?;
        let f = kernels::free_density(exp, 1.0, x - y, cfg)?;
        worst = worst.max(-k).max(k - f);
    }
    Ok((worst <= 1e-8, format!("0 ≤ p^killed ≤ p^free up to {worst:e}")))
}

fn check_boundary(exp: &LevyExponent, cfg: &QuadratureConfig) -> Result<(bool, String)> {
    let set = ResolventSet::new(exp.clone(), *cfg)?;
    let mut worst = 0.0f64;
    for l in [0.5, 1.0] {
        let (plain, weighted) = set.phi_plus_boundary(l, 1.0)?;
        let z = num_complex::Complex64::new(-exp.psi(l), 1e-5);
        worst = worst
            .max((plain - set.phi_complex(z)?.value).norm())
            .max((weighted - set.phi_xi_complex(1.0, z)?.value).norm());
    }
    Ok((worst <= 1e-3, format!("max |φ⁺ − φ(−Ψ(λ) + iε)|, ε = 1e-5: {worst:e}")))
}
