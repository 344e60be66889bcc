//! Command-line front end for the `euler-periods` library.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use euler_periods::eulerfun::{
    gamma_const, identity_residual, phi, polylog, zeta, GammaMethod, IdentityParams,
};
use euler_periods::feynper::{integrator_selftest, period_mc, snap_to_multiple, MultiGraph, PeriodEstimate};
use euler_periods::g2::{
    assemble, compare, invert_alpha, registry_listing, A3Mode, A4Source, CoefficientSet, Registry,
};
use euler_periods::mzv::{multiphi, mzv, stuffle_residual, AltIndex, MzvIndex};
use euler_periods::numkernel::{bernoulli, bound_string, parse_decimal};
use euler_periods::symbolic::{coact, galois_conjugates, parse_expr, period_map};
use euler_periods::{BigReal, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PRECISION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CHECK: i32 = 3;

pub const REGISTRY_ENV: &str = "EULER_PERIODS_REGISTRY";

#[derive(Parser, Debug)]
#[command(
    name = "euler-periods",
    version,
    about = "Zeta values, Feynman periods and the electron g-2 series"
)]
pub struct Cli {
    /// Requested decimal digits (absolute error bound 1e-N).
    #[arg(long, global = true, default_value_t = 15, value_parser = clap::value_parser!(u32).range(1..=100))]
    pub prec: u32,

    /// Registry JSON file (falls back to $EULER_PERIODS_REGISTRY, then the shipped copy).
    #[arg(long, global = true)]
    pub registry: Option<PathBuf>,

    /// Seed for Monte Carlo commands.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Print a JSON document instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Riemann zeta ζ(s) for real s > 1.
    Zeta { s: String },
    /// Alternating zeta φ(s) for real s > 0.
    Phi { s: String },
    /// Polylogarithm Li_n(z) at a rational point.
    Polylog { n: u32, z: String },
    /// Euler's constant γ.
    Gamma {
        #[arg(long, value_enum, default_value_t = GammaChoice::EulerMaclaurin)]
        method: GammaChoice,
    },
    /// Bernoulli number B_n (exact).
    Bernoulli { n: u32 },
    /// Multiple zeta value, index like 3,5 (summation 0 < k1 < k2 < ...).
    Mzv { index: String },
    /// Alternating double sum φ(m,n).
    Multiphi { m: u32, n: u32 },
    /// Residual of ζ(m)ζ(n) = ζ(m,n) + ζ(n,m) + ζ(m+n).
    StuffleCheck { m: u32, n: u32 },
    /// Residual of a classical identity.
    IdentityCheck {
        #[arg(value_enum)]
        kind: IdentityChoice,
        /// x for dilog-reflection and cotangent, s otherwise.
        value: String,
        /// Number of terms for the cotangent expansion.
        #[arg(long, default_value_t = 200)]
        terms: u32,
        /// Largest prime in the Euler product.
        #[arg(long, default_value_t = 100_000)]
        prime_bound: u64,
    },
    /// Coaction of a motivic expression.
    Coact { expr: String },
    /// Galois conjugates and the dimension of their span.
    Conjugates { expr: String },
    /// Period map of a motivic expression.
    Per { expr: String },
    /// Monte Carlo period of a primitive graph.
    Period {
        /// Graph JSON file: {"vertices": n, "edges": [[u, v], ...]}.
        #[arg(long, conflicts_with = "named")]
        graph: Option<PathBuf>,
        /// Built-in graph.
        #[arg(long, value_enum)]
        named: Option<NamedGraph>,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        /// Snap the estimate to an integer multiple of ζ(k).
        #[arg(long)]
        snap_zeta: Option<u32>,
    },
    /// Integrator self-test on elementary periods.
    Selftest {
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
    /// a_e summed through (α/π)^order.
    G2Assemble {
        #[arg(long, default_value = "137.035999")]
        alpha_inv: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long, value_enum, default_value_t = A3Choice::Consistent)]
        a3: A3Choice,
        #[arg(long, value_enum, default_value_t = A4Choice::Laporta)]
        a4: A4Choice,
    },
    /// Solve a_e(α) = target for α^-1; target is a registry label or a decimal.
    G2InvertAlpha {
        target: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Difference of two registry entries with combined uncertainty.
    G2Compare { a: String, b: String },
    /// List the registry.
    RegistryList,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GammaChoice {
    EulerMaclaurin,
    ZetaSeries,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum IdentityChoice {
    DilogReflection,
    Cotangent,
    EulerProduct,
    PhiFuncEq,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum NamedGraph {
    Bubble,
    K4,
    W4,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum A3Choice {
    Consistent,
    AsPrinted,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum A4Choice {
    Laporta,
    Numerical,
}

/// What a command printed, as plain lines plus structured fields.
#[derive(Debug, Default)]
struct Report {
    lines: Vec<String>,
    fields: Map<String, Value>,
    code: i32,
}

impl Report {
    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn field(&mut self, k: &str, v: impl Into<Value>) {
        self.fields.insert(k.to_string(), v.into());
    }

    fn value(&mut self, v: &BigReal, prec: u32) {
        let text = format_value(v, prec);
        self.field("value", v.to_bounded_string(prec));
        self.field("bound", bound_string(prec));
        self.line(text);
    }
}

/// `value ± 1e-prec`; the printed digits themselves honour the bound.
pub fn format_value(v: &BigReal, prec: u32) -> String {
    format!("{} ± {}", v.to_bounded_string(prec), bound_string(prec))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::PrecisionNotMet { .. } => EXIT_PRECISION,
        Error::NonFiniteSample { .. } | Error::NoConvergence(_) => EXIT_CHECK,
        _ => EXIT_INPUT,
    }
}

fn parse_real(s: &str) -> Result<f64, Error> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Input(format!("not a real number: {s:?}")))
}

fn registry(cli: &Cli) -> Result<Registry, Error> {
    match &cli.registry {
        Some(p) => Registry::load(p),
        None => match std::env::var_os(REGISTRY_ENV) {
            Some(p) if !p.is_empty() => Registry::load(&PathBuf::from(p)),
            _ => Ok(Registry::shipped()),
        },
    }
}

fn format_estimate(e: &PeriodEstimate) -> String {
    format!("{:.6} ± {:.6}", e.estimate, e.stderr)
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn dispatch(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                let mut doc = report.fields.clone();
                doc.insert("lines".into(), json!(report.lines));
                doc.insert("exit_code".into(), json!(report.code));
                let _ = writeln!(out, "{}", Value::Object(doc));
            } else {
                for l in &report.lines {
                    let _ = writeln!(out, "{l}");
                }
            }
            report.code
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                let doc = json!({"error": e.to_string(), "exit_code": code});
                let _ = writeln!(out, "{doc}");
            }
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let prec = cli.prec;
    let mut r = Report::default();
    match &cli.command {
        Command::Zeta { s } => r.value(&zeta(parse_real(s)?, prec)?, prec),
        Command::Phi { s } => r.value(&phi(parse_real(s)?, prec)?, prec),
        Command::Polylog { n, z } => r.value(&polylog(*n, &parse_decimal(z)?, prec)?, prec),
        Command::Gamma { method } => {
            let m = match method {
                GammaChoice::EulerMaclaurin => GammaMethod::EulerMaclaurin,
                GammaChoice::ZetaSeries => GammaMethod::ZetaSeries,
            };
            r.value(&gamma_const(prec, m)?, prec);
        }
        Command::Bernoulli { n } => {
            let b = bernoulli(*n);
            r.field("value", b.to_string());
            r.field("bound", "0");
            r.line(format!("{b} ± 0"));
        }
        Command::Mzv { index } => {
            let idx: MzvIndex = index.parse()?;
            r.field("index", idx.to_string());
            r.value(&mzv(&idx, prec)?, prec);
        }
        Command::Multiphi { m, n } => {
            let idx = AltIndex::new(*m, *n)?;
            let v = multiphi(&idx, prec)?.certify()?;
            r.value(&v, prec);
        }
        Command::StuffleCheck { m, n } => {
            let res = stuffle_residual(*m, *n, prec)?;
            let ok = res.is_zero_within_err();
            r.field("residual", format!("{:e}", res.to_f64()));
            r.field("holds", ok);
            r.line(format!("residual {:.3e} ± {:.3e}", res.to_f64(), res.err()));
            r.line(if ok { "holds" } else { "FAILED" });
            if !ok {
                r.code = EXIT_CHECK;
            }
        }
        Command::IdentityCheck {
            kind,
            value,
            terms,
            prime_bound,
        } => {
            let params = match kind {
                IdentityChoice::DilogReflection => IdentityParams::DilogReflection {
                    x: parse_decimal(value)?,
                },
                IdentityChoice::Cotangent => IdentityParams::Cotangent {
                    x: parse_decimal(value)?,
                    terms: *terms,
                },
                IdentityChoice::EulerProduct => IdentityParams::EulerProduct {
                    s: parse_real(value)?,
                    prime_bound: *prime_bound,
                },
                IdentityChoice::PhiFuncEq => IdentityParams::PhiFuncEq {
                    s: parse_real(value)?,
                },
            };
            let res = identity_residual(&params, prec)?;
            let ok = res.holds();
            r.field("kind", res.kind.name());
            r.field("residual", format!("{:e}", res.residual.to_f64()));
            r.field("truncation_bound", format!("{:e}", res.truncation_bound));
            r.field("holds", ok);
            r.line(format!(
                "{} residual {:.3e} (numerical error {:.1e}, truncation bound {:.1e})",
                res.kind.name(),
                res.residual.to_f64(),
                res.residual.err(),
                res.truncation_bound
            ));
            r.line(if ok { "holds" } else { "FAILED" });
            if !ok {
                r.code = EXIT_CHECK;
            }
        }
        Command::Coact { expr } => {
            let e = parse_expr(expr)?;
            let t = coact(&e);
            r.field("expr", e.to_string());
            r.field("coaction", t.to_string());
            r.line(t.to_string());
        }
        Command::Conjugates { expr } => {
            let e = parse_expr(expr)?;
            let (cs, dim) = galois_conjugates(&e);
            let texts: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
            for t in &texts {
                r.line(t.clone());
            }
            r.line(format!("dimension {dim}"));
            r.field("conjugates", json!(texts));
            r.field("dimension", dim);
        }
        Command::Per { expr } => {
            let e = parse_expr(expr)?;
            r.field("expr", e.to_string());
            r.value(&period_map(&e, prec)?, prec);
        }
        Command::Period {
            graph,
            named,
            samples,
            snap_zeta,
        } => {
            let g = match (graph, named) {
                (Some(p), _) => {
                    let text = std::fs::read_to_string(p)
                        .map_err(|e| Error::Input(format!("{}: {e}", p.display())))?;
                    MultiGraph::from_json(&text)?
                }
                (None, Some(NamedGraph::Bubble)) => MultiGraph::bubble(),
                (None, Some(NamedGraph::K4)) => MultiGraph::complete4(),
                (None, Some(NamedGraph::W4)) => MultiGraph::wheel(4),
                (None, None) => return Err(Error::Input("give --graph FILE or --named GRAPH".into())),
            };
            let est = period_mc(&g, *samples, cli.seed)?;
            r.field("estimate", format!("{:.6}", est.estimate));
            r.field("stderr", format!("{:.6}", est.stderr));
            r.field("samples", est.samples);
            r.field("seed", est.seed);
            r.line(format!(
                "{} ({} samples, seed {})",
                format_estimate(&est),
                est.samples,
                est.seed
            ));
            if let Some(k) = snap_zeta {
                let base = zeta(f64::from(*k), 15)?;
                let (m, sig) = snap_to_multiple(&est, &base);
                r.field("multiple", m);
                r.field("sigmas", format!("{sig:.2}"));
                r.line(format!("≈ {m} ζ({k}) ({sig:.2}σ)"));
            }
        }
        Command::Selftest { samples } => {
            let cases = integrator_selftest(*samples, cli.seed)?;
            let mut all = true;
            let mut rows = Vec::new();
            for c in &cases {
                all &= c.passed();
                let line = format!(
                    "{}: {:.6} ± {:.6} (truth {:.6}, {:.2}σ) {}",
                    c.name,
                    c.estimate,
                    c.stderr,
                    c.truth,
                    c.sigmas(),
                    if c.passed() { "ok" } else { "FAILED" }
                );
                rows.push(
                    json!({"name": c.name, "estimate": format!("{:.6}", c.estimate), "passed": c.passed()}),
                );
                r.line(line);
            }
            r.field("cases", json!(rows));
            r.field("passed", all);
            if !all {
                r.code = EXIT_CHECK;
            }
        }
        Command::G2Assemble {
            alpha_inv,
            order,
            a3,
            a4,
        } => {
            let reg = registry(cli)?;
            let a3m = match a3 {
                A3Choice::Consistent => A3Mode::Consistent,
                A3Choice::AsPrinted => A3Mode::AsPrinted,
            };
            let a4s = match a4 {
                A4Choice::Laporta => A4Source::Laporta,
                A4Choice::Numerical => A4Source::Numerical,
            };
            let cs = CoefficientSet::build(&reg, a3m, a4s, prec + 4)?;
            let ai = BigReal::from_rational(&parse_decimal(alpha_inv)?, prec + 10);
            let v = assemble(&ai, &cs, *order, prec)?.certify()?;
            r.value(&v, prec);
        }
        Command::G2InvertAlpha { target, order } => {
            let reg = registry(cli)?;
            let t = match reg.get(target) {
                Ok(m) => m.value.clone(),
                Err(_) => parse_decimal(target)?,
            };
            let cs = CoefficientSet::standard(&reg, prec + 4)?;
            let res = invert_alpha(&BigReal::from_rational(&t, prec + 10), &cs, *order, prec)?;
            let v = res.alpha_inv.certify()?;
            r.value(&v, prec);
            r.field("iterations", res.iterations);
            r.line(format!("{} Newton iterations", res.iterations));
        }
        Command::G2Compare { a, b } => {
            let reg = registry(cli)?;
            let c = compare(reg.get(a)?, reg.get(b)?);
            r.field("difference", c.difference.to_string());
            r.field("uncertainty", format!("{:e}", c.uncertainty));
            r.field("pull", format!("{:.3}", c.pull));
            r.field("text", c.display());
            r.line(c.display());
        }
        Command::RegistryList => {
            let reg = registry(cli)?;
            let rows = registry_listing(&reg);
            r.field("count", reg.len());
            r.field("entries", json!(rows));
            r.lines = rows;
        }
    }
    Ok(r)
}
