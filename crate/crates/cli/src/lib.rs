//! Command-line front end for `chroma`.
//!
//! Exit codes: 0 success, 2 usage or precondition failure, 3 the symbolic
//! result disagrees with the closed form or the brute-force oracle, 4 I/O.

pub mod json;
pub mod render;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use chroma::oracle::{AgreementRow, RowStatus, SymbolicModuli};
use chroma::{
    closed_form_n, min_dimension, render_equations, rep, rep_2d, restriction_number,
    restriction_table, totient, Error, Oracle, RotationRep,
};
use clap::{Parser, Subcommand, ValueEnum};

use crate::render::{Basis, RenderError, RenderSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REGRESSION: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Environment variable overriding the oracle's point budget.
pub const POINT_BUDGET_VAR: &str = "CHROMA_POINT_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "chroma", version, about = "Rotation restrictions for modular colour lattices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Cartesian,
    Oblique,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the integer representation of C_k.
    Rep {
        k: u64,
        #[arg(long)]
        json: bool,
    },
    /// Maximal number of colours N compatible with C_k.
    Restrict {
        k: u64,
        /// Use the 2×2 plane-lattice matrix (k ∈ {1, 2, 3, 4, 6}).
        #[arg(long)]
        dim2: bool,
        /// Also list the congruence system.
        #[arg(long)]
        equations: bool,
        /// Merge duplicate congruences and factor out their content.
        #[arg(long)]
        reduce: bool,
        #[arg(long)]
        json: bool,
    },
    /// Tabulate N for k = 1..=kmax.
    Table {
        #[arg(long, default_value_t = 30)]
        kmax: u64,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Cross-check the symbolic moduli against brute-force enumeration.
    Verify {
        k: u64,
        /// Scan moduli 1..=nscan.
        #[arg(long, default_value_t = 12)]
        nscan: u64,
        /// Half-width M of the box [−M, M]^d.
        #[arg(long = "box", default_value_t = 2)]
        half_width: u64,
        /// Report every order 1..=k instead of k alone.
        #[arg(long)]
        upto: bool,
        #[arg(long)]
        json: bool,
    },
    /// Minimal lattice dimension for n modular colours with a C_k axis, k ≥ n.
    Mindim {
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Render a plane modular colouring as SVG.
    Render2d {
        k: u64,
        n: u64,
        /// Half-width M of the rendered patch.
        #[arg(long, default_value_t = 4)]
        extent: u64,
        /// Defaults to oblique for k ∈ {3, 6}, Cartesian otherwise.
        #[arg(long, value_enum)]
        basis: Option<BasisArg>,
        /// Comma-separated fill colours, one per colour class.
        #[arg(long, value_delimiter = ',')]
        palette: Option<Vec<String>>,
        #[arg(long, default_value_t = 8.0)]
        radius: f64,
        #[arg(long, default_value_t = 480.0)]
        size: f64,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Render even if the colouring is not rotation invariant.
        #[arg(long)]
        force: bool,
    },
}

/// Parse `args` and run; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = if e.use_stderr() { e.render().to_string() } else { e.to_string() };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            return match sink.write_all(text.as_bytes()) {
                Ok(()) => code,
                Err(_) => EXIT_IO,
            };
        }
    };
    let budget = match point_budget() {
        Ok(b) => b,
        Err(msg) => return fail(err, EXIT_USAGE, &msg),
    };
    let result = match cli.command {
        Command::Rep { k, json } => cmd_rep(k, json, out, err),
        Command::Restrict {
            k,
            dim2,
            equations,
            reduce,
            json,
        } => cmd_restrict(k, dim2, equations, reduce, json, out, err),
        Command::Table { kmax, format } => cmd_table(kmax, format, out, err),
        Command::Verify {
            k,
            nscan,
            half_width,
            upto,
            json,
        } => cmd_verify(k, nscan, half_width, upto, json, Oracle::with_budget(budget), out, err),
        Command::Mindim { n, json } => cmd_mindim(n, json, out, err),
        Command::Render2d {
            k,
            n,
            extent,
            basis,
            palette,
            radius,
            size,
            out: path,
            force,
        } => {
            let mut spec = RenderSpec::new(k, n);
            spec.extent = extent;
            spec.radius = radius;
            spec.size = size;
            if let Some(b) = basis {
                spec.basis = match b {
                    BasisArg::Cartesian => Basis::Cartesian,
                    BasisArg::Oblique => Basis::Oblique,
                };
            }
            if let Some(p) = palette {
                spec.palette = p;
            }
            cmd_render2d(&spec, path, force, out, err)
        }
    };
    result.unwrap_or(EXIT_IO)
}

fn point_budget() -> Result<u64, String> {
    match std::env::var(POINT_BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{POINT_BUDGET_VAR}={v:?} is not a nonnegative integer")),
        Err(_) => Ok(chroma::oracle::DEFAULT_POINT_BUDGET),
    }
}

fn fail(err: &mut dyn Write, code: i32, msg: &str) -> i32 {
    match writeln!(err, "error: {msg}") {
        Ok(()) => code,
        Err(_) => EXIT_IO,
    }
}

fn usage_error(err: &mut dyn Write, e: impl std::fmt::Display) -> io::Result<i32> {
    writeln!(err, "error: {e}")?;
    Ok(EXIT_USAGE)
}

fn write_json(out: &mut dyn Write, v: &serde_json::Value) -> io::Result<()> {
    let text = serde_json::to_string_pretty(v).map_err(io::Error::other)?;
    writeln!(out, "{text}")
}

fn describe(out: &mut dyn Write, label: &str, r: &RotationRep) -> io::Result<()> {
    writeln!(
        out,
        "{label} C_{}: dim={} kind={} k={}",
        r.k(),
        r.dim(),
        r.kind(),
        r.factorization()
    )?;
    writeln!(out, "{}", r.matrix())
}

pub fn cmd_rep(k: u64, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let minimal = match rep(k) {
        Ok(r) => r,
        Err(e) => return usage_error(err, e),
    };
    let plane = rep_2d(k).ok();
    if json {
        let mut v = json::rotation(&minimal);
        v["plane"] = plane.as_ref().map(json::rotation).unwrap_or(serde_json::Value::Null);
        write_json(out, &v)?;
    } else {
        describe(out, "minimal", &minimal)?;
        if let Some(p) = &plane {
            writeln!(out)?;
            describe(out, "plane", p)?;
        }
    }
    Ok(EXIT_OK)
}

fn list(xs: impl IntoIterator<Item = impl ToString>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn cmd_restrict(
    k: u64,
    dim2: bool,
    equations: bool,
    reduce: bool,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let r = match if dim2 { rep_2d(k) } else { rep(k) } {
        Ok(r) => r,
        Err(e) => return usage_error(err, e),
    };
    let result = restriction_number(&r);
    let closed = closed_form_n(k);
    let listing = equations.then(|| render_equations(&r, reduce));
    if json {
        let mut v = json::restriction(&result, totient(k), &closed);
        if let Some(text) = &listing {
            v["equations"] = text.lines().collect::<Vec<_>>().into();
        }
        write_json(out, &v)?;
    } else {
        writeln!(out, "k={k} dim={} Ψ(k)={}", result.dim, totient(k))?;
        writeln!(out, "N={}", result.n_max)?;
        if result.valid_moduli.is_empty() {
            writeln!(out, "valid moduli: all")?;
        } else {
            writeln!(out, "valid moduli: {}", list(&result.valid_moduli))?;
        }
        if let Some(text) = &listing {
            writeln!(out)?;
            write!(out, "{text}")?;
        }
    }
    if result.n_max != closed {
        writeln!(
            err,
            "error: theorem regression at k={k}: symbolic N={} but closed form N={closed}",
            result.n_max
        )?;
        return Ok(EXIT_REGRESSION);
    }
    Ok(EXIT_OK)
}

pub fn cmd_table(k_max: u64, format: TableFormat, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    if k_max == 0 {
        return usage_error(err, "--kmax must be at least 1");
    }
    let rows = match restriction_table(k_max) {
        Ok(rows) => rows,
        Err(e @ Error::TheoremRegression { .. }) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_REGRESSION);
        }
        Err(e) => return usage_error(err, e),
    };
    match format {
        TableFormat::Json => write_json(out, &json::table(&rows))?,
        TableFormat::Csv => {
            writeln!(out, "k,totient,n_max")?;
            for r in &rows {
                writeln!(out, "{},{},{}", r.k, r.totient, r.n_max)?;
            }
        }
        TableFormat::Text => {
            writeln!(out, "{:>5} {:>6}  N", "k", "Ψ(k)")?;
            for r in &rows {
                writeln!(out, "{:>5} {:>6}  {}", r.k, r.totient, r.n_max)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn set(xs: &[u64]) -> String {
    format!("{{{}}}", xs.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
}

fn write_row(out: &mut dyn Write, row: &AgreementRow) -> io::Result<()> {
    let symbolic = match &row.symbolic {
        SymbolicModuli::All => "all".to_string(),
        SymbolicModuli::Divisors(ds) => set(ds),
    };
    let brute = row.bruteforce.as_deref().map(set).unwrap_or_else(|| "-".into());
    let status = match row.status {
        RowStatus::Agree => "agree".to_string(),
        RowStatus::Disagree => "DISAGREE".to_string(),
        RowStatus::Skipped { points } => format!("skipped ({points} points over budget)"),
    };
    writeln!(
        out,
        "k={} dim={} symbolic={symbolic} bruteforce={brute} {status}",
        row.k, row.dim
    )?;
    for (n, c) in &row.counterexamples {
        let point = c.point.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        writeln!(
            out,
            "  witness n={n}: m=({point}) t={} colour {} -> {}",
            c.t, c.colour, c.image_colour
        )?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_verify(
    k: u64,
    n_scan: u64,
    half_width: u64,
    upto: bool,
    json: bool,
    oracle: Oracle,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    if k == 0 || n_scan == 0 || half_width == 0 {
        return usage_error(err, "k, --nscan and --box must all be at least 1");
    }
    let rows = if upto {
        oracle.agreement_report(k, n_scan, half_width)
    } else {
        oracle.agreement_row(k, n_scan, half_width).map(|r| vec![r])
    };
    let rows = match rows {
        Ok(rows) => rows,
        Err(e) => return usage_error(err, e),
    };
    if json {
        let v = serde_json::Value::Array(rows.iter().map(json::agreement).collect());
        write_json(out, &v)?;
    } else {
        writeln!(out, "box M={half_width}, moduli 1..={n_scan}, budget {} points", oracle.budget())?;
        for row in &rows {
            write_row(out, row)?;
        }
    }
    if rows.iter().any(|r| r.status == RowStatus::Disagree) {
        writeln!(err, "error: brute-force and symbolic moduli disagree")?;
        return Ok(EXIT_REGRESSION);
    }
    Ok(EXIT_OK)
}

pub fn cmd_mindim(n: u64, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let (k, d) = match min_dimension(n) {
        Ok(kd) => kd,
        Err(e) => return usage_error(err, e),
    };
    if json {
        write_json(out, &serde_json::json!({ "n": n, "k": k, "d": d }))?;
    } else {
        writeln!(out, "n={n} k={k} d={d}")?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_render2d(
    spec: &RenderSpec,
    path: Option<PathBuf>,
    force: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let svg = match render::render_svg(spec, force) {
        Ok(svg) => svg,
        Err(RenderError::Invalid(msg)) => return usage_error(err, msg),
    };
    match path {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, svg) {
                writeln!(err, "error: writing {}: {e}", p.display())?;
                return Ok(EXIT_IO);
            }
        }
        None => out.write_all(svg.as_bytes())?,
    }
    Ok(EXIT_OK)
}
