//! Command-line front end.
//!
//! Machine output is JSON lines of the form
//! `{"kind": …, "schema_version": "1", "payload": {…}}`; plot data is CSV.
//! Floats are written with 17 significant digits, so every value parses back
//! to the exact binary64 the library returned.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::ser::Error as _;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::branch::BranchIndex;
use crate::error::Error;
use crate::polylog::{self, PolylogZeroSet};
use crate::special_fn::Complex;
use crate::verify::{self, WindingReport};
use crate::zero_finder::{self, has_zero, ZeroCertificate};

pub const SCHEMA_VERSION: &str = "1";
pub const DEFAULT_TOL: f64 = 1e-13;
pub const DEFAULT_JMAX: usize = 39;
pub const DEFAULT_CURVE_SAMPLES: usize = 100;
/// Thread cap for table, sweep and zero-hunt fan-out; `0` or unset means one per core.
pub const THREADS_ENV: &str = "DILOG_ZEROS_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
/// A winding count disagreed with the existence theorem.
pub const EXIT_MISMATCH: i32 = 4;

pub const CURVES_HEADER: &str = "curve,param,value,residual";
pub const POLYLOG_HEADER: &str = "j,seed_re,seed_im,zero_re,zero_im,distance";

#[derive(Debug, Parser)]
#[command(name = "dilog-zeros", version, about = "Zeros of the dilogarithm on every branch")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Target error radius for certified zeros.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest spiral seed index for `polylog`.
    #[arg(long, global = true, default_value_t = DEFAULT_JMAX)]
    pub jmax: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certified zero of φ_{A,B}.
    #[command(allow_negative_numbers = true)]
    Zero { a: i64, b: i64 },
    /// Certificates for every branch with |B| ≤ BMAX, and B = 0 with 0 ≤ A ≤ BMAX.
    Table { bmax: i64 },
    /// Argument-principle counts for |A| ≤ AMAX, 0 ≤ B ≤ BMAX.
    Verify { amax: i64, bmax: i64 },
    /// The curves Im φ = 0 and Re φ = 0 across the polar rectangle, as CSV.
    #[command(allow_negative_numbers = true)]
    Curves {
        a: i64,
        b: i64,
        #[arg(default_value_t = DEFAULT_CURVE_SAMPLES)]
        n: usize,
    },
    /// Spiral-seeded zeros of Li_s, as CSV.
    #[command(allow_negative_numbers = true)]
    Polylog { s_re: f64, s_im: f64 },
    /// Eulerian polynomial A_m, its zeros and their Sobolev approximations.
    Eulerian { m: usize },
}

/// A binary64 written as `{:.16e}`; non-finite values become `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        RawValue::from_string(format!("{:.16e}", self.0))
            .map_err(S::Error::custom)?
            .serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CNum {
    pub re: Num,
    pub im: Num,
}

impl From<Complex> for CNum {
    fn from(z: Complex) -> Self {
        CNum { re: Num(z.re), im: Num(z.im) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Zero,
    Curve,
    Count,
    Polylog,
    Eulerian,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord<T> {
    pub kind: Kind,
    pub schema_version: &'static str,
    pub payload: T,
}

impl<T: Serialize> OutputRecord<T> {
    pub fn new(kind: Kind, payload: T) -> Self {
        OutputRecord { kind, schema_version: SCHEMA_VERSION, payload }
    }

    /// One JSON line, without the trailing newline.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records contain only finite-or-null numbers and strings")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlagsPayload {
    pub tol_clamped: bool,
    pub float_floor_dominates: bool,
    pub rectangle_violations: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroPayload {
    pub branch: BranchIndex,
    pub zero: CNum,
    pub error_radius: Num,
    /// Newton steps taken, `trace.len() − 1`.
    pub iterations: usize,
    pub trace: Vec<CNum>,
    pub contraction_constant: Num,
    pub a_priori_radius: Num,
    pub a_posteriori_radius: Num,
    pub float_floor: Num,
    pub tol: Num,
    pub flags: FlagsPayload,
}

impl From<&ZeroCertificate> for ZeroPayload {
    fn from(c: &ZeroCertificate) -> Self {
        ZeroPayload {
            branch: c.branch,
            zero: c.zero.into(),
            error_radius: Num(c.error_radius),
            iterations: c.iterations.len() - 1,
            trace: c.iterations.iter().map(|&z| z.into()).collect(),
            contraction_constant: Num(c.contraction_constant),
            a_priori_radius: Num(c.a_priori_radius),
            a_posteriori_radius: Num(c.a_posteriori_radius),
            float_floor: Num(c.float_floor),
            tol: Num(c.tol),
            flags: FlagsPayload {
                tol_clamped: c.flags.tol_clamped,
                float_floor_dominates: c.flags.float_floor_dominates,
                rectangle_violations: c.flags.rectangle_violations.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountPayload {
    pub branch: BranchIndex,
    pub count: i64,
    pub expected: i64,
    pub matches: bool,
    pub min_phase_step: Num,
    pub max_phase_step: Num,
    pub contour_points: usize,
    pub radius: Num,
    pub eps: Num,
    pub delta: Num,
}

impl From<&WindingReport> for CountPayload {
    fn from(r: &WindingReport) -> Self {
        let expected = verify::expected_count(r.branch);
        CountPayload {
            branch: r.branch,
            count: r.count,
            expected,
            matches: r.count == expected,
            min_phase_step: Num(r.min_phase_step),
            max_phase_step: Num(r.max_phase_step),
            contour_points: r.contour_points,
            radius: Num(r.radius),
            eps: Num(r.eps),
            delta: Num(r.delta),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePayload {
    pub branch: BranchIndex,
    pub samples: usize,
    pub r1: Num,
    pub r2: Num,
    pub theta1: Num,
    pub theta2: Num,
    pub path: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolylogPayload {
    pub s: CNum,
    pub method: String,
    pub jmax: usize,
    pub zeros: usize,
    pub failed: Vec<usize>,
    pub deflated: Vec<usize>,
    pub path: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EulerianZero {
    pub j: usize,
    pub zero: Num,
    pub sobolev: Num,
    pub epsilon: Num,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EulerianPayload {
    pub m: usize,
    /// Exact coefficients of `A_m`, constant term first, as decimal strings.
    pub coefficients: Vec<String>,
    pub zeros: Vec<EulerianZero>,
}

/// The certificate for one branch as a record.
pub fn cmd_zero(b: BranchIndex, tol: f64) -> crate::Result<OutputRecord<ZeroPayload>> {
    let cert = zero_finder::find_zero(b, tol)?;
    Ok(OutputRecord::new(Kind::Zero, (&cert).into()))
}

/// Branches listed by `table`, ordered by `B` then `A`.
pub fn table_branches(bmax: i64) -> Vec<BranchIndex> {
    let mut out = Vec::new();
    for b in -bmax..=bmax {
        let a_range = if b == 0 { 0..=bmax } else { -b.abs()..=b.abs() };
        out.extend(a_range.map(|a| BranchIndex::new(a, b)).filter(|&br| has_zero(br)));
    }
    out
}

/// One certificate record per branch from [`table_branches`], computed in
/// parallel and returned in table order.
pub fn cmd_table(bmax: i64, tol: f64) -> crate::Result<Vec<OutputRecord<ZeroPayload>>> {
    if bmax < 0 {
        return Err(Error::Domain(format!("table needs bmax >= 0, got {bmax}")));
    }
    table_branches(bmax).par_iter().map(|&b| cmd_zero(b, tol)).collect()
}

/// Outcome of a winding sweep, in sweep order (`B` then `A`).
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOutcome {
    pub records: Vec<OutputRecord<CountPayload>>,
    pub mismatches: Vec<BranchIndex>,
    pub inconclusive: Vec<(BranchIndex, String)>,
}

pub fn cmd_verify(amax: i64, bmax: i64) -> crate::Result<VerifyOutcome> {
    if amax < 0 || bmax < 0 {
        return Err(Error::Domain(format!("verify needs amax, bmax >= 0, got {amax}, {bmax}")));
    }
    let branches: Vec<BranchIndex> = (0..=bmax)
        .flat_map(|b| (-amax..=amax).map(move |a| BranchIndex::new(a, b)))
        .collect();
    let reports: Vec<_> = branches.par_iter().map(|&b| verify::winding_count_default(b)).collect();
    let mut out = VerifyOutcome { records: Vec::new(), mismatches: Vec::new(), inconclusive: Vec::new() };
    for (b, report) in branches.into_iter().zip(reports) {
        match report {
            Ok(r) => {
                let payload = CountPayload::from(&r);
                if !payload.matches {
                    out.mismatches.push(b);
                }
                out.records.push(OutputRecord::new(Kind::Count, payload));
            }
            Err(e) => out.inconclusive.push((b, e.to_string())),
        }
    }
    Ok(out)
}

/// One CSV row of curve data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveRow {
    pub curve: char,
    pub param: f64,
    pub value: f64,
    pub residual: f64,
}

/// `n` samples of `r = g(θ)` across `[θ₁, θ₂]` and of `θ = h(r)` across
/// `[r₁, r₂]`, at the midpoints of `n` equal cells.
pub fn cmd_curves(b: BranchIndex, n: usize) -> crate::Result<(zero_finder::PolarRectangle, Vec<CurveRow>)> {
    if n == 0 {
        return Err(Error::Domain("curves needs n >= 1".into()));
    }
    let rect = zero_finder::polar_rectangle(b)?;
    let at = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * (i as f64 + 0.5) / n as f64;
    let mut rows = Vec::with_capacity(2 * n);
    for i in 0..n {
        let s = verify::curve_g(b.b, at(rect.theta1, rect.theta2, i))?;
        rows.push(CurveRow { curve: 'g', param: s.param, value: s.value, residual: s.residual });
    }
    for i in 0..n {
        let s = verify::curve_h(b, at(rect.r1, rect.r2, i))?;
        rows.push(CurveRow { curve: 'h', param: s.param, value: s.value, residual: s.residual });
    }
    Ok((rect, rows))
}

pub fn curves_csv(rows: &[CurveRow]) -> String {
    let mut out = format!("{CURVES_HEADER}\n");
    for r in rows {
        let _ = writeln!(out, "{},{:.16e},{:.16e},{:.16e}", r.curve, r.param, r.value, r.residual);
    }
    out
}

pub fn cmd_polylog(s: Complex, jmax: usize) -> crate::Result<PolylogZeroSet> {
    polylog::find_polylog_zeros(s, jmax)
}

/// One row per converged zero; failed seeds have no row.
pub fn polylog_csv(set: &PolylogZeroSet) -> String {
    let mut out = format!("{POLYLOG_HEADER}\n");
    for i in 0..set.len() {
        let (seed, zero) = (set.seeds[i], set.zeros[i]);
        let _ = writeln!(
            out,
            "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            set.approx_indices[i], seed.re, seed.im, zero.re, zero.im, set.seed_distances[i]
        );
    }
    out
}

pub fn cmd_eulerian(m: usize) -> crate::Result<OutputRecord<EulerianPayload>> {
    if m > polylog::eulerian::MAX_ZEROS_INDEX {
        return Err(Error::OutOfRange(format!(
            "eulerian needs m <= {}, got {m}",
            polylog::eulerian::MAX_ZEROS_INDEX
        )));
    }
    let p = polylog::eulerian(m)?;
    let lambdas = if m == 0 { Vec::new() } else { polylog::eulerian_zeros(m)? };
    // ascending order puts λ_j at position m − 1 − j
    let zeros = (1..m)
        .map(|j| {
            let lambda = lambdas[m - 1 - j];
            Ok(EulerianZero {
                j,
                zero: Num(lambda),
                sobolev: Num(polylog::sobolev_approx(m, j)?),
                epsilon: Num(polylog::sobolev_epsilon(m, j, lambda)),
            })
        })
        .collect::<crate::Result<Vec<_>>>()?;
    Ok(OutputRecord::new(
        Kind::Eulerian,
        EulerianPayload { m, coefficients: p.coeffs.iter().map(|c| c.to_string()).collect(), zeros },
    ))
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedBranch { .. } => EXIT_UNSUPPORTED,
        Error::Inconclusive(_) => EXIT_INCONCLUSIVE,
        _ => EXIT_USAGE,
    }
}

fn message(e: &Error) -> String {
    match e {
        Error::UnsupportedBranch { a, b } => {
            format!("no zero on branch ({a}, {b}): requires −|B|/2 < A ≤ |B|/2, or B = 0 and A ≥ 0")
        }
        e => e.to_string(),
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let n = match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| format!("{THREADS_ENV} must be a thread count, got {v:?}"))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| e.to_string())
}

enum Output {
    /// Goes to `--out` if given, else stdout.
    Main(String),
    /// Goes to `--out` (required), with a summary line on stdout.
    File(String, String),
}

/// Parse `args` (program name first), run the command and return the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut code = EXIT_OK;
    let mut notes = Vec::new();
    let result = pool.install(|| execute(&cli, &mut notes, &mut code));
    for n in notes {
        let _ = writeln!(stderr, "{n}");
    }
    let output = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", message(&e));
            return exit_code(&e);
        }
    };
    let (body, summary) = match (output, &cli.out) {
        (Output::Main(body), _) => (body, None),
        (Output::File(body, summary), Some(_)) => (body, Some(summary)),
        (Output::File(body, _), None) => (body, None),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
            if let Some(s) = summary {
                let _ = writeln!(stdout, "{s}");
            }
        }
        None => {
            let _ = stdout.write_all(body.as_bytes());
        }
    }
    code
}

fn path_text(cli: &Cli) -> String {
    cli.out.as_ref().map(|p| p.display().to_string()).unwrap_or_default()
}

fn execute(cli: &Cli, notes: &mut Vec<String>, code: &mut i32) -> crate::Result<Output> {
    Ok(match cli.command {
        Command::Zero { a, b } => Output::Main(cmd_zero(BranchIndex::new(a, b), cli.tol)?.to_json() + "\n"),
        Command::Table { bmax } => {
            let mut body = String::new();
            for r in cmd_table(bmax, cli.tol)? {
                body += &r.to_json();
                body.push('\n');
            }
            Output::Main(body)
        }
        Command::Verify { amax, bmax } => {
            let outcome = cmd_verify(amax, bmax)?;
            let mut body = String::new();
            for r in &outcome.records {
                body += &r.to_json();
                body.push('\n');
            }
            for (b, e) in &outcome.inconclusive {
                notes.push(format!("inconclusive on branch {b}: {e}"));
            }
            for b in &outcome.mismatches {
                notes.push(format!("mismatch on branch {b}"));
            }
            if !outcome.mismatches.is_empty() {
                *code = EXIT_MISMATCH;
            } else if !outcome.inconclusive.is_empty() {
                *code = EXIT_INCONCLUSIVE;
            }
            Output::Main(body)
        }
        Command::Curves { a, b, n } => {
            let branch = BranchIndex::new(a, b);
            if b < 1 {
                notes.push("curves are drawn for B >= 1 only".into());
                return Err(Error::UnsupportedBranch { a, b });
            }
            let (rect, rows) = cmd_curves(branch, n)?;
            let summary = OutputRecord::new(
                Kind::Curve,
                CurvePayload {
                    branch,
                    samples: n,
                    r1: Num(rect.r1),
                    r2: Num(rect.r2),
                    theta1: Num(rect.theta1),
                    theta2: Num(rect.theta2),
                    path: path_text(cli),
                },
            );
            Output::File(curves_csv(&rows), summary.to_json())
        }
        Command::Polylog { s_re, s_im } => {
            let set = cmd_polylog(Complex::new(s_re, s_im), cli.jmax)?;
            if !set.failed.is_empty() {
                notes.push(format!("no new zero from seeds {:?}", set.failed));
            }
            let summary = OutputRecord::new(
                Kind::Polylog,
                PolylogPayload {
                    s: set.s.into(),
                    method: set.method.to_string(),
                    jmax: cli.jmax,
                    zeros: set.len(),
                    failed: set.failed.clone(),
                    deflated: set.deflated.clone(),
                    path: path_text(cli),
                },
            );
            Output::File(polylog_csv(&set), summary.to_json())
        }
        Command::Eulerian { m } => Output::Main(cmd_eulerian(m)?.to_json() + "\n"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["dilog-zeros"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn number_format() {
        let s = serde_json::to_string(&Num(-5995.5)).unwrap();
        assert_eq!(s, "-5.9955000000000000e3");
        assert_eq!(serde_json::to_string(&Num(f64::NAN)).unwrap(), "null");
        for x in [0.1, 1.0 / 3.0, f64::MIN_POSITIVE, 1e300, -0.0] {
            let s = serde_json::to_string(&Num(x)).unwrap();
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }

    #[test]
    fn table_enumeration() {
        let b = table_branches(1);
        let want = [(0, -1), (0, 0), (1, 0), (0, 1)].map(|(a, b)| BranchIndex::new(a, b));
        assert_eq!(b, want);
        assert!(table_branches(3).contains(&BranchIndex::new(-1, 3)));
        assert!(table_branches(3).contains(&BranchIndex::new(1, 3)));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["zero", "2", "3"]).0, EXIT_UNSUPPORTED);
        assert_eq!(run_str(&["zero", "x"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
        let (code, out, _) = run_str(&["verify", "0", "0"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("\"count\":1"));
    }

    #[test]
    fn eulerian_record() {
        let r = cmd_eulerian(4).unwrap();
        assert_eq!(r.payload.coefficients, ["1", "11", "11", "1"]);
        assert!(cmd_eulerian(1).unwrap().payload.zeros.is_empty());
        assert_eq!(cmd_eulerian(0).unwrap().payload.coefficients, ["1"]);
        assert!(cmd_eulerian(61).is_err());
    }
}
