//! Command-line front end.
//!
//! Subcommands: `classify`, `scan`, `similarity`, `resolvent`, `metric`,
//! `oracle`. Couplings are passed as `--a --b --c --d` complex literals in
//! the form `re[+im i]` (examples: `-2`, `3i`, `1.5-0.5i`, `1e-3+2e1i`).
//! Exit codes: 0 success, 1 numeric failure, 2 usage/parse error.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::coupling::CouplingMatrix;
use crate::expsum::TwoSidedExponentialSum;
use crate::fd::{compare, DiscretizationConfig};
use crate::krein::{metric_identity_residual, solve_metric};
use crate::report;
use crate::resolvent::{
    apply_resolvent, boundedness_functions, integral_criterion, resolvent_difference_coeffs,
    default_test_inputs, similarity_verdict, Side, SimilarBasis, SimilarityVerdict,
};
use crate::scan::{run_scan, write_csv, Entry, Plane, ScanSpec};
use crate::{Error, Result};

/// Parse a complex literal `re[+im i]` with optional parts:
/// `-2`, `3i`, `i`, `-i`, `1+2i`, `1.5e-3-2e+1i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = |msg: &str| Error::Parse { what: format!("complex literal {s:?}"), message: msg.into() };
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty input"));
    }
    if !compact.ends_with('i') {
        return compact
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|e| bad(&e.to_string()));
    }
    let body = &compact[..compact.len() - 1];
    let coeff = |s: &str| -> Result<f64> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => s.parse::<f64>().map_err(|e| bad(&e.to_string())),
        }
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re = body[..k].parse::<f64>().map_err(|e| bad(&e.to_string()))?;
            Ok(Complex64::new(re, coeff(&body[k..])?))
        }
        None => Ok(Complex64::new(0.0, coeff(body)?)),
    }
}

fn complex_arg(s: &str) -> std::result::Result<Complex64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

/// `lo:hi` range.
fn range_arg(s: &str) -> std::result::Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    Ok((lo, hi))
}

/// `N` (square) or `NXxNY`.
fn res_arg(s: &str) -> std::result::Result<(usize, usize), String> {
    if let Some((nx, ny)) = s.split_once('x') {
        let nx: usize = nx.trim().parse().map_err(|e| format!("bad x resolution: {e}"))?;
        let ny: usize = ny.trim().parse().map_err(|e| format!("bad y resolution: {e}"))?;
        Ok((nx, ny))
    } else {
        let n: usize = s.trim().parse().map_err(|e| format!("bad resolution: {e}"))?;
        Ok((n, n))
    }
}

#[derive(Clone, Debug)]
struct EpsLadder(Vec<f64>);

fn eps_arg(s: &str) -> std::result::Result<EpsLadder, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let v: f64 = part.trim().parse().map_err(|e| format!("bad ε value {part:?}: {e}"))?;
        if v <= 0.0 || v.is_nan() {
            return Err(format!("ε must be positive, got {part:?}"));
        }
        out.push(v);
    }
    Ok(EpsLadder(out))
}

#[derive(Parser, Debug)]
#[command(
    name = "pointspec",
    about = "Spectral analysis of 1-D Schrödinger operators with complex zero-range potentials",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone, Copy)]
struct TFlags {
    /// δ coupling a (complex literal re[+im i])
    #[arg(long, value_parser = complex_arg, default_value = "0", allow_hyphen_values = true)]
    a: Complex64,
    /// δ′→δ coupling b
    #[arg(long, value_parser = complex_arg, default_value = "0", allow_hyphen_values = true)]
    b: Complex64,
    /// δ→δ′ coupling c
    #[arg(long, value_parser = complex_arg, default_value = "0", allow_hyphen_values = true)]
    c: Complex64,
    /// δ′ coupling d
    #[arg(long, value_parser = complex_arg, default_value = "0", allow_hyphen_values = true)]
    d: Complex64,
}

impl TFlags {
    fn matrix(&self) -> CouplingMatrix {
        CouplingMatrix::new(self.a, self.b, self.c, self.d)
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Full spectral classification as a JSON report
    Classify(TFlags),
    /// Parameter-plane scan written as CSV (`x,y,D,K,label`)
    Scan(ScanArgs),
    /// Similarity-to-self-adjoint verdict
    Similarity(TFlags),
    /// Closed-form resolvent data at one τ, plus the ε-ladder estimates
    Resolvent(ResolventArgs),
    /// Krein metric angle φ and hyperbolic parameter χ (PT operators)
    Metric(TFlags),
    /// Finite-difference cross-check of the closed-form eigenvalues
    Oracle(OracleArgs),
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[command(flatten)]
    t: TFlags,
    /// plane: complex-a | complex-d | xy | custom:<e>,<e> with e ∈ a,b,c,d
    #[arg(long, default_value = "complex-a")]
    plane: String,
    #[arg(long, value_parser = range_arg, default_value = "-2:2", allow_hyphen_values = true)]
    range_x: (f64, f64),
    #[arg(long, value_parser = range_arg, default_value = "-2:2", allow_hyphen_values = true)]
    range_y: (f64, f64),
    /// grid resolution: N or NXxNY
    #[arg(long, value_parser = res_arg, default_value = "81")]
    res: (usize, usize),
    /// output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
struct ResolventArgs {
    #[command(flatten)]
    t: TFlags,
    /// spectral parameter τ (z = τ²), Im τ > 0
    #[arg(long, value_parser = complex_arg, default_value = "0.5+1.5i", allow_hyphen_values = true)]
    tau: Complex64,
    /// ε ladder for the line-integral estimates
    #[arg(long, value_parser = eps_arg, default_value = "1,0.1,0.01,0.001")]
    eps_ladder: EpsLadder,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    t: TFlags,
    /// box half-length
    #[arg(long = "fd-L", default_value_t = 30.0)]
    fd_l: f64,
    /// grid points per half-line
    #[arg(long = "fd-N", default_value_t = 3000)]
    fd_n: usize,
}

/// 15 significant digits.
fn num(x: f64) -> String {
    format!("{x:.14e}")
}

fn cnum(z: Complex64) -> String {
    let im = if z.im == 0.0 { 0.0 } else { z.im }; // drop the sign of −0.0
    if im >= 0.0 || im.is_nan() {
        format!("{}+{}i", num(z.re), num(im))
    } else {
        format!("{}-{}i", num(z.re), num(-im))
    }
}

/// Run the CLI against explicit arguments and writers; returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return e.exit_code();
        }
    };
    let result = match cli.cmd {
        Cmd::Classify(t) => cmd_classify(&t, out),
        Cmd::Scan(args) => cmd_scan(&args, out),
        Cmd::Similarity(t) => cmd_similarity(&t, out),
        Cmd::Resolvent(args) => cmd_resolvent(&args, out),
        Cmd::Metric(t) => cmd_metric(&t, out),
        Cmd::Oracle(args) => cmd_oracle(&args, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Parse { .. } => 2,
                _ => 1,
            }
        }
    }
}

/// Entry point for the binary: environment args, stdout/stderr.
pub fn run_from_env() -> i32 {
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run(std::env::args(), &mut out, &mut err)
}

fn cmd_classify(t: &TFlags, out: &mut dyn Write) -> Result<i32> {
    let report = report::build(&t.matrix());
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    writeln!(out, "{json}").ok();
    Ok(0)
}

fn parse_plane(s: &str, t: &TFlags) -> Result<Plane> {
    let bad = |msg: String| Error::Parse { what: format!("--plane {s:?}"), message: msg };
    match s {
        "complex-a" => Ok(Plane::ComplexA),
        "complex-d" => Ok(Plane::ComplexD),
        "xy" => Ok(Plane::Xy { a: t.a.re, d: t.d.re }),
        other => {
            let spec = other
                .strip_prefix("custom:")
                .ok_or_else(|| bad("expected complex-a, complex-d, xy or custom:<e>,<e>".into()))?;
            let (ex, ey) = spec
                .split_once(',')
                .ok_or_else(|| bad("custom plane needs two entries, e.g. custom:a,d".into()))?;
            let entry = |name: &str| match name.trim() {
                "a" => Ok(Entry::A),
                "b" => Ok(Entry::B),
                "c" => Ok(Entry::C),
                "d" => Ok(Entry::D),
                other => Err(bad(format!("unknown entry {other:?}"))),
            };
            Ok(Plane::Custom { entry_x: entry(ex)?, entry_y: entry(ey)?, base: t.matrix() })
        }
    }
}

fn cmd_scan(args: &ScanArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = ScanSpec {
        plane: parse_plane(&args.plane, &args.t)?,
        range_x: args.range_x,
        range_y: args.range_y,
        res_x: args.res.0,
        res_y: args.res.1,
    };
    let records = run_scan(&spec)?;
    match &args.out {
        Some(path) => {
            let mut file = std::fs::File::create(path).map_err(|e| Error::Parse {
                what: format!("--out {}", path.display()),
                message: e.to_string(),
            })?;
            if let Err(e) = write_csv(&records, &mut file) {
                return Err(Error::Parse { what: format!("--out {}", path.display()), message: e.to_string() });
            }
        }
        None => {
            write_csv(&records, out).ok();
        }
    }
    Ok(0)
}

fn describe_verdict(v: &SimilarityVerdict, out: &mut dyn Write) {
    match v {
        SimilarityVerdict::Similar { basis } => {
            writeln!(out, "verdict: similar").ok();
            match basis {
                SimilarBasis::SelfAdjoint => {
                    writeln!(out, "basis: self-adjoint in the original inner product").ok();
                }
                SimilarBasis::KreinMetric { phi, chi } => {
                    writeln!(out, "basis: krein-metric phi={}", num(*phi)).ok();
                    match chi {
                        Some(chi) => {
                            writeln!(out, "chi={} tanh(chi)={}", num(*chi), num(chi.tanh())).ok();
                        }
                        None => {
                            writeln!(out, "chi: none (nonconstructive branch, resolvent bounds)").ok();
                        }
                    }
                }
                SimilarBasis::BoundedResolventFunctions => {
                    writeln!(out, "basis: resolvent functions uniformly bounded (roots avoid the closed first quadrant)").ok();
                }
            }
        }
        SimilarityVerdict::NotSimilar { reason } => {
            writeln!(out, "verdict: not-similar").ok();
            writeln!(out, "reason: {}", serde_json::to_string(reason).unwrap().trim_matches('"')).ok();
        }
        SimilarityVerdict::Evidence(e) => {
            writeln!(out, "verdict: evidence (no closed-form decision)").ok();
            for (f, s) in &e.sup_estimates {
                writeln!(
                    out,
                    "sup {:?}: value={} at tau={} diverging={}",
                    f,
                    num(s.sup_value),
                    cnum(s.arg_tau),
                    s.diverging
                )
                .ok();
            }
            if let Some(tbl) = &e.integral {
                for row in &tbl.rows {
                    writeln!(
                        out,
                        "integral eps={} g{}: value={} adjoint={} (R={})",
                        num(row.eps),
                        row.input_index,
                        num(row.value),
                        num(row.adjoint_value),
                        row.radius
                    )
                    .ok();
                }
            }
            writeln!(out, "looks-bounded: {}", e.looks_bounded).ok();
        }
    }
}

fn cmd_similarity(t: &TFlags, out: &mut dyn Write) -> Result<i32> {
    let m = t.matrix();
    writeln!(
        out,
        "symmetry: {}",
        serde_json::to_string(&m.symmetry_class()).unwrap().trim_matches('"')
    )
    .ok();
    describe_verdict(&similarity_verdict(&m), out);
    Ok(0)
}

fn cmd_resolvent(args: &ResolventArgs, out: &mut dyn Write) -> Result<i32> {
    let t = args.t.matrix();
    let tau = args.tau;
    writeln!(out, "tau: {}  z=tau^2: {}", cnum(tau), cnum(tau * tau)).ok();
    for (side, g) in [
        (Side::Plus, TwoSidedExponentialSum::g_plus(tau)),
        (Side::Minus, TwoSidedExponentialSum::g_minus(tau)),
    ] {
        let (c1, c2) = resolvent_difference_coeffs(&t, tau, side)?;
        writeln!(out, "side {side:?}: c1={} c2={}", cnum(c1), cnum(c2)).ok();
        match apply_resolvent(&t, tau, &g) {
            Ok(dec) => {
                let scale = c1.norm().max(c2.norm()).max(1e-300);
                let mismatch = (dec.c1 - c1).norm().max((dec.c2 - c2).norm()) / scale;
                writeln!(out, "        cross-check residual (2x2 solve vs closed form): {}", num(mismatch)).ok();
            }
            Err(Error::PoleCollision { .. }) => {
                writeln!(out, "        cross-check skipped: canonical input resonant at this tau (Re tau = 0)").ok();
            }
            Err(e) => return Err(e),
        }
    }
    let b = boundedness_functions(&t, tau);
    for (name, v) in [
        ("M+", &b.m_plus),
        ("M-", &b.m_minus),
        ("M'+", &b.m_adj_plus),
        ("M'-", &b.m_adj_minus),
        ("Phi+", &b.phi_plus),
        ("Phi-", &b.phi_minus),
    ] {
        match v {
            Ok(v) => writeln!(out, "{name}: {}", num(*v)).ok(),
            Err(e) => writeln!(out, "{name}: {e}").ok(),
        };
    }
    match integral_criterion(&t, &args.eps_ladder.0, &default_test_inputs()) {
        Ok(tbl) => {
            for row in &tbl.rows {
                writeln!(
                    out,
                    "integral eps={} g{}: value={} adjoint={} (R={})",
                    num(row.eps),
                    row.input_index,
                    num(row.value),
                    num(row.adjoint_value),
                    row.radius
                )
                .ok();
            }
            writeln!(out, "integral max: {} adjoint max: {}", num(tbl.max_value), num(tbl.max_adjoint_value)).ok();
        }
        Err(Error::ComplexSpectrum) => {
            writeln!(out, "integral criterion skipped: spectrum is not real").ok();
        }
        Err(e) => return Err(e),
    }
    Ok(0)
}

fn cmd_metric(t: &TFlags, out: &mut dyn Write) -> Result<i32> {
    let m = t.matrix();
    let spec = solve_metric(&m)?;
    writeln!(out, "phi: {}", num(spec.phi)).ok();
    writeln!(out, "phi-family: {}", spec.phi_family).ok();
    match spec.chi {
        Some(chi) => {
            writeln!(out, "chi: {}", num(chi)).ok();
            writeln!(out, "tanh(chi): {}", num(chi.tanh())).ok();
            writeln!(out, "identity-residual: {}", num(metric_identity_residual(&m, spec.phi, chi))).ok();
        }
        None => {
            writeln!(out, "chi: no real solution (D <= 0)").ok();
        }
    }
    Ok(0)
}

fn cmd_oracle(args: &OracleArgs, out: &mut dyn Write) -> Result<i32> {
    let t = args.t.matrix();
    let cfg = DiscretizationConfig::new(args.fd_l, args.fd_n)?;
    let rep = compare(&t, &cfg)?;
    let mut all_pass = true;
    for e in &rep.entries {
        let status = if e.disagree { "FAIL" } else { "PASS" };
        all_pass &= !e.disagree;
        writeln!(
            out,
            "{status} z_closed={} z_fd={} err={} err_refined={} richardson={}",
            cnum(e.z_closed),
            cnum(e.z_fd),
            num(e.abs_err),
            num(e.abs_err_refined),
            num(e.discretization_err)
        )
        .ok();
    }
    for tau in &rep.skipped {
        writeln!(out, "SKIP tau={} (eigenfunction too shallow for the box)", cnum(*tau)).ok();
    }
    if rep.entries.is_empty() {
        writeln!(out, "no isolated eigenvalues to compare").ok();
    }
    Ok(if all_pass { 0 } else { 1 })
}
