//! Command-line front end. [`run`] parses arguments, executes one command and
//! returns the rendered document with the process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | verified / all checks pass |
//! | 1 | counterexample |
//! | 2 | indeterminate at the precision ceiling, or the generator gave up |
//! | 3 | usage or parse error |
//! | 4 | a precondition of the command does not hold |

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;

use crate::error::{Error, Result};
use crate::interlace::{combine, interlaces, weakly_interlaces, CombineParams, ZeroList};
use crate::parse::{parse_angle, parse_angle_range, parse_polynomial, parse_rational};
use crate::poly::{Angle, Polynomial};
use crate::precision;
use crate::ray::trace_quadrants;
use crate::report::{self, certificate_document, Document, RootRecord};
use crate::sector::{
    find_root_enclosures, fuzz_instance, min_argument_with, verify_proof_steps, verify_theorem_with, BoundaryPolicy,
    CertifyOptions, FuzzSpec, Verdict,
};

pub const EXIT_VERIFIED: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_INDETERMINATE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

const MAX_DEGREE: usize = 64;

#[derive(Parser, Debug)]
#[command(name = "sector", version, about = "Certified zero localization for polynomials with non-negative coefficients")]
pub struct Cli {
    /// Largest working precision in bits.
    #[arg(
        long,
        global = true,
        env = "SECTOR_PRECISION_CEILING",
        default_value_t = precision::DEFAULT_CEILING_BITS,
        value_parser = clap::value_parser!(u32).range(64..)
    )]
    precision_ceiling: u32,

    /// Largest radius of a root enclosure.
    #[arg(long, global = true, default_value_t = 1e-12)]
    radius_target: f64,

    /// Verdict for a zero exactly on the sector boundary.
    #[arg(long, global = true, value_enum, default_value_t = Boundary::Verified)]
    boundary: Boundary,

    /// Write the document here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Record the wall-clock time in the document (breaks byte-for-byte reproducibility).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Boundary {
    Verified,
    Indeterminate,
}

#[derive(Args, Debug)]
struct PolyArg {
    /// Ascending coefficients ("1,2,3/2") or monomials ("z^2+2z+1").
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
}

#[derive(Args, Debug)]
struct ThetaArg {
    /// Ray angle as a multiple of pi, e.g. "3/5pi".
    #[arg(long)]
    theta: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certified enclosures of all zeros.
    Roots(PolyArg),
    /// Net change of the argument along a ray, with the crossing record.
    Delta {
        #[command(flatten)]
        poly: PolyArg,
        #[command(flatten)]
        theta: ThetaArg,
    },
    /// Zeros in the upper sector 0 < arg z < theta, cross-checked against root enclosures.
    CountSector {
        #[command(flatten)]
        poly: PolyArg,
        #[command(flatten)]
        theta: ThetaArg,
    },
    /// Interlacing of the real zeros of two polynomials, optionally of the combinations a u + b v, c u - d v.
    Interlace {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        /// Positive weights "a,b,c,d".
        #[arg(long)]
        weights: Option<String>,
        /// Use weak interlacing for both hypothesis and conclusion.
        #[arg(long)]
        weak: bool,
    },
    /// Certify that every zero of the derivative lies in S(phi).
    #[command(group(ArgGroup::new("source").required(true).args(["poly", "poly_file"])))]
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        /// One polynomial per line; blank lines and lines starting with '#' are skipped.
        #[arg(long)]
        poly_file: Option<PathBuf>,
        /// Sector angle as a multiple of pi, e.g. "2/3pi".
        #[arg(long)]
        phi: String,
    },
    /// Evaluate every intermediate claim of the derivative argument on one instance.
    ProofSteps {
        #[command(flatten)]
        poly: PolyArg,
        #[command(flatten)]
        theta: ThetaArg,
    },
    /// Generate random sector polynomials and certify each derivative.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value = "1/10pi:9/20pi")]
        phi_range: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "2:24")]
        degree_range: String,
    },
    /// Certified lower bound on the smallest |arg z| over the zeros.
    MinArg(PolyArg),
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::OutOfRange(_) => EXIT_USAGE,
        Error::SignIndeterminate { .. } | Error::CertificationFailed(_) | Error::GenerationExhausted { .. } => {
            EXIT_INDETERMINATE
        }
        _ => EXIT_PRECONDITION,
    }
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Verified => EXIT_VERIFIED,
        Verdict::Counterexample => EXIT_COUNTEREXAMPLE,
        Verdict::Indeterminate => EXIT_INDETERMINATE,
    }
}

/// Severity order used to summarize several codes into one.
fn worst(a: i32, b: i32) -> i32 {
    let rank = |c: i32| match c {
        EXIT_COUNTEREXAMPLE => 4,
        EXIT_INDETERMINATE => 3,
        EXIT_PRECONDITION => 2,
        EXIT_USAGE => 1,
        _ => 0,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    if !(cli.radius_target > 0.0 && cli.radius_target.is_finite()) {
        return Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: --radius-target must be positive, got {}\n", cli.radius_target),
        };
    }
    precision::set_ceiling(cli.precision_ceiling);
    let start = Instant::now();
    let (code, mut doc) = match execute(&cli) {
        Ok(pair) => pair,
        Err(e) => {
            return Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") };
        }
    };
    if cli.timing {
        doc.set_runtime(start.elapsed().as_millis() as u64);
    }
    let text = match doc {
        Rendered::One(d) => d.to_json(),
        Rendered::Many(ds) => {
            let mut s = serde_json::to_string_pretty(&ds).expect("documents serialize");
            s.push('\n');
            s
        }
    };
    match &cli.output {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
        None => Outcome { code, stdout: text, stderr: String::new() },
    }
}

enum Rendered {
    One(Box<Document>),
    Many(Vec<Document>),
}

impl Rendered {
    fn set_runtime(&mut self, ms: u64) {
        match self {
            Rendered::One(d) => d.runtime_ms = Some(ms),
            Rendered::Many(ds) => ds.iter_mut().for_each(|d| d.runtime_ms = Some(ms)),
        }
    }
}

fn options(cli: &Cli) -> CertifyOptions {
    CertifyOptions {
        radius_target: cli.radius_target,
        boundary: match cli.boundary {
            Boundary::Verified => BoundaryPolicy::Verified,
            Boundary::Indeterminate => BoundaryPolicy::Indeterminate,
        },
    }
}

fn base(cli: &Cli, command: &str) -> Document {
    Document::new(command)
        .param("precision_ceiling", cli.precision_ceiling)
        .param("radius_target", format!("{:e}", cli.radius_target))
        .param("boundary", format!("{:?}", cli.boundary).to_lowercase())
}

/// Adds the global settings to a document built by the library.
fn with_base(cli: &Cli, mut doc: Document) -> Document {
    let extra = base(cli, &doc.command);
    doc.parameters.extend(extra.parameters);
    doc
}

fn one(code: i32, doc: Document) -> Result<(i32, Rendered)> {
    Ok((code, Rendered::One(Box::new(doc))))
}

fn execute(cli: &Cli) -> Result<(i32, Rendered)> {
    match &cli.command {
        Command::Roots(a) => roots(cli, &parse_polynomial(&a.poly)?),
        Command::Delta { poly, theta } => delta(cli, &parse_polynomial(&poly.poly)?, parse_angle(&theta.theta)?),
        Command::CountSector { poly, theta } => {
            count_sector(cli, &parse_polynomial(&poly.poly)?, parse_angle(&theta.theta)?)
        }
        Command::Interlace { u, v, weights, weak } => {
            let weights = weights.as_deref().map(parse_weights).transpose()?;
            interlace(cli, &parse_polynomial(u)?, &parse_polynomial(v)?, weights, *weak)
        }
        Command::Verify { poly, poly_file, phi } => {
            let phi = parse_angle(phi)?;
            match (poly, poly_file) {
                (Some(text), _) => {
                    let doc = verify(cli, &parse_polynomial(text)?, phi)?;
                    let code = verdict_code(verdict_of(&doc));
                    one(code, doc)
                }
                (None, Some(path)) => verify_batch(cli, path, phi),
                (None, None) => unreachable!("clap requires a source"),
            }
        }
        Command::ProofSteps { poly, theta } => {
            proof_steps(cli, &parse_polynomial(&poly.poly)?, parse_angle(&theta.theta)?)
        }
        Command::Fuzz { trials, phi_range, seed, degree_range } => {
            fuzz(cli, *trials, parse_angle_range(phi_range)?, *seed, parse_degree_range(degree_range)?)
        }
        Command::MinArg(a) => min_arg(cli, &parse_polynomial(&a.poly)?),
    }
}

fn verdict_of(doc: &Document) -> Verdict {
    match doc.verdict.as_str() {
        "verified" => Verdict::Verified,
        "counterexample" => Verdict::Counterexample,
        _ => Verdict::Indeterminate,
    }
}

fn parse_weights(text: &str) -> Result<CombineParams> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::Parse { pos: 0, msg: "expected four weights a,b,c,d".into() });
    }
    let w: Vec<BigRational> = parts.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
    let [a, b, c, d]: [BigRational; 4] = w.try_into().expect("four weights");
    CombineParams::new(a, b, c, d)
}

fn parse_degree_range(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse { pos: 0, msg: format!("expected 'lo:hi' degrees, got '{text}'") };
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    let lo: usize = a.trim().parse().map_err(|_| bad())?;
    let hi: usize = b.trim().parse().map_err(|_| bad())?;
    if lo < 2 || hi > MAX_DEGREE || lo > hi {
        return Err(Error::OutOfRange(format!("degree range {text} (allowed within 2:{MAX_DEGREE})")));
    }
    Ok((lo, hi))
}

fn roots(cli: &Cli, p: &Polynomial) -> Result<(i32, Rendered)> {
    let doc = report::roots_document(p, cli.radius_target)?;
    one(EXIT_VERIFIED, with_base(cli, doc))
}

fn delta(cli: &Cli, p: &Polynomial, theta: Angle) -> Result<(i32, Rendered)> {
    let doc = report::delta_document(p, theta)?;
    one(EXIT_VERIFIED, with_base(cli, doc))
}

fn count_sector(cli: &Cli, p: &Polynomial, theta: Angle) -> Result<(i32, Rendered)> {
    let m = trace_quadrants(p, theta)?.variation()?.m;
    let enclosures = find_root_enclosures(p, cli.radius_target)?;
    let prec = 128;
    let ray = theta.radians(prec);
    let mut inside = 0;
    let mut undecided = false;
    for r in enclosures.iter().filter(|r| r.in_upper_half()) {
        match r.abs_arg(prec) {
            Some(a) if a.hi() < ray.lo() => inside += r.multiplicity,
            Some(a) if a.lo() > ray.hi() => {}
            _ => undecided = true,
        }
    }
    let verdict = if undecided {
        Verdict::Indeterminate
    } else if inside == m {
        Verdict::Verified
    } else {
        Verdict::Counterexample
    };
    let mut doc = base(cli, "count-sector").with_input("p", p).param("theta", theta).verdict(verdict);
    doc.roots = enclosures.iter().map(|r| RootRecord::from_enclosure("p", r)).collect();
    doc.precision_bits = enclosures.iter().map(|r| r.precision).max().unwrap_or(0);
    doc.result = Some(json!({ "winding_count": m, "enclosure_count": inside }));
    one(verdict_code(verdict), doc)
}

fn zeros_json(z: &ZeroList) -> Result<Vec<String>> {
    Ok(z.narrowed(&report::display_width())?.iter().map(report::zero_point).collect())
}

fn interlace(
    cli: &Cli,
    u: &Polynomial,
    v: &Polynomial,
    weights: Option<CombineParams>,
    weak: bool,
) -> Result<(i32, Rendered)> {
    let zu = ZeroList::of_polynomial(u)?;
    let zv = ZeroList::of_polynomial(v)?;
    let strict = interlaces(&zu, &zv)?;
    let weakly = weakly_interlaces(&zu, &zv)?;
    let mut doc = base(cli, "interlace").with_input("u", u).with_input("v", v).param("weak", weak);
    let mut result = json!({
        "u_zeros": zeros_json(&zu)?,
        "v_zeros": zeros_json(&zv)?,
        "interlace": strict,
        "weakly_interlace": weakly,
    });
    let Some(params) = weights else {
        doc.result = Some(result);
        return one(EXIT_VERIFIED, doc);
    };
    let [a, b, c, d] = params.weights();
    doc = doc.param("weights", format!("{a},{b},{c},{d}"));
    if !(if weak { weakly } else { strict }) {
        let what = if weak { "weakly interlace" } else { "interlace" };
        return Err(Error::HypothesisViolated(format!("the zeros of u and v do not {what}")));
    }
    let (big_u, big_v) = combine(u, v, &params)?;
    let (z_u, z_v) = (ZeroList::of_polynomial(&big_u)?, ZeroList::of_polynomial(&big_v)?);
    let out_strict = interlaces(&z_u, &z_v)?;
    let out_weak = weakly_interlaces(&z_u, &z_v)?;
    let holds = if weak { out_weak } else { out_strict };
    result["combined"] = json!({
        "U": report::InputRecord::new("U", &big_u),
        "V": report::InputRecord::new("V", &big_v),
        "U_zeros": zeros_json(&z_u)?,
        "V_zeros": zeros_json(&z_v)?,
        "interlace": out_strict,
        "weakly_interlace": out_weak,
    });
    doc.result = Some(result);
    let verdict = if holds { Verdict::Verified } else { Verdict::Counterexample };
    one(verdict_code(verdict), doc.verdict(verdict))
}

fn verify(cli: &Cli, p: &Polynomial, phi: Angle) -> Result<Document> {
    let cert = verify_theorem_with(p, phi, &options(cli))?;
    Ok(with_base(cli, certificate_document(&cert)))
}

fn verify_batch(cli: &Cli, path: &PathBuf, phi: Angle) -> Result<(i32, Rendered)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse { pos: 0, msg: format!("cannot read {}: {e}", path.display()) })?;
    let mut code = EXIT_VERIFIED;
    let mut docs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let outcome = parse_polynomial(line).and_then(|p| verify(cli, &p, phi));
        let doc = match outcome {
            Ok(d) => {
                code = worst(code, verdict_code(verdict_of(&d)));
                d
            }
            Err(e) => {
                code = worst(code, exit_code(&e));
                let mut d = base(cli, "verify").param("phi", phi);
                d.verdict = "error".into();
                d.result = Some(json!({ "line": i + 1, "text": line, "error": e.to_string() }));
                d
            }
        };
        docs.push(doc.param("line", i + 1));
    }
    Ok((code, Rendered::Many(docs)))
}

fn proof_steps(cli: &Cli, p: &Polynomial, theta: Angle) -> Result<(i32, Rendered)> {
    let report = verify_proof_steps(p, theta)?;
    let verdict = if report.all_pass() { Verdict::Verified } else { Verdict::Counterexample };
    let mut doc = base(cli, "proof-steps").with_input("p", p).param("theta", theta).verdict(verdict);
    doc.proof_steps = Some((&report).into());
    one(verdict_code(verdict), doc)
}

struct Trial {
    index: u64,
    seed: u64,
    degree: usize,
    phi: Option<Angle>,
    poly: Option<Polynomial>,
    outcome: Result<(Verdict, u32, Vec<String>)>,
}

fn run_trial(spec: &FuzzSpec, index: u64, options: &CertifyOptions) -> Trial {
    match fuzz_instance(spec, index) {
        Ok(inst) => {
            let outcome =
                verify_theorem_with(&inst.poly, inst.phi, options).map(|c| (c.verdict, c.precision_bits, c.events));
            Trial {
                index,
                seed: inst.seed,
                degree: inst.degree,
                phi: Some(inst.phi),
                poly: Some(inst.poly),
                outcome,
            }
        }
        Err(e) => Trial {
            index,
            seed: crate::sector::instance_seed(spec.seed, index),
            degree: 0,
            phi: None,
            poly: None,
            outcome: Err(e),
        },
    }
}

fn run_trials(spec: &FuzzSpec, trials: u64, options: &CertifyOptions) -> Vec<Trial> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..trials).into_par_iter().map(|i| run_trial(spec, i, options)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..trials).map(|i| run_trial(spec, i, options)).collect()
    }
}

fn fuzz(
    cli: &Cli,
    trials: u64,
    phi_range: (Angle, Angle),
    seed: u64,
    degree_range: (usize, usize),
) -> Result<(i32, Rendered)> {
    let spec = FuzzSpec::new(seed, phi_range, degree_range)?;
    let results = run_trials(&spec, trials, &options(cli));
    let (mut verified, mut counter, mut undecided, mut errors) = (0u64, 0u64, 0u64, 0u64);
    let mut code = EXIT_VERIFIED;
    let mut bits = 0;
    let mut exceptions = Vec::new();
    let mut events = Vec::new();
    for t in &results {
        let status = match &t.outcome {
            Ok((v, b, ev)) => {
                bits = bits.max(*b);
                match v {
                    Verdict::Verified => verified += 1,
                    Verdict::Counterexample => counter += 1,
                    Verdict::Indeterminate => undecided += 1,
                }
                code = worst(code, verdict_code(*v));
                if *v == Verdict::Verified {
                    continue;
                }
                events.extend(ev.iter().map(|e| format!("trial {}: {e}", t.index)));
                v.as_str().to_string()
            }
            Err(e) => {
                errors += 1;
                // a generated instance that fails is a harness problem, not a usage error
                code = worst(code, EXIT_INDETERMINATE);
                events.push(format!("trial {}: {e}", t.index));
                format!("error: {e}")
            }
        };
        exceptions.push(json!({
            "index": t.index,
            "seed": t.seed,
            "degree": t.degree,
            "phi": t.phi.map(|a| a.to_string()),
            "polynomial": t.poly.as_ref().map(|p| p.to_coeff_string()),
            "status": status,
        }));
    }
    let verdict = if counter > 0 {
        Verdict::Counterexample
    } else if undecided + errors > 0 {
        Verdict::Indeterminate
    } else {
        Verdict::Verified
    };
    let mut doc = base(cli, "fuzz")
        .param("trials", trials)
        .param("phi_range", format!("{}:{}", phi_range.0, phi_range.1))
        .param("degree_range", format!("{}:{}", degree_range.0, degree_range.1))
        .verdict(verdict);
    doc.seed = Some(seed);
    doc.precision_bits = bits;
    doc.events = events;
    doc.result = Some(json!({
        "trials": trials,
        "verified": verified,
        "counterexample": counter,
        "indeterminate": undecided,
        "errors": errors,
        "exceptions": exceptions,
    }));
    one(code, doc)
}

fn min_arg(cli: &Cli, p: &Polynomial) -> Result<(i32, Rendered)> {
    let bound = min_argument_with(p, cli.radius_target)?;
    let enclosures = find_root_enclosures(p, cli.radius_target)?;
    let mut doc = base(cli, "min-arg").with_input("p", p);
    doc.roots = enclosures.iter().map(|r| RootRecord::from_enclosure("p", r)).collect();
    doc.precision_bits = bound.precision_bits;
    doc.result = Some(json!({
        "min_abs_arg": report::decimal(&bound.radians),
        "min_abs_arg_over_pi": bound.over_pi.as_ref().map(|q| q.to_string()),
        "lower_bound_f64": bound.lower().to_f64_round(crate::arith::Round::Down),
    }));
    one(EXIT_VERIFIED, doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> Outcome {
        run(std::iter::once("sector").chain(args.iter().copied()))
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["verify", "--poly", "1,2,3,2,1", "--phi", "2/3pi"]).code, 0);
        assert_eq!(call(&["proof-steps", "--poly", "1,1,1", "--theta", "1/2pi"]).code, 4);
        assert_eq!(call(&["verify", "--poly", "1,,", "--phi", "2/3pi"]).code, 3);
        assert_eq!(call(&["verify", "--poly", "1,1,1", "--phi", "7/6pi"]).code, 3);
        assert_eq!(call(&["verify", "--poly", "1,-1,1", "--phi", "1/2pi"]).code, 4);
        assert_eq!(call(&["bogus"]).code, 3);
        assert_eq!(call(&["--help"]).code, 0);
    }

    #[test]
    fn interlace_semantics() {
        let plain = call(&["interlace", "--u", "3,-4,1", "--v", "-2,1"]);
        assert_eq!(plain.code, 0);
        assert!(plain.stdout.contains("\"interlace\": true"));
        let combined = call(&["interlace", "--u", "3,-4,1", "--v", "-2,1", "--weights", "1,1,1,1"]);
        assert_eq!(combined.code, 0, "{}", combined.stderr);
        let bad = call(&["interlace", "--u", "2,-3,1", "--v", "-12,7,-1", "--weights", "1,1,1,1"]);
        assert_eq!(bad.code, 4);
    }
}
