//! Certificate documents: plain serializable records built from the
//! library's results, rendered as pretty-printed JSON.
//!
//! Real quantities are decimal strings holding every certified digit and an
//! explicit `± bound`, so documents diff cleanly and never round silently.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use crate::arith::{BigFloat, Interval, Round};
use crate::count::refine_interval;
use crate::error::Result;
use crate::interlace::ZeroPoint;
use crate::poly::{ray_components, Angle, Polynomial};
use crate::ray::{trace_quadrants, ArgVariation, CrossingKind};
use crate::sector::{
    find_root_enclosures, ProofStepReport, RootEnclosure, RootMargin, SectorCertificate, Verdict,
};

pub const SCHEMA_VERSION: u32 = 1;

const DIGITS: usize = 40;
const PREC: u32 = 128;

#[derive(Clone, Debug, Serialize)]
pub struct Document {
    pub schema_version: u32,
    pub command: String,
    pub input: Vec<InputRecord>,
    pub parameters: BTreeMap<String, String>,
    pub verdict: String,
    /// Command-specific payload.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<serde_json::Value>,
    pub roots: Vec<RootRecord>,
    pub proof_steps: Option<ProofStepsRecord>,
    pub precision_bits: u32,
    pub seed: Option<u64>,
    pub events: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl Document {
    pub fn new(command: &str) -> Self {
        Document {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            input: Vec::new(),
            parameters: BTreeMap::new(),
            verdict: Verdict::Verified.as_str().to_string(),
            result: None,
            roots: Vec::new(),
            proof_steps: None,
            precision_bits: 0,
            seed: None,
            events: Vec::new(),
            runtime_ms: None,
        }
    }

    pub fn with_input(mut self, name: &str, p: &Polynomial) -> Self {
        self.input.push(InputRecord::new(name, p));
        self
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn verdict(mut self, v: Verdict) -> Self {
        self.verdict = v.as_str().to_string();
        self
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputRecord {
    pub name: String,
    pub polynomial: String,
    /// Ascending coefficients.
    pub coefficients: String,
    pub degree: usize,
}

impl InputRecord {
    pub fn new(name: &str, p: &Polynomial) -> Self {
        InputRecord {
            name: name.to_string(),
            polynomial: p.to_string(),
            coefficients: p.to_coeff_string(),
            degree: p.degree(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootRecord {
    /// Which polynomial the root belongs to.
    pub of: String,
    pub re: String,
    pub im: String,
    pub radius: String,
    pub multiplicity: usize,
    pub real: bool,
    /// `|arg z|` in radians.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_arg: Option<String>,
    /// `|arg z| / pi` when known exactly.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_arg_over_pi: Option<String>,
    /// `|arg z| - phi` in radians.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
}

impl RootRecord {
    pub fn from_enclosure(of: &str, r: &RootEnclosure) -> Self {
        let (re, im) = disk_parts(r);
        RootRecord {
            of: of.to_string(),
            re,
            im,
            radius: upper_sci(&r.radius),
            multiplicity: r.multiplicity,
            real: r.is_real,
            abs_arg: r.abs_arg(PREC).map(|a| decimal(&a)),
            abs_arg_over_pi: r.exact_abs_arg().map(|q| q.to_string()),
            margin: None,
            verdict: None,
        }
    }

    pub fn from_margin(of: &str, m: &RootMargin) -> Self {
        let mut rec = RootRecord::from_enclosure(of, &m.enclosure);
        if let Some(a) = &m.arg {
            rec.abs_arg = Some(decimal(a));
        }
        if let Some(q) = &m.exact_arg {
            rec.abs_arg_over_pi = Some(q.to_string());
        }
        rec.margin = m.margin.as_ref().map(decimal);
        rec.verdict = Some(m.verdict.as_str().to_string());
        rec
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VariationRecord {
    pub delta_over_pi: String,
    pub n: usize,
    pub m: usize,
    pub theta: String,
}

impl From<&ArgVariation> for VariationRecord {
    fn from(v: &ArgVariation) -> Self {
        VariationRecord { delta_over_pi: v.delta_over_pi().to_string(), n: v.n, m: v.m, theta: v.theta.to_string() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProofStepsRecord {
    pub theta: String,
    pub degree: usize,
    pub g1_count_expected: usize,
    pub g1_count_actual: usize,
    pub g1g2_interlace: bool,
    pub rolle_interlace: bool,
    pub h1h2_weak_interlace: bool,
    pub delta_p: VariationRecord,
    pub delta_pprime: VariationRecord,
    pub all_pass: bool,
}

impl From<&ProofStepReport> for ProofStepsRecord {
    fn from(r: &ProofStepReport) -> Self {
        ProofStepsRecord {
            theta: r.theta.to_string(),
            degree: r.degree,
            g1_count_expected: r.g1_count_expected,
            g1_count_actual: r.g1_count_actual,
            g1g2_interlace: r.g1g2_interlace,
            rolle_interlace: r.rolle_interlace,
            h1h2_weak_interlace: r.h1h2_weak_interlace,
            delta_p: (&r.delta_p).into(),
            delta_pprime: (&r.delta_pprime).into(),
            all_pass: r.all_pass(),
        }
    }
}

/// Document for a theorem check: `roots` lists the derivative's zeros, the
/// input's own zeros go under `result.input_roots`.
pub fn certificate_document(cert: &SectorCertificate) -> Document {
    let mut doc = Document::new("verify").with_input("p", &cert.input).param("phi", cert.phi).verdict(cert.verdict);
    doc.roots = cert.root_margins.iter().map(|m| RootRecord::from_margin("p'", m)).collect();
    let input_roots: Vec<RootRecord> = cert.input_margins.iter().map(|m| RootRecord::from_margin("p", m)).collect();
    doc.result = Some(serde_json::json!({
        "derivative": InputRecord::new("p'", &cert.derivative),
        "input_roots": input_roots,
    }));
    doc.proof_steps = cert.proof_steps.as_ref().map(Into::into);
    doc.precision_bits = cert.precision_bits;
    doc.events = cert.events.clone();
    doc
}

/// Every root of `p` with its certified disk.
pub fn roots_document(p: &Polynomial, radius_target: f64) -> Result<Document> {
    let enclosures = find_root_enclosures(p, radius_target)?;
    let mut doc = Document::new("roots").with_input("p", p);
    doc.roots = enclosures.iter().map(|r| RootRecord::from_enclosure("p", r)).collect();
    doc.precision_bits = enclosures.iter().map(|r| r.precision).max().unwrap_or(0);
    doc.result = Some(json!({
        "distinct": enclosures.len(),
        "real": enclosures.iter().filter(|r| r.is_real).map(|r| r.multiplicity).sum::<usize>(),
    }));
    Ok(doc)
}

/// The argument variation along the ray at `theta` with its axis crossings,
/// each located to within [`display_width`].
pub fn delta_document(p: &Polynomial, theta: Angle) -> Result<Document> {
    let trace = trace_quadrants(p, theta)?;
    let variation = trace.variation()?;
    let (g1, g2) = ray_components(p, theta);
    let width = display_width();
    let mut events = Vec::with_capacity(trace.events.len());
    for e in &trace.events {
        let (name, other, component) = match e.kind {
            CrossingKind::G1Zero { g2_sign } => ("g1", g2_sign, &g1),
            CrossingKind::G2Zero { g1_sign } => ("g2", g1_sign, &g2),
        };
        let iv = if e.interval.width() > width { refine_interval(component, &e.interval, &width)? } else { e.interval.clone() };
        events.push(json!({ "t": zero_point(&ZeroPoint::Isolated(iv)), "zero_of": name, "other_sign": other }));
    }
    let mut doc = Document::new("delta").with_input("p", p).param("theta", theta);
    doc.result = Some(json!({
        "delta": VariationRecord::from(&variation),
        "trace": {
            "initial_signs": [trace.initial.0, trace.initial.1],
            "terminal_signs": [trace.terminal.0, trace.terminal.1],
            "quarter_turns": trace.quarter_turns,
            "events": events,
        },
    }));
    Ok(doc)
}

/// Isolating intervals are narrowed to this width before they are printed.
pub fn display_width() -> BigRational {
    BigRational::new(1.into(), BigInt::from(1u64) << 64)
}

/// Certified digits of an interval with an explicit error bound.
pub fn decimal(iv: &Interval) -> String {
    iv.to_decimal_string(DIGITS)
}

/// A real zero: exact rationals verbatim, isolating intervals as decimals.
pub fn zero_point(p: &ZeroPoint) -> String {
    match p {
        ZeroPoint::Exact(q) => q.to_string(),
        ZeroPoint::Isolated(iv) => decimal(&rational_interval(&iv.lo, &iv.hi)),
    }
}

fn rational_interval(lo: &BigRational, hi: &BigRational) -> Interval {
    Interval::new(BigFloat::from_rational(lo, PREC, Round::Down), BigFloat::from_rational(hi, PREC, Round::Up))
}

fn disk_parts(r: &RootEnclosure) -> (String, String) {
    let part = |c: &BigFloat| Interval::new(c.add_exact(&r.radius.neg()), c.add_exact(&r.radius));
    (decimal(&part(&r.center.re)), decimal(&part(&r.center.im)))
}

/// Three significant digits, never below the true value.
fn upper_sci(x: &BigFloat) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let v = x.to_f64_round(Round::Up) * 1.01;
    format!("{v:.2e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sector::verify_theorem;

    #[test]
    fn radius_strings_bound_from_above() {
        for v in [1.2344e-13, 9.999e-13, 3.0e-20] {
            let s = upper_sci(&BigFloat::from_f64(v));
            assert!(s.parse::<f64>().unwrap() >= v, "{s} < {v}");
        }
        assert_eq!(upper_sci(&BigFloat::zero()), "0");
    }

    #[test]
    fn verify_document_shape() {
        let p = Polynomial::from_ints(&[1, 2, 3, 2, 1]).unwrap();
        let cert = verify_theorem(&p, Angle::new(2, 3).unwrap()).unwrap();
        let doc = certificate_document(&cert);
        assert_eq!(doc.verdict, "verified");
        assert_eq!(doc.roots.len(), 3);
        let json = doc.to_json();
        let keys: Vec<usize> = ["schema_version", "input", "parameters", "verdict", "roots", "proof_steps"]
            .iter()
            .map(|k| json.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(!json.contains("runtime_ms"));
        assert!(doc.roots.iter().any(|r| r.abs_arg_over_pi.as_deref() == Some("1")));
    }
}
