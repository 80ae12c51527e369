//! The machine-readable report. Exact values are strings (`"p/q"` for
//! rationals, decimal for integers); floats only appear in the optional
//! `approx` annotations.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use qsdisc_core::arrangements::{Arrangement, HyperplaneFamily, Offset};
use qsdisc_core::LogReal;

pub fn int(x: &BigInt) -> String {
    x.to_string()
}

pub fn ints(v: &[BigInt]) -> Vec<String> {
    v.iter().map(int).collect()
}

pub fn rat(q: &BigRational) -> String {
    q.to_string()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LogRecord {
    pub rational: String,
    /// `(prime, coefficient)`, primes ascending.
    pub terms: Vec<(String, String)>,
}

impl From<&LogReal> for LogRecord {
    fn from(x: &LogReal) -> Self {
        LogRecord {
            rational: rat(x.rational_part()),
            terms: x.log_terms().map(|(p, c)| (int(p), rat(c))).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ApproxOffset {
    pub real: f64,
    pub imag: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OffsetRecord {
    pub real_part: String,
    /// Imaginary part times 2π.
    pub imag_log: LogRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approx: Option<ApproxOffset>,
}

impl OffsetRecord {
    pub fn new(offset: &Offset, approx: bool) -> Self {
        OffsetRecord {
            real_part: rat(offset.real_part()),
            imag_log: offset.imag_log().into(),
            approx: approx.then(|| {
                let (real, imag) = offset.approx();
                ApproxOffset { real, imag }
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyRecord {
    pub normal: Vec<String>,
    pub offset: OffsetRecord,
}

impl FamilyRecord {
    pub fn new(family: &HyperplaneFamily, approx: bool) -> Self {
        FamilyRecord {
            normal: ints(family.normal()),
            offset: OffsetRecord::new(family.offset(), approx),
        }
    }
}

pub fn families(arrangement: &Arrangement, approx: bool) -> Vec<FamilyRecord> {
    arrangement
        .families()
        .iter()
        .map(|f| FamilyRecord::new(f, approx))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InputEcho {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub weights: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Reduction {
    /// Columns of the basis `B` of the image lattice, with `Q = B · Q'`.
    pub basis: Vec<Vec<String>>,
    pub weights: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LineRecord {
    pub direction: Vec<String>,
    /// 1-based weight indices.
    pub members: Vec<usize>,
    pub lengths: Vec<String>,
    pub line_sum: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CircuitRecord {
    pub normal: Vec<String>,
    pub exponents: Vec<String>,
    pub constant: String,
    pub constant_via_lengths: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HornLineRecord {
    pub direction: Vec<String>,
    pub constants: Vec<String>,
    pub exponents: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Evaluation {
    pub lambda: Vec<String>,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FacetRecord {
    pub normal: Vec<String>,
    pub eta: String,
    pub c_f: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MatchRecord {
    pub normal: Vec<String>,
    pub circuit_constant: String,
    pub c_f: String,
    pub discriminant: OffsetRecord,
    pub shifted_hls: OffsetRecord,
    pub real_parts_agree: bool,
    pub imaginary_parts_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Body {
    #[serde(rename_all = "camelCase")]
    Check {
        rank: usize,
        weights: usize,
        calabi_yau: bool,
        quasi_symmetric: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unbalanced_line: Option<LineRecord>,
        self_dual: bool,
        rays: Vec<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cy_witness: Option<Vec<String>>,
    },
    Lines {
        lines: Vec<LineRecord>,
    },
    Circuits {
        circuits: Vec<CircuitRecord>,
    },
    #[serde(rename_all = "camelCase")]
    Horn {
        lines: Vec<HornLineRecord>,
        constant: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        value: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        evaluation: Option<Evaluation>,
    },
    Discriminant {
        families: Vec<FamilyRecord>,
    },
    #[serde(rename_all = "camelCase")]
    Hls {
        facets: Vec<FacetRecord>,
        families: Vec<FamilyRecord>,
    },
    #[serde(rename_all = "camelCase")]
    Compare {
        verdict: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        counterexample: Option<Vec<String>>,
        /// `z` with each coordinate times 2π.
        shift: Vec<LogRecord>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        shift_approx: Option<Vec<f64>>,
        matches: Vec<MatchRecord>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub subcommand: String,
    pub input: InputEcho,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction: Option<Reduction>,
    pub result: Body,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let name = self.input.name.as_deref().unwrap_or("weights");
        let _ = writeln!(out, "{}: {}", self.subcommand, name);
        let _ = writeln!(out, "  input: {}", vectors(&self.input.weights));
        if let Some(r) = &self.reduction {
            let _ = writeln!(out, "  reduced to image: {} (basis {})", vectors(&r.weights), vectors(&r.basis));
        }
        render_body(&mut out, &self.result);
        for w in &self.warnings {
            let _ = writeln!(out, "  warning: {w}");
        }
        out
    }
}

fn vector(v: &[String]) -> String {
    format!("({})", v.join(","))
}

fn vectors(vs: &[Vec<String>]) -> String {
    vs.iter().map(|v| vector(v)).collect::<Vec<_>>().join(" ")
}

fn log_text(r: &LogRecord) -> String {
    let mut parts = Vec::new();
    if r.rational != "0" {
        parts.push(r.rational.clone());
    }
    for (p, c) in &r.terms {
        parts.push(if c == "1" { format!("log({p})") } else { format!("{c}*log({p})") });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

fn offset_text(o: &OffsetRecord) -> String {
    let imag = log_text(&o.imag_log);
    let mut s = if imag == "0" {
        o.real_part.clone()
    } else if o.real_part == "0" {
        format!("i*({imag})/(2pi)")
    } else {
        format!("{} + i*({imag})/(2pi)", o.real_part)
    };
    s.push_str(" (mod Z)");
    if let Some(a) = &o.approx {
        let _ = write!(s, " [~ {:.7} + {:.7}i]", a.real, a.imag);
    }
    s
}

fn line_text(l: &LineRecord) -> String {
    format!(
        "line {}: weights {:?}, lengths {}, sum {}",
        vector(&l.direction),
        l.members,
        vector(&l.lengths),
        vector(&l.line_sum)
    )
}

fn render_body(out: &mut String, body: &Body) {
    match body {
        Body::Check {
            rank,
            weights,
            calabi_yau,
            quasi_symmetric,
            unbalanced_line,
            self_dual,
            rays,
            cy_witness,
        } => {
            let _ = writeln!(out, "  rank k = {rank}, n = {weights}");
            let _ = writeln!(out, "  calabi-yau: {calabi_yau}");
            let _ = writeln!(out, "  quasi-symmetric: {quasi_symmetric}");
            if let Some(l) = unbalanced_line {
                let _ = writeln!(out, "    unbalanced {}", line_text(l));
            }
            let _ = writeln!(out, "  self-dual: {self_dual}");
            let _ = writeln!(out, "  rays: {}", vectors(rays));
            if let Some(m) = cy_witness {
                let _ = writeln!(out, "  cy witness m: {}", vector(m));
            }
        }
        Body::Lines { lines } => {
            for l in lines {
                let _ = writeln!(out, "  {}", line_text(l));
            }
        }
        Body::Circuits { circuits } => {
            for c in circuits {
                let _ = writeln!(
                    out,
                    "  normal {}: exponents {}, c = {} (from lengths {})",
                    vector(&c.normal),
                    vector(&c.exponents),
                    c.constant,
                    c.constant_via_lengths
                );
            }
        }
        Body::Horn {
            lines,
            constant,
            value,
            evaluation,
        } => {
            for l in lines {
                let _ = writeln!(
                    out,
                    "  line {}: constants {}, exponents {}",
                    vector(&l.direction),
                    vector(&l.constants),
                    vector(&l.exponents)
                );
            }
            match value {
                Some(v) => {
                    let _ = writeln!(out, "  constant: {}", vector(v));
                }
                None => {
                    let _ = writeln!(out, "  constant: {constant}");
                }
            }
            if let Some(e) = evaluation {
                let _ = writeln!(out, "  value at {}: {}", vector(&e.lambda), vector(&e.values));
            }
        }
        Body::Discriminant { families } => {
            for f in families {
                let _ = writeln!(out, "  <{}, y> = {}", vector(&f.normal), offset_text(&f.offset));
            }
        }
        Body::Hls { facets, families } => {
            for (f, fam) in facets.iter().zip(families) {
                let _ = writeln!(
                    out,
                    "  facet {}: eta = {}, c_F = {}; <{}, y> = {}",
                    vector(&f.normal),
                    f.eta,
                    f.c_f,
                    vector(&fam.normal),
                    offset_text(&fam.offset)
                );
            }
        }
        Body::Compare {
            verdict,
            counterexample,
            shift,
            shift_approx,
            matches,
        } => {
            let _ = writeln!(out, "  verdict: {verdict}");
            if let Some(c) = counterexample {
                let _ = writeln!(out, "  counterexample normal: {}", vector(c));
            }
            let z: Vec<String> = shift.iter().map(log_text).collect();
            let _ = write!(out, "  z = ({})/(2pi)", z.join(", "));
            if let Some(a) = shift_approx {
                let _ = write!(out, "  [~ {a:?}]");
            }
            let _ = writeln!(out);
            for m in matches {
                let _ = writeln!(
                    out,
                    "  normal {}: c = {}, c_F = {}; discriminant {} | shifted {} | real {} imag {}",
                    vector(&m.normal),
                    m.circuit_constant,
                    m.c_f,
                    offset_text(&m.discriminant),
                    offset_text(&m.shifted_hls),
                    if m.real_parts_agree { "ok" } else { "MISMATCH" },
                    if m.imaginary_parts_agree { "ok" } else { "MISMATCH" },
                );
            }
        }
    }
}
