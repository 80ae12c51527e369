//! Command-line driver for `qsdisc`: reads a weight-system document, runs one
//! subcommand and prints a text or JSON report.

pub mod error;
pub mod input;
pub mod report;

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;

use qsdisc_core::arrangements::{compare_arrangements, discriminant_arrangement, hls_arrangement, Verdict};
use qsdisc_core::circuits::{circuit_constant_via_lengths, circuits};
use qsdisc_core::horn::horn_decompose;
use qsdisc_core::weights::{
    is_calabi_yau, is_quasi_symmetric, is_self_dual, partition_lines, ray_data, reduce_to_image,
    validate, weights_to_matrix, QuasiSymmetry, RayWarning,
};
use qsdisc_core::zonotope::{hls_facet_normals, hls_offset, support_eta};
use qsdisc_core::{LineGroup, WeightSystem};

pub use error::CliError;
pub use input::InputDocument;
pub use report::Report;
use report::*;

#[derive(Debug, Parser)]
#[command(name = "qsdisc", version, about = "Discriminant and zonotope arrangements of quasi-symmetric torus representations")]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Replace the weights by their coordinates in the image lattice.
    #[arg(long, global = true)]
    pub reduce: bool,
    /// Add decimal approximations of offsets.
    #[arg(long, global = true)]
    pub approx: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate the weights and report Calabi-Yau, quasi-symmetry, self-duality and rays.
    Check { input: PathBuf },
    /// Group the weights into lines through the origin.
    Lines { input: PathBuf },
    /// Enumerate circuit normals with exponents and constants.
    Circuits { input: PathBuf },
    /// Factor the Horn map line by line, optionally evaluating it.
    Horn {
        input: PathBuf,
        /// Comma-separated point, entries integers or `p/q`.
        #[arg(long, value_name = "LAMBDA", allow_hyphen_values = true)]
        eval: Option<String>,
    },
    /// The discriminant locus as a hyperplane arrangement.
    Discriminant { input: PathBuf },
    /// The zonotope (facet) arrangement.
    Hls { input: PathBuf },
    /// Compare the two arrangements after the imaginary shift.
    Compare { input: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Lines { .. } => "lines",
            Command::Circuits { .. } => "circuits",
            Command::Horn { .. } => "horn",
            Command::Discriminant { .. } => "discriminant",
            Command::Hls { .. } => "hls",
            Command::Compare { .. } => "compare",
        }
    }

    pub fn input(&self) -> &PathBuf {
        match self {
            Command::Check { input }
            | Command::Lines { input }
            | Command::Circuits { input }
            | Command::Horn { input, .. }
            | Command::Discriminant { input }
            | Command::Hls { input }
            | Command::Compare { input } => input,
        }
    }
}

/// Everything a subcommand needs besides the input document.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub reduce: bool,
    pub approx: bool,
    pub eval: Option<String>,
}

fn parse_point(text: &str) -> Result<Vec<BigRational>, CliError> {
    text.split(',')
        .map(|entry| {
            let entry = entry.trim();
            let parsed = match entry.split_once('/') {
                Some((p, q)) => BigInt::from_str(p.trim())
                    .ok()
                    .zip(BigInt::from_str(q.trim()).ok())
                    .filter(|(_, q)| *q != BigInt::from(0))
                    .map(|(p, q)| BigRational::new(p, q)),
                None => BigInt::from_str(entry).ok().map(BigRational::from_integer),
            };
            parsed.ok_or_else(|| CliError::EvalPoint(format!("{entry:?} is not an integer or p/q")))
        })
        .collect()
}

fn line_record(g: &LineGroup) -> LineRecord {
    LineRecord {
        direction: ints(&g.direction),
        members: g.members.iter().map(|j| j + 1).collect(),
        lengths: ints(&g.lengths),
        line_sum: ints(&g.line_sum),
    }
}

fn columns(ws: &WeightSystem) -> Vec<Vec<String>> {
    ws.weights().iter().map(|w| ints(w)).collect()
}

/// Builds the report for `subcommand` without printing anything.
/// `Ok` reports may still carry a failing verdict; see [`exit_code`].
pub fn build_report(subcommand: &str, doc: &InputDocument, opts: &Options) -> Result<Report, CliError> {
    let raw = weights_to_matrix(&doc.weight_vectors()?)?;
    let input = InputEcho {
        name: doc.name.clone(),
        weights: raw.columns().iter().map(|c| ints(c)).collect(),
    };
    let (ws, reduction) = if opts.reduce {
        let (ws, basis) = reduce_to_image(&raw)?;
        let reduction = Reduction {
            basis: basis.columns().iter().map(|c| ints(c)).collect(),
            weights: columns(&ws),
        };
        (ws, Some(reduction))
    } else {
        (validate(&raw)?, None)
    };

    let mut warnings = Vec::new();
    let rays = ray_data(&ws);
    for w in &rays.warnings {
        match w {
            RayWarning::DuplicateRays(a, b) => warnings.push(format!(
                "weights {} and {} give the same ray; the toric stack has a repeated ray",
                a + 1,
                b + 1
            )),
        }
    }

    let result = match subcommand {
        "check" => {
            let qs = is_quasi_symmetric(&ws);
            let unbalanced_line = match &qs {
                QuasiSymmetry::Holds => None,
                QuasiSymmetry::Fails { direction, .. } => partition_lines(&ws)
                    .iter()
                    .find(|g| &g.direction == direction)
                    .map(line_record),
            };
            Body::Check {
                rank: ws.rank(),
                weights: ws.len(),
                calabi_yau: is_calabi_yau(&ws),
                quasi_symmetric: qs.holds(),
                unbalanced_line,
                self_dual: is_self_dual(&ws),
                rays: rays.rays.columns().iter().map(|c| ints(c)).collect(),
                cy_witness: rays.cy_witness.as_deref().map(ints),
            }
        }
        "lines" => Body::Lines {
            lines: partition_lines(&ws).iter().map(line_record).collect(),
        },
        "circuits" => {
            let list = circuits(&ws)?;
            let mut records = Vec::with_capacity(list.len());
            for c in &list {
                records.push(CircuitRecord {
                    normal: ints(&c.normal),
                    exponents: ints(&c.exponents),
                    constant: rat(&c.constant),
                    constant_via_lengths: rat(&circuit_constant_via_lengths(&ws, &c.normal)?),
                });
            }
            Body::Circuits { circuits: records }
        }
        "horn" => {
            let form = horn_decompose(&ws)?;
            let value = form.constant_value();
            let evaluation = match &opts.eval {
                None => None,
                Some(text) => {
                    let lambda = parse_point(text)?;
                    let values = form.evaluate(&lambda)?;
                    Some(Evaluation {
                        lambda: lambda.iter().map(rat).collect(),
                        values: values.iter().map(rat).collect(),
                    })
                }
            };
            Body::Horn {
                lines: form
                    .lines()
                    .iter()
                    .map(|l| HornLineRecord {
                        direction: ints(&l.direction),
                        constants: l.constants.iter().map(rat).collect(),
                        exponents: ints(&l.exponents),
                    })
                    .collect(),
                constant: value.is_some(),
                value: value.map(|v| v.iter().map(rat).collect()),
                evaluation,
            }
        }
        "discriminant" => Body::Discriminant {
            families: families(&discriminant_arrangement(&ws)?, opts.approx),
        },
        "hls" => {
            let arrangement = hls_arrangement(&ws)?;
            let mut facets = Vec::new();
            for l in hls_facet_normals(&ws)? {
                facets.push(FacetRecord {
                    eta: int(&support_eta(&ws, &l)?),
                    c_f: rat(&hls_offset(&ws, &l)?),
                    normal: ints(&l),
                });
            }
            Body::Hls {
                facets,
                families: families(&arrangement, opts.approx),
            }
        }
        "compare" => {
            let cmp = compare_arrangements(&ws)?;
            let (verdict, counterexample) = match &cmp.verdict {
                Verdict::EqualAfterShift => ("EqualAfterShift".to_string(), None),
                Verdict::Counterexample { normal } => ("Counterexample".to_string(), Some(ints(normal))),
            };
            Body::Compare {
                verdict,
                counterexample,
                shift: cmp.shift.coords().iter().map(LogRecord::from).collect(),
                shift_approx: opts.approx.then(|| {
                    let two_pi = 2.0 * std::f64::consts::PI;
                    cmp.shift.coords().iter().map(|z| z.to_f64() / two_pi).collect()
                }),
                matches: cmp
                    .matches
                    .iter()
                    .map(|m| MatchRecord {
                        normal: ints(&m.normal),
                        circuit_constant: rat(&m.circuit_constant),
                        c_f: rat(&m.facet_offset),
                        discriminant: OffsetRecord::new(&m.discriminant, opts.approx),
                        shifted_hls: OffsetRecord::new(&m.shifted, opts.approx),
                        real_parts_agree: m.real_parts_agree,
                        imaginary_parts_agree: m.imaginary_parts_agree,
                    })
                    .collect(),
            }
        }
        other => return Err(CliError::Parse(format!("unknown subcommand {other:?}"))),
    };

    Ok(Report {
        subcommand: subcommand.to_string(),
        input,
        reduction,
        result,
        warnings,
    })
}

/// 0 unless the report carries a failing `compare` verdict.
pub fn exit_code(report: &Report) -> u8 {
    match &report.result {
        Body::Compare { counterexample: Some(_), .. } => 1,
        _ => 0,
    }
}

/// Parses `argv`, runs the subcommand and writes the report to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are not errors.
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let opts = Options {
        reduce: cli.reduce,
        approx: cli.approx,
        eval: match &cli.command {
            Command::Horn { eval, .. } => eval.clone(),
            _ => None,
        },
    };
    let outcome = InputDocument::read(cli.command.input())
        .and_then(|doc| build_report(cli.command.name(), &doc, &opts));
    match outcome {
        Ok(report) => {
            let text = if cli.json { report.to_json() + "\n" } else { report.to_text() };
            let _ = out.write_all(text.as_bytes());
            exit_code(&report)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let Some(g) = e.guidance() {
                let _ = writeln!(err, "hint: {g}");
            }
            e.exit_code()
        }
    }
}
