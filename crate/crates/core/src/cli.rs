//! Command implementations behind the `quatcomm` binary. Each returns the
//! text to print so the commands can be exercised without a process.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::dynamic::AnyQuaternion;
use crate::error::{Error, Result};
use crate::exponential::{
    naive_derivative, polar_decompose, qexp, qexp_derivative, qexp_derivative_series, qexp_series, JetPair,
    PolarForm, DERIVATIVE_SERIES_TERMS, SERIES_TERMS,
};
use crate::harness::{run_harness, sample, ClaimId, HarnessConfig, Sample};
use crate::literal::{parse, parse_quaternion, parse_tuple};
use crate::quaternion::Quaternion;
use crate::scalar::{Mode, Rational, Scalar};
use crate::similarity::{class_count_bound, enumerate_class_partition, ClassPartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Usage(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TupleSource {
    /// Contents of an input file: one tuple per line, literals separated by
    /// `;`. Blank lines and lines starting with `#` are skipped.
    Text(String),
    Random(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassesCommand {
    pub n: usize,
    pub source: TupleSource,
    pub seed: u64,
    pub mode: Mode,
    pub format: OutputFormat,
}

#[derive(Serialize)]
#[serde(bound = "")]
struct TupleClasses<S: Scalar> {
    index: usize,
    inputs: Vec<String>,
    class_count: usize,
    class_sizes: Vec<usize>,
    bound: usize,
    partition: ClassPartition<S>,
}

#[derive(Serialize)]
#[serde(bound = "")]
struct ClassesReport<S: Scalar> {
    n: usize,
    mode: Mode,
    heuristic: bool,
    seed: u64,
    tuples: Vec<TupleClasses<S>>,
    histogram: BTreeMap<String, u64>,
}

pub fn run_classes(cmd: &ClassesCommand) -> Result<String> {
    if !(2..=8).contains(&cmd.n) {
        return Err(Error::Usage(format!("--n must be in 2..=8, got {}", cmd.n)));
    }
    match cmd.mode {
        Mode::Float => classes_typed::<f64>(cmd),
        Mode::Exact => classes_typed::<Rational>(cmd),
    }
}

fn classes_typed<S: Sample>(cmd: &ClassesCommand) -> Result<String> {
    let tuples: Vec<Vec<Quaternion<S>>> = match &cmd.source {
        TupleSource::Random(count) => {
            let cfg = HarnessConfig::new(ClaimId::ClassCount, (*count).max(1), cmd.seed)
                .with_n(cmd.n)
                .with_mode(cmd.mode);
            (0..*count).map(|t| sample::<S>(&cfg, t)).collect()
        }
        TupleSource::Text(text) => {
            let mut out = Vec::new();
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let tuple = parse_tuple::<S>(line).map_err(|e| match e {
                    Error::Parse { position, message } => Error::Parse {
                        position,
                        message: format!("line {}: {message}", lineno + 1),
                    },
                    other => other,
                })?;
                if tuple.len() != cmd.n {
                    return Err(Error::Usage(format!(
                        "line {} has {} literals, expected {}",
                        lineno + 1,
                        tuple.len(),
                        cmd.n
                    )));
                }
                out.push(tuple);
            }
            out
        }
    };

    let mut histogram = BTreeMap::new();
    let mut entries = Vec::with_capacity(tuples.len());
    for (index, qs) in tuples.iter().enumerate() {
        let partition = enumerate_class_partition(qs)?;
        *histogram
            .entry(format!("classes={}", partition.class_count()))
            .or_insert(0) += 1;
        entries.push(TupleClasses {
            index,
            inputs: qs.iter().map(ToString::to_string).collect(),
            class_count: partition.class_count(),
            class_sizes: partition.class_sizes(),
            bound: class_count_bound(cmd.n),
            partition,
        });
    }

    match cmd.format {
        OutputFormat::Json => {
            let report = ClassesReport {
                n: cmd.n,
                mode: cmd.mode,
                heuristic: cmd.mode == Mode::Float,
                seed: cmd.seed,
                tuples: entries,
                histogram,
            };
            Ok(json_line(&report))
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["tuple", "class", "permutation", "product", "re", "norm_sq"])
                .map_err(csv_err)?;
            for e in &entries {
                for (ci, class) in e.partition.classes.iter().enumerate() {
                    for m in &class.members {
                        let perm = m
                            .permutation
                            .one_based()
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(" ");
                        w.write_record([
                            e.index.to_string(),
                            ci.to_string(),
                            perm,
                            m.product.to_string(),
                            class.key.re.to_string(),
                            class.key.norm_sq.to_string(),
                        ])
                        .map_err(csv_err)?;
                    }
                }
            }
            finish_csv(w)
        }
    }
}

/// Runs a claim; returns the rendered report and the process exit code.
pub fn run_verify(config: &HarnessConfig, format: OutputFormat) -> Result<(String, i32)> {
    let report = run_harness(config)?;
    let text = match format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Csv => report.to_csv()?,
    };
    Ok((text, report.verdict.exit_code()))
}

#[derive(Serialize)]
struct DerivativeOut {
    psi_prime: String,
    closed_form: String,
    series: String,
    naive: String,
}

#[derive(Serialize)]
struct ExpOut {
    psi: String,
    polar: PolarForm,
    exp: String,
    exp_series: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    derivative: Option<DerivativeOut>,
}

pub fn run_exp(psi: &str, psi_prime: Option<&str>) -> Result<String> {
    let value = parse::<f64>(psi)?;
    let derivative = psi_prime
        .map(|lit| -> Result<DerivativeOut> {
            let jet = JetPair::new(value.clone(), parse::<f64>(lit)?);
            Ok(DerivativeOut {
                psi_prime: jet.derivative.to_string(),
                closed_form: qexp_derivative(&jet).to_string(),
                series: qexp_derivative_series(&jet, DERIVATIVE_SERIES_TERMS).to_string(),
                naive: naive_derivative(&jet).to_string(),
            })
        })
        .transpose()?;
    Ok(json_line(&ExpOut {
        psi: value.to_string(),
        polar: polar_decompose(&value),
        exp: qexp(&value).to_string(),
        exp_series: qexp_series(&value, SERIES_TERMS).to_string(),
        derivative,
    }))
}

#[derive(Serialize)]
struct ParseOut {
    input: String,
    mode: Mode,
    components: Vec<String>,
    canonical: String,
}

pub fn run_parse(literal: &str, mode: Mode) -> Result<String> {
    let q: AnyQuaternion = parse_quaternion(literal, mode)?;
    Ok(json_line(&ParseOut {
        input: literal.to_string(),
        mode,
        components: q.components().iter().map(ToString::to_string).collect(),
        canonical: q.to_string(),
    }))
}

fn json_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_err(e: csv::Error) -> Error {
    Error::Usage(format!("csv: {e}"))
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}
