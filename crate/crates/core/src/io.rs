//! Problem files, family listings and report rendering.
//!
//! JSON is the only input format. Reports and estimates can also be
//! rendered as CSV or as a plain text table with one row per index and one
//! column per element. Element labels are 1-based throughout.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{FamilyKind, MinimalFamily};
use crate::indices::{to_decimal, Column, IndexKind, IndexReport, Method};
use crate::instances::{ExplicitFamily, Graph, HittingSet, Instance, Threshold};
use crate::oracle::Predicate as _;
use crate::sampling::SampleEstimate;
use crate::subset::GroundSet;

pub const DEFAULT_PRECISION: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub name: Option<String>,
    pub instance: Instance,
}

const KINDS: [&str; 5] = [
    "threshold",
    "dominating_set",
    "vertex_cover",
    "hitting_set",
    "monotone_family",
];

#[derive(Deserialize)]
struct KindOnly {
    kind: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThresholdFile {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    quota: u64,
    weights: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    n: usize,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetsFile {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    n: usize,
    sets: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    n: usize,
    minimal_sets: Vec<Vec<usize>>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// 1-based line and column of the first occurrence of `needle`.
fn position_of(text: &str, needle: &str) -> (usize, usize) {
    let Some(offset) = text.find(needle) else {
        return (1, 1);
    };
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = offset - before.rfind('\n').map_or(0, |p| p + 1) + 1;
    (line, column)
}

fn pairs(edges: &[[usize; 2]]) -> Vec<(usize, usize)> {
    edges.iter().map(|&[a, b]| (a, b)).collect()
}

fn ground_error(e: Error) -> Error {
    match e {
        Error::GroundSize(n) => Error::spec(format!("n = {n} must be within 1..=63")),
        other => other,
    }
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let KindOnly { kind } = serde_json::from_str(text).map_err(json_error)?;
    let (name, instance) = match kind.as_str() {
        "threshold" => {
            let f: ThresholdFile = serde_json::from_str(text).map_err(json_error)?;
            let t = Threshold::new(f.quota, f.weights).map_err(ground_error)?;
            (f.name, Instance::Threshold(t))
        }
        "dominating_set" | "vertex_cover" => {
            let f: GraphFile = serde_json::from_str(text).map_err(json_error)?;
            let graph = Graph::new(f.n, &pairs(&f.edges)).map_err(ground_error)?;
            if kind == "vertex_cover" {
                graph.vertex_cover()?;
                (f.name, Instance::VertexCover(graph))
            } else {
                (f.name, Instance::DominatingSet(graph))
            }
        }
        "hitting_set" => {
            let f: SetsFile = serde_json::from_str(text).map_err(json_error)?;
            let h = HittingSet::from_labels(f.n, &f.sets).map_err(ground_error)?;
            (f.name, Instance::HittingSet(h))
        }
        "monotone_family" => {
            let f: FamilyFile = serde_json::from_str(text).map_err(json_error)?;
            let fam = ExplicitFamily::from_labels(f.n, &f.minimal_sets).map_err(ground_error)?;
            (f.name, Instance::MonotoneFamily(fam))
        }
        other => {
            let (line, column) = position_of(text, "\"kind\"");
            return Err(Error::Parse {
                line,
                column,
                message: format!("unknown kind `{other}`, expected one of {}", KINDS.join(", ")),
            });
        }
    };
    Ok(ProblemFile { name, instance })
}

fn edge_list(g: &Graph) -> Vec<[usize; 2]> {
    g.edges().iter().map(|&(a, b)| [a, b]).collect()
}

pub fn render_problem(problem: &ProblemFile) -> String {
    let name = problem.name.clone();
    let kind = problem.instance.kind().to_string();
    let text = match &problem.instance {
        Instance::Threshold(t) => serde_json::to_string(&ThresholdFile {
            kind,
            name,
            quota: t.quota(),
            weights: t.weights().to_vec(),
        }),
        Instance::DominatingSet(g) | Instance::VertexCover(g) => serde_json::to_string(&GraphFile {
            kind,
            name,
            n: g.vertex_count(),
            edges: edge_list(g),
        }),
        Instance::HittingSet(h) => serde_json::to_string(&SetsFile {
            kind,
            name,
            n: h.ground().size(),
            sets: h.sets().iter().map(|s| s.labels()).collect(),
        }),
        Instance::MonotoneFamily(f) => serde_json::to_string(&FamilyFile {
            kind,
            name,
            n: f.ground().size(),
            minimal_sets: f.minimal_sets().iter().map(|s| s.labels()).collect(),
        }),
    };
    text.expect("problem serialization cannot fail")
}

/// `[[3],[1,4],[2,4]]`, members in canonical order.
pub fn render_family(family: &MinimalFamily) -> String {
    serde_json::to_string(&family.labels()).expect("family serialization cannot fail")
}

/// Parses a JSON list of label lists over a ground set of size `n`.
pub fn parse_family(text: &str, n: usize, kind: FamilyKind) -> Result<MinimalFamily> {
    let sets: Vec<Vec<usize>> = serde_json::from_str(text).map_err(json_error)?;
    MinimalFamily::from_labels(n, kind, &sets)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            _ => Err(format!("unknown format `{s}`")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    n: usize,
    method: String,
    source: String,
    precision: usize,
    indices: Vec<ColumnJson>,
}

#[derive(Serialize, Deserialize)]
struct ColumnJson {
    index: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values: Option<Vec<ValueJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unavailable: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct ValueJson {
    num: String,
    den: String,
    decimal: String,
}

const UNAVAILABLE: &str = "n/a";

fn decimals(column: &Column, n: usize, precision: usize) -> Vec<String> {
    match column {
        Column::Exact(v) => v.iter().map(|x| to_decimal(x, precision)).collect(),
        Column::Unavailable(_) => vec![UNAVAILABLE.to_string(); n],
    }
}

pub fn render_report(report: &IndexReport, format: Format, precision: usize) -> String {
    let n = report.ground_size;
    match format {
        Format::Json => {
            let doc = ReportJson {
                n,
                method: report.method.to_string(),
                source: report.source.clone(),
                precision,
                indices: report
                    .columns
                    .iter()
                    .map(|(kind, col)| match col {
                        Column::Exact(v) => ColumnJson {
                            index: kind.key().to_string(),
                            values: Some(
                                v.iter()
                                    .map(|x| ValueJson {
                                        num: x.numer().to_string(),
                                        den: x.denom().to_string(),
                                        decimal: to_decimal(x, precision),
                                    })
                                    .collect(),
                            ),
                            unavailable: None,
                        },
                        Column::Unavailable(why) => ColumnJson {
                            index: kind.key().to_string(),
                            values: None,
                            unavailable: Some(why.clone()),
                        },
                    })
                    .collect(),
            };
            let mut out = serde_json::to_string(&doc).expect("report serialization cannot fail");
            out.push('\n');
            out
        }
        Format::Csv => {
            let mut out = String::from("index");
            for label in 1..=n {
                write!(out, ",{label}").unwrap();
            }
            out.push('\n');
            for (kind, col) in &report.columns {
                out.push_str(kind.key());
                for d in decimals(col, n, precision) {
                    write!(out, ",{d}").unwrap();
                }
                out.push('\n');
            }
            out
        }
        Format::Table => {
            let rows: Vec<(&str, Vec<String>)> = report
                .columns
                .iter()
                .map(|(kind, col)| (kind.key(), decimals(col, n, precision)))
                .collect();
            let head = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0).max("index".len());
            let widths: Vec<usize> = (0..n)
                .map(|i| {
                    rows.iter()
                        .map(|(_, v)| v[i].len())
                        .max()
                        .unwrap_or(0)
                        .max((i + 1).to_string().len())
                })
                .collect();
            let mut out = format!("{:<head$}", "index");
            for (i, w) in widths.iter().enumerate() {
                write!(out, "  {:>w$}", i + 1).unwrap();
            }
            out.push('\n');
            for (key, values) in rows {
                write!(out, "{key:<head$}").unwrap();
                for (v, w) in values.iter().zip(&widths) {
                    write!(out, "  {v:>w$}").unwrap();
                }
                out.push('\n');
            }
            out
        }
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.parse().map_err(|_| Error::Parse {
        line: 0,
        column: 0,
        message: format!("`{s}` is not an integer"),
    })
}

/// Reads back the JSON form of [`render_report`]. Decimals are ignored in
/// favour of the exact pairs.
pub fn parse_report(text: &str) -> Result<IndexReport> {
    let doc: ReportJson = serde_json::from_str(text).map_err(json_error)?;
    let bad = |message: String| Error::Parse {
        line: 0,
        column: 0,
        message,
    };
    let method: Method = doc.method.parse().map_err(bad)?;
    let mut columns = Vec::new();
    for c in doc.indices {
        let kind: IndexKind = c.index.parse().map_err(bad)?;
        let column = match (c.values, c.unavailable) {
            (Some(values), None) => {
                if values.len() != doc.n {
                    return Err(bad(format!("{} has {} values, expected {}", c.index, values.len(), doc.n)));
                }
                let exact = values
                    .iter()
                    .map(|v| {
                        let den = parse_int(&v.den)?;
                        if den == BigInt::from(0) {
                            return Err(bad("zero denominator".into()));
                        }
                        Ok(BigRational::new(parse_int(&v.num)?, den))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Column::Exact(exact)
            }
            (None, Some(why)) => Column::Unavailable(why),
            _ => return Err(bad(format!("{} needs exactly one of values/unavailable", c.index))),
        };
        columns.push((kind, column));
    }
    GroundSet::new(doc.n).map_err(|e| bad(e.to_string()))?;
    Ok(IndexReport {
        ground_size: doc.n,
        method,
        source: doc.source,
        columns,
    })
}

#[derive(Serialize)]
struct EstimateJson {
    samples_used: u64,
    rng_seed: u64,
    elements: Vec<EstimateRow>,
}

#[derive(Serialize)]
struct EstimateRow {
    element: usize,
    estimate: f64,
    half_width: f64,
}

pub fn render_estimate(est: &SampleEstimate, format: Format, precision: usize) -> String {
    let rows = est
        .elements
        .iter()
        .zip(&est.estimates)
        .zip(&est.half_widths)
        .map(|((&e, &x), &hw)| (e + 1, x, hw));
    match format {
        Format::Json => {
            let doc = EstimateJson {
                samples_used: est.samples_used,
                rng_seed: est.rng_seed,
                elements: rows
                    .map(|(element, estimate, half_width)| EstimateRow {
                        element,
                        estimate,
                        half_width,
                    })
                    .collect(),
            };
            let mut out = serde_json::to_string(&doc).expect("estimate serialization cannot fail");
            out.push('\n');
            out
        }
        Format::Csv => {
            let mut out = String::from("element,estimate,half_width\n");
            for (e, x, hw) in rows {
                writeln!(out, "{e},{x:.precision$},{hw:.precision$}").unwrap();
            }
            out
        }
        Format::Table => {
            let mut out = format!("samples_used: {}\nrng_seed: {}\n", est.samples_used, est.rng_seed);
            let we = (precision + 2).max("estimate".len());
            let wh = (precision + 2).max("half_width".len());
            writeln!(out, "element  {:>we$}  {:>wh$}", "estimate", "half_width").unwrap();
            for (e, x, hw) in rows {
                writeln!(out, "{e:<7}  {x:>we$.precision$}  {hw:>wh$.precision$}").unwrap();
            }
            out
        }
    }
}
