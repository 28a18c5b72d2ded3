//! JSON descriptions of vertices and filter requests, and CSV sweep
//! output.
//!
//! A vertex file carries `n`, a `form` tag and the fields that form
//! needs. Complex scalars are `[re, im]` arrays (a bare number is
//! accepted as shorthand for a real value in chart parameters), and
//! line permutations are written 1-based.
//!
//! ```json
//! { "n": 2, "form": "raw", "A": [[[1,0],[0,0]],[[0,0],[1,0]]],
//!   "B": [[[0,0],[0,0]],[[0,0],[0,0]]] }
//! { "n": 3, "form": "st", "S": [[[2,0]]], "T": [[[0.7,0],[0.7,0]]] }
//! { "n": 3, "form": "case",
//!   "case": { "name": "n3-delta", "params": { "s": 2, "t2": [0.7,0], "t3": [0.7,0] } } }
//! ```

use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filter::{CouplingRequest, FilterSpec};
use crate::matrix::ComplexMatrix;
use crate::scattering::s_matrix;
use crate::vertex::{make_case, BoundaryPair, CaseParameters, ReverseSTForm, STForm};

/// Largest flux defect tolerated in a sweep row.
pub const SWEEP_FLUX_TOL: f64 = 1e-9;

type MatrixRepr = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexFile {
    n: usize,
    form: String,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    a: Option<MatrixRepr>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    b: Option<MatrixRepr>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    s: Option<MatrixRepr>,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    t: Option<MatrixRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    perm: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    case: Option<CaseFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CaseFile {
    name: String,
    params: serde_json::Map<String, serde_json::Value>,
}

/// A vertex parsed from JSON, keeping the chart parameters when the
/// file used one.
#[derive(Debug, Clone)]
pub struct LoadedVertex {
    pub pair: BoundaryPair,
    pub case: Option<CaseParameters>,
}

fn matrix_from_repr(repr: &MatrixRepr, rows: usize, cols: usize, label: &str) -> Result<ComplexMatrix> {
    if repr.len() != rows || repr.iter().any(|r| r.len() != cols) {
        return Err(Error::Dimension(format!(
            "field {label} must be a {rows} x {cols} matrix"
        )));
    }
    Ok(ComplexMatrix::from_fn(rows, cols, |i, j| {
        Complex64::new(repr[i][j][0], repr[i][j][1])
    }))
}

fn matrix_to_repr(m: &ComplexMatrix) -> MatrixRepr {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

fn perm_from_file(perm: Option<&Vec<usize>>, n: usize) -> Result<Vec<usize>> {
    match perm {
        None => Ok((0..n).collect()),
        Some(lines) => lines
            .iter()
            .map(|&l| {
                if l == 0 {
                    Err(Error::Parameter(
                        "perm entries are 1-based line numbers".into(),
                    ))
                } else {
                    Ok(l - 1)
                }
            })
            .collect(),
    }
}

/// Reads chart parameters, rejecting unknown and repeated-use keys.
struct ParamReader<'a> {
    map: &'a serde_json::Map<String, serde_json::Value>,
    seen: BTreeSet<String>,
}

impl<'a> ParamReader<'a> {
    fn new(map: &'a serde_json::Map<String, serde_json::Value>) -> Self {
        ParamReader {
            map,
            seen: BTreeSet::new(),
        }
    }

    fn value(&mut self, key: &str) -> Result<&'a serde_json::Value> {
        self.seen.insert(key.to_owned());
        self.map
            .get(key)
            .ok_or_else(|| Error::Parameter(format!("missing chart parameter {key:?}")))
    }

    fn real(&mut self, key: &str) -> Result<f64> {
        match self.value(key)? {
            serde_json::Value::Number(x) => x
                .as_f64()
                .ok_or_else(|| Error::Parameter(format!("parameter {key:?} is not a real number"))),
            _ => Err(Error::Parameter(format!(
                "parameter {key:?} must be a real number"
            ))),
        }
    }

    fn complex(&mut self, key: &str) -> Result<Complex64> {
        match self.value(key)? {
            serde_json::Value::Number(x) => x
                .as_f64()
                .map(|re| Complex64::new(re, 0.0))
                .ok_or_else(|| Error::Parameter(format!("parameter {key:?} is not a number"))),
            serde_json::Value::Array(parts) if parts.len() == 2 => {
                let mut out = [0.0; 2];
                for (slot, part) in out.iter_mut().zip(parts) {
                    *slot = part.as_f64().ok_or_else(|| {
                        Error::Parameter(format!("parameter {key:?} must hold two numbers"))
                    })?;
                }
                Ok(Complex64::new(out[0], out[1]))
            }
            _ => Err(Error::Parameter(format!(
                "parameter {key:?} must be a number or an [re, im] pair"
            ))),
        }
    }

    fn optional_real(&mut self, key: &str) -> Result<Option<f64>> {
        if self.map.contains_key(key) {
            self.real(key).map(Some)
        } else {
            self.seen.insert(key.to_owned());
            Ok(None)
        }
    }

    fn finish(self) -> Result<()> {
        let stray: Vec<&str> = self
            .map
            .keys()
            .filter(|k| !self.seen.contains(*k))
            .map(String::as_str)
            .collect();
        if stray.is_empty() {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "unknown chart parameters: {}",
                stray.join(", ")
            )))
        }
    }
}

fn case_from_file(file: &CaseFile, n: usize) -> Result<CaseParameters> {
    let mut p = ParamReader::new(&file.params);
    let case = match file.name.as_str() {
        "n2-delta" => CaseParameters::DeltaN2 {
            s: p.real("s")?,
            t: p.complex("t")?,
        },
        "n3-delta" => CaseParameters::DeltaN3 {
            s: p.real("s")?,
            t2: p.complex("t2")?,
            t3: p.complex("t3")?,
        },
        "n3-rank2-st" => CaseParameters::Rank2StN3 {
            s11: p.real("s11")?,
            s12: p.complex("s12")?,
            s22: p.real("s22")?,
            t1: p.complex("t1")?,
            t2: p.complex("t2")?,
        },
        "n2-delta-prime" => CaseParameters::DeltaPrimeN2 {
            s: p.real("s")?,
            c: p.complex("c")?,
        },
        "n3-delta-prime" => CaseParameters::DeltaPrimeN3 {
            s: p.real("s")?,
            c: p.complex("c")?,
            d: p.complex("d")?,
        },
        "n3-rank2-reverse" => CaseParameters::Rank2ReverseN3 {
            s: p.real("s")?,
            q: p.complex("q")?,
            r: p.real("r")?,
            c: p.complex("c")?,
            d: p.complex("d")?,
            f: p.optional_real("f")?,
        },
        "n2-hermitian" => CaseParameters::HermitianN2 {
            s11: p.real("s11")?,
            s12: p.complex("s12")?,
            s22: p.real("s22")?,
        },
        "n3-hermitian" => CaseParameters::HermitianN3 {
            s11: p.real("s11")?,
            s12: p.complex("s12")?,
            s13: p.complex("s13")?,
            s22: p.real("s22")?,
            s23: p.complex("s23")?,
            s33: p.real("s33")?,
        },
        other => {
            return Err(Error::Parameter(format!("unknown case name {other:?}")));
        }
    };
    p.finish()?;
    if case.n() != n {
        return Err(Error::Dimension(format!(
            "case {} describes {} lines but the file says n = {n}",
            file.name,
            case.n()
        )));
    }
    Ok(case)
}

/// Parses a vertex description.
pub fn vertex_from_json(text: &str) -> Result<LoadedVertex> {
    let file: VertexFile = serde_json::from_str(text)?;
    let n = file.n;
    if n == 0 {
        return Err(Error::Dimension("a vertex needs at least one line".into()));
    }
    let field = |opt: &Option<MatrixRepr>, label: &str| -> Result<MatrixRepr> {
        opt.clone()
            .ok_or_else(|| Error::Parameter(format!("form {:?} needs field {label}", file.form)))
    };
    match file.form.as_str() {
        "raw" => {
            let a = matrix_from_repr(&field(&file.a, "A")?, n, n, "A")?;
            let b = matrix_from_repr(&field(&file.b, "B")?, n, n, "B")?;
            Ok(LoadedVertex {
                pair: BoundaryPair::new(a, b)?,
                case: None,
            })
        }
        "st" | "reverse_st" => {
            let s_repr = field(&file.s, "S")?;
            let r = s_repr.len();
            if r > n {
                return Err(Error::Dimension(format!(
                    "strength block has {r} rows but the vertex only has {n} lines"
                )));
            }
            let s = matrix_from_repr(&s_repr, r, r, "S")?;
            let t_repr = match &file.t {
                Some(t) => t.clone(),
                None if n == r => vec![Vec::new(); r],
                None => {
                    return Err(Error::Parameter(format!(
                        "form {:?} needs field T",
                        file.form
                    )))
                }
            };
            let t = matrix_from_repr(&t_repr, r, n - r, "T")?;
            let perm = perm_from_file(file.perm.as_ref(), n)?;
            let pair = if file.form == "st" {
                STForm::new(n, s, t, perm)?.assemble()?
            } else {
                ReverseSTForm::new(n, s, t, perm)?.assemble()?
            };
            Ok(LoadedVertex { pair, case: None })
        }
        "case" => {
            let case_file = file
                .case
                .as_ref()
                .ok_or_else(|| Error::Parameter("form \"case\" needs a case block".into()))?;
            let case = case_from_file(case_file, n)?;
            Ok(LoadedVertex {
                pair: make_case(&case)?,
                case: Some(case),
            })
        }
        other => Err(Error::Parameter(format!(
            "unknown form {other:?}; expected raw, st, reverse_st or case"
        ))),
    }
}

/// Reads a vertex description from a file.
pub fn vertex_from_path(path: &Path) -> Result<LoadedVertex> {
    vertex_from_json(&std::fs::read_to_string(path)?)
}

/// Serializes a boundary pair in raw form.
pub fn vertex_to_raw_json(pair: &BoundaryPair) -> String {
    let file = VertexFile {
        n: pair.n(),
        form: "raw".into(),
        a: Some(matrix_to_repr(pair.a())),
        b: Some(matrix_to_repr(pair.b())),
        s: None,
        t: None,
        perm: None,
        case: None,
    };
    let mut text = serde_json::to_string_pretty(&file).expect("plain data serializes");
    text.push('\n');
    text
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FilterSpecFile {
    pairs: FilterPairsFile,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FilterPairsFile {
    #[serde(rename = "12")]
    pair_12: RequestWord,
    #[serde(rename = "23")]
    pair_23: RequestWord,
    #[serde(rename = "31")]
    pair_31: RequestWord,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RequestWord {
    Low,
    High,
}

impl From<RequestWord> for CouplingRequest {
    fn from(word: RequestWord) -> Self {
        match word {
            RequestWord::Low => CouplingRequest::LowPass,
            RequestWord::High => CouplingRequest::HighPass,
        }
    }
}

/// Parses a filter request such as
/// `{"pairs": {"12": "low", "23": "high", "31": "high"}}`.
pub fn filter_spec_from_json(text: &str) -> Result<FilterSpec> {
    let file: FilterSpecFile = serde_json::from_str(text)?;
    Ok(FilterSpec {
        pair_12: file.pairs.pair_12.into(),
        pair_23: file.pairs.pair_23.into(),
        pair_31: file.pairs.pair_31.into(),
    })
}

/// Scattering matrices tabulated over a logarithmic wave-number grid.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub n: usize,
    pub ks: Vec<f64>,
    pub matrices: Vec<ComplexMatrix>,
}

/// Evaluates the scattering matrix over `points` logarithmically spaced
/// wave numbers in `[kmin, kmax]`, checking flux conservation on every
/// row.
pub fn run_sweep(pair: &BoundaryPair, kmin: f64, kmax: f64, points: usize) -> Result<SweepResult> {
    if !(kmin > 0.0) || !kmax.is_finite() || kmax <= kmin {
        return Err(Error::Parameter(format!(
            "wave-number range [{kmin}, {kmax}] must be positive and increasing"
        )));
    }
    if points < 2 {
        return Err(Error::Parameter(format!(
            "a sweep needs at least two grid points, got {points}"
        )));
    }
    let n = pair.n();
    let ratio = (kmax / kmin).powf(1.0 / (points as f64 - 1.0));
    let mut ks = Vec::with_capacity(points);
    let mut matrices = Vec::with_capacity(points);
    for m in 0..points {
        let k = if m + 1 == points {
            kmax
        } else {
            kmin * ratio.powi(m as i32)
        };
        let sm = s_matrix(pair, k)?;
        for j in 0..n {
            let flux: f64 = (0..n).map(|i| sm.matrix()[(i, j)].norm_sqr()).sum();
            if (flux - 1.0).abs() > SWEEP_FLUX_TOL {
                return Err(Error::Internal(format!(
                    "flux defect {:.3e} at k = {k} exceeds {SWEEP_FLUX_TOL:.0e}",
                    (flux - 1.0).abs()
                )));
            }
        }
        ks.push(k);
        matrices.push(sm.matrix().clone());
    }
    Ok(SweepResult { n, ks, matrices })
}

fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Header of the probability table: `k,R1,..,Rn,T12,T13,..` with
/// `Tij` the probability into line `i` from line `j`.
pub fn probability_header(n: usize) -> String {
    let mut cols = vec!["k".to_owned()];
    cols.extend((1..=n).map(|i| format!("R{i}")));
    cols.extend(
        ordered_pairs(n)
            .iter()
            .map(|&(i, j)| format!("T{}{}", i + 1, j + 1)),
    );
    cols.join(",")
}

/// Header of the amplitude table: real and imaginary columns in the
/// same order as the probability table.
pub fn amplitude_header(n: usize) -> String {
    let mut cols = vec!["k".to_owned()];
    cols.extend((1..=n).flat_map(|i| [format!("R{i}_re"), format!("R{i}_im")]));
    cols.extend(ordered_pairs(n).iter().flat_map(|&(i, j)| {
        [
            format!("T{}{}_re", i + 1, j + 1),
            format!("T{}{}_im", i + 1, j + 1),
        ]
    }));
    cols.join(",")
}

/// Writes reflection and transmission probabilities as CSV.
pub fn write_probability_csv(out: &mut dyn Write, sweep: &SweepResult) -> std::io::Result<()> {
    writeln!(out, "{}", probability_header(sweep.n))?;
    let pairs = ordered_pairs(sweep.n);
    for (k, m) in sweep.ks.iter().zip(&sweep.matrices) {
        let mut row = Vec::with_capacity(1 + sweep.n + pairs.len());
        row.push(format!("{k:.11e}"));
        for i in 0..sweep.n {
            row.push(format!("{:.11e}", m[(i, i)].norm_sqr()));
        }
        for &(i, j) in &pairs {
            row.push(format!("{:.11e}", m[(i, j)].norm_sqr()));
        }
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

/// Writes complex amplitudes (real and imaginary parts) as CSV.
pub fn write_amplitude_csv(out: &mut dyn Write, sweep: &SweepResult) -> std::io::Result<()> {
    writeln!(out, "{}", amplitude_header(sweep.n))?;
    let pairs = ordered_pairs(sweep.n);
    for (k, m) in sweep.ks.iter().zip(&sweep.matrices) {
        let mut row = Vec::with_capacity(1 + 2 * (sweep.n + pairs.len()));
        row.push(format!("{k:.11e}"));
        for i in 0..sweep.n {
            row.push(format!("{:.11e}", m[(i, i)].re));
            row.push(format!("{:.11e}", m[(i, i)].im));
        }
        for &(i, j) in &pairs {
            row.push(format!("{:.11e}", m[(i, j)].re));
            row.push(format!("{:.11e}", m[(i, j)].im));
        }
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}
