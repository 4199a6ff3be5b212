use serde::Serialize;

use mvlab::exact::{BigRat, DEFAULT_PRECISION};
use mvlab::PiScaled;

use crate::output::{canonical_json, Render};

pub fn fraction(v: &BigRat) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Decimal digits carried by `bits` binary digits.
pub fn digits_for(bits: u32) -> usize {
    ((bits as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize
}

#[derive(Serialize)]
pub struct AgnOut {
    pub g: usize,
    pub n: usize,
    pub value: String,
}

impl Render for AgnOut {
    fn plain(&self) -> String {
        self.value.clone()
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["g", "n", "value"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.g.to_string(),
            self.n.to_string(),
            self.value.clone(),
        ]]
    }
}

#[derive(Serialize)]
struct PiPlain<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    approx: Option<&'a str>,
    coeff: &'a str,
    pi_half_exponent: i64,
}

#[derive(Serialize)]
pub struct PiOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<String>,
    pub coeff: String,
    pub g: usize,
    pub n: usize,
    pub pi_half_exponent: i64,
}

impl PiOut {
    pub fn new(g: usize, n: usize, v: &PiScaled, numeric_bits: Option<u32>) -> Self {
        let approx = numeric_bits.map(|bits| {
            let bits = if bits == 0 { DEFAULT_PRECISION } else { bits };
            v.to_bigfloat(bits).to_sci_string(digits_for(bits))
        });
        Self {
            approx,
            coeff: fraction(&v.coeff),
            g,
            n,
            pi_half_exponent: v.pi_half_exponent,
        }
    }
}

impl Render for PiOut {
    fn plain(&self) -> String {
        let p = PiPlain {
            approx: self.approx.as_deref(),
            coeff: &self.coeff,
            pi_half_exponent: self.pi_half_exponent,
        };
        canonical_json(&p).unwrap_or_default()
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["g", "n", "coeff", "pi_half_exponent", "approx"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.g.to_string(),
            self.n.to_string(),
            self.coeff.clone(),
            self.pi_half_exponent.to_string(),
            self.approx.clone().unwrap_or_default(),
        ]]
    }
}

#[derive(Serialize)]
pub struct GenusOut {
    pub c: Vec<String>,
    pub g: usize,
}

impl Render for GenusOut {
    fn plain(&self) -> String {
        self.c
            .iter()
            .enumerate()
            .map(|(j, c)| format!("C_{{{},{j}}} = {c}", self.g))
            .collect::<Vec<_>>()
            .join("\n")
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["g", "j", "value"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.c
            .iter()
            .enumerate()
            .map(|(j, c)| vec![self.g.to_string(), j.to_string(), c.clone()])
            .collect()
    }
}

#[derive(Serialize)]
pub struct TableOut {
    pub entries: usize,
    pub gmax: usize,
    pub method: String,
    pub nmax: usize,
    pub path: String,
}

impl Render for TableOut {
    fn plain(&self) -> String {
        format!("wrote {} entries to {}", self.entries, self.path)
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["gmax", "nmax", "method", "entries", "path"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.gmax.to_string(),
            self.nmax.to_string(),
            self.method.clone(),
            self.entries.to_string(),
            self.path.clone(),
        ]]
    }
}

#[derive(Serialize)]
pub struct Case {
    pub detail: String,
    pub name: String,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct VerifyOut {
    pub cases: Vec<Case>,
    pub pass: bool,
    pub suite: String,
    pub summary: String,
}

impl Render for VerifyOut {
    fn plain(&self) -> String {
        let mut lines: Vec<String> = self
            .cases
            .iter()
            .filter(|c| !c.pass)
            .map(|c| format!("FAIL {}: {}", c.name, c.detail))
            .collect();
        lines.push(self.summary.clone());
        lines.join("\n")
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["suite", "name", "pass", "detail"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.cases
            .iter()
            .map(|c| {
                vec![
                    self.suite.clone(),
                    c.name.clone(),
                    c.pass.to_string(),
                    c.detail.clone(),
                ]
            })
            .collect()
    }
}

#[derive(Serialize)]
pub struct AsymRow {
    pub error: String,
    pub estimate: String,
    pub k: usize,
    pub n: usize,
    pub paper: String,
    pub pass: bool,
    pub relative_deviation: String,
    pub tolerance: String,
}

#[derive(Serialize)]
pub struct AsymOut {
    pub cases: Vec<AsymRow>,
    pub gmax: usize,
    pub order: usize,
    pub pass: bool,
    pub precision: u32,
    pub target: String,
    pub widened: bool,
}

impl Render for AsymOut {
    fn plain(&self) -> String {
        let mut lines = vec![format!(
            "target {}, gmax {}, order {}, {} bits{}",
            self.target,
            self.gmax,
            self.order,
            self.precision,
            if self.widened {
                ", widened tolerances (short window)"
            } else {
                ""
            }
        )];
        lines.push(format!(
            "{:>3} {:>2}  {:<26} {:<10} {:<26} {:<10} {:<24} result",
            "n", "k", "estimate", "error", "published", "rel.dev", "tolerance"
        ));
        for r in &self.cases {
            lines.push(format!(
                "{:>3} {:>2}  {:<26} {:<10} {:<26} {:<10} {:<24} {}",
                r.n,
                r.k,
                r.estimate,
                r.error,
                r.paper,
                r.relative_deviation,
                r.tolerance,
                if r.pass { "pass" } else { "FAIL" }
            ));
        }
        lines.push(if self.pass {
            "all rows pass".into()
        } else {
            "some rows fail".into()
        });
        lines.join("\n")
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec![
            "target",
            "n",
            "k",
            "estimate",
            "error",
            "paper",
            "relative_deviation",
            "tolerance",
            "pass",
        ]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.cases
            .iter()
            .map(|r| {
                vec![
                    self.target.clone(),
                    r.n.to_string(),
                    r.k.to_string(),
                    r.estimate.clone(),
                    r.error.clone(),
                    r.paper.clone(),
                    r.relative_deviation.clone(),
                    r.tolerance.clone(),
                    r.pass.to_string(),
                ]
            })
            .collect()
    }
}

#[derive(Serialize)]
pub struct CacheFile {
    pub entries: usize,
    pub name: String,
}

#[derive(Serialize)]
pub struct CacheOut {
    pub dir: String,
    pub files: Vec<CacheFile>,
    pub removed: usize,
}

impl Render for CacheOut {
    fn plain(&self) -> String {
        let mut lines = vec![format!("cache directory: {}", self.dir)];
        for f in &self.files {
            lines.push(format!("{}\t{} entries", f.name, f.entries));
        }
        if self.removed > 0 {
            lines.push(format!("removed {} table files", self.removed));
        } else if self.files.is_empty() {
            lines.push("no cached tables".into());
        }
        lines.join("\n")
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["name", "entries"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.files
            .iter()
            .map(|f| vec![f.name.clone(), f.entries.to_string()])
            .collect()
    }
}
