use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{agn, unstable, Method};
use crate::error::{Error, Result};
use crate::exact::BigRat;

pub const TABLE_HEADER: &str = "# agn-table v1";

/// Immutable table of `a_{g,n}` values keyed by `(g, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgnTable {
    entries: BTreeMap<(usize, usize), BigRat>,
    /// Route that produced the values; `None` for tables read from disk.
    pub method: Option<Method>,
}

impl AgnTable {
    pub fn get(&self, g: usize, n: usize) -> Option<&BigRat> {
        self.entries.get(&(g, n))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &BigRat)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    /// Returns a copy with one entry replaced; used to build broken inputs
    /// for verification suites.
    pub fn with_entry(&self, g: usize, n: usize, value: BigRat) -> Self {
        let mut entries = self.entries.clone();
        entries.insert((g, n), value);
        Self {
            entries,
            method: self.method,
        }
    }

    /// Boundary values and positivity of every stable entry.
    pub fn check_invariants(&self) -> Result<()> {
        for ((g, n), v) in self.iter() {
            let expected_boundary = match (g, n) {
                (0, 0..=2) => Some(BigRat::zero()),
                (0, 3) | (0, 4) => Some(BigRat::one()),
                _ => None,
            };
            if let Some(b) = expected_boundary {
                if *v != b {
                    return Err(Error::Consistency(format!(
                        "a_({g},{n}) = {v}, expected {b}"
                    )));
                }
            } else if !unstable(g as i64, n as i64) && !v.is_positive() {
                return Err(Error::Consistency(format!(
                    "a_({g},{n}) = {v} is not positive"
                )));
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(32 * self.len());
        out.push_str(TABLE_HEADER);
        out.push('\n');
        for ((g, n), v) in self.iter() {
            let _ = writeln!(out, "{g}\t{n}\t{}/{}", v.numer(), v.denom());
        }
        out
    }
}

/// Every `a_{g,n}` with `g <= gmax`, `n <= nmax`.
///
/// The alternating recursion only covers `n >= 2`; its tables take `n < 2`
/// from the series route.
pub fn build_table(gmax: usize, nmax: usize, method: Method) -> Result<AgnTable> {
    let mut entries = BTreeMap::new();
    for g in 0..=gmax {
        for n in 0..=nmax {
            let m = if method == Method::Alternative && n < 2 {
                Method::Series
            } else {
                method
            };
            entries.insert((g, n), agn(g, n, m)?);
        }
    }
    Ok(AgnTable {
        entries,
        method: Some(method),
    })
}

pub fn save_table(table: &AgnTable, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, table.to_text())?;
    Ok(())
}

pub fn load_table(path: impl AsRef<Path>) -> Result<AgnTable> {
    let text = std::fs::read_to_string(path)?;
    parse_table(&text)
}

pub fn parse_table(text: &str) -> Result<AgnTable> {
    let mut lines = text.split('\n').enumerate();
    let header = lines.next().map(|(_, l)| l).unwrap_or("");
    if header != TABLE_HEADER {
        if let Some(version) = header.strip_prefix("# agn-table ") {
            return Err(Error::Version(version.to_string()));
        }
        return Err(Error::Parse {
            line: 1,
            message: format!("bad header `{header}`"),
        });
    }
    let mut entries = BTreeMap::new();
    let mut ended = false;
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.is_empty() {
            ended = true;
            continue;
        }
        let bad = |message: String| Error::Parse {
            line: lineno,
            message,
        };
        if ended {
            return Err(bad("entry after blank line".into()));
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let [g, n, value] = fields[..] else {
            return Err(bad(format!("expected 3 tab-separated fields in `{line}`")));
        };
        let g: usize = g.parse().map_err(|_| bad(format!("bad genus `{g}`")))?;
        let n: usize = n.parse().map_err(|_| bad(format!("bad n `{n}`")))?;
        let value = parse_reduced(value).map_err(bad)?;
        if entries.insert((g, n), value).is_some() {
            return Err(bad(format!("duplicate entry ({g}, {n})")));
        }
    }
    Ok(AgnTable {
        entries,
        method: None,
    })
}

fn parse_reduced(s: &str) -> std::result::Result<BigRat, String> {
    let (p, q) = s
        .split_once('/')
        .ok_or_else(|| format!("expected numerator/denominator, got `{s}`"))?;
    let p: BigInt = p.parse().map_err(|_| format!("bad numerator `{p}`"))?;
    if q.starts_with(['+', '-']) {
        return Err(format!("denominator must be positive in `{s}`"));
    }
    let q: BigInt = q.parse().map_err(|_| format!("bad denominator `{q}`"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    if !p.gcd(&q).is_one() {
        return Err(format!("fraction `{s}` is not in lowest terms"));
    }
    Ok(BigRat::new(p, q))
}
