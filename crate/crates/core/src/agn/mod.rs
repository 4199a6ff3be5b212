//! The rational numbers `a_{g,n}`: two independent recursions plus a
//! persisted table format.

mod alt;
mod direct;
mod table;

use std::fmt;
use std::str::FromStr;

pub use alt::a_alt;
pub use direct::a_direct;
pub use table::{build_table, load_table, parse_table, save_table, AgnTable, TABLE_HEADER};

use crate::error::{Error, Result};
use crate::exact::BigRat;

/// Which route computes `a_{g,n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Quadratic recursion in `n` with the `a_{g-1,n+3}/12` term (n >= 1).
    Direct,
    /// Alternating-sign recursion with shifted arguments (n >= 2).
    Alternative,
    /// Genus-by-genus Laurent data and the Pochhammer formula.
    Series,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Alternative => "alt",
            Method::Series => "series",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "alt" | "alternative" => Ok(Method::Alternative),
            "series" => Ok(Method::Series),
            other => Err(Error::domain(format!("unknown method `{other}`"))),
        }
    }
}

/// `a_{g,n}` by the requested route.
pub fn agn(g: usize, n: usize, method: Method) -> Result<BigRat> {
    match method {
        Method::Direct => Ok(a_direct(g, n)),
        Method::Alternative => a_alt(g, n),
        Method::Series => Ok(crate::genus::agn_from_series(g, n)),
    }
}

/// `a_{g,n}` is zero by definition when `2g - 2 + n <= 0`.
pub(crate) fn unstable(g: i64, n: i64) -> bool {
    g < 0 || n < 0 || 2 * g - 2 + n <= 0
}

/// Reference values of `a_{g,n}` for `g <= 4`, `n <= 6`, indexed `[g][n]`.
pub const REFERENCE_TABLE: [[&str; 7]; 5] = [
    ["0", "0", "0", "1", "1", "3", "15"],
    ["0", "1/12", "1/8", "11/24", "21/8", "163/8", "1595/8"],
    [
        "1/96",
        "29/640",
        "337/1152",
        "319/128",
        "10109/384",
        "42445/128",
        "620641/128",
    ],
    [
        "575/21504",
        "20555/82944",
        "77633/27648",
        "1038595/27648",
        "16011391/27648",
        "31040465/3072",
        "201498115/1024",
    ],
    [
        "2106241/7962624",
        "1103729/294912",
        "160909109/2654208",
        "14674841399/13271040",
        "99177888029/4423680",
        "442442475179/884736",
        "10765584400823/884736",
    ],
];

/// Compares a table against [`REFERENCE_TABLE`]; returns `(matches, total)`.
pub fn check_reference(table: &AgnTable) -> (usize, usize) {
    let mut matches = 0;
    let mut total = 0;
    for (g, row) in REFERENCE_TABLE.iter().enumerate() {
        for (n, text) in row.iter().enumerate() {
            total += 1;
            let expected: BigRat = text.parse().expect("reference values are valid fractions");
            if table.get(g, n) == Some(&expected) {
                matches += 1;
            }
        }
    }
    (matches, total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_table_reproduced() {
        let table = build_table(4, 6, Method::Direct).unwrap();
        assert_eq!(check_reference(&table), (35, 35));
        let broken = table.with_entry(4, 6, BigRat::from_integer(1.into()));
        assert_eq!(check_reference(&broken), (34, 35));
    }

    #[test]
    fn methods_round_trip_through_strings() {
        for m in [Method::Direct, Method::Alternative, Method::Series] {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("other".parse::<Method>().is_err());
    }
}
