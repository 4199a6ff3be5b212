use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exact::{binomial, int, pochhammer, pow2, rat, solve_exact, BigRat};

/// Rows `a_{g,0..len}` filled genus by genus.
///
/// Computing row `g` up to `n` needs row `g-1` up to `n+3`, so a request for
/// `(g, n)` fills the triangle `{(g', n') : n' <= n + 3(g - g')}`.
#[derive(Default)]
struct DirectTable {
    rows: Vec<Vec<BigRat>>,
}

impl DirectTable {
    fn get(&self, g: usize, n: usize) -> &BigRat {
        &self.rows[g][n]
    }

    fn ensure(&mut self, g: usize, len: usize) {
        // a_{g,0} for g >= 2 is recovered from a_{g,1..=g+1}
        let len = if g >= 2 { len.max(g + 2) } else { len };
        if self.rows.len() > g && self.rows[g].len() >= len {
            return;
        }
        if g > 0 {
            self.ensure(g - 1, len + 3);
        }
        while self.rows.len() <= g {
            self.rows.push(Vec::new());
        }
        let start = self.rows[g].len();
        if start == 0 {
            self.rows[g].push(BigRat::zero());
        }
        for n in start.max(1)..len {
            let v = self.cell(g, n);
            self.rows[g].push(v);
        }
        if start == 0 && g >= 2 {
            self.rows[g][0] = self.genus_constant(g);
        }
    }

    fn cell(&self, g: usize, n: usize) -> BigRat {
        let (gi, ni) = (g as i64, n as i64);
        if super::unstable(gi, ni) {
            return BigRat::zero();
        }
        if g == 0 && (n == 3 || n == 4) {
            return rat(1, 1);
        }
        // zero factors, and the excluded pair (0,3)
        let skip = |g: usize, n: usize| g == 0 && n <= 3;
        let mut parts = Vec::new();
        for g1 in 0..=g {
            let g2 = g - g1;
            for n1 in 2..=n + 1 {
                let n2 = n + 3 - n1;
                if skip(g1, n1) || skip(g2, n2) {
                    continue;
                }
                let w = BigRat::from_integer(binomial(n - 1, n1 - 2));
                parts.push(w * self.get(g1, n1) * self.get(g2, n2));
            }
        }
        let mut acc = crate::exact::linsolve_sum(parts) * rat(1, 2);
        if g >= 1 {
            acc += self.get(g - 1, n + 3) * rat(1, 12);
        }
        acc / int(BigInt::from(4 * gi - 4 + ni))
    }

    /// `a_{g,0}` for `g >= 2`: the genus-`g` free energy is
    /// `sum_j C_j T^{-(5g-5-j)}`, so `a_{g,n} = 2^n sum_j C_j ((5g-5-j)/2)_n`.
    /// Solve for the `C_j` from `n = 1..=g+1` and evaluate at `n = 0`.
    fn genus_constant(&self, g: usize) -> BigRat {
        let b: Vec<BigRat> = (0..=g).map(|j| rat((5 * g - 5 - j) as i64, 2)).collect();
        let matrix: Vec<Vec<BigRat>> = (1..=g + 1)
            .map(|n| b.iter().map(|bj| pochhammer(bj, n)).collect())
            .collect();
        let rhs: Vec<BigRat> = (1..=g + 1)
            .map(|n| self.get(g, n) * pow2(-(n as i64)))
            .collect();
        let c = solve_exact(matrix, rhs).expect("distinct positive Pochhammer bases");
        c.into_iter().fold(BigRat::zero(), |acc, x| acc + x)
    }
}

fn table() -> &'static Mutex<DirectTable> {
    static TABLE: OnceLock<Mutex<DirectTable>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(DirectTable::default()))
}

/// `a_{g,n}` from the direct quadratic recursion (defined for every `(g, n)`).
pub fn a_direct(g: usize, n: usize) -> BigRat {
    let mut t = table().lock().unwrap();
    t.ensure(g, n + 1);
    t.get(g, n).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_spot_values() {
        assert_eq!(a_direct(0, 5), rat(3, 1));
        assert_eq!(a_direct(1, 1), rat(1, 12));
        assert_eq!(a_direct(2, 1), rat(29, 640));
        assert_eq!(a_direct(0, 2), rat(0, 1));
        assert_eq!(a_direct(2, 0), rat(1, 96));
        assert_eq!(a_direct(3, 0), rat(575, 21504));
        assert_eq!(a_direct(1, 0), rat(0, 1));
    }

    #[test]
    fn boundary_row() {
        let row: Vec<_> = (0..=4).map(|n| a_direct(0, n)).collect();
        assert_eq!(
            row,
            vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1), rat(1, 1)]
        );
    }
}
