use std::sync::{Mutex, OnceLock};

use num_traits::Signed;

use crate::exact::{bernoulli, factorial, int, ipow, laurent_dt, rat, BigRat, LaurentT};

fn one_minus_t() -> LaurentT {
    LaurentT::from_terms([(0, rat(1, 1)), (1, rat(-1, 1))])
}

/// `|B_{2k}| / (2k)!`
fn bernoulli_weight(k: usize) -> BigRat {
    bernoulli(2 * k).abs() / int(factorial(2 * k))
}

#[derive(Default)]
struct TildeCache {
    tilde: Vec<LaurentT>,
    u: Vec<LaurentT>,
}

fn tilde_cache() -> &'static Mutex<TildeCache> {
    static CACHE: OnceLock<Mutex<TildeCache>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(TildeCache::default()))
}

impl TildeCache {
    fn extend_tilde(&mut self, g: usize) {
        while self.tilde.len() <= g {
            let h = self.tilde.len();
            let next = if h == 0 {
                one_minus_t()
            } else {
                // symmetric sum over g1 + g2 = h, g1, g2 >= 1
                let quad = (1..=h / 2).map(|g1| {
                    let prod = &self.tilde[g1] * &self.tilde[h - g1];
                    if 2 * g1 == h {
                        prod.scale(&rat(1, 2))
                    } else {
                        prod
                    }
                });
                let lin = (1..=h)
                    .map(|g1| laurent_dt(&self.tilde[h - g1], 2 * g1).scale(&bernoulli_weight(g1)));
                quad.chain(lin).sum::<LaurentT>().shift(-1)
            };
            self.tilde.push(next);
        }
    }

    fn extend_u(&mut self, g: usize) {
        self.extend_tilde(g);
        while self.u.len() <= g {
            let h = self.u.len();
            let corrections = (1..=h).map(|g1| {
                // (2^{2k-1} - 1)/2^{2k-1}
                let p = ipow(2, 2 * g1 as i64 - 1);
                let w = (&p - rat(1, 1)) / &p * bernoulli_weight(g1);
                laurent_dt(&self.tilde[h - g1], 2 * g1).scale(&w)
            });
            let acc: LaurentT = std::iter::once(self.tilde[h].clone())
                .chain(corrections)
                .sum();
            self.u.push(acc);
        }
    }
}

/// `u~^{[g]}`, the genus-`g` part of the ILW variable; memoized.
pub fn tilde_u(g: usize) -> LaurentT {
    let mut c = tilde_cache().lock().unwrap();
    c.extend_tilde(g);
    c.tilde[g].clone()
}

/// `u^{[g]}` assembled from `u~^{[g']}`, `g' <= g`; memoized.
pub fn u_from_tilde(g: usize) -> LaurentT {
    let mut c = tilde_cache().lock().unwrap();
    c.extend_u(g);
    c.u[g].clone()
}

#[derive(Default)]
struct DirectCache {
    u: Vec<LaurentT>,
    /// `weighted[g][j] = (-1/4)^j D_T^{2j}(u^{[g]}) / (2j+1)!`
    weighted: Vec<Vec<LaurentT>>,
}

impl DirectCache {
    fn weighted(&mut self, g: usize, j: usize) -> &LaurentT {
        let row = &mut self.weighted[g];
        while row.len() <= j {
            let k = row.len();
            let d = laurent_dt(&self.u[g], 2 * k);
            let w = ipow(-4, -(k as i64)) / int(factorial(2 * k + 1));
            row.push(d.scale(&w));
        }
        &self.weighted[g][j]
    }

    fn extend(&mut self, g: usize) {
        while self.u.len() <= g {
            let h = self.u.len();
            let next = if h == 0 {
                one_minus_t()
            } else {
                // block[s] = sum over g1 + j1 = s of weighted[g1][j1], g1 <= h - 1
                let mut blocks = Vec::with_capacity(h + 1);
                for s in 0..=h {
                    let parts: Vec<LaurentT> = (0..=s.min(h - 1))
                        .map(|g1| self.weighted(g1, s - g1).clone())
                        .collect();
                    blocks.push(parts.into_iter().sum::<LaurentT>());
                }
                let quad: LaurentT = (0..=h).map(|s| &blocks[s] * &blocks[h - s]).sum();
                let lin: LaurentT = (1..=h)
                    .map(|j| {
                        let w = ipow(-4, -(j as i64)) / int(factorial(2 * j));
                        laurent_dt(&self.u[h - j], 2 * j).scale(&w)
                    })
                    .sum();
                &quad.scale(&rat(1, 2)).shift(-1) - &lin.shift(-1)
            };
            self.u.push(next);
            self.weighted.push(Vec::new());
        }
    }
}

/// `u^{[g]}` from the direct recursion in `u`, independent of `u~`; memoized.
pub fn u_direct(g: usize) -> LaurentT {
    static CACHE: OnceLock<Mutex<DirectCache>> = OnceLock::new();
    let mut c = CACHE
        .get_or_init(|| Mutex::new(DirectCache::default()))
        .lock()
        .unwrap();
    c.extend(g);
    c.u[g].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_genus_tilde() {
        assert_eq!(tilde_u(0), one_minus_t());
        assert_eq!(tilde_u(1), LaurentT::monomial(-4, rat(1, 12)));
        let t2 = tilde_u(2);
        let (lo, hi) = t2.support().unwrap();
        assert!(lo >= -9 && hi <= -7, "{t2}");
    }

    #[test]
    fn low_genus_u() {
        let u1 = LaurentT::from_terms([(-4, rat(1, 12)), (-3, rat(1, 24))]);
        assert_eq!(u_from_tilde(0), one_minus_t());
        assert_eq!(u_from_tilde(1), u1);
        assert_eq!(u_direct(0), one_minus_t());
        assert_eq!(u_direct(1), u1);
        assert_eq!(u_from_tilde(2).coeff(-9), rat(49, 288));
    }

    #[test]
    fn two_routes_agree_low_genus() {
        for g in 0..=8 {
            assert_eq!(u_direct(g), u_from_tilde(g), "g = {g}");
        }
    }

    #[test]
    fn support_bounds() {
        for g in 2..=10 {
            let lo = -(5 * g as i64 - 1);
            let hi = -(4 * g as i64 - 1);
            for p in [tilde_u(g), u_from_tilde(g)] {
                let (a, b) = p.support().unwrap();
                assert!(a >= lo && b <= hi, "g = {g}: {a}..{b}");
            }
        }
    }
}
