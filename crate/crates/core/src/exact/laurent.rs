use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::BigRat;

/// Finite Laurent polynomial `sum_e c_e T^e` with exact rational coefficients.
///
/// Here `T = sqrt(1 - 2x)`, so `d/dx` acts as `D_T = -(1/T) d/dT`, i.e.
/// `D_T(T^e) = -e T^(e-2)`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentT {
    coeffs: BTreeMap<i64, BigRat>,
}

impl LaurentT {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exp: i64, coeff: BigRat) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn constant(c: BigRat) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigRat)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// `x = (1 - T^2)/2` expressed in `T`.
    pub fn x() -> Self {
        Self::from_terms([(0, super::rat(1, 2)), (2, super::rat(-1, 2))])
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigRat) {
        if coeff.is_zero() {
            return;
        }
        match self.coeffs.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, exp: i64) -> BigRat {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRat)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest and largest exponent present, if any.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = *self.coeffs.keys().next()?;
        let hi = *self.coeffs.keys().next_back()?;
        Some((lo, hi))
    }

    pub fn scale(&self, s: &BigRat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// Multiplies by `T^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// One application of `D_T`.
    pub fn dt(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.coeffs {
            if *e != 0 {
                out.add_term(e - 2, c * BigRat::from_integer(BigInt::from(-e)));
            }
        }
        out
    }

    /// Value at `T = 1`, i.e. at `x = 0`.
    pub fn eval_at_one(&self) -> BigRat {
        self.coeffs.values().fold(BigRat::zero(), |acc, c| acc + c)
    }
}

/// `D_T^k(p)`, using `D_T^k T^e = (-1)^k e (e-2) ... (e-2k+2) T^{e-2k}`.
pub fn laurent_dt(p: &LaurentT, k: usize) -> LaurentT {
    let mut out = LaurentT::zero();
    for (e, c) in &p.coeffs {
        let mut f = BigInt::one();
        for i in 0..k as i64 {
            f *= -(e - 2 * i);
        }
        if !f.is_zero() {
            out.add_term(e - 2 * k as i64, c * BigRat::from_integer(f));
        }
    }
    out
}

impl Add for &LaurentT {
    type Output = LaurentT;
    fn add(self, rhs: &LaurentT) -> LaurentT {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentT {
    type Output = LaurentT;
    fn sub(self, rhs: &LaurentT) -> LaurentT {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentT {
    type Output = LaurentT;
    fn neg(self) -> LaurentT {
        LaurentT {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl LaurentT {
    /// Integer numerators over one common denominator.
    fn common_denominator(&self) -> (Vec<(i64, BigInt)>, BigInt) {
        let den = self.coeffs.values().fold(BigInt::one(), |acc, c| {
            num_integer::Integer::lcm(&acc, c.denom())
        });
        let nums = self
            .coeffs
            .iter()
            .map(|(e, c)| (*e, c.numer() * (&den / c.denom())))
            .collect();
        (nums, den)
    }
}

impl Mul for &LaurentT {
    type Output = LaurentT;
    fn mul(self, rhs: &LaurentT) -> LaurentT {
        let (a, da) = self.common_denominator();
        let (b, db) = rhs.common_denominator();
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e1, n1) in &a {
            for (e2, n2) in &b {
                *acc.entry(e1 + e2).or_default() += n1 * n2;
            }
        }
        let den = da * db;
        let mut out = LaurentT::zero();
        for (e, num) in acc {
            out.add_term(e, BigRat::new(num, den.clone()));
        }
        out
    }
}

impl std::iter::Sum for LaurentT {
    /// Collects every coefficient per exponent and reduces each sum once.
    fn sum<I: Iterator<Item = LaurentT>>(iter: I) -> LaurentT {
        let mut acc: BTreeMap<i64, Vec<BigRat>> = BTreeMap::new();
        for p in iter {
            for (e, c) in p.coeffs {
                acc.entry(e).or_default().push(c);
            }
        }
        let mut out = LaurentT::zero();
        for (e, parts) in acc {
            out.add_term(e, super::linsolve::sum(parts));
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentT {
            type Output = LaurentT;
            fn $m(self, rhs: LaurentT) -> LaurentT {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for LaurentT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match *e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*T")?,
                _ => write!(f, "({c})*T^{e}")?,
            }
        }
        Ok(())
    }
}

/// Genus-`g` free-energy data: `log_coeff * log(1/T) + laurent`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenusBlock {
    pub log_coeff: BigRat,
    pub laurent: LaurentT,
}

impl GenusBlock {
    pub fn pure(laurent: LaurentT) -> Self {
        Self {
            log_coeff: BigRat::zero(),
            laurent,
        }
    }

    /// `d/dx`; since `d/dx log(1/T) = T^-2` the result is a Laurent polynomial.
    pub fn derivative(&self) -> LaurentT {
        let mut out = self.laurent.dt();
        out.add_term(-2, self.log_coeff.clone());
        out
    }

    /// `n`-th `x`-derivative evaluated at `x = 0` (`T = 1`, where the log vanishes).
    pub fn derivative_at_zero(&self, n: usize) -> BigRat {
        if n == 0 {
            return self.laurent.eval_at_one();
        }
        laurent_dt(&self.derivative(), n - 1).eval_at_one()
    }
}

impl From<LaurentT> for GenusBlock {
    fn from(laurent: LaurentT) -> Self {
        Self::pure(laurent)
    }
}

impl One for LaurentT {
    fn one() -> Self {
        LaurentT::constant(BigRat::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn t(e: i64, c: BigRat) -> LaurentT {
        LaurentT::monomial(e, c)
    }

    #[test]
    fn dt_examples() {
        let one_minus_t = LaurentT::from_terms([(0, rat(1, 1)), (1, rat(-1, 1))]);
        assert_eq!(laurent_dt(&one_minus_t, 1), t(-1, rat(1, 1)));
        assert_eq!(laurent_dt(&t(-4, rat(1, 1)), 1), t(-6, rat(4, 1)));
        assert_eq!(laurent_dt(&t(-4, rat(1, 1)), 2), t(-8, rat(24, 1)));
        assert!(laurent_dt(&LaurentT::constant(rat(3, 7)), 1).is_zero());
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let p = t(3, rat(1, 2));
        let q = &p - &p;
        assert!(q.is_zero());
        assert_eq!(q.support(), None);
    }

    #[test]
    fn log_term_derivative() {
        let h1 = GenusBlock {
            log_coeff: rat(1, 24),
            laurent: LaurentT::from_terms([(0, rat(1, 24)), (1, rat(-1, 24))]),
        };
        // H_1' = 1/(24 T^2) + 1/(24 T)
        assert_eq!(
            h1.derivative(),
            LaurentT::from_terms([(-2, rat(1, 24)), (-1, rat(1, 24))])
        );
        assert_eq!(h1.derivative_at_zero(0), rat(0, 1));
        assert_eq!(h1.derivative_at_zero(1), rat(1, 12));
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentT> {
        prop::collection::vec((-30i64..=30, -20i64..=20, 1i64..=9), 0..6)
            .prop_map(|v| LaurentT::from_terms(v.into_iter().map(|(e, n, d)| (e, rat(n, d)))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(p in arb_laurent(), q in arb_laurent(), r in arb_laurent()) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        }

        #[test]
        fn leibniz_rule(p in arb_laurent(), q in arb_laurent()) {
            let lhs = (&p * &q).dt();
            let rhs = &(&p.dt() * &q) + &(&p * &q.dt());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
