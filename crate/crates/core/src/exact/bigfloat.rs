use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::BigRat;

pub const DEFAULT_PRECISION: u32 = 320;
const MIN_PRECISION: u32 = 64;

/// Binary floating-point number `mantissa * 2^exponent` carrying its precision.
///
/// Every constructor rounds to nearest (ties to even) at `precision` bits, so
/// conversion from an exact rational is correctly rounded. The mantissa is
/// kept odd (or zero) which makes the representation canonical.
#[derive(Clone, Debug)]
pub struct BigFloat {
    mantissa: BigInt,
    exponent: i64,
    precision: u32,
}

impl BigFloat {
    pub fn zero(precision: u32) -> Self {
        Self {
            mantissa: BigInt::zero(),
            exponent: 0,
            precision: precision.max(MIN_PRECISION),
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn from_i64(v: i64, precision: u32) -> Self {
        Self::round(BigInt::from(v), &BigInt::one(), 0, precision)
    }

    pub fn from_rat(q: &BigRat, precision: u32) -> Self {
        Self::round(q.numer().clone(), q.denom(), 0, precision)
    }

    /// Exact value as a rational.
    pub fn to_rat(&self) -> BigRat {
        let m = BigRat::from_integer(self.mantissa.clone());
        if self.exponent >= 0 {
            m * BigRat::from_integer(BigInt::one() << self.exponent as usize)
        } else {
            m / BigRat::from_integer(BigInt::one() << (-self.exponent) as usize)
        }
    }

    pub fn with_precision(&self, precision: u32) -> Self {
        Self::round(
            self.mantissa.clone(),
            &BigInt::one(),
            self.exponent,
            precision,
        )
    }

    /// Rounds `num / den * 2^exp2` (den > 0) to `precision` bits.
    fn round(num: BigInt, den: &BigInt, exp2: i64, precision: u32) -> Self {
        let precision = precision.max(MIN_PRECISION);
        if num.is_zero() {
            return Self::zero(precision);
        }
        let negative = num.sign() == Sign::Minus;
        let a = num.abs();
        let p = precision as i64;
        let mut shift = p - (a.bits() as i64 - den.bits() as i64);
        let (mut q, r) = loop {
            let (n, d) = if shift >= 0 {
                (&a << shift as usize, den.clone())
            } else {
                (a.clone(), den << (-shift) as usize)
            };
            let (q, r) = n.div_rem(&d);
            if q.bits() as i64 > p {
                shift -= 1;
                continue;
            }
            if (q.bits() as i64) < p {
                shift += 1;
                continue;
            }
            let twice = &r << 1usize;
            break (q, twice.cmp(&d));
        };
        let round_up = match r {
            Ordering::Greater => true,
            Ordering::Equal => q.is_odd(),
            Ordering::Less => false,
        };
        if round_up {
            q += 1u32;
        }
        let mut exponent = exp2 - shift;
        let tz = q.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            q >>= tz as usize;
            exponent += tz as i64;
        }
        Self {
            mantissa: if negative { -q } else { q },
            exponent,
            precision,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            mantissa: self.mantissa.abs(),
            ..self.clone()
        }
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn powi(&self, n: u64) -> Self {
        let work = self.precision + 32;
        let mut base = self.with_precision(work);
        let mut acc = Self::from_i64(1, work);
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc.with_precision(self.precision)
    }

    /// Square root of a nonnegative value, `None` for negative input.
    pub fn sqrt(&self) -> Option<Self> {
        match self.signum() {
            -1 => return None,
            0 => return Some(self.clone()),
            _ => {}
        }
        let work = self.precision as i64 + 32;
        // m * 2^e with e even and m holding about 2*work bits
        let mut shift = 2 * work - self.mantissa.bits() as i64;
        if (self.exponent - shift) % 2 != 0 {
            shift += 1;
        }
        let m = if shift >= 0 {
            &self.mantissa << shift as usize
        } else {
            &self.mantissa >> (-shift) as usize
        };
        let root = num_integer::Roots::sqrt(&m);
        let exact = &root * &root == m;
        let mantissa = if exact { root } else { (root << 1usize) + 1u32 };
        let extra = if exact { 0 } else { 1 };
        Some(Self::round(
            mantissa,
            &BigInt::one(),
            (self.exponent - shift) / 2 - extra,
            self.precision,
        ))
    }

    /// pi correctly computed to `precision` bits (Machin's formula), cached.
    pub fn pi(precision: u32) -> Self {
        static CACHE: OnceLock<Mutex<HashMap<u32, BigFloat>>> = OnceLock::new();
        let precision = precision.max(MIN_PRECISION);
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(v) = cache.lock().unwrap().get(&precision) {
            return v.clone();
        }
        let work = precision as usize + 64;
        let one = BigInt::one() << work;
        let arctan_inv = |x: u64| -> BigInt {
            let x2 = BigInt::from(x * x);
            let mut power = &one / BigInt::from(x);
            let mut acc = BigInt::zero();
            let mut k = 0u64;
            while !power.is_zero() {
                let term = &power / BigInt::from(2 * k + 1);
                if k.is_multiple_of(2) {
                    acc += term;
                } else {
                    acc -= term;
                }
                power /= &x2;
                k += 1;
            }
            acc
        };
        let fixed = arctan_inv(5) * 16 - arctan_inv(239) * 4;
        let v = Self::round(fixed, &BigInt::one(), -(work as i64), precision);
        cache.lock().unwrap().insert(precision, v.clone());
        v
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits() as i64;
        let drop = (bits - 60).max(0);
        let m = (&self.mantissa >> drop as usize)
            .to_f64()
            .unwrap_or(f64::NAN);
        let e = self.exponent + drop;
        m * 2f64.powi(e.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    /// Scientific notation with `digits` significant decimal digits.
    pub fn to_sci_string(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let digits = digits.max(1);
        let q = self.to_rat();
        let negative = q.is_negative();
        let q = q.abs();
        // estimate the decimal exponent, then correct it
        let mut e10 = ((self.mantissa.bits() as f64 + self.exponent as f64)
            * std::f64::consts::LOG10_2)
            .floor() as i64;
        let scaled_int = |e10: i64| -> BigInt {
            let s = digits as i64 - 1 - e10;
            let scaled = &q * super::ipow(10, s);
            scaled.round().to_integer()
        };
        let mut m = scaled_int(e10);
        let limit = num_traits::pow(BigInt::from(10), digits);
        let lower = num_traits::pow(BigInt::from(10), digits - 1);
        for _ in 0..4 {
            if m >= limit {
                e10 += 1;
            } else if m < lower {
                e10 -= 1;
            } else {
                break;
            }
            m = scaled_int(e10);
        }
        if m >= limit {
            m /= 10;
            e10 += 1;
        }
        let s = m.to_string();
        let (head, tail) = s.split_at(1);
        let sign = if negative { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}e{e10}")
        } else {
            format!("{sign}{head}.{tail}e{e10}")
        }
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.mantissa == other.mantissa && (self.is_zero() || self.exponent == other.exponent)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.to_rat().cmp(&other.to_rat()))
    }
}

fn combine(a: &BigFloat, b: &BigFloat, f: impl Fn(BigInt, BigInt) -> BigInt) -> BigFloat {
    // align to the smaller exponent; the sum is exact before rounding
    let e = a.exponent.min(b.exponent);
    let ma = &a.mantissa << (a.exponent - e) as usize;
    let mb = &b.mantissa << (b.exponent - e) as usize;
    BigFloat::round(f(ma, mb), &BigInt::one(), e, a.precision.max(b.precision))
}

impl Add for &BigFloat {
    type Output = BigFloat;
    fn add(self, rhs: &BigFloat) -> BigFloat {
        combine(self, rhs, |x, y| x + y)
    }
}

impl Sub for &BigFloat {
    type Output = BigFloat;
    fn sub(self, rhs: &BigFloat) -> BigFloat {
        combine(self, rhs, |x, y| x - y)
    }
}

impl Mul for &BigFloat {
    type Output = BigFloat;
    fn mul(self, rhs: &BigFloat) -> BigFloat {
        BigFloat::round(
            &self.mantissa * &rhs.mantissa,
            &BigInt::one(),
            self.exponent + rhs.exponent,
            self.precision.max(rhs.precision),
        )
    }
}

impl Div for &BigFloat {
    type Output = BigFloat;
    fn div(self, rhs: &BigFloat) -> BigFloat {
        assert!(!rhs.is_zero(), "BigFloat division by zero");
        let num = if rhs.mantissa.is_negative() {
            -self.mantissa.clone()
        } else {
            self.mantissa.clone()
        };
        BigFloat::round(
            num,
            &rhs.mantissa.abs(),
            self.exponent - rhs.exponent,
            self.precision.max(rhs.precision),
        )
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat {
            mantissa: -self.mantissa.clone(),
            ..self.clone()
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        f.write_str(&self.to_sci_string(digits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{pow2, rat};
    use proptest::prelude::*;

    #[test]
    fn pi_digits() {
        let pi = BigFloat::pi(256);
        assert_eq!(
            pi.to_sci_string(50),
            "3.1415926535897932384626433832795028841971693993751e0"
        );
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn exact_small_values() {
        assert_eq!(BigFloat::from_rat(&rat(3, 8), 64).to_rat(), rat(3, 8));
        assert_eq!(BigFloat::from_i64(-7, 64).to_rat(), rat(-7, 1));
        assert_eq!(
            BigFloat::from_rat(&rat(1, 3), 64).to_sci_string(5),
            "3.3333e-1"
        );
        assert_eq!(
            BigFloat::from_rat(&rat(-25, 1), 64).to_sci_string(3),
            "-2.50e1"
        );
    }

    #[test]
    fn square_roots() {
        assert_eq!(
            BigFloat::from_i64(9, 64).sqrt().unwrap().to_rat(),
            rat(3, 1)
        );
        assert_eq!(
            BigFloat::from_rat(&rat(1, 4), 64).sqrt().unwrap().to_rat(),
            rat(1, 2)
        );
        assert!(BigFloat::from_i64(-1, 64).sqrt().is_none());
        let r = BigFloat::from_i64(2, 200).sqrt().unwrap();
        let err = (&(&r * &r) - &BigFloat::from_i64(2, 200)).abs();
        assert!(err < BigFloat::from_rat(&pow2(-195), 200));
    }

    #[test]
    fn ties_round_to_even() {
        // 2^64 + 1 needs 65 bits; at 64 bits it is a tie between 2^64 and 2^64 + 2
        let q = BigRat::from_integer((BigInt::one() << 64usize) + 1);
        assert_eq!(BigFloat::from_rat(&q, 64).to_rat(), pow2(64));
        let q = BigRat::from_integer((BigInt::one() << 64usize) + 3);
        assert_eq!(BigFloat::from_rat(&q, 64).to_rat(), pow2(64) + rat(4, 1));
    }

    #[test]
    fn arithmetic_matches_rationals() {
        let a = BigFloat::from_rat(&rat(1, 7), 128);
        let b = BigFloat::from_rat(&rat(-2, 9), 128);
        for (got, want) in [
            (&a + &b, a.to_rat() + b.to_rat()),
            (&a - &b, a.to_rat() - b.to_rat()),
            (&a * &b, a.to_rat() * b.to_rat()),
            (&a / &b, a.to_rat() / b.to_rat()),
        ] {
            let err = (got.to_rat() - &want).abs();
            assert!(err <= want.abs() * pow2(-127));
        }
    }

    #[test]
    fn powi_relative_error() {
        let pi = BigFloat::pi(320);
        let p = pi.powi(400);
        let reference = pi.to_rat().pow(400);
        let rel = ((p.to_rat() - &reference) / &reference).abs();
        assert!(rel < pow2(-318));
    }

    proptest! {
        #[test]
        fn round_trip_within_half_ulp(n in -1_000_000_000i64..1_000_000_000, d in 1i64..1_000_000_000) {
            prop_assume!(n != 0);
            let q = rat(n, d) * rat(d, 1).pow(7) / rat(3, 1).pow(40);
            let f = BigFloat::from_rat(&q, 256);
            let err = (f.to_rat() - &q).abs();
            prop_assert!(err < q.abs() * pow2(-250));
        }
    }
}
