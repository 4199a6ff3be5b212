use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::BigRat;

/// Exact Gaussian rational `re + im*i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GaussianRat {
    pub re: BigRat,
    pub im: BigRat,
}

impl GaussianRat {
    pub fn new(re: BigRat, im: BigRat) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRat) -> Self {
        Self {
            re,
            im: BigRat::zero(),
        }
    }

    /// `i^k`.
    pub fn i_pow(k: usize) -> Self {
        let (re, im) = match k % 4 {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        };
        Self::new(
            BigRat::from_integer(re.into()),
            BigRat::from_integer(im.into()),
        )
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn scale(&self, s: &BigRat) -> Self {
        Self::new(&self.re * s, &self.im * s)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Add for &GaussianRat {
    type Output = GaussianRat;
    fn add(self, rhs: &GaussianRat) -> GaussianRat {
        GaussianRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRat {
    type Output = GaussianRat;
    fn sub(self, rhs: &GaussianRat) -> GaussianRat {
        GaussianRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRat {
    type Output = GaussianRat;
    fn mul(self, rhs: &GaussianRat) -> GaussianRat {
        GaussianRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRat {
    type Output = GaussianRat;
    fn neg(self) -> GaussianRat {
        GaussianRat::new(-self.re.clone(), -self.im.clone())
    }
}

impl Zero for GaussianRat {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        GaussianRat::is_zero(self)
    }
}

impl Add for GaussianRat {
    type Output = GaussianRat;
    fn add(self, rhs: GaussianRat) -> GaussianRat {
        &self + &rhs
    }
}

impl One for GaussianRat {
    fn one() -> Self {
        Self::real(BigRat::one())
    }
}

impl Mul for GaussianRat {
    type Output = GaussianRat;
    fn mul(self, rhs: GaussianRat) -> GaussianRat {
        &self * &rhs
    }
}

impl fmt::Display for GaussianRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + ({})i", self.re, self.im)
        }
    }
}
