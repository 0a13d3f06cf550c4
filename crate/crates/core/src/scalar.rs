//! Scalar fields: exact Gaussian rationals and complex doubles.
//!
//! Containers are generic over one [`Scalar`] kind, so exact and float values
//! cannot mix inside a form or matrix. Conversion is explicit
//! ([`Scalar::to_c64`]).

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Complex64 = Complex<f64>;

/// A field of complex numbers used as form and matrix coefficients.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
{
    /// `true` for exact arithmetic.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    /// `√−1`.
    fn imag_unit() -> Self;
    fn from_i64(v: i64) -> Self;
    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn to_c64(&self) -> Complex64;
    /// Imaginary part vanishes.
    fn is_real(&self) -> bool;
    /// Real and strictly positive.
    fn is_positive_real(&self) -> bool;

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    fn add_ref(&mut self, other: &Self) {
        *self += other.clone();
    }
}

/// Gaussian rational `re + √−1·im` with arbitrary-precision parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gaussian(Complex<BigRational>);

impl Gaussian {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gaussian(Complex::new(re, im))
    }

    pub fn real(re: BigRational) -> Self {
        Gaussian(Complex::new(re, BigRational::zero()))
    }

    pub fn int(v: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn complex(re: (i64, i64), im: (i64, i64)) -> Self {
        Gaussian::new(
            BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
            BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
        )
    }

    pub fn i() -> Self {
        Gaussian::new(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> &BigRational {
        &self.0.re
    }

    pub fn im(&self) -> &BigRational {
        &self.0.im
    }

    /// The real part, when the imaginary part is zero.
    pub fn as_real(&self) -> Option<&BigRational> {
        self.0.im.is_zero().then_some(&self.0.re)
    }

    pub fn norm_sqr(&self) -> BigRational {
        self.0.norm_sqr()
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Gaussian::one();
        for _ in 0..exp {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

/// `p/q` text form of a rational (`p` alone when `q = 1`).
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p`, or `p/q` into a reduced rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => BigInt::from_str(s).ok().map(BigRational::from_integer),
    }
}

impl fmt::Debug for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (&self.0.re, &self.0.im);
        if im.is_zero() {
            return f.write_str(&format_rational(re));
        }
        let im_abs = format_rational(&im.abs());
        let sign = if im.is_negative() { "-" } else { "+" };
        if re.is_zero() {
            let lead = if im.is_negative() { "-" } else { "" };
            write!(f, "{lead}{im_abs}i")
        } else {
            write!(f, "{}{sign}{im_abs}i", format_rational(re))
        }
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: Gaussian) -> Gaussian {
        Gaussian(self.0 + rhs.0)
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: Gaussian) -> Gaussian {
        Gaussian(self.0 - rhs.0)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: Gaussian) -> Gaussian {
        Gaussian(self.0 * rhs.0)
    }
}

impl Div for Gaussian {
    type Output = Gaussian;
    /// Panics on division by zero; use [`Scalar::inv`] to test first.
    fn div(self, rhs: Gaussian) -> Gaussian {
        assert!(!Scalar::is_zero(&rhs), "division by zero");
        Gaussian(self.0 / rhs.0)
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian(-self.0)
    }
}

impl AddAssign for Gaussian {
    fn add_assign(&mut self, rhs: Gaussian) {
        self.0.re += rhs.0.re;
        self.0.im += rhs.0.im;
    }
}

impl From<i64> for Gaussian {
    fn from(v: i64) -> Self {
        Gaussian::int(v)
    }
}

impl From<BigRational> for Gaussian {
    fn from(v: BigRational) -> Self {
        Gaussian::real(v)
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Scalar for Gaussian {
    const EXACT: bool = true;

    fn zero() -> Self {
        Gaussian(Complex::new(BigRational::zero(), BigRational::zero()))
    }
    fn one() -> Self {
        Gaussian::int(1)
    }
    fn imag_unit() -> Self {
        Gaussian::i()
    }
    fn from_i64(v: i64) -> Self {
        Gaussian::int(v)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Gaussian::frac(num, den)
    }
    fn is_zero(&self) -> bool {
        self.0.re.is_zero() && self.0.im.is_zero()
    }
    fn conj(&self) -> Self {
        Gaussian(self.0.conj())
    }
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(Gaussian(self.0.inv()))
        }
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.0.re), rational_to_f64(&self.0.im))
    }
    fn is_real(&self) -> bool {
        self.0.im.is_zero()
    }
    fn is_positive_real(&self) -> bool {
        self.0.im.is_zero() && self.0.re.is_positive()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        Gaussian(&self.0 * &other.0)
    }
    fn add_ref(&mut self, other: &Self) {
        self.0.re += &other.0.re;
        self.0.im += &other.0.im;
    }
}

/// Relative tolerance used by float-mode predicates.
pub const FLOAT_TOL: f64 = 1e-12;

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(Complex::inv(self))
        }
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn is_real(&self) -> bool {
        self.im.abs() <= FLOAT_TOL * self.re.abs().max(1.0)
    }
    fn is_positive_real(&self) -> bool {
        self.is_real() && self.re > 0.0
    }
}
