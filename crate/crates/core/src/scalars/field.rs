use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Minimal exact-field interface shared by rationals, Gaussian rationals and
/// rational functions. Methods take references so big-number coefficients
/// are not cloned on every operation.
pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn quotient(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self.times(&inv))
    }

    /// A nonzero multiplier that makes `self` integral, for fields of
    /// fractions; one elsewhere.
    fn denominator(&self) -> Self {
        Self::one()
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    // Integer operands skip the gcd normalization that `Ratio` performs.
    fn plus(&self, rhs: &Self) -> Self {
        if self.is_integer() && rhs.is_integer() {
            return BigRational::from_integer(self.numer() + rhs.numer());
        }
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        if self.is_integer() && rhs.is_integer() {
            return BigRational::from_integer(self.numer() - rhs.numer());
        }
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.is_integer() && rhs.is_integer() {
            return BigRational::from_integer(self.numer() * rhs.numer());
        }
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Element `re + im·i` of the Gaussian rationals ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gaussian {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gaussian { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Gaussian { re, im: <BigRational as Zero>::zero() }
    }

    pub fn i() -> Self {
        Gaussian::new(int(0), int(1))
    }

    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }

    pub fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -&self.im)
    }

    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl From<BigRational> for Gaussian {
    fn from(re: BigRational) -> Self {
        Gaussian::real(re)
    }
}

impl Field for Gaussian {
    fn zero() -> Self {
        Gaussian::real(int(0))
    }
    fn one() -> Self {
        Gaussian::real(int(1))
    }
    fn from_i64(n: i64) -> Self {
        Gaussian::real(int(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn plus(&self, rhs: &Self) -> Self {
        Gaussian::new(self.re.plus(&rhs.re), self.im.plus(&rhs.im))
    }
    fn minus(&self, rhs: &Self) -> Self {
        Gaussian::new(self.re.minus(&rhs.re), self.im.minus(&rhs.im))
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.is_real() && rhs.is_real() {
            return Gaussian::real(self.re.times(&rhs.re));
        }
        Gaussian::new(
            self.re.times(&rhs.re).minus(&self.im.times(&rhs.im)),
            self.re.times(&rhs.im).plus(&self.im.times(&rhs.re)),
        )
    }
    fn negated(&self) -> Self {
        Gaussian::new(-&self.re, -&self.im)
    }
    fn inverse(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        if self.is_real() {
            return Some(Gaussian::real(self.re.recip()));
        }
        let n = self.norm();
        Some(Gaussian::new(&self.re / &n, -&self.im / &n))
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: Gaussian) -> Gaussian {
        self.plus(&rhs)
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: Gaussian) -> Gaussian {
        self.minus(&rhs)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: Gaussian) -> Gaussian {
        self.times(&rhs)
    }
}

impl Div for Gaussian {
    type Output = Gaussian;
    fn div(self, rhs: Gaussian) -> Gaussian {
        self.quotient(&rhs).expect("division by zero")
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        self.negated()
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            return write!(f, "{}", self.re);
        }
        if Zero::is_zero(&self.re) {
            return fmt_imag(f, &self.im);
        }
        write!(f, "({} ", self.re)?;
        if self.im.is_negative() {
            write!(f, "- ")?;
            fmt_imag(f, &-&self.im)?;
        } else {
            write!(f, "+ ")?;
            fmt_imag(f, &self.im)?;
        }
        write!(f, ")")
    }
}

fn fmt_imag(f: &mut fmt::Formatter<'_>, im: &BigRational) -> fmt::Result {
    if One::is_one(im) {
        write!(f, "i")
    } else if One::is_one(&-im) {
        write!(f, "-i")
    } else {
        write!(f, "{}*i", im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_inverse_roundtrip() {
        let z = Gaussian::new(rational(3, 2), rational(-1, 3));
        let w = z.inverse().unwrap();
        assert_eq!(z.times(&w), <Gaussian as Field>::one());
        assert!(<Gaussian as Field>::zero().inverse().is_none());
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = Gaussian::i();
        assert_eq!(i.times(&i), Gaussian::from_i64(-1));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Gaussian::i().to_string(), "i");
        assert_eq!(Gaussian::new(int(1), int(-2)).to_string(), "(1 - 2*i)");
        assert_eq!(Gaussian::real(rational(-3, 4)).to_string(), "-3/4");
    }
}
