use super::field::Field;
use super::laurent::Laurent;

/// Reduced fraction `num / den` of Laurent polynomials.
///
/// Canonical form: `den` is a genuine polynomial with `den(0) = 1`, and
/// `num`, `den` share no nonconstant polynomial factor. Any power of `v`
/// lives in the numerator. Two canonical fractions are equal as rational
/// functions iff they are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc<C> {
    num: Laurent<C>,
    den: Laurent<C>,
}

impl<C: Field> RatFunc<C> {
    pub fn zero() -> Self {
        RatFunc { num: Laurent::zero(), den: Laurent::one() }
    }

    pub fn one() -> Self {
        Self::from_laurent(Laurent::one())
    }

    pub fn from_laurent(num: Laurent<C>) -> Self {
        RatFunc { num, den: Laurent::one() }
    }

    /// Wraps parts already in canonical form.
    pub(crate) fn from_canonical(num: Laurent<C>, den: Laurent<C>) -> Self {
        RatFunc { num, den }
    }

    pub fn num(&self) -> &Laurent<C> {
        &self.num
    }

    pub fn den(&self) -> &Laurent<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Reduces an arbitrary fraction; `None` if `den` is zero.
    pub fn new(num: Laurent<C>, den: Laurent<C>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let (k, den_poly) = den.split_monomial();
        let mut num = num.shift(-k);
        let mut den = den_poly;
        if den.span() > 0 {
            let (j, num_poly) = num.split_monomial();
            let g = Laurent::gcd(&num_poly, &den);
            if g.span() > 0 {
                num = num_poly.exact_div(&g).expect("gcd divides numerator").shift(j);
                den = den.exact_div(&g).expect("gcd divides denominator");
            }
        }
        let c = den.lowest_coeff().clone();
        if !c.is_one() {
            let inv = c.inverse().expect("nonzero constant term");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Some(RatFunc { num, den })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_laurent() && rhs.is_laurent() {
            return Self::from_laurent(self.num.add(&rhs.num));
        }
        if self.den == rhs.den {
            return Self::new(self.num.add(&rhs.num), self.den.clone()).unwrap();
        }
        Self::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
        .unwrap()
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.is_laurent() && rhs.is_laurent() {
            return Self::from_laurent(self.num.mul(&rhs.num));
        }
        Self::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).unwrap()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_laurent() && rhs.is_laurent() {
            if let Some(q) = self.num.exact_div(&rhs.num) {
                return Some(Self::from_laurent(q));
            }
        }
        Self::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Coefficient-wise map applied to numerator and denominator, followed
    /// by re-normalization.
    pub fn map<D: Field>(&self, f: impl Fn(i64, &C) -> D) -> RatFunc<D> {
        RatFunc::new(self.num.map(&f), self.den.map(&f)).expect("mapped denominator vanished")
    }

    /// `Err(den)` reports the denominator that vanishes at `x`.
    pub fn eval(&self, x: &C) -> Result<C, Laurent<C>> {
        let d = self.den.eval(x).ok_or_else(|| self.den.clone())?;
        if d.is_zero() {
            return Err(self.den.clone());
        }
        let n = self.num.eval(x).ok_or_else(|| Laurent::monomial(C::one(), -self.num.low()))?;
        Ok(n.quotient(&d).expect("nonzero denominator"))
    }
}
