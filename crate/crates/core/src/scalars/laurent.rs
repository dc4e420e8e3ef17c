use super::field::Field;

/// Dense Laurent polynomial `Σ coeffs[k]·v^(low+k)`.
///
/// Normal form: no leading or trailing zero coefficients; the zero
/// polynomial has an empty coefficient vector and `low == 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent<C> {
    low: i64,
    coeffs: Vec<C>,
}

impl<C: Field> Laurent<C> {
    pub fn zero() -> Self {
        Laurent { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    pub fn monomial(c: C, exp: i64) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Laurent { low: exp, coeffs: vec![c] }
        }
    }

    pub fn from_coeffs(low: i64, coeffs: Vec<C>) -> Self {
        Laurent { low, coeffs }.trimmed()
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(terms: I) -> Self {
        let terms: Vec<(i64, C)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let low = terms.iter().map(|t| t.0).min().unwrap();
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![C::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - low) as usize];
            *slot = slot.plus(&c);
        }
        Self::from_coeffs(low, coeffs)
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            return Self::zero();
        }
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.low == 0 && self.coeffs.len() == 1)
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// Width of the exponent support; a polynomial's degree once `low == 0`.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, exp: i64) -> C {
        if exp < self.low || exp > self.high() {
            return C::zero();
        }
        self.coeffs[(exp - self.low) as usize].clone()
    }

    pub fn lowest_coeff(&self) -> &C {
        &self.coeffs[0]
    }

    pub fn leading_coeff(&self) -> &C {
        self.coeffs.last().expect("zero polynomial has no leading coefficient")
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &C)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Laurent { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|x| x.times(c)).collect() }
    }

    pub fn map<D: Field>(&self, f: impl Fn(i64, &C) -> D) -> Laurent<D> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| f(self.low + k as i64, c))
            .collect();
        Laurent::from_coeffs(self.low, coeffs)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, true)
    }

    fn combine(&self, rhs: &Self, subtract: bool) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if subtract { rhs.neg() } else { rhs.clone() };
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        let mut coeffs = vec![C::zero(); (high - low + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + k] = c.clone();
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(rhs.low - low) as usize + k];
            *slot = if subtract { slot.minus(c) } else { slot.plus(c) };
        }
        Laurent { low, coeffs }.trimmed()
    }

    pub fn neg(&self) -> Self {
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|c| c.negated()).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if rhs.is_monomial() {
            return self.scale(&rhs.coeffs[0]).shift(rhs.low);
        }
        if self.is_monomial() {
            return rhs.scale(&self.coeffs[0]).shift(self.low);
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in rhs.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let slot = &mut coeffs[a + b];
                *slot = slot.plus(&x.times(y));
            }
        }
        Laurent { low: self.low + rhs.low, coeffs }.trimmed()
    }

    /// Evaluates at `x`; `None` when `x = 0` and negative powers occur.
    pub fn eval(&self, x: &C) -> Option<C> {
        if self.is_zero() {
            return Some(C::zero());
        }
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        let scale = pow_field(x, self.low)?;
        Some(acc.times(&scale))
    }

    /// Splits into `v^k · P(v)` with `P` a polynomial and `P(0) ≠ 0`.
    pub fn split_monomial(&self) -> (i64, Self) {
        if self.is_zero() {
            return (0, Self::zero());
        }
        (self.low, Laurent { low: 0, coeffs: self.coeffs.clone() })
    }

    /// Monic associate of a nonzero polynomial.
    pub fn monic(&self) -> Self {
        let inv = self.leading_coeff().inverse().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Polynomial division; both operands must satisfy `low >= 0`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        debug_assert!(self.low >= 0 && divisor.low >= 0);
        if self.is_zero() || self.high() < divisor.high() {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.dense();
        let d = divisor.dense();
        let dn = d.len() - 1;
        let lead_inv = d[dn].inverse().expect("nonzero leading coefficient");
        let mut quot = vec![C::zero(); rem.len() - dn];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dn].times(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.iter().enumerate() {
                if !dj.is_zero() {
                    rem[k + j] = rem[k + j].minus(&c.times(dj));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dn);
        (Laurent::from_coeffs(0, quot), Laurent::from_coeffs(0, rem))
    }

    fn dense(&self) -> Vec<C> {
        let mut out = vec![C::zero(); self.low.max(0) as usize];
        out.extend(self.coeffs.iter().cloned());
        out
    }

    /// Exact quotient of Laurent polynomials, if the division leaves no
    /// remainder in the Laurent ring.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (ka, a) = self.split_monomial();
        let (kb, b) = divisor.split_monomial();
        if b.high() > a.high() {
            return None;
        }
        let (q, r) = a.div_rem(&b);
        if r.is_zero() {
            Some(q.shift(ka - kb))
        } else {
            None
        }
    }

    /// Monic gcd of two polynomials (`low >= 0`).
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        if x.is_zero() {
            x
        } else {
            x.monic()
        }
    }
}

/// `x^k` for a possibly negative `k`.
pub fn pow_field<C: Field>(x: &C, k: i64) -> Option<C> {
    let base = if k < 0 { x.inverse()? } else { x.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = C::one();
    let mut sq = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.times(&sq);
        }
        e >>= 1;
        if e > 0 {
            sq = sq.times(&sq);
        }
    }
    Some(acc)
}
