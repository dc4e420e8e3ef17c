//! Exact arithmetic in the deformation parameter `v = q^{1/2}`.
//!
//! A [`Scalar`] is a rational function in `v` with rational coefficients,
//! or with Gaussian-rational coefficients once `i` has been adjoined. The
//! representation is canonical, so structural equality is mathematical
//! equality.

mod field;
mod laurent;
mod parse;
mod ratfunc;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

pub use field::{int, rational, Field, Gaussian};
pub use laurent::{pow_field, Laurent};
pub use ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("exponent {0} is not a half-integer")]
    NotHalfInteger(BigRational),
    #[error("pole at v = {point}: denominator {den} vanishes")]
    Pole { point: String, den: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("value {0} is not rational")]
    NotRational(String),
    #[error("bracket exponent eps must be positive, got {0}")]
    BadEps(i64),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Canonical rational function in `v`.
///
/// The `G` variant is used only when some coefficient has a nonzero
/// imaginary part; every operation demotes back to `Q` when possible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(RatFunc<BigRational>),
    G(RatFunc<Gaussian>),
}

fn promote(r: &RatFunc<BigRational>) -> RatFunc<Gaussian> {
    let lift = |p: &Laurent<BigRational>| p.map(|_, c| Gaussian::real(c.clone()));
    RatFunc::from_canonical(lift(r.num()), lift(r.den()))
}

fn demote(r: RatFunc<Gaussian>) -> Scalar {
    let real = r.num().terms().chain(r.den().terms()).all(|(_, c)| c.is_real());
    if !real {
        return Scalar::G(r);
    }
    let drop = |p: &Laurent<Gaussian>| p.map(|_, c| c.re.clone());
    Scalar::Q(RatFunc::from_canonical(drop(r.num()), drop(r.den())))
}

impl Scalar {
    pub fn from_int(n: i64) -> Self {
        Scalar::Q(RatFunc::from_laurent(Laurent::monomial(int(n), 0)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Q(RatFunc::from_laurent(Laurent::monomial(r, 0)))
    }

    pub fn from_gaussian(z: Gaussian) -> Self {
        demote(RatFunc::from_laurent(Laurent::monomial(z, 0)))
    }

    /// The imaginary unit as a constant.
    pub fn i() -> Self {
        Self::from_gaussian(Gaussian::i())
    }

    /// The formal parameter `v`.
    pub fn v() -> Self {
        Self::v_pow(1)
    }

    /// `v^k`.
    pub fn v_pow(k: i64) -> Self {
        Scalar::Q(RatFunc::from_laurent(Laurent::monomial(int(1), k)))
    }

    /// `q^a = v^{2a}`; `a` must be a half-integer.
    pub fn qpow(a: &BigRational) -> Result<Self, ScalarError> {
        Ok(Self::v_pow(twice(a)?))
    }

    /// `(q^a - q^-a) / (q^eps - q^-eps)` at the generic parameter.
    pub fn qbracket(a: &BigRational, eps: i64) -> Result<Self, ScalarError> {
        QParam::generic().qbracket(a, eps)
    }

    /// Builds `Σ c_k v^k` from rational coefficients.
    pub fn laurent(terms: &[(i64, BigRational)]) -> Self {
        Scalar::Q(RatFunc::from_laurent(Laurent::from_terms(terms.iter().cloned())))
    }

    pub fn has_i(&self) -> bool {
        matches!(self, Scalar::G(_))
    }

    pub fn is_laurent(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_laurent(),
            Scalar::G(r) => r.is_laurent(),
        }
    }

    /// The constant value, if this scalar does not depend on `v`.
    pub fn as_constant(&self) -> Option<Gaussian> {
        match self {
            Scalar::Q(r) if r.is_laurent() && r.num().is_constant() => {
                Some(Gaussian::real(r.num().coeff(0)))
            }
            Scalar::G(r) if r.is_laurent() && r.num().is_constant() => Some(r.num().coeff(0)),
            _ => None,
        }
    }

    pub fn as_rational_constant(&self) -> Option<BigRational> {
        self.as_constant().filter(Gaussian::is_real).map(|z| z.re)
    }

    pub fn gaussian(&self) -> RatFunc<Gaussian> {
        match self {
            Scalar::Q(r) => promote(r),
            Scalar::G(r) => r.clone(),
        }
    }

    fn binary(
        &self,
        rhs: &Self,
        fq: impl Fn(&RatFunc<BigRational>, &RatFunc<BigRational>) -> Option<RatFunc<BigRational>>,
        fg: impl Fn(&RatFunc<Gaussian>, &RatFunc<Gaussian>) -> Option<RatFunc<Gaussian>>,
    ) -> Option<Self> {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => fq(a, b).map(Scalar::Q),
            _ => fg(&self.gaussian(), &rhs.gaussian()).map(demote),
        }
    }

    /// `self^k` for any integer `k`; `None` for `0^k` with `k < 0`.
    pub fn powi(&self, k: i64) -> Option<Self> {
        pow_field(self, k)
    }

    /// Evaluates at `v = v0`.
    pub fn evaluate(&self, v0: &Gaussian) -> Result<Gaussian, ScalarError> {
        let pole = |den: String| ScalarError::Pole { point: v0.to_string(), den };
        match self {
            Scalar::Q(r) if v0.is_real() => r
                .eval(&v0.re)
                .map(Gaussian::real)
                .map_err(|d| pole(render_laurent(&d))),
            _ => self.gaussian().eval(v0).map_err(|d| pole(render_laurent(&d))),
        }
    }

    /// Evaluates at a rational point and insists on a rational value.
    pub fn eval_rational(&self, v0: &BigRational) -> Result<BigRational, ScalarError> {
        let z = self.evaluate(&Gaussian::real(v0.clone()))?;
        if z.is_real() {
            Ok(z.re)
        } else {
            Err(ScalarError::NotRational(z.to_string()))
        }
    }

    /// Value at `v = 1`.
    pub fn classical_limit(&self) -> Result<BigRational, ScalarError> {
        self.eval_rational(&int(1))
    }

    /// Substitutes `v -> i·v`.
    pub fn substitute_iv(&self) -> Self {
        let twist = |k: i64, c: &Gaussian| c.times(&i_pow(k));
        demote(self.gaussian().map(twist))
    }
}

fn i_pow(k: i64) -> Gaussian {
    match k.rem_euclid(4) {
        0 => Gaussian::from_i64(1),
        1 => Gaussian::i(),
        2 => Gaussian::from_i64(-1),
        _ => Gaussian::i().negated(),
    }
}

/// `2a` as an integer, or an error when `a` is not a half-integer.
pub fn twice(a: &BigRational) -> Result<i64, ScalarError> {
    let t = a * BigRational::from_integer(BigInt::from(2));
    if !t.is_integer() {
        return Err(ScalarError::NotHalfInteger(a.clone()));
    }
    t.to_integer().to_i64().ok_or_else(|| ScalarError::NotHalfInteger(a.clone()))
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::Q(RatFunc::zero())
    }
    fn one() -> Self {
        Scalar::Q(RatFunc::one())
    }
    fn from_i64(n: i64) -> Self {
        Scalar::from_int(n)
    }
    fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::G(r) => r.is_zero(),
        }
    }
    fn is_one(&self) -> bool {
        matches!(self, Scalar::Q(r) if r.is_laurent() && r.num().is_one())
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.binary(rhs, |a, b| Some(a.add(b)), |a, b| Some(a.add(b))).unwrap()
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.binary(rhs, |a, b| Some(a.sub(b)), |a, b| Some(a.sub(b))).unwrap()
    }
    fn times(&self, rhs: &Self) -> Self {
        self.binary(rhs, |a, b| Some(a.mul(b)), |a, b| Some(a.mul(b))).unwrap()
    }
    fn negated(&self) -> Self {
        match self {
            Scalar::Q(r) => Scalar::Q(r.neg()),
            Scalar::G(r) => Scalar::G(r.neg()),
        }
    }
    fn inverse(&self) -> Option<Self> {
        match self {
            Scalar::Q(r) => r.inverse().map(Scalar::Q),
            Scalar::G(r) => r.inverse().map(demote),
        }
    }
    fn quotient(&self, rhs: &Self) -> Option<Self> {
        self.binary(rhs, |a, b| a.div(b), |a, b| a.div(b))
    }
    fn denominator(&self) -> Self {
        match self {
            Scalar::Q(r) => Scalar::Q(RatFunc::from_laurent(r.den().clone())),
            Scalar::G(r) => demote(RatFunc::from_laurent(r.den().clone())),
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        <Scalar as Field>::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.plus(b));
forward_binop!(Sub, sub, |a, b| a.minus(b));
forward_binop!(Mul, mul, |a, b| a.times(b));
forward_binop!(Div, div, |a, b| a.quotient(b).expect("division by zero scalar"));

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negated()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negated()
    }
}

/// The quantum parameter a module or relation check is built over.
///
/// `Formal { half }` fixes `q^{1/2} = half`: `v` for the generic parameter,
/// `i·v` for `q = -v^2`, or a rational constant for a point evaluation.
/// `Classical` is the `q -> 1` limit: powers of `q` become 1 and brackets
/// become `a / eps`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QParam {
    Formal { half: Scalar },
    Classical,
}

impl QParam {
    pub fn generic() -> Self {
        QParam::Formal { half: Scalar::v() }
    }

    /// `q^{1/2} = i·v`, so that `q = -v^2`.
    pub fn imaginary() -> Self {
        QParam::Formal { half: Scalar::i() * Scalar::v() }
    }

    pub fn at_point(v0: BigRational) -> Self {
        QParam::Formal { half: Scalar::from_rational(v0) }
    }

    pub fn classical() -> Self {
        QParam::Classical
    }

    pub fn is_classical(&self) -> bool {
        matches!(self, QParam::Classical)
    }

    /// `q^a` for half-integer `a`.
    pub fn qpow(&self, a: &BigRational) -> Result<Scalar, ScalarError> {
        let k = twice(a)?;
        Ok(self.half_pow(k))
    }

    /// `(q^{1/2})^k`.
    pub fn half_pow(&self, k: i64) -> Scalar {
        match self {
            QParam::Classical => Scalar::from_int(1),
            QParam::Formal { half } => half.powi(k).expect("q^{1/2} is invertible"),
        }
    }

    /// `q^eps - q^-eps`; zero in the classical limit.
    pub fn qdiff(&self, eps: i64) -> Scalar {
        self.half_pow(2 * eps) - self.half_pow(-2 * eps)
    }

    /// `(q^a - q^-a) / (q^eps - q^-eps)`.
    pub fn qbracket(&self, a: &BigRational, eps: i64) -> Result<Scalar, ScalarError> {
        if eps <= 0 {
            return Err(ScalarError::BadEps(eps));
        }
        let k = twice(a)?;
        match self {
            QParam::Classical => Ok(Scalar::from_rational(a / int(eps))),
            QParam::Formal { .. } => {
                let num = self.half_pow(k) - self.half_pow(-k);
                num.quotient(&self.qdiff(eps)).ok_or(ScalarError::DivisionByZero)
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = match self {
            Scalar::Q(r) => (render_laurent(r.num()), render_laurent(r.den())),
            Scalar::G(r) => (render_laurent(r.num()), render_laurent(r.den())),
        };
        if den == "1" {
            return write!(f, "{num}");
        }
        let simple = !num.contains(' ') && !num.starts_with('-');
        if simple {
            write!(f, "{num}/({den})")
        } else {
            write!(f, "({num})/({den})")
        }
    }
}

/// Coefficient types that can be written as a term of a Laurent polynomial.
pub trait RenderCoeff: Field + fmt::Display {
    /// Whether the coefficient should be shown with a leading minus.
    fn is_negative(&self) -> bool;
}

impl RenderCoeff for BigRational {
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl RenderCoeff for Gaussian {
    fn is_negative(&self) -> bool {
        let zero = <BigRational as Field>::zero();
        if self.is_real() {
            self.re < zero
        } else {
            self.re == zero && self.im < zero
        }
    }
}

/// Renders `Σ c_k v^k` with descending exponents, e.g. `v^2 - 3/2*v^-1`.
pub fn render_laurent<C: RenderCoeff>(p: &Laurent<C>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (k, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let mag = if neg { c.negated() } else { c.clone() };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let power = match k {
            0 => String::new(),
            1 => "v".to_string(),
            _ => format!("v^{k}"),
        };
        if power.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&power);
        } else {
            out.push_str(&format!("{mag}*{power}"));
        }
    }
    out
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn qpow_examples() {
        assert_eq!(Scalar::qpow(&int(0)).unwrap(), Scalar::from_int(1));
        assert_eq!(Scalar::qpow(&rational(1, 2)).unwrap(), Scalar::v());
        assert_eq!(Scalar::qpow(&int(-2)).unwrap(), Scalar::v_pow(-4));
        assert!(matches!(Scalar::qpow(&rational(1, 3)), Err(ScalarError::NotHalfInteger(_))));
    }

    #[test]
    fn qbracket_examples() {
        assert_eq!(Scalar::qbracket(&int(1), 1).unwrap(), Scalar::from_int(1));
        assert_eq!(Scalar::qbracket(&int(2), 1).unwrap(), s("v^2 + v^-2"));
        let half = Scalar::qbracket(&rational(1, 2), 1).unwrap();
        assert_eq!(half, s("(v - v^-1)/(v^2 - v^-2)"));
        assert_eq!(half.to_string(), "v/(v^2 + 1)");
        assert!(Scalar::qbracket(&int(2), 1).unwrap().is_laurent());
    }

    #[test]
    fn evaluation_examples() {
        let one = Gaussian::real(int(1));
        assert_eq!(s("v^2 + v^-2").evaluate(&one).unwrap(), Gaussian::real(int(2)));
        let b = Scalar::qbracket(&int(2), 1).unwrap();
        assert_eq!(b.eval_rational(&int(2)).unwrap(), rational(17, 4));
        let pole = s("1/(v - 1)").evaluate(&one);
        assert!(matches!(pole, Err(ScalarError::Pole { .. })));
    }

    #[test]
    fn classical_limits() {
        assert_eq!(Scalar::qbracket(&int(3), 1).unwrap().classical_limit().unwrap(), int(3));
        assert_eq!(Scalar::qbracket(&int(1), 2).unwrap().classical_limit().unwrap(), rational(1, 2));
        assert_eq!(Scalar::qpow(&rational(5, 2)).unwrap().classical_limit().unwrap(), int(1));
    }

    #[test]
    fn imaginary_parameter() {
        let q = QParam::imaginary();
        assert_eq!(q.qpow(&int(1)).unwrap(), -Scalar::v_pow(2));
        assert_eq!(q.qpow(&rational(1, 2)).unwrap(), s("i*v"));
        assert!(!q.qpow(&int(3)).unwrap().has_i());
        assert_eq!(s("v^3 + 2*v").substitute_iv(), s("-i*v^3 + 2*i*v"));
    }

    #[test]
    fn gaussian_values_demote() {
        let i = Scalar::i();
        assert!(i.has_i());
        assert_eq!(&i * &i, Scalar::from_int(-1));
        assert!(!(&i * &i).has_i());
    }

    #[test]
    fn rendering() {
        assert_eq!(s("v^2 - 3/2*v^-1").to_string(), "v^2 - 3/2*v^-1");
        assert_eq!(s("-v").to_string(), "-v");
        assert_eq!(s("0").to_string(), "0");
        assert_eq!(s("(1 - 2*i)*v").to_string(), "(1 - 2*i)*v");
        assert_eq!(s("1/(v + 1)").to_string(), "1/(v + 1)");
        assert_eq!(s("(v - 2)/(v + 1)").to_string(), "(v - 2)/(v + 1)");
    }

    fn arb_laurent() -> impl Strategy<Value = Scalar> {
        (-3i64..3, prop::collection::vec(-4i64..5, 1..4)).prop_map(|(low, cs)| {
            let terms: Vec<(i64, BigRational)> =
                cs.iter().enumerate().map(|(k, &c)| (low + k as i64, int(c))).collect();
            Scalar::laurent(&terms)
        })
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (arb_laurent(), arb_laurent(), any::<bool>()).prop_map(|(a, b, with_i)| {
            let base = if b.is_zero() { a } else { a / b };
            if with_i {
                base * (Scalar::from_int(1) + Scalar::i())
            } else {
                base
            }
        })
    }

    fn sample_points() -> Vec<Gaussian> {
        vec![
            Gaussian::real(rational(7, 3)),
            Gaussian::real(rational(-11, 5)),
            Gaussian::new(rational(3, 2), rational(5, 7)),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a - &a, Scalar::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inverse().unwrap(), Scalar::one());
            }
        }

        #[test]
        fn canonical_form_is_a_congruence(a in arb_scalar(), b in arb_scalar()) {
            let mut defined = 0;
            let mut agree = true;
            for p in sample_points() {
                if let (Ok(x), Ok(y)) = (a.evaluate(&p), b.evaluate(&p)) {
                    defined += 1;
                    agree &= x == y;
                }
            }
            if defined == 3 {
                prop_assert_eq!(a == b, agree);
            }
        }

        #[test]
        fn evaluation_is_multiplicative(a in arb_scalar(), b in arb_scalar()) {
            for p in sample_points() {
                if let (Ok(x), Ok(y), Ok(z)) = (a.evaluate(&p), b.evaluate(&p), (&a * &b).evaluate(&p)) {
                    prop_assert_eq!(x.times(&y), z);
                }
            }
        }

        #[test]
        fn qbracket_is_odd(twice_a in -12i64..12, eps in 1i64..3) {
            let a = rational(twice_a, 2);
            let lhs = Scalar::qbracket(&-a.clone(), eps).unwrap();
            let rhs = -Scalar::qbracket(&a, eps).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn qpow_is_additive(x in -10i64..10, y in -10i64..10) {
            let (a, b) = (rational(x, 2), rational(y, 2));
            let prod = Scalar::qpow(&a).unwrap() * Scalar::qpow(&b).unwrap();
            prop_assert_eq!(prod, Scalar::qpow(&(a + b)).unwrap());
        }

        #[test]
        fn render_parse_roundtrip(a in arb_scalar()) {
            let text = a.to_string();
            prop_assert_eq!(text.parse::<Scalar>().unwrap(), a);
        }
    }
}
