//! Bose-Fermi transmutation: the `q = -1` specialization of the `S`/`C`
//! presentation and the sign twist that turns modules of the non-graded
//! partner at `-q` into modules of the superalgebra at `q`.
//!
//! One formal parameter `v` is used throughout. The partner runs at
//! `q' = v^2`; the superalgebra runs at `q = -q'` with `q^{1/2} = i v`.

use std::time::Instant;

use num_rational::BigRational;
use serde_json::json;
use thiserror::Error;

use crate::algebra::{
    classical_limit, coefficient, defining_relations, sc_relations, serre_with_rule, twice_root_pairing, AdRule,
    AlgebraError, GenSymbol, ScMutation, Side,
};
use crate::cartan::{catalog, AlgebraData, CartanError, Family};
use crate::lincomb::LinComb;
use crate::report::VerificationReport;
use crate::scalars::{int, Field, QParam, Scalar, ScalarError};
use crate::verma::{
    character_difference, contents_to_depth, verify_relations, words_to_depth, FWord, HighestWeightModule,
    ModuleVector, Representation, VermaError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransmutationError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Verma(#[from] VermaError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("sign exponent {0} is not an integer")]
    NonIntegral(BigRational),
    #[error("no sign vectors for {0} satisfy the mod-2 conditions")]
    NoSignVectors(String),
    #[error("labels do not satisfy the integrability conditions: {0}")]
    NotIntegrable(String),
}

/// The non-graded algebra with the same `A`, marks and `d`.
pub fn partner(data: &AlgebraData) -> Result<AlgebraData, TransmutationError> {
    let id = data.id.ok_or_else(|| CartanError::NotTransmutable(data.name.clone()))?;
    Ok(catalog(id.partner()?))
}

/// `(-1)^{(λ, ω)}` for `λ = Σ c_r α_r`, given `2(α_r, ω)` for each `r`.
pub fn sign_character(lambda: &[i64], twice_alpha_omega: &[i64]) -> Result<i64, TransmutationError> {
    let twice_total: i64 = lambda.iter().zip(twice_alpha_omega).map(|(c, t)| c * t).sum();
    if twice_total % 2 != 0 {
        return Err(TransmutationError::NonIntegral(BigRational::new(twice_total.into(), 2.into())));
    }
    Ok(if (twice_total / 2) % 2 == 0 { 1 } else { -1 })
}

/// Sign-exponent vectors, as `α`-coefficients, for `e_i` and `f_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistSigns {
    pub e: Vec<Vec<i64>>,
    pub f: Vec<Vec<i64>>,
}

impl TwistSigns {
    /// `β_i = Σ_{r >= i} α_r`, `β_{n+1} = 0`, and
    /// `e_i: β_{i+1} - δ_{i0} β_1`, `f_i: β_i - δ_{i0} β_1`.
    pub fn b_family(n: usize) -> Self {
        Self::b_family_with(n, true)
    }

    /// [`TwistSigns::b_family`] without the `δ_{i0}` correction.
    pub fn b_family_uncorrected(n: usize) -> Self {
        Self::b_family_with(n, false)
    }

    fn b_family_with(n: usize, correction: bool) -> Self {
        let size = n + 1;
        let beta = |i: usize| -> Vec<i64> { (0..size).map(|r| i64::from(r >= i && i <= n)).collect() };
        let shift = |mut v: Vec<i64>, i: usize| {
            if correction && i == 0 {
                for (x, b) in v.iter_mut().zip(beta(1)) {
                    *x -= b;
                }
            }
            v
        };
        TwistSigns {
            e: (0..size).map(|i| shift(beta(i + 1), i)).collect(),
            f: (0..size).map(|i| shift(beta(i), i)).collect(),
        }
    }

    /// The first sign vectors, in a fixed enumeration order, that satisfy
    /// the mod-2 conditions forced by the defining relations:
    /// `e_i ≡ f_i + α_i`, `(f_i, α_i) ≡ eps_i` and
    /// `(e_i, α_j) + (f_j, α_i) ≡ p_i p_j` for `i != j`, with every pairing
    /// integral. These are necessary; [`verify_twist`] is the full check.
    pub fn solve(data: &AlgebraData) -> Option<Self> {
        let size = data.size();
        let pair = |l: &[i64], j: usize| -> Option<i64> {
            let twice: i64 = l.iter().enumerate().map(|(r, c)| c * twice_root_pairing(data, r, j)).sum();
            (twice % 2 == 0).then_some(twice / 2)
        };
        let parity = |i: usize| i64::from(data.is_odd(i));
        let mut rows: Vec<(Vec<i64>, Vec<i64>)> = Vec::with_capacity(size);
        let mut next = vec![0u64; size];
        let mut i = 0;
        while i < size {
            if next[i] == 1 << size {
                next[i] = 0;
                if i == 0 {
                    return None;
                }
                rows.pop();
                i -= 1;
                continue;
            }
            let code = next[i];
            next[i] += 1;
            let f: Vec<i64> = (0..size).map(|r| ((code >> r) & 1) as i64).collect();
            let e: Vec<i64> = (0..size).map(|r| (f[r] + i64::from(r == i)) % 2).collect();
            let fits = pair(&f, i).is_some_and(|x| (x - data.eps[i]).rem_euclid(2) == 0)
                && rows.iter().enumerate().all(|(j, (ej, fj))| {
                    let odd = parity(i) * parity(j);
                    let ij = pair(&e, j).zip(pair(fj, i)).map(|(a, b)| (a + b - odd).rem_euclid(2) == 0);
                    let ji = pair(ej, i).zip(pair(&f, j)).map(|(a, b)| (a + b - odd).rem_euclid(2) == 0);
                    ij == Some(true) && ji == Some(true)
                });
            if fits {
                rows.push((e, f));
                i += 1;
            }
        }
        let (e, f) = rows.into_iter().unzip();
        Some(TwistSigns { e, f })
    }

    /// The closed-form vectors for the `B` family, otherwise the first
    /// solution of the mod-2 conditions.
    pub fn for_data(data: &AlgebraData) -> Result<Self, TransmutationError> {
        match data.id {
            Some(id) if id.family == Family::B1Super => Ok(Self::b_family(id.n)),
            Some(id) if id.family.is_super() => {
                partner(data)?;
                Self::solve(data).ok_or_else(|| TransmutationError::NoSignVectors(data.name.clone()))
            }
            _ => Err(TransmutationError::NoSignVectors(data.name.clone())),
        }
    }
}

/// The partner's irreducible module with the signed super action.
pub struct TwistedModule {
    partner: HighestWeightModule,
    target: AlgebraData,
    signs: TwistSigns,
}

impl TwistedModule {
    pub fn new(
        target: &AlgebraData,
        labels: &[BigRational],
        signs: TwistSigns,
    ) -> Result<Self, TransmutationError> {
        let data = partner(target)?;
        let partner = HighestWeightModule::new(&data, labels, None, QParam::generic())?;
        Ok(TwistedModule { partner, target: target.clone(), signs })
    }

    pub fn partner_module(&mut self) -> &mut HighestWeightModule {
        &mut self.partner
    }

    fn twice_alpha_omega(&self, content: &[usize]) -> Vec<i64> {
        (0..self.target.size()).map(|r| self.partner.twice_pairing(content, r)).collect()
    }

    /// `(-1)^{(λ, ω + α_i)}` on the weight of `content`.
    fn shifted_sign(&self, lambda: &[i64], content: &[usize], i: usize) -> Result<i64, TransmutationError> {
        let size = self.target.size();
        let t: Vec<i64> = self
            .twice_alpha_omega(content)
            .iter()
            .enumerate()
            .map(|(r, x)| x + twice_root_pairing(&self.target, r, i))
            .collect();
        debug_assert_eq!(t.len(), size);
        sign_character(lambda, &t)
    }

    /// The signed action of one generator on one word.
    pub fn twist_action(&mut self, s: GenSymbol, w: &FWord) -> Result<ModuleVector, TransmutationError> {
        let size = self.target.size();
        let content = w.content(size);
        let (sign, base) = match s {
            GenSymbol::D => (1, self.partner.act_symbol(s, w)?),
            GenSymbol::K(i) | GenSymbol::KInv(i) => {
                let mut unit = vec![0; size];
                unit[i] = 1;
                (sign_character(&unit, &self.twice_alpha_omega(&content))?, self.partner.act_symbol(s, w)?)
            }
            GenSymbol::E(i) => {
                let lambda = self.signs.e[i].clone();
                (self.shifted_sign(&lambda, &content, i)?, self.partner.act_symbol(s, w)?)
            }
            GenSymbol::F(i) => {
                let lambda = self.signs.f[i].clone();
                (self.shifted_sign(&lambda, &content, i)?, self.partner.act_symbol(s, w)?)
            }
            GenSymbol::S(_) | GenSymbol::C(_) => return Err(VermaError::Unsupported(s.to_string()).into()),
        };
        Ok(if sign == 1 { base } else { base.scaled(&Scalar::from_int(-1)) })
    }

    /// Whether `(α_i, ω)` is an integer for every node and every nonzero
    /// weight space up to `depth`; the first offending content otherwise.
    pub fn integrality_violation(&mut self, depth: usize) -> Result<Option<Vec<usize>>, TransmutationError> {
        for c in contents_to_depth(self.target.size(), depth) {
            if self.partner.dim(&c)? == 0 {
                continue;
            }
            if self.twice_alpha_omega(&c).iter().any(|t| t % 2 != 0) {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    /// On each nonzero weight space, the `v -> 1` limit of
    /// `(-1)^{eps_i} C_i S_i` computed from the twisted `k_i^{±1}` equals
    /// the limit of the partner's `(K_i - K_i^{-1})/(q'^{eps_i} - q'^{-eps_i})`.
    pub fn h_spot_check(&mut self, depth: usize) -> Result<Option<(Vec<usize>, usize)>, TransmutationError> {
        let size = self.target.size();
        let super_q = QParam::imaginary();
        for c in contents_to_depth(size, depth) {
            let space = self.partner.space(&c)?;
            if space.dim == 0 {
                continue;
            }
            let w = space.basis[0].clone();
            for i in 0..size {
                let eigen = |m: &mut Self, s: GenSymbol| -> Result<Scalar, TransmutationError> {
                    Ok(m.twist_action(s, &w)?.coeff(&w))
                };
                let k = eigen(self, GenSymbol::K(i))?;
                let kinv = eigen(self, GenSymbol::KInv(i))?;
                let eps = self.target.eps[i];
                let c_op = k.plus(&kinv).times(&Scalar::from_rational(crate::scalars::rational(1, 2)));
                let s_op = k.minus(&kinv).quotient(&super_q.qdiff(eps)).ok_or(ScalarError::DivisionByZero)?;
                let sign = Scalar::from_int(if eps % 2 == 0 { 1 } else { -1 });
                let h = sign.times(&c_op).times(&s_op).classical_limit()?;
                let expected = self.partner.bracket(&c, i)?.classical_limit()?;
                if h != expected {
                    return Ok(Some((c, i)));
                }
            }
        }
        Ok(None)
    }
}

impl Representation for TwistedModule {
    type Basis = FWord;

    fn algebra(&self) -> &AlgebraData {
        &self.target
    }

    fn act_symbol(&mut self, s: GenSymbol, b: &FWord) -> Result<LinComb<FWord>, VermaError> {
        self.twist_action(s, b).map_err(|e| match e {
            TransmutationError::Verma(v) => v,
            other => VermaError::Unsupported(other.to_string()),
        })
    }

    fn is_null(&mut self, v: &LinComb<FWord>) -> Result<bool, VermaError> {
        self.partner.is_null(v)
    }

    fn describe(&self, b: &FWord) -> String {
        b.to_string()
    }
}

/// Checks the twisted partner module against the superalgebra: every
/// defining relation at `q^{1/2} = i v` on every word to `depth`, the
/// highest-weight property, integrality of all weights, and equality of
/// characters with the directly built super module.
pub fn verify_twist(
    data: &AlgebraData,
    labels: &[BigRational],
    depth: usize,
    signs: TwistSigns,
) -> Result<VerificationReport, TransmutationError> {
    let start = Instant::now();
    let mut report = VerificationReport::new("twist", &data.name).with_labels(labels).with_depth(depth);
    if let Some(msg) = crate::cartan::integrability_violation(data, labels) {
        return Err(TransmutationError::NotIntegrable(msg));
    }
    let mut tm = TwistedModule::new(data, labels, signs)?;
    let size = data.size();
    let super_q = QParam::imaginary();

    if let Some(c) = tm.integrality_violation(depth)? {
        report.fail(json!({ "check": "integrality", "alpha_coords": c }));
    }

    let top = FWord::top();
    for i in 0..size {
        if !tm.twist_action(GenSymbol::E(i), &top)?.is_zero() {
            report.fail(json!({ "check": "highest_weight", "i": i }));
        }
        let k = tm.twist_action(GenSymbol::K(i), &top)?.coeff(&top);
        let expected = super_q.half_pow(tm.partner.twice_pairing(&vec![0; size], i));
        if k != expected {
            report.fail(json!({ "check": "maximal_vector_k", "i": i, "got": k.to_string(), "expected": expected.to_string() }));
        }
    }

    if report.passed() {
        let relations = defining_relations(data, &super_q)?;
        let vectors = words_to_depth(size, depth);
        verify_relations(&mut tm, &relations, &vectors, &mut report)?;
    }

    if report.passed() {
        let twisted = tm.partner.character(depth);
        let mut direct = HighestWeightModule::new(data, labels, None, super_q)?;
        let direct = direct.character(depth);
        if !twisted.complete || !direct.complete {
            report.fail(json!({ "check": "character", "error": "resource limit reached" }));
        } else if let Some((c, x, y)) = character_difference(&twisted, &direct) {
            report.fail(json!({ "check": "character", "alpha_coords": c, "twisted": x, "direct": y }));
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn parity_sign(m: i64) -> BigRational {
    if m % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// Compares the `v -> 1` limit of every `S`/`C` relation at `q^{1/2} = i v`
/// with the reference `q = -1` relation list, coefficient by coefficient, and
/// the limit of each Serre element with the sign-only adjoint action.
pub fn specialized_relations_report(data: &AlgebraData) -> Result<VerificationReport, TransmutationError> {
    use GenSymbol::*;
    let start = Instant::now();
    let mut report = VerificationReport::new("specialized", &data.name);
    let q = QParam::imaginary();
    let rels = sc_relations(data, &q, ScMutation::None)?;
    let size = data.size();

    let compare = |report: &mut VerificationReport,
                       name: &str,
                       i: usize,
                       j: Option<usize>,
                       element: &crate::algebra::AlgElement,
                       word: &[GenSymbol],
                       expected: BigRational|
     -> Result<(), TransmutationError> {
        let limit = coefficient(element, word).classical_limit()?;
        if limit != expected {
            let w: Vec<String> = word.iter().map(ToString::to_string).collect();
            report.fail(json!({
                "relation": name, "i": i, "j": j, "word": w.join("."),
                "limit": limit.to_string(), "expected": expected.to_string(),
            }));
        }
        Ok(())
    };

    for rel in &rels {
        let i = rel.i;
        let eps = data.eps[i];
        let el = &rel.element;
        match (rel.name.as_str(), rel.j) {
            ("C^2 - S^2 sinh^2 = 1", _) => {
                compare(&mut report, &rel.name, i, None, el, &[C(i), C(i)], int(1))?;
                compare(&mut report, &rel.name, i, None, el, &[S(i), S(i)], int(0))?;
                compare(&mut report, &rel.name, i, None, el, &[], int(-1))?;
            }
            (name @ ("C e" | "C f" | "S e" | "S f"), Some(j)) => {
                let m2 = twice_root_pairing(data, i, j);
                if m2 % 2 != 0 {
                    report.fail(json!({ "relation": name, "i": i, "j": j, "error": "non-integral (α_i, α_j)" }));
                    continue;
                }
                let m = m2 / 2;
                let pm = parity_sign(m);
                let pme = parity_sign(m + eps);
                let g = if name.ends_with('e') { E(j) } else { F(j) };
                let sign_f = if name.ends_with('e') { int(-1) } else { int(1) };
                if name.starts_with('C') {
                    // C g - (-1)^m g C = 0
                    compare(&mut report, name, i, Some(j), el, &[g, C(i)], -pm.clone())?;
                    compare(&mut report, name, i, Some(j), el, &[g, S(i)], int(0))?;
                } else {
                    // S e - (-1)^m e S = (-1)^{m+eps} m e C, and the f mirror
                    // with the right side negated.
                    compare(&mut report, name, i, Some(j), el, &[g, S(i)], -pm.clone())?;
                    compare(&mut report, name, i, Some(j), el, &[g, C(i)], sign_f * pme * int(m))?;
                }
            }
            _ => {}
        }
    }

    for i in 0..size {
        for j in 0..size {
            if i == j {
                continue;
            }
            for side in [Side::E, Side::F] {
                let exact = serre_with_rule(data, AdRule::Quantum(&q), i, j, side)?;
                let limit = classical_limit(&exact)?;
                let expected = serre_with_rule(data, AdRule::SignOnly, i, j, side)?;
                if limit != expected {
                    let name = if side == Side::E { "serre_e" } else { "serre_f" };
                    report.fail(json!({ "relation": name, "i": i, "j": j }));
                }
            }
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
