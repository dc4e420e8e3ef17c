//! The `e_μ f_μ^{k+1} v+` coefficient at an odd node.

use num_rational::BigRational;

use super::{FWord, HighestWeightModule, VermaError};
use crate::scalars::{twice, Field, QParam, Scalar};

/// The coefficient of `f_μ^k v+` in `e_μ f_μ^{k+1} v+`, from the action.
pub fn osp_coefficient(module: &HighestWeightModule, mu: usize, k: usize) -> Result<Scalar, VermaError> {
    let w = FWord(vec![mu; k + 1]);
    Ok(module.act_e_word(mu, &w)?.coeff(&FWord(vec![mu; k])))
}

fn parts(param: &QParam, ratio: &BigRational, k: usize) -> Result<(Scalar, Scalar, Scalar), VermaError> {
    let h = |e: i64| param.half_pow(e);
    let k = k as i64;
    let x2 = twice(ratio)?;
    let parity = if k % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
    // [x q^{-k/2} - (-1)^k x^{-1} q^{k/2}] with x = q^{(Λ,α_μ)/(α_μ,α_μ)}
    let bracket = h(x2 - k).minus(&parity.times(&h(k - x2)));
    Ok((parity, bracket, h(2).minus(&h(-2))))
}

/// The reference closed form, with prefactor
/// `(q^{(k+1)/2} - q^{-(k+1)/2}) / ((q - q^{-1})(q^{1/2} - q^{-1/2}))`.
/// `ratio` is `(Λ, α_μ)/(α_μ, α_μ)`.
pub fn osp_coefficient_reference(param: &QParam, ratio: &BigRational, k: usize) -> Result<Scalar, VermaError> {
    let h = |e: i64| param.half_pow(e);
    let kk = k as i64;
    let (_, bracket, qdiff) = parts(param, ratio, k)?;
    let num = h(kk + 1).minus(&h(-kk - 1));
    let den = qdiff.times(&h(1).minus(&h(-1)));
    Ok(num.quotient(&den).ok_or(crate::scalars::ScalarError::DivisionByZero)?.times(&bracket))
}

/// The closed form that the action actually produces:
/// `(-1)^k (q^{(k+1)/2} - (-1)^{k+1} q^{-(k+1)/2}) / ((q - q^{-1})(q^{1/2} + q^{-1/2}))`
/// times the same bracket.
pub fn osp_coefficient_closed_form(param: &QParam, ratio: &BigRational, k: usize) -> Result<Scalar, VermaError> {
    let h = |e: i64| param.half_pow(e);
    let kk = k as i64;
    let (parity, bracket, qdiff) = parts(param, ratio, k)?;
    let num = h(kk + 1).plus(&parity.times(&h(-kk - 1)));
    let den = qdiff.times(&h(1).plus(&h(-1)));
    Ok(parity.times(&num.quotient(&den).ok_or(crate::scalars::ScalarError::DivisionByZero)?).times(&bracket))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{catalog_by_name, labels_from_ints};
    use crate::scalars::rational;

    #[test]
    fn action_matches_closed_form() {
        let data = catalog_by_name("B1_0_1").unwrap();
        let q = QParam::generic();
        for label in 0..=6 {
            let m = HighestWeightModule::new(&data, &labels_from_ints(&[0, label]), None, q.clone()).unwrap();
            for k in 0..=6 {
                let ratio = rational(label, 2);
                let got = osp_coefficient(&m, 1, k).unwrap();
                assert_eq!(got, osp_coefficient_closed_form(&q, &ratio, k).unwrap(), "label {label}, k {k}");
                let vanishes = label as usize == k && k % 2 == 0;
                assert_eq!(got.is_zero(), vanishes, "label {label}, k {k}");
            }
        }
    }

    #[test]
    fn reference_and_closed_forms_agree_only_at_k_zero() {
        let q = QParam::generic();
        let ratio = rational(3, 2);
        assert_eq!(osp_coefficient_reference(&q, &ratio, 0).unwrap(), osp_coefficient_closed_form(&q, &ratio, 0).unwrap());
        assert_ne!(osp_coefficient_reference(&q, &ratio, 1).unwrap(), osp_coefficient_closed_form(&q, &ratio, 1).unwrap());
    }
}
