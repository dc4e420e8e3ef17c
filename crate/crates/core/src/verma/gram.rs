use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{weight_basis, FWord, HighestWeightModule, Matrix, ModuleVector, VermaError};
use crate::linalg::rank;
use crate::scalars::{Field, QParam, Scalar};

/// Contravariant form on one weight space of the induced module.
#[derive(Clone, Debug)]
pub struct GramData {
    pub content: Vec<usize>,
    pub words: Vec<FWord>,
    /// `⟨f_a v+, f_b v+⟩`: the `v+` coefficient of `e_{a_p} ... e_{a_1} f_b v+`.
    pub matrix: Matrix,
    pub rank: usize,
}

impl GramData {
    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..a).all(|b| self.matrix[a][b] == self.matrix[b][a]))
    }
}

fn pair(module: &HighestWeightModule, a: &FWord, b: &FWord) -> Result<Scalar, VermaError> {
    let mut x = ModuleVector::basis(b.clone());
    for &i in &a.0 {
        x = module.act_e(i, &x)?;
        if x.is_zero() {
            return Ok(Scalar::zero());
        }
    }
    Ok(x.coeff(&FWord::top()))
}

/// The Gram matrix of the weight space at `content`, over the module's
/// parameter.
pub fn gram(module: &HighestWeightModule, content: &[usize]) -> Result<GramData, VermaError> {
    let words = weight_basis(content);
    let matrix = words
        .iter()
        .map(|a| words.iter().map(|b| pair(module, a, b)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Matrix, _>>()?;
    let rank = rank(&matrix);
    Ok(GramData { content: content.to_vec(), words, matrix, rank })
}

/// The same Gram matrix with the parameter replaced by `param`.
pub fn gram_at(module: &HighestWeightModule, content: &[usize], param: QParam) -> Result<GramData, VermaError> {
    let other = HighestWeightModule::with_weight(module.data(), module.weight().clone(), param)?;
    gram(&other, content)
}

/// Ranks at the generic parameter and at `samples` random rational points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOracle {
    pub generic: usize,
    pub sampled: Vec<usize>,
}

impl RankOracle {
    /// Specialization never raises the rank, and a generic point attains it.
    pub fn agrees(&self) -> bool {
        self.sampled.iter().all(|&r| r <= self.generic) && self.sampled.iter().max() == Some(&self.generic)
    }
}

pub fn rank_oracle(
    module: &HighestWeightModule,
    content: &[usize],
    seed: u64,
    samples: usize,
) -> Result<RankOracle, VermaError> {
    let generic = gram(module, content)?.rank;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampled = Vec::with_capacity(samples);
    while sampled.len() < samples {
        let num: i64 = rng.gen_range(2..60);
        let den: i64 = rng.gen_range(1..60);
        let v0 = BigRational::new(num.into(), den.into());
        if v0.numer() == v0.denom() {
            continue;
        }
        sampled.push(gram_at(module, content, QParam::at_point(v0))?.rank);
    }
    Ok(RankOracle { generic, sampled })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{catalog_by_name, labels_from_ints};

    fn module(name: &str, labels: &[i64]) -> HighestWeightModule {
        let data = catalog_by_name(name).unwrap();
        HighestWeightModule::new(&data, &labels_from_ints(labels), None, QParam::generic()).unwrap()
    }

    #[test]
    fn top_space_is_normalized() {
        let m = module("B1_0_1", &[1, 2]);
        let g = gram(&m, &[0, 0]).unwrap();
        assert_eq!(g.matrix, vec![vec![Scalar::one()]]);
        assert_eq!(g.rank, 1);
    }

    #[test]
    fn odd_label_two_kills_third_power() {
        let m = module("B1_0_1", &[0, 2]);
        let g = gram(&m, &[0, 3]).unwrap();
        assert_eq!(g.size(), 1);
        assert_eq!(g.rank, 0);
        let g2 = gram(&m, &[0, 2]).unwrap();
        assert_eq!(g2.rank, 1);
    }

    #[test]
    fn odd_label_one_never_truncates() {
        let m = module("B1_0_1", &[0, 1]);
        for k in 1..=6 {
            assert_eq!(gram(&m, &[0, k]).unwrap().rank, 1, "m = {k}");
        }
    }

    #[test]
    fn gram_rank_equals_quotient_dim_and_is_symmetric() {
        for (name, labels) in [("B1_0_1", vec![1, 0]), ("B1_0_1", vec![1, 2]), ("B1_0_2", vec![0, 0, 2])] {
            let mut m = module(name, &labels);
            let size = labels.len();
            for content in crate::verma::repr::contents_to_depth(size, 4) {
                let g = gram(&m, &content).unwrap();
                assert_eq!(g.rank, m.dim(&content).unwrap(), "{name} {labels:?} {content:?}");
                assert!(g.is_symmetric(), "{name} {labels:?} {content:?}");
            }
        }
    }

    #[test]
    fn random_points_reproduce_generic_rank() {
        let m = module("B1_0_1", &[1, 2]);
        for content in [vec![1, 1], vec![1, 2], vec![2, 2], vec![1, 3]] {
            let oracle = rank_oracle(&m, &content, 7, 3).unwrap();
            assert!(oracle.agrees(), "{content:?}: {oracle:?}");
        }
    }
}
