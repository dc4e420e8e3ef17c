use num_rational::BigRational;
use proptest::prelude::*;

use qaffine::cartan::{catalog_all, catalog_by_name, check_conditions, labels_from_ints, pairing, Weight};
use qaffine::scalars::QParam;
use qaffine::transmutation::sign_character;
use qaffine::verma::{gram, HighestWeightModule};

fn weight(coords: &[i64]) -> Weight {
    Weight { coords: coords.iter().map(|&c| BigRational::from_integer(c.into())).collect() }
}

#[test]
fn whole_catalog_satisfies_conditions() {
    for data in catalog_all() {
        assert_eq!(check_conditions(&data), vec![], "{}", data.name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pairing_is_symmetric(idx in 0usize..40, a in prop::collection::vec(-4i64..5, 8), b in prop::collection::vec(-4i64..5, 8)) {
        let all = catalog_all();
        let data = &all[idx % all.len()];
        let len = data.size() + 1;
        if a.len() >= len {
            let (x, y) = (weight(&a[..len]), weight(&b[..len]));
            prop_assert_eq!(pairing(data, &x, &y).unwrap(), pairing(data, &y, &x).unwrap());
        }
    }

    #[test]
    fn sign_character_is_multiplicative(
        lambda in prop::collection::vec(-3i64..4, 3),
        x in prop::collection::vec(-3i64..4, 3),
        y in prop::collection::vec(-3i64..4, 3),
    ) {
        let twice = |v: &[i64]| v.iter().map(|c| 2 * c).collect::<Vec<_>>();
        let sum: Vec<i64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let (sx, sy, ss) = (
            sign_character(&lambda, &twice(&x)).unwrap(),
            sign_character(&lambda, &twice(&y)).unwrap(),
            sign_character(&lambda, &twice(&sum)).unwrap(),
        );
        prop_assert_eq!(ss, sx * sy);
    }

    #[test]
    fn gram_is_symmetric_with_rank_equal_to_quotient_dim(
        l0 in 0i64..3, l1 in 0i64..2, c0 in 0usize..3, c1 in 0usize..3,
    ) {
        let data = catalog_by_name("B1_0_1").unwrap();
        let mut m = HighestWeightModule::new(&data, &labels_from_ints(&[l0, 2 * l1]), None, QParam::generic()).unwrap();
        let g = gram(&m, &[c0, c1]).unwrap();
        prop_assert!(g.is_symmetric());
        prop_assert_eq!(g.rank, m.dim(&[c0, c1]).unwrap());
    }

    #[test]
    fn characters_are_deterministic(l0 in 0i64..3, l1 in 0i64..2) {
        let data = catalog_by_name("B1_0_1").unwrap();
        let labels = labels_from_ints(&[l0, 2 * l1]);
        let mut a = HighestWeightModule::new(&data, &labels, None, QParam::generic()).unwrap();
        let mut b = HighestWeightModule::new(&data, &labels, None, QParam::generic()).unwrap();
        prop_assert_eq!(a.character(3).entries, b.character(3).entries);
    }
}
