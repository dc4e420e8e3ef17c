use qaffine::cartan::{catalog_by_name, dynkin_labels, labels_from_ints, Weight};
use qaffine::scalars::QParam;
use qaffine::transmutation::partner;
use qaffine::verma::{character_difference, contents_to_depth, HighestWeightModule};

fn partitions(n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for m in part..=n {
            p[m] += p[m - part];
        }
    }
    p[n]
}

/// Basic module of affine sl2: weights `Λ0 + mα1 - (m² + k)δ` with
/// multiplicity `p(k)`, where `δ = α0 + α1`.
fn basic_sl2_multiplicity(a: usize, b: usize) -> usize {
    let m = a as i64 - b as i64;
    let k = a as i64 - m * m;
    if k < 0 {
        0
    } else {
        partitions(k as usize)
    }
}

#[test]
fn affine_sl2_basic_module_matches_partition_counts() {
    let data = catalog_by_name("A1_1").unwrap();
    let mut m = HighestWeightModule::new(&data, &labels_from_ints(&[1, 0]), None, QParam::generic()).unwrap();
    let ch = m.character(8);
    assert!(ch.complete);
    for content in contents_to_depth(2, 8) {
        assert_eq!(ch.multiplicity(&content), basic_sl2_multiplicity(content[0], content[1]), "{content:?}");
    }
}

#[test]
fn affine_sl2_basic_module_at_v_one_matches_too() {
    let data = catalog_by_name("A1_1").unwrap();
    let mut m = HighestWeightModule::new(&data, &labels_from_ints(&[1, 0]), None, QParam::classical()).unwrap();
    let ch = m.character(6);
    for content in contents_to_depth(2, 6) {
        assert_eq!(ch.multiplicity(&content), basic_sl2_multiplicity(content[0], content[1]), "{content:?}");
    }
}

#[test]
fn trivial_module_is_one_dimensional() {
    for name in ["B1_0_1", "B1_0_2", "C2_2", "A2_2", "A1_1"] {
        let data = catalog_by_name(name).unwrap();
        let labels = labels_from_ints(&vec![0; data.size()]);
        let mut m = HighestWeightModule::new(&data, &labels, None, QParam::generic()).unwrap();
        let ch = m.character(4);
        assert_eq!(ch.entries, vec![(vec![0; data.size()], 1)], "{name}");
    }
}

#[test]
fn lambda0_labels_round_trip() {
    let data = catalog_by_name("B1_0_1").unwrap();
    let labels = dynkin_labels(&data, &Weight::lambda0(2));
    let m = HighestWeightModule::new(&data, &labels, None, QParam::generic()).unwrap();
    assert_eq!(m.weight().level_coeff(), &qaffine::scalars::int(1));
}

#[test]
fn super_and_partner_characters_agree() {
    let data = catalog_by_name("B1_0_1").unwrap();
    let other = partner(&data).unwrap();
    assert_eq!(other.name, "A2_2");
    for labels in [[0, 0], [1, 0], [0, 2], [2, 2]] {
        let labels = labels_from_ints(&labels);
        let mut a = HighestWeightModule::new(&data, &labels, None, QParam::generic()).unwrap();
        let mut b = HighestWeightModule::new(&other, &labels, None, QParam::generic()).unwrap();
        let (ca, cb) = (a.character(5), b.character(5));
        assert_eq!(character_difference(&ca, &cb), None, "{labels:?}");
    }
}
