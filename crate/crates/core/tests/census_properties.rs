use hk_core::oracle::{brute_residues, brute_units};
use hk_core::{
    compare_images, count_polarization_types, discriminant_units, enumerate_components, exists_polarization,
    overall_verdict, transform_wall, BigInt, DeformationType, PolarizationNumerics, Verdict,
};
use num_integer::Integer;
use proptest::prelude::*;

fn divisors(x: u64) -> Vec<u64> {
    (1..=x).filter(|d| x.is_multiple_of(*d)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn closed_census_matches_scan(mt in 1u64..400, n in 1u64..400, pick in 0usize..64) {
        let g = (2 * mt).gcd(&(2 * n));
        let ds = divisors(g);
        let gamma = ds[pick % ds.len()];
        let dt = DeformationType::k3m(mt + 1).unwrap();
        let pn = PolarizationNumerics::new(&dt, n, gamma).unwrap();
        let scanned = brute_residues(&BigInt::from(mt), &BigInt::from(n), &BigInt::from(gamma)).unwrap();
        prop_assert_eq!(exists_polarization(&dt, &pn).unwrap(), !scanned.is_empty());
        if !scanned.is_empty() {
            let types = enumerate_components(&dt, &pn).unwrap();
            let mut all: Vec<BigInt> = types.iter().flat_map(|t| t.residues().cloned()).collect();
            all.sort();
            prop_assert_eq!(all, scanned);
            prop_assert_eq!(BigInt::from(types.len()), count_polarization_types(&dt, &pn).unwrap());
        }
    }

    #[test]
    fn units_match_scan(mt in 1u64..5000) {
        let mt = BigInt::from(mt);
        prop_assert_eq!(discriminant_units(&mt).unwrap(), brute_units(&mt).unwrap());
    }

    #[test]
    fn transform_keeps_the_wall_range(m in 2i64..80, kum in any::<bool>(), pick in 0usize..1000) {
        let dt = if kum { DeformationType::kumm(m) } else { DeformationType::k3m(m) }.unwrap();
        let mt = dt.mtilde().unwrap();
        let walls = hk_core::enumerate_wall_types(&dt).unwrap();
        let wall = &walls[pick % walls.len()];
        for a in discriminant_units(&mt).unwrap() {
            let image = transform_wall(&dt, wall, &a).unwrap();
            prop_assert_eq!(&image.l, &wall.l);
            prop_assert!(image.k >= BigInt::from(0) && image.k <= mt);
            prop_assert_eq!(transform_wall(&dt, &image, &a).unwrap(), wall.clone());
        }
    }
}

#[test]
fn trivial_unit_group_never_breaks_walls() {
    // m̃ a prime power: units are ±1, nothing to compare.
    for mt in [2i64, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27] {
        let dt = DeformationType::k3m(mt + 1).unwrap();
        for n in 1..=30i64 {
            let pn = PolarizationNumerics::new(&dt, n, 1).unwrap();
            let reports = compare_images(&dt, &pn).unwrap();
            assert_eq!(overall_verdict(&reports), Verdict::IdenticalImages, "m̃={mt} n={n}");
        }
    }
}

#[test]
fn reports_serialize() {
    let dt = DeformationType::k3m(145).unwrap();
    let pn = PolarizationNumerics::new(&dt, 144, 12).unwrap();
    let reports = compare_images(&dt, &pn).unwrap();
    let json = serde_json::to_value(&reports).unwrap();
    assert_eq!(json[0]["verdict"], "different-images");
    assert_eq!(json[0]["component_action"], "swap");
    let back: Vec<hk_core::ImageComparisonReport> = serde_json::from_value(json).unwrap();
    assert_eq!(back, reports);
}
