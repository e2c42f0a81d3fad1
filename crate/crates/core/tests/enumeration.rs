use grrforge_core::census::{gl_centralizer_order, i2_gl_exact};
use grrforge_core::group::suzuki_involution;
use grrforge_core::ppd::{find_ppd_element, PpdSearch};
use grrforge_core::prand::ProductReplacement;
use grrforge_core::table::{ElementTable, DEFAULT_CAP};
use grrforge_core::{Family, Field, GroupSpec};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn spec(family: Family, n: usize, field: Field) -> GroupSpec {
    GroupSpec::matrix(family, n, field).unwrap()
}

fn gf(f: u32) -> Field {
    Field::binary(f).unwrap()
}

#[test]
fn closure_matches_order_formula() {
    let cases = [
        (Family::GL, 3, gf(1), 168, 21),
        (Family::GL, 3, gf(2), 181440, 315),
        (Family::SL, 2, gf(2), 60, 15),
        (Family::SL, 3, gf(2), 60480, 315),
        (Family::PSL, 3, gf(2), 20160, 315),
        (Family::SL, 4, gf(1), 20160, 315),
        (Family::Sp, 4, gf(1), 720, 75),
        (Family::OmegaPlus, 4, gf(1), 36, 15),
        (Family::OmegaMinus, 4, gf(1), 60, 15),
        (Family::OmegaPlus, 4, gf(2), 3600, 255),
        (Family::OmegaMinus, 4, gf(2), 4080, 255),
        (Family::OmegaPlus, 6, gf(1), 20160, 315),
        (Family::OmegaMinus, 6, gf(1), 25920, 315),
        (Family::PSL, 2, Field::prime(7).unwrap(), 168, 21),
        (Family::SL, 2, Field::prime(7).unwrap(), 336, 1),
        (Family::PSL, 2, Field::prime(11).unwrap(), 660, 55),
    ];
    for (family, n, field, order, involutions) in cases {
        let s = spec(family, n, field);
        let t = ElementTable::enumerate(&s, DEFAULT_CAP).unwrap();
        assert_eq!(t.len(), order, "{}", s.describe());
        assert_eq!(s.order().unwrap(), BigUint::from(order), "{}", s.describe());
        assert_eq!(t.involutions().len(), involutions, "{} involutions", s.describe());
    }
}

#[test]
fn involution_census_matches_brute_force() {
    for (n, f) in [(2usize, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1)] {
        let field = gf(f);
        let q = BigUint::from(field.order());
        let t = ElementTable::enumerate(&spec(Family::GL, n, field.clone()), DEFAULT_CAP).unwrap();
        assert_eq!(BigUint::from(t.involutions().len()), i2_gl_exact(n as u32, &q).unwrap());
        for l in 1..=n / 2 {
            let j = t.index_of(&suzuki_involution(n, l, &field).unwrap()).unwrap();
            let brute = BigUint::from(t.centralizer_order(j).unwrap());
            assert_eq!(
                brute,
                gl_centralizer_order(n as u32, l as u32, &q).unwrap(),
                "n={n} q={q} l={l}"
            );
        }
    }
}

#[test]
fn ppd_element_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let s = spec(Family::SL, 4, gf(1));
    match find_ppd_element(&s, 1000, &mut rng).unwrap() {
        PpdSearch::Found { element, order, ef, .. } => {
            assert_eq!((order, ef), (5, 4));
            assert_eq!(s.element_order(&element).unwrap(), BigUint::from(5u32));
            assert!(s.in_group(&element).unwrap());
        }
        other => panic!("{other:?}"),
    }
    for (family, n) in [(Family::Sp, 6), (Family::SL, 6), (Family::OmegaPlus, 8)] {
        let s = spec(family, n, gf(1));
        assert!(matches!(
            find_ppd_element(&s, 10, &mut rng).unwrap(),
            PpdSearch::Absent { ef: 6 }
        ));
    }
    let s = spec(Family::Sp, 6, gf(2));
    match find_ppd_element(&s, 5000, &mut rng).unwrap() {
        PpdSearch::Found { element, order, ef, .. } => {
            assert_eq!((order, ef), (13, 12));
            assert_eq!(s.element_order(&element).unwrap(), BigUint::from(13u32));
        }
        other => panic!("{other:?}"),
    }
}

// chi-square against the uniform distribution and a coupon-collector bound
#[test]
fn product_replacement_is_near_uniform() {
    let s = spec(Family::SL, 2, gf(2));
    let t = ElementTable::enumerate(&s, DEFAULT_CAP).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut pr = ProductReplacement::new(&s, &mut rng).unwrap();
    let draws = 60 * 200;
    let mut counts = vec![0u64; t.len()];
    let mut first_full = None;
    let mut seen = 0;
    for i in 0..draws {
        let g = pr.next(&s, &mut rng);
        let k = t.index_of(&g).unwrap() as usize;
        if counts[k] == 0 {
            seen += 1;
            if seen == t.len() {
                first_full = Some(i + 1);
            }
        }
        counts[k] += 1;
    }
    let expected = draws as f64 / t.len() as f64;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    // 59 degrees of freedom; 99.9% quantile is about 99.6
    assert!(chi2 < 99.6, "chi2 = {chi2}");
    // expected collection time is 60 H_60, about 281
    assert!(first_full.unwrap() < 1000);
}

#[test]
#[ignore = "enumerates 1.45 million elements"]
fn sp62_enumeration() {
    let s = spec(Family::Sp, 6, gf(1));
    let t = ElementTable::enumerate(&s, DEFAULT_CAP).unwrap();
    assert_eq!(t.len(), 1_451_520);
}
