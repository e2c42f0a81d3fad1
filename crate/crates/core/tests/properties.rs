use std::sync::OnceLock;

use grrforge_core::autom::aut_order;
use grrforge_core::bounds::{displayed_lower, master_lower, terms_match, MAX_F};
use grrforge_core::budget::NodeBudget;
use grrforge_core::census::{ledger, LEDGER_ROWS};
use grrforge_core::graph::{build_cayley, Graph};
use grrforge_core::group::suzuki_involution;
use grrforge_core::grr::certify;
use grrforge_core::prand::ProductReplacement;
use grrforge_core::table::{ElementTable, DEFAULT_CAP};
use grrforge_core::{Family, Field, GroupSpec};
use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::sample::{select, subsequence};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn brute_force_aut(g: &Graph) -> u64 {
    fn extend(g: &Graph, image: &mut Vec<u32>, used: &mut [bool]) -> u64 {
        let v = image.len() as u32;
        if v as usize == g.vertex_count() {
            return 1;
        }
        let mut total = 0;
        for w in 0..g.vertex_count() as u32 {
            if !used[w as usize] && (0..v).all(|u| g.has_edge(u, v) == g.has_edge(image[u as usize], w)) {
                used[w as usize] = true;
                image.push(w);
                total += extend(g, image, used);
                image.pop();
                used[w as usize] = false;
            }
        }
        total
    }
    extend(g, &mut Vec::new(), &mut vec![false; g.vertex_count()])
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        subsequence(pairs, 0..=len).prop_map(move |edges| Graph::from_edges(n, &edges).unwrap())
    })
}

fn binary_field() -> impl Strategy<Value = Field> {
    (1u32..=16).prop_map(|f| Field::binary(f).unwrap())
}

fn small_specs() -> Vec<GroupSpec> {
    let gf = |f| Field::binary(f).unwrap();
    vec![
        GroupSpec::matrix(Family::SL, 3, gf(3)).unwrap(),
        GroupSpec::matrix(Family::PSL, 3, gf(2)).unwrap(),
        GroupSpec::matrix(Family::PSL, 2, Field::prime(13).unwrap()).unwrap(),
        GroupSpec::matrix(Family::Sp, 6, gf(2)).unwrap(),
        GroupSpec::matrix(Family::OmegaPlus, 8, gf(1)).unwrap(),
        GroupSpec::matrix(Family::OmegaMinus, 8, gf(2)).unwrap(),
        GroupSpec::matrix(Family::OmegaMinus, 10, gf(1)).unwrap(),
    ]
}

fn sl42() -> &'static ElementTable {
    static T: OnceLock<ElementTable> = OnceLock::new();
    T.get_or_init(|| {
        let spec = GroupSpec::matrix(Family::SL, 4, Field::binary(1).unwrap()).unwrap();
        ElementTable::enumerate(&spec, DEFAULT_CAP).unwrap()
    })
}

fn psl211() -> &'static ElementTable {
    static T: OnceLock<ElementTable> = OnceLock::new();
    T.get_or_init(|| {
        let spec = GroupSpec::matrix(Family::PSL, 2, Field::prime(11).unwrap()).unwrap();
        ElementTable::enumerate(&spec, DEFAULT_CAP).unwrap()
    })
}

proptest! {
    #[test]
    fn field_axioms((k, a, b, c) in binary_field().prop_flat_map(|k| {
        let q = k.order();
        (Just(k), 0..q, 0..q, 0..q)
    })) {
        let (a, b, c) = (a as u16, b as u16, c as u16);
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
        prop_assert_eq!(k.frobenius(k.add(a, b)), k.add(k.frobenius(a), k.frobenius(b)));
        prop_assert!(k.trace(a) <= 1);
        if a != 0 {
            prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), 1);
            prop_assert_eq!(k.pow(a, k.order() as u64 - 1), 1);
        }
    }

    #[test]
    fn prime_field_axioms((k, a, b) in select(vec![3u32, 5, 7, 11, 13, 251, 65521]).prop_flat_map(|p| {
        (Just(Field::prime(p).unwrap()), 0..p, 0..p)
    })) {
        let (a, b) = (a as u16, b as u16);
        prop_assert_eq!(k.add(a, k.neg(a)), 0);
        prop_assert_eq!(k.sub(k.add(a, b), b), a);
        if b != 0 {
            prop_assert_eq!(k.mul(k.div(a, b).unwrap(), b), a);
        }
    }

    #[test]
    fn suzuki_forms_are_involutions(n in 2usize..=10, f in 1u32..=4, l_seed in 0usize..5) {
        let k = Field::binary(f).unwrap();
        let l = 1 + l_seed % (n / 2);
        let spec = GroupSpec::matrix(Family::SL, n, k.clone()).unwrap();
        let j = suzuki_involution(n, l, &k).unwrap();
        prop_assert!(spec.in_group(&j).unwrap());
        prop_assert!(!spec.is_identity(&j));
        prop_assert!(spec.is_identity(&spec.mul(&j, &j)));
    }

    #[test]
    fn random_elements_stay_in_group(which in 0usize..7, seed in any::<u64>()) {
        let spec = &small_specs()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pr = ProductReplacement::new(spec, &mut rng).unwrap();
        let g = pr.next(spec, &mut rng);
        let h = pr.next(spec, &mut rng);
        let gh = spec.mul(&g, &h);
        prop_assert!(spec.in_group(&g).unwrap() && spec.in_group(&gh).unwrap());
        prop_assert!(spec.is_identity(&spec.mul(&g, &spec.inv(&g))));
        let ord = spec.element_order(&g).unwrap();
        prop_assert!((spec.order().unwrap() % &ord).is_zero());
        prop_assert!(spec.is_identity(&spec.pow_big(&g, &ord)));
        // conjugation preserves order
        prop_assert_eq!(spec.element_order(&spec.conjugate(&g, &h)).unwrap(), ord);
    }

    #[test]
    fn master_bound_decomposes(row in 0usize..11, f in 1u32..=MAX_F) {
        let (family, n) = LEDGER_ROWS[row];
        let entry = ledger(family, n).unwrap();
        prop_assert!(terms_match(&entry, f));
        if entry.condition.holds(f) {
            prop_assert!(master_lower(family, n, f).unwrap() >= displayed_lower(family, n, f).unwrap());
        }
    }

    #[test]
    fn aut_order_matches_brute_force(g in graph_strategy(7)) {
        prop_assert_eq!(aut_order(&g), BigUint::from(brute_force_aut(&g)));
    }

    #[test]
    fn aut_order_is_relabeling_invariant((g, perm) in graph_strategy(12).prop_flat_map(|g| {
        let n = g.vertex_count() as u32;
        (Just(g), Just((0..n).collect::<Vec<u32>>()).prop_shuffle())
    })) {
        prop_assert_eq!(aut_order(&g), aut_order(&g.relabel(&perm)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn connected_iff_generating(xs in any::<u32>(), ys in any::<u32>()) {
        let t = sl42();
        let x = 1 + xs % (t.len() as u32 - 1);
        let y = t.involutions()[ys as usize % t.involutions().len()];
        let mut s = vec![x, t.inv(x), y];
        s.sort_unstable();
        s.dedup();
        let cay = build_cayley(t, &s).unwrap();
        prop_assert_eq!(cay.graph.is_connected(), t.generates(&[x, y]).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verdict_is_conjugation_invariant(picks in subsequence((0usize..55).collect::<Vec<_>>(), 3), g in 0u32..660) {
        let t = psl211();
        let s: Vec<u32> = picks.iter().map(|&i| t.involutions()[i]).collect();
        let gi = t.inv(g);
        let conj: Vec<u32> = s.iter().map(|&a| t.mul(t.mul(gi, a), g)).collect();
        let v = certify(t, &s, &mut NodeBudget::unlimited()).unwrap();
        let w = certify(t, &conj, &mut NodeBudget::unlimited()).unwrap();
        prop_assert_eq!(v.generates, w.generates);
        prop_assert_eq!(v.is_grr, w.is_grr);
        if let Some(order) = &v.aut_order {
            prop_assert!((order % BigUint::from(t.len())).is_zero());
        }
        prop_assert_eq!(v.aut_order, w.aut_order);
    }

    #[test]
    fn any_cache_corruption_is_rejected(pos in any::<usize>(), flip in 1u8..=255) {
        let spec = GroupSpec::matrix(Family::SL, 2, Field::binary(2).unwrap()).unwrap();
        let t = ElementTable::enumerate(&spec, DEFAULT_CAP).unwrap();
        let mut bytes = t.to_cache_bytes();
        let i = pos % bytes.len();
        bytes[i] ^= flip;
        prop_assert!(ElementTable::from_cache_bytes(&spec, &bytes).is_err());
        prop_assert!(ElementTable::from_cache_bytes(&spec, &bytes[..i]).is_err());
    }
}
