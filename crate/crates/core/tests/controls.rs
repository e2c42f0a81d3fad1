use grrforge_core::budget::NodeBudget;
use grrforge_core::grr::{aut_gs_nontrivial, exhaustive_search, is_grr, Shape};
use grrforge_core::table::{ElementTable, DEFAULT_CAP};
use grrforge_core::{Family, Field, GroupSpec};
use num_bigint::BigUint;

fn table(family: Family, n: usize, field: Field) -> ElementTable {
    ElementTable::enumerate(&GroupSpec::matrix(family, n, field).unwrap(), DEFAULT_CAP).unwrap()
}

fn first_of_order(t: &ElementTable, k: u64) -> u32 {
    (1..t.len() as u32).find(|&i| t.order_of(i) == k).unwrap()
}

#[test]
fn psl27_has_no_cubic_grr() {
    let t = table(Family::PSL, 2, Field::prime(7).unwrap());
    let mixed = exhaustive_search(&t, Shape::Mixed, false, &mut NodeBudget::unlimited()).unwrap();
    let three = exhaustive_search(&t, Shape::ThreeInvolutions, false, &mut NodeBudget::unlimited()).unwrap();
    assert_eq!((mixed.candidates, three.candidates), (1533, 1330));
    for r in [mixed, three] {
        assert!(r.complete && r.witnesses.is_empty() && r.unknown == 0);
    }
}

#[test]
fn psl211_has_three_involution_grr() {
    let t = table(Family::PSL, 2, Field::prime(11).unwrap());
    assert_eq!((t.len(), t.involutions().len()), (660, 55));
    let r = exhaustive_search(&t, Shape::ThreeInvolutions, true, &mut NodeBudget::unlimited()).unwrap();
    assert_eq!(r.witnesses.len(), 1);
    let s = &r.witnesses[0];
    assert!(!aut_gs_nontrivial(&t, s).unwrap());
}

#[test]
fn sl42_order_seven_has_grr() {
    let t = table(Family::SL, 4, Field::binary(1).unwrap());
    let x = first_of_order(&t, 7);
    let y = t
        .involutions()
        .iter()
        .copied()
        .find(|&y| is_grr(&t, x, y, &mut NodeBudget::unlimited()).unwrap().is_grr)
        .expect("a GRR witness");
    let v = is_grr(&t, x, y, &mut NodeBudget::unlimited()).unwrap();
    assert_eq!(v.aut_order, Some(BigUint::from(20160u32)));
    assert!(!aut_gs_nontrivial(&t, &[x, t.inv(x), y]).unwrap());
}

// all elements of order 5 are conjugate in A8, so one x settles the question
#[test]
fn sl42_order_five_has_no_grr() {
    let t = table(Family::SL, 4, Field::binary(1).unwrap());
    let x = first_of_order(&t, 5);
    let mut generating = 0;
    for &y in t.involutions() {
        let v = is_grr(&t, x, y, &mut NodeBudget::unlimited()).unwrap();
        if v.generates {
            generating += 1;
            assert_eq!(v.aut_order, Some(BigUint::from(40320u32)));
            assert!(aut_gs_nontrivial(&t, &[x, t.inv(x), y]).unwrap());
        }
        assert!(!v.is_grr);
    }
    assert_eq!(generating, 60);
}

#[test]
fn budget_exhaustion_is_reported() {
    let t = table(Family::SL, 4, Field::binary(1).unwrap());
    let x = first_of_order(&t, 7);
    let y = t
        .involutions()
        .iter()
        .copied()
        .find(|&y| t.generates(&[x, y]).unwrap())
        .unwrap();
    let v = is_grr(&t, x, y, &mut NodeBudget::new(1)).unwrap();
    assert!(v.generates && v.budget_exceeded && !v.is_grr && v.aut_order.is_none());
}
