use monodromy::{PermSet, Permutation};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn all(n: usize) -> Vec<Permutation> {
    PermSet::symmetric(n).unwrap().iter().cloned().collect()
}

/// Sign from the inversion count, independent of cycle decomposition.
fn sign_even(p: &Permutation) -> bool {
    let v = p.images();
    let mut inv = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            inv += usize::from(v[i] > v[j]);
        }
    }
    inv % 2 == 0
}

proptest! {
    #[test]
    fn compose_is_associative(a in perm(6), b in perm(6), c in perm(6)) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_reverses_products(a in perm(6), b in perm(6)) {
        prop_assert_eq!(a.compose(&b).unwrap().inverse(), b.inverse().compose(&a.inverse()).unwrap());
    }

    #[test]
    fn commutators_are_even(a in perm(5), b in perm(5)) {
        prop_assert!(Permutation::commutator(&a, &b).unwrap().is_even());
    }

    #[test]
    fn parity_matches_inversions(a in perm(7)) {
        prop_assert_eq!(a.is_even(), sign_even(&a));
    }

    #[test]
    fn cycle_notation_round_trip(a in perm(8)) {
        prop_assert_eq!(Permutation::parse_cycles(&a.to_string(), 8).unwrap(), a);
    }

    #[test]
    fn order_is_the_first_identity_power(a in perm(7)) {
        let k = a.order() as i64;
        prop_assert!(a.pow(k).is_identity());
        for j in 1..k {
            prop_assert!(!a.pow(j).is_identity());
        }
    }
}

#[test]
fn commutators_even_exhaustive_n4() {
    let s4 = all(4);
    for a in &s4 {
        for b in &s4 {
            assert!(Permutation::commutator(a, b).unwrap().is_even());
        }
    }
}

#[test]
fn closure_of_symmetric_is_alternating() {
    for n in 3..=5 {
        let closure = PermSet::symmetric(n).unwrap().commutator_closure_step().unwrap();
        let even: Vec<Permutation> = all(n).into_iter().filter(sign_even).collect();
        assert_eq!(closure.len(), even.len());
        assert!(even.iter().all(|p| closure.contains(p)));
    }
}

#[test]
fn element_orders_divide_group_order() {
    for n in 2..=5 {
        for g in [PermSet::symmetric(n).unwrap(), PermSet::alternating(n).unwrap()] {
            let order = g.len() as u64;
            assert!(g.iter().all(|p| order.is_multiple_of(p.order())));
        }
    }
}

#[test]
fn abelian_and_metabelian_levels() {
    let cyclic = PermSet::new(5, [Permutation::parse_cycles("(1 2 3 4 5)", 5).unwrap()])
        .unwrap()
        .generate()
        .unwrap();
    assert_eq!(cyclic.derived_depth_to_trivial(10).unwrap(), Some(1));
    let s3 = PermSet::symmetric(3).unwrap();
    assert_eq!(s3.derived_depth_to_trivial(10).unwrap(), Some(2));
    assert_eq!(PermSet::symmetric(4).unwrap().derived_depth_to_trivial(10).unwrap(), Some(3));
}

#[test]
fn non_commuting_iterated_commutators_exist() {
    // Two non-commuting elements of the second commutator closure of S5.
    let second = PermSet::symmetric(5)
        .unwrap()
        .commutator_closure_step()
        .unwrap()
        .commutator_closure_step()
        .unwrap();
    let found = second.iter().any(|x| {
        second
            .iter()
            .any(|y| x.compose(y).unwrap() != y.compose(x).unwrap())
    });
    assert!(found);
}
