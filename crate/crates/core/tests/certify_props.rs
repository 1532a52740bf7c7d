use monodromy::certify::{product_loop, verdict_from_orders, zero_loop};
use monodromy::tracker::roots_at;
use monodromy::{
    abel_certificate_at, monodromy_perm, monodromy_report, product_family, AbelVerdict, Complex,
    GroupName, PolyFamily, TrackOptions,
};

fn fam(s: &str) -> PolyFamily {
    PolyFamily::parse(s).unwrap()
}

#[test]
fn orders_do_not_depend_on_the_base() {
    let opts = TrackOptions::default();
    for s in ["z^4 - 4 z + a", "z^5 - 5 z + a"] {
        let f = fam(s);
        let bases = [Complex::new(0.0, 0.0), Complex::new(0.5, 0.7), Complex::new(-1.1, -0.3)];
        let orders: Vec<Vec<usize>> = bases
            .iter()
            .map(|&b| abel_certificate_at(&f, b, 10, &opts).unwrap().closure_orders)
            .collect();
        assert!(orders.windows(2).all(|w| w[0] == w[1]), "{s}: {orders:?}");
    }
}

#[test]
fn quintic_lassos_are_transpositions() {
    let r = monodromy_report(&fam("z^5 - 5 z + a"), Complex::new(0.0, 0.0), &TrackOptions::default()).unwrap();
    assert_eq!(r.lassos.len(), 4);
    for l in &r.lassos {
        assert_eq!(l.perm.cycle_type(), vec![2, 1, 1, 1]);
        assert!(r.group.contains(&l.perm));
    }
    assert_eq!(r.group_name(), GroupName::Symmetric);
}

#[test]
fn depth_bounds_match_known_formulas() {
    // Quadratic formula: one root level. Cardano: two root levels.
    let opts = TrackOptions::default();
    let quad = abel_certificate_at(&fam("z^2 - 2 z + a"), Complex::new(0.0, 0.0), 10, &opts).unwrap();
    assert_eq!(quad.verdict, AbelVerdict::MinDepthLowerBound(1));
    let cubic = abel_certificate_at(&fam("z^3 - 3 z + a"), Complex::new(0.0, 0.0), 10, &opts).unwrap();
    assert_eq!(cubic.closure_orders, vec![6, 3, 1]);
    let cardano = monodromy::RadicalFormula::parse("z1^2 = a0^2 - 4; z2^3 = (-a0 + z1)/2; z3 = z2 + 1/z2").unwrap();
    assert_eq!(cubic.verdict, AbelVerdict::MinDepthLowerBound(cardano.root_levels()));
}

#[test]
fn orders_are_non_increasing_and_verdict_consistent() {
    let opts = TrackOptions::default();
    for s in ["z^3 - 3 z + a", "z^4 + 2 (1 - 2 a) z^2 + 1", "z^3 - (a^2 + 1)"] {
        let f = fam(s);
        let base = monodromy::certify::default_base(&f).unwrap();
        let cert = abel_certificate_at(&f, base, 10, &opts).unwrap();
        assert!(cert.closure_orders.windows(2).all(|w| w[0] >= w[1]));
        assert_eq!(cert.verdict, verdict_from_orders(&cert.closure_orders));
    }
}

#[test]
fn product_family_cycle_types() {
    let opts = TrackOptions::default();
    let cases = [
        vec![1],
        vec![2],
        vec![4],
        vec![9],
        vec![2, 3],
        vec![1, 2, 2],
        vec![3, 3],
        vec![2, 3, 4],
        vec![1, 1, 2, 5],
        vec![1, 2, 3, 3],
        vec![2, 2, 2, 3],
    ];
    for parts in cases {
        let f = product_family(&parts).unwrap();
        let lp = product_loop(&parts);
        let start = roots_at(&f, lp.start().unwrap()).unwrap();
        let p = monodromy_perm(&f, &lp, &start, &opts).unwrap();
        let mut want = parts.clone();
        want.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(p.cycle_type(), want, "{parts:?}");
    }
    // Twice around the 4-cycle: two 2-cycles.
    let f = product_family(&[4]).unwrap();
    let lp = product_loop(&[4]).power(2).unwrap();
    let start = roots_at(&f, lp.start().unwrap()).unwrap();
    assert_eq!(monodromy_perm(&f, &lp, &start, &opts).unwrap().cycle_type(), vec![2, 2]);
}

#[test]
fn zero_loop_matches_analytic_loop() {
    let opts = TrackOptions::default();
    for parts in [vec![2], vec![2, 3], vec![3, 3], vec![2, 3, 4], vec![9]] {
        let f = product_family(&parts).unwrap();
        let lp = zero_loop(&f).unwrap();
        let start = roots_at(&f, lp.start().unwrap()).unwrap();
        let p = monodromy_perm(&f, &lp, &start, &opts).unwrap();
        let mut want = parts.clone();
        want.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(p.cycle_type(), want, "{parts:?}");
    }
}

#[test]
fn nested_family_report() {
    let f = fam("z^4 + 2 (1 - 2 a) z^2 + 1");
    let base = monodromy::certify::default_base(&f).unwrap();
    let r = monodromy_report(&f, base, &TrackOptions::default()).unwrap();
    assert!(r.lassos.iter().all(|l| r.group.contains(&l.perm)));
    assert!(r.group_order() >= 2);
}
