use monodromy::path::default_lasso_radius;
use monodromy::{
    evaluate_tower, is_cautious, CoeffPath, Combine, Complex, Lasso, ParamPath, RadicalFormula,
    TrackOptions,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rf(s: &str) -> RadicalFormula {
    RadicalFormula::parse(s).unwrap()
}

fn lasso(base: Complex, target: Complex, others: &[Complex], turns: i32) -> ParamPath {
    let r = default_lasso_radius(base, target, others);
    Lasso::new(base, target, r, turns).compile().unwrap()
}

proptest! {
    #[test]
    fn branch_count_law(re in -2.0..2.0f64, im in -2.0..2.0f64, k1 in 1u32..4, k2 in 1u32..4) {
        let a = Complex::new(re, im);
        prop_assume!(a.norm() > 0.1 && (a - 1.0).norm() > 0.1);
        let f = rf(&format!("z1^{k1} = a0 - 1; z2^{k2} = z1 + a0"));
        let t = evaluate_tower(&f, &[a]).unwrap();
        prop_assume!(!t.any_collapsed());
        prop_assert_eq!(t.top_values().len(), (k1 * k2) as usize);
    }

    #[test]
    fn formula_text_round_trip(k in 1u32..5, c in -3i32..3) {
        let f = rf(&format!("z1^{k} = a0 a1 - {c}; z2^2 = z1/(a0 + 2) - 1/2"));
        prop_assert_eq!(rf(&f.to_string()), f);
    }
}

#[test]
fn cautious_sum_theorem() {
    // Cautious for both summands: every winding around 0 and 1 is a
    // multiple of 6 in total, so both square and cube roots return.
    let f1 = rf("z1^2 = a0");
    let f2 = rf("z1^3 = a0 - 1");
    let bps = [Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)];
    let opts = TrackOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..4 {
        let base = Complex::new(rng.gen_range(0.2..0.8), rng.gen_range(0.6..1.2));
        let t0 = 2 * rng.gen_range(-1..=1);
        let t1 = 3 * rng.gen_range(-1..=1);
        let lp = lasso(base, bps[0], &bps, t0).concat(&lasso(base, bps[1], &bps, t1)).unwrap();
        let cp = CoeffPath::identity(lp);
        assert!(is_cautious(&f1, &cp, &opts).unwrap());
        assert!(is_cautious(&f2, &cp, &opts).unwrap());
        for op in [Combine::Sum, Combine::Difference, Combine::Product, Combine::Quotient] {
            let g = f1.compose(&f2, op).unwrap();
            assert!(is_cautious(&g, &cp, &opts).unwrap(), "{op:?} not cautious");
        }
    }
}

#[test]
fn cautious_power_theorem() {
    let f = rf("z1^2 = a0; z2^3 = z1");
    let opts = TrackOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let origin = [Complex::new(0.0, 0.0)];
    for _ in 0..20 {
        let base = Complex::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..std::f64::consts::TAU));
        let turns = rng.gen_range(-2..=2);
        let lp = lasso(base, origin[0], &origin, turns);
        let cp = CoeffPath::identity(lp.power(6).unwrap());
        assert!(is_cautious(&f, &cp, &opts).unwrap());
    }
}

#[test]
fn level_one_monodromy_is_cyclic() {
    let f = rf("z1^3 = a0^2 + 1");
    let opts = TrackOptions::default();
    let bps = [Complex::new(0.0, 1.0), Complex::new(0.0, -1.0)];
    let base = Complex::new(0.8, 0.1);
    let gen = monodromy::track_tower(&f, &CoeffPath::identity(lasso(base, bps[0], &bps, 1)), &opts).unwrap()[0].clone();
    assert_eq!(gen.cycle_type(), vec![3]);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let lp = lasso(base, bps[0], &bps, rng.gen_range(-2..=2))
            .concat(&lasso(base, bps[1], &bps, rng.gen_range(-2..=2)))
            .unwrap();
        let p = monodromy::track_tower(&f, &CoeffPath::identity(lp), &opts).unwrap()[0].clone();
        assert!((0..3).any(|k| gen.pow(k) == p));
    }
}
