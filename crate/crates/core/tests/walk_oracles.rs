use std::f64::consts::PI;

use proptest::prelude::*;
use splitwalk::spectral::reconstruct_distribution;
use splitwalk::{simulate, CoinParameter, Complex64, InitialCoin, WalkState};

fn coin_from_angles(mix: f64, phase_a: f64, phase_b: f64) -> InitialCoin {
    let (sa, ca) = mix.sin_cos();
    InitialCoin::new(
        Complex64::from_polar(ca, phase_a),
        Complex64::from_polar(sa, phase_b),
    )
    .unwrap()
}

#[test]
fn one_step_hand_distribution() {
    let p = CoinParameter::new(PI / 3.0).unwrap();
    let dist = simulate(&InitialCoin::up(), &p, 1).distribution();
    let want = [
        (-1, 3.0 / 16.0),
        (0, 1.0 / 16.0),
        (1, 3.0 / 16.0),
        (2, 9.0 / 16.0),
    ];
    assert_eq!(dist.len(), 4);
    for ((x, prob), (wx, wp)) in dist.entries().iter().zip(want) {
        assert_eq!(*x, wx);
        assert!((prob - wp).abs() <= 1e-15, "x={x}: {prob} vs {wp}");
    }
    assert!((dist.moment(1, 1.0) - 9.0 / 8.0).abs() < 1e-15);
}

#[test]
fn time_zero_is_a_point_mass() {
    let dist = WalkState::localized(&InitialCoin::symmetric()).distribution();
    assert_eq!(dist.len(), 1);
    assert_eq!(dist.entries()[0].0, 0);
    assert!((dist.entries()[0].1 - 1.0).abs() <= 1e-15);
}

#[test]
fn position_and_momentum_routes_agree() {
    let coins = [
        InitialCoin::symmetric(),
        InitialCoin::up(),
        coin_from_angles(0.4, 0.3, -1.1),
    ];
    for theta in [PI / 6.0, PI / 4.0, PI / 3.0, 0.3, 2.2] {
        let p = CoinParameter::new(theta).unwrap();
        for coin in &coins {
            let mut state = WalkState::localized(coin);
            for t in 0..=64u64 {
                let direct = state.distribution();
                let dual = reconstruct_distribution(t, coin, &p);
                let worst = (-2 * t as i64..=2 * t as i64)
                    .map(|x| (direct.probability(x) - dual.probability(x)).abs())
                    .fold(0.0, f64::max);
                assert!(worst <= 1e-10, "theta={theta} t={t}: {worst:e}");
                state.evolve_in_place(1, &p);
            }
        }
    }
}

#[test]
fn light_cone_is_exact() {
    let p = CoinParameter::new(1.1).unwrap();
    let state = simulate(&InitialCoin::symmetric(), &p, 37);
    assert_eq!(state.window(), (-74, 74));
    assert!(state
        .distribution()
        .entries()
        .iter()
        .all(|&(x, _)| x.abs() <= 74));
}

#[test]
fn runs_are_bit_identical() {
    let p = CoinParameter::new(0.77).unwrap();
    let coin = coin_from_angles(1.0, 0.2, 0.9);
    let a = simulate(&coin, &p, 300);
    let b = simulate(&coin, &p, 300);
    assert_eq!(a, b);
    let bits = |s: &WalkState| -> Vec<u64> {
        s.distribution()
            .entries()
            .iter()
            .map(|&(_, prob)| prob.to_bits())
            .collect()
    };
    assert_eq!(bits(&a), bits(&b));
}

#[test]
fn symmetric_start_has_small_mean() {
    // exact finite-t symmetry is not claimed; only the rescaled mean is checked
    for theta in [PI / 3.0, PI / 4.0] {
        let p = CoinParameter::new(theta).unwrap();
        let dist = simulate(&InitialCoin::symmetric(), &p, 400).distribution();
        assert!(dist.moment(1, 400.0).abs() < 1e-2, "theta={theta}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn evolution_is_unitary(
        theta in 0.0..PI,
        mix in 0.0..std::f64::consts::FRAC_PI_2,
        pa in -PI..PI,
        pb in -PI..PI,
        steps in 0u64..1000,
    ) {
        let p = CoinParameter::new(theta).unwrap();
        let state = simulate(&coin_from_angles(mix, pa, pb), &p, steps);
        prop_assert!((state.norm_sqr() - 1.0).abs() <= 1e-12);
        prop_assert!((state.distribution().total() - 1.0).abs() <= 1e-12);
        prop_assert_eq!(state.window(), (-2 * steps as i64, 2 * steps as i64));
    }
}
