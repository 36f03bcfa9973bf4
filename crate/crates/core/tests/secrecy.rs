mod common;

use std::f64::consts::FRAC_1_SQRT_2;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use secgain_core::gf2code::is_formally_self_dual;
use secgain_core::secrecy::{
    f_c, f_c_prime, secrecy_function, secrecy_function_fsd, secrecy_gain, t_of_tau, tau_of_t,
    verify_symmetry, SecrecyMethod,
};
use secgain_core::{load_catalog, BinaryCode, WeightEnumerator};

#[test]
fn theta_ratio_and_reduced_form_agree() {
    for e in load_catalog() {
        for tau in [0.25, 0.5, 1.0, 2.0, 4.0] {
            let a = secrecy_function(&e.we, e.k, tau).unwrap();
            let b = secrecy_function_fsd(&e.we, tau).unwrap();
            assert!(rel(a, b) < 1e-9, "{} tau = {tau}: {a} vs {b}", e.name);
        }
    }
}

#[test]
fn reflection_symmetry_on_catalog() {
    for e in load_catalog() {
        for tau in log_grid(0.1, 10.0, 41) {
            let a = secrecy_function(&e.we, e.k, tau).unwrap();
            let b = secrecy_function(&e.we, e.k, 1.0 / tau).unwrap();
            assert!((a - b).abs() < 1e-9, "{} tau = {tau}", e.name);
        }
    }
}

#[test]
fn gain_dominates_sampled_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for e in load_catalog() {
        let r = secrecy_gain(&e.we).unwrap();
        assert!(r.xi >= r.weak_gain - 1e-9, "{}", e.name);
        if r.conjecture_verified {
            assert!((r.t_star - FRAC_1_SQRT_2).abs() <= 1e-6);
        }
        for _ in 0..50 {
            let tau = 10f64.powf(rng.gen_range(-1.5..1.5));
            let xi = secrecy_function(&e.we, e.k, tau).unwrap();
            assert!(r.xi >= xi * (1.0 - 1e-12), "{} tau = {tau}", e.name);
        }
    }
}

#[test]
fn t_of_tau_increasing_and_bounded() {
    // Beyond tau ~ 12, 1 - t < 2^-53 and t rounds to 1.
    let ts: Vec<f64> = log_grid(1e-2, 10.0, 200)
        .into_iter()
        .map(|tau| t_of_tau(tau).unwrap())
        .collect();
    assert!(ts.iter().all(|&t| t > 0.0 && t < 1.0));
    assert!(ts.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn example1_sign_analysis() {
    let we = example1();
    for i in 1..=100 {
        let left = FRAC_1_SQRT_2 * i as f64 / 101.0;
        let right = FRAC_1_SQRT_2 + (1.0 - FRAC_1_SQRT_2) * i as f64 / 101.0;
        assert!(f_c_prime(&we, left).unwrap() < 0.0, "t = {left}");
        assert!(f_c_prime(&we, right).unwrap() > 0.0, "t = {right}");
    }
}

#[test]
fn derivative_matches_finite_differences() {
    let h = 1e-6;
    for e in load_catalog() {
        for t in [0.2, FRAC_1_SQRT_2, 0.9] {
            let d = f_c_prime(&e.we, t).unwrap();
            let fd = (f_c(&e.we, t + h).unwrap() - f_c(&e.we, t - h).unwrap()) / (2.0 * h);
            let scale = f_c(&e.we, t).unwrap();
            assert!((d - fd).abs() <= 1e-5 * d.abs().max(scale), "{} t = {t}: {d} vs {fd}", e.name);
        }
    }
}

#[test]
fn even_entries_stationary_at_symmetry_point() {
    for e in load_catalog().iter().filter(|e| e.we.is_even()) {
        let d = f_c_prime(&e.we, FRAC_1_SQRT_2).unwrap();
        let scale = f_c(&e.we, FRAC_1_SQRT_2).unwrap();
        assert!(d.abs() < 1e-9 * scale.max(1.0), "{}: {d}", e.name);
    }
}

#[test]
fn published_examples() {
    let r = secrecy_gain(&example1()).unwrap();
    assert_eq!(format!("{:.3}", r.xi), "1.172");
    assert!(r.conjecture_verified);
    let r = secrecy_gain(&e8()).unwrap();
    assert!((r.xi - 4.0 / 3.0).abs() < 1e-12);
    assert_eq!(r.method, SecrecyMethod::GleasonCondition);
    assert!((secrecy_function(&e8(), 4, 1.0).unwrap() - 4.0 / 3.0).abs() < 1e-9);
}

#[test]
fn integer_lattice_constant() {
    // F_2^n lifts to Z^n / sqrt 2, which has the same density as nu Z^n.
    let full = BinaryCode::new(5, (0..5).map(|i| 1u64 << i).collect()).unwrap();
    let we = full.weight_enumerator().unwrap();
    for tau in log_grid(0.01, 100.0, 9) {
        assert!((secrecy_function(&we, 5, tau).unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn round_trip_t_tau() {
    for tau in [0.1, 1.0] {
        assert!((tau_of_t(t_of_tau(tau).unwrap()).unwrap() - tau).abs() < 1e-9);
    }
    // Near tau = 7, 1 - t is about 2e-9, so one ulp of t spans ~1.6e-8 in tau.
    assert!((tau_of_t(t_of_tau(7.0).unwrap()).unwrap() - 7.0).abs() < 3e-8);
}

#[test]
fn symmetry_deviation() {
    assert!(verify_symmetry(&e8(), 4).unwrap() < 1e-9);
    let ten = load_catalog().iter().find(|e| e.name == "n10_ofsd_d4").unwrap();
    assert!(verify_symmetry(&ten.we, ten.k).unwrap() < 1e-9);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let code = random_code(&mut rng, 6, 2);
        let we = code.weight_enumerator().unwrap();
        assert!(verify_symmetry(&we, 2).unwrap() < 1e-8);
    }
}

#[test]
fn non_fsd_rejected() {
    let we = WeightEnumerator::from_sparse(6, [(0, 1u64), (6, 1)]).unwrap();
    assert!(!is_formally_self_dual(&we));
    assert_eq!(
        secrecy_gain(&we).unwrap_err().to_string(),
        "secrecy-gain reduction requires a formally self-dual enumerator"
    );
}
