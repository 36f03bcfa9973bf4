mod common;

use std::f64::consts::FRAC_1_SQRT_2;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use secgain_core::gleason::{
    f_c_from_gleason, gleason_coefficients, reconstruct, theorem4_condition,
};
use secgain_core::secrecy::{f_c, secrecy_gain};
use secgain_core::{load_catalog, GleasonDecomposition, WeightEnumerator};

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

fn even_entries() -> impl Iterator<Item = &'static secgain_core::CatalogEntry> {
    load_catalog().iter().filter(|e| e.kind.is_even())
}

#[test]
fn eighteen_nine_six_exact() {
    let e = load_catalog().iter().find(|e| e.name == "n18_efsd_d6").unwrap();
    let dec = gleason_coefficients(&e.we).unwrap();
    assert_eq!(dec.coeffs(), &[q(-29, 16), q(27, 8), q(-9, 16)]);
    assert_eq!(theorem4_condition(&dec), q(81, 32));
    let expected = WeightEnumerator::from_sparse(
        18,
        [(0, 1u64), (6, 102), (8, 153), (10, 153), (12, 102), (18, 1)],
    )
    .unwrap();
    assert_eq!(reconstruct(&dec).unwrap(), expected);
}

#[test]
fn round_trips_on_catalog() {
    for e in even_entries() {
        let dec = gleason_coefficients(&e.we).unwrap();
        let sum: BigRational = dec.coeffs().iter().sum();
        assert!(sum.is_one(), "{}", e.name);
        assert_eq!(reconstruct(&dec).unwrap(), e.we, "{}", e.name);
        assert_eq!(gleason_coefficients(&reconstruct(&dec).unwrap()).unwrap(), dec);
    }
}

#[test]
fn odd_entries_have_no_decomposition() {
    for e in load_catalog().iter().filter(|e| !e.kind.is_even()) {
        assert!(gleason_coefficients(&e.we).is_err(), "{}", e.name);
    }
}

#[test]
fn reduced_form_matches_direct_f_c() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for e in even_entries() {
        let dec = gleason_coefficients(&e.we).unwrap();
        for _ in 0..20 {
            let t = rng.gen_range(0.01..0.99);
            let a = f_c_from_gleason(&dec, t).unwrap();
            let b = f_c(&e.we, t).unwrap();
            assert!(rel(a, b) < 1e-10, "{} t = {t}: {a} vs {b}", e.name);
        }
    }
}

#[test]
fn positive_condition_means_maximum_at_one() {
    for e in even_entries() {
        let dec = gleason_coefficients(&e.we).unwrap();
        if theorem4_condition(&dec) > BigRational::zero() {
            let r = secrecy_gain(&e.we).unwrap();
            assert!((r.t_star - FRAC_1_SQRT_2).abs() <= 1e-6, "{}", e.name);
        }
    }
}

#[test]
fn small_decompositions() {
    let dec = GleasonDecomposition::from_coeffs(2, vec![q(1, 1)]).unwrap();
    assert_eq!(
        reconstruct(&dec).unwrap(),
        WeightEnumerator::from_sparse(2, [(0, 1u64), (2, 1)]).unwrap()
    );
    let dec = gleason_coefficients(&e8()).unwrap();
    assert_eq!(dec.coeffs(), &[q(0, 1), q(1, 1)]);
    assert_eq!(theorem4_condition(&dec), q(1, 1));
    assert!((f_c_from_gleason(&dec, FRAC_1_SQRT_2).unwrap() - 12.0).abs() < 1e-12);
}

#[test]
fn decomposition_round_trip_from_coefficients() {
    // Any integer combination a_0 g1^{n/2} + a_1 g1^{n/2-4} g2 with a_0 + a_1 = 1
    // reconstructs to integer coefficients and solves back to itself.
    for a1 in -3i64..=3 {
        let dec = GleasonDecomposition::from_coeffs(16, vec![q(1 - a1, 1), q(a1, 1), q(0, 1)]).unwrap();
        if let Ok(we) = reconstruct(&dec) {
            assert_eq!(gleason_coefficients(&we).unwrap(), dec);
        }
    }
}
