#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use secgain_core::{BinaryCode, WeightEnumerator};

pub fn example1_code() -> BinaryCode {
    BinaryCode::parse("6 3\n100110\n010011\n001101\n").unwrap()
}

pub fn example1() -> WeightEnumerator {
    WeightEnumerator::from_sparse(6, [(0, 1u64), (3, 4), (4, 3)]).unwrap()
}

pub fn e8_code() -> BinaryCode {
    BinaryCode::parse("8 4\n11110000\n00111100\n00001111\n01010101\n").unwrap()
}

pub fn e8() -> WeightEnumerator {
    WeightEnumerator::from_sparse(8, [(0, 1u64), (4, 14), (8, 1)]).unwrap()
}

pub fn repetition(n: usize) -> BinaryCode {
    BinaryCode::new(n, vec![(1u64 << n) - 1]).unwrap()
}

/// Uniform random `[n, k]` code: draw rows until `k` are independent.
pub fn random_code(rng: &mut ChaCha8Rng, n: usize, k: usize) -> BinaryCode {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    loop {
        let rows: Vec<u64> = (0..k).map(|_| rng.gen::<u64>() & mask).collect();
        if let Ok(code) = BinaryCode::new(n, rows) {
            return code;
        }
    }
}

pub fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}

pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (points - 1) as f64).exp())
        .collect()
}
