//! Jacobi theta functions at `z = i tau` and theta series of Construction A
//! lattices `(C + 2Z^n) / sqrt(2)`.
//!
//! The series are summed directly for `tau >= 1`, where the nome is at most
//! `e^-pi`. Below 1 the modular transformation moves the evaluation point to
//! `1/tau`; this keeps `theta4` accurate where its alternating series would
//! cancel to nothing.

use crate::error::{Error, Result};
use crate::gf2code::{BinaryCode, WeightEnumerator};

/// Smallest `tau` accepted; below it use `Xi(tau) = Xi(1/tau)`.
pub const MIN_TAU: f64 = 1e-3;

/// Largest dimension for [`direct_lattice_theta`].
pub const ORACLE_MAX_DIM: usize = 10;

const REL_CUTOFF: f64 = 1e-17;

fn check_tau(tau: f64) -> Result<()> {
    if !tau.is_finite() || tau <= 0.0 {
        return Err(Error::domain("tau", format!("expected tau > 0, got {tau}")));
    }
    if tau < MIN_TAU {
        return Err(Error::UseReflection(tau));
    }
    Ok(())
}

/// Sums `sum_{m >= 0} sign(m) q^{e(m)}` until the next term drops below
/// `REL_CUTOFF` times the running sum or underflows.
fn series(tau: f64, first: f64, exponent: impl Fn(u32) -> f64, alternating: bool) -> f64 {
    let mut sum = first;
    let mut m = 1u32;
    loop {
        let term = (-std::f64::consts::PI * tau * exponent(m)).exp();
        if term == 0.0 || term < REL_CUTOFF * sum.abs() {
            return sum;
        }
        if alternating && m % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        m += 1;
    }
}

fn series2(tau: f64) -> f64 {
    // 2 sum_{m >= 0} q^{(m + 1/2)^2}
    let head = (-std::f64::consts::PI * tau / 4.0).exp();
    2.0 * series(tau, head, |m| (m as f64 + 0.5).powi(2), false)
}

fn series3(tau: f64) -> f64 {
    1.0 + 2.0 * series(tau, 0.0, |m| (m as f64).powi(2), false)
}

fn series4(tau: f64) -> f64 {
    1.0 + 2.0 * series(tau, 0.0, |m| (m as f64).powi(2), true)
}

/// `theta3 - theta4 = 4 sum_{m odd} q^{m^2}`, free of cancellation.
fn series3_minus_4(tau: f64) -> f64 {
    let head = (-std::f64::consts::PI * tau).exp();
    4.0 * series(tau, head, |m| (2.0 * m as f64 + 1.0).powi(2), false)
}

/// The three theta values and `theta3 - theta4` at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaValues {
    pub tau: f64,
    pub theta2: f64,
    pub theta3: f64,
    pub theta4: f64,
    pub theta3_minus_theta4: f64,
}

impl ThetaValues {
    pub fn at(tau: f64) -> Result<Self> {
        check_tau(tau)?;
        if tau >= 1.0 {
            return Ok(ThetaValues {
                tau,
                theta2: series2(tau),
                theta3: series3(tau),
                theta4: series4(tau),
                theta3_minus_theta4: series3_minus_4(tau),
            });
        }
        let s = 1.0 / tau;
        let scale = s.sqrt();
        let (t2, t3, t4) = (series2(s), series3(s), series4(s));
        Ok(ThetaValues {
            tau,
            theta2: scale * t4,
            theta3: scale * t3,
            theta4: scale * t2,
            theta3_minus_theta4: scale * (t3 - t2),
        })
    }

    /// `t(tau) = theta4^2 / theta3^2`.
    pub fn t(&self) -> f64 {
        (self.theta4 / self.theta3).powi(2)
    }
}

pub fn theta2(tau: f64) -> Result<f64> {
    ThetaValues::at(tau).map(|v| v.theta2)
}

pub fn theta3(tau: f64) -> Result<f64> {
    ThetaValues::at(tau).map(|v| v.theta3)
}

pub fn theta4(tau: f64) -> Result<f64> {
    ThetaValues::at(tau).map(|v| v.theta4)
}

/// `Theta_{nu Z^n}(i tau) = theta3(nu^2 tau)^n`.
pub fn theta_zn(tau: f64, n: usize, nu: f64) -> Result<f64> {
    check_tau(tau)?;
    if n == 0 {
        return Err(Error::domain("n", "dimension must be at least 1"));
    }
    if !nu.is_finite() || nu <= 0.0 {
        return Err(Error::domain("nu", format!("expected nu > 0, got {nu}")));
    }
    Ok(theta3(nu * nu * tau)?.powi(n as i32))
}

/// Theta series of `Lambda_A(C)`: `W_C(theta3(2 tau), theta2(2 tau))`.
pub fn theta_construction_a(we: &WeightEnumerator, tau: f64) -> Result<f64> {
    check_tau(tau)?;
    let v = ThetaValues::at(2.0 * tau)?;
    Ok(we.eval(v.theta3, v.theta2))
}

/// Theta series of `Lambda_A(C)` for formally self-dual `C`:
/// `2^{-n/2} W_C(sqrt(theta3^2 + theta4^2), sqrt(theta3^2 - theta4^2))` at `tau`.
pub fn theta_construction_a_fsd(we: &WeightEnumerator, tau: f64) -> Result<f64> {
    let v = ThetaValues::at(tau)?;
    let sum = v.theta3 * v.theta3 + v.theta4 * v.theta4;
    let diff = v.theta3_minus_theta4 * (v.theta3 + v.theta4);
    if diff < 0.0 {
        return Err(Error::Internal(format!(
            "theta3^2 - theta4^2 = {diff} < 0 at tau = {tau}"
        )));
    }
    let scale = 2f64.powf(-(we.n() as f64) / 2.0);
    Ok(scale * we.eval(sum.sqrt(), diff.sqrt()))
}

/// Smallest squared radius (a multiple of 1/2) whose complement in the
/// lattice contributes less than `1e-12` to the theta series at `tau`.
///
/// Every point `(c + 2u)/sqrt(2)` of squared norm `s/2` has integer coordinates
/// `v = c + 2u` with `|v_i| <= sqrt(s)`, so the shell holds at most
/// `(2 sqrt(s) + 1)^n` points.
pub fn default_radius_sq(n: usize, tau: f64) -> f64 {
    let shell = |s: u64| {
        let count = (2.0 * (s as f64).sqrt() + 1.0).powi(n as i32);
        count * (-std::f64::consts::PI * tau * s as f64 / 2.0).exp()
    };
    let tail_from = |start: u64| {
        let mut total = 0.0;
        let mut s = start;
        loop {
            let term = shell(s);
            total += term;
            if term < 1e-20 * total.max(1e-300) && s > start + 8 {
                return total;
            }
            s += 1;
            if s > start + 1_000_000 {
                return f64::INFINITY;
            }
        }
    };
    let mut bound = 1u64;
    while tail_from(bound + 1) >= 1e-12 {
        bound += 1;
    }
    bound as f64 / 2.0
}

/// Brute-force lattice sum `sum exp(-pi tau |x|^2)` over the points of
/// `Lambda_A(C)` with `|x|^2 <= radius_sq`.
pub fn direct_lattice_theta(code: &BinaryCode, tau: f64, radius_sq: Option<f64>) -> Result<f64> {
    let n = code.n();
    if n > ORACLE_MAX_DIM {
        return Err(Error::OracleDimension {
            n,
            limit: ORACLE_MAX_DIM,
        });
    }
    check_tau(tau)?;
    let radius_sq = match radius_sq {
        Some(r) if r > 0.0 && r.is_finite() => r,
        Some(r) => return Err(Error::domain("radius", format!("expected radius^2 > 0, got {r}"))),
        None => default_radius_sq(n, tau),
    };
    // Work with integer |v|^2 = 2 |x|^2.
    let budget = (2.0 * radius_sq).floor() as i64;
    let weights: Vec<f64> = (0..=budget)
        .map(|s| (-std::f64::consts::PI * tau * s as f64 / 2.0).exp())
        .collect();
    let k = code.k();
    let mut total = 0.0;
    let mut word = 0u64;
    for i in 0..(1u64 << k) {
        if i > 0 {
            word ^= code.rows()[i.trailing_zeros() as usize];
        }
        total += sum_points(word, 0, n, budget, 0, &weights);
    }
    Ok(total)
}

fn sum_points(word: u64, coord: usize, n: usize, budget: i64, used: i64, weights: &[f64]) -> f64 {
    if coord == n {
        return weights[used as usize];
    }
    let parity = (word >> coord & 1) as i64;
    let mut total = 0.0;
    // v runs over integers of the given parity with used + v^2 <= budget.
    let mut v = parity;
    while used + v * v <= budget {
        let inner = sum_points(word, coord + 1, n, budget, used + v * v, weights);
        total += if v == 0 { inner } else { 2.0 * inner };
        v += 2;
    }
    total
}
