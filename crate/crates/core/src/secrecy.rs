//! Secrecy function `Xi(tau) = Theta_{nu Z^n}(i tau) / Theta_Lambda(i tau)`
//! of Construction A lattices and the secrecy gain.
//!
//! For a formally self-dual `[n, n/2]` code the lattice has volume 1 and
//! `1/Xi(tau) = 2^{-n/2} f_C(t)` with `f_C(t) = W_C(sqrt(1+t), sqrt(1-t))` and
//! `t = theta4^2 / theta3^2`, which increases from 0 to 1 with `tau`. The gain
//! is therefore `2^{n/2} / min_t f_C(t)`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gf2code::{is_formally_self_dual, macwilliams, WeightEnumerator};
use crate::gleason::{gleason_coefficients, theorem4_condition, GleasonDecomposition};
use crate::theta::{theta_construction_a, theta_zn, ThetaValues, MIN_TAU};

/// Interior grid size for the minimisation of `f_C`.
pub const GRID_POINTS: usize = 1024;

/// `|t* - 1/sqrt 2|` accepted as "maximum at `tau = 1`".
pub const CONJECTURE_TOL: f64 = 1e-6;

const GOLDEN_TOL: f64 = 1e-10;
const TAU_RANGE: (f64, f64) = (1e-3, 1e3);

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t < 1.0 {
        Ok(())
    } else {
        Err(Error::domain("t", format!("expected 0 < t < 1, got {t}")))
    }
}

/// `W_C(sqrt(p), sqrt(m))` with `p = 1 + t`, `m = 1 - t` passed separately so
/// callers can supply an accurate `1 - t`.
fn f_c_split(we: &WeightEnumerator, p: f64, m: f64) -> f64 {
    we.eval(p.sqrt(), m.sqrt())
}

/// `f_C(t) = sum_w A_w (1+t)^{(n-w)/2} (1-t)^{w/2}`.
pub fn f_c(we: &WeightEnumerator, t: f64) -> Result<f64> {
    check_t(t)?;
    Ok(f_c_split(we, 1.0 + t, 1.0 - t))
}

fn f_c_prime_unchecked(we: &WeightEnumerator, t: f64) -> f64 {
    let n = we.n() as i32;
    let (x, y) = ((1.0 + t).sqrt(), (1.0 - t).sqrt());
    we.support()
        .map(|(w, a)| {
            let a = num_traits::ToPrimitive::to_f64(a).unwrap_or(f64::INFINITY);
            let w = w as i32;
            let mut d = 0.0;
            if w < n {
                d += (n - w) as f64 / 2.0 * x.powi(n - w - 2) * y.powi(w);
            }
            if w > 0 {
                d -= w as f64 / 2.0 * x.powi(n - w) * y.powi(w - 2);
            }
            a * d
        })
        .sum()
}

/// Term-wise derivative of [`f_c`] in `t`.
pub fn f_c_prime(we: &WeightEnumerator, t: f64) -> Result<f64> {
    check_t(t)?;
    Ok(f_c_prime_unchecked(we, t))
}

/// `t(tau) = theta4(tau)^2 / theta3(tau)^2`. Below `1e-3` the value is taken
/// from `t(tau) = theta2(1/tau)^2 / theta3(1/tau)^2`.
pub fn t_of_tau(tau: f64) -> Result<f64> {
    if !tau.is_finite() || tau <= 0.0 {
        return Err(Error::domain("tau", format!("expected tau > 0, got {tau}")));
    }
    if tau < MIN_TAU {
        let v = ThetaValues::at(1.0 / tau)?;
        return Ok((v.theta2 / v.theta3).powi(2));
    }
    Ok(ThetaValues::at(tau)?.t())
}

/// Inverse of [`t_of_tau`] by bisection in `log tau` over `[1e-3, 1e3]`.
pub fn tau_of_t(t: f64) -> Result<f64> {
    check_t(t)?;
    let (mut lo, mut hi) = (TAU_RANGE.0.ln(), TAU_RANGE.1.ln());
    if t_of_tau(lo.exp())? > t || t_of_tau(hi.exp())? < t {
        return Err(Error::Internal(format!(
            "t = {t} is not bracketed by tau in [1e-3, 1e3]"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if t_of_tau(mid.exp())? < t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi)).exp())
}

/// `nu = 2^{(n - 2k) / (2n)}`, the scale making `nu Z^n` as dense as
/// `Lambda_A(C)` for an `[n, k]` code.
pub fn nu(n: usize, k: usize) -> f64 {
    2f64.powf((n as f64 - 2.0 * k as f64) / (2.0 * n as f64))
}

/// `Xi(tau)` as the ratio of theta series for an `[n, k]` code.
pub fn secrecy_function(we: &WeightEnumerator, k: usize, tau: f64) -> Result<f64> {
    let n = we.n();
    Ok(theta_zn(tau, n, nu(n, k))? / theta_construction_a(we, tau)?)
}

/// `Xi(tau) = 2^{n/2} / f_C(t(tau))` for a formally self-dual enumerator.
/// `1 - t` is formed from `theta3 - theta4` so the value stays accurate for
/// large `tau`; small `tau` is reflected.
pub fn secrecy_function_fsd(we: &WeightEnumerator, tau: f64) -> Result<f64> {
    if !is_formally_self_dual(we) {
        return Err(Error::NotFormallySelfDual);
    }
    if !tau.is_finite() || tau <= 0.0 {
        return Err(Error::domain("tau", format!("expected tau > 0, got {tau}")));
    }
    let tau = if tau < 1.0 { 1.0 / tau } else { tau };
    let v = ThetaValues::at(tau)?;
    let s3 = v.theta3 * v.theta3;
    let p = (s3 + v.theta4 * v.theta4) / s3;
    let m = v.theta3_minus_theta4 * (v.theta3 + v.theta4) / s3;
    Ok(2f64.powi((we.n() / 2) as i32) / f_c_split(we, p, m))
}

/// `Xi` at its symmetry point `tau = nu^{-2}`; equals `Xi(1)` when `k = n/2`.
pub fn weak_secrecy_gain(we: &WeightEnumerator, k: usize) -> Result<f64> {
    let n = we.n();
    if 2 * k == n && is_formally_self_dual(we) {
        return Ok(2f64.powi((n / 2) as i32) / f_c_split(we, 1.0 + FRAC_1_SQRT_2, 1.0 - FRAC_1_SQRT_2));
    }
    let nu = nu(n, k);
    secrecy_function(we, k, 1.0 / (nu * nu))
}

/// How the location of the maximum was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SecrecyMethod {
    /// Grid search plus golden-section refinement only.
    GridGolden,
    /// Even enumerator whose Gleason condition is positive, which proves the
    /// maximum sits at `tau = 1`; the numerics agree.
    GleasonCondition,
}

impl SecrecyMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SecrecyMethod::GridGolden => "grid_golden",
            SecrecyMethod::GleasonCondition => "gleason_condition",
        }
    }
}

impl fmt::Display for SecrecyMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SecrecyReport {
    pub n: usize,
    /// Strong secrecy gain `sup_tau Xi(tau)`.
    pub xi: f64,
    /// `Xi(1)`.
    pub weak_gain: f64,
    /// Minimiser of `f_C` on `(0, 1)`.
    pub t_star: f64,
    pub tau_star: f64,
    pub conjecture_verified: bool,
    pub method: SecrecyMethod,
    /// `f_C` is constant, so every `tau` is a maximiser.
    pub flat: bool,
    /// Sign changes of `f_C'` across the grid.
    pub sign_changes: usize,
    /// Root of `f_C'` when it changes sign exactly once.
    pub derivative_root: Option<f64>,
    /// Present for even enumerators.
    pub gleason: Option<GleasonDecomposition>,
    pub gleason_condition: Option<BigRational>,
}

impl SecrecyReport {
    /// `xi` rounded to three decimals, the precision of published tables.
    pub fn xi_rounded(&self) -> f64 {
        (self.xi * 1000.0).round() / 1000.0
    }
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > GOLDEN_TOL {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

fn bisect_root(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let fa_neg = f(a) < 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if (f(mid) < 0.0) == fa_neg {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Grid points `t_i = i / (GRID_POINTS + 1)`, `i = 1..=GRID_POINTS`.
pub fn t_grid() -> impl Iterator<Item = f64> {
    (1..=GRID_POINTS).map(|i| i as f64 / (GRID_POINTS + 1) as f64)
}

/// Strong and weak secrecy gain of `Lambda_A(C)` for a formally self-dual
/// enumerator, with evidence on where the maximum lies.
pub fn secrecy_gain(we: &WeightEnumerator) -> Result<SecrecyReport> {
    if !is_formally_self_dual(we) {
        return Err(Error::NotFormallySelfDual);
    }
    let n = we.n();
    let scale = 2f64.powi((n / 2) as i32);
    let f = |t: f64| f_c_split(we, 1.0 + t, 1.0 - t);

    let grid: Vec<f64> = t_grid().collect();
    let values: Vec<f64> = grid.iter().map(|&t| f(t)).collect();
    let (imin, fmin_grid) = values
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, v)| if v < best.1 { (i, v) } else { best });
    let fmax_grid = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let (gleason, gleason_condition) = if we.is_even() {
        let dec = gleason_coefficients(we)?;
        let cond = theorem4_condition(&dec);
        (Some(dec), Some(cond))
    } else {
        (None, None)
    };
    let method = match &gleason_condition {
        Some(c) if *c > BigRational::zero() => SecrecyMethod::GleasonCondition,
        _ => SecrecyMethod::GridGolden,
    };

    let weak_f = f(FRAC_1_SQRT_2);
    let weak_gain = scale / weak_f;

    if fmax_grid - fmin_grid <= 1e-12 * fmax_grid {
        return Ok(SecrecyReport {
            n,
            xi: weak_gain,
            weak_gain,
            t_star: FRAC_1_SQRT_2,
            tau_star: 1.0,
            conjecture_verified: false,
            method,
            flat: true,
            sign_changes: 0,
            derivative_root: None,
            gleason,
            gleason_condition,
        });
    }

    let step = 1.0 / (GRID_POINTS + 1) as f64;
    let lo = step * imin as f64;
    let hi = step * (imin + 2) as f64;
    let golden = golden_section(f, lo, hi);
    // Near the minimum f_C is flat to within rounding, so golden section only
    // pins t* to ~1e-8; when f_C' brackets a root on the same interval, its
    // bisection root is the sharper estimate.
    let d = |t: f64| f_c_prime_unchecked(we, t);
    let t_star = if lo > 0.0 && hi < 1.0 && d(lo) < 0.0 && d(hi) > 0.0 {
        bisect_root(d, lo, hi)
    } else {
        golden
    };
    let f_star = f(t_star).min(fmin_grid).min(weak_f);

    let derivs: Vec<f64> = grid.iter().map(|&t| f_c_prime_unchecked(we, t)).collect();
    let mut sign_changes = 0;
    let mut bracket = None;
    let mut last: Option<(usize, bool)> = None;
    for (i, &d) in derivs.iter().enumerate() {
        if d == 0.0 {
            continue;
        }
        let neg = d < 0.0;
        if let Some((j, prev)) = last {
            if prev != neg {
                sign_changes += 1;
                bracket = Some((grid[j], grid[i]));
            }
        }
        last = Some((i, neg));
    }
    let derivative_root = match (sign_changes, bracket) {
        (1, Some((a, b))) => Some(bisect_root(|t| f_c_prime_unchecked(we, t), a, b)),
        _ => None,
    };
    let conjecture_verified =
        (t_star - FRAC_1_SQRT_2).abs() <= CONJECTURE_TOL && sign_changes == 1;
    Ok(SecrecyReport {
        n,
        xi: scale / f_star,
        weak_gain,
        t_star,
        tau_star: tau_of_t(t_star)?,
        conjecture_verified,
        method,
        flat: false,
        sign_changes,
        derivative_root,
        gleason,
        gleason_condition,
    })
}

/// Log-spaced `tau` grid on `[0.1, 10]`.
fn symmetry_grid() -> impl Iterator<Item = f64> {
    const POINTS: usize = 201;
    (0..POINTS).map(|i| 10f64.powf(-1.0 + 2.0 * i as f64 / (POINTS - 1) as f64))
}

/// Largest deviation from the secrecy-function symmetries over
/// `tau in [0.1, 10]`: `Xi(tau) = Xi_dual(1/tau)` for every code, and
/// `Xi(tau) = Xi(1/tau)` when the enumerator is formally self-dual.
pub fn verify_symmetry(we: &WeightEnumerator, k: usize) -> Result<f64> {
    let n = we.n();
    let dual = macwilliams(we, k)?;
    let fsd = 2 * k == n && dual == *we;
    let mut worst = 0f64;
    for tau in symmetry_grid() {
        let lhs = secrecy_function(we, k, tau)?;
        let rhs = secrecy_function(&dual, n - k, 1.0 / tau)?;
        worst = worst.max((lhs - rhs).abs());
        if fsd {
            let a = secrecy_function_fsd(we, tau)?;
            let b = secrecy_function(we, k, 1.0 / tau)?;
            worst = worst.max((lhs - b).abs()).max((a - lhs).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1() -> WeightEnumerator {
        WeightEnumerator::from_sparse(6, [(0, 1u64), (3, 4), (4, 3)]).unwrap()
    }

    fn e8() -> WeightEnumerator {
        WeightEnumerator::from_sparse(8, [(0, 1u64), (4, 14), (8, 1)]).unwrap()
    }

    #[test]
    fn example1_closed_form() {
        let we = example1();
        for t in [0.3, FRAC_1_SQRT_2, 0.9] {
            let closed = 4.0 * (1.0 + t.powi(3) + (1.0 - t * t).powf(1.5));
            assert!((f_c(&we, t).unwrap() - closed).abs() < 1e-12 * closed);
        }
        let d = f_c_prime(&we, 0.5).unwrap();
        let closed = 12.0 * 0.5 * (0.5 - 0.75f64.sqrt());
        assert!((d - closed).abs() < 1e-9);
    }

    #[test]
    fn e8_values() {
        let we = e8();
        assert!((f_c(&we, FRAC_1_SQRT_2).unwrap() - 12.0).abs() < 1e-12);
        assert!((secrecy_function(&we, 4, 1.0).unwrap() - 4.0 / 3.0).abs() < 1e-9);
        let r = secrecy_gain(&we).unwrap();
        assert!((r.xi - 4.0 / 3.0).abs() < 1e-12);
        assert!(r.conjecture_verified);
        assert_eq!(r.method, SecrecyMethod::GleasonCondition);
    }

    #[test]
    fn integer_lattice_is_neutral() {
        // C = F_2^n gives Lambda_A = Z^n / sqrt(2), and nu = 2^{-1/2}.
        let n = 3;
        let coeffs: Vec<u64> = vec![1, 3, 3, 1];
        let we = WeightEnumerator::from_u64(n, &coeffs).unwrap();
        for tau in [0.2, 1.0, 3.0] {
            assert!((secrecy_function(&we, n, tau).unwrap() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn zero_code_f_c() {
        let we = WeightEnumerator::from_sparse(4, [(0, 1u64)]).unwrap();
        for t in [0.1, 0.5, 0.9] {
            assert!((f_c(&we, t).unwrap() - (1.0 + t).powi(2)).abs() < 1e-14);
        }
    }

    #[test]
    fn example1_gain() {
        let r = secrecy_gain(&example1()).unwrap();
        assert_eq!(r.xi_rounded(), 1.172);
        assert!((r.t_star - FRAC_1_SQRT_2).abs() < 1e-6);
        assert!((r.tau_star - 1.0).abs() < 1e-5);
        assert!(r.conjecture_verified);
        assert_eq!(r.method, SecrecyMethod::GridGolden);
        assert!(r.gleason.is_none());
        assert!((r.derivative_root.unwrap() - FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn flat_enumerator() {
        let we = WeightEnumerator::from_sparse(6, [(0, 1u64), (2, 3), (4, 3), (6, 1)]).unwrap();
        let r = secrecy_gain(&we).unwrap();
        assert!(r.flat);
        assert!(!r.conjecture_verified);
        assert!((r.xi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_fsd() {
        let we = WeightEnumerator::from_sparse(4, [(0, 1u64), (4, 1)]).unwrap();
        assert_eq!(secrecy_gain(&we), Err(Error::NotFormallySelfDual));
        assert!(f_c(&we, 1.0).is_err());
        assert!(f_c_prime(&we, 0.0).is_err());
    }

    #[test]
    fn t_round_trip() {
        assert!((t_of_tau(1.0).unwrap() - FRAC_1_SQRT_2).abs() < 1e-12);
        for tau in [0.1, 1.0] {
            let back = tau_of_t(t_of_tau(tau).unwrap()).unwrap();
            assert!((back - tau).abs() < 1e-9, "tau = {tau}: {back}");
        }
        let back = tau_of_t(t_of_tau(7.0).unwrap()).unwrap();
        assert!((back - 7.0).abs() < 3e-8, "{back}");
    }

    #[test]
    fn reflected_t() {
        let t = t_of_tau(5e-4).unwrap();
        assert!((0.0..1e-100).contains(&t));
        let a = t_of_tau(0.5).unwrap();
        let b = t_of_tau(2.0).unwrap();
        assert!((a * a + b * b - 1.0).abs() < 1e-14);
    }

    #[test]
    fn e8_symmetry() {
        assert!(verify_symmetry(&e8(), 4).unwrap() < 1e-9);
    }

    #[test]
    fn weak_gain_general_code() {
        // [4, 1] repetition code: weak gain is Xi at nu^{-2}.
        let we = WeightEnumerator::from_sparse(4, [(0, 1u64), (4, 1)]).unwrap();
        let nu = nu(4, 1);
        let expected = secrecy_function(&we, 1, 1.0 / (nu * nu)).unwrap();
        assert_eq!(weak_secrecy_gain(&we, 1).unwrap(), expected);
        assert!(verify_symmetry(&we, 1).unwrap() < 1e-9);
    }
}
