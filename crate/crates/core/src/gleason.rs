//! Gleason decomposition of even formally self-dual enumerators,
//! `W = sum_r a_r g1^{n/2 - 4r} g2^r` with `g1 = x^2 + y^2` and
//! `g2 = x^8 + 14 x^4 y^4 + y^8`, solved in exact rationals.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gf2code::{is_formally_self_dual, WeightEnumerator};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GleasonDecomposition {
    n: usize,
    coeffs: Vec<BigRational>,
}

impl GleasonDecomposition {
    /// Checks the shape: `n` even, `floor(n/8) + 1` coefficients summing to 1.
    pub fn from_coeffs(n: usize, coeffs: Vec<BigRational>) -> Result<Self> {
        if n == 0 || n % 2 == 1 {
            return Err(Error::domain("n", format!("expected a positive even length, got {n}")));
        }
        if coeffs.len() != n / 8 + 1 {
            return Err(Error::domain(
                "coeffs",
                format!("length {n} needs {} coefficients, got {}", n / 8 + 1, coeffs.len()),
            ));
        }
        let sum: BigRational = coeffs.iter().sum();
        if !sum.is_one() {
            return Err(Error::domain("coeffs", format!("coefficients sum to {sum}, not 1")));
        }
        Ok(GleasonDecomposition { n, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `a_0 .. a_{floor(n/8)}`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
}

fn binom(p: i64, q: i64) -> BigInt {
    if q < 0 || p < q {
        return BigInt::zero();
    }
    let q = q.min(p - q);
    let mut acc = BigInt::one();
    for i in 0..q {
        acc = acc * (p - i) / (i + 1);
    }
    acc
}

/// Coefficient of `x^{n-w} y^w` in `g1^{n/2-4r} g2^r`, expanding
/// `g2 = (x^4 + 7 y^4)^2 - 48 y^8` binomially:
/// `sum_{2j + 8h + 4l = w} 7^l (-48)^h C(n/2-4r, j) C(r, h) C(2r-2h, l)`.
fn system_entry(n: usize, w: usize, r: usize) -> BigInt {
    let (n, w, r) = (n as i64, w as i64, r as i64);
    let mut total = BigInt::zero();
    for h in 0..=r {
        for l in 0..=(2 * r - 2 * h) {
            let rest = w - 8 * h - 4 * l;
            if rest < 0 || rest % 2 == 1 {
                continue;
            }
            let j = rest / 2;
            let term = BigInt::from(7).pow(l as u32)
                * BigInt::from(-48).pow(h as u32)
                * binom(n / 2 - 4 * r, j)
                * binom(r, h)
                * binom(2 * r - 2 * h, l);
            total += term;
        }
    }
    total
}

fn to_rational(a: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(a.clone()))
}

/// Solves for `a_r` from the even-weight coefficients. Rows are taken in
/// order `w = 0, 2, 4, ...` while they add rank; every row is then checked.
pub fn gleason_coefficients(we: &WeightEnumerator) -> Result<GleasonDecomposition> {
    let n = we.n();
    if n % 2 == 1 || !we.is_even() || !is_formally_self_dual(we) {
        return Err(Error::NotEvenFormallySelfDual);
    }
    let unknowns = n / 8 + 1;
    let row = |w: usize| -> Vec<BigRational> {
        (0..unknowns)
            .map(|r| BigRational::from_integer(system_entry(n, w, r)))
            .collect()
    };

    // Reduced row echelon form, grown one equation at a time.
    let mut basis: Vec<(usize, Vec<BigRational>, BigRational)> = Vec::new();
    for w in (0..=n).step_by(2) {
        if basis.len() == unknowns {
            break;
        }
        let mut lhs = row(w);
        let mut rhs = to_rational(we.coeff(w));
        for (p, brow, brhs) in &basis {
            if !lhs[*p].is_zero() {
                let f = lhs[*p].clone();
                for (x, b) in lhs.iter_mut().zip(brow) {
                    *x -= &f * b;
                }
                rhs -= &f * brhs;
            }
        }
        let Some(p) = lhs.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        let pivot = lhs[p].clone();
        lhs.iter_mut().for_each(|x| *x /= &pivot);
        rhs /= &pivot;
        for (_, brow, brhs) in basis.iter_mut() {
            if !brow[p].is_zero() {
                let f = brow[p].clone();
                for (x, b) in brow.iter_mut().zip(&lhs) {
                    *x -= &f * b;
                }
                *brhs -= &f * &rhs;
            }
        }
        basis.push((p, lhs, rhs));
    }
    if basis.len() < unknowns {
        return Err(Error::Internal(format!(
            "Gleason system for n = {n} has rank {} < {unknowns}",
            basis.len()
        )));
    }
    let mut coeffs = vec![BigRational::zero(); unknowns];
    for (p, _, value) in basis {
        coeffs[p] = value;
    }
    for w in (0..=n).step_by(2) {
        let lhs: BigRational = row(w).iter().zip(&coeffs).map(|(m, a)| m * a).sum();
        if lhs != to_rational(we.coeff(w)) {
            return Err(Error::NotEvenFormallySelfDual);
        }
    }
    GleasonDecomposition::from_coeffs(n, coeffs)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_pow(base: &[BigRational], e: usize) -> Vec<BigRational> {
    (0..e).fold(vec![BigRational::one()], |acc, _| poly_mul(&acc, base))
}

/// Expands `sum_r a_r g1^{n/2-4r} g2^r` as a polynomial in `y^2` and returns
/// the enumerator it spells.
pub fn reconstruct(dec: &GleasonDecomposition) -> Result<WeightEnumerator> {
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    let g1 = [int(1), int(1)];
    let g2 = [int(1), int(0), int(14), int(0), int(1)];
    let half = dec.n / 2;
    let mut total = vec![BigRational::zero(); half + 1];
    for (r, a) in dec.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let term = poly_mul(&poly_pow(&g1, half - 4 * r), &poly_pow(&g2, r));
        for (t, c) in total.iter_mut().zip(term) {
            *t += a * c;
        }
    }
    let mut coeffs = vec![BigUint::zero(); dec.n + 1];
    for (j, c) in total.into_iter().enumerate() {
        if !c.is_integer() || c.is_negative() {
            return Err(Error::Internal(format!(
                "Gleason combination has coefficient {c} at y^{}",
                2 * j
            )));
        }
        coeffs[2 * j] = c.to_integer().to_biguint().expect("nonnegative");
    }
    WeightEnumerator::new(dec.n, coeffs)
}

/// `f_C(t) = 2^{n/2} sum_r a_r (t^4 - t^2 + 1)^r`.
pub fn f_c_from_gleason(dec: &GleasonDecomposition, t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::domain("t", format!("expected 0 < t < 1, got {t}")));
    }
    let h = t.powi(4) - t * t + 1.0;
    let sum: f64 = dec
        .coeffs
        .iter()
        .enumerate()
        .map(|(r, a)| a.to_f64().unwrap_or(f64::NAN) * h.powi(r as i32))
        .sum();
    Ok(2f64.powi((dec.n / 2) as i32) * sum)
}

/// `sum_{r >= 1} r a_r (3/4)^{r-1}`; a positive value places the maximum of
/// the secrecy function at `tau = 1`.
pub fn theorem4_condition(dec: &GleasonDecomposition) -> BigRational {
    let three_quarters = BigRational::new(BigInt::from(3), BigInt::from(4));
    let mut power = BigRational::one();
    let mut total = BigRational::zero();
    for (r, a) in dec.coeffs.iter().enumerate().skip(1) {
        total += BigRational::from_integer(BigInt::from(r)) * a * &power;
        power *= &three_quarters;
    }
    total
}

/// Whether [`theorem4_condition`] is strictly positive.
pub fn condition_positive(value: &BigRational) -> bool {
    value.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    fn e8() -> WeightEnumerator {
        WeightEnumerator::from_sparse(8, [(0, 1u64), (4, 14), (8, 1)]).unwrap()
    }

    #[test]
    fn e8_is_g2() {
        let dec = gleason_coefficients(&e8()).unwrap();
        assert_eq!(dec.coeffs(), &[q(0, 1), q(1, 1)]);
        assert_eq!(theorem4_condition(&dec), q(1, 1));
        assert_eq!(reconstruct(&dec).unwrap(), e8());
        let f = f_c_from_gleason(&dec, std::f64::consts::FRAC_1_SQRT_2).unwrap();
        assert!((f - 12.0).abs() < 1e-12);
    }

    #[test]
    fn g1_power() {
        for n in [2usize, 6, 10, 16] {
            let coeffs: Vec<u64> = (0..=n)
                .map(|w| if w % 2 == 0 { binom(n as i64 / 2, w as i64 / 2).try_into().unwrap() } else { 0 })
                .collect();
            let we = WeightEnumerator::from_u64(n, &coeffs).unwrap();
            let dec = gleason_coefficients(&we).unwrap();
            assert!(dec.coeffs()[0].is_one());
            assert!(dec.coeffs()[1..].iter().all(Zero::is_zero));
            assert_eq!(reconstruct(&dec).unwrap(), we);
        }
    }

    #[test]
    fn eighteen_nine_six() {
        let we = WeightEnumerator::from_sparse(
            18,
            [(0, 1u64), (6, 102), (8, 153), (10, 153), (12, 102), (18, 1)],
        )
        .unwrap();
        let dec = gleason_coefficients(&we).unwrap();
        assert_eq!(dec.coeffs(), &[q(-29, 16), q(27, 8), q(-9, 16)]);
        assert_eq!(theorem4_condition(&dec), q(81, 32));
        assert_eq!(reconstruct(&dec).unwrap(), we);
    }

    #[test]
    fn rejects_non_gleason_inputs() {
        let odd = WeightEnumerator::from_sparse(6, [(0, 1u64), (3, 4), (4, 3)]).unwrap();
        assert_eq!(gleason_coefficients(&odd), Err(Error::NotEvenFormallySelfDual));
        // Even, 2^3 words, but not MacWilliams-invariant.
        let skew = WeightEnumerator::from_sparse(6, [(0, 1u64), (2, 7)]).unwrap();
        assert_eq!(gleason_coefficients(&skew), Err(Error::NotEvenFormallySelfDual));
    }

    #[test]
    fn shape_checks() {
        assert!(GleasonDecomposition::from_coeffs(2, vec![q(1, 1)]).is_ok());
        assert!(GleasonDecomposition::from_coeffs(3, vec![q(1, 1)]).is_err());
        assert!(GleasonDecomposition::from_coeffs(8, vec![q(1, 1)]).is_err());
        assert!(GleasonDecomposition::from_coeffs(8, vec![q(1, 2), q(1, 3)]).is_err());
    }

    #[test]
    fn non_integer_combination_rejected() {
        let dec = GleasonDecomposition::from_coeffs(8, vec![q(2, 3), q(1, 3)]).unwrap();
        assert!(matches!(reconstruct(&dec), Err(Error::Internal(_))));
    }

    #[test]
    fn f_c_domain() {
        let dec = gleason_coefficients(&e8()).unwrap();
        assert!(f_c_from_gleason(&dec, 0.0).is_err());
        assert!(f_c_from_gleason(&dec, 1.0).is_err());
    }
}
