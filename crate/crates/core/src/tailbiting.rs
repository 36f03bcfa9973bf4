//! Tailbiting `[2k, k]` block codes from rate-1/2 convolutional codes.
//!
//! Row `i` of the generator matrix carries the interleaved taps
//! `g1_0 g2_0 g1_1 g2_1 ... g1_m g2_m` starting at column `2i`, wrapping modulo
//! `2k`. The weight enumerator is computed on the `2^m`-state trellis: one
//! forward pass of `k` sections per starting state, keeping only paths that
//! return to it.

use std::fmt;
use std::ops::AddAssign;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gf2code::{BinaryCode, WeightEnumerator, MAX_ENUMERATION_DIM, MAX_LENGTH};

/// Largest encoder memory the trellis accepts (`2^12` states).
pub const MAX_MEMORY: usize = 12;

/// Generator polynomials `(g1(D), g2(D))` of a rate-1/2 code. Bit `j` of each
/// mask is the coefficient of `D^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConvolutionalSpec {
    g1: u32,
    g2: u32,
    m: usize,
}

impl ConvolutionalSpec {
    pub fn from_masks(g1: u32, g2: u32) -> Result<Self> {
        if g1 & 1 == 0 || g2 & 1 == 0 {
            return Err(Error::InvalidConvolutional(
                "both generators need a nonzero constant term".into(),
            ));
        }
        let m = (31 - (g1 | g2).leading_zeros()) as usize;
        if m > MAX_MEMORY {
            return Err(Error::StateBudget {
                m,
                limit: MAX_MEMORY,
            });
        }
        Ok(ConvolutionalSpec { g1, g2, m })
    }

    /// From coefficient lists `g_{i,0} .. g_{i,m}`.
    pub fn from_bits(g1: &[u8], g2: &[u8]) -> Result<Self> {
        fn pack(bits: &[u8]) -> Result<u32> {
            if bits.len() > 32 {
                return Err(Error::InvalidConvolutional("polynomial too long".into()));
            }
            bits.iter().enumerate().try_fold(0u32, |acc, (j, &b)| match b {
                0 => Ok(acc),
                1 => Ok(acc | 1 << j),
                _ => Err(Error::InvalidConvolutional(format!("non-binary tap {b}"))),
            })
        }
        ConvolutionalSpec::from_masks(pack(g1)?, pack(g2)?)
    }

    /// Octal shorthand, e.g. `("7", "5")` for `(1 + D + D^2, 1 + D^2)`.
    pub fn from_octal(g1: &str, g2: &str) -> Result<Self> {
        let parse = |s: &str| {
            u32::from_str_radix(s.trim(), 8)
                .map_err(|_| Error::Parse(format!("invalid octal generator `{s}`")))
        };
        ConvolutionalSpec::from_masks(parse(g1)?, parse(g2)?)
    }

    pub fn g1(&self) -> u32 {
        self.g1
    }

    pub fn g2(&self) -> u32 {
        self.g2
    }

    /// Encoder memory, the larger generator degree.
    pub fn memory(&self) -> usize {
        self.m
    }

    /// `(g1_j, g2_j)` for `j = 0..=m`.
    pub fn taps(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        (0..=self.m).map(|j| ((self.g1 >> j & 1) as u64, (self.g2 >> j & 1) as u64))
    }

    fn check_length(&self, k: usize) -> Result<()> {
        if k < self.m + 1 {
            return Err(Error::TailbitingLength { k, m: self.m });
        }
        Ok(())
    }

    /// Whether the `k` tailbiting rows are independent, i.e.
    /// `gcd(g1, g2, D^k + 1) = 1` over GF(2).
    pub fn is_full_rank(&self, k: usize) -> bool {
        let g = poly_gcd(self.g1 as u64, self.g2 as u64);
        if g == 1 {
            return true;
        }
        let r = x_pow_mod(k, g) ^ 1;
        poly_gcd(g, r) == 1
    }
}

impl fmt::Display for ConvolutionalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:o}, {:o})", self.g1, self.g2)
    }
}

fn poly_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn poly_mod(mut a: u64, b: u64) -> u64 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_mod(a, b);
        a = b;
        b = r;
    }
    a
}

/// `D^k mod g` for `deg g <= 12`.
fn x_pow_mod(k: usize, g: u64) -> u64 {
    let mut acc = poly_mod(1, g);
    for _ in 0..k {
        acc = poly_mod(acc << 1, g);
    }
    acc
}

fn ensure_full_rank(spec: &ConvolutionalSpec, k: usize) -> Result<()> {
    if spec.is_full_rank(k) {
        Ok(())
    } else {
        Err(Error::InvalidConvolutional(format!(
            "tailbiting generator of {spec} has rank < k for k = {k}"
        )))
    }
}

fn check_block_length(k: usize) -> Result<()> {
    if 2 * k > MAX_LENGTH {
        return Err(Error::LengthLimit {
            n: 2 * k,
            limit: MAX_LENGTH,
        });
    }
    Ok(())
}

/// Generator matrix `G_tb` of the `[2k, k]` tailbiting code.
pub fn tailbiting_generator(spec: &ConvolutionalSpec, k: usize) -> Result<BinaryCode> {
    spec.check_length(k)?;
    check_block_length(k)?;
    ensure_full_rank(spec, k)?;
    let n = 2 * k;
    let rows = (0..k)
        .map(|i| {
            spec.taps().enumerate().fold(0u64, |row, (j, (a, b))| {
                let col = 2 * ((i + j) % k);
                row | a << col | b << (col + 1)
            })
        })
        .collect();
    BinaryCode::new(n, rows)
}

/// Parity-check matrix `H_tb`: row `i` carries the swapped pairs
/// `(g2_j, g1_j)` in block `i - j mod k`.
pub fn tailbiting_parity(spec: &ConvolutionalSpec, k: usize) -> Result<BinaryCode> {
    spec.check_length(k)?;
    check_block_length(k)?;
    ensure_full_rank(spec, k)?;
    let n = 2 * k;
    let rows = (0..k)
        .map(|i| {
            spec.taps().enumerate().fold(0u64, |row, (j, (a, b))| {
                let col = 2 * ((i + k - j) % k);
                row | b << col | a << (col + 1)
            })
        })
        .collect();
    BinaryCode::new(n, rows)
}

/// `G H^T = 0` over GF(2).
pub fn is_orthogonal(g: &BinaryCode, h: &BinaryCode) -> bool {
    g.rows()
        .iter()
        .all(|&a| h.rows().iter().all(|&b| (a & b).count_ones() % 2 == 0))
}

/// Work done by one trellis run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TrellisStats {
    /// Branch relaxations: `2^m` starts x `k` sections x `2^m` states x 2 inputs.
    pub branch_steps: u64,
}

/// Exact weight enumerator of the tailbiting code, `O(k 2^(2m))` branch steps.
pub fn trellis_enumerator(spec: &ConvolutionalSpec, k: usize) -> Result<WeightEnumerator> {
    trellis_enumerator_with_stats(spec, k).map(|(we, _)| we)
}

pub fn trellis_enumerator_with_stats(
    spec: &ConvolutionalSpec,
    k: usize,
) -> Result<(WeightEnumerator, TrellisStats)> {
    spec.check_length(k)?;
    if spec.m > MAX_MEMORY {
        return Err(Error::StateBudget {
            m: spec.m,
            limit: MAX_MEMORY,
        });
    }
    ensure_full_rank(spec, k)?;
    // Path counts never exceed 2^k, so u128 is exact below k = 128.
    let (coeffs, stats) = if k < 128 {
        let (c, s) = run_trellis::<u128>(spec, k);
        (c.into_iter().map(BigUint::from).collect(), s)
    } else {
        run_trellis::<BigUint>(spec, k)
    };
    let we = WeightEnumerator::new(2 * k, coeffs)?;
    if we.dimension() != Some(k) {
        return Err(Error::Internal(format!(
            "trellis counted {} paths, expected 2^{k}",
            we.total()
        )));
    }
    Ok((we, stats))
}

fn run_trellis<T>(spec: &ConvolutionalSpec, k: usize) -> (Vec<T>, TrellisStats)
where
    T: Clone + Zero + One + for<'a> AddAssign<&'a T>,
{
    let m = spec.m;
    let states = 1usize << m;
    let state_mask = states - 1;
    let n = 2 * k;
    // Register r = (state << 1) | input holds u_i at bit 0 and u_{i-j} at bit j.
    let branch: Vec<[(usize, usize); 2]> = (0..states)
        .map(|s| {
            [0usize, 1].map(|u| {
                let r = (s << 1 | u) as u32;
                let w = ((r & spec.g1).count_ones() & 1) + ((r & spec.g2).count_ones() & 1);
                (r as usize & state_mask, w as usize)
            })
        })
        .collect();

    let mut total = vec![T::zero(); n + 1];
    let mut cur = vec![vec![T::zero(); n + 1]; states];
    let mut next = vec![vec![T::zero(); n + 1]; states];
    let mut steps = 0u64;
    for start in 0..states {
        for poly in cur.iter_mut() {
            poly.iter_mut().for_each(|c| *c = T::zero());
        }
        cur[start][0] = T::one();
        for section in 0..k {
            let reach = 2 * section;
            for poly in next.iter_mut() {
                poly[..=reach + 2].iter_mut().for_each(|c| *c = T::zero());
            }
            for (s, poly) in cur.iter().enumerate() {
                for &(ns, w) in &branch[s] {
                    steps += 1;
                    let dst = &mut next[ns];
                    for (j, c) in poly[..=reach].iter().enumerate() {
                        if !c.is_zero() {
                            dst[j + w] += c;
                        }
                    }
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        for (t, c) in total.iter_mut().zip(&cur[start]) {
            *t += c;
        }
    }
    (
        total,
        TrellisStats {
            branch_steps: steps,
        },
    )
}

/// Isodual witness: the code generated by `H_tb` is the coordinate reversal of
/// the code generated by `G_tb`, and the two enumerators agree.
pub fn isodual_check(spec: &ConvolutionalSpec, k: usize) -> Result<bool> {
    let g = tailbiting_generator(spec, k)?;
    let h = tailbiting_parity(spec, k)?;
    if !is_orthogonal(&g, &h) || !h.same_code(&g.reversed()) {
        return Ok(false);
    }
    let wg = trellis_enumerator(spec, k)?;
    let wh = if k <= MAX_ENUMERATION_DIM {
        h.weight_enumerator()?
    } else {
        // H generates the dual of G (orthogonal, both rank k).
        crate::gf2code::macwilliams(&wg, k)?
    };
    Ok(wg == wh)
}

/// Free distance of the convolutional code: the lightest path that leaves the
/// zero state and returns to it (Dijkstra over the `2^m`-state trellis).
pub fn free_distance(spec: &ConvolutionalSpec) -> usize {
    let states = 1usize << spec.m;
    let mask = states - 1;
    let out_weight = |s: usize, u: usize| {
        let r = (s << 1 | u) as u32;
        (((r & spec.g1).count_ones() & 1) + ((r & spec.g2).count_ones() & 1)) as usize
    };
    let mut dist = vec![usize::MAX; states];
    let mut done = vec![false; states];
    let first = 1 & mask;
    let w0 = out_weight(0, 1);
    if spec.m == 0 {
        return w0;
    }
    dist[first] = w0;
    let mut best = usize::MAX;
    while let Some(s) = (0..states)
        .filter(|&s| s != 0 && !done[s] && dist[s] != usize::MAX)
        .min_by_key(|&s| dist[s])
    {
        if dist[s] >= best {
            break;
        }
        done[s] = true;
        for u in 0..2 {
            let ns = (s << 1 | u) & mask;
            let d = dist[s] + out_weight(s, u);
            if ns == 0 {
                best = best.min(d);
            } else if d < dist[ns] {
                dist[ns] = d;
            }
        }
    }
    best
}
