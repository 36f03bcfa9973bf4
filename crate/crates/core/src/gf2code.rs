//! Binary linear codes and their weight enumerators.
//!
//! Codewords are packed into a single `u64` (bit `j` is coordinate `j`), which
//! bounds the length at 64. Exhaustive enumeration walks all `2^k` messages in
//! Gray-code order, so each step costs one XOR and one popcount.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Longest code the packed-word representation supports.
pub const MAX_LENGTH: usize = 64;

/// Largest dimension enumerated by walking every message.
pub const MAX_ENUMERATION_DIM: usize = 28;

/// A binary `[n, k]` linear code held as a full-rank generator matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryCode {
    n: usize,
    rows: Vec<u64>,
}

impl BinaryCode {
    /// Builds a code from packed generator rows. Fails if a row has bits at or
    /// beyond column `n` or if the rows are linearly dependent.
    pub fn new(n: usize, rows: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGenerator("length must be positive".into()));
        }
        if n > MAX_LENGTH {
            return Err(Error::LengthLimit {
                n,
                limit: MAX_LENGTH,
            });
        }
        let mask = column_mask(n);
        if let Some(i) = rows.iter().position(|r| r & !mask != 0) {
            return Err(Error::InvalidGenerator(format!(
                "row {i} has entries beyond column {n}"
            )));
        }
        if rank(&rows) != rows.len() {
            return Err(Error::InvalidGenerator(format!(
                "{} rows have rank {}",
                rows.len(),
                rank(&rows)
            )));
        }
        Ok(BinaryCode { n, rows })
    }

    /// Builds a code from rows of 0/1 values.
    pub fn from_bit_rows(n: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let mut packed = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGenerator(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            let mut word = 0u64;
            for (j, &b) in row.iter().enumerate() {
                match b {
                    0 => {}
                    1 => word |= 1 << j,
                    _ => {
                        return Err(Error::InvalidGenerator(format!(
                            "row {i} has non-binary entry {b}"
                        )))
                    }
                }
            }
            packed.push(word);
        }
        BinaryCode::new(n, packed)
    }

    /// The `[n, 0]` code containing only the zero word.
    pub fn zero(n: usize) -> Result<Self> {
        BinaryCode::new(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// Packed generator rows.
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Row `i` as a string of `0`/`1` characters, column 0 first.
    pub fn row_string(&self, i: usize) -> String {
        word_string(self.rows[i], self.n)
    }

    /// Whether `word` lies in the row space.
    pub fn contains(&self, word: u64) -> bool {
        let basis = echelon(&self.rows);
        reduce(word, &basis) == 0
    }

    /// Row-space equality, independent of the particular generator matrices.
    pub fn same_code(&self, other: &BinaryCode) -> bool {
        self.n == other.n
            && self.k() == other.k()
            && other.rows.iter().all(|&r| self.contains(r))
            && self.rows.iter().all(|&r| other.contains(r))
    }

    /// The same code with coordinate `j` moved to `n - 1 - j`.
    pub fn reversed(&self) -> BinaryCode {
        let rows = self.rows.iter().map(|&r| reverse_word(r, self.n)).collect();
        BinaryCode { n: self.n, rows }
    }

    /// The dual code `{u : <u, v> = 0 for all v in C}`.
    pub fn dual(&self) -> Result<BinaryCode> {
        dual_code(self)
    }

    pub fn weight_enumerator(&self) -> Result<WeightEnumerator> {
        weight_enumerator(self)
    }

    /// Parses the text format: a header line `n k` followed by `k` lines of
    /// `n` characters from `{0,1}`. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty code file".into()))?;
        let mut fields = header.split_whitespace();
        let n = parse_usize(fields.next(), "n")?;
        let k = parse_usize(fields.next(), "k")?;
        if fields.next().is_some() {
            return Err(Error::Parse(format!("unexpected header `{header}`")));
        }
        if n > MAX_LENGTH {
            return Err(Error::LengthLimit {
                n,
                limit: MAX_LENGTH,
            });
        }
        let mut rows = Vec::with_capacity(k);
        for line in lines {
            if line.len() > MAX_LENGTH {
                return Err(Error::LengthLimit {
                    n: line.len(),
                    limit: MAX_LENGTH,
                });
            }
            if line.len() != n {
                return Err(Error::Parse(format!(
                    "row `{line}` has {} columns, header says {n}",
                    line.len()
                )));
            }
            let mut word = 0u64;
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => word |= 1 << j,
                    _ => return Err(Error::Parse(format!("invalid character `{ch}` in row"))),
                }
            }
            rows.push(word);
        }
        if rows.len() != k {
            return Err(Error::Parse(format!(
                "header says k = {k} but {} rows follow",
                rows.len()
            )));
        }
        BinaryCode::new(n, rows)
    }

    /// Inverse of [`BinaryCode::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.k());
        for i in 0..self.k() {
            out.push_str(&self.row_string(i));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.k()).map(|i| self.row_string(i)).collect();
        f.debug_struct("BinaryCode")
            .field("n", &self.n)
            .field("k", &self.k())
            .field("rows", &rows)
            .finish()
    }
}

fn parse_usize(field: Option<&str>, what: &str) -> Result<usize> {
    let s = field.ok_or_else(|| Error::Parse(format!("missing {what}")))?;
    s.parse()
        .map_err(|_| Error::Parse(format!("invalid {what} `{s}`")))
}

fn column_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn word_string(word: u64, n: usize) -> String {
    (0..n)
        .map(|j| if word >> j & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn reverse_word(word: u64, n: usize) -> u64 {
    word.reverse_bits() >> (64 - n)
}

/// Echelon basis: each vector has a distinct leading (lowest) bit that no other
/// basis vector contains.
fn echelon(rows: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::with_capacity(rows.len());
    for &r in rows {
        let v = reduce(r, &basis);
        if v != 0 {
            let pivot = v & v.wrapping_neg();
            for b in basis.iter_mut() {
                if *b & pivot != 0 {
                    *b ^= v;
                }
            }
            basis.push(v);
        }
    }
    basis
}

fn reduce(mut v: u64, basis: &[u64]) -> u64 {
    for &b in basis {
        let pivot = b & b.wrapping_neg();
        if v & pivot != 0 {
            v ^= b;
        }
    }
    v
}

/// Rank over GF(2) of a set of packed rows.
pub fn rank(rows: &[u64]) -> usize {
    echelon(rows).len()
}

/// The `[n, n-k]` dual code.
pub fn dual_code(code: &BinaryCode) -> Result<BinaryCode> {
    let n = code.n;
    let basis = echelon(&code.rows);
    if basis.len() != code.k() {
        return Err(Error::InvalidGenerator("rank deficient".into()));
    }
    let pivots: Vec<u32> = basis.iter().map(|b| b.trailing_zeros()).collect();
    let mut dual = Vec::with_capacity(n - basis.len());
    for free in 0..n as u32 {
        if pivots.contains(&free) {
            continue;
        }
        // x_free = 1 and every pivot coordinate chosen to cancel its row.
        let mut v = 1u64 << free;
        for (b, &p) in basis.iter().zip(&pivots) {
            if b >> free & 1 == 1 {
                v |= 1 << p;
            }
        }
        dual.push(v);
    }
    BinaryCode::new(n, dual)
}

/// Exhaustive weight enumerator by Gray-code walk over all messages.
pub fn weight_enumerator(code: &BinaryCode) -> Result<WeightEnumerator> {
    let k = code.k();
    if k > MAX_ENUMERATION_DIM {
        return Err(Error::EnumerationLimit {
            k,
            limit: MAX_ENUMERATION_DIM,
        });
    }
    let mut counts = vec![0u64; code.n + 1];
    let mut word = 0u64;
    counts[0] = 1;
    for i in 1u64..(1u64 << k) {
        word ^= code.rows[i.trailing_zeros() as usize];
        counts[word.count_ones() as usize] += 1;
    }
    Ok(WeightEnumerator {
        n: code.n,
        coeffs: counts.into_iter().map(BigUint::from).collect(),
    })
}

/// `W(x, y) = sum_w A_w x^(n-w) y^w` with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightEnumerator {
    n: usize,
    coeffs: Vec<BigUint>,
}

impl WeightEnumerator {
    /// `coeffs[w]` is `A_w`; shorter vectors are padded with zeros up to `n`.
    pub fn new(n: usize, mut coeffs: Vec<BigUint>) -> Result<Self> {
        if coeffs.len() > n + 1 {
            if coeffs[n + 1..].iter().any(|c| !c.is_zero()) {
                return Err(Error::Parse(format!(
                    "nonzero coefficient above weight {n}"
                )));
            }
            coeffs.truncate(n + 1);
        }
        coeffs.resize(n + 1, BigUint::zero());
        Ok(WeightEnumerator { n, coeffs })
    }

    pub fn from_u64(n: usize, coeffs: &[u64]) -> Result<Self> {
        WeightEnumerator::new(n, coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    /// From `(w, A_w)` pairs; repeated weights accumulate.
    pub fn from_sparse<I, A>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, A)>,
        A: Into<BigUint>,
    {
        let mut coeffs = vec![BigUint::zero(); n + 1];
        for (w, a) in terms {
            if w > n {
                return Err(Error::Parse(format!("weight {w} exceeds length {n}")));
            }
            coeffs[w] += a.into();
        }
        Ok(WeightEnumerator { n, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn coeff(&self, w: usize) -> &BigUint {
        &self.coeffs[w]
    }

    /// Nonzero `(w, A_w)` pairs in ascending weight.
    pub fn support(&self) -> impl Iterator<Item = (usize, &BigUint)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
    }

    /// Coefficients as `f64`, for the numerical paths.
    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|a| a.to_f64().unwrap_or(f64::INFINITY))
            .collect()
    }

    /// Number of codewords.
    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// `log2` of the codeword count when it is a power of two.
    pub fn dimension(&self) -> Option<usize> {
        let total = self.total();
        let bits = total.bits() as usize;
        (bits > 0 && total == BigUint::one() << (bits - 1)).then_some(bits - 1)
    }

    /// All supported weights are even.
    pub fn is_even(&self) -> bool {
        self.support().all(|(w, _)| w % 2 == 0)
    }

    /// Smallest nonzero weight; `None` for the zero code.
    pub fn min_distance(&self) -> Option<usize> {
        self.support().map(|(w, _)| w).find(|&w| w >= 1)
    }

    /// `W(x, y)` evaluated in floating point.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let n = self.n as i32;
        self.support()
            .map(|(w, a)| {
                let w = w as i32;
                a.to_f64().unwrap_or(f64::INFINITY) * x.powi(n - w) * y.powi(w)
            })
            .sum()
    }

    /// `w A_w` lines for the nonzero coefficients, ascending `w`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (w, a) in self.support() {
            out.push_str(&format!("{w} {a}\n"));
        }
        out
    }

    /// Parses `w A_w` lines. The length comes from `n`, or from a
    /// `# n=<n> k=<k>` header line when `n` is `None`.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self> {
        let header = parse_header(text);
        let n = match (n, header.n) {
            (Some(n), _) | (None, Some(n)) => n,
            (None, None) => {
                return Err(Error::Parse(
                    "enumerator length unknown: add a `# n=<n>` header or pass n".into(),
                ))
            }
        };
        let mut terms = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let w = parse_usize(fields.next(), "weight")?;
            let a_str = fields
                .next()
                .ok_or_else(|| Error::Parse(format!("missing coefficient in `{line}`")))?;
            let a: BigUint = a_str
                .parse()
                .map_err(|_| Error::Parse(format!("invalid coefficient `{a_str}`")))?;
            if fields.next().is_some() {
                return Err(Error::Parse(format!("trailing fields in `{line}`")));
            }
            terms.push((w, a));
        }
        WeightEnumerator::from_sparse(n, terms)
    }

    /// The `k` stated in a `# n=.. k=..` header, if any.
    pub fn header_dimension(text: &str) -> Option<usize> {
        parse_header(text).k
    }
}

impl fmt::Display for WeightEnumerator {
    /// Renders as a polynomial, e.g. `x^3 + 3x y^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (w, a) in self.support() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let xe = self.n - w;
            let mut mono = String::new();
            if !a.is_one() || (xe == 0 && w == 0) {
                mono.push_str(&a.to_string());
            }
            match xe {
                0 => {}
                1 => mono.push('x'),
                e => mono.push_str(&format!("x^{e}")),
            }
            match w {
                0 => {}
                1 => mono.push('y'),
                e => mono.push_str(&format!("y^{e}")),
            }
            f.write_str(&mono)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Header {
    n: Option<usize>,
    k: Option<usize>,
}

fn parse_header(text: &str) -> Header {
    let mut h = Header::default();
    for line in text.lines().map(str::trim) {
        let Some(rest) = line.strip_prefix('#') else {
            continue;
        };
        for field in rest.split_whitespace() {
            if let Some(v) = field.strip_prefix("n=") {
                h.n = v.parse().ok().or(h.n);
            } else if let Some(v) = field.strip_prefix("k=") {
                h.k = v.parse().ok().or(h.k);
            }
        }
    }
    h
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for i in 0..n {
        let next = &row[i] * BigInt::from(n - i) / BigInt::from(i + 1);
        row.push(next);
    }
    row
}

/// Enumerator of the dual of an `[n, k]` code:
/// `W_dual(x, y) = 2^-k W(x + y, x - y)`, in exact integer arithmetic.
pub fn macwilliams(we: &WeightEnumerator, k: usize) -> Result<WeightEnumerator> {
    let n = we.n;
    let invalid = || Error::InvalidEnumerator { n, k };
    if k > n {
        return Err(invalid());
    }
    // (x + y)^(n-w) (x - y)^w: coefficient of y^j is the Krawtchouk value K_j(w).
    let binom: Vec<Vec<BigInt>> = (0..=n).map(binomial_row).collect();
    let mut out = vec![BigInt::zero(); n + 1];
    for (w, a) in we.support() {
        let a = BigInt::from_biguint(Sign::Plus, a.clone());
        let plus = &binom[n - w];
        let minus = &binom[w];
        for (s, c_minus) in minus.iter().enumerate() {
            let signed = if s % 2 == 1 { -c_minus } else { c_minus.clone() };
            let term = &a * signed;
            for (r, c_plus) in plus.iter().enumerate() {
                out[r + s] += &term * c_plus;
            }
        }
    }
    let scale = BigInt::one() << k;
    let mut coeffs = Vec::with_capacity(n + 1);
    for c in out {
        let (q, r) = c.div_rem(&scale);
        if !r.is_zero() || q.is_negative() {
            return Err(invalid());
        }
        coeffs.push(q.to_biguint().ok_or_else(invalid)?);
    }
    if !coeffs[0].is_one() {
        return Err(invalid());
    }
    Ok(WeightEnumerator { n, coeffs })
}

/// `W(x, y) = W((x+y)/sqrt2, (x-y)/sqrt2)`, checked exactly. Requires an even
/// length and `2^(n/2)` codewords, under which the identity is the MacWilliams
/// transform with `k = n/2`.
pub fn is_formally_self_dual(we: &WeightEnumerator) -> bool {
    let n = we.n;
    n.is_multiple_of(2)
        && we.dimension() == Some(n / 2)
        && macwilliams(we, n / 2).is_ok_and(|dual| &dual == we)
}

/// Smallest nonzero weight, `None` meaning infinite (zero code).
pub fn min_distance(we: &WeightEnumerator) -> Option<usize> {
    we.min_distance()
}

/// Most specific duality class of a code. Self-duality needs the generator
/// matrix; the enumerator-level classes follow from `W_C = W_{C^perp}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DualityClass {
    SelfDual,
    FormallySelfDualEven,
    FormallySelfDualOdd,
    None,
}

impl DualityClass {
    pub fn is_formally_self_dual(self) -> bool {
        !matches!(self, DualityClass::None)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DualityClass::SelfDual => "self_dual",
            DualityClass::FormallySelfDualEven => "formally_self_dual_even",
            DualityClass::FormallySelfDualOdd => "formally_self_dual_odd",
            DualityClass::None => "none",
        }
    }
}

impl fmt::Display for DualityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify(code: &BinaryCode) -> Result<DualityClass> {
    if 2 * code.k() != code.n() {
        return Ok(DualityClass::None);
    }
    if code.same_code(&dual_code(code)?) {
        return Ok(DualityClass::SelfDual);
    }
    Ok(classify_enumerator(&weight_enumerator(code)?))
}

/// Enumerator-only classification; never returns [`DualityClass::SelfDual`].
pub fn classify_enumerator(we: &WeightEnumerator) -> DualityClass {
    if !is_formally_self_dual(we) {
        DualityClass::None
    } else if we.is_even() {
        DualityClass::FormallySelfDualEven
    } else {
        DualityClass::FormallySelfDualOdd
    }
}
