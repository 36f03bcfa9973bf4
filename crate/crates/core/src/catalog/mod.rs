//! Published weight enumerators of self-dual and formally self-dual codes with
//! their printed secrecy gains.
//!
//! The compiled table in `data.rs` and the text mirror under `data/catalog/`
//! (one enumerator file per entry plus `manifest.tsv`) hold the same rows.

mod data;

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::gf2code::{is_formally_self_dual, WeightEnumerator};
use crate::tailbiting::ConvolutionalSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodeKind {
    SelfDual,
    EvenFsd,
    OddFsd,
}

impl CodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CodeKind::SelfDual => "sd",
            CodeKind::EvenFsd => "efsd",
            CodeKind::OddFsd => "ofsd",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "sd" => Some(CodeKind::SelfDual),
            "efsd" => Some(CodeKind::EvenFsd),
            "ofsd" => Some(CodeKind::OddFsd),
            _ => None,
        }
    }

    /// Whether every codeword has even weight.
    pub fn is_even(self) -> bool {
        !matches!(self, CodeKind::OddFsd)
    }
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A row whose printed polynomial is inconsistent. `printed_terms` holds the
/// literal `(coefficient, x exponent, y exponent)` triples as printed.
#[derive(Debug, PartialEq, Eq)]
pub struct Erratum {
    pub note: &'static str,
    pub printed_terms: &'static [(u64, usize, usize)],
}

impl Erratum {
    /// `2^{n/2} / P(sqrt(1+t), sqrt(1-t))` at `t = 1/sqrt 2` for the literal
    /// printed polynomial `P`, i.e. the gain the printed row implies.
    pub fn literal_gain(&self, n: usize) -> f64 {
        let t = std::f64::consts::FRAC_1_SQRT_2;
        let (x, y) = ((1.0 + t).sqrt(), (1.0 - t).sqrt());
        let f: f64 = self
            .printed_terms
            .iter()
            .map(|&(c, a, b)| c as f64 * x.powi(a as i32) * y.powi(b as i32))
            .sum();
        2f64.powi((n / 2) as i32) / f
    }
}

pub(crate) struct RawEntry {
    name: &'static str,
    n: usize,
    k: usize,
    d: usize,
    kind: CodeKind,
    source: &'static str,
    printed_gain: &'static str,
    tb: bool,
    conv_octal: Option<(u32, u32)>,
    terms: &'static [(usize, &'static str)],
    erratum: Option<Erratum>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub kind: CodeKind,
    pub source: &'static str,
    pub we: WeightEnumerator,
    /// Gain as printed, e.g. `"2.485"`.
    pub printed_gain: &'static str,
    pub expected_gain: f64,
    /// Built by tailbiting a convolutional code.
    pub tb: bool,
    /// Generators reproducing the enumerator, when known.
    pub conv: Option<ConvolutionalSpec>,
    pub erratum: Option<&'static Erratum>,
}

impl CatalogEntry {
    /// Decimal places in the printed gain.
    pub fn printed_decimals(&self) -> usize {
        self.printed_gain
            .split_once('.')
            .map_or(0, |(_, frac)| frac.len())
    }

    /// Whether `xi` rounds to the printed gain.
    pub fn matches_printed(&self, xi: f64) -> bool {
        format!("{:.*}", self.printed_decimals(), xi) == self.printed_gain
    }
}

fn build(raw: &'static RawEntry) -> CatalogEntry {
    let terms = raw.terms.iter().map(|&(w, a)| {
        let a: BigUint = a.parse().expect("catalog coefficient");
        (w, a)
    });
    let mut coeffs = vec![BigUint::default(); raw.n + 1];
    for (w, a) in terms {
        coeffs[w] = a;
    }
    CatalogEntry {
        name: raw.name,
        n: raw.n,
        k: raw.k,
        d: raw.d,
        kind: raw.kind,
        source: raw.source,
        we: WeightEnumerator::new(raw.n, coeffs).expect("catalog enumerator"),
        printed_gain: raw.printed_gain,
        expected_gain: raw.printed_gain.parse().expect("catalog gain"),
        tb: raw.tb,
        conv: raw
            .conv_octal
            .map(|(g1, g2)| ConvolutionalSpec::from_masks(g1, g2).expect("catalog spec")),
        erratum: raw.erratum.as_ref(),
    }
}

/// All catalog rows in table order.
pub fn load_catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| data::ENTRIES.iter().map(build).collect())
}

pub fn find(name: &str) -> Option<&'static CatalogEntry> {
    load_catalog().iter().find(|e| e.name == name)
}

/// Per-entry consistency checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryCheck {
    pub name: &'static str,
    /// Coefficients sum to `2^k`.
    pub size: bool,
    /// The enumerator is its own MacWilliams transform.
    pub self_dual_enumerator: bool,
    /// Minimum distance equals `d`.
    pub distance: bool,
    /// Weight parity agrees with the kind.
    pub parity: bool,
}

impl EntryCheck {
    pub fn passed(&self) -> bool {
        self.size && self.self_dual_enumerator && self.distance && self.parity
    }
}

pub fn check_entry(entry: &CatalogEntry) -> EntryCheck {
    EntryCheck {
        name: entry.name,
        size: entry.we.dimension() == Some(entry.k),
        self_dual_enumerator: is_formally_self_dual(&entry.we),
        distance: entry.we.min_distance() == Some(entry.d),
        parity: entry.we.is_even() == entry.kind.is_even(),
    }
}

/// Checks every entry; failures are reported, never raised.
pub fn validate_catalog() -> Vec<EntryCheck> {
    load_catalog().iter().map(check_entry).collect()
}

/// One row of the text mirror.
#[derive(Clone, Debug, PartialEq)]
pub struct MirrorEntry {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub kind: CodeKind,
    pub tb: bool,
    /// `(g1, g2)` as octal strings.
    pub conv: Option<(String, String)>,
    pub source: String,
    pub printed_gain: String,
    pub we: WeightEnumerator,
}

/// Location of the text mirror in the source tree.
pub fn mirror_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/catalog")
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Reads `manifest.tsv` and the per-entry enumerator files from `dir`.
pub fn load_mirror(dir: &Path) -> Result<Vec<MirrorEntry>> {
    let manifest = read(&dir.join("manifest.tsv"))?;
    let mut out = Vec::new();
    for line in manifest.lines().skip(1).filter(|l| !l.trim().is_empty()) {
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 9 {
            return Err(Error::Parse(format!("manifest row `{line}` has {} columns", cols.len())));
        }
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad number `{s}` in manifest")))
        };
        let (n, k, d) = (num(cols[1])?, num(cols[2])?, num(cols[3])?);
        let kind = CodeKind::parse(cols[4])
            .ok_or_else(|| Error::Parse(format!("bad kind `{}`", cols[4])))?;
        let tb = match cols[5] {
            "true" => true,
            "false" => false,
            other => return Err(Error::Parse(format!("bad tb flag `{other}`"))),
        };
        let conv = match cols[6] {
            "-" => None,
            s => {
                let (a, b) = s
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("bad conv `{s}`")))?;
                Some((a.to_string(), b.to_string()))
            }
        };
        let text = read(&dir.join(format!("{}.txt", cols[0])))?;
        if WeightEnumerator::header_dimension(&text) != Some(k) {
            return Err(Error::Parse(format!("{}: header k disagrees with manifest", cols[0])));
        }
        let we = WeightEnumerator::parse(&text, Some(n))?;
        out.push(MirrorEntry {
            name: cols[0].to_string(),
            n,
            k,
            d,
            kind,
            tb,
            conv,
            source: cols[7].to_string(),
            printed_gain: cols[8].to_string(),
            we,
        });
    }
    Ok(out)
}
