use std::path::Path;

use secgain_core::catalog::{find, CatalogEntry};
use secgain_core::{BinaryCode, Error, Result, WeightEnumerator};

/// Where an enumerator came from.
pub struct Source {
    pub label: String,
    pub code: Option<BinaryCode>,
    pub we: WeightEnumerator,
    pub k: usize,
    pub entry: Option<&'static CatalogEntry>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// A code file has at least one row line made only of `0`/`1`; enumerator
/// files hold `w A_w` pairs.
fn looks_like_code(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .skip(1)
        .any(|l| !l.contains(char::is_whitespace))
}

pub fn load_code(path: &Path) -> Result<BinaryCode> {
    BinaryCode::parse(&read(path)?)
}

pub fn load_enumerator(path: &Path, n: Option<usize>) -> Result<(WeightEnumerator, usize)> {
    let text = read(path)?;
    let we = WeightEnumerator::parse(&text, n)?;
    let k = match (WeightEnumerator::header_dimension(&text), we.dimension()) {
        (Some(k), Some(d)) if k == d => k,
        (None, Some(d)) => d,
        _ => {
            return Err(Error::InvalidEnumerator {
                n: we.n(),
                k: WeightEnumerator::header_dimension(&text).unwrap_or(0),
            })
        }
    };
    Ok((we, k))
}

/// Resolves a catalog name, a code file or an enumerator file.
pub fn resolve(spec: &str, n: Option<usize>) -> Result<Source> {
    if let Some(entry) = find(spec) {
        return Ok(Source {
            label: entry.name.to_string(),
            code: None,
            we: entry.we.clone(),
            k: entry.k,
            entry: Some(entry),
        });
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Error::Parse(format!(
            "`{spec}` is neither a catalog entry nor a readable file"
        )));
    }
    let text = read(path)?;
    if looks_like_code(&text) {
        let code = BinaryCode::parse(&text)?;
        let we = code.weight_enumerator()?;
        Ok(Source {
            label: spec.to_string(),
            k: code.k(),
            we,
            code: Some(code),
            entry: None,
        })
    } else {
        let (we, k) = load_enumerator(path, n)?;
        Ok(Source {
            label: spec.to_string(),
            code: None,
            we,
            k,
            entry: None,
        })
    }
}
