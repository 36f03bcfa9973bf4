use std::fmt::Write;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

/// Twelve significant digits, trailing zeros trimmed; exponent form outside
/// `[1e-4, 1e12)`.
pub fn real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs();
    if !(1e-4..1e12).contains(&mag) {
        let s = format!("{:.11e}", x);
        let (mantissa, exp) = s.split_once('e').expect("exponent form");
        return format!("{}e{}", trim(mantissa), exp);
    }
    let digits = 11 - mag.log10().floor() as i32;
    let s = format!("{:.*}", digits.max(0) as usize, x);
    trim(&s).to_string()
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `key: value` lines in text mode, a header and one row in CSV mode.
#[derive(Default)]
pub struct Record {
    fields: Vec<(String, String)>,
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn push(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                for (k, v) in &self.fields {
                    writeln!(out, "{k}: {v}").unwrap();
                }
            }
            Format::Csv => {
                let keys: Vec<&str> = self.fields.iter().map(|(k, _)| k.as_str()).collect();
                let values: Vec<String> = self.fields.iter().map(|(_, v)| csv_field(v)).collect();
                writeln!(out, "{}", keys.join(",")).unwrap();
                writeln!(out, "{}", values.join(",")).unwrap();
            }
        }
        out
    }
}

pub fn csv_field(v: &str) -> String {
    if v.contains([',', '"', '\n']) {
        format!("\"{}\"", v.replace('"', "\"\""))
    } else {
        v.to_string()
    }
}

/// Rows with a header: comma separated in CSV mode, padded columns in text
/// mode.
pub fn table(header: &[&str], rows: &[Vec<String>], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            writeln!(out, "{}", header.join(",")).unwrap();
            for row in rows {
                let cells: Vec<String> = row.iter().map(|c| csv_field(c)).collect();
                writeln!(out, "{}", cells.join(",")).unwrap();
            }
        }
        Format::Text => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for row in rows {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", line(header.to_vec())).unwrap();
            for row in rows {
                writeln!(out, "{}", line(row.iter().map(String::as_str).collect())).unwrap();
            }
        }
    }
    out
}
