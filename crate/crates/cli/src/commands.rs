use std::path::Path;

use secgain_core::catalog::{check_entry, load_mirror};
use secgain_core::gf2code::{classify, classify_enumerator, macwilliams};
use secgain_core::gleason::{condition_positive, gleason_coefficients, theorem4_condition};
use secgain_core::secrecy::{
    nu, secrecy_function, secrecy_function_fsd, secrecy_gain, t_of_tau, verify_symmetry,
    weak_secrecy_gain, SecrecyReport,
};
use secgain_core::tailbiting::{isodual_check, tailbiting_generator, trellis_enumerator};
use secgain_core::{load_catalog, ConvolutionalSpec, Error, Result, WeightEnumerator};

use crate::input::{load_code, load_enumerator, resolve, Source};
use crate::output::{real, table, Format, Record};

/// What a command printed and how the process should exit.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            exit: 0,
        }
    }
}

fn enumerator_lines(we: &WeightEnumerator, format: Format) -> String {
    match format {
        Format::Text => we.to_text(),
        Format::Csv => {
            let rows: Vec<Vec<String>> = we
                .support()
                .map(|(w, a)| vec![w.to_string(), a.to_string()])
                .collect();
            table(&["w", "a_w"], &rows, Format::Csv)
        }
    }
}

fn distance(we: &WeightEnumerator) -> String {
    we.min_distance().map_or("-".into(), |d| d.to_string())
}

pub fn enumerate(path: &Path, format: Format) -> Result<Outcome> {
    let code = load_code(path)?;
    let we = code.weight_enumerator()?;
    let class = classify(&code)?;
    Ok(Outcome {
        stdout: enumerator_lines(&we, format),
        stderr: format!(
            "n={} k={} d={} class={}\n",
            code.n(),
            code.k(),
            distance(&we),
            class
        ),
        exit: 0,
    })
}

pub fn macwilliams_cmd(path: &Path, n: Option<usize>, format: Format) -> Result<Outcome> {
    let (we, k) = load_enumerator(path, n)?;
    let dual = macwilliams(&we, k)?;
    Ok(Outcome {
        stdout: enumerator_lines(&dual, format),
        stderr: format!("n={} k={}\n", dual.n(), dual.n() - k),
        exit: 0,
    })
}

pub fn classify_cmd(spec: &str, n: Option<usize>, format: Format) -> Result<Outcome> {
    let src = resolve(spec, n)?;
    let class = match &src.code {
        Some(code) => classify(code)?,
        None if 2 * src.k == src.we.n() => classify_enumerator(&src.we),
        None => secgain_core::DualityClass::None,
    };
    let mut r = Record::new();
    r.push("n", src.we.n())
        .push("k", src.k)
        .push("d", distance(&src.we))
        .push("class", class);
    Ok(Outcome::ok(r.render(format)))
}

fn gleason_fields(r: &mut Record, report: &SecrecyReport) {
    if let (Some(dec), Some(cond)) = (&report.gleason, &report.gleason_condition) {
        let coeffs: Vec<String> = dec.coeffs().iter().map(|a| a.to_string()).collect();
        r.push("gleason", coeffs.join(" "));
        r.push("gleason_condition", cond);
        r.push("gleason_condition_positive", condition_positive(cond));
    }
}

fn verdict(report: &SecrecyReport) -> &'static str {
    if report.flat {
        "flat"
    } else if report.conjecture_verified {
        "verified"
    } else {
        "not_verified"
    }
}

fn report_record(src: &Source, report: &SecrecyReport, tolerance: f64) -> Result<Record> {
    let mut r = Record::new();
    r.push("source", &src.label)
        .push("n", report.n)
        .push("k", src.k)
        .push("xi", real(report.xi))
        .push("xi_rounded", format!("{:.3}", report.xi))
        .push("weak_gain", real(report.weak_gain))
        .push("t_star", real(report.t_star))
        .push("tau_star", real(report.tau_star))
        .push("conjecture", verdict(report))
        .push("method", report.method)
        .push("sign_changes", report.sign_changes);
    if let Some(entry) = src.entry {
        r.push("printed_gain", entry.printed_gain)
            .push("printed_match", entry.matches_printed(report.xi));
    }
    let deviation = verify_symmetry(&src.we, src.k)?;
    r.push("symmetry_deviation", real(deviation))
        .push("symmetry_ok", deviation <= tolerance);
    gleason_fields(&mut r, report);
    Ok(r)
}

pub fn secrecy(
    spec: &str,
    n: Option<usize>,
    weak_only: bool,
    tolerance: f64,
    format: Format,
) -> Result<Outcome> {
    let src = resolve(spec, n)?;
    if weak_only {
        let nu = nu(src.we.n(), src.k);
        let mut r = Record::new();
        r.push("source", &src.label)
            .push("n", src.we.n())
            .push("k", src.k)
            .push("tau0", real(1.0 / (nu * nu)))
            .push("weak_gain", real(weak_secrecy_gain(&src.we, src.k)?));
        return Ok(Outcome::ok(r.render(format)));
    }
    if 2 * src.k != src.we.n() {
        return Err(Error::NotFormallySelfDual);
    }
    let report = secrecy_gain(&src.we)?;
    Ok(Outcome::ok(report_record(&src, &report, tolerance)?.render(format)))
}

pub fn gleason(spec: &str, n: Option<usize>, format: Format) -> Result<Outcome> {
    let src = resolve(spec, n)?;
    let dec = gleason_coefficients(&src.we)?;
    let cond = theorem4_condition(&dec);
    let positive = condition_positive(&cond);
    let out = match format {
        Format::Text => {
            let mut out = String::new();
            for (r, a) in dec.coeffs().iter().enumerate() {
                out.push_str(&format!("a_{r}: {a}\n"));
            }
            out.push_str(&format!("condition: {cond}\n"));
            out.push_str(if positive {
                "verdict: positive, maximum at tau = 1\n"
            } else {
                "verdict: not positive, inconclusive\n"
            });
            out
        }
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = dec
                .coeffs()
                .iter()
                .enumerate()
                .map(|(r, a)| vec![format!("a_{r}"), a.to_string()])
                .collect();
            rows.push(vec!["condition".into(), cond.to_string()]);
            rows.push(vec!["positive".into(), positive.to_string()]);
            table(&["term", "value"], &rows, Format::Csv)
        }
    };
    Ok(Outcome::ok(out))
}

pub fn table_cmd(format: Format) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for e in load_catalog() {
        let report = secrecy_gain(&e.we)?;
        let matched = e.matches_printed(report.xi);
        if !matched {
            mismatches.push(e.name);
        }
        rows.push(vec![
            e.name.to_string(),
            e.n.to_string(),
            e.kind.to_string(),
            e.d.to_string(),
            real(report.xi),
            e.printed_gain.to_string(),
            matched.to_string(),
        ]);
    }
    let header = ["name", "n", "kind", "d", "xi_computed", "xi_paper", "match"];
    let total = rows.len();
    let stderr = if mismatches.is_empty() {
        format!("{total}/{total} rows match\n")
    } else {
        format!(
            "{}/{total} rows match; differing: {}\n",
            total - mismatches.len(),
            mismatches.join(", ")
        )
    };
    Ok(Outcome {
        stdout: table(&header, &rows, format),
        stderr,
        exit: if mismatches.is_empty() { 0 } else { 1 },
    })
}

pub struct PlotRange {
    pub tau_min: f64,
    pub tau_max: f64,
    pub points: usize,
}

impl PlotRange {
    pub fn check(&self) -> Result<()> {
        let ok = self.tau_min >= 1e-3
            && self.tau_max <= 1e3
            && self.tau_min < self.tau_max
            && self.points >= 1;
        if ok {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "need 1e-3 <= tau-min < tau-max <= 1e3 and points >= 1 (got {}, {}, {})",
                self.tau_min, self.tau_max, self.points
            )))
        }
    }

    pub fn taus(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.tau_min];
        }
        let (a, b) = (self.tau_min.ln(), self.tau_max.ln());
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| match i {
                0 => self.tau_min,
                i if i == self.points - 1 => self.tau_max,
                i => (a + (b - a) * i as f64 / last).exp(),
            })
            .collect()
    }
}

pub fn plot_data(spec: &str, n: Option<usize>, range: &PlotRange, format: Format) -> Result<Outcome> {
    range.check()?;
    let src = resolve(spec, n)?;
    let fsd = 2 * src.k == src.we.n() && secgain_core::gf2code::is_formally_self_dual(&src.we);
    let mut rows = Vec::with_capacity(range.points);
    for tau in range.taus() {
        let xi = if fsd {
            secrecy_function_fsd(&src.we, tau)?
        } else {
            secrecy_function(&src.we, src.k, tau)?
        };
        rows.push(vec![real(tau), real(t_of_tau(tau)?), real(1.0 / xi), real(xi)]);
    }
    let stdout = match format {
        Format::Csv => table(&["tau", "t", "xi_inverse", "xi"], &rows, Format::Csv),
        Format::Text => {
            let lines: Vec<String> = std::iter::once("tau t xi_inverse xi".to_string())
                .chain(rows.iter().map(|r| r.join(" ")))
                .collect();
            lines.join("\n") + "\n"
        }
    };
    Ok(Outcome::ok(stdout))
}

pub fn tailbite(
    g1: &str,
    g2: &str,
    k: usize,
    tolerance: f64,
    format: Format,
) -> Result<Outcome> {
    let spec = ConvolutionalSpec::from_octal(g1, g2)?;
    let we = trellis_enumerator(&spec, k)?;
    let n = 2 * k;
    let generator = (n <= secgain_core::gf2code::MAX_LENGTH)
        .then(|| tailbiting_generator(&spec, k))
        .transpose()?;
    let isodual = match &generator {
        Some(_) => isodual_check(&spec, k)?.to_string(),
        None => "unchecked".into(),
    };
    let src = Source {
        label: format!("tailbiting {spec} k={k}"),
        code: generator.clone(),
        we: we.clone(),
        k,
        entry: None,
    };
    let report = secrecy_gain(&we)?;
    let mut out = String::new();
    match format {
        Format::Text => {
            out.push_str(&format!("spec: {spec}\nm: {}\nn: {n}\nk: {k}\n", spec.memory()));
            match &generator {
                Some(code) => {
                    out.push_str("generator:\n");
                    for i in 0..code.k() {
                        out.push_str(&code.row_string(i));
                        out.push('\n');
                    }
                }
                None => out.push_str("generator: omitted (n > 64)\n"),
            }
            out.push_str("enumerator:\n");
            out.push_str(&we.to_text());
            out.push_str(&format!("isodual: {isodual}\n"));
            out.push_str(&report_record(&src, &report, tolerance)?.render(Format::Text));
        }
        Format::Csv => {
            let mut r = report_record(&src, &report, tolerance)?;
            r.push("m", spec.memory()).push("isodual", isodual);
            let terms: Vec<String> = we.support().map(|(w, a)| format!("{w}:{a}")).collect();
            r.push("enumerator", terms.join(" "));
            out.push_str(&r.render(Format::Csv));
        }
    }
    Ok(Outcome::ok(out))
}

pub fn validate_catalog_cmd(mirror: Option<&Path>, format: Format) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut failures = 0;
    let catalog = load_catalog();
    let mirror_rows = mirror.map(load_mirror).transpose()?;
    for (i, e) in catalog.iter().enumerate() {
        let c = check_entry(e);
        let mut row = vec![
            e.name.to_string(),
            c.size.to_string(),
            c.self_dual_enumerator.to_string(),
            c.distance.to_string(),
            c.parity.to_string(),
        ];
        let mut pass = c.passed();
        if let Some(m) = &mirror_rows {
            let same = m.get(i).is_some_and(|m| m.name == e.name && m.we == e.we);
            row.push(same.to_string());
            pass &= same;
        }
        row.push(pass.to_string());
        if !pass {
            failures += 1;
        }
        rows.push(row);
    }
    let mut header = vec!["name", "size", "self_dual_enumerator", "distance", "parity"];
    if let Some(m) = &mirror_rows {
        if m.len() != catalog.len() {
            failures += 1;
        }
        header.push("mirror");
    }
    header.push("pass");
    Ok(Outcome {
        stdout: table(&header, &rows, format),
        stderr: format!("{} entries, {failures} failing\n", catalog.len()),
        exit: if failures == 0 { 0 } else { 1 },
    })
}
