use std::path::PathBuf;
use std::process::{Command, Output};

fn secgain(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_secgain"))
        .args(args)
        .output()
        .expect("spawn secgain")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("secgain-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
}

#[test]
fn enumerate_repetition_code() {
    let p = fixture("rep3.txt", "3 1\n111\n");
    let o = secgain(&["enumerate", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0 1\n3 1\n");
    assert_eq!(stderr(&o).trim(), "n=3 k=1 d=3 class=none");
}

#[test]
fn enumerate_six_three_three() {
    let p = fixture("ex1.txt", "6 3\n100110\n010011\n001101\n");
    let o = secgain(&["enumerate", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0 1\n3 4\n4 3\n");
    assert!(stderr(&o).contains("class=formally_self_dual_odd"));
}

#[test]
fn overlong_code_is_a_usage_error() {
    let row = "1".repeat(65);
    let p = fixture("long.txt", &format!("65 1\n{row}\n"));
    let o = secgain(&["enumerate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn macwilliams_of_repetition_code() {
    let p = fixture("rep3.we", "# n=3 k=1\n0 1\n3 1\n");
    let o = secgain(&["macwilliams", p.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("0 1\n2 3\n"));
}

#[test]
fn secrecy_catalog_entries() {
    for (name, xi) in [
        ("n6_ofsd_d3", "1.172"),
        ("n8_sd_d4", "1.333"),
        ("n18_efsd_d6", "2.485"),
        ("n70_ofsd_d13", "128.368"),
    ] {
        let o = secgain(&["secrecy", name]);
        assert!(o.status.success(), "{name}: {}", stderr(&o));
        let out = stdout(&o);
        assert_eq!(field(&out, "xi_rounded"), xi, "{name}");
        assert_eq!(field(&out, "printed_match"), "true", "{name}");
        assert_eq!(field(&out, "symmetry_ok"), "true", "{name}");
    }
}

#[test]
fn secrecy_csv_has_one_row() {
    let o = secgain(&["--format", "csv", "secrecy", "n6_ofsd_d3"]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("source,n,k,xi,"));
    assert!(lines[1].starts_with("n6_ofsd_d3,6,3,1.17157287525,"));
}

#[test]
fn non_fsd_code_is_rejected_but_weak_gain_works() {
    let p = fixture("rep3b.txt", "3 1\n111\n");
    let o = secgain(&["secrecy", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("formally self-dual"));

    let o = secgain(&["secrecy", p.to_str().unwrap(), "--weak-only"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let tau0: f64 = field(&out, "tau0").parse().unwrap();
    assert!((tau0 - 2f64.powf(-1.0 / 3.0)).abs() < 1e-11);
}

#[test]
fn unknown_source_exits_two() {
    let o = secgain(&["secrecy", "no_such_entry"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gleason_eighteen_nine_six() {
    let o = secgain(&["gleason", "n18_efsd_d6"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "a_0: -29/16\na_1: 27/8\na_2: -9/16\ncondition: 81/32\nverdict: positive, maximum at tau = 1\n"
    );
    let o = secgain(&["gleason", "n6_ofsd_d3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn table_reports_the_three_differing_rows() {
    let o = secgain(&["--format", "csv", "table"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("42/45 rows match; differing: n20_sd_d4, n30_sd_d6, n40_sd_d8_i"));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 46);
    let row = |name: &str| {
        out.lines()
            .find(|l| l.starts_with(&format!("{name},")))
            .unwrap()
            .split(',')
            .map(str::to_string)
            .collect::<Vec<_>>()
    };
    let ii = row("n40_sd_d8_ii");
    assert_eq!(ii[6], "true");
    assert!(ii[4].starts_with("11.976"));
    assert!(row("n40_ofsd_d9")[4].starts_with("12.364"));
    let i = row("n40_sd_d8_i");
    assert_eq!((i[5].as_str(), i[6].as_str()), ("12.191", "false"));
    assert!(i[4].starts_with("12.1904761"));
    assert!(row("n70_ofsd_d13")[4].starts_with("128.368"));
}

#[test]
fn plot_data_is_symmetric_for_e8() {
    let o = secgain(&["--format", "csv", "plot-data", "n8_sd_d4"]);
    assert!(o.status.success());
    let rows: Vec<Vec<f64>> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 101);
    assert_eq!(rows[0][0], 0.1);
    assert_eq!(rows[100][0], 10.0);
    for i in 0..101 {
        let (a, b) = (&rows[i], &rows[100 - i]);
        assert!((a[0] * b[0] - 1.0).abs() < 1e-9);
        assert!((a[3] - b[3]).abs() < 1e-9, "row {i}");
        assert!((a[2] * a[3] - 1.0).abs() < 1e-9);
    }
}

#[test]
fn plot_data_range_checks() {
    let o = secgain(&["plot-data", "n8_sd_d4", "--points", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = secgain(&["plot-data", "n8_sd_d4", "--tau-min", "1e-4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = secgain(&["plot-data", "n8_sd_d4", "--tau-min", "5", "--tau-max", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tailbite_seven_five() {
    let o = secgain(&["tailbite", "7", "5", "--k", "5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("generator:\n1110110000\n"));
    assert_eq!(field(&out, "isodual"), "true");
    assert_eq!(field(&out, "spec"), "(7, 5)");

    let via_conv = secgain(&["tailbite", "--conv", "7,5", "--k", "5"]);
    assert_eq!(stdout(&via_conv), out);
}

#[test]
fn tailbite_small_cases() {
    let o = secgain(&["tailbite", "3", "1", "--k", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("enumerator:\n0 1\n2 1\n3 2\n"));

    let o = secgain(&["tailbite", "7", "5", "--k", "4"]);
    assert!(o.status.success(), "{}", stderr(&o));

    // k must exceed the memory
    let o = secgain(&["tailbite", "7", "5", "--k", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = secgain(&["tailbite", "7", "9", "--k", "5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = secgain(&["tailbite", "7", "--k", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_catalog_with_mirror() {
    let mirror = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/catalog");
    let o = secgain(&["validate-catalog", "--mirror", mirror.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stderr(&o), "45 entries, 0 failing\n");
}

#[test]
fn classify_sources() {
    // an enumerator alone cannot tell self-dual from formally self-dual
    let o = secgain(&["classify", "n8_sd_d4"]);
    assert_eq!(field(&stdout(&o), "class"), "formally_self_dual_even");
    let p = fixture("ex1c.txt", "6 3\n100110\n010011\n001101\n");
    let o = secgain(&["classify", p.to_str().unwrap()]);
    assert_eq!(field(&stdout(&o), "class"), "formally_self_dual_odd");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["table"][..],
        &["secrecy", "n40_sd_d8_ii"],
        &["--format", "csv", "plot-data", "n18_efsd_d6", "--points", "17"],
    ] {
        let a = secgain(args);
        let b = secgain(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
