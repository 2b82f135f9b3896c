use std::io::Write as _;

use carlitz_cli::family_file::parse_family_text;
use carlitz_cli::output::SeriesJson;
use carlitz_cli::{run, EXIT_COMPUTE, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("appell-carlitz").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_temp(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn compute_text() {
    let (code, out, _) = cli(&["compute", "--family", "bernoulli-carlitz", "--p", "3", "--n-max", "4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "BC_0 = 1\nBC_1 = 0\nBC_2 = 2 / T^3+2*T\nBC_3 = 0\nBC_4 = 1 / T^3+2*T\n");
}

#[test]
fn compute_json_lines() {
    let (code, out, _) =
        cli(&["compute", "--family", "cauchy-carlitz", "--p", "2", "--ell", "2", "--n-max", "2", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let last = out.lines().last().unwrap();
    assert_eq!(last, r#"{"family":"cauchy-carlitz","r":2,"ell":2,"n":2,"method":"inversion","num":"1","den":"T^2+T"}"#);
}

#[test]
fn several_methods_are_tagged_and_ordered() {
    let (code, out, _) = cli(&[
        "compute",
        "--family",
        "bernoulli-carlitz",
        "--p",
        "3",
        "--n-max",
        "2",
        "--method",
        "recurrence",
        "--method",
        "inversion",
    ]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[0].ends_with("[inversion]") && lines[1].ends_with("[recurrence]"), "{out}");
}

#[test]
fn crosscheck_counts() {
    let (code, out, _) = cli(&["crosscheck", "--family", "bernoulli-carlitz", "--p", "3", "--n-max", "12"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "OK (13 values, 7 methods)\n");
    let (code, _, err) =
        cli(&["crosscheck", "--family", "bernoulli-carlitz", "--p", "3", "--n-max", "5", "--method", "inversion"]);
    assert_eq!(code, EXIT_USAGE, "{err}");
}

#[test]
fn inapplicable_methods_fail_before_computing() {
    let (code, _, err) =
        cli(&["compute", "--family", "cauchy-carlitz", "--p", "3", "--n-max", "4", "--method", "native"]);
    assert_eq!(code, EXIT_COMPUTE, "{err}");
    let (code, _, _) = cli(&[
        "compute",
        "--family",
        "bernoulli-carlitz",
        "--p",
        "3",
        "--ell",
        "2",
        "--n-max",
        "4",
        "--method",
        "partition",
    ]);
    assert_eq!(code, EXIT_COMPUTE);
    let (code, _, _) = cli(&["compute", "--family", "bernoulli-carlitz", "--p", "3", "--n-max", "8", "--order", "5"]);
    assert_eq!(code, EXIT_COMPUTE);
}

#[test]
fn usage_errors() {
    for args in [
        &["compute", "--family", "bernoulli-carlitz", "--p", "9"][..],
        &["compute", "--family", "bernoulli-carlitz", "--p", "2", "--e", "2"],
        &["compute", "--family", "bernoulli-carlitz", "--p", "3", "--modulus", "x+1"],
        &["compute", "--family", "bernoulli-carlitz", "--p", "3", "--ell", "0"],
        &["compute", "--family", "bernoulli-carlitz", "--p", "3", "--method", "fast"],
        &["compute", "--family", "custom", "--p", "3"],
        &["compute", "--family", "euler"],
    ] {
        let (code, _, err) = cli(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}: {err}");
    }
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("crosscheck"));
}

#[test]
fn family_files() {
    let missing = write_temp("order: 3\nfield: 3\n1: 1/T\n");
    let (code, _, err) = cli(&["compute", "--family", "custom", "--family-file", missing.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("NormalizationError"), "{err}");

    let duplicate = write_temp("order: 3\nfield: 3\n0: 1\n1: T\n1: 2\n");
    let (code, _, err) = cli(&["compute", "--family", "custom", "--family-file", duplicate.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("ParseError: line 5"), "{err}");

    let good = write_temp("order: 4\nfield: 3\n0: 1\n2: 1 / T\n");
    let path = good.path().to_str().unwrap();
    let (code, out, _) = cli(&["crosscheck", "--family", "custom", "--family-file", path, "--n-max", "3"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, _, _) = cli(&["compute", "--family", "custom", "--family-file", path, "--p", "5", "--n-max", "3"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn relabeled_file_exposes_mismatch() {
    // the Cauchy-Carlitz lambda labeled as Bernoulli-Carlitz disagrees with the native recurrence
    let (_, text, _) = cli(&["series", "--kind", "lambda", "--family", "cauchy-carlitz", "--p", "3", "--order", "9"]);
    let f = write_temp(&text);
    let (code, out, _) = cli(&[
        "crosscheck",
        "--family",
        "bernoulli-carlitz",
        "--family-file",
        f.path().to_str().unwrap(),
        "--n-max",
        "8",
    ]);
    assert_eq!(code, EXIT_MISMATCH, "{out}");
    assert!(out.starts_with("MISMATCH at n="), "{out}");
}

#[test]
fn bench_csv_shape() {
    let (code, out, _) = cli(&[
        "bench",
        "--family",
        "bernoulli-carlitz",
        "--p",
        "2",
        "--n-max",
        "12",
        "--method",
        "inversion",
        "--method",
        "recurrence",
    ]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "method,n0-9_us,n10-12_us,total_us");
    assert_eq!(lines.len(), 3);
    for (line, name) in lines[1..].iter().zip(["inversion", "recurrence"]) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[0], name);
        assert_eq!(cells.len(), 4);
        let parts: u128 = cells[1..3].iter().map(|c| c.parse::<u128>().unwrap()).sum();
        assert!(cells[3].parse::<u128>().unwrap() >= parts.saturating_sub(2));
    }
}

#[test]
fn series_output_parses_back() {
    let (code, out, _) = cli(&["series", "--kind", "exp", "--p", "3", "--order", "4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "order: 4\nfield: 3\n1: 1\n3: 1 / T^3+2*T\n");
    let (code, out, _) = cli(&["series", "--kind", "log", "--p", "2", "--order", "3", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let json: SeriesJson = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(json.coeffs, ["0", "1", "1 / T^2+T"]);
    let (_, text, _) =
        cli(&["series", "--kind", "lambda", "--family", "bernoulli-carlitz", "--p", "5", "--order", "9"]);
    let s = parse_family_text(&text).unwrap();
    assert_eq!(s.order(), 9);
    assert!(s.coeffs()[0].is_one());
}

#[test]
fn lemmas_subcommand_reports_seed() {
    let (code, out, _) = cli(&["lemmas", "--p", "3", "--seed", "42", "--cases", "5", "--m-max", "4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "seed=42\nOK (100 checks on 5 series, r=3)\n");
}
