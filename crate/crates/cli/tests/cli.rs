use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const HADAMARD: &str =
    "2\n0.7071067811865476,0 0.7071067811865476,0\n0.7071067811865476,0 -0.7071067811865476,0\n";

const DFT3: &str = "\
# three-point Fourier transform
3
0.5773502691896258,0 0.5773502691896258,0 0.5773502691896258,0
0.5773502691896258,0 -0.2886751345948129,-0.5 -0.2886751345948129,0.5
0.5773502691896258,0 -0.2886751345948129,0.5 -0.2886751345948129,-0.5
";

fn timebin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_timebin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, body: &str) -> String {
    let p = scratch(name);
    fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn value(out: &str, key: &str) -> String {
    out.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')))
        .unwrap_or_else(|| panic!("no '{key}' in\n{out}"))
        .to_string()
}

fn parse_entries(text: &str) -> Vec<(f64, f64)> {
    text.lines()
        .skip_while(|l| l.trim_start().starts_with('#'))
        .skip(1)
        .flat_map(|l| l.split_whitespace())
        .map(|t| {
            let (re, im) = t.split_once(',').unwrap();
            (re.parse().unwrap(), im.parse().unwrap())
        })
        .collect()
}

#[test]
fn decompose_then_reconstruct_round_trips() {
    let m = write("dft3.txt", DFT3);
    let out = timebin(&["decompose", &m]);
    assert!(out.status.success());
    let dec_text = stdout(&out);
    assert_eq!(dec_text.lines().count(), 1 + 3 + 1);
    let d = write("dft3.dec", &dec_text);
    let back = timebin(&["reconstruct", &d]);
    assert!(back.status.success());
    let got = parse_entries(&stdout(&back));
    let want = parse_entries(DFT3);
    assert_eq!(got.len(), 9);
    let err: f64 = got
        .iter()
        .zip(&want)
        .map(|(a, b)| (a.0 - b.0).powi(2) + (a.1 - b.1).powi(2))
        .sum::<f64>()
        .sqrt();
    assert!(err <= 1e-9, "frobenius error {err}");
}

#[test]
fn identity_decomposes_to_full_triangle() {
    let m = write(
        "id4.txt",
        "4\n1,0 0,0 0,0 0,0\n0,0 1,0 0,0 0,0\n0,0 0,0 1,0 0,0\n0,0 0,0 0,0 1,0\n",
    );
    let out = timebin(&["decompose", &m]);
    assert!(out.status.success());
    let steps = stdout(&out)
        .lines()
        .filter(|l| !l.starts_with("P:"))
        .count()
        - 1;
    assert_eq!(steps, 6);
}

#[test]
fn sampling_is_reproducible_and_prints_seed() {
    let args = ["qkd", "--rounds", "2000", "--p", "0.1", "--seed", "11"];
    let a = timebin(&args);
    let b = timebin(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(value(&stdout(&a), "seed"), "11");

    let bell = ["bell", "--eta", "0.9", "--rounds", "5000", "--seed", "4"];
    assert_eq!(timebin(&bell).stdout, timebin(&bell).stdout);
}

#[test]
fn unseeded_run_reports_generated_seed() {
    let out = timebin(&["qkd", "--rounds", "100"]);
    assert!(out.status.success());
    value(&stdout(&out), "seed").parse::<u64>().unwrap();
}

#[test]
fn verify_command_passes() {
    let out = timebin(&["verify-paper"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(value(&text, "result"), "PASS");
    assert!(!text.contains("FAIL"));
}

#[test]
fn feasibility_reports_two_centimetres() {
    let out = timebin(&["feasibility", "--dt", "1e-10", "--rate", "1e10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(value(&text, "feasible"), "true");
    let dl: f64 = value(&text, "path_difference_m").parse().unwrap();
    assert!((dl - 0.0204218295640327).abs() < 1e-12);

    let slow = timebin(&["feasibility", "--dt", "1e-10", "--rate", "5e9"]);
    assert_eq!(value(&stdout(&slow), "feasible"), "false");
}

#[test]
fn gate_netlist_simulates_hadamard() {
    let m = write("h.txt", HADAMARD);
    let net = timebin(&["build-gate", "--matrix", &m, "--lossless"]);
    assert!(net.status.success());
    let n = write("h.net", &stdout(&net));
    let s = write("short.txt", "2\n1,0\n0,0\n");
    let out = timebin(&["simulate", "--netlist", &n, "--state", &s]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    let t: f64 = value(&text, "transmission").parse().unwrap();
    assert!((t - 1.0).abs() < 1e-12);
    for k in 0..2 {
        let (re, im) = value(&text, &format!("output_{k}"))
            .split_once(',')
            .map(|(a, b)| (a.parse::<f64>().unwrap(), b.parse::<f64>().unwrap()))
            .unwrap();
        assert!(((re * re + im * im) - 0.5).abs() < 1e-12);
    }
}

#[test]
fn non_unitary_input_exits_one() {
    let m = write("bad.txt", "2\n1,0 1,0\n0,0 1,0\n");
    let out = timebin(&["decompose", &m]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parse_error_exits_two_and_names_file_and_line() {
    let m = write("typo.txt", "2\n1,0 0,0\n0,0 1,oops\n");
    let out = timebin(&["decompose", &m]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("typo.txt:3:"), "{err}");
}

#[test]
fn missing_file_exits_two() {
    let out = timebin(&["reconstruct", "/nonexistent/decomposition.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_documents_file_formats() {
    let out = timebin(&["--help"]);
    let text = stdout(&out);
    for section in [
        "Matrix",
        "State",
        "Decomposition",
        "Netlist",
        "SWITCH_DEMUX",
    ] {
        assert!(text.contains(section), "missing {section}");
    }
}

#[test]
fn qkd_csv_has_one_row_per_round() {
    let csv = scratch("qkd.csv");
    let out = timebin(&[
        "qkd",
        "--rounds",
        "500",
        "--seed",
        "2",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(csv).unwrap().lines().count(), 501);
}
