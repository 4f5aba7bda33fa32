use std::path::Path;
use std::process::{Command, Output};

use qca_core::compiler::{compile_circuit, LogicalCircuit};
use qca_core::statevec::init_zero;
use tempfile::TempDir;

fn qca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qca")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn compile_single_rz() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "c.txt", "n 1\nrz 1 0.5\n");
    let out = dir.path().join("s.txt");
    let o = qca(&["compile", "--in", &input, "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let schedule = std::fs::read_to_string(&out).unwrap();
    assert_eq!(schedule.lines().filter(|l| *l == "T").count(), 14);
    assert_eq!(schedule.lines().filter(|l| l.starts_with("P ")).count(), 6);
    let report = stdout(&o);
    assert!(report.contains("chain length N: 6"), "{report}");
    assert!(report.contains("steps per clock cycle: 14"), "{report}");
}

#[test]
fn compile_empty_circuit_gives_empty_schedule() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "c.txt", "n 2\n");
    let o = qca(&["compile", "--in", &input]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "N 10\n");
}

#[test]
fn compile_reports_the_bad_line() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "c.txt", "n 1\n# fine\nrz 1 0.5\nrq 1 0.5\n");
    let o = qca(&["compile", "--in", &input]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
}

#[test]
fn file_round_trip_matches_in_memory_simulation() {
    let text = "n 1\nrz 1 0.7\nrx 1 -1.1\n";
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "c.txt", text);
    let sched = dir.path().join("s.txt");
    assert!(qca(&["compile", "--in", &input, "--out", path_str(&sched)]).status.success());
    let o = qca(&["simulate", "--in", path_str(&sched), "--amplitudes", "--tol", "0"]);
    assert!(o.status.success());

    let (schedule, _) = compile_circuit(&LogicalCircuit::parse(text).unwrap()).unwrap();
    let mut s = init_zero(6).unwrap();
    s.apply_schedule(&schedule).unwrap();
    let lines: Vec<String> = stdout(&o).lines().skip(1).map(str::to_owned).collect();
    assert_eq!(lines.len(), 64);
    for (line, a) in lines.iter().zip(s.amplitudes()) {
        let parts: Vec<&str> = line.split(' ').collect();
        assert_eq!(parts[1].parse::<f64>().unwrap(), a.re);
        assert_eq!(parts[2].parse::<f64>().unwrap(), a.im);
    }
}

#[test]
fn full_clock_cycle_returns_to_zero() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "s.txt", &format!("N 4\n{}", "T\n".repeat(10)));
    let o = qca(&["simulate", "--in", &input, "--N", "4"]);
    assert_eq!(stdout(&o), "# N=4 steps=10 pulses=0\n0000 1.0\n");
}

#[test]
fn empty_schedule_keeps_the_initial_state() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "s.txt", "N 3\n");
    let o = qca(&["simulate", "--in", &input, "--init", "101"]);
    assert_eq!(stdout(&o), "# N=3 steps=0 pulses=0\n101 1.0\n");
}

#[test]
fn simulate_rejects_length_mismatch() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "s.txt", "N 4\nT\n");
    let o = qca(&["simulate", "--in", &input, "--N", "5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qca(&["simulate", "--in", &input, "--init", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_passing_suites() {
    for suite in ["reversal", "mz", "appendix"] {
        let o = qca(&["verify", suite, "--max-n", "32"]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
    let o = qca(&["verify", "readout", "--trials", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn verify_corrupted_inputs_fail() {
    for suite in ["reversal", "mz", "gates", "appendix", "readout"] {
        let o = qca(&["verify", suite, "--max-n", "12", "--trials", "10", "--corrupt"]);
        assert_eq!(o.status.code(), Some(1), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).contains("FAIL"));
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qca(&["verify", "everything"]).status.code(), Some(2));
    assert_eq!(qca(&["lightcone", "3", "Q", "--N", "8", "--t-max", "2"]).status.code(), Some(2));
    assert_eq!(qca(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qca(&["lightcone", "9", "Z", "--N", "8", "--t-max", "2"]).status.code(), Some(2));
}

const Z3_CONE: &str = "\
# Z_3 N=8 t=0..9
# t  sites  Y
  0 +IIZIIIII 1
  1 +IZXZIIII 1
  2 +ZXZXZIII 1
  3 +XZXZXZII 0
  4 +IXZXZXZI 0
  5 +IIXZXZXZ 0
  6 +IIIXZXZX 1
  7 +IIIIXZXI 1
  8 +IIIIIXII 1
  9 +IIIIIZII 1
";

#[test]
fn lightcone_text_golden() {
    let o = qca(&["lightcone", "3", "Z", "--N", "8", "--t-max", "9"]);
    assert_eq!(stdout(&o), Z3_CONE);
    let o = qca(&["lightcone", "3", "Z", "--N", "8", "--t-max", "0"]);
    assert_eq!(stdout(&o).lines().filter(|l| !l.starts_with('#')).count(), 1);
}

#[test]
fn lightcone_svg_has_one_cell_per_site_and_row() {
    let o = qca(&["lightcone", "2", "X", "--N", "5", "--t-max", "3", "--format", "svg"]);
    let svg = stdout(&o);
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<rect").count(), 5 * 4);
}

#[test]
fn readout_demo_unique_and_two_branch() {
    let o = qca(&["readout-demo", "--n", "2", "--r", "10"]);
    assert!(o.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["solutions"], serde_json::json!([{"r": "10", "r_bar": "10"}]));

    // distinct copies cannot be told apart, even in a basis state
    let o = qca(&["readout-demo", "--n", "2", "--r", "10", "--r-bar", "11"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["solutions"].as_array().unwrap().len(), 2);

    let o = qca(&["readout-demo", "--n", "3", "--r", "101", "--r-bar", "011", "--superpose", "--model", "dephasing"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["solutions"].as_array().unwrap().len(), 2);
    assert_eq!(json["J"], serde_json::json!([1, 2]));
}

#[test]
fn readout_demo_rejects_bad_registers() {
    assert_eq!(qca(&["readout-demo", "--n", "2", "--r", "101"]).status.code(), Some(2));
    assert_eq!(qca(&["readout-demo", "--n", "2", "--r", "1x"]).status.code(), Some(2));
    assert_eq!(qca(&["readout-demo", "--n", "0", "--r", ""]).status.code(), Some(2));
}

#[test]
fn seeded_output_is_byte_identical() {
    let args = ["readout-demo", "--n", "2", "--r", "01", "--r-bar", "10", "--superpose", "--seed", "7"];
    assert_eq!(qca(&args).stdout, qca(&args).stdout);
    let args = ["detect-length", "--N", "5", "--t-max", "10", "--shots", "16", "--seed", "3"];
    assert_eq!(qca(&args).stdout, qca(&args).stdout);
}

#[test]
fn detect_length_examples() {
    let o = qca(&["detect-length", "--N", "4", "--t-max", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("detected N = 4\n"));

    let o = qca(&["detect-length", "--N", "1", "--t-max", "20"]);
    assert!(stdout(&o).ends_with("detected N = 1\n"));

    let o = qca(&["detect-length", "--N", "7", "--t-max", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("inconclusive"));
}
