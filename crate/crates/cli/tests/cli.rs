//! End-to-end tests driving the `seqsim` binary.

use std::path::Path;
use std::process::{Command, Output};

use seqsim_core::circuit::{gate_counts, Circuit, GateKind};

fn seqsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqsim"))
        .args(args)
        .env_remove("SEQSIM_MAX_QUBITS")
        .output()
        .expect("binary runs")
}

fn seqsim_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqsim"))
        .args(args)
        .env_remove("SEQSIM_MAX_QUBITS")
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn result_line(output: &Output) -> String {
    stdout(output)
        .lines()
        .last()
        .expect("nonempty stdout")
        .to_string()
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

fn read_vector(path: &Path) -> Vec<f64> {
    std::fs::read_to_string(path)
        .expect("output file")
        .lines()
        .map(|l| l.parse().expect("float line"))
        .collect()
}

#[test]
fn count_quantum_reference_case() {
    let out = seqsim(&["count", "--secret", "101", "--method", "quantum"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("oracle_queries: 1"), "{text}");
    assert_eq!(result_line(&out), "result: 6");
}

#[test]
fn count_brute_of_zero_secret() {
    let out = seqsim(&["count", "--secret", "000", "--method", "brute"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(result_line(&out), "result: 0");
}

#[test]
fn count_methods_agree() {
    let brute = seqsim(&["count", "--secret", "0111", "--method", "brute"]);
    let recurrence = seqsim(&["count", "--secret", "0111", "--method", "recurrence"]);
    let closed = seqsim(&["count", "--secret", "0111", "--method", "closed"]);
    let quantum = seqsim(&["count", "--secret", "0111", "--method", "quantum"]);
    assert_eq!(result_line(&brute), "result: 11");
    assert_eq!(result_line(&recurrence), result_line(&brute));
    assert_eq!(result_line(&closed), result_line(&brute));
    assert_eq!(result_line(&quantum), result_line(&brute));
}

#[test]
fn count_rejects_bad_secret() {
    let out = seqsim(&["count", "--secret", "10a1"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn count_omit_swaps_still_counts() {
    let out = seqsim(&["count", "--secret", "101", "--omit-swaps"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(result_line(&out), "result: 6");
}

#[test]
fn count_seeded_sampling_of_a_deterministic_outcome() {
    let out = seqsim(&["count", "--secret", "110", "--seed", "42"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(result_line(&out), "result: 2");
}

#[test]
fn count_cap_exceeded_is_a_resource_error() {
    let out = seqsim(&["count", "--secret", "101", "--max-qubits", "2"]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn cap_env_variable_and_flag_precedence() {
    let env_only = seqsim_with_env(&["count", "--secret", "101"], "SEQSIM_MAX_QUBITS", "2");
    assert_eq!(exit_code(&env_only), 3);

    let flag_wins = seqsim_with_env(
        &["count", "--secret", "101", "--max-qubits", "24"],
        "SEQSIM_MAX_QUBITS",
        "2",
    );
    assert_eq!(exit_code(&flag_wins), 0);
    assert_eq!(result_line(&flag_wins), "result: 6");
}

#[test]
fn count_dump_files() {
    let dir = tempfile::tempdir().unwrap();
    let state_path = dir.path().join("state.txt");
    let seq_path = dir.path().join("sequence.txt");
    let out = seqsim(&[
        "count",
        "--secret",
        "101",
        "--dump-state",
        state_path.to_str().unwrap(),
        "--dump-sequence",
        seq_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);

    let state = std::fs::read_to_string(&state_path).unwrap();
    let lines: Vec<&str> = state.lines().collect();
    assert_eq!(lines.len(), 16);
    // Final state concentrates on index 6 + 8 = 14 (count 6, ancilla set).
    for (index, line) in lines.iter().enumerate() {
        let fields: Vec<&str> = line.split(' ').collect();
        assert_eq!(fields.len(), 3, "{line}");
        assert_eq!(fields[0], index.to_string());
        let re: f64 = fields[1].parse().unwrap();
        let im: f64 = fields[2].parse().unwrap();
        let expected = if index == 14 { 1.0 } else { 0.0 };
        assert!((re - expected).abs() < 1e-12, "{line}");
        assert!(im.abs() < 1e-12, "{line}");
    }

    let sequence = std::fs::read_to_string(&seq_path).unwrap();
    assert_eq!(sequence, "+1,-1,+1,-1,-1,+1,-1,+1\n");
}

#[test]
fn table1_rows_and_self_check() {
    let out = seqsim(&["table1"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 9);
    assert_eq!(lines[6], "110 +1,+1,-1,-1,-1,-1,+1,+1 2 2");
    assert_eq!(lines[4], "100 +1,+1,+1,+1,-1,-1,-1,-1 1 1");
    assert_eq!(lines[8], "result: ok");
    for (row, expected) in lines[..8].iter().zip([0, 7, 3, 4, 1, 6, 2, 5]) {
        let quantum: u64 = row.split(' ').nth(2).unwrap().parse().unwrap();
        let brute: u64 = row.split(' ').nth(3).unwrap().parse().unwrap();
        assert_eq!(quantum, expected);
        assert_eq!(brute, expected);
    }
}

#[test]
fn bv_recovers_the_secret() {
    let out = seqsim(&["bv", "--secret", "100110"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("oracle_queries: 1"));
    assert_eq!(result_line(&out), "result: 100110");
}

#[test]
fn wht_fast_and_matrix_routes_agree() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("input.csv");
    let values: Vec<String> = (0..64)
        .map(|i| format!("{:.16e}", ((i + 1) as f64).sin()))
        .collect();
    std::fs::write(&input, values.join("\n") + "\n").unwrap();

    let fast_out = dir.path().join("fast.csv");
    let matrix_out = dir.path().join("matrix.csv");
    for (via, path) in [("fast", &fast_out), ("matrix", &matrix_out)] {
        let out = seqsim(&[
            "wht",
            "--order",
            "sequency",
            "--via",
            via,
            "--input",
            input.to_str().unwrap(),
            "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&out), 0, "via {via}");
        assert_eq!(result_line(&out), "result: ok");
    }

    let fast = read_vector(&fast_out);
    let matrix = read_vector(&matrix_out);
    assert_eq!(fast.len(), 64);
    for (a, b) in fast.iter().zip(&matrix) {
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn wht_circuit_and_matrix_routes_agree_on_unit_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("input.csv");
    // A unit-norm length-8 vector.
    let raw: Vec<f64> = (0..8).map(|i| ((i + 2) as f64).cos()).collect();
    let norm: f64 = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
    let lines: Vec<String> = raw.iter().map(|v| format!("{:.16e}", v / norm)).collect();
    std::fs::write(&input, lines.join("\n") + "\n").unwrap();

    let circuit_out = dir.path().join("circuit.csv");
    let matrix_out = dir.path().join("matrix.csv");
    for (via, path) in [("circuit", &circuit_out), ("matrix", &matrix_out)] {
        let out = seqsim(&[
            "wht",
            "--order",
            "sequency",
            "--via",
            via,
            "--input",
            input.to_str().unwrap(),
            "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&out), 0, "via {via}");
    }

    let circuit = read_vector(&circuit_out);
    let matrix = read_vector(&matrix_out);
    for (a, b) in circuit.iter().zip(&matrix) {
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn wht_natural_of_constant_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("ones.csv");
    std::fs::write(&input, "1\n".repeat(8)).unwrap();
    let output = dir.path().join("out.csv");
    let out = seqsim(&[
        "wht",
        "--order",
        "natural",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let values = read_vector(&output);
    assert!((values[0] - 8f64.sqrt()).abs() < 1e-12);
    for &v in &values[1..] {
        assert_eq!(v, 0.0);
    }
}

#[test]
fn wht_rejects_bad_lengths_and_norms() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("input.csv");
    let output = dir.path().join("out.csv");

    std::fs::write(&input, "1\n2\n3\n").unwrap();
    let out = seqsim(&[
        "wht",
        "--order",
        "sequency",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 2);

    std::fs::write(&input, "1\n2\n3\n4\n").unwrap();
    let out = seqsim(&[
        "wht",
        "--order",
        "sequency",
        "--via",
        "circuit",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn matrix_command_prints_reference_rows() {
    let out = seqsim(&["matrix", "--order", "sequency", "-n", "3"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 9);
    assert_eq!(lines[8], "result: ok");
    let row1: Vec<f64> = lines[1].split(',').map(|v| v.parse().unwrap()).collect();
    let scale = 1.0 / 8f64.sqrt();
    let expected = [1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0];
    for (a, e) in row1.iter().zip(expected) {
        assert!((a - e * scale).abs() < 1e-15);
    }
}

#[test]
fn circuit_export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, extra) in [
        ("bv", vec!["--secret", "101"]),
        ("zero-crossings", vec!["--secret", "101"]),
        ("sequency-wht", vec!["-n", "3"]),
    ] {
        let path = dir.path().join(format!("{kind}.txt"));
        let mut args = vec![
            "circuit",
            "--kind",
            kind,
            "--output",
            path.to_str().unwrap(),
        ];
        args.extend(extra);
        let out = seqsim(&args);
        assert_eq!(exit_code(&out), 0, "kind {kind}");

        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = Circuit::from_text(&text).unwrap();
        assert_eq!(parsed.to_text(), text, "kind {kind}");
    }
}

#[test]
fn sequency_circuit_gate_census() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seq6.txt");
    let out = seqsim(&[
        "circuit",
        "--kind",
        "sequency-wht",
        "-n",
        "6",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let circuit = Circuit::from_text(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let census = gate_counts(&circuit);
    assert_eq!(census.count(GateKind::H), 6);
    assert_eq!(census.count(GateKind::X), 1);
    assert_eq!(census.count(GateKind::Toffoli), 5);
    assert_eq!(census.count(GateKind::Swap), 3);
}

#[test]
fn circuit_with_empty_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bv0.txt");
    let out = seqsim(&[
        "circuit",
        "--kind",
        "bv",
        "--secret",
        "000",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(!text.contains("cx"), "{text}");
}

#[test]
fn circuit_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.txt");

    let missing_secret = seqsim(&[
        "circuit",
        "--kind",
        "zero-crossings",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&missing_secret), 2);

    let conflicting_n = seqsim(&[
        "circuit",
        "--kind",
        "bv",
        "--secret",
        "101",
        "-n",
        "4",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&conflicting_n), 2);

    let unknown_command = seqsim(&["no-such-command"]);
    assert_eq!(exit_code(&unknown_command), 2);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let first = seqsim(&["count", "--secret", "1011", "--method", "quantum"]);
    let second = seqsim(&["count", "--secret", "1011", "--method", "quantum"]);
    assert_eq!(first.stdout, second.stdout);

    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("input.csv");
    std::fs::write(&input, "0.5\n-0.5\n0.5\n-0.5\n").unwrap();
    let out_a = dir.path().join("a.csv");
    let out_b = dir.path().join("b.csv");
    for path in [&out_a, &out_b] {
        let out = seqsim(&[
            "wht",
            "--order",
            "sequency",
            "--input",
            input.to_str().unwrap(),
            "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&out), 0);
    }
    assert_eq!(
        std::fs::read(&out_a).unwrap(),
        std::fs::read(&out_b).unwrap()
    );
}
