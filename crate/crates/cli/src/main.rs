//! Command-line front end for reproduction runs, file-based transform
//! application and circuit export.
//!
//! Output grammar: data lines first, then a single machine-readable
//! `result: <value>` line on stdout; diagnostics go to stderr. Exit
//! codes: 0 success, 2 usage error, 3 resource limit, 4 failed
//! self-check.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use seqsim_core::bits::{reverse_bits, BitString};
use seqsim_core::circuit::{
    build_bv_circuit, build_oracle, build_sequency_wht_circuit, build_zero_crossings_circuit,
    Circuit, Gate,
};
use seqsim_core::classical::{
    brute_force_zero_crossings, generate_sequence, zero_crossings_closed_form,
    zero_crossings_recurrence,
};
use seqsim_core::simulator::{
    apply, initial_state_with_cap, measure_register, sample_register, StateVector,
};
use seqsim_core::transforms::{
    fwht_natural, fwht_sequency, natural_matrix, sequency_matrix, RealVector,
};
use seqsim_core::Error as CoreError;

const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_SELF_CHECK: u8 = 4;

#[derive(Parser)]
#[command(
    name = "seqsim",
    version,
    about = "Zero-crossing counting and sequency-ordered Walsh-Hadamard transforms \
             on an exact statevector simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the sign changes of the +/-1 sequence defined by a secret
    /// bit string.
    Count {
        /// Secret bit string, most significant bit first (e.g. "101").
        #[arg(long)]
        secret: String,
        #[arg(long, value_enum, default_value_t = Method::Quantum)]
        method: Method,
        /// Build the counting circuit without the final swap layer and
        /// read the register in reversed bit order instead.
        #[arg(long)]
        omit_swaps: bool,
        /// Write the final statevector to this file (quantum method).
        #[arg(long)]
        dump_state: Option<PathBuf>,
        /// Write the generated +1/-1 sequence to this file.
        #[arg(long)]
        dump_sequence: Option<PathBuf>,
        /// Sample the final measurement with this seed instead of the
        /// deterministic readout (quantum method).
        #[arg(long)]
        seed: Option<u64>,
        /// Largest data register the simulator may allocate.
        #[arg(long, env = "SEQSIM_MAX_QUBITS", default_value_t = 24)]
        max_qubits: usize,
    },
    /// Recover the secret string itself with a single oracle query.
    Bv {
        /// Secret bit string, most significant bit first.
        #[arg(long)]
        secret: String,
        /// Write the final statevector to this file.
        #[arg(long)]
        dump_state: Option<PathBuf>,
        #[arg(long, env = "SEQSIM_MAX_QUBITS", default_value_t = 24)]
        max_qubits: usize,
    },
    /// Print the eight reference rows for 3-bit secrets (secret,
    /// sequence, quantum count, brute-force count) and cross-check them.
    Table1,
    /// Apply a Walsh-Hadamard transform to a CSV vector file.
    Wht {
        #[arg(long, value_enum)]
        order: Order,
        /// Computation route: the fast transform, a dense matrix product,
        /// or a simulated circuit (requires a unit-norm input).
        #[arg(long, value_enum, default_value_t = Via::Fast)]
        via: Via,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, env = "SEQSIM_MAX_QUBITS", default_value_t = 24)]
        max_qubits: usize,
    },
    /// Write a transform matrix as CSV (one row per line).
    Matrix {
        #[arg(long, value_enum)]
        order: Order,
        /// log2 of the matrix dimension.
        #[arg(short, long)]
        n: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Export one of the circuit constructions in the text format.
    Circuit {
        #[arg(long, value_enum)]
        kind: CircuitKind,
        /// Data-register width; required for sequency-wht, otherwise
        /// inferred from the secret.
        #[arg(short, long)]
        n: Option<usize>,
        /// Secret bit string for the oracle-bearing kinds.
        #[arg(long)]
        secret: Option<String>,
        /// Leave out the final swap layer of the counting circuit.
        #[arg(long)]
        omit_swaps: bool,
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Quantum,
    Brute,
    Recurrence,
    Closed,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Order {
    Natural,
    Sequency,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Via {
    Fast,
    Matrix,
    Circuit,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CircuitKind {
    Bv,
    ZeroCrossings,
    SequencyWht,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn self_check(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_SELF_CHECK,
            message: message.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(error: CoreError) -> Self {
        let code = match &error {
            CoreError::ResourceLimit { .. } => EXIT_RESOURCE,
            CoreError::SelfCheck(_) | CoreError::NotABasisState { .. } => EXIT_SELF_CHECK,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: error.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Count {
            secret,
            method,
            omit_swaps,
            dump_state,
            dump_sequence,
            seed,
            max_qubits,
        } => run_count(
            &secret,
            method,
            omit_swaps,
            dump_state.as_deref(),
            dump_sequence.as_deref(),
            seed,
            max_qubits,
        ),
        Command::Bv {
            secret,
            dump_state,
            max_qubits,
        } => run_bv(&secret, dump_state.as_deref(), max_qubits),
        Command::Table1 => run_table1(),
        Command::Wht {
            order,
            via,
            input,
            output,
            max_qubits,
        } => run_wht(order, via, &input, &output, max_qubits),
        Command::Matrix { order, n, output } => run_matrix(order, n, output.as_deref()),
        Command::Circuit {
            kind,
            n,
            secret,
            omit_swaps,
            output,
        } => run_circuit(kind, n, secret.as_deref(), omit_swaps, &output),
    }
}

fn parse_secret(text: &str) -> Result<BitString, Failure> {
    text.parse::<BitString>().map_err(Failure::from)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn check_data_qubits(n: usize, max_qubits: usize) -> Result<(), Failure> {
    if n > max_qubits {
        return Err(Failure::from(CoreError::ResourceLimit {
            what: "data qubits",
            requested: n,
            limit: max_qubits,
        }));
    }
    Ok(())
}

fn run_count(
    secret: &str,
    method: Method,
    omit_swaps: bool,
    dump_state: Option<&Path>,
    dump_sequence: Option<&Path>,
    seed: Option<u64>,
    max_qubits: usize,
) -> Result<(), Failure> {
    let secret = parse_secret(secret)?;
    let n = secret.width();
    if let Some(path) = dump_sequence {
        let sequence = generate_sequence(&secret)?;
        write_file(path, &format!("{}\n", sequence.to_token_string()))?;
    }
    let count = match method {
        Method::Brute => brute_force_zero_crossings(&generate_sequence(&secret)?),
        Method::Recurrence => zero_crossings_recurrence(&secret),
        Method::Closed => zero_crossings_closed_form(&secret),
        Method::Quantum => {
            check_data_qubits(n, max_qubits)?;
            let oracle = build_oracle(&secret);
            let circuit = build_zero_crossings_circuit(&oracle, n, !omit_swaps)?;
            let start = initial_state_with_cap(n + 1, 0, max_qubits + 1)?;
            let state = apply(&start, &circuit)?;
            if let Some(path) = dump_state {
                write_file(path, &state.dump())?;
            }
            let register: Vec<usize> = (0..n).collect();
            let outcome = match seed {
                Some(seed) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    sample_register(&state, &register, &mut rng)?
                }
                None => measure_register(&state, &register)?,
            };
            println!("oracle_queries: {}", oracle.query_count());
            let measured = outcome.basis_index as u64;
            if omit_swaps {
                reverse_bits(measured, n)
            } else {
                measured
            }
        }
    };
    println!("result: {count}");
    Ok(())
}

fn run_bv(secret: &str, dump_state: Option<&Path>, max_qubits: usize) -> Result<(), Failure> {
    let secret = parse_secret(secret)?;
    let n = secret.width();
    check_data_qubits(n, max_qubits)?;
    let oracle = build_oracle(&secret);
    let circuit = build_bv_circuit(&oracle, n)?;
    let start = initial_state_with_cap(n + 1, 0, max_qubits + 1)?;
    let state = apply(&start, &circuit)?;
    if let Some(path) = dump_state {
        write_file(path, &state.dump())?;
    }
    let register: Vec<usize> = (0..n).collect();
    let outcome = measure_register(&state, &register)?;
    let recovered = BitString::from_integer(outcome.basis_index as u64, n)?;
    println!("oracle_queries: {}", oracle.query_count());
    println!("result: {recovered}");
    Ok(())
}

fn run_table1() -> Result<(), Failure> {
    let mut mismatches = Vec::new();
    for value in 0..8u64 {
        let secret = BitString::from_integer(value, 3)?;
        let sequence = generate_sequence(&secret)?;
        let brute = brute_force_zero_crossings(&sequence);

        let oracle = build_oracle(&secret);
        let circuit = build_zero_crossings_circuit(&oracle, 3, true)?;
        let state = apply(&initial_state_with_cap(4, 0, 5)?, &circuit)?;
        let outcome = measure_register(&state, &[0, 1, 2])?;
        let quantum = outcome.basis_index as u64;

        println!("{secret} {} {quantum} {brute}", sequence.to_token_string());
        if quantum != brute {
            mismatches.push(format!(
                "secret {secret}: quantum {quantum} vs brute {brute}"
            ));
        }
    }
    if mismatches.is_empty() {
        println!("result: ok");
        Ok(())
    } else {
        Err(Failure::self_check(mismatches.join("; ")))
    }
}

fn run_wht(
    order: Order,
    via: Via,
    input: &Path,
    output: &Path,
    max_qubits: usize,
) -> Result<(), Failure> {
    let text = fs::read_to_string(input)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", input.display())))?;
    let vector = RealVector::from_csv_str(&text)?;
    let n = vector.num_bits();
    let transformed = match (order, via) {
        (Order::Natural, Via::Fast) => fwht_natural(&vector),
        (Order::Sequency, Via::Fast) => fwht_sequency(&vector)?,
        (Order::Natural, Via::Matrix) => natural_matrix(n)?.mul_vec(&vector)?,
        (Order::Sequency, Via::Matrix) => sequency_matrix(n)?.mul_vec(&vector)?,
        (order, Via::Circuit) => wht_via_circuit(order, &vector, max_qubits)?,
    };
    write_file(output, &transformed.to_csv_string())?;
    println!("result: ok");
    Ok(())
}

/// Runs the transform by simulating the corresponding circuit on the
/// input vector as a quantum state. Requires a unit-norm input.
fn wht_via_circuit(
    order: Order,
    vector: &RealVector,
    max_qubits: usize,
) -> Result<RealVector, Failure> {
    let n = vector.num_bits();
    check_data_qubits(n, max_qubits)?;
    let norm = vector.norm();
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Failure::usage(format!(
            "via circuit requires a unit-norm input vector (norm is {norm})"
        )));
    }
    let normalized: Vec<f64> = vector.values().iter().map(|&x| x / norm).collect();
    let real_out = match order {
        Order::Natural => {
            let gates: Vec<Gate> = (0..n).map(Gate::H).collect();
            let circuit = Circuit::from_gates(n, gates, None)?;
            let state = StateVector::from_real_amplitudes(n, &normalized)?;
            let out = apply(&state, &circuit)?;
            out.amplitudes().iter().map(|a| a.re).collect()
        }
        Order::Sequency => {
            let circuit = build_sequency_wht_circuit(n);
            // Data register holds the signal, ancilla starts clear; the
            // circuit itself flips the ancilla on.
            let dim = 1usize << n;
            let mut padded = vec![0.0; 2 * dim];
            padded[..dim].copy_from_slice(&normalized);
            let state = StateVector::from_real_amplitudes(n + 1, &padded)?;
            let out = apply(&state, &circuit)?;
            let leak: f64 = out.amplitudes()[..dim].iter().map(|a| a.norm_sqr()).sum();
            if leak > 1e-18 {
                return Err(Failure::self_check(format!(
                    "ancilla left its expected state (leaked probability {leak})"
                )));
            }
            out.amplitudes()[dim..].iter().map(|a| a.re).collect()
        }
    };
    RealVector::new(real_out).map_err(Failure::from)
}

fn run_matrix(order: Order, n: usize, output: Option<&Path>) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::usage("matrix size must be at least 1 bit"));
    }
    let matrix = match order {
        Order::Natural => natural_matrix(n)?,
        Order::Sequency => sequency_matrix(n)?,
    };
    match output {
        Some(path) => write_file(path, &matrix.to_csv_string())?,
        None => print!("{}", matrix.to_csv_string()),
    }
    println!("result: ok");
    Ok(())
}

fn run_circuit(
    kind: CircuitKind,
    n: Option<usize>,
    secret: Option<&str>,
    omit_swaps: bool,
    output: &Path,
) -> Result<(), Failure> {
    let circuit = match kind {
        CircuitKind::Bv | CircuitKind::ZeroCrossings => {
            let secret =
                secret.ok_or_else(|| Failure::usage("this circuit kind requires --secret"))?;
            let secret = parse_secret(secret)?;
            let width = secret.width();
            if let Some(n) = n {
                if n != width {
                    return Err(Failure::usage(format!(
                        "-n {n} conflicts with a width-{width} secret"
                    )));
                }
            }
            let oracle = build_oracle(&secret);
            match kind {
                CircuitKind::Bv => build_bv_circuit(&oracle, width)?,
                _ => build_zero_crossings_circuit(&oracle, width, !omit_swaps)?,
            }
        }
        CircuitKind::SequencyWht => {
            if secret.is_some() {
                return Err(Failure::usage("sequency-wht does not take --secret"));
            }
            let n = n.ok_or_else(|| Failure::usage("sequency-wht requires -n"))?;
            if n == 0 {
                return Err(Failure::usage("-n must be at least 1"));
            }
            build_sequency_wht_circuit(n)
        }
    };
    write_file(output, &circuit.to_text())?;
    println!("result: ok");
    Ok(())
}
