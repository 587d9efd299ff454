//! Gate-level circuit representation and the circuit constructions used
//! throughout the crate: the Bernstein-Vazirani core, the prefix-XOR
//! post-processing block, the full zero-crossing counting circuit, and
//! the sequency-ordered Walsh-Hadamard circuit.
//!
//! Circuits are immutable once built; the builder functions here are the
//! only producers. Qubit `n` (the last one) is the ancilla in every
//! construction that has one, so data-register qubit indices equal the
//! bit indices of the secret.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::fmt;

use crate::bits::BitString;
use crate::error::{Error, Result};

/// A single gate. Control/target roles are fixed by the variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    X(usize),
    Cnot {
        control: usize,
        target: usize,
    },
    Toffoli {
        control1: usize,
        control2: usize,
        target: usize,
    },
    Swap(usize, usize),
}

/// Gate kind without operands, for counting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GateKind {
    H,
    X,
    Cnot,
    Toffoli,
    Swap,
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::X(_) => GateKind::X,
            Gate::Cnot { .. } => GateKind::Cnot,
            Gate::Toffoli { .. } => GateKind::Toffoli,
            Gate::Swap(..) => GateKind::Swap,
        }
    }

    /// Qubits the gate touches, in declaration order.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::X(q) => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
            Gate::Toffoli {
                control1,
                control2,
                target,
            } => vec![control1, control2, target],
            Gate::Swap(a, b) => vec![a, b],
        }
    }

    fn validate(&self, num_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        for &q in &qubits {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    num_qubits,
                });
            }
        }
        for (i, &q) in qubits.iter().enumerate() {
            if qubits[i + 1..].contains(&q) {
                return Err(Error::RepeatedQubit { qubit: q });
            }
        }
        Ok(())
    }
}

/// An ordered list of gates over a declared qubit count. Gate order is
/// application order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
    label: Option<String>,
}

impl Circuit {
    /// Validates every gate against the qubit count.
    pub fn from_gates(num_qubits: usize, gates: Vec<Gate>, label: Option<String>) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::InvalidWidth { width: 0 });
        }
        for gate in &gates {
            gate.validate(num_qubits)?;
        }
        Ok(Self {
            num_qubits,
            gates,
            label,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// A new circuit running `self` then `other`. Both must have the same
    /// qubit count.
    pub fn concat(&self, other: &Circuit) -> Result<Circuit> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::QubitCountMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        Ok(Circuit {
            num_qubits: self.num_qubits,
            gates,
            label: None,
        })
    }

    /// Canonical text form: a `qubits <N>` header followed by one gate
    /// per line (`h`, `x`, `cx`, `ccx`, `swap` with zero-based indices).
    /// Exporting, parsing and re-exporting is byte-identical.
    pub fn to_text(&self) -> String {
        let mut out = format!("qubits {}\n", self.num_qubits);
        for gate in &self.gates {
            match *gate {
                Gate::H(q) => out.push_str(&format!("h {q}\n")),
                Gate::X(q) => out.push_str(&format!("x {q}\n")),
                Gate::Cnot { control, target } => out.push_str(&format!("cx {control} {target}\n")),
                Gate::Toffoli {
                    control1,
                    control2,
                    target,
                } => out.push_str(&format!("ccx {control1} {control2} {target}\n")),
                Gate::Swap(a, b) => out.push_str(&format!("swap {a} {b}\n")),
            }
        }
        out
    }

    /// Parses the text form produced by [`Circuit::to_text`].
    pub fn from_text(text: &str) -> Result<Circuit> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::ParseCircuit {
            line: 1,
            message: "missing `qubits <N>` header".into(),
        })?;
        let num_qubits = parse_header(header)?;

        let mut gates = Vec::new();
        for (index, line) in lines {
            let line_no = index + 1;
            if line.is_empty() {
                return Err(Error::ParseCircuit {
                    line: line_no,
                    message: "empty line".into(),
                });
            }
            gates.push(parse_gate_line(line, line_no)?);
        }
        Circuit::from_gates(num_qubits, gates, None)
    }
}

fn parse_header(header: &str) -> Result<usize> {
    let mut parts = header.split(' ');
    match (parts.next(), parts.next(), parts.next()) {
        (Some("qubits"), Some(n), None) => n.parse().map_err(|_| Error::ParseCircuit {
            line: 1,
            message: format!("invalid qubit count {n:?}"),
        }),
        _ => Err(Error::ParseCircuit {
            line: 1,
            message: format!("expected `qubits <N>`, found {header:?}"),
        }),
    }
}

fn parse_gate_line(line: &str, line_no: usize) -> Result<Gate> {
    let mut parts = line.split(' ');
    let mnemonic = parts.next().unwrap_or("");
    let args: Vec<usize> = parts
        .map(|p| {
            p.parse().map_err(|_| Error::ParseCircuit {
                line: line_no,
                message: format!("invalid qubit index {p:?}"),
            })
        })
        .collect::<Result<_>>()?;
    let gate = match (mnemonic, args.as_slice()) {
        ("h", &[q]) => Gate::H(q),
        ("x", &[q]) => Gate::X(q),
        ("cx", &[control, target]) => Gate::Cnot { control, target },
        ("ccx", &[control1, control2, target]) => Gate::Toffoli {
            control1,
            control2,
            target,
        },
        ("swap", &[a, b]) => Gate::Swap(a, b),
        _ => {
            return Err(Error::ParseCircuit {
                line: line_no,
                message: format!("unrecognized gate line {line:?}"),
            })
        }
    };
    Ok(gate)
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Query-counting wrapper around an oracle sub-circuit.
///
/// Every time the oracle block is stitched into a runnable circuit the
/// counter goes up by one, so a complete build-and-simulate of the
/// counting algorithm accounts for exactly one query. The counter is a
/// `Cell`, so a handle belongs to one simulation context at a time.
#[derive(Debug)]
pub struct OracleHandle {
    circuit: Circuit,
    queries: Cell<u64>,
}

impl OracleHandle {
    pub fn new(circuit: Circuit) -> Self {
        Self {
            circuit,
            queries: Cell::new(0),
        }
    }

    /// The oracle block without consuming a query, for inspection.
    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn num_qubits(&self) -> usize {
        self.circuit.num_qubits()
    }

    pub fn query_count(&self) -> u64 {
        self.queries.get()
    }

    /// Records one oracle application and hands out the block.
    pub fn consume_query(&self) -> &Circuit {
        self.queries.set(self.queries.get() + 1);
        &self.circuit
    }
}

/// Oracle for the hidden-string dot product: an (n+1)-qubit block with one
/// CNOT from data qubit `j` to the ancilla for each set bit `s_j`. On a
/// basis state it XORs `s . x` into the ancilla.
pub fn build_oracle(s: &BitString) -> OracleHandle {
    let n = s.width();
    let gates = (0..n)
        .filter(|&j| s.bit(j))
        .map(|j| Gate::Cnot {
            control: j,
            target: n,
        })
        .collect();
    let circuit = Circuit::from_gates(n + 1, gates, Some(format!("oracle s={s}")))
        .expect("oracle gates are in range by construction");
    OracleHandle::new(circuit)
}

/// The post-processing block: a cascade of `n - 1` Toffolis, each
/// controlled by the previous data qubit and the ancilla, so that with
/// the ancilla in |1> data qubit `k` accumulates the parity
/// `s_0 ^ ... ^ s_k`. With `include_swaps`, floor(n/2) swaps then reverse
/// the data register so the measured value is the crossing count itself;
/// without them the count appears in reversed bit order.
pub fn build_prefix_xor_circuit(n: usize, include_swaps: bool) -> Circuit {
    assert!(n >= 1, "need at least one data qubit");
    let ancilla = n;
    let mut gates = Vec::new();
    for k in 1..n {
        gates.push(Gate::Toffoli {
            control1: k - 1,
            control2: ancilla,
            target: k,
        });
    }
    if include_swaps {
        for j in 0..n / 2 {
            gates.push(Gate::Swap(j, n - 1 - j));
        }
    }
    Circuit::from_gates(n + 1, gates, Some(format!("prefix-xor n={n}")))
        .expect("block gates are in range by construction")
}

/// The Bernstein-Vazirani core: ancilla preparation, a Hadamard layer on
/// all qubits, one oracle query, and a second Hadamard layer. Applied to
/// the all-zeros state it leaves |s> on the data register and |1> on the
/// ancilla.
pub fn build_bv_circuit(oracle: &OracleHandle, n: usize) -> Result<Circuit> {
    if oracle.num_qubits() != n + 1 {
        return Err(Error::QubitCountMismatch {
            left: oracle.num_qubits(),
            right: n + 1,
        });
    }
    let ancilla = n;
    let mut gates = vec![Gate::X(ancilla)];
    gates.extend((0..=n).map(Gate::H));
    gates.extend_from_slice(oracle.consume_query().gates());
    gates.extend((0..=n).map(Gate::H));
    Circuit::from_gates(n + 1, gates, Some(format!("bv n={n}")))
}

/// The full counting circuit: the Bernstein-Vazirani core followed by the
/// prefix-XOR block. Consumes exactly one oracle query. Measuring the
/// data register afterwards yields the zero-crossing count of the
/// sequence defined by the oracle's secret.
pub fn build_zero_crossings_circuit(
    oracle: &OracleHandle,
    n: usize,
    include_swaps: bool,
) -> Result<Circuit> {
    let core = build_bv_circuit(oracle, n)?;
    let post = build_prefix_xor_circuit(n, include_swaps);
    let mut gates = core.gates().to_vec();
    gates.extend_from_slice(post.gates());
    Circuit::from_gates(n + 1, gates, Some(format!("zero-crossings n={n}")))
}

/// The sequency-ordered Walsh-Hadamard circuit: ancilla prepared in |1>,
/// Hadamards on the `n` data qubits only, then the prefix-XOR block with
/// swaps. Restricted to the data register (ancilla |1> in and out) its
/// unitary is the sequency-ordered transform matrix.
pub fn build_sequency_wht_circuit(n: usize) -> Circuit {
    assert!(n >= 1, "need at least one data qubit");
    let ancilla = n;
    let mut gates = vec![Gate::X(ancilla)];
    gates.extend((0..n).map(Gate::H));
    gates.extend_from_slice(build_prefix_xor_circuit(n, true).gates());
    Circuit::from_gates(n + 1, gates, Some(format!("sequency-wht n={n}")))
        .expect("gates are in range by construction")
}

/// Per-kind gate counts and a greedy-layering depth estimate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateCensus {
    pub counts: BTreeMap<GateKind, usize>,
    pub depth: usize,
}

impl GateCensus {
    pub fn count(&self, kind: GateKind) -> usize {
        self.counts.get(&kind).copied().unwrap_or(0)
    }
}

/// Counts gates per kind and computes circuit depth by greedy layering:
/// each gate lands in the earliest layer after every earlier gate that
/// shares a qubit with it, so gates on disjoint qubits run in parallel.
pub fn gate_counts(circuit: &Circuit) -> GateCensus {
    let mut counts = BTreeMap::new();
    let mut last_layer = vec![0usize; circuit.num_qubits()];
    let mut depth = 0;
    for gate in circuit.gates() {
        *counts.entry(gate.kind()).or_insert(0) += 1;
        let layer = 1 + gate
            .qubits()
            .iter()
            .map(|&q| last_layer[q])
            .max()
            .expect("gates touch at least one qubit");
        for q in gate.qubits() {
            last_layer[q] = layer;
        }
        depth = depth.max(layer);
    }
    GateCensus { counts, depth }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bs(text: &str) -> BitString {
        text.parse().unwrap()
    }

    #[test]
    fn oracle_gate_layout() {
        let oracle = build_oracle(&bs("101"));
        assert_eq!(oracle.num_qubits(), 4);
        assert_eq!(
            oracle.circuit().gates(),
            &[
                Gate::Cnot {
                    control: 0,
                    target: 3
                },
                Gate::Cnot {
                    control: 2,
                    target: 3
                },
            ]
        );

        let empty = build_oracle(&bs("000"));
        assert!(empty.circuit().is_empty());

        let single = build_oracle(&bs("1"));
        assert_eq!(
            single.circuit().gates(),
            &[Gate::Cnot {
                control: 0,
                target: 1
            }]
        );
    }

    #[test]
    fn oracle_counts_queries_per_build() {
        let oracle = build_oracle(&bs("110"));
        assert_eq!(oracle.query_count(), 0);
        let _ = build_zero_crossings_circuit(&oracle, 3, true).unwrap();
        assert_eq!(oracle.query_count(), 1);
        let _ = build_zero_crossings_circuit(&oracle, 3, false).unwrap();
        assert_eq!(oracle.query_count(), 2);
    }

    #[test]
    fn prefix_xor_census() {
        let census = gate_counts(&build_prefix_xor_circuit(6, true));
        assert_eq!(census.count(GateKind::Toffoli), 5);
        assert_eq!(census.count(GateKind::Swap), 3);

        let trivial = build_prefix_xor_circuit(1, true);
        assert!(trivial.is_empty());
    }

    #[test]
    fn counting_circuit_structure() {
        let oracle = build_oracle(&bs("101"));
        let circuit = build_zero_crossings_circuit(&oracle, 3, true).unwrap();
        let census = gate_counts(&circuit);
        assert_eq!(census.count(GateKind::X), 1);
        assert_eq!(census.count(GateKind::H), 8); // two layers over 4 qubits
        assert_eq!(census.count(GateKind::Cnot), 2);
        assert_eq!(census.count(GateKind::Toffoli), 2);
        assert_eq!(census.count(GateKind::Swap), 1);
    }

    #[test]
    fn oracle_width_is_checked() {
        let oracle = build_oracle(&bs("10"));
        assert!(matches!(
            build_zero_crossings_circuit(&oracle, 3, true),
            Err(Error::QubitCountMismatch { .. })
        ));
    }

    #[test]
    fn sequency_circuit_has_no_hadamard_on_ancilla() {
        let circuit = build_sequency_wht_circuit(6);
        let census = gate_counts(&circuit);
        assert_eq!(census.count(GateKind::H), 6);
        assert_eq!(census.count(GateKind::X), 1);
        assert_eq!(census.count(GateKind::Toffoli), 5);
        assert_eq!(census.count(GateKind::Swap), 3);
        assert!(!circuit.gates().contains(&Gate::H(6)));
    }

    #[test]
    fn sequency_circuit_smallest_case() {
        let circuit = build_sequency_wht_circuit(1);
        assert_eq!(circuit.gates(), &[Gate::X(1), Gate::H(0)]);
    }

    #[test]
    fn swap_layer_is_parallel_in_depth() {
        // The swaps must add exactly one layer on top of the Toffoli
        // cascade regardless of how many there are.
        for n in 2..=12 {
            let with = gate_counts(&build_prefix_xor_circuit(n, true)).depth;
            let without = gate_counts(&build_prefix_xor_circuit(n, false)).depth;
            assert_eq!(with, without + 1, "n={n}");
        }
    }

    #[test]
    fn gate_validation_rejects_bad_indices() {
        assert!(matches!(
            Circuit::from_gates(2, vec![Gate::H(2)], None),
            Err(Error::QubitOutOfRange {
                qubit: 2,
                num_qubits: 2
            })
        ));
        assert!(matches!(
            Circuit::from_gates(
                3,
                vec![Gate::Cnot {
                    control: 1,
                    target: 1
                }],
                None
            ),
            Err(Error::RepeatedQubit { qubit: 1 })
        ));
        assert!(matches!(
            Circuit::from_gates(
                3,
                vec![Gate::Toffoli {
                    control1: 0,
                    control2: 2,
                    target: 0
                }],
                None
            ),
            Err(Error::RepeatedQubit { qubit: 0 })
        ));
    }

    #[test]
    fn text_format_canonical_example() {
        let oracle = build_oracle(&bs("11"));
        let circuit = build_zero_crossings_circuit(&oracle, 2, true).unwrap();
        let text = circuit.to_text();
        assert_eq!(
            text,
            "qubits 3\nx 2\nh 0\nh 1\nh 2\ncx 0 2\ncx 1 2\nh 0\nh 1\nh 2\nccx 0 2 1\nswap 0 1\n"
        );
        let parsed = Circuit::from_text(&text).unwrap();
        assert_eq!(parsed.gates(), circuit.gates());
        assert_eq!(parsed.to_text(), text);
    }

    #[test]
    fn text_parser_rejects_malformed_input() {
        assert!(Circuit::from_text("").is_err());
        assert!(Circuit::from_text("qubits x\n").is_err());
        assert!(Circuit::from_text("qubits 2\nfoo 0\n").is_err());
        assert!(Circuit::from_text("qubits 2\nh 0 1\n").is_err());
        assert!(Circuit::from_text("qubits 2\ncx 0 5\n").is_err());
        assert!(Circuit::from_text("qubits 2\n\nh 0\n").is_err());
    }

    #[test]
    fn concat_requires_equal_widths() {
        let a = build_prefix_xor_circuit(2, true);
        let b = build_prefix_xor_circuit(3, true);
        assert!(a.concat(&b).is_err());
        let joined = a.concat(&a).unwrap();
        assert_eq!(joined.gates().len(), 2 * a.gates().len());
    }

    prop_compose! {
        fn arb_gate(num_qubits: usize)(
            kind in 0..5usize,
            qs in proptest::sample::subsequence((0..num_qubits).collect::<Vec<_>>(), 3),
        ) -> Gate {
            match kind {
                0 => Gate::H(qs[0]),
                1 => Gate::X(qs[0]),
                2 => Gate::Cnot { control: qs[1], target: qs[0] },
                3 => Gate::Toffoli { control1: qs[0], control2: qs[2], target: qs[1] },
                _ => Gate::Swap(qs[0], qs[1]),
            }
        }
    }

    proptest! {
        #[test]
        fn text_round_trip_is_byte_identical(gates in proptest::collection::vec(arb_gate(5), 0..40)) {
            let circuit = Circuit::from_gates(5, gates, None).unwrap();
            let text = circuit.to_text();
            let reparsed = Circuit::from_text(&text).unwrap();
            prop_assert_eq!(reparsed.to_text(), text);
        }
    }
}
