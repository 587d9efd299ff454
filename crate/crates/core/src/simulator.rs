//! Dense statevector engine.
//!
//! Applies [`Circuit`]s to states by in-place stride iteration over the
//! amplitude array, one gate at a time. The public API has value
//! semantics: callers always get a fresh state back. Memory is the real
//! limit -- a q-qubit state holds 2^q complex doubles.

use num_complex::Complex64;
use rand::Rng;
use std::collections::HashMap;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

/// Default cap on total qubits: a 24-qubit data register plus one ancilla.
pub const DEFAULT_QUBIT_CAP: usize = 25;

/// Cap for dense unitary extraction (a 2^q x 2^q complex matrix).
pub const UNITARY_QUBIT_CAP: usize = 12;

/// 2^q complex amplitudes over q qubits. Basis index `i` encodes qubit
/// `j` as bit `j` of `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Wraps raw amplitudes; the length must be `2^num_qubits` and the
    /// squared norm must be 1 within 1e-9.
    pub fn from_amplitudes(num_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if num_qubits == 0 || amps.len() != 1usize << num_qubits {
            return Err(Error::NotPowerOfTwo { len: amps.len() });
        }
        let state = Self { num_qubits, amps };
        let norm_sqr = state.norm_sqr();
        if (norm_sqr - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(state)
    }

    /// As [`StateVector::from_amplitudes`] with purely real amplitudes.
    pub fn from_real_amplitudes(num_qubits: usize, values: &[f64]) -> Result<Self> {
        Self::from_amplitudes(
            num_qubits,
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// The same state divided by the phase of its largest-magnitude
    /// amplitude, for phase-insensitive comparisons.
    pub fn phase_normalized(&self) -> StateVector {
        let largest = self
            .amps
            .iter()
            .copied()
            .max_by(|a, b| a.norm_sqr().total_cmp(&b.norm_sqr()))
            .unwrap_or_else(|| Complex64::new(1.0, 0.0));
        if largest.norm_sqr() == 0.0 {
            return self.clone();
        }
        let phase = largest / largest.norm();
        StateVector {
            num_qubits: self.num_qubits,
            amps: self.amps.iter().map(|a| a / phase).collect(),
        }
    }

    /// One line per amplitude, `index real imag`, 17 significant digits.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (index, amp) in self.amps.iter().enumerate() {
            out.push_str(&format!("{index} {:.16e} {:.16e}\n", amp.re, amp.im));
        }
        out
    }
}

/// Measurement result for a register: the register's value and its
/// marginal probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementOutcome {
    pub basis_index: usize,
    pub probability: f64,
}

/// The basis state `|basis_index>` over `num_qubits` qubits, using the
/// default qubit cap.
pub fn initial_state(num_qubits: usize, basis_index: usize) -> Result<StateVector> {
    initial_state_with_cap(num_qubits, basis_index, DEFAULT_QUBIT_CAP)
}

/// As [`initial_state`] with an explicit qubit cap.
pub fn initial_state_with_cap(
    num_qubits: usize,
    basis_index: usize,
    cap: usize,
) -> Result<StateVector> {
    if num_qubits == 0 {
        return Err(Error::InvalidWidth { width: 0 });
    }
    if num_qubits > cap {
        return Err(Error::ResourceLimit {
            what: "qubit count",
            requested: num_qubits,
            limit: cap,
        });
    }
    let dim = 1usize << num_qubits;
    if basis_index >= dim {
        return Err(Error::IndexOutOfRange {
            index: basis_index,
            len: dim,
        });
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    amps[basis_index] = Complex64::new(1.0, 0.0);
    Ok(StateVector { num_qubits, amps })
}

/// Runs every gate of `circuit` on `state`, in order, and returns the
/// final state. The input is untouched.
pub fn apply(state: &StateVector, circuit: &Circuit) -> Result<StateVector> {
    if state.num_qubits != circuit.num_qubits() {
        return Err(Error::QubitCountMismatch {
            left: state.num_qubits,
            right: circuit.num_qubits(),
        });
    }
    let mut amps = state.amps.clone();
    for gate in circuit.gates() {
        apply_gate(&mut amps, gate);
    }
    Ok(StateVector {
        num_qubits: state.num_qubits,
        amps,
    })
}

fn apply_gate(amps: &mut [Complex64], gate: &Gate) {
    match *gate {
        Gate::H(target) => for_each_pair(amps, target, |a, b| {
            let sum = (*a + *b) * FRAC_1_SQRT_2;
            let diff = (*a - *b) * FRAC_1_SQRT_2;
            *a = sum;
            *b = diff;
        }),
        Gate::X(target) => for_each_pair(amps, target, std::mem::swap),
        Gate::Cnot { control, target } => {
            let control_mask = 1usize << control;
            for_each_pair_indexed(amps, target, |i, a, b| {
                if i & control_mask != 0 {
                    std::mem::swap(a, b);
                }
            });
        }
        Gate::Toffoli {
            control1,
            control2,
            target,
        } => {
            let controls = (1usize << control1) | (1usize << control2);
            for_each_pair_indexed(amps, target, |i, a, b| {
                if i & controls == controls {
                    std::mem::swap(a, b);
                }
            });
        }
        Gate::Swap(p, q) => {
            let (pm, qm) = (1usize << p, 1usize << q);
            // Visit indices with bit p set and bit q clear; the partner
            // has the two bits exchanged.
            for i in 0..amps.len() {
                if i & pm != 0 && i & qm == 0 {
                    amps.swap(i, i ^ pm ^ qm);
                }
            }
        }
    }
}

/// Calls `f` on every amplitude pair that differs only in `target`,
/// with the target-clear element first.
fn for_each_pair(
    amps: &mut [Complex64],
    target: usize,
    mut f: impl FnMut(&mut Complex64, &mut Complex64),
) {
    for_each_pair_indexed(amps, target, |_, a, b| f(a, b));
}

fn for_each_pair_indexed(
    amps: &mut [Complex64],
    target: usize,
    mut f: impl FnMut(usize, &mut Complex64, &mut Complex64),
) {
    let mask = 1usize << target;
    let mut base = 0;
    while base < amps.len() {
        for offset in base..base + mask {
            let (lo, hi) = amps.split_at_mut(offset + mask);
            f(offset, &mut lo[offset], &mut hi[0]);
        }
        base += mask << 1;
    }
}

/// Marginal probabilities of a register (a list of distinct qubits).
/// Register value `v` has bit `t` equal to bit `qubit_indices[t]` of the
/// basis index.
fn register_marginals(state: &StateVector, qubit_indices: &[usize]) -> Result<HashMap<usize, f64>> {
    for (i, &q) in qubit_indices.iter().enumerate() {
        if q >= state.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                num_qubits: state.num_qubits,
            });
        }
        if qubit_indices[i + 1..].contains(&q) {
            return Err(Error::RepeatedQubit { qubit: q });
        }
    }
    let mut marginals: HashMap<usize, f64> = HashMap::new();
    for (index, amp) in state.amps.iter().enumerate() {
        let p = amp.norm_sqr();
        if p == 0.0 {
            continue;
        }
        let mut value = 0usize;
        for (t, &q) in qubit_indices.iter().enumerate() {
            if index >> q & 1 == 1 {
                value |= 1 << t;
            }
        }
        *marginals.entry(value).or_insert(0.0) += p;
    }
    Ok(marginals)
}

/// Deterministic register readout: returns the most probable register
/// value, and errors unless that value carries essentially all of the
/// probability (within 1e-9). The circuits in this crate always end in a
/// register basis state, so a failure here is a correctness tripwire.
pub fn measure_register(
    state: &StateVector,
    qubit_indices: &[usize],
) -> Result<MeasurementOutcome> {
    let marginals = register_marginals(state, qubit_indices)?;
    let mut ranked: Vec<(usize, f64)> = marginals.into_iter().collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let (best_index, best_probability) = ranked[0];
    if best_probability < 1.0 - 1e-9 {
        let (second_index, second_probability) = ranked.get(1).copied().unwrap_or((0, 0.0));
        return Err(Error::NotABasisState {
            best_index,
            best_probability,
            second_index,
            second_probability,
        });
    }
    Ok(MeasurementOutcome {
        basis_index: best_index,
        probability: best_probability,
    })
}

/// Sampled register readout drawing from the register's marginal
/// distribution. Not used by the counting algorithm (whose outcome is
/// deterministic) but available for completeness.
pub fn sample_register(
    state: &StateVector,
    qubit_indices: &[usize],
    rng: &mut impl Rng,
) -> Result<MeasurementOutcome> {
    let marginals = register_marginals(state, qubit_indices)?;
    let mut ranked: Vec<(usize, f64)> = marginals.into_iter().collect();
    ranked.sort_by_key(|&(value, _)| value);
    let total: f64 = ranked.iter().map(|&(_, p)| p).sum();
    let draw: f64 = rng.gen::<f64>() * total;
    let mut cumulative = 0.0;
    for &(value, p) in &ranked {
        cumulative += p;
        if draw < cumulative {
            return Ok(MeasurementOutcome {
                basis_index: value,
                probability: p,
            });
        }
    }
    let &(value, p) = ranked.last().expect("state has at least one amplitude");
    Ok(MeasurementOutcome {
        basis_index: value,
        probability: p,
    })
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    /// `self * other^dagger`, for unitarity checks.
    pub fn mul_dagger(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, other.dim);
        let dim = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..dim {
                    acc += self.entry(r, k) * other.entry(c, k).conj();
                }
                data[r * dim + c] = acc;
            }
        }
        ComplexMatrix { dim, data }
    }
}

/// The full unitary of a circuit, built column by column: column `j` is
/// the circuit applied to `|j>`. Capped at [`UNITARY_QUBIT_CAP`] qubits.
pub fn circuit_unitary(circuit: &Circuit) -> Result<ComplexMatrix> {
    let q = circuit.num_qubits();
    if q > UNITARY_QUBIT_CAP {
        return Err(Error::ResourceLimit {
            what: "unitary qubit count",
            requested: q,
            limit: UNITARY_QUBIT_CAP,
        });
    }
    let dim = 1usize << q;
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    for col in 0..dim {
        let state = apply(&initial_state(q, col)?, circuit)?;
        for (row, amp) in state.amplitudes().iter().enumerate() {
            data[row * dim + col] = *amp;
        }
    }
    Ok(ComplexMatrix { dim, data })
}
