//! Classical reference implementations of the zero-crossing count.
//!
//! Everything else in the crate is validated against this module: it
//! generates the +/-1 sequence for a secret string, counts sign changes
//! by brute force, and computes the same count via a doubling recurrence
//! and via the closed-form cumulative-parity expression. The three
//! routes are independent on purpose.

use crate::bits::{crossing_count_bits, BitString};
use crate::error::{Error, Result};

/// Default cap on the secret width for sequence generation: 2^20 entries
/// is plenty for a verification oracle.
pub const DEFAULT_SEQUENCE_WIDTH_CAP: usize = 20;

/// A sequence of +1/-1 values whose length is a power of two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignSequence {
    values: Vec<i8>,
}

impl SignSequence {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        let len = values.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo { len });
        }
        for (index, &value) in values.iter().enumerate() {
            if value != 1 && value != -1 {
                return Err(Error::InvalidSignValue { index, value });
            }
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Comma-separated "+1"/"-1" tokens, the CLI dump format.
    pub fn to_token_string(&self) -> String {
        let tokens: Vec<&str> = self
            .values
            .iter()
            .map(|&v| if v == 1 { "+1" } else { "-1" })
            .collect();
        tokens.join(",")
    }
}

/// The +/-1 sequence for secret `s`: entry `k` is `(-1)^(s . k)`.
pub fn generate_sequence(s: &BitString) -> Result<SignSequence> {
    generate_sequence_with_cap(s, DEFAULT_SEQUENCE_WIDTH_CAP)
}

/// Same as [`generate_sequence`] with an explicit width cap.
pub fn generate_sequence_with_cap(s: &BitString, max_width: usize) -> Result<SignSequence> {
    let n = s.width();
    if n > max_width {
        return Err(Error::ResourceLimit {
            what: "sequence width",
            requested: n,
            limit: max_width,
        });
    }
    let secret = s.to_integer();
    let values = (0..1u64 << n)
        .map(|k| {
            if (secret & k).count_ones() & 1 == 0 {
                1
            } else {
                -1
            }
        })
        .collect();
    Ok(SignSequence { values })
}

/// Counts sign changes between adjacent entries. Exact integer arithmetic:
/// half the sum of `|v[k+1] - v[k]|` over the sequence.
pub fn brute_force_zero_crossings(seq: &SignSequence) -> u64 {
    let mut total: u64 = 0;
    for pair in seq.values.windows(2) {
        total += (i64::from(pair[1]) - i64::from(pair[0])).unsigned_abs();
    }
    total / 2
}

/// Zero-crossing count by the doubling recurrence:
/// `Z_1 = s_0`, `Z_m = 2 Z_{m-1} + (s_0 ^ ... ^ s_{m-1})`.
pub fn zero_crossings_recurrence(s: &BitString) -> u64 {
    *zero_crossings_recurrence_trace(s)
        .last()
        .expect("width >= 1")
}

/// All intermediate values of the recurrence: entry `m - 1` is the count
/// for the `m` low bits of `s`.
pub fn zero_crossings_recurrence_trace(s: &BitString) -> Vec<u64> {
    let n = s.width();
    let mut trace = Vec::with_capacity(n);
    let mut count = u64::from(s.bit(0));
    let mut parity = s.bit(0);
    trace.push(count);
    for m in 2..=n {
        parity ^= s.bit(m - 1);
        count = 2 * count + u64::from(parity);
        trace.push(count);
    }
    trace
}

/// Zero-crossing count in closed form: the integer value of the
/// cumulative-parity bits of `s`.
pub fn zero_crossings_closed_form(s: &BitString) -> u64 {
    crossing_count_bits(s).to_integer()
}
