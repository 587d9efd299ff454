//! Bit-level primitives shared by every other module: fixed-width bit
//! strings, dot products mod 2, cumulative-parity maps and index
//! permutations.
//!
//! Bit order is fixed once for the whole crate: index 0 is the least
//! significant bit. Text representations are most-significant-bit first,
//! so `"101"` has bit 0 = 1, bit 1 = 0, bit 2 = 1 and integer value 5.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Widest supported bit string. Everything here is bounded by what the
/// statevector simulator can hold, so a single machine word is plenty.
pub const MAX_WIDTH: usize = 64;

/// A fixed-width string of bits with an explicit width.
///
/// Conversions to and from integers always take the width explicitly;
/// nothing is ever inferred from the value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitString {
    width: usize,
    value: u64,
}

impl BitString {
    /// All-zero string of the given width.
    pub fn zeros(width: usize) -> Result<Self> {
        Self::from_integer(0, width)
    }

    /// Builds a bit string from its integer value, little-endian
    /// (bit `j` of `value` becomes bit `j` of the string).
    pub fn from_integer(value: u64, width: usize) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::InvalidWidth { width });
        }
        if width < 64 && value >> width != 0 {
            return Err(Error::ValueOutOfRange { value, width });
        }
        Ok(Self { width, value })
    }

    /// Builds a bit string from individual bits, index 0 = least significant.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        if bits.is_empty() || bits.len() > MAX_WIDTH {
            return Err(Error::InvalidWidth { width: bits.len() });
        }
        let mut value = 0u64;
        for (j, &b) in bits.iter().enumerate() {
            if b {
                value |= 1 << j;
            }
        }
        Ok(Self {
            width: bits.len(),
            value,
        })
    }

    pub(crate) fn new_unchecked(value: u64, width: usize) -> Self {
        debug_assert!((1..=MAX_WIDTH).contains(&width));
        debug_assert!(width == 64 || value >> width == 0);
        Self { width, value }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn to_integer(&self) -> u64 {
        self.value
    }

    /// Bit `j`, with `j = 0` the least significant. Panics if out of range.
    pub fn bit(&self, j: usize) -> bool {
        assert!(j < self.width, "bit index {j} out of range");
        (self.value >> j) & 1 == 1
    }

    /// Iterator over bits from index 0 (LSB) to `width - 1`.
    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.width).map(move |j| self.bit(j))
    }

    /// Number of set bits.
    pub fn weight(&self) -> u32 {
        self.value.count_ones()
    }

    /// Bit-wise dot product of two equal-width strings, mod 2.
    pub fn dot_mod2(&self, other: &Self) -> Result<u8> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                left: self.width,
                right: other.width,
            });
        }
        Ok(((self.value & other.value).count_ones() & 1) as u8)
    }

    /// Keeps only the `m` least significant bits, `1 <= m <= width`.
    pub fn truncate(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.width {
            return Err(Error::TruncationOutOfRange {
                m,
                width: self.width,
            });
        }
        let mask = if m == 64 { u64::MAX } else { (1 << m) - 1 };
        Ok(Self::new_unchecked(self.value & mask, m))
    }

    /// The same bits in reversed order (bit 0 swaps with bit `width - 1`).
    pub fn reversed(&self) -> Self {
        Self::new_unchecked(reverse_bits(self.value, self.width), self.width)
    }
}

/// The width-bit reversal of `value`'s low `width` bits.
pub fn reverse_bits(value: u64, width: usize) -> u64 {
    assert!((1..=64).contains(&width));
    value.reverse_bits() >> (64 - width)
}

/// Cumulative-parity bits of `s`: bit `k` of the result is
/// `s_0 ^ s_1 ^ ... ^ s_{n-1-k}` (so the top bit is just `s_0`).
///
/// The integer value of the result equals the number of sign changes in
/// the +/-1 sequence generated from `s`; see the `classical` module.
pub fn crossing_count_bits(s: &BitString) -> BitString {
    let n = s.width();
    let mut parity = false;
    let mut value = 0u64;
    for i in 0..n {
        parity ^= s.bit(i);
        if parity {
            value |= 1 << (n - 1 - i);
        }
    }
    BitString::new_unchecked(value, n)
}

/// Inverse of [`crossing_count_bits`]: recovers `s` from its
/// cumulative-parity bits by XORing adjacent bits, treating the bit just
/// above the top as 0.
pub fn crossing_count_bits_inverse(g: &BitString) -> BitString {
    let n = g.width();
    let mut value = 0u64;
    for k in 0..n {
        let hi = if k == 0 { false } else { g.bit(n - k) };
        let lo = g.bit(n - k - 1);
        if hi ^ lo {
            value |= 1 << k;
        }
    }
    BitString::new_unchecked(value, n)
}

/// The permutation of `[0, 2^n)` that reverses each index's `n`-bit
/// representation. An involution.
pub fn bit_reversal_permutation(n: usize) -> Vec<usize> {
    assert!(
        (1..=32).contains(&n),
        "permutation size 2^{n} is not sensible"
    );
    (0..1usize << n)
        .map(|i| reverse_bits(i as u64, n) as usize)
        .collect()
}

impl fmt::Display for BitString {
    /// Most-significant-bit first, e.g. value 5 at width 3 prints "101".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in (0..self.width).rev() {
            f.write_str(if self.bit(j) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    /// Parses the MSB-first form. Only '0' and '1' are accepted.
    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::ParseBitString("empty string".into()));
        }
        if s.len() > MAX_WIDTH {
            return Err(Error::InvalidWidth { width: s.len() });
        }
        let mut value = 0u64;
        for c in s.chars() {
            match c {
                '0' => value <<= 1,
                '1' => value = (value << 1) | 1,
                other => {
                    return Err(Error::ParseBitString(format!(
                        "unexpected character {other:?}"
                    )))
                }
            }
        }
        Ok(Self::new_unchecked(value, s.len()))
    }
}
