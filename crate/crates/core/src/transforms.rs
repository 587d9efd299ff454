//! Classical Walsh-Hadamard engine: Walsh function sampling, dense
//! transform matrices in natural and sequency order, O(N log N) fast
//! transforms, and the index permutation connecting the two orderings.
//!
//! Both orderings carry the symmetric 1/sqrt(N) normalization, so a
//! transform matrix is orthogonal and the fast transforms preserve the
//! 2-norm.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::bits::{crossing_count_bits_inverse, BitString};
use crate::error::{Error, Result};

/// Cap on dense matrix construction (N x N doubles).
pub const MATRIX_DIM_CAP: usize = 4096;

/// A real signal whose length is a power of two, at least 2.
#[derive(Debug, Clone, PartialEq)]
pub struct RealVector {
    values: Vec<f64>,
}

impl RealVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let len = values.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo { len });
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// log2 of the length.
    pub fn num_bits(&self) -> usize {
        self.values.len().trailing_zeros() as usize
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// One value per line, 17 significant digits.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        for v in &self.values {
            out.push_str(&format!("{v:.16e}\n"));
        }
        out
    }

    /// Parses the one-value-per-line form.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (index, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let value: f64 = trimmed.parse().map_err(|_| Error::ParseNumber {
                line: index + 1,
                message: format!("invalid number {trimmed:?}"),
            })?;
            values.push(value);
        }
        Self::new(values)
    }
}

/// A dense square real matrix whose dimension is a power of two.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }

    /// Matrix-vector product; the reference route the fast transforms are
    /// checked against.
    pub fn mul_vec(&self, v: &RealVector) -> Result<RealVector> {
        if v.len() != self.dim {
            return Err(Error::NotPowerOfTwo { len: v.len() });
        }
        let values = (0..self.dim)
            .map(|r| self.row(r).iter().zip(v.values()).map(|(m, x)| m * x).sum())
            .collect();
        RealVector::new(values)
    }

    /// Comma-separated row per line, 17 significant digits.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        for r in 0..self.dim {
            let row: Vec<String> = self.row(r).iter().map(|v| format!("{v:.16e}")).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

fn check_matrix_dim(n: usize) -> Result<usize> {
    assert!(n >= 1, "need at least one bit");
    let dim = 1usize << n;
    if dim > MATRIX_DIM_CAP {
        return Err(Error::ResourceLimit {
            what: "matrix dimension",
            requested: dim,
            limit: MATRIX_DIM_CAP,
        });
    }
    Ok(dim)
}

/// One sample of Walsh function `k` (sequency order) on the dyadic grid
/// of `n_points` left endpoints. Pure integer recursion over half-open
/// dyadic intervals: the left half of order-2m (order-2m+1) functions is
/// the order-m function compressed, the right half carries the sign
/// (-1)^m (respectively -(-1)^m).
fn walsh_sample(k: usize, i: usize, n_points: usize) -> i64 {
    if k == 0 {
        return 1;
    }
    let half = n_points / 2;
    let m = k / 2;
    if i < half {
        walsh_sample(m, i, half)
    } else {
        let base = walsh_sample(m, i - half, half);
        let mut sign = if m & 1 == 0 { 1 } else { -1 };
        if k & 1 == 1 {
            sign = -sign;
        }
        sign * base
    }
}

/// Walsh function `k` in sequency order, sampled at `n_points` uniform
/// points of [0, 1). Entries are +/-1, unnormalized.
pub fn walsh_function_sequency(k: usize, n_points: usize) -> Result<RealVector> {
    if n_points < 2 || !n_points.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { len: n_points });
    }
    if k >= n_points {
        return Err(Error::IndexOutOfRange {
            index: k,
            len: n_points,
        });
    }
    let values = (0..n_points)
        .map(|i| walsh_sample(k, i, n_points) as f64)
        .collect();
    RealVector::new(values)
}

/// The sequency-ordered transform matrix: row `k` is Walsh function `k`
/// sampled and scaled by 1/sqrt(N). Row `k` has exactly `k` sign changes.
pub fn sequency_matrix(n: usize) -> Result<RealMatrix> {
    let dim = check_matrix_dim(n)?;
    let scale = 1.0 / (dim as f64).sqrt();
    let mut m = RealMatrix::zeros(dim);
    for k in 0..dim {
        for i in 0..dim {
            m.set(k, i, walsh_sample(k, i, dim) as f64 * scale);
        }
    }
    Ok(m)
}

/// The sequency-ordered transform matrix built from its action on basis
/// vectors instead of Walsh sampling: the entry at (k, j) is
/// (-1)^(sum_r k_{n-1-r} (j_r ^ j_{r+1})) / sqrt(N), with the bit above
/// j's top treated as 0. Serves as an independent route for testing
/// [`sequency_matrix`].
pub fn sequency_matrix_from_basis_action(n: usize) -> Result<RealMatrix> {
    let dim = check_matrix_dim(n)?;
    let scale = 1.0 / (dim as f64).sqrt();
    let mut m = RealMatrix::zeros(dim);
    for j in 0..dim {
        for k in 0..dim {
            let mut exponent = 0usize;
            for r in 0..n {
                let j_r = j >> r & 1;
                let j_r1 = if r + 1 < n { j >> (r + 1) & 1 } else { 0 };
                exponent += (k >> (n - 1 - r) & 1) * (j_r ^ j_r1);
            }
            let sign = if exponent & 1 == 0 { 1.0 } else { -1.0 };
            m.set(k, j, sign * scale);
        }
    }
    Ok(m)
}

/// The natural-ordered transform matrix: entry (k, j) is
/// (-1)^(k . j) / sqrt(N).
pub fn natural_matrix(n: usize) -> Result<RealMatrix> {
    let dim = check_matrix_dim(n)?;
    let scale = 1.0 / (dim as f64).sqrt();
    let mut m = RealMatrix::zeros(dim);
    for k in 0..dim {
        for j in 0..dim {
            let sign = if (k & j).count_ones() & 1 == 0 {
                1.0
            } else {
                -1.0
            };
            m.set(k, j, sign * scale);
        }
    }
    Ok(m)
}

/// In-place natural-order fast transform: the standard butterfly followed
/// by a single 1/sqrt(N) scaling. Applying it twice returns the input.
pub fn fwht_natural_in_place(values: &mut [f64]) {
    let len = values.len();
    debug_assert!(len.is_power_of_two());
    let mut stride = 1;
    while stride < len {
        let mut base = 0;
        while base < len {
            for i in base..base + stride {
                let a = values[i];
                let b = values[i + stride];
                values[i] = a + b;
                values[i + stride] = a - b;
            }
            base += stride * 2;
        }
        stride *= 2;
    }
    let scale = 1.0 / (len as f64).sqrt();
    for v in values {
        *v *= scale;
    }
}

/// Natural-order fast transform, O(N log N).
pub fn fwht_natural(v: &RealVector) -> RealVector {
    let mut values = v.values().to_vec();
    fwht_natural_in_place(&mut values);
    RealVector { values }
}

/// Sequency-order fast transform: the natural butterfly followed by the
/// sequency reordering of the outputs.
pub fn fwht_sequency(v: &RealVector) -> Result<RealVector> {
    let n = v.num_bits();
    let permutation = validated_sequency_permutation(n)?;
    let natural = fwht_natural(v);
    let values = permutation
        .iter()
        .map(|&source| natural.values()[source])
        .collect();
    RealVector::new(values)
}

/// The permutation with `sequency row k = natural row perm[k]`.
///
/// Constructed by inverting the cumulative-parity map on each index and
/// then validated against the matrices' defining rows: entry by entry for
/// n <= 10, on a deterministic sample of rows above that (full validation
/// is quadratic in N).
pub fn sequency_permutation(n: usize) -> Result<Vec<usize>> {
    Ok(validated_sequency_permutation(n)?.as_ref().clone())
}

fn build_sequency_permutation(n: usize) -> Vec<usize> {
    (0..1usize << n)
        .map(|k| {
            let g = BitString::from_integer(k as u64, n).expect("index fits width");
            crossing_count_bits_inverse(&g).to_integer() as usize
        })
        .collect()
}

fn validate_sequency_permutation(n: usize, perm: &[usize]) -> Result<()> {
    let dim = 1usize << n;
    let rows: Vec<usize> = if n <= 10 {
        (0..dim).collect()
    } else {
        // Deterministic spread of 64 rows, always including both ends.
        let step = dim / 64;
        let mut rows: Vec<usize> = (0..64).map(|i| i * step).collect();
        rows.push(dim - 1);
        rows
    };
    for &k in &rows {
        let source = perm[k];
        if source >= dim {
            return Err(Error::SelfCheck(format!(
                "sequency permutation entry {k} -> {source} out of range"
            )));
        }
        for j in 0..dim {
            let sequency_entry = walsh_sample(k, j, dim);
            let natural_entry = if (source & j).count_ones() & 1 == 0 {
                1
            } else {
                -1
            };
            if sequency_entry != natural_entry {
                return Err(Error::SelfCheck(format!(
                    "sequency row {k} does not match natural row {source} at column {j}"
                )));
            }
        }
    }
    Ok(())
}

/// Permutations are validated once per size per process and then shared.
fn validated_sequency_permutation(n: usize) -> Result<Arc<Vec<usize>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<usize>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(found) = cache.lock().expect("permutation cache poisoned").get(&n) {
        return Ok(Arc::clone(found));
    }
    let perm = build_sequency_permutation(n);
    validate_sequency_permutation(n, &perm)?;
    let perm = Arc::new(perm);
    cache
        .lock()
        .expect("permutation cache poisoned")
        .insert(n, Arc::clone(&perm));
    Ok(perm)
}
