//! Hebbian training, the storage test, and the triangular decomposition.
//!
//! Weights are exact integers throughout: entries are sums of +/-1
//! products, so no rounding or tolerance ever enters the sgn(0) boundary.

use std::fmt;

use crate::bipolar::{sgn, BipolarVector, MemorySet};
use crate::error::{Error, Result};

/// The symmetric, zero-diagonal interconnection matrix.
///
/// Both invariants are established at construction and hold for the
/// lifetime of the value; code downstream relies on them without
/// re-checking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl WeightMatrix {
    /// Hebbian training: entry (i, j) is the sum over memories of the
    /// product of their values at neurons i and j, with the diagonal
    /// forced to zero.
    pub fn train(memories: &MemorySet) -> WeightMatrix {
        let n = memories.n();
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                entries[i * n + j] = memories
                    .iter()
                    .map(|m| m.get(i).value() * m.get(j).value())
                    .sum();
            }
        }
        WeightMatrix { n, entries }
    }

    /// Builds a matrix from raw rows, validating squareness, symmetry,
    /// and a zero diagonal. This is the boundary where untrusted weight
    /// data enters; matrices from [`WeightMatrix::train`] need no check.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<WeightMatrix> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::RaggedMatrix { n: 0 });
        }
        for row in rows {
            if row.len() != n {
                return Err(Error::RaggedMatrix { n });
            }
        }
        for (i, row) in rows.iter().enumerate() {
            if row[i] != 0 {
                return Err(Error::NonzeroDiagonal { neuron: i + 1 });
            }
            for j in (i + 1)..n {
                if row[j] != rows[j][i] {
                    return Err(Error::AsymmetricWeights {
                        row: i + 1,
                        col: j + 1,
                    });
                }
            }
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            entries.extend_from_slice(row);
        }
        Ok(WeightMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[i64] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    /// Total synaptic input to `neuron` when the network holds state `v`.
    pub fn drive(&self, v: &BipolarVector, neuron: usize) -> i64 {
        self.row(neuron)
            .iter()
            .zip(v.signs())
            .map(|(&w, s)| w * s.value())
            .sum()
    }

    /// The one-shot storage test: `v` is stored when every neuron's sign
    /// equals the sgn of its total input under `v`. Synchronous, not
    /// iterated.
    pub fn is_stored(&self, v: &BipolarVector) -> Result<bool> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        Ok((0..self.n).all(|i| sgn(self.drive(v, i)) == v.get(i)))
    }
}

impl fmt::Display for WeightMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_matrix(f, self.n, |i, j| self.get(i, j))
    }
}

/// The strictly lower triangular half B of a weight matrix, with
/// T = B + B^t. Sequential recall reads its rows: neuron j receives
/// input only from neurons 1..j-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl SpreadMatrix {
    /// Extracts the strictly lower triangular part of `t`.
    pub fn decompose(t: &WeightMatrix) -> SpreadMatrix {
        let n = t.n();
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..i {
                entries[i * n + j] = t.get(i, j);
            }
        }
        SpreadMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[i64] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    /// B + B^t, which must reproduce the source weight matrix exactly.
    pub fn reconstruct(&self) -> WeightMatrix {
        let n = self.n;
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = self.get(i, j) + self.get(j, i);
            }
        }
        WeightMatrix { n, entries }
    }
}

impl fmt::Display for SpreadMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_matrix(f, self.n, |i, j| self.get(i, j))
    }
}

/// Right-aligns every entry to the widest cell, one row per line.
fn write_matrix(
    f: &mut fmt::Formatter<'_>,
    n: usize,
    get: impl Fn(usize, usize) -> i64,
) -> fmt::Result {
    let width = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| get(i, j).to_string().len())
        .max()
        .unwrap_or(1);
    for i in 0..n {
        for j in 0..n {
            if j > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{:>width$}", get(i, j))?;
        }
        if i + 1 < n {
            f.write_str("\n")?;
        }
    }
    Ok(())
}
