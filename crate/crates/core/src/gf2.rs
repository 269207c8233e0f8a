//! Exact linear algebra over GF(2) on bit-packed rows.
//!
//! Vectors are `u32` masks (bit k = coordinate k+1) and matrices act on row
//! vectors from the right: `v -> v * M`, matching the row convention of
//! abelianization matrices.

use std::fmt;

use thiserror::Error;

use crate::intmat::IntMatrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular over GF(2)")]
    Singular,
    #[error("expected a basis of rank {expected}, got rank {got}")]
    RankDeficient { expected: usize, got: usize },
}

/// Renders a vector as a bitstring, coordinate 1 first: 0b101 with n = 3 is
/// "101".
pub fn vector_to_bits(n: usize, v: u32) -> String {
    (0..n)
        .map(|k| if v >> k & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Square bit matrix over GF(2); row i is a u32 mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    n: usize,
    rows: Vec<u32>,
}

impl Gf2Matrix {
    pub fn zero(n: usize) -> Gf2Matrix {
        Gf2Matrix {
            n,
            rows: vec![0; n],
        }
    }

    pub fn identity(n: usize) -> Gf2Matrix {
        Gf2Matrix {
            n,
            rows: (0..n).map(|i| 1 << i).collect(),
        }
    }

    /// I + e_{ij} (0-based), the elementary transvection matrix.
    pub fn elementary(n: usize, i: usize, j: usize) -> Gf2Matrix {
        assert!(i < n && j < n && i != j);
        let mut m = Gf2Matrix::identity(n);
        m.rows[i] |= 1 << j;
        m
    }

    pub fn from_rows(n: usize, rows: Vec<u32>) -> Result<Gf2Matrix, Gf2Error> {
        if rows.len() != n || rows.iter().any(|&r| n < 32 && r >> n != 0) {
            return Err(Gf2Error::DimensionMismatch(format!(
                "{} rows for dimension {n}",
                rows.len()
            )));
        }
        Ok(Gf2Matrix { n, rows })
    }

    /// Entrywise mod-2 reduction of a square integer matrix.
    pub fn from_int(m: &IntMatrix) -> Result<Gf2Matrix, Gf2Error> {
        if !m.is_square() {
            return Err(Gf2Error::DimensionMismatch(format!(
                "{}x{} is not square",
                m.nrows(),
                m.ncols()
            )));
        }
        let n = m.nrows();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| m[(i, j)].rem_euclid(2) == 1)
                    .fold(0u32, |acc, j| acc | 1 << j)
            })
            .collect();
        Ok(Gf2Matrix { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> u32 {
        self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// Row-vector action v * M.
    pub fn act_on_row(&self, v: u32) -> u32 {
        let mut out = 0;
        let mut bits = v;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            out ^= self.rows[k];
            bits &= bits - 1;
        }
        out
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if self.n != other.n {
            return Err(Gf2Error::DimensionMismatch(format!(
                "{} vs {}",
                self.n, other.n
            )));
        }
        Ok(Gf2Matrix {
            n: self.n,
            rows: self.rows.iter().map(|&r| other.act_on_row(r)).collect(),
        })
    }

    /// Determinant over GF(2): 1 iff the rows are linearly independent.
    pub fn det(&self) -> u8 {
        let mut span = Gf2Span::new(self.n);
        for &r in &self.rows {
            if !span.insert(r) {
                return 0;
            }
        }
        1
    }

    /// Gauss-Jordan inverse; the product with the input is re-checked to be
    /// the identity.
    pub fn inverse(&self) -> Result<Gf2Matrix, Gf2Error> {
        let n = self.n;
        let mut work = self.rows.clone();
        let mut inv = Gf2Matrix::identity(n).rows;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| work[r] >> col & 1 == 1)
                .ok_or(Gf2Error::Singular)?;
            work.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && work[r] >> col & 1 == 1 {
                    work[r] ^= work[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        let inverse = Gf2Matrix { n, rows: inv };
        debug_assert_eq!(self.mul(&inverse).unwrap(), Gf2Matrix::identity(n));
        Ok(inverse)
    }

    /// Row-major bit packing (requires n <= 8); the canonical hash key.
    pub fn pack(&self) -> u64 {
        assert!(self.n <= 8, "packing supports dimension at most 8");
        self.rows
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &r)| acc | (r as u64) << (i * self.n))
    }

    pub fn unpack(n: usize, packed: u64) -> Gf2Matrix {
        assert!(n <= 8);
        let mask = (1u64 << n) - 1;
        Gf2Matrix {
            n,
            rows: (0..n).map(|i| (packed >> (i * n) & mask) as u32).collect(),
        }
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            f.write_str(&vector_to_bits(self.n, r))?;
        }
        Ok(())
    }
}

/// Incremental row space in reduced echelon form, pivoting on the lowest set
/// bit.
#[derive(Debug, Clone)]
pub struct Gf2Span {
    n: usize,
    echelon: Vec<u32>,
}

impl Gf2Span {
    pub fn new(n: usize) -> Gf2Span {
        Gf2Span {
            n,
            echelon: Vec::new(),
        }
    }

    pub fn from_vectors(n: usize, vectors: &[u32]) -> Gf2Span {
        let mut span = Gf2Span::new(n);
        for &v in vectors {
            span.insert(v);
        }
        span
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    pub fn reduce(&self, mut v: u32) -> u32 {
        for &b in &self.echelon {
            let pivot = b.trailing_zeros();
            if v >> pivot & 1 == 1 {
                v ^= b;
            }
        }
        v
    }

    pub fn contains(&self, v: u32) -> bool {
        self.reduce(v) == 0
    }

    /// Adds a vector; returns false if it was already in the span.
    pub fn insert(&mut self, v: u32) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        for b in &mut self.echelon {
            if *b >> v.trailing_zeros() & 1 == 1 {
                *b ^= v;
            }
        }
        self.echelon.push(v);
        self.echelon.sort_by_key(|b| b.trailing_zeros());
        true
    }

    pub fn n(&self) -> usize {
        self.n
    }
}
