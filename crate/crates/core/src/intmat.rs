//! Exact integer matrices: multiplication, determinants, mod-m reduction,
//! and Smith normal form with tracked unimodular transforms.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntMatrixError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("integer overflow during exact computation")]
    Overflow,
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(i64),
}

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<IntMatrix, IntMatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(IntMatrixError::DimensionMismatch(
                "rows of unequal length".into(),
            ));
        }
        Ok(IntMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, IntMatrixError> {
        if self.cols != other.rows {
            return Err(IntMatrixError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let term = a
                        .checked_mul(other[(k, j)])
                        .ok_or(IntMatrixError::Overflow)?;
                    out[(i, j)] = out[(i, j)]
                        .checked_add(term)
                        .ok_or(IntMatrixError::Overflow)?;
                }
            }
        }
        Ok(out)
    }

    /// Exact determinant via fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<i64, IntMatrixError> {
        if !self.is_square() {
            return Err(IntMatrixError::DimensionMismatch(format!(
                "determinant of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let at = |a: &[i128], i: usize, j: usize| a[i * n + j];
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if at(&a, k, k) == 0 {
                let Some(swap) = (k + 1..n).find(|&i| at(&a, i, k) != 0) else {
                    return Ok(0);
                };
                for j in 0..n {
                    a.swap(k * n + j, swap * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = at(&a, k, k)
                        .checked_mul(at(&a, i, j))
                        .and_then(|x| {
                            at(&a, i, k)
                                .checked_mul(at(&a, k, j))
                                .and_then(|y| x.checked_sub(y))
                        })
                        .ok_or(IntMatrixError::Overflow)?;
                    a[i * n + j] = num / prev;
                }
                a[i * n + k] = 0;
            }
            prev = at(&a, k, k);
        }
        let det = sign * at(&a, n - 1, n - 1);
        i64::try_from(det).map_err(|_| IntMatrixError::Overflow)
    }

    /// Entrywise reduction into 0..m.
    pub fn reduce_mod(&self, m: i64) -> Result<IntMatrix, IntMatrixError> {
        if m < 2 {
            return Err(IntMatrixError::InvalidModulus(m));
        }
        let mut out = self.clone();
        for x in &mut out.data {
            *x = x.rem_euclid(m);
        }
        Ok(out)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Smith normal form `d = u * m * v` with unimodular `u`, `v`.
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    /// Diagonal entries d_1 | d_2 | ... (length min(rows, cols)).
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.nrows().min(self.d.ncols()))
            .map(|k| self.d[(k, k)])
            .collect()
    }

    /// Invariant factors of the cokernel Z^cols / rowspace: torsion entries
    /// (excluding 1s) followed by one 0 per free rank.
    pub fn invariant_factors(&self) -> Vec<i64> {
        let diag = self.diagonal();
        let rank = diag.iter().filter(|&&d| d != 0).count();
        let mut factors: Vec<i64> = diag.into_iter().filter(|&d| d > 1).collect();
        factors.extend(std::iter::repeat_n(0, self.d.ncols() - rank));
        factors
    }
}

fn checked_sub_mul(a: i64, q: i64, b: i64) -> Result<i64, IntMatrixError> {
    q.checked_mul(b)
        .and_then(|t| a.checked_sub(t))
        .ok_or(IntMatrixError::Overflow)
}

/// Diagonalizes by unimodular row/column operations. The returned transforms
/// satisfy `u * m * v = d` exactly; this identity and |det| = 1 are re-checked
/// before returning.
pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithNormalForm, IntMatrixError> {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut b = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let swap_rows = |b: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize| {
        for c in 0..cols {
            let (x, y) = (b[(i, c)], b[(j, c)]);
            b[(i, c)] = y;
            b[(j, c)] = x;
        }
        for c in 0..rows {
            let (x, y) = (u[(i, c)], u[(j, c)]);
            u[(i, c)] = y;
            u[(j, c)] = x;
        }
    };
    let swap_cols = |b: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize| {
        for r in 0..rows {
            let (x, y) = (b[(r, i)], b[(r, j)]);
            b[(r, i)] = y;
            b[(r, j)] = x;
        }
        for r in 0..cols {
            let (x, y) = (v[(r, i)], v[(r, j)]);
            v[(r, i)] = y;
            v[(r, j)] = x;
        }
    };

    for k in 0..rows.min(cols) {
        // Pivot selection: entry of smallest absolute value in the submatrix.
        let mut pivot: Option<(usize, usize)>;
        loop {
            pivot = None;
            for i in k..rows {
                for j in k..cols {
                    if b[(i, j)] != 0
                        && pivot.is_none_or(|(pi, pj)| b[(i, j)].abs() < b[(pi, pj)].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            if pi != k {
                swap_rows(&mut b, &mut u, k, pi);
            }
            if pj != k {
                swap_cols(&mut b, &mut v, k, pj);
            }
            let mut clean = true;
            for i in k + 1..rows {
                if b[(i, k)] != 0 {
                    let q = b[(i, k)].div_euclid(b[(k, k)]);
                    if q != 0 {
                        for c in 0..cols {
                            b[(i, c)] = checked_sub_mul(b[(i, c)], q, b[(k, c)])?;
                        }
                        for c in 0..rows {
                            u[(i, c)] = checked_sub_mul(u[(i, c)], q, u[(k, c)])?;
                        }
                    }
                    if b[(i, k)] != 0 {
                        clean = false;
                    }
                }
            }
            for j in k + 1..cols {
                if b[(k, j)] != 0 {
                    let q = b[(k, j)].div_euclid(b[(k, k)]);
                    if q != 0 {
                        for r in 0..rows {
                            b[(r, j)] = checked_sub_mul(b[(r, j)], q, b[(r, k)])?;
                        }
                        for r in 0..cols {
                            v[(r, j)] = checked_sub_mul(v[(r, j)], q, v[(r, k)])?;
                        }
                    }
                    if b[(k, j)] != 0 {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: the pivot must divide the remaining submatrix.
            let offender = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| b[(i, j)] % b[(k, k)] != 0);
            if let Some((i, _)) = offender {
                for c in 0..cols {
                    b[(k, c)] = b[(k, c)]
                        .checked_add(b[(i, c)])
                        .ok_or(IntMatrixError::Overflow)?;
                }
                for c in 0..rows {
                    u[(k, c)] = u[(k, c)]
                        .checked_add(u[(i, c)])
                        .ok_or(IntMatrixError::Overflow)?;
                }
                continue;
            }
            break;
        }
        if pivot.is_none() {
            break;
        }
        if b[(k, k)] < 0 {
            for c in 0..cols {
                b[(k, c)] = -b[(k, c)];
            }
            for c in 0..rows {
                u[(k, c)] = -u[(k, c)];
            }
        }
    }

    debug_assert!(b.data.iter().enumerate().all(|(idx, &x)| {
        let (i, j) = (idx / cols, idx % cols);
        i == j || x == 0
    }));
    if u.mul(m)?.mul(&v)? != b {
        return Err(IntMatrixError::DimensionMismatch(
            "smith normal form verification failed".into(),
        ));
    }
    if u.det()?.abs() != 1 || v.det()?.abs() != 1 {
        return Err(IntMatrixError::DimensionMismatch(
            "transform is not unimodular".into(),
        ));
    }
    Ok(SmithNormalForm { u, d: b, v })
}
