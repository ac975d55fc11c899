//! Integer matrices with arbitrary-precision entries and Smith normal form.
//!
//! [`snf`] returns unimodular transforms `U`, `V` with `U·M·V = D`, `D`
//! diagonal with a nonnegative divisibility chain `d₁ | d₂ | ...`.  The
//! diagonal is canonical (the invariant factors of the cokernel, padded by
//! zeros for the free rank); the transforms are not, and only the invariants
//! above are promised about them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A row-major integer matrix.  Degenerate shapes (zero rows or columns)
/// are allowed everywhere.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>, // length rows * cols
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> IntMatrix {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        IntMatrix { rows, cols, entries }
    }

    pub fn from_i64(rows: usize, cols: usize, vals: &[i64]) -> IntMatrix {
        IntMatrix::new(rows, cols, vals.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn diagonal(diag: &[BigInt]) -> IntMatrix {
        let n = diag.len();
        let mut m = IntMatrix::zero(n, n);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + self.at(i, k) * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// The main diagonal, length `min(rows, cols)`.
    pub fn main_diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.at(i, i).clone()).collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> =
            (0..n).map(|i| (0..n).map(|j| self.at(i, j).clone()).collect()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(pr) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, pr);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev; // exact by Bareiss
                }
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = self.at(target, j) + factor * self.at(source, j);
            self.set(target, j, v);
        }
    }

    /// col[target] += factor * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = self.at(i, target) + factor * self.at(i, source);
            self.set(i, target, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j);
            self.set(i, j, v);
        }
    }
}

/// The result of [`snf`]: `u · M · v = d`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal of `d` (the invariant factors padded by zeros).
    pub fn diagonal(&self) -> Vec<BigInt> {
        self.d.main_diagonal()
    }
}

/// Nearest-integer quotient: the remainder `a - q·b` has absolute value at
/// most `|b|/2`, which keeps intermediate entries small during elimination.
fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_mod_floor(b);
    if r.abs() * 2 > b.abs() {
        q += 1;
    }
    q
}

/// Smith normal form with transforms.  Pivots are chosen by smallest
/// nonzero absolute value in the remaining submatrix.
pub fn snf(m: &IntMatrix) -> SmithForm {
    let mut a = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let (rows, cols) = (m.rows(), m.cols());

    for t in 0..rows.min(cols) {
        // Locate the smallest nonzero entry of the trailing submatrix.
        let find_pivot = |a: &IntMatrix| -> Option<(usize, usize)> {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a.at(i, j).is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a.at(i, j).abs() < a.at(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            best
        };

        let Some((pi, pj)) = find_pivot(&a) else {
            break; // trailing submatrix is zero: done
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        'reduce: loop {
            // Clear the pivot column.
            let mut clean = true;
            for r in t + 1..rows {
                if a.at(r, t).is_zero() {
                    continue;
                }
                let q = -rounded_div(a.at(r, t), a.at(t, t));
                a.add_row_multiple(r, t, &q);
                u.add_row_multiple(r, t, &q);
                if !a.at(r, t).is_zero() {
                    clean = false;
                }
            }
            // Clear the pivot row.
            for c in t + 1..cols {
                if a.at(t, c).is_zero() {
                    continue;
                }
                let q = -rounded_div(a.at(t, c), a.at(t, t));
                a.add_col_multiple(c, t, &q);
                v.add_col_multiple(c, t, &q);
                if !a.at(t, c).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // A remainder is strictly smaller than the old pivot; make it
                // the new pivot and repeat.
                let (pi, pj) = find_pivot(&a).expect("remainders are nonzero");
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue 'reduce;
            }
            // Pivot row/column clean: enforce that the pivot divides every
            // remaining entry, so the diagonal forms a divisibility chain.
            for r in t + 1..rows {
                for c in t + 1..cols {
                    if !(a.at(r, c) % a.at(t, t)).is_zero() {
                        let one = BigInt::one();
                        a.add_row_multiple(t, r, &one);
                        u.add_row_multiple(t, r, &one);
                        continue 'reduce;
                    }
                }
            }
            break;
        }
    }

    // Canonical signs: nonnegative diagonal.
    for t in 0..rows.min(cols) {
        if a.at(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    SmithForm { u, d: a, v }
}
