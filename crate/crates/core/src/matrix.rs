//! Dense matrices over a dynamic exact [`Field`], with the handful of exact
//! algorithms the rest of the crate leans on: reduced row echelon form,
//! kernel bases, determinants, and inverses.  Everything is Gaussian
//! elimination with field division — no entry growth concerns, no rounding.

use crate::field::{Field, FieldElem};

/// A row-major dense matrix over `Q` or `F_p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElem>, // length rows * cols
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<FieldElem>) -> Matrix {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        assert!(
            entries.iter().all(|e| field.contains(e)),
            "all entries must belong to the matrix field"
        );
        Matrix { field, rows, cols, entries }
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElem,
    ) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix::new(field, rows, cols, entries)
    }

    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        Matrix::from_fn(field, n, n, |i, j| if i == j { field.one() } else { field.zero() })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        debug_assert!(self.field.contains(&v));
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "matrix fields must agree");
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shapes must agree");
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.field.add(self.at(i, j), other.at(i, j))
        })
    }

    pub fn scale(&self, c: &FieldElem) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.field.mul(c, self.at(i, j))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElem::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "matrix fields must agree");
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let f = self.field;
        Matrix::from_fn(f, self.rows, other.cols, |i, j| {
            let mut acc = f.zero();
            for k in 0..self.cols {
                if !self.at(i, k).is_zero() && !other.at(k, j).is_zero() {
                    acc = f.add(&acc, &f.mul(self.at(i, k), other.at(k, j)));
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(self.cols, v.len(), "vector length must equal column count");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    if !self.at(i, k).is_zero() && !v[k].is_zero() {
                        acc = f.add(&acc, &f.mul(self.at(i, k), &v[k]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert_eq!(self.rows, self.cols, "only square matrices have powers");
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.field, self.rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.at(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(m.at(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let factor = m.at(i, c).clone();
                    for j in c..m.cols {
                        let v = f.sub(m.at(i, j), &f.mul(&factor, m.at(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the null space `{v : Av = 0}`, one vector per free column,
    /// each normalized so its first nonzero coordinate is 1.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElem>> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut piv_iter: Vec<(usize, usize)> =
            pivots.iter().copied().enumerate().map(|(row, col)| (row, col)).collect();
        piv_iter.sort_by_key(|&(_, col)| col);
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for &(prow, pcol) in &piv_iter {
                v[pcol] = f.neg(r.at(prow, free));
            }
            let lead = v.iter().find(|x| !x.is_zero()).expect("kernel vector is nonzero").clone();
            let lead_inv = f.inv(&lead).expect("leading coefficient is nonzero");
            for x in v.iter_mut() {
                *x = f.mul(x, &lead_inv);
            }
            basis.push(v);
        }
        basis
    }

    /// Exact determinant by Gaussian elimination.
    pub fn det(&self) -> FieldElem {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let f = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.at(i, c).is_zero()) else {
                return f.zero();
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = f.neg(&det);
            }
            det = f.mul(&det, m.at(c, c));
            let inv = f.inv(m.at(c, c)).expect("pivot is nonzero");
            for i in c + 1..n {
                if m.at(i, c).is_zero() {
                    continue;
                }
                let factor = f.mul(m.at(i, c), &inv);
                for j in c..n {
                    let v = f.sub(m.at(i, j), &f.mul(&factor, m.at(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Exact inverse by Gauss–Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse needs a square matrix");
        let f = self.field;
        let n = self.rows;
        // Augment with the identity and row reduce.
        let mut aug = Matrix::from_fn(f, n, 2 * n, |i, j| {
            if j < n {
                self.at(i, j).clone()
            } else if j - n == i {
                f.one()
            } else {
                f.zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        aug = r;
        Some(Matrix::from_fn(f, n, n, |i, j| aug.at(i, j + n).clone()))
    }
}
