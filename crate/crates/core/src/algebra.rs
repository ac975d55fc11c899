//! Finite-dimensional commutative algebras presented by structure
//! constants: axiom verification, radicals, semisimple quotients, and
//! decomposition into local factors.
//!
//! Radicals never search.  Over `Q` the radical is the kernel of the trace
//! bilinear form; over `F_p` it is the kernel of the iterated Frobenius
//! `x ↦ x^(p^m)` (with `p^m ≥ dim`), which is linear over the prime field.
//! Decomposition into local factors does search: over `F_p` every solution
//! of `x² = x` is enumerated in the semisimple quotient (bounded by
//! `p^dim ≤ 10^7`) and lifted; over `Q` multiplication operators are split
//! along their rational eigenvalues, and any factor the method cannot
//! certify as local is reported as a failure, never glossed over.

use crate::field::{Field, FieldElem};
use crate::matrix::Matrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("malformed structure constants: {0}")]
    BadShape(String),
    #[error("SearchTooLarge: search space {space} exceeds the brute-force bound 10^7")]
    SearchTooLarge { space: String },
    #[error(
        "PartialDecomposition: {certified} factor(s) certified local, {uncertified} factor(s) not \
         certifiable by rational eigenvalue splitting"
    )]
    PartialDecomposition { certified: usize, uncertified: usize },
}

/// Outcome of one axiom check: `failure` holds the first witnessing index
/// tuple if the axiom does not hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub failure: Option<Vec<usize>>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

// --- small coordinate-vector helpers shared across the crate -------------

pub(crate) fn vec_zero(field: Field, n: usize) -> Vec<FieldElem> {
    vec![field.zero(); n]
}

pub(crate) fn vec_is_zero(v: &[FieldElem]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub(crate) fn vec_add(field: Field, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    a.iter().zip(b).map(|(x, y)| field.add(x, y)).collect()
}

pub(crate) fn vec_scale(field: Field, c: &FieldElem, a: &[FieldElem]) -> Vec<FieldElem> {
    a.iter().map(|x| field.mul(c, x)).collect()
}

/// A commutative, associative, unital algebra of dimension `n` over `Q` or
/// `F_p`, encoded by `e_i·e_j = Σ_k mult[i][j][k] e_k` and the coordinates
/// of the identity element.  Construction checks only shapes and field
/// membership; [`verify`](Self::verify) checks the axioms themselves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCommAlgebra {
    pub(crate) field: Field,
    pub(crate) dim: usize,
    pub(crate) mult: Vec<Vec<Vec<FieldElem>>>,
    pub(crate) unit: Vec<FieldElem>,
}

impl FinCommAlgebra {
    pub fn new(
        field: Field,
        mult: Vec<Vec<Vec<FieldElem>>>,
        unit: Vec<FieldElem>,
    ) -> Result<FinCommAlgebra, AlgebraError> {
        let n = unit.len();
        if n == 0 {
            return Err(AlgebraError::BadShape("dimension must be positive".into()));
        }
        if mult.len() != n || mult.iter().any(|p| p.len() != n || p.iter().any(|r| r.len() != n)) {
            return Err(AlgebraError::BadShape(format!(
                "multiplication tensor must be {n}×{n}×{n}"
            )));
        }
        let all = mult.iter().flatten().flatten().chain(unit.iter());
        for x in all {
            if !field.contains(x) {
                return Err(AlgebraError::BadShape(format!(
                    "entry {x} does not lie in the coefficient field"
                )));
            }
        }
        Ok(FinCommAlgebra { field, dim: n, mult, unit })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mult(&self) -> &Vec<Vec<Vec<FieldElem>>> {
        &self.mult
    }

    pub fn unit(&self) -> &[FieldElem] {
        &self.unit
    }

    /// Structure constant `c[i][j][k]`.
    pub fn at(&self, i: usize, j: usize, k: usize) -> &FieldElem {
        &self.mult[i][j][k]
    }

    /// The one-dimensional algebra: the field itself.
    pub fn scalar_field(field: Field) -> FinCommAlgebra {
        FinCommAlgebra {
            field,
            dim: 1,
            mult: vec![vec![vec![field.one()]]],
            unit: vec![field.one()],
        }
    }

    /// `k[t]/(t^n)`: basis `1, t, ..., t^(n−1)` with truncating products.
    pub fn truncated_polynomial(field: Field, n: usize) -> FinCommAlgebra {
        assert!(n >= 1);
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| if i + j == k { field.one() } else { field.zero() })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut unit = vec_zero(field, n);
        unit[0] = field.one();
        FinCommAlgebra { field, dim: n, mult, unit }
    }

    /// Product of coordinate vectors: `Σ_{i,j} a_i b_j e_i e_j`.
    pub fn mul_vec(&self, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
        let mut out = vec_zero(self.field, self.dim);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let coef = self.field.mul(ai, bj);
                for (k, c) in self.mult[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = self.field.add(&out[k], &self.field.mul(&coef, c));
                    }
                }
            }
        }
        out
    }

    pub fn pow_vec(&self, a: &[FieldElem], k: u64) -> Vec<FieldElem> {
        let mut acc = self.unit.clone();
        let mut base = a.to_vec();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_vec(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul_vec(&base, &base);
            }
        }
        acc
    }

    /// Matrix of multiplication by `a`: column `j` is `a·e_j`.
    pub fn lmul(&self, a: &[FieldElem]) -> Matrix {
        let mut m = Matrix::zero(self.field, self.dim, self.dim);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.mult[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        let add = self.field.mul(ai, c);
                        m.set(k, j, self.field.add(m.at(k, j), &add));
                    }
                }
            }
        }
        m
    }

    /// The three algebra axioms, each with its first failing index tuple.
    pub fn verify(&self) -> Vec<AxiomCheck> {
        let n = self.dim;
        let mut commutative = None;
        'comm: for i in 0..n {
            for j in i + 1..n {
                if self.mult[i][j] != self.mult[j][i] {
                    commutative = Some(vec![i, j]);
                    break 'comm;
                }
            }
        }
        let mut unital = None;
        for i in 0..n {
            let mut ei = vec_zero(self.field, n);
            ei[i] = self.field.one();
            if self.mul_vec(&self.unit, &ei) != ei {
                unital = Some(vec![i]);
                break;
            }
        }
        // Σ_m c[i][j][m] c[m][k][l] = Σ_m c[j][k][m] c[i][m][l], checked
        // sparsely: both sides of (e_i e_j) e_k = e_i (e_j e_k) are
        // accumulated over the support of the inner products only, with
        // buffers reused across triples so the cost tracks the number of
        // nonzero structure constants rather than dim⁵.
        let support: Vec<Vec<Vec<(usize, &FieldElem)>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        self.mult[i][j]
                            .iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut lhs = vec_zero(self.field, n);
        let mut rhs = vec_zero(self.field, n);
        let mut lhs_touched: Vec<usize> = Vec::with_capacity(n);
        let mut rhs_touched: Vec<usize> = Vec::with_capacity(n);
        let mut associative = None;
        'assoc: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for &(m, c) in &support[i][j] {
                        for &(l, d) in &support[m][k] {
                            if lhs[l].is_zero() {
                                lhs_touched.push(l);
                            }
                            lhs[l] = self.field.add(&lhs[l], &self.field.mul(c, d));
                        }
                    }
                    for &(m, c) in &support[j][k] {
                        for &(l, d) in &support[i][m] {
                            if rhs[l].is_zero() {
                                rhs_touched.push(l);
                            }
                            rhs[l] = self.field.add(&rhs[l], &self.field.mul(c, d));
                        }
                    }
                    let mut bad = None;
                    for &l in lhs_touched.iter().chain(&rhs_touched) {
                        if lhs[l] != rhs[l] {
                            bad = Some(bad.map_or(l, |b: usize| b.min(l)));
                        }
                    }
                    for l in lhs_touched.drain(..).chain(rhs_touched.drain(..)) {
                        lhs[l] = self.field.zero();
                        rhs[l] = self.field.zero();
                    }
                    if let Some(l) = bad {
                        associative = Some(vec![i, j, k, l]);
                        break 'assoc;
                    }
                }
            }
        }
        vec![
            AxiomCheck { name: "associativity", failure: associative },
            AxiomCheck { name: "commutativity", failure: commutative },
            AxiomCheck { name: "unit", failure: unital },
        ]
    }

    pub fn is_valid(&self) -> bool {
        self.verify().iter().all(AxiomCheck::passed)
    }

    /// Basis (in reduced echelon form) of the ideal of nilpotent elements.
    ///
    /// Over `Q`: the kernel of the trace form `(x, y) ↦ tr(L_{xy})`, which
    /// equals the radical in characteristic zero.  Over `F_p`: the kernel
    /// of the iterated Frobenius `x ↦ x^(p^m)` with `p^m ≥ dim` — additive
    /// because the characteristic is `p`, and `F_p`-linear because scalars
    /// are fixed by `λ ↦ λ^p`; its kernel is exactly the set of nilpotents
    /// since nilpotency indices are at most `dim`.
    pub fn radical(&self) -> Vec<Vec<FieldElem>> {
        match self.field {
            Field::Rationals => {
                let traces: Vec<FieldElem> =
                    (0..self.dim).map(|k| self.basis_trace(k)).collect();
                let form = Matrix::from_fn(self.field, self.dim, self.dim, |i, j| {
                    let mut s = self.field.zero();
                    for (k, c) in self.mult[i][j].iter().enumerate() {
                        s = self.field.add(&s, &self.field.mul(c, &traces[k]));
                    }
                    s
                });
                form.kernel_basis()
            }
            Field::Prime(p) => {
                let mut q: u64 = 1;
                let mut m = 0u32;
                while (q as u128) < self.dim as u128 {
                    q = q.saturating_mul(p);
                    m += 1;
                }
                let _ = q;
                let mut frob = Matrix::zero(self.field, self.dim, self.dim);
                for j in 0..self.dim {
                    let mut v = vec_zero(self.field, self.dim);
                    v[j] = self.field.one();
                    for _ in 0..m {
                        v = self.pow_vec(&v, p);
                    }
                    for (i, x) in v.into_iter().enumerate() {
                        frob.set(i, j, x);
                    }
                }
                frob.kernel_basis()
            }
        }
    }

    /// `tr(L_{e_k})`.
    fn basis_trace(&self, k: usize) -> FieldElem {
        let mut t = self.field.zero();
        for j in 0..self.dim {
            t = self.field.add(&t, &self.mult[k][j][j]);
        }
        t
    }

    /// The quotient by the radical, with the projection (`quotient_dim ×
    /// dim`) and a linear section (`dim × quotient_dim`) relating it to the
    /// ambient coordinates.
    pub fn semisimple_quotient(&self) -> SemisimpleQuotient {
        let rad = self.radical();
        let r = rad.len();
        let s = self.dim - r;
        // Pivot columns of the radical row span; complement unit vectors
        // descend to a basis of the quotient.
        let rad_rows = Matrix::from_fn(self.field, r, self.dim, |i, j| rad[i][j].clone());
        let (_, pivots) = rad_rows.rref();
        let complement: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        // Change of basis: columns are radical vectors then complement units.
        let basis = Matrix::from_fn(self.field, self.dim, self.dim, |i, j| {
            if j < r {
                rad[j][i].clone()
            } else if i == complement[j - r] {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let inv = basis.inverse().expect("radical basis extends to a basis");
        let coords_mod_rad = |v: &[FieldElem]| -> Vec<FieldElem> {
            let full = inv.mul_vec(v);
            full[r..].to_vec()
        };
        let mult = (0..s)
            .map(|i| {
                (0..s)
                    .map(|j| {
                        let prod =
                            self.mul_vec(&unit_vector(self.field, self.dim, complement[i]), {
                                &unit_vector(self.field, self.dim, complement[j])
                            });
                        coords_mod_rad(&prod)
                    })
                    .collect()
            })
            .collect();
        let unit = coords_mod_rad(&self.unit);
        let algebra = FinCommAlgebra { field: self.field, dim: s, mult, unit };
        let projection = Matrix::from_fn(self.field, s, self.dim, |i, j| inv.at(r + i, j).clone());
        let section = Matrix::from_fn(self.field, self.dim, s, |i, j| {
            if i == complement[j] {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        SemisimpleQuotient { algebra, projection, section, radical: rad }
    }

    /// Complete decomposition into local factors: pairwise orthogonal
    /// primitive idempotents summing to 1, each with an echelon basis of
    /// its ideal `A·e`.
    ///
    /// Over `F_p` all idempotents of the semisimple quotient are found by
    /// exhaustive scan (bounded by `p^dim ≤ 10^7`) and lifted along the
    /// radical by Newton iteration.  Over `Q` the algebra is split along
    /// rational eigenvalues of multiplication operators; a factor counts as
    /// certified local only if its semisimple quotient is one-dimensional.
    pub fn local_decomposition(&self) -> Result<LocalDecomposition, AlgebraError> {
        let mut factors = match self.field {
            Field::Prime(p) => self.local_decomposition_mod_p(p)?,
            Field::Rationals => self.local_decomposition_rational()?,
        };
        factors.sort_by(|a, b| a.idempotent.cmp(&b.idempotent));
        Ok(LocalDecomposition { factors })
    }

    fn local_decomposition_mod_p(&self, p: u64) -> Result<Vec<LocalFactor>, AlgebraError> {
        let sq = self.semisimple_quotient();
        let s = sq.algebra.dim;
        let too_large = s > 127
            || (p as u128).checked_pow(s as u32).map_or(true, |n| n > 10_000_000);
        if too_large {
            return Err(AlgebraError::SearchTooLarge { space: format!("{p}^{s}") });
        }
        // Enumerate every idempotent of the (semisimple) quotient.
        let mut idempotents: Vec<Vec<FieldElem>> = Vec::new();
        let mut digits = vec![0u64; s];
        loop {
            let x: Vec<FieldElem> =
                digits.iter().map(|&d| self.field.from_i64(d as i64)).collect();
            if sq.algebra.mul_vec(&x, &x) == x {
                idempotents.push(x);
            }
            let mut pos = 0;
            loop {
                if pos == s {
                    // Keep the primitive ones: nonzero, with no idempotent
                    // strictly below them.
                    let primitive: Vec<&Vec<FieldElem>> = idempotents
                        .iter()
                        .filter(|e| !vec_is_zero(e))
                        .filter(|e| {
                            idempotents
                                .iter()
                                .filter(|f| {
                                    !vec_is_zero(f)
                                        && *f != *e
                                        && sq.algebra.mul_vec(f, e) == **f
                                })
                                .count()
                                == 0
                        })
                        .collect();
                    let lifted = primitive
                        .iter()
                        .map(|e| self.lift_idempotent(&sq.section.mul_vec(e)))
                        .collect::<Vec<_>>();
                    return Ok(lifted
                        .into_iter()
                        .map(|e| {
                            let basis = image_basis(&self.lmul(&e));
                            LocalFactor { idempotent: e, basis }
                        })
                        .collect());
                }
                digits[pos] += 1;
                if digits[pos] < p {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Newton iteration `e ← 3e² − 2e³` converges to the unique idempotent
    /// congruent to `e` modulo the radical.
    fn lift_idempotent(&self, e0: &[FieldElem]) -> Vec<FieldElem> {
        let three = self.field.from_i64(3);
        let minus_two = self.field.from_i64(-2);
        let mut e = e0.to_vec();
        for _ in 0..64 {
            let e2 = self.mul_vec(&e, &e);
            if e2 == e {
                return e;
            }
            let e3 = self.mul_vec(&e2, &e);
            e = vec_add(
                self.field,
                &vec_scale(self.field, &three, &e2),
                &vec_scale(self.field, &minus_two, &e3),
            );
        }
        panic!("idempotent lifting did not converge");
    }

    fn local_decomposition_rational(&self) -> Result<Vec<LocalFactor>, AlgebraError> {
        let whole_basis: Vec<Vec<FieldElem>> =
            (0..self.dim).map(|i| unit_vector(self.field, self.dim, i)).collect();
        let mut pieces = vec![(whole_basis, self.unit.clone())];
        // Repeatedly split any piece along a rational eigenvalue of a
        // multiplication operator (Fitting decomposition).
        let mut stable = false;
        while !stable {
            stable = true;
            let mut next = Vec::new();
            for (basis, unit) in pieces {
                match self.try_fitting_split(&basis, &unit) {
                    Some((piece_a, piece_b)) => {
                        stable = false;
                        next.push(piece_a);
                        next.push(piece_b);
                    }
                    None => next.push((basis, unit)),
                }
            }
            pieces = next;
        }
        let mut certified = Vec::new();
        let mut uncertified = 0usize;
        for (basis, unit) in &pieces {
            let factor = self.subalgebra(basis, unit);
            let local = factor.dim == 1 || factor.dim - factor.radical().len() == 1;
            if local {
                certified.push(LocalFactor { idempotent: unit.clone(), basis: basis.clone() });
            } else {
                uncertified += 1;
            }
        }
        if uncertified > 0 {
            return Err(AlgebraError::PartialDecomposition {
                certified: certified.len(),
                uncertified,
            });
        }
        Ok(certified)
    }

    /// One Fitting split of the ideal spanned by `basis` (unit element
    /// `unit`): for some multiplication operator and rational eigenvalue
    /// `λ`, the ideal is `ker(L−λ)^d ⊕ im(L−λ)^d`.  Returns the two pieces
    /// as (ambient basis, unit) pairs, or `None` if no operator splits.
    fn try_fitting_split(
        &self,
        basis: &[Vec<FieldElem>],
        unit: &[FieldElem],
    ) -> Option<((Vec<Vec<FieldElem>>, Vec<FieldElem>), (Vec<Vec<FieldElem>>, Vec<FieldElem>))>
    {
        let d = basis.len();
        if d <= 1 {
            return None;
        }
        let basis_mat = Matrix::from_fn(self.field, self.dim, d, |i, j| basis[j][i].clone());
        for b in basis {
            let products: Vec<Vec<FieldElem>> =
                basis.iter().map(|v| self.mul_vec(b, v)).collect();
            let op_cols = solve_in_basis(&basis_mat, &products);
            let op = Matrix::from_fn(self.field, d, d, |i, j| op_cols[j][i].clone());
            for lambda in rational_eigenvalue_candidates(&op) {
                let shifted = Matrix::from_fn(self.field, d, d, |i, j| {
                    if i == j {
                        self.field.sub(op.at(i, j), &lambda)
                    } else {
                        op.at(i, j).clone()
                    }
                });
                let power = shifted.pow(d as u64);
                let kernel = power.kernel_basis();
                if kernel.is_empty() || kernel.len() == d {
                    continue;
                }
                let image = image_basis(&power);
                assert_eq!(kernel.len() + image.len(), d, "Fitting dimensions");
                // Split the unit across the two summands.
                let combined: Vec<Vec<FieldElem>> =
                    kernel.iter().chain(image.iter()).cloned().collect();
                let combined_mat =
                    Matrix::from_fn(self.field, d, d, |i, j| combined[j][i].clone());
                let unit_coords = solve_in_basis(&basis_mat, &[unit.to_vec()]).remove(0);
                let split = solve_in_basis(&combined_mat, &[unit_coords]).remove(0);
                let to_ambient = |piece_vec: &[FieldElem]| -> Vec<FieldElem> {
                    let mut out = vec_zero(self.field, self.dim);
                    for (c, bv) in piece_vec.iter().zip(basis) {
                        out = vec_add(self.field, &out, &vec_scale(self.field, c, bv));
                    }
                    out
                };
                let ambient_of_piece_basis = |vecs: &[Vec<FieldElem>]| -> Vec<Vec<FieldElem>> {
                    vecs.iter().map(|v| to_ambient(v)).collect()
                };
                let mut unit_a = vec_zero(self.field, d);
                let mut unit_b = vec_zero(self.field, d);
                for (idx, c) in split.iter().enumerate() {
                    let target = if idx < kernel.len() { &mut unit_a } else { &mut unit_b };
                    *target = vec_add(
                        self.field,
                        target,
                        &vec_scale(self.field, c, &combined[idx]),
                    );
                }
                return Some((
                    (ambient_of_piece_basis(&kernel), to_ambient(&unit_a)),
                    (ambient_of_piece_basis(&image), to_ambient(&unit_b)),
                ));
            }
        }
        None
    }

    /// The ideal spanned by `basis` (with its own identity `unit`) as a
    /// standalone algebra in the `basis` coordinates.
    pub(crate) fn subalgebra(
        &self,
        basis: &[Vec<FieldElem>],
        unit: &[FieldElem],
    ) -> FinCommAlgebra {
        let d = basis.len();
        let basis_mat = Matrix::from_fn(self.field, self.dim, d, |i, j| basis[j][i].clone());
        let mut targets = Vec::with_capacity(d * d + 1);
        for i in 0..d {
            for j in 0..d {
                targets.push(self.mul_vec(&basis[i], &basis[j]));
            }
        }
        targets.push(unit.to_vec());
        let mut coords = solve_in_basis(&basis_mat, &targets);
        let unit_coords = coords.pop().expect("unit coordinates");
        let mut mult = vec![vec![Vec::new(); d]; d];
        for i in (0..d).rev() {
            for j in (0..d).rev() {
                mult[i][j] = coords.pop().expect("product coordinates");
            }
        }
        FinCommAlgebra { field: self.field, dim: d, mult, unit: unit_coords }
    }
}

/// Result of [`FinCommAlgebra::semisimple_quotient`].
#[derive(Clone, Debug)]
pub struct SemisimpleQuotient {
    pub algebra: FinCommAlgebra,
    /// `quotient_dim × dim` matrix of the projection.
    pub projection: Matrix,
    /// `dim × quotient_dim` linear section (projection ∘ section = id).
    pub section: Matrix,
    /// The radical basis the quotient was formed by.
    pub radical: Vec<Vec<FieldElem>>,
}

/// One local factor: its identity idempotent and an echelon basis of the
/// ideal it generates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactor {
    pub idempotent: Vec<FieldElem>,
    pub basis: Vec<Vec<FieldElem>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalDecomposition {
    pub factors: Vec<LocalFactor>,
}

impl LocalDecomposition {
    /// Checks the defining properties inside `a`: idempotency,
    /// orthogonality, completeness (sum = 1), and that factor dimensions
    /// sum to `dim(a)`.
    pub fn verify(&self, a: &FinCommAlgebra) -> bool {
        let mut total = vec_zero(a.field, a.dim);
        let mut dims = 0usize;
        for f in &self.factors {
            if a.mul_vec(&f.idempotent, &f.idempotent) != f.idempotent {
                return false;
            }
            total = vec_add(a.field, &total, &f.idempotent);
            dims += f.basis.len();
        }
        for (i, f) in self.factors.iter().enumerate() {
            for g in &self.factors[i + 1..] {
                if !vec_is_zero(&a.mul_vec(&f.idempotent, &g.idempotent)) {
                    return false;
                }
            }
        }
        total == a.unit && dims == a.dim
    }
}

pub(crate) fn unit_vector(field: Field, n: usize, i: usize) -> Vec<FieldElem> {
    let mut v = vec_zero(field, n);
    v[i] = field.one();
    v
}

/// Echelon basis of the column space of `m`.
pub(crate) fn image_basis(m: &Matrix) -> Vec<Vec<FieldElem>> {
    let (r, _) = m.transpose().rref();
    (0..r.rows())
        .map(|i| r.row(i).to_vec())
        .filter(|row| !vec_is_zero(row))
        .collect()
}

/// Coordinates of each target in the span of the columns of `basis_mat`
/// (full column rank required; targets must lie in the span).
pub(crate) fn solve_in_basis(basis_mat: &Matrix, targets: &[Vec<FieldElem>]) -> Vec<Vec<FieldElem>> {
    let field = basis_mat.field();
    let n = basis_mat.rows();
    let d = basis_mat.cols();
    let aug = Matrix::from_fn(field, n, d + targets.len(), |i, j| {
        if j < d {
            basis_mat.at(i, j).clone()
        } else {
            targets[j - d][i].clone()
        }
    });
    let (r, pivots) = aug.rref();
    assert_eq!(&pivots[..d.min(pivots.len())], &(0..d).collect::<Vec<_>>()[..], "basis columns independent");
    assert!(pivots.len() == d, "targets must lie in the span of the basis");
    targets
        .iter()
        .enumerate()
        .map(|(t, _)| (0..d).map(|row| r.at(row, d + t).clone()).collect())
        .collect()
}

// --- rational eigenvalues --------------------------------------------------

/// All rational eigenvalues of a matrix over `Q`: rational roots of the
/// characteristic polynomial.  (A conservative empty answer is possible
/// when coefficient factoring exceeds desk scale; callers treat a missing
/// eigenvalue as "no split found".)
fn rational_eigenvalue_candidates(m: &Matrix) -> Vec<FieldElem> {
    let cp = char_poly(m);
    rational_roots(&cp)
}

/// Characteristic polynomial of a rational matrix by the Faddeev–LeVerrier
/// recurrence; coefficients low to high, monic.
pub(crate) fn char_poly(a: &Matrix) -> Vec<BigRational> {
    assert_eq!(a.field(), Field::Rationals, "characteristic polynomial over Q only");
    let n = a.rows();
    let rat = |x: &FieldElem| x.rational().clone();
    let trace = |m: &Matrix| -> BigRational {
        (0..n).map(|i| rat(m.at(i, i))).fold(BigRational::zero(), |s, x| s + x)
    };
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk = a.clone();
    for k in 1..=n {
        let ck = -(trace(&mk) / BigRational::from(BigInt::from(k as i64)));
        coeffs[n - k] = ck.clone();
        if k < n {
            let shifted = Matrix::from_fn(Field::Rationals, n, n, |i, j| {
                if i == j {
                    Field::Rationals.add(mk.at(i, j), &FieldElem::Rational(ck.clone()))
                } else {
                    mk.at(i, j).clone()
                }
            });
            mk = a.mul(&shifted);
        }
    }
    coeffs
}

/// Rational roots of a polynomial with rational coefficients (low to high),
/// by the rational root theorem with trial-division factoring.  Returns a
/// sorted, duplicate-free list; gives up (returning only the roots it
/// could establish) if coefficient factoring leaves a composite cofactor
/// beyond 64 bits.
pub(crate) fn rational_roots(coeffs: &[BigRational]) -> Vec<FieldElem> {
    let mut c: Vec<BigRational> = coeffs.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let mut roots: Vec<BigRational> = Vec::new();
    // Strip the root at zero.
    let mut low = 0;
    while c[low].is_zero() {
        low += 1;
    }
    if low > 0 {
        roots.push(BigRational::zero());
    }
    let c = &c[low..];
    if c.len() > 1 {
        // Clear denominators to a primitive integer polynomial.
        let denom_lcm = c
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = c.iter().map(|x| (x * &denom_lcm).to_integer()).collect();
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        if let (Some(ps), Some(qs)) = (divisors(&a0), divisors(&an)) {
            let eval = |x: &BigRational| -> bool {
                let mut acc = BigRational::zero();
                for coef in ints.iter().rev() {
                    acc = acc * x + BigRational::from(coef.clone());
                }
                acc.is_zero()
            };
            for p in &ps {
                for q in &qs {
                    for sign in [1i64, -1] {
                        let cand = BigRational::new(p * BigInt::from(sign), q.clone());
                        if !roots.contains(&cand) && eval(&cand) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
    }
    roots.sort();
    roots.into_iter().map(FieldElem::Rational).collect()
}

/// All positive divisors of `n` (nonzero), or `None` if factoring stalls
/// on a composite cofactor beyond 64 bits or the divisor count explodes.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    assert!(!n.is_zero());
    let mut rest = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= rest && d <= 1_000_000 {
        let bd = BigInt::from(d);
        let mut e = 0;
        while (&rest % &bd).is_zero() {
            rest /= &bd;
            e += 1;
        }
        if e > 0 {
            primes.push((bd, e));
        }
        d += 1;
    }
    if rest > BigInt::one() {
        // Leftover cofactor: accept it if it is a provable 64-bit prime.
        match u64::try_from(&rest) {
            Ok(r) if crate::field::is_prime(r) => primes.push((rest.clone(), 1)),
            _ => return None,
        }
    }
    let count: u64 = primes.iter().map(|&(_, e)| (e + 1) as u64).product();
    if count > 10_000 {
        return None;
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for x in &out {
            let mut pw = BigInt::one();
            for _ in 0..=e {
                next.push(x * &pw);
                pw *= &p;
            }
        }
        out = next;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The split algebra `k^n` (pointwise product on the standard basis).
    fn split_algebra(field: Field, n: usize) -> FinCommAlgebra {
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| {
                                if i == j && j == k {
                                    field.one()
                                } else {
                                    field.zero()
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        FinCommAlgebra::new(field, mult, vec![field.one(); n]).unwrap()
    }

    /// Cyclic convolution: the underlying algebra of `k[x]/(x^n − 1)`.
    fn convolution_algebra(field: Field, n: usize) -> FinCommAlgebra {
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| {
                                if (i + j) % n == k {
                                    field.one()
                                } else {
                                    field.zero()
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut unit = vec![field.zero(); n];
        unit[0] = field.one();
        FinCommAlgebra::new(field, mult, unit).unwrap()
    }

    fn q() -> Field {
        Field::rationals()
    }

    fn fp(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn axioms_hold_for_standard_constructions() {
        assert!(split_algebra(q(), 4).is_valid());
        assert!(convolution_algebra(fp(5), 6).is_valid());
        assert!(FinCommAlgebra::truncated_polynomial(q(), 5).is_valid());
        assert!(FinCommAlgebra::scalar_field(fp(2)).is_valid());
    }

    #[test]
    fn verify_pinpoints_a_perturbed_entry() {
        let mut a = convolution_algebra(q(), 3);
        let old = a.mult[1][2][0].clone();
        a.mult[1][2][0] = q().add(&old, &q().one());
        let checks = a.verify();
        let assoc = checks.iter().find(|c| c.name == "associativity").unwrap();
        assert!(assoc.failure.is_some());
        // Symmetric slots were not touched, so commutativity also breaks.
        let comm = checks.iter().find(|c| c.name == "commutativity").unwrap();
        assert!(comm.failure.is_some());
    }

    #[test]
    fn lmul_matches_mul_vec() {
        let a = convolution_algebra(q(), 4);
        let x: Vec<FieldElem> = (0..4).map(|i| q().from_i64(i as i64 - 1)).collect();
        let y: Vec<FieldElem> = (0..4).map(|i| q().from_i64(2 * i as i64 + 1)).collect();
        assert_eq!(a.lmul(&x).mul_vec(&y), a.mul_vec(&x, &y));
    }

    #[test]
    fn radical_of_dual_numbers_is_the_nilpotent_line() {
        let a = FinCommAlgebra::truncated_polynomial(q(), 2);
        let rad = a.radical();
        assert_eq!(rad, vec![vec![q().zero(), q().one()]]);
    }

    #[test]
    fn radical_examples_over_q() {
        assert!(split_algebra(q(), 3).radical().is_empty());
        assert!(convolution_algebra(q(), 3).radical().is_empty());
        assert_eq!(FinCommAlgebra::truncated_polynomial(q(), 5).radical().len(), 4);
    }

    #[test]
    fn radical_of_modular_convolution() {
        // x^2 − 1 = (x − 1)^2 in characteristic 2: radical is spanned by
        // e_0 + e_1.
        let a = convolution_algebra(fp(2), 2);
        let rad = a.radical();
        assert_eq!(rad, vec![vec![fp(2).one(), fp(2).one()]]);
    }

    /// Independent oracle: the radical is exactly the set of nilpotents,
    /// found by scanning all of `F_p^dim`.
    #[test]
    fn radical_matches_exhaustive_nilpotent_scan() {
        let cases: Vec<FinCommAlgebra> = vec![
            convolution_algebra(fp(2), 2),
            convolution_algebra(fp(2), 4),
            convolution_algebra(fp(3), 3),
            convolution_algebra(fp(3), 6),
            convolution_algebra(fp(5), 5),
            convolution_algebra(fp(7), 3),
            FinCommAlgebra::truncated_polynomial(fp(2), 4),
            FinCommAlgebra::truncated_polynomial(fp(5), 4),
            split_algebra(fp(3), 4),
        ];
        for a in cases {
            let p = match a.field {
                Field::Prime(p) => p,
                _ => unreachable!(),
            };
            let mut nilpotents: Vec<Vec<FieldElem>> = Vec::new();
            let mut digits = vec![0u64; a.dim];
            'scan: loop {
                let x: Vec<FieldElem> =
                    digits.iter().map(|&d| a.field.from_i64(d as i64)).collect();
                if vec_is_zero(&a.pow_vec(&x, a.dim as u64)) {
                    nilpotents.push(x);
                }
                let mut pos = 0;
                loop {
                    if pos == a.dim {
                        break 'scan;
                    }
                    digits[pos] += 1;
                    if digits[pos] < p {
                        break;
                    }
                    digits[pos] = 0;
                    pos += 1;
                }
            }
            // Span of the computed radical basis, enumerated the same way.
            let rad = a.radical();
            let mut span: Vec<Vec<FieldElem>> = Vec::new();
            let mut coefs = vec![0u64; rad.len()];
            'span: loop {
                let mut v = vec_zero(a.field, a.dim);
                for (c, b) in coefs.iter().zip(&rad) {
                    let ce = a.field.from_i64(*c as i64);
                    v = vec_add(a.field, &v, &vec_scale(a.field, &ce, b));
                }
                span.push(v);
                let mut pos = 0;
                loop {
                    if pos == rad.len() {
                        break 'span;
                    }
                    coefs[pos] += 1;
                    if coefs[pos] < p {
                        break;
                    }
                    coefs[pos] = 0;
                    pos += 1;
                }
            }
            nilpotents.sort();
            span.sort();
            span.dedup();
            assert_eq!(nilpotents, span, "radical = nilpotents for dim {}", a.dim);
        }
    }

    #[test]
    fn maschke_boundary_for_convolution_algebras() {
        for n in 1..=8usize {
            for p in [2u64, 3, 5, 7] {
                let a = convolution_algebra(fp(p), n);
                let semisimple = a.radical().is_empty();
                assert_eq!(semisimple, n as u64 % p != 0, "n={n}, p={p}");
            }
        }
    }

    #[test]
    fn semisimple_quotient_has_zero_radical() {
        for a in [
            convolution_algebra(fp(2), 4),
            convolution_algebra(fp(3), 6),
            FinCommAlgebra::truncated_polynomial(q(), 4),
            convolution_algebra(q(), 5),
        ] {
            let sq = a.semisimple_quotient();
            assert_eq!(sq.algebra.dim, a.dim - sq.radical.len());
            assert!(sq.algebra.is_valid());
            assert!(sq.algebra.radical().is_empty());
            // projection ∘ section = identity on the quotient.
            assert!(sq.projection.mul(&sq.section).is_identity());
        }
    }

    #[test]
    fn local_decomposition_of_split_algebras() {
        for (field, n) in [(fp(7), 3usize), (fp(3), 4), (fp(2), 3)] {
            let a = split_algebra(field, n);
            let dec = a.local_decomposition().unwrap();
            assert_eq!(dec.factors.len(), n);
            assert!(dec.verify(&a));
            assert!(dec.factors.iter().all(|f| f.basis.len() == 1));
        }
    }

    #[test]
    fn truncated_polynomial_algebras_are_local() {
        for (field, n) in [(fp(2), 2usize), (fp(3), 3), (fp(5), 5), (fp(7), 7)] {
            let a = FinCommAlgebra::truncated_polynomial(field, n);
            let dec = a.local_decomposition().unwrap();
            assert_eq!(dec.factors.len(), 1);
            assert!(dec.verify(&a));
        }
        let a = FinCommAlgebra::truncated_polynomial(q(), 4);
        let dec = a.local_decomposition().unwrap();
        assert_eq!(dec.factors.len(), 1);
        assert!(dec.verify(&a));
    }

    #[test]
    fn modular_convolution_is_local_in_characteristic_dividing_n() {
        let a = convolution_algebra(fp(2), 2);
        let dec = a.local_decomposition().unwrap();
        assert_eq!(dec.factors.len(), 1);
        assert!(dec.verify(&a));
    }

    #[test]
    fn split_semisimple_convolutions_decompose_fully() {
        // x^3 − 1 splits over F_7 (roots 1, 2, 4): three local factors.
        let a = convolution_algebra(fp(7), 3);
        let dec = a.local_decomposition().unwrap();
        assert_eq!(dec.factors.len(), 3);
        assert!(dec.verify(&a));
        // Mixed case: x^4 − 1 over F_2 is (x−1)^4 — local.
        let b = convolution_algebra(fp(2), 4);
        let dec_b = b.local_decomposition().unwrap();
        assert_eq!(dec_b.factors.len(), 1);
        assert!(dec_b.verify(&b));
    }

    #[test]
    fn rational_decompositions() {
        // Q^4 splits completely.
        let a = split_algebra(q(), 4);
        let dec = a.local_decomposition().unwrap();
        assert_eq!(dec.factors.len(), 4);
        assert!(dec.verify(&a));
        // Q[x]/(x²−1) = Q × Q via the ±1 eigenvectors of x.
        let b = convolution_algebra(q(), 2);
        let dec_b = b.local_decomposition().unwrap();
        assert_eq!(dec_b.factors.len(), 2);
        assert!(dec_b.verify(&b));
        // Q[x]/(x³−1) = Q × (quadratic field): the quadratic factor cannot
        // be certified by rational eigenvalue splitting.
        assert_eq!(
            convolution_algebra(q(), 3).local_decomposition(),
            Err(AlgebraError::PartialDecomposition { certified: 1, uncertified: 1 })
        );
    }

    #[test]
    fn oversized_modular_search_is_rejected() {
        let a = split_algebra(fp(2), 24);
        assert_eq!(
            a.local_decomposition(),
            Err(AlgebraError::SearchTooLarge { space: "2^24".into() })
        );
    }

    #[test]
    fn char_poly_examples() {
        let m = Matrix::from_fn(q(), 2, 2, |i, j| {
            q().from_i64([[2, 0], [0, 3]][i][j])
        });
        let cp = char_poly(&m);
        let expect: Vec<BigRational> =
            [6, -5, 1].iter().map(|&c| BigRational::from(BigInt::from(c))).collect();
        assert_eq!(cp, expect);
    }

    #[test]
    fn rational_root_extraction() {
        // 2x³ − x² − 2x + 1 = (x−1)(x+1)(2x−1).
        let coeffs: Vec<BigRational> =
            [1i64, -2, -1, 2].iter().map(|&c| BigRational::from(BigInt::from(c))).collect();
        let roots = rational_roots(&coeffs);
        let expect: Vec<FieldElem> = [(-1i64, 1i64), (1, 2), (1, 1)]
            .iter()
            .map(|&(n, d)| FieldElem::Rational(BigRational::new(BigInt::from(n), BigInt::from(d))))
            .collect();
        assert_eq!(roots, expect);
        // x² + 1 has none; x³ has only 0.
        let none: Vec<BigRational> =
            [1i64, 0, 1].iter().map(|&c| BigRational::from(BigInt::from(c))).collect();
        assert!(rational_roots(&none).is_empty());
        let cube: Vec<BigRational> =
            [0i64, 0, 0, 1].iter().map(|&c| BigRational::from(BigInt::from(c))).collect();
        assert_eq!(rational_roots(&cube), vec![FieldElem::Rational(BigRational::zero())]);
    }

    #[test]
    fn bad_shapes_are_rejected() {
        let f = q();
        assert!(FinCommAlgebra::new(f, vec![], vec![]).is_err());
        let wrong = FinCommAlgebra::new(f, vec![vec![vec![f.one()], vec![f.one()]]], vec![f.one()]);
        assert!(wrong.is_err());
        // Residue entries do not live in Q.
        let alien = FinCommAlgebra::new(
            f,
            vec![vec![vec![fp(5).one()]]],
            vec![fp(5).one()],
        );
        assert!(alien.is_err());
    }
}
