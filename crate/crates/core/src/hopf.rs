//! Bicommutative Hopf algebras (and bialgebras) presented by structure
//! constants; Cartier dualization as pure tensor transposition.
//!
//! A [`HopfAlgebra`] carries a multiplication tensor `c[i][j][k]`
//! (`e_i·e_j = Σ_k c[i][j][k] e_k`), a comultiplication tensor `d[i][j][k]`
//! (`Δe_i = Σ_{j,k} d[i][j][k] e_j⊗e_k`), a unit vector, a counit covector,
//! and an optional antipode matrix.  [`cartier_dual`] swaps the roles:
//! in the dual basis the new multiplication is the transposed
//! comultiplication and vice versa, the new unit is the old counit, and the
//! new antipode is the transposed matrix.  Dualizing twice is literally the
//! identity on tensors, which is what [`double_dual_iso`] certifies.

use crate::algebra::{unit_vector, vec_add, vec_scale, vec_zero, AxiomCheck, FinCommAlgebra};
use crate::field::{roots_of_unity, Field, FieldElem};
use crate::group::FinCommMonoid;
use crate::group::FinAbGroup;
use crate::matrix::Matrix;
use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HopfError {
    #[error("malformed Hopf data: {0}")]
    BadShape(String),
    #[error("FieldMismatch: operands live over different fields")]
    FieldMismatch,
    #[error("InvalidInput: Hopf axioms fail ({0})")]
    InvalidInput(String),
    #[error("SearchTooLarge: search space {space} exceeds the brute-force bound 10^7")]
    SearchTooLarge { space: String },
    #[error("InvalidPoint: the given map is not an algebra homomorphism")]
    InvalidPoint,
}

/// A unital algebra homomorphism out of a Hopf algebra, recorded by the
/// image coordinates of each basis element in the target algebra (inner
/// vectors have length 1 when the target is the base field).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AlgebraPoint {
    pub images: Vec<Vec<FieldElem>>,
}

impl AlgebraPoint {
    /// The scalar values when the target is one-dimensional.
    pub fn field_values(&self) -> Option<Vec<FieldElem>> {
        if self.images.iter().all(|v| v.len() == 1) {
            Some(self.images.iter().map(|v| v[0].clone()).collect())
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebra {
    pub(crate) algebra: FinCommAlgebra,
    pub(crate) comult: Vec<Vec<Vec<FieldElem>>>,
    pub(crate) counit: Vec<FieldElem>,
    pub(crate) antipode: Option<Matrix>,
}

/// Per-axiom verification outcome; `checks` always lists every applicable
/// axiom in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn failing_names(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed()).map(|c| c.name).collect()
    }
}

impl HopfAlgebra {
    pub fn new(
        algebra: FinCommAlgebra,
        comult: Vec<Vec<Vec<FieldElem>>>,
        counit: Vec<FieldElem>,
        antipode: Option<Matrix>,
    ) -> Result<HopfAlgebra, HopfError> {
        let n = algebra.dim();
        let field = algebra.field();
        if comult.len() != n
            || comult.iter().any(|p| p.len() != n || p.iter().any(|r| r.len() != n))
        {
            return Err(HopfError::BadShape(format!("comultiplication tensor must be {n}×{n}×{n}")));
        }
        if counit.len() != n {
            return Err(HopfError::BadShape(format!("counit must have length {n}")));
        }
        for x in comult.iter().flatten().flatten().chain(counit.iter()) {
            if !field.contains(x) {
                return Err(HopfError::BadShape(format!(
                    "entry {x} does not lie in the coefficient field"
                )));
            }
        }
        if let Some(s) = &antipode {
            if s.rows() != n || s.cols() != n || s.field() != field {
                return Err(HopfError::BadShape(format!("antipode must be {n}×{n} over the field")));
            }
        }
        Ok(HopfAlgebra { algebra, comult, counit, antipode })
    }

    pub fn algebra(&self) -> &FinCommAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn comult(&self) -> &Vec<Vec<Vec<FieldElem>>> {
        &self.comult
    }

    pub fn counit(&self) -> &[FieldElem] {
        &self.counit
    }

    pub fn antipode(&self) -> Option<&Matrix> {
        self.antipode.as_ref()
    }

    /// Nonzero comultiplication entries of `Δe_i` as `(j, k, coefficient)`.
    fn comult_pairs(&self, i: usize) -> Vec<(usize, usize, FieldElem)> {
        let n = self.dim();
        let mut out = Vec::new();
        for j in 0..n {
            for k in 0..n {
                let c = &self.comult[i][j][k];
                if !c.is_zero() {
                    out.push((j, k, c.clone()));
                }
            }
        }
        out
    }

    /// Applies the counit to a coordinate vector.
    pub fn counit_of(&self, x: &[FieldElem]) -> FieldElem {
        let f = self.field();
        x.iter()
            .zip(&self.counit)
            .filter(|(a, _)| !a.is_zero())
            .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
    }

    /// The counit as an [`AlgebraPoint`] into the base field (it is always
    /// an algebra homomorphism for a valid bialgebra).
    pub fn counit_point(&self) -> AlgebraPoint {
        AlgebraPoint { images: self.counit.iter().map(|c| vec![c.clone()]).collect() }
    }

    /// Checks every (bi)algebra axiom — and the antipode identity when an
    /// antipode is present — returning the first failing index tuple per
    /// axiom.
    pub fn verify_axioms(&self) -> AxiomReport {
        let f = self.field();
        let n = self.dim();
        let mut checks = self.algebra.verify();

        // Sparse views computed once: the cost of every check below then
        // tracks the number of nonzero structure constants.
        let pairs: Vec<Vec<(usize, usize, FieldElem)>> =
            (0..n).map(|i| self.comult_pairs(i)).collect();
        let mult_supp: Vec<Vec<Vec<(usize, FieldElem)>>> = (0..n)
            .map(|i| (0..n).map(|j| nonzero(&self.algebra.mult[i][j]).collect()).collect())
            .collect();

        // Cocommutativity: d[i][j][k] = d[i][k][j].
        let mut cocommutative = None;
        'cocomm: for i in 0..n {
            for j in 0..n {
                for k in j + 1..n {
                    if self.comult[i][j][k] != self.comult[i][k][j] {
                        cocommutative = Some(vec![i, j, k]);
                        break 'cocomm;
                    }
                }
            }
        }
        checks.push(AxiomCheck { name: "cocommutativity", failure: cocommutative });

        // Coassociativity: for each i, (Δ⊗id)Δe_i = (id⊗Δ)Δe_i as tensors
        // in e_a⊗e_b⊗e_c.
        let mut coassociative = None;
        let mut left = Accumulator::new(f, n * n * n);
        let mut right = Accumulator::new(f, n * n * n);
        for i in 0..n {
            left.clear();
            right.clear();
            for (j, k, c1) in &pairs[i] {
                for (a, b, c2) in &pairs[*j] {
                    left.add((a * n + b) * n + k, &f.mul(c1, c2));
                }
                for (b, c, c2) in &pairs[*k] {
                    right.add((j * n + b) * n + c, &f.mul(c1, c2));
                }
            }
            if let Some(idx) = left.first_difference(&right) {
                coassociative = Some(vec![i, idx / (n * n), idx / n % n, idx % n]);
                break;
            }
        }
        checks.push(AxiomCheck { name: "coassociativity", failure: coassociative });

        // Counit: (ε⊗id)Δe_i = e_i = (id⊗ε)Δe_i.
        let mut counit_ok = None;
        for i in 0..n {
            let mut lhs = vec_zero(f, n);
            let mut rhs = vec_zero(f, n);
            for (j, k, c) in &pairs[i] {
                lhs[*k] = f.add(&lhs[*k], &f.mul(c, &self.counit[*j]));
                rhs[*j] = f.add(&rhs[*j], &f.mul(c, &self.counit[*k]));
            }
            let ei = unit_vector(f, n, i);
            if lhs != ei || rhs != ei {
                counit_ok = Some(vec![i]);
                break;
            }
        }
        checks.push(AxiomCheck { name: "counit", failure: counit_ok });

        // Bialgebra compatibility: Δ(e_i e_j) = Δ(e_i)Δ(e_j).
        let mut compat_mult = None;
        let mut lhs_buf = Accumulator::new(f, n * n);
        let mut rhs_buf = Accumulator::new(f, n * n);
        'compat: for i in 0..n {
            for j in 0..n {
                lhs_buf.clear();
                rhs_buf.clear();
                for (m, cm) in &mult_supp[i][j] {
                    for (a, b, c) in &pairs[*m] {
                        lhs_buf.add(a * n + b, &f.mul(cm, c));
                    }
                }
                for (a1, b1, c1) in &pairs[i] {
                    for (a2, b2, c2) in &pairs[j] {
                        let sa = &mult_supp[*a1][*a2];
                        if sa.is_empty() {
                            continue;
                        }
                        let sb = &mult_supp[*b1][*b2];
                        if sb.is_empty() {
                            continue;
                        }
                        let c12 = f.mul(c1, c2);
                        for (a, ca) in sa {
                            for (b, cb) in sb {
                                rhs_buf.add(a * n + b, &f.mul(&f.mul(&c12, ca), cb));
                            }
                        }
                    }
                }
                if let Some(idx) = lhs_buf.first_difference(&rhs_buf) {
                    compat_mult = Some(vec![i, j, idx / n, idx % n]);
                    break 'compat;
                }
            }
        }
        checks.push(AxiomCheck { name: "compatibility_mult", failure: compat_mult });

        // Δ(1) = 1⊗1.
        let mut delta_unit = Accumulator::new(f, n * n);
        for (i, ui) in nonzero(&self.algebra.unit) {
            for (a, b, c) in self.comult_pairs(i) {
                delta_unit.add(a * n + b, &f.mul(&ui, &c));
            }
        }
        let mut unit_outer = Accumulator::new(f, n * n);
        for (a, ua) in nonzero(&self.algebra.unit) {
            for (b, ub) in nonzero(&self.algebra.unit) {
                unit_outer.add(a * n + b, &f.mul(&ua, &ub));
            }
        }
        let compat_unit = delta_unit
            .first_difference(&unit_outer)
            .map(|idx| vec![idx / n, idx % n]);
        checks.push(AxiomCheck { name: "compatibility_unit", failure: compat_unit });

        // ε is an algebra map: ε(e_i e_j) = ε(e_i)ε(e_j), ε(1) = 1.
        let mut compat_counit = None;
        if !self.counit_of(&self.algebra.unit).is_one() {
            compat_counit = Some(vec![]);
        } else {
            'ceps: for i in 0..n {
                for j in 0..n {
                    let prod_eps = self.counit_of(&self.algebra.mult[i][j]);
                    if prod_eps != f.mul(&self.counit[i], &self.counit[j]) {
                        compat_counit = Some(vec![i, j]);
                        break 'ceps;
                    }
                }
            }
        }
        checks.push(AxiomCheck { name: "compatibility_counit", failure: compat_counit });

        // Antipode: m∘(S⊗id)∘Δ = u∘ε = m∘(id⊗S)∘Δ.
        if let Some(s) = &self.antipode {
            let columns: Vec<Vec<FieldElem>> =
                (0..n).map(|j| (0..n).map(|r| s.at(r, j).clone()).collect()).collect();
            let mut antipode_ok = None;
            for i in 0..n {
                let mut left_side = vec_zero(f, n);
                let mut right_side = vec_zero(f, n);
                for (j, k, c) in &pairs[i] {
                    let l = self.algebra.mul_vec(&columns[*j], &unit_vector(f, n, *k));
                    let r = self.algebra.mul_vec(&unit_vector(f, n, *j), &columns[*k]);
                    left_side = vec_add(f, &left_side, &vec_scale(f, c, &l));
                    right_side = vec_add(f, &right_side, &vec_scale(f, c, &r));
                }
                let expect = vec_scale(f, &self.counit[i], &self.algebra.unit);
                if left_side != expect || right_side != expect {
                    antipode_ok = Some(vec![i]);
                    break;
                }
            }
            checks.push(AxiomCheck { name: "antipode", failure: antipode_ok });
        }

        AxiomReport { checks }
    }
}

/// Dense accumulation buffer with touched-index tracking, so sparse sums
/// stay proportional to their support.
struct Accumulator {
    field: Field,
    vals: Vec<FieldElem>,
    touched: Vec<usize>,
    dirty: Vec<bool>,
}

impl Accumulator {
    fn new(field: Field, size: usize) -> Accumulator {
        Accumulator {
            field,
            vals: vec![field.zero(); size],
            touched: Vec::new(),
            dirty: vec![false; size],
        }
    }

    fn clear(&mut self) {
        for &i in &self.touched {
            self.vals[i] = self.field.zero();
            self.dirty[i] = false;
        }
        self.touched.clear();
    }

    fn add(&mut self, idx: usize, v: &FieldElem) {
        if !self.dirty[idx] {
            self.dirty[idx] = true;
            self.touched.push(idx);
        }
        self.vals[idx] = self.field.add(&self.vals[idx], v);
    }

    /// Smallest index where the two accumulations differ.
    fn first_difference(&self, other: &Accumulator) -> Option<usize> {
        let mut indices: Vec<usize> =
            self.touched.iter().chain(other.touched.iter()).copied().collect();
        indices.sort_unstable();
        indices.dedup();
        indices.into_iter().find(|&i| self.vals[i] != other.vals[i])
    }
}

fn nonzero(v: &[FieldElem]) -> impl Iterator<Item = (usize, FieldElem)> + '_ {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone()))
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

/// The monoid algebra `k[M]`: basis `{e_m}`, `e_m·e_{m'} = e_{mm'}`, every
/// basis vector group-like, counit constantly 1.  The antipode
/// `e_m ↦ e_{m^{-1}}` is present exactly when `M` is a group.
pub fn group_algebra(m: &FinCommMonoid, field: Field) -> HopfAlgebra {
    let n = m.size();
    let mult = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut row = vec_zero(field, n);
                    row[m.mul(i, j)] = field.one();
                    row
                })
                .collect()
        })
        .collect();
    let comult = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| if i == j && j == k { field.one() } else { field.zero() })
                        .collect()
                })
                .collect()
        })
        .collect();
    let unit = unit_vector(field, n, m.identity());
    let counit = vec![field.one(); n];
    let antipode = if m.is_group() {
        Some(Matrix::from_fn(field, n, n, |r, c| {
            if m.inverse(c).unwrap() == r {
                field.one()
            } else {
                field.zero()
            }
        }))
    } else {
        None
    };
    let algebra = FinCommAlgebra { field, dim: n, mult, unit };
    HopfAlgebra { algebra, comult, counit, antipode }
}

/// `k[G]` for a finite abelian group in invariant-factor form.
pub fn group_algebra_of(g: &FinAbGroup, field: Field) -> HopfAlgebra {
    group_algebra(&g.cayley_table(), field)
}

/// The function algebra `Maps(M, k)`: basis of delta functions with
/// pointwise product, `Δδ_m = Σ_{m'·m'' = m} δ_{m'}⊗δ_{m''}`, counit =
/// evaluation at the identity.
pub fn function_algebra(m: &FinCommMonoid, field: Field) -> HopfAlgebra {
    let n = m.size();
    let mult = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| if i == j && j == k { field.one() } else { field.zero() })
                        .collect()
                })
                .collect()
        })
        .collect();
    let comult = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| if m.mul(j, k) == i { field.one() } else { field.zero() })
                        .collect()
                })
                .collect()
        })
        .collect();
    let unit = vec![field.one(); n];
    let counit = unit_vector(field, n, m.identity());
    let antipode = if m.is_group() {
        Some(Matrix::from_fn(field, n, n, |r, c| {
            if m.inverse(c).unwrap() == r {
                field.one()
            } else {
                field.zero()
            }
        }))
    } else {
        None
    };
    let algebra = FinCommAlgebra { field, dim: n, mult, unit };
    HopfAlgebra { algebra, comult, counit, antipode }
}

/// `Maps(G, k)` for a finite abelian group.
pub fn function_algebra_of(g: &FinAbGroup, field: Field) -> HopfAlgebra {
    function_algebra(&g.cayley_table(), field)
}

/// `F_p[x]/(x^p)` with `x` primitive (`Δx = x⊗1 + 1⊗x`), `ε(x) = 0`,
/// `S(x) = −x`.  A Hopf algebra only in characteristic `p`.
pub fn additive_truncated(p: u64) -> HopfAlgebra {
    additive_truncated_over(Field::prime(p).expect("p must be prime"), p)
}

/// The same structure tensors written over an arbitrary field — over a
/// field of characteristic ≠ p the compatibility axiom fails, which is
/// itself a useful testable fact.
pub fn additive_truncated_over(field: Field, p: u64) -> HopfAlgebra {
    let n = p as usize;
    let algebra = FinCommAlgebra::truncated_polynomial(field, n);
    // Δ(x^i) = Σ_j C(i, j) x^j ⊗ x^(i−j).
    let comult = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| {
                            if j + k == i {
                                field.from_bigint(&binomial(i, j))
                            } else {
                                field.zero()
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let counit = unit_vector(field, n, 0);
    let antipode = Some(Matrix::from_fn(field, n, n, |r, c| {
        if r == c {
            field.from_i64(if r % 2 == 0 { 1 } else { -1 })
        } else {
            field.zero()
        }
    }));
    HopfAlgebra { algebra, comult, counit, antipode }
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Tensor product of Hopf algebras on the pair basis
/// `(i₁, i₂) ↦ i₁·dim₂ + i₂`; every structure tensor is the Kronecker
/// product of the factors'.
pub fn tensor_product(h1: &HopfAlgebra, h2: &HopfAlgebra) -> Result<HopfAlgebra, HopfError> {
    if h1.field() != h2.field() {
        return Err(HopfError::FieldMismatch);
    }
    let f = h1.field();
    let (n1, n2) = (h1.dim(), h2.dim());
    let n = n1 * n2;
    let idx = |a: usize, b: usize| a * n2 + b;
    let mut mult = vec![vec![vec_zero(f, n); n]; n];
    let mut comult = vec![vec![vec_zero(f, n); n]; n];
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            for j1 in 0..n1 {
                for j2 in 0..n2 {
                    for k1 in 0..n1 {
                        let c1 = &h1.algebra.mult[i1][j1][k1];
                        if c1.is_zero() {
                            continue;
                        }
                        for k2 in 0..n2 {
                            let c2 = &h2.algebra.mult[i2][j2][k2];
                            if !c2.is_zero() {
                                mult[idx(i1, i2)][idx(j1, j2)][idx(k1, k2)] = f.mul(c1, c2);
                            }
                        }
                    }
                    for k1 in 0..n1 {
                        let c1 = &h1.comult[i1][j1][k1];
                        if c1.is_zero() {
                            continue;
                        }
                        for k2 in 0..n2 {
                            let c2 = &h2.comult[i2][j2][k2];
                            if !c2.is_zero() {
                                comult[idx(i1, i2)][idx(j1, j2)][idx(k1, k2)] = f.mul(c1, c2);
                            }
                        }
                    }
                }
            }
        }
    }
    let kron_vec = |a: &[FieldElem], b: &[FieldElem]| -> Vec<FieldElem> {
        let mut out = vec_zero(f, n);
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[idx(i, j)] = f.mul(x, y);
            }
        }
        out
    };
    let unit = kron_vec(&h1.algebra.unit, &h2.algebra.unit);
    let counit = kron_vec(&h1.counit, &h2.counit);
    let antipode = match (&h1.antipode, &h2.antipode) {
        (Some(s1), Some(s2)) => Some(Matrix::from_fn(f, n, n, |r, c| {
            f.mul(s1.at(r / n2, c / n2), s2.at(r % n2, c % n2))
        })),
        _ => None,
    };
    let algebra = FinCommAlgebra { field: f, dim: n, mult, unit };
    Ok(HopfAlgebra { algebra, comult, counit, antipode })
}

// ---------------------------------------------------------------------------
// Dualization
// ---------------------------------------------------------------------------

/// The Cartier dual, written in the basis dual to the input's: transposes
/// the structure tensors, swaps unit with counit, and transposes the
/// antipode.  Requires the input to satisfy all axioms.
pub fn cartier_dual(h: &HopfAlgebra) -> Result<HopfAlgebra, HopfError> {
    let report = h.verify_axioms();
    if !report.all_pass() {
        return Err(HopfError::InvalidInput(report.failing_names().join(", ")));
    }
    Ok(dualize_tensors(h))
}

fn dualize_tensors(h: &HopfAlgebra) -> HopfAlgebra {
    let n = h.dim();
    let f = h.field();
    let mult = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| h.comult[k][i][j].clone()).collect()).collect())
        .collect();
    let comult = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| h.algebra.mult[j][k][i].clone()).collect())
                .collect()
        })
        .collect();
    let unit = h.counit.clone();
    let counit = h.algebra.unit.clone();
    let antipode = h.antipode.as_ref().map(Matrix::transpose);
    HopfAlgebra { algebra: FinCommAlgebra { field: f, dim: n, mult, unit }, comult, counit, antipode }
}

/// The evaluation map into the double dual, as a matrix in the double-dual
/// basis.  For finite-dimensional tensors dualizing twice restores every
/// structure constant on the nose, so this is the identity matrix; the
/// equality of tensors is asserted, making the returned matrix a
/// certificate of the isomorphism.
pub fn double_dual_iso(h: &HopfAlgebra) -> Result<Matrix, HopfError> {
    let dual = cartier_dual(h)?;
    let double = dualize_tensors(&dual);
    assert_eq!(&double, h, "double dual restores the structure tensors");
    Ok(Matrix::identity(h.field(), h.dim()))
}

/// Does the invertible matrix `c` intertwine every piece of structure
/// (`c` maps `a`'s basis coordinates to `b`'s)?
pub fn is_hopf_isomorphism(a: &HopfAlgebra, b: &HopfAlgebra, c: &Matrix) -> bool {
    if a.field() != b.field() || a.dim() != b.dim() {
        return false;
    }
    let f = a.field();
    let n = a.dim();
    if c.rows() != n || c.cols() != n || c.inverse().is_none() {
        return false;
    }
    let col = |m: &Matrix, j: usize| -> Vec<FieldElem> {
        (0..n).map(|i| m.at(i, j).clone()).collect()
    };
    // Multiplication: C(e_i e_j) = C(e_i)·C(e_j) in b.
    for i in 0..n {
        for j in 0..n {
            let lhs = c.mul_vec(&a.algebra.mult[i][j]);
            let rhs = b.algebra.mul_vec(&col(c, i), &col(c, j));
            if lhs != rhs {
                return false;
            }
        }
    }
    if c.mul_vec(&a.algebra.unit) != b.algebra.unit {
        return false;
    }
    // Comultiplication: (C⊗C)Δ_a(e_i) = Δ_b(C e_i).
    for i in 0..n {
        let mut lhs = Accumulator::new(f, n * n);
        let mut rhs = Accumulator::new(f, n * n);
        for (j, k, v) in a.comult_pairs(i) {
            for (rj, cj) in nonzero(&col(c, j)) {
                for (rk, ck) in nonzero(&col(c, k)) {
                    lhs.add(rj * n + rk, &f.mul(&f.mul(&v, &cj), &ck));
                }
            }
        }
        for (m, cm) in nonzero(&col(c, i)) {
            for (jj, kk, v) in b.comult_pairs(m) {
                rhs.add(jj * n + kk, &f.mul(&cm, &v));
            }
        }
        if lhs.first_difference(&rhs).is_some() {
            return false;
        }
    }
    // Counit: ε_b ∘ C = ε_a.
    for i in 0..n {
        if b.counit_of(&col(c, i)) != a.counit[i] {
            return false;
        }
    }
    match (&a.antipode, &b.antipode) {
        (None, None) => true,
        (Some(sa), Some(sb)) => c.mul(sa) == sb.mul(c),
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// Structure recognition
// ---------------------------------------------------------------------------

/// If the multiplication tensor is a Cayley table in disguise (every basis
/// product is a basis vector, the unit is a basis vector), recover the
/// monoid.
fn monoid_from_mult(a: &FinCommAlgebra) -> Option<FinCommMonoid> {
    let n = a.dim();
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            table[i][j] = standard_basis_index(&a.mult[i][j])?;
        }
    }
    let identity = standard_basis_index(&a.unit)?;
    FinCommMonoid::new(table, identity).ok()
}

/// If the comultiplication is the function-algebra shape — each `(j, k)`
/// slot carries coefficient 1 at exactly one `i` — recover the monoid
/// (with the counit as the identity's indicator).
fn monoid_from_comult(h: &HopfAlgebra) -> Option<FinCommMonoid> {
    let n = h.dim();
    let mut table = vec![vec![0usize; n]; n];
    for j in 0..n {
        for k in 0..n {
            let mut hit = None;
            for i in 0..n {
                let c = &h.comult[i][j][k];
                if !c.is_zero() {
                    if !c.is_one() || hit.is_some() {
                        return None;
                    }
                    hit = Some(i);
                }
            }
            table[j][k] = hit?;
        }
    }
    let identity = standard_basis_index(&h.counit)?;
    FinCommMonoid::new(table, identity).ok()
}

fn standard_basis_index(v: &[FieldElem]) -> Option<usize> {
    let mut idx = None;
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if !x.is_one() || idx.is_some() {
            return None;
        }
        idx = Some(i);
    }
    idx
}

/// Is the multiplication diagonal (`e_i e_j = δ_{ij} e_i`) with unit
/// `Σ e_i` — the function-algebra shape?
fn is_diagonal_mult(a: &FinCommAlgebra) -> bool {
    let n = a.dim();
    if !a.unit.iter().all(|x| x.is_one()) {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let expect_one = i == j && j == k;
                let c = &a.mult[i][j][k];
                if expect_one != c.is_one() || (!expect_one && !c.is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Points
// ---------------------------------------------------------------------------

/// All unital algebra homomorphisms from `h`'s underlying algebra to
/// `target`, sorted canonically.
///
/// Fast paths: a diagonal (function-algebra) multiplication yields
/// indicator points over any field and any target dimension 1; a
/// Cayley-shaped multiplication yields monoid homomorphisms into the
/// field's multiplicative monoid, enumerated by constrained search over
/// roots of unity.  Otherwise a generic scan requires a prime field and
/// `|target|^dim ≤ 10^7`.
pub fn points(h: &HopfAlgebra, target: &FinCommAlgebra) -> Result<Vec<AlgebraPoint>, HopfError> {
    if target.field() != h.field() {
        return Err(HopfError::FieldMismatch);
    }
    let f = h.field();
    let n = h.dim();
    if target.dim() == 1 {
        if is_diagonal_mult(&h.algebra) {
            // Exactly one basis idempotent maps to 1.
            let mut out: Vec<AlgebraPoint> = (0..n)
                .map(|chosen| AlgebraPoint {
                    images: (0..n)
                        .map(|i| vec![if i == chosen { f.one() } else { f.zero() }])
                        .collect(),
                })
                .collect();
            out.sort();
            return Ok(out);
        }
        if let Some(m) = monoid_from_mult(&h.algebra) {
            let mut out: Vec<AlgebraPoint> = monoid_homs_into_field(&m, f)
                .into_iter()
                .map(|vals| AlgebraPoint { images: vals.into_iter().map(|v| vec![v]).collect() })
                .collect();
            out.sort();
            return Ok(out);
        }
    }
    generic_points(h, target)
}

/// Scalar values of the points into the base field.
pub fn field_points(h: &HopfAlgebra) -> Result<Vec<Vec<FieldElem>>, HopfError> {
    let pts = points(h, &FinCommAlgebra::scalar_field(h.field()))?;
    Ok(pts.into_iter().map(|p| p.field_values().expect("field target")).collect())
}

/// Is `pt` a unital multiplicative map from `h`'s algebra into `target`?
pub fn is_point(h: &HopfAlgebra, target: &FinCommAlgebra, pt: &AlgebraPoint) -> bool {
    let f = h.field();
    let n = h.dim();
    if pt.images.len() != n || pt.images.iter().any(|v| v.len() != target.dim()) {
        return false;
    }
    // Unit: Σ u_i φ(e_i) = 1_target.
    let mut unit_img = vec_zero(f, target.dim());
    for (i, u) in nonzero(&h.algebra.unit) {
        unit_img = vec_add(f, &unit_img, &vec_scale(f, &u, &pt.images[i]));
    }
    if unit_img != target.unit().to_vec() {
        return false;
    }
    for i in 0..n {
        for j in i..n {
            let lhs = target.mul_vec(&pt.images[i], &pt.images[j]);
            let mut rhs = vec_zero(f, target.dim());
            for (k, c) in nonzero(&h.algebra.mult[i][j]) {
                rhs = vec_add(f, &rhs, &vec_scale(f, &c, &pt.images[k]));
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// All monoid homomorphisms `M → (k, ·)` as value vectors: each element's
/// image is constrained to `{0} ∪ (roots of unity of its cycle length)`,
/// searched depth-first with multiplicativity pruning.
fn monoid_homs_into_field(m: &FinCommMonoid, field: Field) -> Vec<Vec<FieldElem>> {
    let n = m.size();
    let mut candidates: Vec<Vec<FieldElem>> = Vec::with_capacity(n);
    for a in 0..n {
        if a == m.identity() {
            candidates.push(vec![field.one()]);
            continue;
        }
        let (tail, cycle) = m.power_profile(a);
        let mut cs: Vec<FieldElem> = Vec::new();
        if tail > 0 {
            cs.push(field.zero());
        }
        match field {
            Field::Prime(p) => {
                for r in roots_of_unity(p, cycle) {
                    cs.push(FieldElem::Residue(r));
                }
            }
            Field::Rationals => {
                cs.push(field.one());
                if cycle % 2 == 0 {
                    cs.push(field.from_i64(-1));
                }
            }
        }
        cs.sort();
        cs.dedup();
        candidates.push(cs);
    }
    // Triples to check as soon as their last index is assigned.
    let mut triples_at: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in a..n {
            let c = m.mul(a, b);
            triples_at[b.max(c)].push((a, b, c));
        }
    }
    let mut out = Vec::new();
    let mut vals: Vec<FieldElem> = Vec::with_capacity(n);
    dfs_homs(m, field, &candidates, &triples_at, &mut vals, &mut out);
    out
}

fn dfs_homs(
    m: &FinCommMonoid,
    field: Field,
    candidates: &[Vec<FieldElem>],
    triples_at: &[Vec<(usize, usize, usize)>],
    vals: &mut Vec<FieldElem>,
    out: &mut Vec<Vec<FieldElem>>,
) {
    let v = vals.len();
    if v == m.size() {
        out.push(vals.clone());
        return;
    }
    'cand: for cand in &candidates[v] {
        vals.push(cand.clone());
        for &(a, b, c) in &triples_at[v] {
            if field.mul(&vals[a], &vals[b]) != vals[c] {
                vals.pop();
                continue 'cand;
            }
        }
        dfs_homs(m, field, candidates, triples_at, vals, out);
        vals.pop();
    }
}

/// Brute-force point enumeration: every assignment of target vectors to
/// basis elements, over a prime field, within `|target|^dim ≤ 10^7`.
fn generic_points(
    h: &HopfAlgebra,
    target: &FinCommAlgebra,
) -> Result<Vec<AlgebraPoint>, HopfError> {
    let f = h.field();
    let p = match f {
        Field::Prime(p) => p,
        Field::Rationals => {
            return Err(HopfError::SearchTooLarge {
                space: format!("Q^{}", h.dim() * target.dim()),
            })
        }
    };
    let digits_total = h.dim() * target.dim();
    let too_large = digits_total > 127
        || (p as u128).checked_pow(digits_total as u32).map_or(true, |s| s > 10_000_000);
    if too_large {
        return Err(HopfError::SearchTooLarge { space: format!("{p}^{digits_total}") });
    }
    let mut out = Vec::new();
    let mut digits = vec![0u64; digits_total];
    loop {
        let pt = AlgebraPoint {
            images: (0..h.dim())
                .map(|i| {
                    (0..target.dim())
                        .map(|j| f.from_i64(digits[i * target.dim() + j] as i64))
                        .collect()
                })
                .collect(),
        };
        if is_point(h, target, &pt) {
            out.push(pt);
        }
        let mut pos = 0;
        loop {
            if pos == digits_total {
                out.sort();
                return Ok(out);
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

// ---------------------------------------------------------------------------
// Grouplikes
// ---------------------------------------------------------------------------

/// All `x` with `Δx = x⊗x` and `ε(x) = 1`, sorted canonically.
///
/// Fast paths: a diagonal comultiplication (`Δe_i = e_i⊗e_i`) yields the
/// counit-1 basis vectors; a function-algebra-shaped comultiplication
/// yields monoid homomorphisms into the field (so grouplikes of a dualized
/// group algebra are exactly the characters).  Otherwise a generic scan
/// requires a prime field and `p^dim ≤ 10^7`.
pub fn grouplikes(h: &HopfAlgebra) -> Result<Vec<Vec<FieldElem>>, HopfError> {
    let f = h.field();
    let n = h.dim();
    // Δ diagonal on the basis?
    let diagonal = (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| {
                let c = &h.comult[i][j][k];
                if i == j && j == k {
                    c.is_one() || c.is_zero()
                } else {
                    c.is_zero()
                }
            })
        })
    }) && (0..n).all(|i| h.comult[i][i][i].is_one());
    if diagonal {
        let mut out: Vec<Vec<FieldElem>> = (0..n)
            .filter(|&i| h.counit[i].is_one())
            .map(|i| unit_vector(f, n, i))
            .collect();
        out.sort();
        return Ok(out);
    }
    if let Some(m) = monoid_from_comult(h) {
        let mut out = monoid_homs_into_field(&m, f);
        out.sort();
        return Ok(out);
    }
    // Generic scan.
    let p = match f {
        Field::Prime(p) => p,
        Field::Rationals => {
            return Err(HopfError::SearchTooLarge { space: format!("Q^{n}") })
        }
    };
    let too_large =
        n > 127 || (p as u128).checked_pow(n as u32).map_or(true, |s| s > 10_000_000);
    if too_large {
        return Err(HopfError::SearchTooLarge { space: format!("{p}^{n}") });
    }
    let mut out = Vec::new();
    let mut digits = vec![0u64; n];
    let mut delta = Accumulator::new(f, n * n);
    let mut outer = Accumulator::new(f, n * n);
    loop {
        let x: Vec<FieldElem> = digits.iter().map(|&d| f.from_i64(d as i64)).collect();
        if h.counit_of(&x).is_one() {
            delta.clear();
            outer.clear();
            for (i, xi) in nonzero(&x) {
                for (j, k, c) in h.comult_pairs(i) {
                    delta.add(j * n + k, &f.mul(&xi, &c));
                }
            }
            for (a, xa) in nonzero(&x) {
                for (b, xb) in nonzero(&x) {
                    outer.add(a * n + b, &f.mul(&xa, &xb));
                }
            }
            if delta.first_difference(&outer).is_none() {
                out.push(x);
            }
        }
        let mut pos = 0;
        loop {
            if pos == n {
                out.sort();
                return Ok(out);
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

// ---------------------------------------------------------------------------
// Tangent spaces
// ---------------------------------------------------------------------------

/// Basis of the derivations `D: H → k` at the point `pt` (a map into the
/// base field): solutions of
/// `Σ_k c[i][j][k] D_k = p_i D_j + p_j D_i` for all `i, j`.
pub fn tangent_space(
    h: &HopfAlgebra,
    pt: &AlgebraPoint,
) -> Result<Vec<Vec<FieldElem>>, HopfError> {
    let f = h.field();
    let n = h.dim();
    let scalar = FinCommAlgebra::scalar_field(f);
    if !is_point(h, &scalar, pt) {
        return Err(HopfError::InvalidPoint);
    }
    let p: Vec<FieldElem> = pt.images.iter().map(|v| v[0].clone()).collect();
    let mut system = Matrix::zero(f, n * n, n);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for k in 0..n {
                let mut coef = h.algebra.mult[i][j][k].clone();
                if k == j {
                    coef = f.sub(&coef, &p[i]);
                }
                if k == i {
                    coef = f.sub(&coef, &p[j]);
                }
                system.set(row, k, coef);
            }
        }
    }
    Ok(system.kernel_basis())
}
