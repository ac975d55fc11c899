//! The finite Fourier transform on a split semisimple function algebra:
//! the invariant integral, the transform matrix and its explicit inverse,
//! and isotypic decompositions of commuting matrix representations.
//!
//! Everything here requires the function algebra `Maps(G, k)` to be split
//! semisimple: the characteristic must not divide `|G|`, and `k` must
//! contain the roots of unity of the exponent of `G` (over `Q` that means
//! exponent at most 2).  Both preconditions are reported as typed errors,
//! the characteristic check first.

use crate::field::{Field, FieldElem};
use crate::group::{characters, FinAbGroup, GroupError};
use crate::matrix::Matrix;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FourierError {
    #[error("NotFinite: the group must be finite")]
    NotFinite,
    #[error("NotSemisimple: characteristic {p} divides the group order {order}")]
    NotSemisimple { p: u64, order: u64 },
    #[error("ExponentNotSplit: {field} has no primitive root of unity of order {exponent}")]
    ExponentNotSplit { exponent: u64, field: Field },
    #[error("InvalidRepresentation: {0}")]
    InvalidRepresentation(String),
}

/// Checks finiteness, semisimplicity (characteristic first), and that the
/// exponent splits in `field`; returns the group order.
fn preconditions(g: &FinAbGroup, field: Field) -> Result<u64, FourierError> {
    let order = g.order().ok_or(FourierError::NotFinite)?;
    let exponent = g.exponent().expect("finite group has an exponent");
    match field {
        Field::Prime(p) => {
            if order % p == 0 {
                return Err(FourierError::NotSemisimple { p, order });
            }
            if exponent > 1 && (p - 1) % exponent != 0 {
                return Err(FourierError::ExponentNotSplit { exponent, field });
            }
        }
        Field::Rationals => {
            if exponent > 2 {
                return Err(FourierError::ExponentNotSplit { exponent, field });
            }
        }
    }
    Ok(order)
}

/// The invariant integral on `Maps(G, k)`: `w(f) = |G|^{-1} Σ_g f(g)`,
/// stored as one weight per group element (all equal to `|G|^{-1}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantForm {
    pub field: Field,
    pub group: FinAbGroup,
    pub weights: Vec<FieldElem>,
}

impl InvariantForm {
    /// Applies the form to a function given by its value vector.
    pub fn apply(&self, values: &[FieldElem]) -> FieldElem {
        assert_eq!(values.len(), self.weights.len(), "value vector length");
        let f = self.field;
        values
            .iter()
            .zip(&self.weights)
            .fold(f.zero(), |acc, (v, w)| f.add(&acc, &f.mul(v, w)))
    }
}

/// The invariant integral, normalized so the constant function 1 maps
/// to 1.  Fails with `NotSemisimple` when the characteristic divides
/// `|G|` (then no invariant splitting of the counit exists).
pub fn invariant_form(g: &FinAbGroup, field: Field) -> Result<InvariantForm, FourierError> {
    let order = g.order().ok_or(FourierError::NotFinite)?;
    if let Field::Prime(p) = field {
        if order % p == 0 {
            return Err(FourierError::NotSemisimple { p, order });
        }
    }
    let inv_order = field.inv(&field.from_i64(order as i64)).expect("order is invertible");
    Ok(InvariantForm {
        field,
        group: g.clone(),
        weights: vec![inv_order; order as usize],
    })
}

/// Value tables of all characters `G → k^×`, one row per character, columns
/// indexed like `g.elements()`.  Rows follow the lexicographic order of
/// generator images (first generator most significant).
pub fn character_tables(g: &FinAbGroup, field: Field) -> Result<Vec<Vec<FieldElem>>, FourierError> {
    preconditions(g, field)?;
    match field {
        Field::Prime(p) => {
            let chars = characters(g, p).map_err(|e| match e {
                GroupError::ExponentNotSplit { exponent, p } => {
                    FourierError::ExponentNotSplit { exponent, field: Field::Prime(p) }
                }
                GroupError::NotFinite => FourierError::NotFinite,
                other => panic!("unexpected character failure: {other}"),
            })?;
            Ok(chars
                .iter()
                .map(|chi| chi.value_table().into_iter().map(FieldElem::Residue).collect())
                .collect())
        }
        Field::Rationals => {
            // Exponent ≤ 2: every character is a sign character.
            let factors = g.invariant_factors().to_vec();
            let elements = g.elements();
            let mut images: Vec<Vec<i64>> = vec![vec![]];
            for &d in &factors {
                let choices: Vec<i64> = if d % 2 == 0 { vec![1, -1] } else { vec![1] };
                let mut next = Vec::new();
                for prefix in &images {
                    for &c in &choices {
                        let mut row = prefix.clone();
                        row.push(c);
                        next.push(row);
                    }
                }
                images = next;
            }
            Ok(images
                .into_iter()
                .map(|img| {
                    elements
                        .iter()
                        .map(|e| {
                            let sign: i64 = img
                                .iter()
                                .zip(e.iter())
                                .map(|(&im, &a)| if im == -1 && a % 2 == 1 { -1 } else { 1 })
                                .product();
                            field.from_i64(sign)
                        })
                        .collect()
                })
                .collect())
        }
    }
}

/// The Fourier transform matrix of `Maps(G, k)` in the delta basis:
/// `M[h][g] = w(δ_g^* · δ_h)` with `δ_g^* = δ_g ∘ inversion`.  Computed
/// directly from that formula; the closed form `|G|^{-1}·(inversion
/// permutation)` is asserted as a cross-check.
pub fn fourier_matrix(g: &FinAbGroup, field: Field) -> Result<Matrix, FourierError> {
    let order = preconditions(g, field)? as usize;
    let w = invariant_form(g, field)?;
    let elements = g.elements();
    let index_of_neg: Vec<usize> =
        elements.iter().map(|e| g.element_index(&g.neg(e))).collect();
    let mut m = Matrix::zero(field, order, order);
    for (gi, _) in elements.iter().enumerate() {
        for hi in 0..order {
            // (δ_g ∘ inv)·δ_h has value [x = −g][x = h] at x.
            let product_values: Vec<FieldElem> = (0..order)
                .map(|x| {
                    if index_of_neg[gi] == x && hi == x {
                        field.one()
                    } else {
                        field.zero()
                    }
                })
                .collect();
            m.set(hi, gi, w.apply(&product_values));
        }
    }
    let inv_order = field.inv(&field.from_i64(order as i64)).unwrap();
    for gi in 0..order {
        for hi in 0..order {
            let expect =
                if index_of_neg[gi] == hi { inv_order.clone() } else { field.zero() };
            assert_eq!(m.at(hi, gi), &expect, "closed form of the transform");
        }
    }
    Ok(m)
}

/// The explicit inverse transform: `N[g][h] = Σ_χ χ(g·h)`.
pub fn transposed_fourier(g: &FinAbGroup, field: Field) -> Result<Matrix, FourierError> {
    let order = preconditions(g, field)? as usize;
    let tables = character_tables(g, field)?;
    let elements = g.elements();
    let mut n = Matrix::zero(field, order, order);
    for gi in 0..order {
        for hi in 0..order {
            let sum_index = g.element_index(&g.add(&elements[gi], &elements[hi]));
            let total = tables
                .iter()
                .fold(field.zero(), |acc, row| field.add(&acc, &row[sum_index]));
            n.set(gi, hi, total);
        }
    }
    Ok(n)
}

/// Outcome of checking the inversion identity `N·M = I` and the triangle
/// identity `|G|^{-1} Σ_χ χ(g) = [g = identity]` (the composite of the
/// dual integral with the transform is the counit).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionReport {
    pub product_is_identity: bool,
    pub product_counterexample: Option<(usize, usize)>,
    pub triangle_holds: bool,
    pub triangle_counterexample: Option<usize>,
}

impl InversionReport {
    pub fn all_pass(&self) -> bool {
        self.product_is_identity && self.triangle_holds
    }
}

pub fn verify_inversion(g: &FinAbGroup, field: Field) -> Result<InversionReport, FourierError> {
    let order = preconditions(g, field)? as usize;
    let m = fourier_matrix(g, field)?;
    let n = transposed_fourier(g, field)?;
    let product = n.mul(&m);
    let mut product_counterexample = None;
    'outer: for i in 0..order {
        for j in 0..order {
            let expect = if i == j { field.one() } else { field.zero() };
            if product.at(i, j) != &expect {
                product_counterexample = Some((i, j));
                break 'outer;
            }
        }
    }
    let tables = character_tables(g, field)?;
    let inv_order = field.inv(&field.from_i64(order as i64)).unwrap();
    let identity_index = g.element_index(&g.zero());
    let mut triangle_counterexample = None;
    for gi in 0..order {
        let char_sum = tables
            .iter()
            .fold(field.zero(), |acc, row| field.add(&acc, &row[gi]));
        let lhs = field.mul(&inv_order, &char_sum);
        let rhs = if gi == identity_index { field.one() } else { field.zero() };
        if lhs != rhs {
            triangle_counterexample = Some(gi);
            break;
        }
    }
    Ok(InversionReport {
        product_is_identity: product_counterexample.is_none(),
        product_counterexample,
        triangle_holds: triangle_counterexample.is_none(),
        triangle_counterexample,
    })
}

// ---------------------------------------------------------------------------
// Representations and isotypic decompositions
// ---------------------------------------------------------------------------

/// A matrix representation of a finite abelian group, given by one
/// invertible matrix per invariant-factor generator.  Validated on
/// construction: matrices are square of a common size, commute pairwise,
/// and the `i`-th matrix has order dividing the `i`-th invariant factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    group: FinAbGroup,
    field: Field,
    generators: Vec<Matrix>,
    degree: usize,
}

impl Representation {
    pub fn new(
        group: &FinAbGroup,
        field: Field,
        generators: Vec<Matrix>,
    ) -> Result<Representation, FourierError> {
        if !group.is_finite() {
            return Err(FourierError::NotFinite);
        }
        let factors = group.invariant_factors();
        if generators.len() != factors.len() {
            return Err(FourierError::InvalidRepresentation(format!(
                "expected {} generator matrices, got {}",
                factors.len(),
                generators.len()
            )));
        }
        let degree = generators.first().map_or(1, Matrix::rows);
        for (i, m) in generators.iter().enumerate() {
            if m.field() != field {
                return Err(FourierError::InvalidRepresentation(format!(
                    "generator {i} lives over {}, not {field}",
                    m.field()
                )));
            }
            if m.rows() != degree || m.cols() != degree {
                return Err(FourierError::InvalidRepresentation(format!(
                    "generator {i} is {}×{}, expected {degree}×{degree}",
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.pow(factors[i]).is_identity() {
                return Err(FourierError::InvalidRepresentation(format!(
                    "generator {i} does not have order dividing {}",
                    factors[i]
                )));
            }
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                if generators[i].mul(&generators[j]) != generators[j].mul(&generators[i]) {
                    return Err(FourierError::InvalidRepresentation(format!(
                        "generators {i} and {j} do not commute"
                    )));
                }
            }
        }
        Ok(Representation { group: group.clone(), field, generators, degree })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    /// The matrix of a group element given in generator coordinates.
    pub fn evaluate(&self, element: &[u64]) -> Matrix {
        assert_eq!(element.len(), self.generators.len(), "coordinate length");
        let mut acc = Matrix::identity(self.field, self.degree);
        for (m, &e) in self.generators.iter().zip(element) {
            acc = acc.mul(&m.pow(e));
        }
        acc
    }
}

/// The regular representation: permutation matrices of translation by
/// each generator on the element list of `G`.
pub fn regular_representation(g: &FinAbGroup, field: Field) -> Representation {
    let elements = g.elements();
    let order = elements.len();
    let k = g.invariant_factors().len();
    let generators: Vec<Matrix> = (0..k)
        .map(|i| {
            let mut gen_coords = vec![0u64; k];
            gen_coords[i] = 1;
            Matrix::from_fn(field, order, order, |r, c| {
                let translated = g.add(&elements[c], &gen_coords);
                if g.element_index(&translated) == r {
                    field.one()
                } else {
                    field.zero()
                }
            })
        })
        .collect();
    Representation::new(g, field, generators).expect("translation matrices form a representation")
}

/// One isotypic component: a character (as a value table), the projector
/// `e_χ = |G|^{-1} Σ_g χ(g)^{-1} ρ(g)`, and its rank (= the multiplicity
/// of `χ` in the representation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicComponent {
    pub character: Vec<FieldElem>,
    pub projector: Matrix,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicDecomposition {
    pub components: Vec<IsotypicComponent>,
}

impl IsotypicDecomposition {
    /// Projectors must be idempotent, pairwise orthogonal, and sum to the
    /// identity; multiplicities must add up to the degree.
    pub fn verify(&self, degree: usize) -> bool {
        let Some(first) = self.components.first() else {
            return degree == 0;
        };
        let field = first.projector.field();
        let n = first.projector.rows();
        let mut sum = Matrix::zero(field, n, n);
        let mut total = 0usize;
        for (i, c) in self.components.iter().enumerate() {
            if c.projector.mul(&c.projector) != c.projector {
                return false;
            }
            for other in &self.components[i + 1..] {
                if !c.projector.mul(&other.projector).is_zero() {
                    return false;
                }
            }
            sum = sum.add(&c.projector);
            total += c.multiplicity;
        }
        sum.is_identity() && total == degree
    }
}

/// Splits a representation into isotypic components via the character
/// projectors.  Requires the function algebra of the group to be split
/// semisimple over the representation's field.
pub fn isotypic_decomposition(
    rep: &Representation,
) -> Result<IsotypicDecomposition, FourierError> {
    let g = rep.group();
    let field = rep.field();
    let order = preconditions(g, field)? as usize;
    let tables = character_tables(g, field)?;
    let elements = g.elements();
    let inv_order = field.inv(&field.from_i64(order as i64)).unwrap();
    let rho: Vec<Matrix> = elements.iter().map(|e| rep.evaluate(e)).collect();
    let neg_index: Vec<usize> =
        elements.iter().map(|e| g.element_index(&g.neg(e))).collect();
    let components = tables
        .into_iter()
        .map(|table| {
            let mut acc = Matrix::zero(field, rep.degree(), rep.degree());
            for (gi, mat) in rho.iter().enumerate() {
                // χ(g)^{-1} = χ(−g).
                acc = acc.add(&mat.scale(&table[neg_index[gi]]));
            }
            let projector = acc.scale(&inv_order);
            let multiplicity = projector.rank();
            IsotypicComponent { character: table, projector, multiplicity }
        })
        .collect();
    Ok(IsotypicDecomposition { components })
}
