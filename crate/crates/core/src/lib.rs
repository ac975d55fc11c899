//! Exact-arithmetic Cartier duality for finite commutative group and monoid
//! schemes.
//!
//! Everything here is computed over `Q` or a prime field `F_p` with exact
//! arithmetic — there is not a single floating-point number in the crate.
//! The central object is a finite-dimensional commutative, cocommutative
//! Hopf algebra presented by structure constants ([`hopf::HopfAlgebra`]);
//! [`hopf::cartier_dual`] transposes its structure tensors, and the rest of
//! the crate builds the supporting cast:
//!
//! * [`field`] / [`matrix`] / [`intmat`] — dynamic fields (`Q`, `F_p`),
//!   exact dense linear algebra, and Smith normal form with transforms;
//! * [`group`] — finite abelian groups by invariant factors, Cayley-table
//!   monoids, affine (lattice) monoids, characters, Grothendieck
//!   completions, and diagonalizable-subgroup classification;
//! * [`algebra`] — structure-constant commutative algebras, radicals, and
//!   decomposition into local factors;
//! * [`hopf`] — group algebras, function algebras, the truncated additive
//!   Hopf algebra `F_p[x]/(x^p)`, duality, points, grouplikes, and tangent
//!   spaces;
//! * [`fourier`] — the invariant functional, the Fourier isomorphism on a
//!   finite abelian group, and isotypic decomposition of representations;
//! * [`series`] — truncated divided-power series and the exponential
//!   pairing against nilpotent algebra elements;
//! * [`io`] — canonical JSON for all of the above.

pub mod algebra;
pub mod field;
pub mod fourier;
pub mod group;
pub mod hopf;
pub mod intmat;
pub mod io;
pub mod matrix;
pub mod series;

pub use algebra::FinCommAlgebra;
pub use field::{Field, FieldElem};
pub use group::{AffineMonoid, Character, FinAbGroup, FinCommMonoid};
pub use hopf::HopfAlgebra;
pub use intmat::{IntMatrix, SmithForm};
pub use matrix::Matrix;
pub use series::TruncatedSeries;
