//! Exact computations with supermodular pairs, base polytopes, Z^n-quivers and
//! linked nets, up to certificates for simplex tilings and diagonal classes.
//!
//! Linear algebra is generic over [`field::Field`]; the two instantiations used
//! throughout are [`Rational`] and [`Fp`].

pub mod certificate;
pub mod chipfire;
pub mod combinat;
pub mod field;
pub mod linalg;
pub mod net;
pub mod polytope;
pub mod quiver;
pub mod setfn;
pub mod subset;
pub mod tiling;

pub use field::{Field, FieldKind, Fp, Rational, DEFAULT_PRIME};
pub use linalg::{Ambient, Matrix, Subspace};
pub use setfn::{ModularPair, OrderedPartition, SetFn};
pub use subset::Subset;

pub type QMatrix = Matrix<Rational>;
pub type FpMatrix = Matrix<Fp>;
pub type QSubspace = Subspace<Rational>;
pub type FpSubspace = Subspace<Fp>;
