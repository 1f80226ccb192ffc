//! Exact computations with reflection groups: Coxeter systems in the Tits
//! cone model, the face poset of the fundamental chamber, finite parabolic
//! subgroups and their trace groupoids, the Grothendieck construction of the
//! trace diagram over the spherical poset, and a conjugacy oracle for the
//! ambient group. Everything runs over the field ℚ(√2,√3,√5), so all
//! comparisons are exact and every verdict carries a checkable certificate.

pub mod conj;
pub mod coxeter;
pub mod error;
pub mod facets;
pub mod fp;
pub mod hocolim;
pub mod parabolics;
pub mod scalars;
pub mod verify;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
