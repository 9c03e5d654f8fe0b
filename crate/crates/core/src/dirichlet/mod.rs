//! Dirichlet characters modulo `t^m` and squarefree moduli, their L-functions
//! and Frobenius classes, and twisted sums.

mod character;
mod group;
mod lfunc;
mod snf;
mod transform;
mod twisted;

pub use character::{CharacterGroupInfo, CharacterInfo, RootTable};
pub use group::{ModulusKind, ResidueRing, UnitGroup, NONUNIT};
pub use lfunc::{inverse_roots, FrobeniusClass, LFunction, RhReport, RootInfo, RootKind};
pub use snf::smith;
pub use transform::{residue_histogram, walk_residues, LTable};
pub use twisted::{series_inverse, series_mul, twisted_mobius_spectral, twisted_sqfree_spectral, CompensatedSum};
