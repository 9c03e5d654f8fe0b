pub mod arith;
pub mod budget;
pub mod dirichlet;
pub mod error;
pub mod factor;
pub mod field;
pub mod hall;
pub mod intervals;
pub mod poly;
pub mod rmt;
pub mod sieve;
pub mod stats;

pub use arith::ArithFn;
pub use budget::Budget;
pub use error::{Error, Result};
pub use field::{Fe, Field, FieldRef};
pub use poly::Poly;
pub use sieve::MobiusTable;
