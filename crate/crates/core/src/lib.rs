pub mod area;
pub mod bounds;
pub mod carleson;
pub mod corpus;
pub mod error;
pub mod geometry;
pub mod nevanlinna;
pub mod orlicz;
mod par;
pub mod poly;
pub mod quadrature;
pub mod symbol;
pub mod tolerances;

pub use error::{Error, Result};
pub use symbol::{SchurMap, SymbolSpec};
