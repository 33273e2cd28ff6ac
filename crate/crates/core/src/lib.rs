//! Cubical complexes as graded face posets, cubical barycentric subdivision,
//! and exact transforms of f-vectors and short/long cubical h-vectors.

pub use num_bigint;
pub use num_rational;

pub mod poly;
pub mod complex;
pub mod subdivision;
pub mod vectors;
pub mod transform;
pub mod corpus;
pub mod verify;
pub mod mine;
pub mod cli;
