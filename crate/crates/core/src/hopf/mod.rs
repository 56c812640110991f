//! Free (noncommutative) and polynomial (commutative) algebras on tree and
//! integer generators, tensors over them, and the coproducts, coactions,
//! antipodes and characters dual to the series groups.

mod algebra;
mod coproduct;
mod maps;

pub use algebra::{AlgebraKind, Family, Gen, Tensor, Word};
pub use coproduct::{Coproduct, fdb_comm, fdb_nc, sym_coproduct};
pub use maps::{antipode, convolve, Antipode, Character, Morphism};
