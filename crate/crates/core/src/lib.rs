//! Exact verification of solvable, semisimple and Levi-decomposable subalgebras
//! of the rank-two simple Lie algebras.

pub mod algebra;
pub mod catalog;
pub mod exact;
pub mod expr;
pub mod ident;
pub mod linalg;
mod modular;
pub mod rank2;
pub mod tables;
