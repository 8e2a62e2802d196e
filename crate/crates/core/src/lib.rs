//! Exact Galois cohomology mod `ell^n` over iterated Laurent-series fields
//! `F_q((x1))...((xd))`: Milnor symbols, residues, Brauer classes, norm groups
//! of cyclic extensions, Rost kernels and Suslin groups.

pub mod albert;
pub mod classes;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod extensions;
pub mod gf;
pub mod howell;
pub mod inductive;
mod parse;
pub mod rost;
pub mod suites;
pub mod tower;

pub use classes::{ClassVector, Subgroup};
pub use cohomology::{symbol, BrauerDecomposition, CohClass};
pub use error::{Error, Result};
pub use extensions::{CyclicExtension, ExtensionTower};
pub use tower::{make_tower, FieldElement, TowerField};
