//! Finite categories and truncated simplicial sets.

pub mod bisimplicial;
pub mod category;
pub mod enumerate;
pub mod function_complex;
pub mod limits;
pub mod map;
pub mod monotone;
pub mod nerve;
pub mod report;
pub mod sset;
pub mod standard;

pub use bisimplicial::BisimplicialSet;
pub use category::{FiniteCategory, Functor, Morphism, Side, Slice};
pub use enumerate::MapSearch;
pub use function_complex::{function_complex, function_complex_with, FunctionComplex, Restrict};
pub use limits::{colimit, coproduct, pi0, product, pullback, pushout};
pub use map::SimplicialMap;
pub use monotone::MonotoneMap;
pub use nerve::{nerve, nerve_keyed, nerve_map, Chain};
pub use report::{Report, Validate, Violation, ViolationKind};
pub use sset::{Keyed, SimplicialSet};
