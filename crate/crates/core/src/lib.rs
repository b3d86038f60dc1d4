//! Exact chain-level toolkit for bounded acyclicity on finite models:
//! semisimplicial sets, ℓ¹ fillings, poset nerves and the W property,
//! bounded homotopies, co-finite embedding monoids, and lamplighter
//! witnesses for binate groups.

pub mod circuits;
pub mod complex;
pub mod cone;
pub mod error;
pub mod filling;
pub mod fixtures;
pub mod gen;
pub mod homology;
pub mod homotopy;
pub mod io;
pub mod lamp;
pub mod linalg;
pub mod lp;
pub mod nerve;
pub mod orbit;
pub mod par;
pub mod poset;
pub mod poset_w;
pub mod rational;

pub use complex::{Chain, Cochain, SemisimplicialSet, SimplexId, SimplicialMap};
pub use error::{Error, Result};
pub use poset::FinitePoset;
pub use rational::Rat;
