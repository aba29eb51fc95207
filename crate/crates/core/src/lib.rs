//! Zappa-Szép products of partial multiplications.
//!
//! Finite magmas and fuel-bounded word monoids, mutual actions and their
//! axioms, external and internal products, string rewriting, presentations
//! of products, and finite categories.

pub mod actions;
pub mod axioms;
pub mod catalog;
pub mod categories;
pub mod chain;
pub mod cli;
pub mod domain;
pub mod formats;
pub mod fuzz;
pub mod iso;
pub mod lclm;
pub mod magma;
pub mod presentations;
pub mod product;
pub mod properties;
pub mod report;
pub mod rewriting;
pub mod stock;

pub use magma::{ElementId, Magma, MagmaError, Morphism};
pub use properties::{check_property, Property, PropertyReport};
pub use report::{Report, Verdict};
