//! Exact computations with finite-dimensional Hopf algebras acting and
//! coacting on finite linear categories.
//!
//! The crate covers structure-constant Hopf algebras, their modules and
//! comodules, H-categories and co-H-categories with smash products, modules
//! over linear categories, equivariant and relative Hopf modules, free and
//! injective resolutions with Ext groups, and Grothendieck spectral
//! sequences assembled from Cartan–Eilenberg resolutions.

pub mod catmod;
pub mod equivariant;
pub mod error;
pub mod exactlin;
pub mod fixtures;
pub mod hcat;
pub mod homological;
pub mod hopf;
pub mod hrep;
pub mod relhopf;
pub mod report;
pub mod spectral;

pub use catmod::{CatModule, ModuleMorphism, Side};
pub use equivariant::EquivModule;
pub use error::{Error, Result};
pub use exactlin::{Field, Matrix, Scalar, Vector};
pub use hcat::{CoHCategory, HCategory, LinCategory};
pub use hopf::HopfAlgebra;
pub use hrep::{HComodule, HModule};
pub use relhopf::RelHopfModule;
pub use report::Report;
