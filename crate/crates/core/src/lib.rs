//! Exact integral cohomology of finite cell and simplicial complexes.
//!
//! The layers build on each other: [`intmat`] supplies Smith normal form,
//! [`abgroup`] turns it into finitely generated abelian groups and maps,
//! [`complex`] computes (co)homology of chain complexes, [`spaces`] holds the
//! catalog of test spaces, [`cup`] the cup product, and [`sequences`] long
//! exact sequences plus the Eilenberg-Steenrod checks. [`bench`] evaluates
//! element expressions through these isomorphisms.

pub mod abgroup;
pub mod bench;
pub mod complex;
pub mod cup;
pub mod error;
pub mod intmat;
pub mod sequences;
pub mod spaces;

pub use error::{Error, Result};
