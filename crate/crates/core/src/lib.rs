//! Finite rings, modules and uniform S-versions of essential submodules,
//! injectivity and envelopes, all decided by exhaustive computation.

pub mod caps;
pub mod certificate;
pub mod dsl;
pub mod envelope;
pub mod error;
pub mod essential;
pub mod harness;
pub mod hom;
pub mod injective;
pub mod module;
pub mod mset;
pub mod ring;
pub mod spec;
pub mod subset;
pub mod torsion;

pub use caps::Caps;
pub use error::{Error, Result};
pub use hom::Homomorphism;
pub use module::{FiniteModule, Submodule};
pub use mset::MultiplicativeSet;
pub use ring::{FiniteRing, Ideal};
pub use subset::ElemSet;
