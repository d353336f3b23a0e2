//! quasiforce-core: labelled-graph constructions, exact homomorphism
//! counting, weighted-graph densities, crossing witnesses and a
//! quasirandomness test battery.
//!
//! The toolkit builds three-member graph families from a connected
//! non-bipartite seed, certifies the counting identities behind them with
//! exact arithmetic, and produces explicit non-constant weight functions on
//! which any two members attain equal per-edge density — the desk-scale
//! evidence that no pair inside a family pins down quasirandomness on its
//! own, while sampled positive controls show the family-level checks behave.

pub mod battery;
pub mod construct;
pub mod crossing;
pub mod error;
pub mod forcing;
pub mod graph;
pub mod graph6;
pub mod hom;
pub mod jensen;
pub mod params;
pub mod sampler;
pub mod table1;
pub mod value;
pub mod weighted;

pub use error::{Error, Result};
