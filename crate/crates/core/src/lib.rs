//! Knotted self-avoiding polygons in semi-infinite lattice tubes.
//!
//! The library enumerates, samples and classifies self-avoiding polygons
//! confined to an `L x M` tube of the simple cubic lattice. It provides
//!
//! * [`lattice`] — tube geometry, validated polygons, text formats;
//! * [`knots`] — projection to crossing diagrams and Alexander-polynomial
//!   knot identification;
//! * [`patterns`] — 2-section decomposition into connect-sum patterns,
//!   denominator/numerator closures and local vs. non-local classification;
//! * [`enumerate`] — exact counting and exhaustive pattern censuses;
//! * [`transfer`] — interface-state transfer matrices: partition functions,
//!   free energies and limiting pattern probabilities;
//! * [`sample`] — exact i.i.d. fixed-span sampling and statistics.

pub mod enumerate;
pub mod fixtures;
pub mod knots;
pub mod lattice;
pub mod patterns;
pub mod sample;
pub mod transfer;

mod columns;

pub use enumerate::{count_hamiltonian, count_polygons, smallest_knot_patterns, CountTable, PatternCensus};
pub use knots::{alexander, identify, project_diagram, simplify, Diagram, KnotId, PrimeKnot, SymmetricLaurent};
pub use lattice::{Polygon, Tube, Vertex};
pub use patterns::{classify, decompose, knot_sizes, two_sections, CsPattern, PatternClass, ProperPattern};
pub use sample::{build_sampler, draw, estimate, SamplerTables};
pub use transfer::TransferSystem;
