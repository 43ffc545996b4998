//! Exact induced-subgraph densities of graph constructions.
//!
//! Graphs and weighted step models are built from a small catalogue and
//! the blow-up, composition, tensor and union operators. Their `t`-vertex
//! profiles (`t ≤ 5`) are computed exactly over the rationals, either by
//! enumeration, in the Fourier basis of labeled graphs, or as the
//! stationary state of the nested blow-up.

pub mod bounds;
pub mod canon;
pub mod catalog;
pub mod error;
pub mod exec;
pub mod expr;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod labeled;
pub mod linalg;
pub mod model;
pub mod montecarlo;
pub mod named;
pub mod nesting;
pub mod profile;
pub mod quantum;
pub mod scalar;
pub mod spectral;

pub use bounds::{closed_form_bounds, ClosedFormBounds};
pub use catalog::{reproduce_table, BoundReport, Table};
pub use canon::{canonical_form, CanonicalCode};
pub use error::{Error, Result};
pub use exec::{Execution, Options};
pub use graph::LabeledGraph;
pub use iso::{iso_table, IsoTable};
pub use model::StepModel;
pub use profile::{Flavor, LabeledProfile, ProfileVector};
pub use quantum::QuantumGraph;
pub use scalar::{Rational, Scalar};
pub use spectral::SpectralProfile;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
