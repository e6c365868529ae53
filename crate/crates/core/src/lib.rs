//! Topological RNA structures: chord diagrams filtered by the genus of
//! their fatgraph, counted exactly and sampled uniformly.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`] exact truncated power series, `y`-jets and small bivariate series.
//! * [`diagram`] the structure model: parsing, genus, projections, blocks,
//!   pseudoknot classes and loop censuses.
//! * [`recursions`] chord-diagram counts, shape and irreducible-shadow polynomials.
//! * [`genfun`] generating functions of restricted structures with markers.
//! * [`oracle`] brute-force enumeration used as ground truth.
//! * [`asymptotics`] dominant singularities, limit-law parameters and growth fits.
//! * [`sampler`] exact uniform generation.
//! * [`cli`] the command-line front end.
//!
//! ```
//! use rna_topology::diagram::Diagram;
//!
//! let d: Diagram = "([)]".parse().unwrap();
//! assert_eq!(d.genus().genus, 1);
//! ```

pub mod asymptotics;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod genfun;
pub mod oracle;
pub mod recursions;
pub mod sampler;
pub mod series;

pub use error::{Error, Result};
