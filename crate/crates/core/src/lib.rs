//! Monochromatic edges and subgraphs in uniformly colored graphs.
//!
//! Every vertex of a graph receives one of `c` colors independently and
//! uniformly at random. The crate counts the resulting monochromatic edges,
//! stars and cycles, computes their distributions exactly (by enumeration)
//! or by seeded Monte Carlo, evaluates exact conditional moments in rational
//! arithmetic, and builds the limiting laws (Poisson, Poisson mixtures,
//! normal, weighted chi-square) those statistics converge to. Supporting
//! machinery covers subgraph census, the fractional stable number of small
//! patterns, and dense adjacency spectra.

pub mod census;
pub mod cli;
pub mod colorsim;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod limits;
pub mod matching;
pub mod moments;
pub mod rng;
pub mod spectral;
pub mod stats;

pub use census::MultiGraphPattern;
pub use colorsim::{SimulationRun, Statistic};
pub use error::{Error, Result};
pub use extremal::{ConditionReport, FractionalSolution};
pub use graph::{FamilySpec, Graph};
pub use limits::LimitLaw;
pub use spectral::Spectrum;
pub use stats::Pmf;
