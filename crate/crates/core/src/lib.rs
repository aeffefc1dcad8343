//! Independent-cascade epidemics on graphs and patient-zero inference.
//!
//! The pipeline is:
//!
//! 1. build or load a [`Graph`] ([`graph::generate_er`], [`graph::load_edge_list`]),
//! 2. run the forward process from a source ([`cascade::run_cascade`]),
//! 3. compute BFS distance signatures of the infected set and project them
//!    with a Gaussian random matrix ([`embed`]),
//! 4. score every node by its distance to the infected set's center of
//!    gravity and rank ([`estimator`]).
//!
//! [`harness`] wires these together into seeded single runs and sweeps that
//! produce `runs.csv`, `summary.csv` and `plot.svg`.
//!
//! Data-parallel loops go through [`Execution`]; with the `parallel` feature
//! disabled every path runs sequentially.

pub mod cascade;
pub mod embed;
pub mod error;
pub mod estimator;
pub mod graph;
pub mod harness;
pub mod par;
pub mod plot;
pub mod rng;

pub use cascade::{run_cascade, sample_source, CascadeOutcome, CascadeParams, ObservedSet};
pub use embed::{
    build_signatures, default_dimension, embed, jl_dimension, EmbeddedCoordinates,
    ProjectionMatrix, SignatureMatrix,
};
pub use error::{Error, Result};
pub use estimator::{center_of_gravity, rank_nodes, score_nodes, CenterOfGravity, RankingResult};
pub use graph::{bfs, generate_er, load_edge_list, DistanceVector, Graph, NodeId};
pub use par::Execution;
