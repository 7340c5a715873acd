//! Constructions, certified detectors, exact counters and embedding pipelines
//! for induced Turán problems in `K_{s,s}`-free graphs.
//!
//! Module map:
//! - [`graph`]: bit-packed simple graphs, common neighborhoods, degree profiles.
//! - [`generators`]: thetas, prisms, rooted-tree lifts, clique blowups, polarity graphs.
//! - [`detectors`]: `K_{s,s}` search, induced-subgraph search, witness checks.
//! - [`counters`]: closed walks, induced 4-cycles, induced 2-paths, exact bound audits.
//! - [`algorithms`]: almost-regularization, greedy induced-tree embedding, the
//!   selection lemma, lift/theta/prism assembly and rich-set extraction.
//! - [`io`] and [`cli`]: graph6 / edge-list formats and the command-line front end.

pub mod algorithms;
pub mod cli;
pub mod counters;
pub mod detectors;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;

pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, VertexSet};
