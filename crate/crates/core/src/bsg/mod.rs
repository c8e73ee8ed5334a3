//! Graph Lemma, subset extraction and the iterated biclique cover.

pub mod cover;
pub mod extract;
pub mod graph;
pub mod lemma;

pub use cover::{bsg_cover, verify_cover, BSGCover, Biclique, CoverAudit, CoverFailure, Variant};
pub use extract::{bsg_extract, sumset_bound, Extracted};
pub use graph::BipartiteGraph;
pub use lemma::{graph_lemma_det, graph_lemma_rand, length3_paths, GraphLemmaResult};
