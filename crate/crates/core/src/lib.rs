//! Semi-supervised self-organizing map.
//!
//! A map of prototype nodes, each with its own per-dimension relevance
//! weights, grows and prunes itself while learning from a mix of labeled and
//! unlabeled patterns. Labeled patterns drive an LVQ-like update (attract the
//! matching prototype, push away a wrong-class winner); unlabeled patterns
//! drive plain competitive learning. The trained map clusters patterns and
//! classifies them with the labels its nodes picked up.
//!
//! ```
//! use sssom::{data::synthetic::SubspaceClusters, train, inference::classify, HyperParams};
//!
//! let ds = SubspaceClusters::default().generate(1)?.mask_labels(0.1, 1)?.normalize()?;
//! let params = HyperParams { n_max: ds.len(), epochs: 5, age_wins: 300, ..Default::default() };
//! let map = train(&ds, &params)?;
//! let prediction = classify(&map, &ds.patterns[0], params.a_t)?;
//! # let _ = prediction;
//! # Ok::<(), sssom::Error>(())
//! ```

pub mod data;
pub mod error;
pub mod experiment;
pub mod inference;
pub mod kernel;
pub mod map;
pub mod params;
pub mod persist;
pub mod rng;
pub mod train;

pub use error::{Error, Result};
pub use inference::{classify, cluster, Assignment, Outcome, Prediction};
pub use kernel::{ClassId, Node};
pub use map::SomMap;
pub use params::HyperParams;
pub use persist::Model;
pub use train::{train, train_observed, TrainObserver, TrainState, TrainStats};
