//! Trained models and their versioned JSON file format.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::data::{Dataset, NormRange};
use crate::error::{Error, Result};
use crate::inference::{classify_all, Prediction};
use crate::kernel::{ClassId, Node};
use crate::map::SomMap;
use crate::params::HyperParams;

pub const MODEL_FORMAT: &str = "sssom-model";
pub const MODEL_VERSION: u32 = 1;

/// A trained map with everything needed to score raw patterns.
#[derive(Clone, Debug, PartialEq)]
pub struct Model {
    pub params: HyperParams,
    pub map: SomMap,
    pub norm_stats: Option<Vec<NormRange>>,
    pub class_names: Vec<String>,
    pub dim_names: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format: String,
    version: u32,
    params: HyperParams,
    norm_stats: Option<Vec<NormRange>>,
    class_names: Vec<String>,
    dim_names: Vec<String>,
    node_budget: usize,
    nwins: u64,
    nodes: Vec<Node>,
    connections: Vec<(usize, usize)>,
}

impl Model {
    /// Bundles a map trained on `ds` (already normalized).
    pub fn new(map: SomMap, params: HyperParams, ds: &Dataset) -> Self {
        Model {
            params,
            map,
            norm_stats: ds.norm_stats.clone(),
            class_names: ds.class_names.clone(),
            dim_names: ds.dim_names.clone(),
        }
    }

    pub fn class_name(&self, id: ClassId) -> &str {
        &self.class_names[id.index()]
    }

    pub fn class_id(&self, name: &str) -> Option<ClassId> {
        self.class_names
            .iter()
            .position(|c| c == name)
            .map(|i| ClassId(i as u32))
    }

    /// Scales raw patterns with the stored ranges (clamped to `[0, 1]`).
    pub fn prepare(&self, ds: &Dataset) -> Result<Dataset> {
        if ds.dim() != self.map.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.map.dim(),
                found: ds.dim(),
            });
        }
        match &self.norm_stats {
            Some(stats) => ds.apply_normalization(stats),
            None => Ok(ds.clone()),
        }
    }

    /// Classifies raw (unscaled) patterns.
    pub fn predict(&self, ds: &Dataset) -> Result<Vec<Prediction>> {
        let scaled = self.prepare(ds)?;
        classify_all(&self.map, &scaled.patterns, self.params.a_t)
    }

    pub fn to_json(&self) -> Result<String> {
        let file = ModelFile {
            format: MODEL_FORMAT.into(),
            version: MODEL_VERSION,
            params: self.params.clone(),
            norm_stats: self.norm_stats.clone(),
            class_names: self.class_names.clone(),
            dim_names: self.dim_names.clone(),
            node_budget: self.map.node_budget(),
            nwins: self.map.nwins(),
            nodes: self.map.nodes().to_vec(),
            connections: self.map.connections(),
        };
        let mut s = serde_json::to_string_pretty(&file)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile = serde_json::from_str(text)?;
        if file.format != MODEL_FORMAT {
            return Err(Error::Model(format!("unknown format `{}`", file.format)));
        }
        if file.version != MODEL_VERSION {
            return Err(Error::Model(format!(
                "unsupported version {} (expected {MODEL_VERSION})",
                file.version
            )));
        }
        let dim = file.dim_names.len();
        if let Some(stats) = &file.norm_stats {
            if stats.len() != dim {
                return Err(Error::Model(
                    "normalization ranges do not match dimensions".into(),
                ));
            }
        }
        if let Some(l) = file
            .nodes
            .iter()
            .filter_map(|n| n.label)
            .find(|l| l.index() >= file.class_names.len())
        {
            return Err(Error::Model(format!("node label {l} has no class name")));
        }
        let map = SomMap::from_parts(
            dim,
            file.node_budget,
            file.nodes,
            &file.connections,
            file.nwins,
        )?;
        Ok(Model {
            params: file.params,
            map,
            norm_stats: file.norm_stats,
            class_names: file.class_names,
            dim_names: file.dim_names,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}
