use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{
    activation_from, check_dim, connected, weighted_distance_unchecked, ClassId, Node,
    ACTIVATION_EPS,
};

/// A set of nodes with their neighborhood graph.
///
/// Node ids are positions in insertion order; removing nodes compacts the
/// ids of the survivors while keeping their relative order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SomMap {
    dim: usize,
    node_budget: usize,
    nodes: Vec<Node>,
    /// Sorted adjacency lists, always symmetric and free of self-loops.
    neighbors: Vec<Vec<usize>>,
    /// Competitions since the last reset.
    pub(crate) nwins: u64,
}

impl SomMap {
    /// Starts a map with a single node at `first`.
    pub fn new(first: &[f64], label: Option<ClassId>, node_budget: usize) -> Result<Self> {
        if first.is_empty() {
            return Err(Error::Data(
                "patterns must have at least one dimension".into(),
            ));
        }
        if node_budget == 0 {
            return Err(Error::param("n_max", "must be positive"));
        }
        Ok(SomMap {
            dim: first.len(),
            node_budget,
            nodes: vec![Node::at(first, label)],
            neighbors: vec![Vec::new()],
            nwins: 1,
        })
    }

    /// Rebuilds a map from stored parts, checking every structural invariant.
    pub fn from_parts(
        dim: usize,
        node_budget: usize,
        nodes: Vec<Node>,
        connections: &[(usize, usize)],
        nwins: u64,
    ) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::EmptyMap);
        }
        if nodes.len() > node_budget {
            return Err(Error::Model(format!(
                "{} nodes exceed the budget of {node_budget}",
                nodes.len()
            )));
        }
        for n in &nodes {
            if n.center.len() != dim || n.relevance.len() != dim || n.dist_avg.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: n.center.len(),
                });
            }
        }
        let mut neighbors = vec![Vec::new(); nodes.len()];
        for &(a, b) in connections {
            if a == b || a >= nodes.len() || b >= nodes.len() {
                return Err(Error::Model(format!("invalid connection ({a}, {b})")));
            }
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for list in &mut neighbors {
            list.sort_unstable();
            list.dedup();
        }
        Ok(SomMap {
            dim,
            node_budget,
            nodes,
            neighbors,
            nwins,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn node_budget(&self) -> usize {
        self.node_budget
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nwins(&self) -> u64 {
        self.nwins
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &Node {
        &self.nodes[id]
    }

    pub(crate) fn node_mut(&mut self, id: usize) -> &mut Node {
        &mut self.nodes[id]
    }

    pub fn neighbors(&self, id: usize) -> &[usize] {
        &self.neighbors[id]
    }

    pub fn is_connected(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }

    /// All connections as `(i, j)` with `i < j`, in lexicographic order.
    pub fn connections(&self) -> Vec<(usize, usize)> {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
            .collect()
    }

    pub fn labeled_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.label.is_some()).count()
    }

    /// Activation of every node for `x`, written into `out`.
    pub fn activations_into(&self, x: &[f64], out: &mut Vec<f64>) -> Result<()> {
        check_dim(self.dim, x.len())?;
        out.clear();
        out.extend(self.nodes.iter().map(|n| {
            let d = weighted_distance_unchecked(x, &n.center, &n.relevance);
            activation_from(n.relevance_sum(), d, ACTIVATION_EPS)
        }));
        Ok(())
    }

    pub fn activations(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(self.nodes.len());
        self.activations_into(x, &mut out)?;
        Ok(out)
    }

    /// Most activated node; ties go to the lowest id.
    pub fn find_winner(&self, x: &[f64]) -> Result<(usize, f64)> {
        let acts = self.activations(x)?;
        argmax(&acts, |_| true).ok_or(Error::EmptyMap)
    }

    /// Most activated node whose label is `label` or unset and whose
    /// activation reaches `a_t`.
    pub fn find_winner_for_class(
        &self,
        x: &[f64],
        label: ClassId,
        a_t: f64,
    ) -> Result<Option<(usize, f64)>> {
        let acts = self.activations(x)?;
        Ok(self.winner_for_class_in(&acts, label, a_t))
    }

    pub(crate) fn winner_for_class_in(
        &self,
        acts: &[f64],
        label: ClassId,
        a_t: f64,
    ) -> Option<(usize, f64)> {
        argmax(acts, |i| {
            acts[i] >= a_t && self.nodes[i].label.is_none_or(|l| l == label)
        })
    }

    /// Appends a fresh node at `x` and links it to every compatible node.
    pub fn insert_node(&mut self, x: &[f64], label: Option<ClassId>, minwd: f64) -> Result<usize> {
        check_dim(self.dim, x.len())?;
        if self.nodes.len() >= self.node_budget {
            return Err(Error::BudgetExhausted {
                max: self.node_budget,
            });
        }
        self.nodes.push(Node::at(x, label));
        self.neighbors.push(Vec::new());
        let id = self.nodes.len() - 1;
        self.relink_node(id, minwd);
        Ok(id)
    }

    /// Recomputes the connections of a single node against all others.
    pub fn relink_node(&mut self, id: usize, minwd: f64) {
        let m = self.dim;
        for other in 0..self.nodes.len() {
            if other == id {
                continue;
            }
            let want = connected(&self.nodes[id], &self.nodes[other], minwd, m);
            let (a, b) = (id, other);
            match (want, self.neighbors[a].binary_search(&b)) {
                (true, Err(pos)) => {
                    self.neighbors[a].insert(pos, b);
                    let pos_b = self.neighbors[b].binary_search(&a).unwrap_err();
                    self.neighbors[b].insert(pos_b, a);
                }
                (false, Ok(pos)) => {
                    self.neighbors[a].remove(pos);
                    let pos_b = self.neighbors[b].binary_search(&a).unwrap();
                    self.neighbors[b].remove(pos_b);
                }
                _ => {}
            }
        }
    }

    /// Replaces the whole neighborhood graph with the pairwise connection rule.
    pub fn rebuild_connections(&mut self, minwd: f64) {
        let n = self.nodes.len();
        let m = self.dim;
        let mut neighbors = vec![Vec::new(); n];
        for i in 0..n {
            for j in (i + 1)..n {
                if connected(&self.nodes[i], &self.nodes[j], minwd, m) {
                    neighbors[i].push(j);
                    neighbors[j].push(i);
                }
            }
        }
        // i-loop pushes in increasing order for both ends
        self.neighbors = neighbors;
    }

    /// Drops every node for which `keep` is false and clears all
    /// connections; callers rebuild the graph afterwards.
    pub(crate) fn retain_nodes(&mut self, keep: &[bool]) {
        debug_assert_eq!(keep.len(), self.nodes.len());
        let mut flags = keep.iter();
        self.nodes.retain(|_| *flags.next().unwrap());
        self.neighbors = vec![Vec::new(); self.nodes.len()];
    }
}

/// First index of the maximum among entries selected by `eligible`.
fn argmax(values: &[f64], mut eligible: impl FnMut(usize) -> bool) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &v) in values.iter().enumerate() {
        if !eligible(i) {
            continue;
        }
        match best {
            Some((_, b)) if v <= b => {}
            _ => best = Some((i, v)),
        }
    }
    best
}
