//! Reference implementations written straight from the formulas, kept
//! separate from the library code paths they check.
#![allow(dead_code)]

use rand::Rng;
use sssom::{ClassId, Node, SomMap};

pub const EPS: f64 = 1e-7;

pub fn data_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
        .join(name)
}

pub fn oracle_distance(x: &[f64], c: &[f64], w: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..x.len() {
        acc += w[i] * (x[i] - c[i]).powi(2);
    }
    acc.sqrt()
}

pub fn oracle_euclidean(x: &[f64], c: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..x.len() {
        acc += (x[i] - c[i]) * (x[i] - c[i]);
    }
    acc.sqrt()
}

pub fn oracle_activation(x: &[f64], node: &Node) -> f64 {
    let mut sum_w = 0.0;
    for w in &node.relevance {
        sum_w += w;
    }
    sum_w / (sum_w + oracle_distance(x, &node.center, &node.relevance) + EPS)
}

/// Scan every node, keep the first strict maximum.
pub fn oracle_winner(nodes: &[Node], x: &[f64]) -> usize {
    let mut best = 0;
    let mut best_act = f64::NEG_INFINITY;
    for (i, n) in nodes.iter().enumerate() {
        let a = oracle_activation(x, n);
        if a > best_act {
            best = i;
            best_act = a;
        }
    }
    best
}

pub fn oracle_connected(a: &Node, b: &Node, minwd: f64) -> bool {
    let labels_ok = a.label.is_none() || b.label.is_none() || a.label == b.label;
    let m = a.relevance.len() as f64;
    let mut gap = 0.0;
    for i in 0..a.relevance.len() {
        gap += (a.relevance[i] - b.relevance[i]).powi(2);
    }
    labels_ok && gap.sqrt() < minwd * m.sqrt()
}

pub fn oracle_connections(nodes: &[Node], minwd: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..nodes.len() {
        for j in (i + 1)..nodes.len() {
            if oracle_connected(&nodes[i], &nodes[j], minwd) {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn random_node<R: Rng>(rng: &mut R, m: usize, classes: u32) -> Node {
    let label = if classes > 0 && rng.gen_bool(0.6) {
        Some(ClassId(rng.gen_range(0..classes)))
    } else {
        None
    };
    Node {
        center: (0..m).map(|_| rng.gen()).collect(),
        relevance: (0..m).map(|_| rng.gen()).collect(),
        dist_avg: (0..m).map(|_| rng.gen::<f64>() * 0.3).collect(),
        wins: 0,
        label,
    }
}

pub fn random_map<R: Rng>(rng: &mut R, m: usize, n: usize, classes: u32) -> SomMap {
    let nodes = (0..n).map(|_| random_node(rng, m, classes)).collect();
    SomMap::from_parts(m, n.max(1), nodes, &[], 0).unwrap()
}

/// Prints one verdict line and fails the test if the criterion did not hold.
pub fn verdict(id: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "[{}] criterion {id}: {name} :: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {id} failed: {name} ({detail})");
}
