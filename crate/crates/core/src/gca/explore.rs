use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::fg::gc_step;
use super::seed::{mutate_seed, Seed};
use super::GcaError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExploreMode {
    Labeled,
    Unlabeled,
}

impl std::str::FromStr for ExploreMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "labeled" => Ok(ExploreMode::Labeled),
            "unlabeled" => Ok(ExploreMode::Unlabeled),
            _ => Err(format!("unknown mode '{s}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    pub id: usize,
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
    pub x: Vec<String>,
    /// Columns are g-vectors.
    pub g: Vec<Vec<i64>>,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeGraph {
    pub mode: ExploreMode,
    pub max_depth: usize,
    /// False when the node budget stopped the search.
    pub complete: bool,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

type NodeKey = (Vec<String>, Vec<Vec<i64>>, Vec<u32>);

fn node_key(seed: &Seed, mode: ExploreMode) -> NodeKey {
    let xs = seed.x_strings();
    let b = seed.b.rows().to_vec();
    let d = seed.datum.d().to_vec();
    match mode {
        ExploreMode::Labeled => (xs, b, d),
        ExploreMode::Unlabeled => {
            let mut perm: Vec<usize> = (0..xs.len()).collect();
            perm.sort_by(|&i, &j| xs[i].cmp(&xs[j]).then(d[i].cmp(&d[j])));
            let xs2 = perm.iter().map(|&i| xs[i].clone()).collect();
            let b2 = perm.iter().map(|&i| perm.iter().map(|&j| b[i][j]).collect()).collect();
            let d2 = perm.iter().map(|&i| d[i]).collect();
            (xs2, b2, d2)
        }
    }
}

/// Breadth-first exploration of the exchange graph up to `max_depth`
/// mutations, stopping early once `budget` nodes are known.
pub fn explore(seed0: &Seed, max_depth: usize, mode: ExploreMode, budget: usize) -> Result<ExchangeGraph, GcaError> {
    let n = seed0.n();
    let b0 = seed0.b.clone();
    let unit = |l: usize| -> Vec<i64> { (0..n).map(|i| i64::from(i == l)).collect() };
    let id_mat: Vec<Vec<i64>> = (0..n).map(unit).collect();
    let mut index: BTreeMap<NodeKey, usize> = BTreeMap::new();
    let mut nodes = Vec::new();
    let mut states = Vec::new();
    let mut edges = Vec::new();
    let mut seen_edges = BTreeSet::new();
    let mut complete = true;

    index.insert(node_key(seed0, mode), 0);
    nodes.push(GraphNode { id: 0, b: b0.rows().to_vec(), x: seed0.x_strings(), g: id_mat.clone(), depth: 0 });
    states.push((seed0.clone(), id_mat.clone(), id_mat));
    let mut queue = VecDeque::from([0usize]);
    'bfs: while let Some(u) = queue.pop_front() {
        if nodes[u].depth >= max_depth {
            continue;
        }
        for k in 1..=n {
            let (seed, g, c) = states[u].clone();
            let next = mutate_seed(&seed, k)?;
            let (g2, c2) = gc_step(&b0, &seed.datum, &seed.b, &g, &c, k);
            let key = node_key(&next, mode);
            let v = match index.get(&key) {
                Some(&v) => v,
                None => {
                    if nodes.len() >= budget {
                        complete = false;
                        break 'bfs;
                    }
                    let v = nodes.len();
                    index.insert(key, v);
                    nodes.push(GraphNode { id: v, b: next.b.rows().to_vec(), x: next.x_strings(), g: g2.clone(), depth: nodes[u].depth + 1 });
                    states.push((next, g2, c2));
                    queue.push_back(v);
                    v
                }
            };
            if seen_edges.insert((u.min(v), u.max(v))) {
                edges.push(GraphEdge { from: u, to: v, k });
            }
        }
    }
    Ok(ExchangeGraph { mode, max_depth, complete, nodes, edges })
}

impl ExchangeGraph {
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph exchange {\n");
        for nd in &self.nodes {
            s.push_str(&format!("  {} [label=\"{}\"];\n", nd.id, nd.x.join(", ").replace('"', "'")));
        }
        for e in &self.edges {
            s.push_str(&format!("  {} -- {} [label=\"{}\"];\n", e.from, e.to, e.k));
        }
        s.push_str("}\n");
        s
    }
}
