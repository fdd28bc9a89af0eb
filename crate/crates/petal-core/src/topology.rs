//! Construction of Petal graphs and their stratification.
//!
//! A Petal network is n identical leaves attached either to a single hub
//! node or to a clique of n core nodes. Every leaf kind supported here
//! (path bundles, glued k-ary trees, chains of those) normalizes to a
//! `Profile`: a sequence of depths, each either expanding a level by a
//! branching factor or contracting it back down. All downstream machinery
//! (weights, quotient matrices) works off that profile.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{PetalError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoreKind {
    /// All leaves share one central node.
    SingleHub,
    /// Leaf attachment points form a complete graph K_n.
    CompleteCore,
}

impl fmt::Display for CoreKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreKind::SingleHub => write!(f, "hub"),
            CoreKind::CompleteCore => write!(f, "complete"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LeafKind {
    /// k parallel paths of length m (edges), joined at both endpoints.
    PathBundle { m: usize, k: usize },
    /// Two balanced k-ary trees of height m glued leaf-to-leaf.
    SymmetricG { m: usize, k: usize },
    /// Expanding tree with per-depth child counts, glued to a contracting
    /// tree; both sides must reach the same leaf count.
    AsymmetricG {
        expand: Vec<usize>,
        contract: Vec<usize>,
    },
    /// Segments chained end-to-end at their terminal nodes.
    Composite { segments: Vec<LeafKind> },
}

impl LeafKind {
    pub fn validate(&self) -> Result<()> {
        match self {
            LeafKind::PathBundle { m, k } => {
                if *m < 2 {
                    return Err(PetalError::InvalidSpec(format!(
                        "path bundle needs m >= 2, got m = {m}"
                    )));
                }
                if *k < 1 {
                    return Err(PetalError::InvalidSpec("path bundle needs k >= 1".into()));
                }
            }
            LeafKind::SymmetricG { m, k } => {
                if *m < 1 || *k < 1 {
                    return Err(PetalError::InvalidSpec(
                        "symmetric G leaf needs m >= 1 and k >= 1".into(),
                    ));
                }
            }
            LeafKind::AsymmetricG { expand, contract } => {
                if expand.is_empty() || contract.is_empty() {
                    return Err(PetalError::InvalidSpec(
                        "asymmetric G leaf needs nonempty expand and contract lists".into(),
                    ));
                }
                if expand.iter().chain(contract).any(|&k| k < 1) {
                    return Err(PetalError::InvalidSpec(
                        "asymmetric G child counts must be >= 1".into(),
                    ));
                }
                let pe: usize = expand.iter().product();
                let pc: usize = contract.iter().product();
                if pe != pc {
                    return Err(PetalError::InvalidSpec(format!(
                        "asymmetric G leaf-node counts differ: expand {pe}, contract {pc}"
                    )));
                }
            }
            LeafKind::Composite { segments } => {
                if segments.is_empty() {
                    return Err(PetalError::InvalidSpec(
                        "composite leaf has no segments".into(),
                    ));
                }
                for s in segments {
                    s.validate()?;
                }
            }
        }
        Ok(())
    }
}

/// One depth level of a leaf profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Depth {
    pub k: usize,
    /// false: each node at the shallower level has k children here;
    /// true: k nodes at the shallower level merge into one.
    pub contract: bool,
}

/// Normalized leaf description: per-depth branching, entry and exit at a
/// single node per leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub depths: Vec<Depth>,
}

impl Profile {
    pub fn from_leaf(leaf: &LeafKind) -> Profile {
        let mut depths = Vec::new();
        push_leaf(leaf, &mut depths);
        Profile { depths }
    }

    pub fn len(&self) -> usize {
        self.depths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.depths.is_empty()
    }

    /// Node count per level within one leaf; widths[0] = 1 is the hub/core
    /// attachment, widths[M] = 1 is the far node.
    pub fn widths(&self) -> Vec<usize> {
        let mut w = vec![1usize];
        for d in &self.depths {
            let prev = *w.last().unwrap();
            if d.contract {
                debug_assert_eq!(prev % d.k, 0);
                w.push(prev / d.k);
            } else {
                w.push(prev * d.k);
            }
        }
        w
    }

    /// Nodes in one leaf, excluding the attachment node.
    pub fn leaf_node_count(&self) -> usize {
        self.widths().iter().skip(1).sum()
    }

    /// Edges in one leaf.
    pub fn leaf_edge_count(&self) -> usize {
        let w = self.widths();
        self.depths
            .iter()
            .enumerate()
            .map(|(i, d)| if d.contract { w[i] } else { w[i + 1] })
            .sum()
    }
}

fn push_leaf(leaf: &LeafKind, out: &mut Vec<Depth>) {
    match leaf {
        LeafKind::PathBundle { m, k } => {
            out.push(Depth {
                k: *k,
                contract: false,
            });
            for _ in 0..m - 2 {
                out.push(Depth {
                    k: 1,
                    contract: false,
                });
            }
            out.push(Depth {
                k: *k,
                contract: true,
            });
        }
        LeafKind::SymmetricG { m, k } => {
            for _ in 0..*m {
                out.push(Depth {
                    k: *k,
                    contract: false,
                });
            }
            for _ in 0..*m {
                out.push(Depth {
                    k: *k,
                    contract: true,
                });
            }
        }
        LeafKind::AsymmetricG { expand, contract } => {
            for &k in expand {
                out.push(Depth { k, contract: false });
            }
            for &k in contract {
                out.push(Depth { k, contract: true });
            }
        }
        LeafKind::Composite { segments } => {
            for s in segments {
                push_leaf(s, out);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PetalSpec {
    pub core: CoreKind,
    pub n: usize,
    pub leaf: LeafKind,
}

impl PetalSpec {
    pub fn new(core: CoreKind, n: usize, leaf: LeafKind) -> Result<PetalSpec> {
        let spec = PetalSpec { core, n, leaf };
        spec.validate()?;
        Ok(spec)
    }

    pub fn path_bundle(core: CoreKind, n: usize, m: usize, k: usize) -> Result<PetalSpec> {
        PetalSpec::new(core, n, LeafKind::PathBundle { m, k })
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(PetalError::InvalidSpec(format!(
                "petal networks need n >= 2 leaves, got n = {}",
                self.n
            )));
        }
        self.leaf.validate()
    }

    pub fn profile(&self) -> Profile {
        Profile::from_leaf(&self.leaf)
    }

    pub fn describe(&self) -> String {
        format!("{} n={} {:?}", self.core, self.n, self.leaf)
    }
}

/// Explicit node/edge realization of a petal spec.
///
/// Numbering is deterministic: hub is node 0 (single hub) or the core
/// nodes are 0..n-1 (complete core); leaf nodes follow leaf-major,
/// level-major, sibling-minor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub node_count: usize,
    pub edges: Vec<(usize, usize)>,
    /// Stratum (orbit) id per node; equals the core distance level.
    pub stratum_of: Vec<usize>,
    pub core_distance: Vec<usize>,
    /// Weight-class id per edge: 0 for core-core edges, i for depth-i edges.
    pub edge_class: Vec<usize>,
    pub core: CoreKind,
    pub n_leaves: usize,
    /// Number of depths in the leaf profile.
    pub depth_count: usize,
}

impl Graph {
    pub fn stratum_count(&self) -> usize {
        self.depth_count + 1
    }

    pub fn class_count(&self) -> usize {
        match self.core {
            CoreKind::SingleHub => self.depth_count,
            CoreKind::CompleteCore => self.depth_count + 1,
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.node_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "nodes": self.node_count,
            "edges": self.edges.iter().map(|&(u, v)| vec![u, v]).collect::<Vec<_>>(),
            "strata": self.stratum_of,
            "core_distance": self.core_distance,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph petal {\n");
        for i in 0..self.node_count {
            s.push_str(&format!("  {} [stratum={}];\n", i, self.stratum_of[i]));
        }
        for &(u, v) in &self.edges {
            s.push_str(&format!("  {u} -- {v};\n"));
        }
        s.push_str("}\n");
        s
    }
}

pub fn build_graph(spec: &PetalSpec) -> Result<Graph> {
    spec.validate()?;
    let profile = spec.profile();
    let n = spec.n;
    let widths = profile.widths();
    let depth_count = profile.len();
    let leaf_size = profile.leaf_node_count();

    // level offsets within one leaf (levels 1..=M)
    let mut offset = vec![0usize; depth_count + 1];
    for i in 1..=depth_count {
        offset[i] = if i == 1 {
            0
        } else {
            offset[i - 1] + widths[i - 1]
        };
    }

    let core_nodes = match spec.core {
        CoreKind::SingleHub => 1,
        CoreKind::CompleteCore => n,
    };
    let node_count = core_nodes + n * leaf_size;

    let node_at = |leaf: usize, level: usize, j: usize| -> usize {
        debug_assert!(level >= 1 && j < widths[level]);
        core_nodes + leaf * leaf_size + offset[level] + j
    };

    let mut edges = Vec::new();
    let mut edge_class = Vec::new();

    if spec.core == CoreKind::CompleteCore {
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
                edge_class.push(0);
            }
        }
    }

    for leaf in 0..n {
        let entry = match spec.core {
            CoreKind::SingleHub => 0,
            CoreKind::CompleteCore => leaf,
        };
        for (idx, d) in profile.depths.iter().enumerate() {
            let level = idx + 1;
            let upper = |j: usize| -> usize {
                if level == 1 {
                    entry
                } else {
                    node_at(leaf, level - 1, j)
                }
            };
            if d.contract {
                for j in 0..widths[level - 1] {
                    edges.push((upper(j), node_at(leaf, level, j / d.k)));
                    edge_class.push(level);
                }
            } else {
                for j in 0..widths[level - 1] {
                    for t in 0..d.k {
                        edges.push((upper(j), node_at(leaf, level, j * d.k + t)));
                        edge_class.push(level);
                    }
                }
            }
        }
    }

    let mut stratum_of = vec![0usize; node_count];
    for leaf in 0..n {
        for level in 1..=depth_count {
            for j in 0..widths[level] {
                stratum_of[node_at(leaf, level, j)] = level;
            }
        }
    }
    let core_distance = stratum_of.clone();

    Ok(Graph {
        node_count,
        edges,
        stratum_of,
        core_distance,
        edge_class,
        core: spec.core,
        n_leaves: n,
        depth_count,
    })
}

/// Partition of the node set into strata, ordered by stratum id.
pub fn strata(graph: &Graph) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); graph.stratum_count()];
    for (node, &s) in graph.stratum_of.iter().enumerate() {
        out[s].push(node);
    }
    out
}
