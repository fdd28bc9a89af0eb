//! Edge-class weight assignments and assembly of the full weight matrix.
//!
//! Weights live on edge classes (one per leaf depth, plus the core class
//! for complete-cored networks) and are kept as exact rationals until a
//! matrix is assembled.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{PetalError, Result};
use crate::linalg::Mat;
use crate::topology::{CoreKind, Graph, PetalSpec};

pub type Weight = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Optimal,
    MetropolisHastings,
    Custom,
}

/// Per-class edge weights for one petal graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightAssignment {
    pub scheme: Scheme,
    /// Weight of core-core edges (complete core only).
    pub core_weight: Option<Weight>,
    /// depth_weights[i-1] is the weight of depth-i edges.
    pub depth_weights: Vec<Weight>,
}

impl WeightAssignment {
    pub fn class_weight(&self, class: usize) -> Option<Weight> {
        if class == 0 {
            self.core_weight
        } else {
            self.depth_weights.get(class - 1).copied()
        }
    }

    /// Class weights as floats, core first when present.
    pub fn to_f64_vec(&self) -> Vec<f64> {
        let mut out = Vec::new();
        if let Some(w) = self.core_weight {
            out.push(w.to_f64().unwrap());
        }
        out.extend(self.depth_weights.iter().map(|w| w.to_f64().unwrap()));
        out
    }

    pub fn depth_weights_f64(&self) -> Vec<f64> {
        self.depth_weights
            .iter()
            .map(|w| w.to_f64().unwrap())
            .collect()
    }

    /// Add `delta` to one class weight (0 = core class, i = depth i).
    pub fn perturbed(&self, class: usize, delta: Weight) -> Result<WeightAssignment> {
        let mut out = self.clone();
        out.scheme = Scheme::Custom;
        if class == 0 {
            match out.core_weight.as_mut() {
                Some(w) => *w += delta,
                None => {
                    return Err(PetalError::InvalidSpec(
                        "no core class on a single-hub network".into(),
                    ))
                }
            }
        } else if let Some(w) = out.depth_weights.get_mut(class - 1) {
            *w += delta;
        } else {
            return Err(PetalError::InvalidSpec(format!("no weight class {class}")));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut classes = Vec::new();
        if let Some(w) = self.core_weight {
            classes.push(serde_json::json!({
                "from_stratum": 0, "to_stratum": 0,
                "weight_num": *w.numer(), "weight_den": *w.denom(),
            }));
        }
        for (i, w) in self.depth_weights.iter().enumerate() {
            classes.push(serde_json::json!({
                "from_stratum": i, "to_stratum": i + 1,
                "weight_num": *w.numer(), "weight_den": *w.denom(),
            }));
        }
        serde_json::json!({
            "scheme": match self.scheme {
                Scheme::Optimal => "optimal",
                Scheme::MetropolisHastings => "metropolis_hastings",
                Scheme::Custom => "custom",
            },
            "classes": classes,
        })
    }
}

/// Closed-form optimal weights: 1/(1+k_i) per depth, with the hub classes
/// overridden to 2/(2+n k_1) (single hub) and the core clique set to 1/n
/// (complete core).
pub fn optimal_weights(spec: &PetalSpec) -> Result<WeightAssignment> {
    spec.validate()?;
    let profile = spec.profile();
    let mut depth_weights: Vec<Weight> = profile
        .depths
        .iter()
        .map(|d| Ratio::new(1, 1 + d.k as i64))
        .collect();
    let core_weight = match spec.core {
        CoreKind::SingleHub => {
            let k1 = profile.depths[0].k as i64;
            depth_weights[0] = Ratio::new(2, 2 + spec.n as i64 * k1);
            None
        }
        CoreKind::CompleteCore => Some(Ratio::new(1, spec.n as i64)),
    };
    Ok(WeightAssignment {
        scheme: Scheme::Optimal,
        core_weight,
        depth_weights,
    })
}

/// Metropolis-Hastings baseline: W_ij = 1/(1 + max(deg i, deg j)).
///
/// The rule is constant on edge classes for every graph built here, so the
/// result is expressed in class form like the optimal weights.
pub fn metropolis_hastings_weights(graph: &Graph) -> Result<WeightAssignment> {
    let deg = graph.degrees();
    let mut core_weight = None;
    let mut depth_weights = vec![None; graph.depth_count];
    for (e, &(u, v)) in graph.edges.iter().enumerate() {
        let w = Ratio::new(1, 1 + deg[u].max(deg[v]) as i64);
        let class = graph.edge_class[e];
        let slot = if class == 0 {
            &mut core_weight
        } else {
            &mut depth_weights[class - 1]
        };
        match slot {
            None => *slot = Some(w),
            Some(prev) if *prev == w => {}
            Some(_) => return Err(PetalError::NonClassConstant),
        }
    }
    Ok(WeightAssignment {
        scheme: Scheme::MetropolisHastings,
        core_weight,
        depth_weights: depth_weights
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(PetalError::NonClassConstant)?,
    })
}

/// Symmetric row-stochastic weight matrix with the graph's sparsity pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    pub dim: usize,
    pub edges: Vec<(usize, usize)>,
    pub edge_weights: Vec<f64>,
    /// W_ii = 1 - sum of incident edge weights; may be negative.
    pub diag: Vec<f64>,
}

impl WeightMatrix {
    /// Sparse matrix-vector product.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim);
        let mut y: Vec<f64> = (0..self.dim).map(|i| self.diag[i] * x[i]).collect();
        for (&(u, v), &w) in self.edges.iter().zip(&self.edge_weights) {
            y[u] += w * x[v];
            y[v] += w * x[u];
        }
        y
    }

    pub fn to_dense(&self) -> Mat {
        let mut m = Mat::zeros(self.dim);
        for i in 0..self.dim {
            m[(i, i)] = self.diag[i];
        }
        for (&(u, v), &w) in self.edges.iter().zip(&self.edge_weights) {
            m[(u, v)] = w;
            m[(v, u)] = w;
        }
        m
    }
}

pub fn assemble_matrix(graph: &Graph, assignment: &WeightAssignment) -> Result<WeightMatrix> {
    let mut edge_weights = Vec::with_capacity(graph.edges.len());
    for (e, &class) in graph.edge_class.iter().enumerate() {
        let w = assignment
            .class_weight(class)
            .ok_or(PetalError::UncoveredEdge(e))?;
        edge_weights.push(w.to_f64().unwrap());
    }
    let mut diag = vec![1.0; graph.node_count];
    for (&(u, v), &w) in graph.edges.iter().zip(&edge_weights) {
        diag[u] -= w;
        diag[v] -= w;
    }
    Ok(WeightMatrix {
        dim: graph.node_count,
        edges: graph.edges.clone(),
        edge_weights,
        diag,
    })
}
