//! Consensus iteration x(t+1) = W x(t) and convergence-rate measurement.

use serde::{Deserialize, Serialize};

use crate::error::{PetalError, Result};
use crate::topology::{CoreKind, Graph};
use crate::weights::WeightMatrix;

/// Distances below this are treated as having converged to noise.
pub const DISTANCE_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Trajectory {
    /// Normalized distance ||x(t) - mean|| / ||x(0) - mean||, index t.
    pub distances: Vec<f64>,
    pub steps: usize,
    pub initial: String,
    pub scheme: String,
    /// Worst relative drift of the conserved sum over the run.
    pub mass_drift: f64,
}

impl Trajectory {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,distance,scheme\n");
        for (t, d) in self.distances.iter().enumerate() {
            s.push_str(&format!("{t},{d:.16e},{}\n", self.scheme));
        }
        s
    }
}

pub fn run_consensus(
    w: &WeightMatrix,
    x0: &[f64],
    steps: usize,
    scheme: &str,
    initial: &str,
) -> Result<Trajectory> {
    if x0.len() != w.dim {
        return Err(PetalError::DimensionMismatch(format!(
            "x0 of length {} on a {}-node network",
            x0.len(),
            w.dim
        )));
    }
    if steps < 1 {
        return Err(PetalError::DimensionMismatch(
            "need at least one step".into(),
        ));
    }
    let n = w.dim as f64;
    let mean = x0.iter().sum::<f64>() / n;
    let x0_norm = x0.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-300);
    let dist = |x: &[f64]| -> f64 {
        x.iter()
            .map(|v| (v - mean) * (v - mean))
            .sum::<f64>()
            .sqrt()
    };
    let d0 = dist(x0);
    if d0 <= 1e-14 * x0_norm.max(1.0) {
        return Err(PetalError::ConstantInitialVector);
    }

    let sum0: f64 = x0.iter().sum();
    let mut x = x0.to_vec();
    let mut distances = Vec::with_capacity(steps + 1);
    distances.push(1.0);
    let mut mass_drift = 0.0f64;
    for _ in 0..steps {
        x = w.apply(&x);
        let sum: f64 = x.iter().sum();
        mass_drift = mass_drift.max((sum - sum0).abs() / x0_norm);
        distances.push(dist(&x) / d0);
    }
    Ok(Trajectory {
        distances,
        steps,
        initial: initial.to_string(),
        scheme: scheme.to_string(),
        mass_drift,
    })
}

/// Geometric-mean per-step contraction over the last `window` steps that
/// remain above the distance floor. Past the floor the distance is rounding
/// noise, so the window is anchored at the last step above it; Underflow
/// means the trajectory hit the floor before a full window elapsed.
pub fn asymptotic_rate(traj: &Trajectory, window: usize) -> Result<f64> {
    let t_max = traj.distances.len() - 1;
    if window == 0 || window > t_max {
        return Err(PetalError::DimensionMismatch(
            "rate window longer than trajectory".into(),
        ));
    }
    let t_end = traj
        .distances
        .iter()
        .position(|&d| d <= DISTANCE_FLOOR)
        .map_or(t_max, |t| t.saturating_sub(1));
    if t_end < window {
        return Err(PetalError::Underflow);
    }
    Ok((traj.distances[t_end] / traj.distances[t_end - window]).powf(1.0 / window as f64))
}

/// Default reproduction start: unit impulse at the far node of the first
/// leaf; deterministic and excites all symmetry sectors generically.
pub fn impulse_x0(graph: &Graph) -> Vec<f64> {
    let core_nodes = match graph.core {
        CoreKind::SingleHub => 1,
        CoreKind::CompleteCore => graph.n_leaves,
    };
    let leaf_size = (graph.node_count - core_nodes) / graph.n_leaves;
    let mut x = vec![0.0; graph.node_count];
    x[core_nodes + leaf_size - 1] = 1.0;
    x
}
