//! Eigenvalue analysis: stratified quotient matrices, SLEM by full-graph
//! and quotient routes, and evaluators for the printed closed-form
//! equations (which feed the audit — they are never the source of truth,
//! since they demonstrably disagree with the tables on some instances).

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{PetalError, Result};
use crate::linalg::{self, eig_symmetric, Mat};
use crate::topology::{CoreKind, PetalSpec, Profile};
use crate::weights::{WeightAssignment, WeightMatrix};

/// Eigenvalues within this distance of 1.0 count as the unit eigenvalue.
const UNIT_TOL: f64 = 1e-9;
const SCAN_POINTS: usize = 10_000;
const BISECT_TOL: f64 = 1e-12;

/// The stratified quotient blocks of a petal weight matrix.
///
/// `w1` acts on the per-level averages and carries the Perron vector `v`;
/// `w2` acts on across-leaf differences; `w3`, when present, on
/// within-leaf differences that vanish at both leaf endpoints.
#[derive(Debug, Clone)]
pub struct QuotientPair {
    pub w1: Mat,
    pub w2: Mat,
    pub w3: Option<Mat>,
    /// Unit Perron vector of w1, entrywise positive.
    pub v: Vec<f64>,
    pub core: CoreKind,
    /// Expansion basis for the primal certificate vector z1, one vector
    /// per weight class (the beta vectors on a single hub, the alpha
    /// vectors including alpha_0 on a complete core).
    pub z1_basis: Vec<Vec<f64>>,
    /// Expansion basis for the dual certificate vector z2 (the alpha
    /// vectors), aligned classwise with `z1_basis`.
    pub z2_basis: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlemSource {
    FullGraph,
    Quotient,
    ClosedForm24,
    ClosedForm44,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralReport {
    pub slem: f64,
    /// arccos(slem), the angle variable of the closed forms.
    pub theta: f64,
    pub spectrum_w1: Vec<f64>,
    pub spectrum_w2: Vec<f64>,
    pub source: SlemSource,
    pub convergence_factor: f64,
}

/// Build the quotient blocks for exact class weights.
pub fn quotient_matrices(spec: &PetalSpec, weights: &WeightAssignment) -> Result<QuotientPair> {
    quotient_matrices_f64(spec.core, spec.n, &spec.profile(), &weights.to_f64_vec())
}

/// Same, from a raw class-weight vector (core weight first on complete
/// cores). This is the surface the optimality oracle walks.
pub fn quotient_matrices_f64(
    core: CoreKind,
    n: usize,
    profile: &Profile,
    class_weights: &[f64],
) -> Result<QuotientPair> {
    let m = profile.len();
    let expected = match core {
        CoreKind::SingleHub => m,
        CoreKind::CompleteCore => m + 1,
    };
    if class_weights.len() != expected {
        return Err(PetalError::DimensionMismatch(format!(
            "{expected} class weights expected, got {}",
            class_weights.len()
        )));
    }
    let (core_w, depth_w) = match core {
        CoreKind::SingleHub => (None, class_weights),
        CoreKind::CompleteCore => (Some(class_weights[0]), &class_weights[1..]),
    };

    // W1 = I - sum_i w_i alpha_i alpha_i^T on levels 0..=m
    let mut w1 = Mat::identity(m + 1);
    let mut alphas: Vec<Vec<f64>> = Vec::with_capacity(m);
    for (idx, d) in profile.depths.iter().enumerate() {
        let i = idx + 1; // depth index, couples levels i-1 and i
        let k = d.k as f64;
        let mut alpha = vec![0.0; m + 1];
        if i == 1 {
            let amp = match core {
                CoreKind::SingleHub => (n as f64 * k).sqrt(),
                CoreKind::CompleteCore => k.sqrt(),
            };
            alpha[0] = amp;
            alpha[1] = -1.0;
        } else if d.contract {
            alpha[i - 1] = 1.0;
            alpha[i] = -k.sqrt();
        } else {
            alpha[i - 1] = k.sqrt();
            alpha[i] = -1.0;
        }
        w1.sub_rank_one(depth_w[idx], &alpha);
        alphas.push(alpha);
    }

    // Perron vector: square roots of the stratum sizes.
    let widths = profile.widths();
    let mut v: Vec<f64> = (0..=m)
        .map(|lvl| {
            let size = if lvl == 0 {
                match core {
                    CoreKind::SingleHub => 1,
                    CoreKind::CompleteCore => n,
                }
            } else {
                n * widths[lvl]
            };
            (size as f64).sqrt()
        })
        .collect();
    let nv = linalg::norm(&v);
    for x in &mut v {
        *x /= nv;
    }

    // W2: across-leaf difference block. Single hub: hub pinned at zero,
    // trailing principal submatrix of W1. Complete core: rank-one downdate
    // of W1 by the core clique coupling.
    let w2 = match core {
        CoreKind::SingleHub => w1.block(1, m + 1),
        CoreKind::CompleteCore => {
            let mut w2 = w1.clone();
            let mut e0 = vec![0.0; m + 1];
            e0[0] = 1.0;
            w2.sub_rank_one(n as f64 * core_w.unwrap(), &e0);
            w2
        }
    };

    // W3: within-leaf differences vanishing at both endpoints; exists when
    // the deepest level merges k >= 2 siblings.
    let last = profile.depths.last().unwrap();
    let w3 = if m >= 2 && last.contract && last.k >= 2 {
        Some(match core {
            CoreKind::SingleHub => w2.leading(m - 1),
            CoreKind::CompleteCore => w2.block(1, m),
        })
    } else {
        None
    };

    // Certificate expansion bases, one vector per class.
    let (z1_basis, z2_basis) = match core {
        CoreKind::SingleHub => {
            // beta vectors on levels 1..=m
            let mut betas = Vec::with_capacity(m);
            for (idx, d) in profile.depths.iter().enumerate() {
                let i = idx + 1;
                let k = d.k as f64;
                let mut beta = vec![0.0; m];
                if i == 1 {
                    beta[0] = -1.0;
                } else if d.contract {
                    beta[i - 2] = 1.0;
                    beta[i - 1] = -k.sqrt();
                } else {
                    beta[i - 2] = k.sqrt();
                    beta[i - 1] = -1.0;
                }
                betas.push(beta);
            }
            (betas, alphas)
        }
        CoreKind::CompleteCore => {
            let mut a0 = vec![0.0; m + 1];
            a0[0] = -(n as f64).sqrt();
            let mut all = vec![a0];
            all.extend(alphas);
            (all.clone(), all)
        }
    };

    Ok(QuotientPair {
        w1,
        w2,
        w3,
        v,
        core,
        z1_basis,
        z2_basis,
    })
}

fn slem_of_spectrum(values: &[f64]) -> Result<(f64, usize)> {
    // exactly one unit eigenvalue, then max modulus over the rest
    let unit = values
        .iter()
        .filter(|&&l| (l - 1.0).abs() <= UNIT_TOL)
        .count();
    if unit != 1 {
        return Err(PetalError::MultipleUnitEigenvalues);
    }
    let unit_idx = values
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| (*a - 1.0).abs().partial_cmp(&(*b - 1.0).abs()).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    Ok((
        values
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != unit_idx)
            .map(|(_, l)| l.abs())
            .fold(0.0, f64::max),
        unit_idx,
    ))
}

/// SLEM from the full explicit weight matrix.
pub fn slem_full(w: &WeightMatrix) -> Result<SpectralReport> {
    let eig = eig_symmetric(&w.to_dense())?;
    let (slem, _) = slem_of_spectrum(&eig.values)?;
    Ok(SpectralReport {
        slem,
        theta: slem.clamp(-1.0, 1.0).acos(),
        spectrum_w1: eig.values,
        spectrum_w2: Vec::new(),
        source: SlemSource::FullGraph,
        convergence_factor: slem,
    })
}

/// SLEM from the quotient blocks: max modulus over spec(W1) \ {1} and the
/// full spectra of W2 and W3.
pub fn slem_quotient(pair: &QuotientPair) -> Result<SpectralReport> {
    let e1 = eig_symmetric(&pair.w1)?;
    let e2 = eig_symmetric(&pair.w2)?;
    let (mut slem, _) = slem_of_spectrum(&e1.values)?;
    for l in &e2.values {
        slem = slem.max(l.abs());
    }
    if let Some(w3) = &pair.w3 {
        for l in eig_symmetric(w3)?.values {
            slem = slem.max(l.abs());
        }
    }
    Ok(SpectralReport {
        slem,
        theta: slem.clamp(-1.0, 1.0).acos(),
        spectrum_w1: e1.values,
        spectrum_w2: e2.values,
        source: SlemSource::Quotient,
        convergence_factor: slem,
    })
}

/// Spectral norm of W - 11^T/n, computed on its own eigendecomposition.
pub fn convergence_factor(w: &WeightMatrix) -> Result<f64> {
    let mut d = w.to_dense();
    let c = 1.0 / w.dim as f64;
    for i in 0..w.dim {
        for j in 0..w.dim {
            d[(i, j)] -= c;
        }
    }
    let eig = eig_symmetric(&d)?;
    Ok(eig.values.iter().map(|l| l.abs()).fold(0.0, f64::max))
}

/// Sign-change roots of `f` on the open interval (a, b): dense scan plus
/// bisection.
pub(crate) fn scan_roots<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> Vec<f64> {
    let h = (b - a) / SCAN_POINTS as f64;
    let mut roots = Vec::new();
    let mut x0 = a + h;
    let mut f0 = f(x0);
    for i in 2..SCAN_POINTS {
        let x1 = a + i as f64 * h;
        let f1 = f(x1);
        if f0 == 0.0 {
            roots.push(x0);
        } else if f0 * f1 < 0.0 {
            let (mut lo, mut hi) = (x0, x1);
            let (mut flo, _) = (f0, f1);
            while hi - lo > BISECT_TOL {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid);
                if fm == 0.0 {
                    lo = mid;
                    break;
                }
                if flo * fm < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    if f0 == 0.0 {
        roots.push(x0);
    }
    roots
}

/// Roots in (0, pi) of the printed symmetric-petal angle equation
/// (nk-2)(sin((m-1)t) + sin((m+1)t)) + 2nk sin(mt) = 0.
///
/// Returned as-is for the audit; cos of the smallest root is NOT asserted
/// to be the SLEM.
pub fn closed_form_theta_24(n: usize, m: usize, k: usize) -> Result<Vec<f64>> {
    if n < 2 || m < 2 || k < 1 {
        return Err(PetalError::InvalidSpec(
            "theta equation needs n >= 2, m >= 2, k >= 1".into(),
        ));
    }
    let (nf, mf, kf) = (n as f64, m as f64, k as f64);
    let f = |t: f64| {
        (nf * kf - 2.0) * (((mf - 1.0) * t).sin() + ((mf + 1.0) * t).sin())
            + 2.0 * nf * kf * (mf * t).sin()
    };
    let h = std::f64::consts::PI / SCAN_POINTS as f64;
    let degenerate = (1..SCAN_POINTS).all(|i| f(i as f64 * h).abs() < 1e-12);
    if degenerate {
        return Err(PetalError::DegenerateEquation);
    }
    Ok(scan_roots(f, 0.0, std::f64::consts::PI))
}

type BigRational = Ratio<BigInt>;

/// Dense polynomial with exact rational coefficients, ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Poly(Vec<BigRational>);

impl Poly {
    fn constant(c: BigRational) -> Poly {
        Poly(vec![c])
    }

    fn shift_up(&self, by: usize) -> Poly {
        let mut c = vec![BigRational::zero(); by];
        c.extend(self.0.iter().cloned());
        Poly(c)
    }

    fn scale(&self, f: &BigRational) -> Poly {
        Poly(self.0.iter().map(|c| c * f).collect())
    }

    fn sub(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut c = vec![BigRational::zero(); n];
        for (i, x) in self.0.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in other.0.iter().enumerate() {
            c[i] -= x;
        }
        Poly(c)
    }

    fn eval(&self, s: f64) -> f64 {
        self.0
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * s + c.to_f64().unwrap())
    }
}

fn big(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

fn big_ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The recursion polynomials of the CCS characteristic condition:
/// f0 = 1, f1 = s/k, f2 = (k+1)s^2/k - 1, f_i = 2s f_{i-1} - f_{i-2}.
pub(crate) fn ccs_recursion_polys(m: usize, k: usize) -> Vec<Poly> {
    let kf = k as i64;
    let mut fs = vec![
        Poly::constant(big(1)),
        Poly(vec![BigRational::zero(), big_ratio(1, kf)]),
        Poly(vec![big(-1), BigRational::zero(), big_ratio(kf + 1, kf)]),
    ];
    for i in 3..=m {
        let prev = fs[i - 1].shift_up(1).scale(&big(2));
        fs.push(prev.sub(&fs[i - 2]));
    }
    fs
}

/// Real roots in the open interval (0, 1) of the printed CCS condition
/// (2(k+1)s^2 - 1) f_{m-1}(s) = (k+1) s f_{m-2}(s).
///
/// Audit input only; may legitimately have no root in range.
pub fn ccs_characteristic_44(m: usize, k: usize) -> Result<Vec<f64>> {
    if m < 2 || k < 1 {
        return Err(PetalError::InvalidSpec(
            "CCS characteristic needs m >= 2, k >= 1".into(),
        ));
    }
    let fs = ccs_recursion_polys(m, k);
    let kf = k as i64;
    // lhs = (2(k+1)s^2 - 1) f_{m-1}
    let lhs = fs[m - 1]
        .shift_up(2)
        .scale(&big(2 * (kf + 1)))
        .sub(&fs[m - 1]);
    // rhs = (k+1) s f_{m-2}
    let rhs = fs[m - 2].shift_up(1).scale(&big(kf + 1));
    let p = lhs.sub(&rhs);
    Ok(scan_roots(|s| p.eval(s), 0.0, 1.0))
}

impl SpectralReport {
    pub fn to_json(&self, spec: Option<&PetalSpec>) -> serde_json::Value {
        serde_json::json!({
            "spec": spec.map(|s| s.describe()),
            "slem": self.slem,
            "theta": self.theta,
            "source": self.source,
            "spectrum_w1": self.spectrum_w1,
            "spectrum_w2": self.spectrum_w2,
            "convergence_factor": self.convergence_factor,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::build_graph;
    use crate::weights::{assemble_matrix, optimal_weights};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn hub(n: usize, m: usize, k: usize) -> PetalSpec {
        PetalSpec::path_bundle(CoreKind::SingleHub, n, m, k).unwrap()
    }

    fn ccs(n: usize, m: usize, k: usize) -> PetalSpec {
        PetalSpec::path_bundle(CoreKind::CompleteCore, n, m, k).unwrap()
    }

    fn quotients(spec: &PetalSpec) -> QuotientPair {
        quotient_matrices(spec, &optimal_weights(spec).unwrap()).unwrap()
    }

    fn full_slem(spec: &PetalSpec) -> f64 {
        let g = build_graph(spec).unwrap();
        let w = assemble_matrix(&g, &optimal_weights(spec).unwrap()).unwrap();
        slem_full(&w).unwrap().slem
    }

    #[test]
    fn hub_222_quotient_blocks() {
        let q = quotients(&hub(2, 2, 2));
        let r2 = 2f64.sqrt();
        let want1 = Mat::from_rows(&[
            vec![-1.0 / 3.0, 2.0 / 3.0, 0.0],
            vec![2.0 / 3.0, 1.0 / 3.0, r2 / 3.0],
            vec![0.0, r2 / 3.0, 1.0 / 3.0],
        ]);
        for i in 0..3 {
            for j in 0..3 {
                assert_abs_diff_eq!(q.w1[(i, j)], want1[(i, j)], epsilon = 1e-14);
            }
        }
        let want2 = Mat::from_rows(&[vec![1.0 / 3.0, r2 / 3.0], vec![r2 / 3.0, 1.0 / 3.0]]);
        for i in 0..2 {
            for j in 0..2 {
                assert_abs_diff_eq!(q.w2[(i, j)], want2[(i, j)], epsilon = 1e-14);
            }
        }
        // v proportional to (1, 2, sqrt 2)
        let scale = q.v[0];
        assert_abs_diff_eq!(q.v[1], 2.0 * scale, epsilon = 1e-14);
        assert_abs_diff_eq!(q.v[2], r2 * scale, epsilon = 1e-14);
    }

    #[test]
    fn ccs_221_leaf_difference_block() {
        let q = quotients(&ccs(2, 2, 1));
        let want = Mat::from_rows(&[
            vec![-0.5, 0.5, 0.0],
            vec![0.5, 0.0, 0.5],
            vec![0.0, 0.5, 0.5],
        ]);
        for i in 0..3 {
            for j in 0..3 {
                assert_abs_diff_eq!(q.w2[(i, j)], want[(i, j)], epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn perron_vector_is_fixed_point() {
        for spec in [hub(3, 4, 3), ccs(3, 3, 2), hub(2, 2, 2)] {
            let q = quotients(&spec);
            let w1v = q.w1.matvec(&q.v);
            for (a, b) in w1v.iter().zip(&q.v) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-12);
            }
            assert!(q.v.iter().all(|&x| x > 0.0));
        }
    }

    #[test]
    fn uniform_path_slem_is_cos_pi_over_5() {
        assert_abs_diff_eq!(full_slem(&hub(2, 2, 1)), (PI / 5.0).cos(), epsilon = 1e-10);
    }

    #[test]
    fn complete_graph_uniform_slem_zero() {
        // K_3 with every weight 1/3 averages in one step
        let w = WeightMatrix {
            dim: 3,
            edges: vec![(0, 1), (0, 2), (1, 2)],
            edge_weights: vec![1.0 / 3.0; 3],
            diag: vec![1.0 / 3.0; 3],
        };
        assert_abs_diff_eq!(slem_full(&w).unwrap().slem, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(convergence_factor(&w).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn ccs_222_slem_sqrt7_over_3() {
        assert_abs_diff_eq!(full_slem(&ccs(2, 2, 2)), 7f64.sqrt() / 3.0, epsilon = 1e-10);
    }

    #[test]
    fn quotient_slem_table_values() {
        let s = slem_quotient(&quotients(&hub(2, 2, 2))).unwrap();
        assert_abs_diff_eq!(s.slem, (1.0 + 2f64.sqrt()) / 3.0, epsilon = 1e-10);
        let s = slem_quotient(&quotients(&hub(2, 2, 3))).unwrap();
        assert_abs_diff_eq!(s.slem, 0.825694, epsilon = 1e-6);
        let s = slem_quotient(&quotients(&ccs(3, 3, 1))).unwrap();
        assert_abs_diff_eq!(s.slem, (PI / 8.0).cos(), epsilon = 1e-6);
    }

    #[test]
    fn disconnected_configuration_detected() {
        // two components: eigenvalue one is not simple
        let w = WeightMatrix {
            dim: 4,
            edges: vec![(0, 1), (2, 3)],
            edge_weights: vec![0.5, 0.5],
            diag: vec![0.5; 4],
        };
        assert!(matches!(
            slem_full(&w),
            Err(PetalError::MultipleUnitEigenvalues)
        ));
    }

    #[test]
    fn theta_equation_collapses_at_nk_2() {
        // nk = 2 kills the first term: 4 sin(2t) = 0, smallest root pi/2
        let roots = closed_form_theta_24(2, 2, 1).unwrap();
        assert_abs_diff_eq!(roots[0], PI / 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(roots[0].cos(), 0.0, epsilon = 1e-9);

        let roots = closed_form_theta_24(2, 3, 1).unwrap();
        assert_abs_diff_eq!(roots[0], PI / 3.0, epsilon = 1e-9);
        assert_abs_diff_eq!(roots[0].cos(), 0.5, epsilon = 1e-9);
    }

    #[test]
    fn theta_pi_always_excluded() {
        for (n, m, k) in [(2, 2, 1), (3, 3, 2), (4, 3, 5)] {
            let roots = closed_form_theta_24(n, m, k).unwrap();
            assert!(roots.iter().all(|&t| t < PI - 1e-6));
            assert!(roots.iter().all(|&t| t > 1e-6));
        }
    }

    #[test]
    fn ccs_characteristic_m2_k1() {
        // 4s^3 - 3s = 0 on (0,1): single root sqrt(3)/2
        let roots = ccs_characteristic_44(2, 1).unwrap();
        assert_eq!(roots.len(), 1);
        assert_abs_diff_eq!(roots[0], 3f64.sqrt() / 2.0, epsilon = 1e-10);
    }

    #[test]
    fn ccs_characteristic_m2_k2_has_no_root_in_range() {
        // the only positive root has s^2 = 7/6 > 1
        let roots = ccs_characteristic_44(2, 2).unwrap();
        assert!(roots.is_empty(), "got {roots:?}");
    }

    #[test]
    fn convergence_factor_matches_table() {
        let spec = hub(3, 3, 3);
        let g = build_graph(&spec).unwrap();
        let w = assemble_matrix(&g, &optimal_weights(&spec).unwrap()).unwrap();
        let r = convergence_factor(&w).unwrap();
        assert_abs_diff_eq!(r, 0.93210, epsilon = 5e-5);
        assert_abs_diff_eq!(r, slem_full(&w).unwrap().slem, epsilon = 1e-10);
    }

    #[test]
    fn quotient_agrees_with_full_matrix() {
        for spec in [
            hub(2, 2, 2),
            hub(3, 4, 3),
            ccs(3, 3, 2),
            PetalSpec::new(
                CoreKind::SingleHub,
                2,
                crate::topology::LeafKind::SymmetricG { m: 2, k: 2 },
            )
            .unwrap(),
            PetalSpec::new(
                CoreKind::CompleteCore,
                3,
                crate::topology::LeafKind::AsymmetricG {
                    expand: vec![2, 2],
                    contract: vec![4],
                },
            )
            .unwrap(),
        ] {
            let q = slem_quotient(&quotients(&spec)).unwrap().slem;
            assert_abs_diff_eq!(q, full_slem(&spec), epsilon = 1e-9);
        }
    }

    #[test]
    fn w2_spectrum_mirrors_w1_bottom_on_hub_bundles() {
        for (n, m, k) in [(2, 2, 1), (2, 2, 2), (3, 3, 2), (3, 4, 3)] {
            let q = quotients(&hub(n, m, k));
            let e1 = eig_symmetric(&q.w1).unwrap().values;
            let e2 = eig_symmetric(&q.w2).unwrap().values;
            let lam_max_w2 = *e2.last().unwrap();
            assert_abs_diff_eq!(lam_max_w2, -e1[0], epsilon = 1e-9);
            let s = slem_quotient(&q).unwrap().slem;
            assert_abs_diff_eq!(s, lam_max_w2, epsilon = 1e-9);
        }
    }

    #[test]
    fn ccs_slem_independent_of_leaf_count() {
        let base = slem_quotient(&quotients(&ccs(2, 3, 2))).unwrap().slem;
        for n in 3..=5 {
            let s = slem_quotient(&quotients(&ccs(n, 3, 2))).unwrap().slem;
            assert_abs_diff_eq!(s, base, epsilon = 1e-10);
        }
    }
}
