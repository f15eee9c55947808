//! Discrete differential operators on hypergraphs: gradient, divergence,
//! Laplacian, local variation, curvature, the p-Laplacian family and the
//! smoothness functionals they differentiate.
//!
//! All operators are pure functions of immutable inputs. The nonlinear
//! operators share one code path parameterized by `p`: the curvature is
//! the 1-Laplacian, the linear Laplacian is the 2-Laplacian.

use crate::error::{Error, Result};
use crate::functions::{EdgeFlow, VertexFunction};
use crate::hypergraph::Hypergraph;
use crate::sparse::CsrMatrix;

/// Regularizer added under the square root of every local variation so the
/// inverse-variation coefficients stay finite.
pub const DEFAULT_EPSILON: f64 = 1e-10;

/// Per-vertex local variation ||d_u f||, floored away from zero by epsilon.
#[derive(Debug, Clone)]
pub struct LocalVariationProfile {
    values: Vec<f64>,
    epsilon: f64,
}

impl LocalVariationProfile {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

/// Gradient: one value per hyperedge and ordered pair of distinct members,
/// (df)_{uv} = sqrt(w(e)/d(e)) * (f_v - f_u).
pub fn gradient(g: &Hypergraph, f: &VertexFunction) -> Result<EdgeFlow> {
    f.check_len(g, "vertex function")?;
    let fv = f.as_slice();
    let mut flow = EdgeFlow::zeros(g);
    for e in 0..g.num_edges() {
        let members = g.edge_vertices(e);
        let k = members.len();
        let scale = (g.edge_weight(e)? / k as f64).sqrt();
        let values = flow.edge_values_mut(e);
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate() {
                if i != j {
                    values[i * k + j] = scale * (fv[v] - fv[u]);
                }
            }
        }
    }
    Ok(flow)
}

/// Divergence, the negative adjoint of the gradient:
/// (div F)_v = sum_e sum_u sqrt(w(e)/d(e)) * (F_vu - F_uv).
pub fn divergence(g: &Hypergraph, flow: &EdgeFlow) -> Result<VertexFunction> {
    flow.check_shape(g, "edge flow")?;
    let mut out = vec![0.0; g.num_vertices()];
    for e in 0..g.num_edges() {
        let members = g.edge_vertices(e);
        let k = members.len();
        let scale = (g.edge_weight(e)? / k as f64).sqrt();
        let values = flow.edge_values(e);
        for (i, &v) in members.iter().enumerate() {
            let mut acc = 0.0;
            for j in 0..k {
                if i != j {
                    acc += values[i * k + j] - values[j * k + i];
                }
            }
            out[v] += scale * acc;
        }
    }
    Ok(VertexFunction::new(out))
}

/// Laplacian applied to f: (Lf)_v = f_v d(v) - sum_{e ∋ v} (w(e)/d(e)) sum_{u ∈ e} f_u.
pub fn laplacian_apply(g: &Hypergraph, f: &VertexFunction) -> Result<VertexFunction> {
    f.check_len(g, "vertex function")?;
    let fv = f.as_slice();
    // Per-edge member sums first; the inner sum over u includes u = v.
    let edge_sums: Vec<f64> = (0..g.num_edges())
        .map(|e| g.edge_vertices(e).iter().map(|&u| fv[u]).sum())
        .collect();
    let mut out = vec![0.0; g.num_vertices()];
    for v in 0..g.num_vertices() {
        let mut acc = fv[v] * g.vertex_degrees()[v];
        for &e in g.edges_of(v) {
            acc -= g.edge_weights()[e] / g.edge_vertices(e).len() as f64 * edge_sums[e];
        }
        out[v] = acc;
    }
    Ok(VertexFunction::new(out))
}

/// Assembled Laplacian D_v - H W D_e^{-1} H^T as a sparse symmetric matrix.
pub fn laplacian_matrix(g: &Hypergraph) -> CsrMatrix {
    let pairs = g.shared_pairs();
    let mut rows = Vec::with_capacity(g.num_vertices());
    for v in 0..g.num_vertices() {
        let row = pairs.row(v);
        let diag = g.vertex_degrees()[v] - pairs.row_coeff_sum(v);
        let mut entries = Vec::with_capacity(row.len() + 1);
        let mut diag_placed = false;
        for &(u, c) in row {
            if !diag_placed && u > v {
                entries.push((v, diag));
                diag_placed = true;
            }
            entries.push((u, -c));
        }
        if !diag_placed {
            entries.push((v, diag));
        }
        rows.push(entries);
    }
    CsrMatrix::from_rows(rows)
}

/// Squared raw variations q_u = sum_v c(u,v) (f_v - f_u)^2, without epsilon.
pub(crate) fn variation_sq(g: &Hypergraph, f: &[f64]) -> Vec<f64> {
    let pairs = g.shared_pairs();
    (0..g.num_vertices())
        .map(|u| {
            pairs
                .row(u)
                .iter()
                .map(|&(v, c)| {
                    let d = f[v] - f[u];
                    c * d * d
                })
                .sum()
        })
        .collect()
}

/// Local variation profile ||d_u f|| = sqrt(q_u + epsilon).
pub fn local_variation(
    g: &Hypergraph,
    f: &VertexFunction,
    epsilon: f64,
) -> Result<LocalVariationProfile> {
    f.check_len(g, "vertex function")?;
    if !(epsilon > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let values = variation_sq(g, f.as_slice())
        .into_iter()
        .map(|q| (q + epsilon).sqrt())
        .collect();
    Ok(LocalVariationProfile { values, epsilon })
}

/// Curvature operator, the 1-Laplacian.
pub fn curvature_apply(
    g: &Hypergraph,
    f: &VertexFunction,
    epsilon: f64,
) -> Result<VertexFunction> {
    p_laplacian_apply(g, f, 1.0, epsilon)
}

/// p-Laplacian:
/// (L_p f)_v = 1/2 sum_u c(u,v) (||d_u f||^{p-2} + ||d_v f||^{p-2}) (f_v - f_u),
/// with c(u,v) aggregating w(e)/d(e) over the edges shared by u and v.
pub fn p_laplacian_apply(
    g: &Hypergraph,
    f: &VertexFunction,
    p: f64,
    epsilon: f64,
) -> Result<VertexFunction> {
    f.check_len(g, "vertex function")?;
    if !(p >= 1.0) {
        return Err(Error::InvalidP(p));
    }
    let fv = f.as_slice();
    let pairs = g.shared_pairs();
    let pow: Vec<f64> = variation_sq(g, fv)
        .into_iter()
        .map(|q| (q + epsilon).sqrt().powf(p - 2.0))
        .collect();
    let out = (0..g.num_vertices())
        .map(|v| {
            pairs
                .row(v)
                .iter()
                .map(|&(u, c)| 0.5 * c * (pow[u] + pow[v]) * (fv[v] - fv[u]))
                .sum()
        })
        .collect();
    Ok(VertexFunction::new(out))
}

/// Smoothness functional S_p(f) = (1/(2p)) sum_u ||d_u f||^p.
///
/// Scaled so that its gradient in f is exactly the p-Laplacian; at p = 2,
/// f . (Lf) = 2 S_2(f). `epsilon` may be 0 here to evaluate the
/// un-regularized functional.
pub fn smoothness(g: &Hypergraph, f: &VertexFunction, p: f64, epsilon: f64) -> Result<f64> {
    f.check_len(g, "vertex function")?;
    if !(p >= 1.0) {
        return Err(Error::InvalidP(p));
    }
    let total: f64 = variation_sq(g, f.as_slice())
        .into_iter()
        .map(|q| (q + epsilon).powf(p / 2.0))
        .sum();
    Ok(total / (2.0 * p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn triangle() -> Hypergraph {
        Hypergraph::build(3, &[vec![0, 1, 2]], None).unwrap()
    }

    #[test]
    fn gradient_of_constant_is_zero() {
        let g = triangle();
        let flow = gradient(&g, &VertexFunction::constant(3, 4.2)).unwrap();
        assert!(flow.edge_values(0).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn gradient_triangle_value() {
        let g = triangle();
        let f = VertexFunction::new(vec![1.0, 0.0, 0.0]);
        let flow = gradient(&g, &f).unwrap();
        let expected = -(1.0f64 / 3.0).sqrt();
        assert_abs_diff_eq!(flow.value(&g, 0, 0, 1).unwrap(), expected, epsilon = 1e-15);
    }

    #[test]
    fn gradient_is_antisymmetric() {
        let g = Hypergraph::build(4, &[vec![0, 1, 2], vec![1, 2, 3]], Some(&[1.5, 0.5])).unwrap();
        let f = VertexFunction::new(vec![0.3, -1.2, 2.0, 0.7]);
        let flow = gradient(&g, &f).unwrap();
        for e in 0..g.num_edges() {
            let members = g.edge_vertices(e);
            for &u in members {
                for &v in members {
                    if u != v {
                        let a = flow.value(&g, e, u, v).unwrap();
                        let b = flow.value(&g, e, v, u).unwrap();
                        assert_eq!(a, -b);
                    }
                }
            }
        }
    }

    #[test]
    fn divergence_of_zero_flow() {
        let g = triangle();
        let out = divergence(&g, &EdgeFlow::zeros(&g)).unwrap();
        assert!(out.as_slice().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn divergence_of_symmetric_flow_is_zero() {
        let g = triangle();
        let mut flow = EdgeFlow::zeros(&g);
        let values = flow.edge_values_mut(0);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    values[i * 3 + j] = (i + j) as f64; // F_uv = F_vu
                }
            }
        }
        let out = divergence(&g, &flow).unwrap();
        assert!(out.as_slice().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn laplacian_of_constant_is_zero() {
        let g = triangle();
        let out = laplacian_apply(&g, &VertexFunction::constant(3, -3.7)).unwrap();
        for &v in out.as_slice() {
            assert_abs_diff_eq!(v, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn laplacian_triangle_value() {
        let g = triangle();
        let f = VertexFunction::new(vec![1.0, 0.0, 0.0]);
        let out = laplacian_apply(&g, &f).unwrap();
        assert_abs_diff_eq!(out[0], 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(out[1], -1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(out[2], -1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn laplacian_matrix_pair_edge() {
        let g = Hypergraph::build(2, &[vec![0, 1]], None).unwrap();
        let m = laplacian_matrix(&g);
        assert_eq!(m.get(0, 0), 0.5);
        assert_eq!(m.get(0, 1), -0.5);
        assert_eq!(m.get(1, 0), -0.5);
        assert_eq!(m.get(1, 1), 0.5);
    }

    #[test]
    fn laplacian_zero_row_for_isolated_vertex() {
        let g = Hypergraph::build(3, &[vec![0, 1]], None).unwrap();
        let m = laplacian_matrix(&g);
        assert_eq!(m.get(2, 2), 0.0);
        let f = VertexFunction::new(vec![1.0, -1.0, 5.0]);
        let out = laplacian_apply(&g, &f).unwrap();
        assert_eq!(out[2], 0.0);
    }

    #[test]
    fn local_variation_floor() {
        let g = triangle();
        let profile = local_variation(&g, &VertexFunction::constant(3, 1.0), 1e-10).unwrap();
        for &v in profile.values() {
            assert_eq!(v, 1e-5);
        }
    }

    #[test]
    fn local_variation_pair_edge() {
        let g = Hypergraph::build(2, &[vec![0, 1]], None).unwrap();
        let f = VertexFunction::new(vec![0.0, 1.0]);
        let profile = local_variation(&g, &f, 1e-10).unwrap();
        assert_abs_diff_eq!(profile.values()[0], (0.5f64 + 1e-10).sqrt(), epsilon = 1e-16);
    }

    #[test]
    fn local_variation_rejects_nonpositive_epsilon() {
        let g = triangle();
        assert!(local_variation(&g, &VertexFunction::zeros(3), 0.0).is_err());
    }

    #[test]
    fn curvature_is_p1() {
        let g = Hypergraph::build(4, &[vec![0, 1, 2], vec![2, 3]], None).unwrap();
        let f = VertexFunction::new(vec![0.9, -0.4, 1.1, 0.2]);
        let kappa = curvature_apply(&g, &f, 1e-10).unwrap();
        let p1 = p_laplacian_apply(&g, &f, 1.0, 1e-10).unwrap();
        assert_eq!(kappa.as_slice(), p1.as_slice());
    }

    #[test]
    fn curvature_of_constant_is_zero() {
        let g = triangle();
        let out = curvature_apply(&g, &VertexFunction::constant(3, 2.0), 1e-10).unwrap();
        assert!(out.as_slice().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn p2_matches_linear_laplacian() {
        let g = Hypergraph::build(5, &[vec![0, 1, 2], vec![2, 3, 4], vec![0, 4]], None).unwrap();
        let f = VertexFunction::new(vec![1.0, -0.5, 0.25, 2.0, -1.5]);
        let lin = laplacian_apply(&g, &f).unwrap();
        let p2 = p_laplacian_apply(&g, &f, 2.0, 1e-10).unwrap();
        for v in 0..5 {
            assert_abs_diff_eq!(lin[v], p2[v], epsilon = 1e-10);
        }
    }

    #[test]
    fn p_laplacian_rejects_p_below_one() {
        let g = triangle();
        let f = VertexFunction::zeros(3);
        assert!(matches!(
            p_laplacian_apply(&g, &f, 0.5, 1e-10),
            Err(Error::InvalidP(_))
        ));
        assert!(matches!(smoothness(&g, &f, 0.99, 0.0), Err(Error::InvalidP(_))));
    }

    #[test]
    fn p3_pair_edge_value() {
        let g = Hypergraph::build(2, &[vec![0, 1]], None).unwrap();
        let f = VertexFunction::new(vec![0.0, 1.0]);
        let out = p_laplacian_apply(&g, &f, 3.0, 1e-10).unwrap();
        // Both variations equal sqrt(1/2 + eps); the single pair gives
        // 1/2 * 1/2 * 2 sqrt(1/2 + eps) at v = 1.
        let expected = 0.5 * (0.5f64 + 1e-10).sqrt();
        assert_abs_diff_eq!(out[1], expected, epsilon = 1e-15);
        assert_abs_diff_eq!(out[0], -expected, epsilon = 1e-15);
    }

    #[test]
    fn smoothness_of_constant_vanishes() {
        let g = triangle();
        let s = smoothness(&g, &VertexFunction::constant(3, 5.0), 3.0, 0.0).unwrap();
        assert_eq!(s, 0.0);
    }

    #[test]
    fn smoothness_triangle_value() {
        // Squared variations for f = (1,0,0) on {0,1,2} are (2/3, 1/3, 1/3);
        // S_2 = (1/4) * 4/3 = 1/3 in the scaling whose gradient is the
        // Laplacian.
        let g = triangle();
        let f = VertexFunction::new(vec![1.0, 0.0, 0.0]);
        let s = smoothness(&g, &f, 2.0, 0.0).unwrap();
        assert_abs_diff_eq!(s, 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn quadratic_form_matches_smoothness() {
        let g = Hypergraph::build(5, &[vec![0, 1, 2, 3], vec![3, 4], vec![0, 4]], None).unwrap();
        let f = VertexFunction::new(vec![0.3, -1.0, 0.7, 2.1, -0.2]);
        let lf = laplacian_apply(&g, &f).unwrap();
        let s2 = smoothness(&g, &f, 2.0, 0.0).unwrap();
        assert_abs_diff_eq!(f.inner(&lf), 2.0 * s2, epsilon = 1e-12);
    }

    #[test]
    fn size_mismatch_is_reported() {
        let g = triangle();
        let short = VertexFunction::zeros(2);
        assert!(matches!(
            laplacian_apply(&g, &short),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(matches!(gradient(&g, &short), Err(Error::SizeMismatch { .. })));
    }
}
