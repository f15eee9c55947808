//! Function spaces over a hypergraph: real-valued vertex functions and
//! edge flows (one real value per ordered pair of distinct co-members of
//! each hyperedge).

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// A real value per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexFunction {
    values: Vec<f64>,
}

impl VertexFunction {
    pub fn new(values: Vec<f64>) -> Self {
        debug_assert!(values.iter().all(|v| v.is_finite()));
        Self { values }
    }

    pub fn zeros(n: usize) -> Self {
        Self { values: vec![0.0; n] }
    }

    pub fn constant(n: usize, c: f64) -> Self {
        Self { values: vec![c; n] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }

    /// Inner product on the vertex space, sum_v f_v g_v.
    pub fn inner(&self, other: &VertexFunction) -> f64 {
        debug_assert_eq!(self.len(), other.len());
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Max-norm of the values.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub(crate) fn check_len(&self, g: &Hypergraph, what: &'static str) -> Result<()> {
        if self.len() != g.num_vertices() {
            return Err(Error::SizeMismatch {
                what,
                got: self.len(),
                expected: g.num_vertices(),
            });
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for VertexFunction {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

impl From<Vec<f64>> for VertexFunction {
    fn from(values: Vec<f64>) -> Self {
        Self::new(values)
    }
}

/// A real value per (hyperedge, ordered pair of distinct members).
///
/// Entries for edge `e` are stored row-major over the edge's member list:
/// the value for the ordered pair `(members[i], members[j])` sits at
/// `i * d(e) + j`. Diagonal slots (`i == j`) exist for addressing
/// convenience and are identically zero.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeFlow {
    per_edge: Vec<Vec<f64>>,
}

impl EdgeFlow {
    /// All-zero flow shaped to `g`.
    pub fn zeros(g: &Hypergraph) -> Self {
        let per_edge = (0..g.num_edges())
            .map(|e| vec![0.0; g.edge_vertices(e).len().pow(2)])
            .collect();
        Self { per_edge }
    }

    pub fn num_edges(&self) -> usize {
        self.per_edge.len()
    }

    /// Raw row-major values for one edge.
    pub fn edge_values(&self, e: usize) -> &[f64] {
        &self.per_edge[e]
    }

    pub fn edge_values_mut(&mut self, e: usize) -> &mut [f64] {
        &mut self.per_edge[e]
    }

    /// Value for the ordered pair `(u, v)` inside edge `e`, addressed by
    /// vertex ids.
    pub fn value(&self, g: &Hypergraph, e: usize, u: usize, v: usize) -> Result<f64> {
        let members = g.edge_vertices(e);
        let iu = members
            .binary_search(&u)
            .map_err(|_| Error::IndexOutOfRange {
                what: "edge member",
                index: u,
                size: members.len(),
            })?;
        let iv = members
            .binary_search(&v)
            .map_err(|_| Error::IndexOutOfRange {
                what: "edge member",
                index: v,
                size: members.len(),
            })?;
        Ok(self.per_edge[e][iu * members.len() + iv])
    }

    /// Inner product on the edge space: sum over edges and ordered pairs.
    pub fn inner(&self, other: &EdgeFlow) -> f64 {
        debug_assert_eq!(self.per_edge.len(), other.per_edge.len());
        self.per_edge
            .iter()
            .zip(&other.per_edge)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>())
            .sum()
    }

    pub(crate) fn check_shape(&self, g: &Hypergraph, what: &'static str) -> Result<()> {
        if self.per_edge.len() != g.num_edges() {
            return Err(Error::SizeMismatch {
                what,
                got: self.per_edge.len(),
                expected: g.num_edges(),
            });
        }
        for e in 0..g.num_edges() {
            let expected = g.edge_vertices(e).len().pow(2);
            if self.per_edge[e].len() != expected {
                return Err(Error::SizeMismatch {
                    what,
                    got: self.per_edge[e].len(),
                    expected,
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Hypergraph;

    #[test]
    fn vertex_function_basics() {
        let f = VertexFunction::new(vec![1.0, -2.0, 0.5]);
        assert_eq!(f.len(), 3);
        assert_eq!(f[1], -2.0);
        assert_eq!(f.sup_norm(), 2.0);
        let g = VertexFunction::new(vec![2.0, 1.0, 4.0]);
        assert_eq!(f.inner(&g), 1.0 * 2.0 - 2.0 + 0.5 * 4.0);
    }

    #[test]
    fn edge_flow_addressing() {
        let g = Hypergraph::build(3, &[vec![0, 1, 2]], None).unwrap();
        let mut flow = EdgeFlow::zeros(&g);
        assert_eq!(flow.edge_values(0).len(), 9);
        flow.edge_values_mut(0)[0 * 3 + 2] = 7.0;
        assert_eq!(flow.value(&g, 0, 0, 2).unwrap(), 7.0);
        assert_eq!(flow.value(&g, 0, 2, 0).unwrap(), 0.0);
        assert!(flow.value(&g, 0, 0, 5).is_err());
    }
}
