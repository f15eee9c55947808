//! Hypergraph incidence structure with cached vertex and edge degrees.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// An undirected hypergraph: vertices `0..num_vertices`, hyperedges given as
/// vertex sets of cardinality >= 2, one positive weight per hyperedge.
///
/// Immutable after [`Hypergraph::build`]; all accessors are cheap reads and
/// safe to share across threads.
#[derive(Debug)]
pub struct Hypergraph {
    num_vertices: usize,
    /// Per edge: sorted, deduplicated member list.
    edges: Vec<Vec<usize>>,
    weights: Vec<f64>,
    /// Per vertex: indices of the edges containing it.
    vertex_to_edges: Vec<Vec<usize>>,
    /// d(v) = sum of w(e) over edges containing v.
    vertex_degrees: Vec<f64>,
    /// d(e) = number of members of e.
    edge_degrees: Vec<usize>,
    pairs: OnceLock<SharedPairs>,
}

impl Clone for Hypergraph {
    fn clone(&self) -> Self {
        Self {
            num_vertices: self.num_vertices,
            edges: self.edges.clone(),
            weights: self.weights.clone(),
            vertex_to_edges: self.vertex_to_edges.clone(),
            vertex_degrees: self.vertex_degrees.clone(),
            edge_degrees: self.edge_degrees.clone(),
            pairs: OnceLock::new(),
        }
    }
}

impl Hypergraph {
    /// Builds a hypergraph from hyperedge member lists.
    ///
    /// Members are treated as sets: duplicates within one edge collapse.
    /// Missing `weights` default to 1 for every edge. Edges with fewer than
    /// two distinct members are rejected, as are non-positive weights and
    /// out-of-range vertex indices. Vertices contained in no edge are
    /// permitted (their degree is 0); see [`Hypergraph::isolated_vertices`].
    pub fn build(
        num_vertices: usize,
        hyperedges: &[Vec<usize>],
        weights: Option<&[f64]>,
    ) -> Result<Self> {
        if let Some(w) = weights {
            if w.len() != hyperedges.len() {
                return Err(Error::WeightCountMismatch {
                    got: w.len(),
                    expected: hyperedges.len(),
                });
            }
        }

        let mut edges = Vec::with_capacity(hyperedges.len());
        for (index, members) in hyperedges.iter().enumerate() {
            let mut sorted = members.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() < 2 {
                return Err(Error::EdgeTooSmall {
                    index,
                    size: sorted.len(),
                });
            }
            if let Some(&v) = sorted.iter().find(|&&v| v >= num_vertices) {
                return Err(Error::IndexOutOfRange {
                    what: "vertex",
                    index: v,
                    size: num_vertices,
                });
            }
            edges.push(sorted);
        }

        let weights: Vec<f64> = match weights {
            Some(w) => {
                for (index, &weight) in w.iter().enumerate() {
                    if !(weight > 0.0) || !weight.is_finite() {
                        return Err(Error::NonpositiveWeight { index, weight });
                    }
                }
                w.to_vec()
            }
            None => vec![1.0; edges.len()],
        };

        let edge_degrees: Vec<usize> = edges.iter().map(|m| m.len()).collect();
        let mut vertex_to_edges = vec![Vec::new(); num_vertices];
        let mut vertex_degrees = vec![0.0; num_vertices];
        for (e, members) in edges.iter().enumerate() {
            for &v in members {
                vertex_to_edges[v].push(e);
                vertex_degrees[v] += weights[e];
            }
        }

        let isolated = vertex_degrees.iter().filter(|&&d| d == 0.0).count();
        if isolated > 0 {
            log::warn!("hypergraph has {isolated} isolated vertex(es) with degree 0");
        }

        Ok(Self {
            num_vertices,
            edges,
            weights,
            vertex_to_edges,
            vertex_degrees,
            edge_degrees,
            pairs: OnceLock::new(),
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Cached vertex degree d(v).
    pub fn vertex_degree(&self, v: usize) -> Result<f64> {
        self.check_vertex(v)?;
        Ok(self.vertex_degrees[v])
    }

    /// Cached edge degree d(e) = |e|.
    pub fn edge_degree(&self, e: usize) -> Result<usize> {
        self.check_edge(e)?;
        Ok(self.edge_degrees[e])
    }

    pub fn edge_weight(&self, e: usize) -> Result<f64> {
        self.check_edge(e)?;
        Ok(self.weights[e])
    }

    /// Sorted member list of edge `e`. Panics on an out-of-range index.
    pub fn edge_vertices(&self, e: usize) -> &[usize] {
        &self.edges[e]
    }

    /// Edges containing vertex `v`. Panics on an out-of-range index.
    pub fn edges_of(&self, v: usize) -> &[usize] {
        &self.vertex_to_edges[v]
    }

    /// Incidence h(v, e): 1 exactly when v is a member of e.
    pub fn incidence(&self, v: usize, e: usize) -> bool {
        self.edges[e].binary_search(&v).is_ok()
    }

    pub fn vertex_degrees(&self) -> &[f64] {
        &self.vertex_degrees
    }

    pub fn edge_weights(&self) -> &[f64] {
        &self.weights
    }

    /// Vertices with degree 0 (contained in no hyperedge).
    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices)
            .filter(|&v| self.vertex_degrees[v] == 0.0)
            .collect()
    }

    /// Aggregated co-membership coefficients, built lazily on first use.
    pub(crate) fn shared_pairs(&self) -> &SharedPairs {
        self.pairs.get_or_init(|| SharedPairs::build(self))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.num_vertices {
            return Err(Error::IndexOutOfRange {
                what: "vertex",
                index: v,
                size: self.num_vertices,
            });
        }
        Ok(())
    }

    fn check_edge(&self, e: usize) -> Result<()> {
        if e >= self.edges.len() {
            return Err(Error::IndexOutOfRange {
                what: "edge",
                index: e,
                size: self.edges.len(),
            });
        }
        Ok(())
    }
}

/// For each vertex v, the list of co-members u with the aggregated
/// coefficient c(u, v) = sum over shared edges of w(e)/d(e).
///
/// The coefficient multiplies the pairwise differences in every operator,
/// so aggregating it once per hypergraph turns the per-edge double sums
/// into a single sparse sweep.
#[derive(Debug)]
pub(crate) struct SharedPairs {
    offsets: Vec<usize>,
    /// (co-member id, coefficient), sorted by id within each row.
    entries: Vec<(usize, f64)>,
    /// s(v) = sum over edges containing v of w(e)/d(e).
    row_coeff_sums: Vec<f64>,
}

impl SharedPairs {
    fn build(g: &Hypergraph) -> Self {
        let n = g.num_vertices();
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        let mut row_coeff_sums = vec![0.0; n];
        for e in 0..g.num_edges() {
            let members = g.edge_vertices(e);
            let coeff = g.weights[e] / members.len() as f64;
            for &u in members {
                row_coeff_sums[u] += coeff;
                for &v in members {
                    if u != v {
                        rows[v].push((u, coeff));
                    }
                }
            }
        }

        let mut offsets = Vec::with_capacity(n + 1);
        let mut entries = Vec::new();
        offsets.push(0);
        for row in &mut rows {
            // Sum contributions from all shared edges into one entry per pair.
            row.sort_unstable_by_key(|&(u, _)| u);
            let mut merged: Vec<(usize, f64)> = Vec::with_capacity(row.len());
            for &(u, c) in row.iter() {
                match merged.last_mut() {
                    Some((last, acc)) if *last == u => *acc += c,
                    _ => merged.push((u, c)),
                }
            }
            entries.extend_from_slice(&merged);
            offsets.push(entries.len());
        }

        Self {
            offsets,
            entries,
            row_coeff_sums,
        }
    }

    /// Co-members of `v` with their aggregated coefficients.
    pub(crate) fn row(&self, v: usize) -> &[(usize, f64)] {
        &self.entries[self.offsets[v]..self.offsets[v + 1]]
    }

    /// s(v) = sum over edges containing v of w(e)/d(e).
    pub(crate) fn row_coeff_sum(&self, v: usize) -> f64 {
        self.row_coeff_sums[v]
    }

    pub(crate) fn num_rows(&self) -> usize {
        self.offsets.len() - 1
    }
}
