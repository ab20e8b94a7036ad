//! Weighted digraphs and their growth rates: the dynamical core, cutting the
//! flow graph along a carried surface, the Perron-Frobenius growth rate, and
//! exact closed-walk counts used as an oracle.

mod core;
mod oracle;
mod perron;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bsurf::{flow_graph, BranchEquations, BsurfError, FaceClass, FlowGraph};
use crate::tri::VeeringTriangulation;

pub use self::core::{
    cut, cut_components, dynamical_core, flow_core, restrict_to_component,
    strongly_connected_components, CutComponents,
};
pub use oracle::{
    big_ln, cycle_count_oracle, growth_slope, least_squares_slope, row_sum_growth, CountMatrix,
    ORACLE_CAP,
};
pub use perron::{growth_rate, spectral_radius, GrowthResult, Perron, GROWTH_TOL, MAX_ITERATIONS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("graph has no cycles (empty dynamical core)")]
    EmptyCore,
    #[error("cycle of total weight zero through edges {witness:?}")]
    ZeroWeightCycle { witness: Vec<usize> },
    #[error("Perron iteration did not converge within {iterations} steps")]
    NonConvergence { iterations: usize },
    #[error("n_max {n_max} exceeds the oracle cap {cap}")]
    CapExceeded { n_max: usize, cap: usize },
    #[error("class is not carried: {0}")]
    NotCarried(String),
    #[error(transparent)]
    Bsurf(#[from] BsurfError),
    #[error("component {component} does not exist ({count} components)")]
    UnknownComponent { component: usize, count: usize },
    #[error("flow graph edge {edge} has no owning tetrahedron")]
    MissingTet { edge: usize },
    #[error("expected {expected} weights, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Count edges with multiplicity one each or weighted edges contributing `t^weight`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthMode {
    Unit,
    Weighted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedEdge {
    pub src: usize,
    pub dst: usize,
    pub weight: u64,
    /// Identifier carried through subgraph operations, e.g. the flow graph edge index.
    #[serde(default)]
    pub label: usize,
}

/// A directed multigraph with nonnegative integer edge weights. Vertex
/// indices are stable under taking subgraphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedDigraph {
    pub vertices: usize,
    pub edges: Vec<WeightedEdge>,
}

impl WeightedDigraph {
    pub fn new(vertices: usize) -> WeightedDigraph {
        WeightedDigraph {
            vertices,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, src: usize, dst: usize, weight: u64) -> &mut Self {
        assert!(
            src < self.vertices && dst < self.vertices,
            "edge endpoint out of range"
        );
        let label = self.edges.len();
        self.edges.push(WeightedEdge {
            src,
            dst,
            weight,
            label,
        });
        self
    }

    pub fn from_edges(vertices: usize, edges: &[(usize, usize, u64)]) -> WeightedDigraph {
        let mut g = WeightedDigraph::new(vertices);
        for &(s, d, w) in edges {
            g.add_edge(s, d, w);
        }
        g
    }

    /// The flow graph with every edge weighted by the total face weight of its crossing word.
    pub fn from_flow_graph(phi: &FlowGraph, xi: &[u64]) -> Result<WeightedDigraph, DynamicsError> {
        if xi.len() < phi.faces {
            return Err(DynamicsError::DimensionMismatch {
                expected: phi.faces,
                found: xi.len(),
            });
        }
        let edges = phi
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| WeightedEdge {
                src: e.src,
                dst: e.dst,
                weight: e.crossings.iter().map(|&f| xi[f]).sum(),
                label: i,
            })
            .collect();
        Ok(WeightedDigraph {
            vertices: phi.vertices,
            edges,
        })
    }

    /// The flow graph with unit weights.
    pub fn unit_from_flow_graph(phi: &FlowGraph) -> WeightedDigraph {
        let edges = phi
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| WeightedEdge {
                src: e.src,
                dst: e.dst,
                weight: 1,
                label: i,
            })
            .collect();
        WeightedDigraph {
            vertices: phi.vertices,
            edges,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Vertices with at least one incident edge.
    pub fn active_vertices(&self) -> Vec<usize> {
        let mut used = vec![false; self.vertices];
        for e in &self.edges {
            used[e.src] = true;
            used[e.dst] = true;
        }
        (0..self.vertices).filter(|&v| used[v]).collect()
    }

    /// `A(t)[u][v] = Σ t^weight` over edges `u -> v`.
    pub fn matrix_at(&self, t: f64) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; self.vertices]; self.vertices];
        for e in &self.edges {
            m[e.src][e.dst] += t.powi(e.weight as i32);
        }
        m
    }

    /// Adjacency counts, ignoring weights.
    pub fn count_matrix(&self) -> Vec<Vec<f64>> {
        self.matrix_at(1.0)
    }

    pub fn with_unit_weights(&self) -> WeightedDigraph {
        WeightedDigraph {
            vertices: self.vertices,
            edges: self
                .edges
                .iter()
                .map(|e| WeightedEdge { weight: 1, ..*e })
                .collect(),
        }
    }
}

/// The stretch factor of the class `xi` on one piece of the triangulation cut
/// along `eta`: cut the flow graph, keep its dynamical core inside the
/// component, weight each edge by its pairing with `xi`, and take the
/// weighted growth rate.
pub fn stretch(
    tri: &VeeringTriangulation,
    eta: &FaceClass,
    xi: &[u64],
    component: usize,
) -> Result<GrowthResult, DynamicsError> {
    let eqs = BranchEquations::new(tri)?;
    let xi_class = FaceClass::new(xi.iter().map(|&x| x as i64).collect());
    eqs.check(&xi_class)?;
    let phi = flow_graph(tri)?;
    let core = flow_core(&cut(&phi, eta, &eqs)?);
    let comps = cut_components(tri, eta)?;
    let phi_n = restrict_to_component(&core, tri, &comps, component)?;
    growth_rate(
        &WeightedDigraph::from_flow_graph(&phi_n, xi)?,
        GrowthMode::Weighted,
    )
}
