//! The stable branched surface of a veering triangulation, its dual graph,
//! the sector decomposition of its 2-cells, the flow graph, and the branch
//! equations that define carried surface classes.

mod branch;
mod flow;
mod sectors;

use serde::Serialize;
use thiserror::Error;

use crate::tri::{EdgeId, FaceId, TetId, TriError, ValidationReport, VeeringTriangulation};

pub use branch::{pairing, pairing_opposite, BranchEquations, FaceClass};
pub use flow::{
    flow_graph, flow_graph_with_routes, FlowEdge, FlowEdgeKind, FlowGraph, Route, RouteTarget,
};
pub use sectors::{build_sectors, Sector, SectorComplex, Side};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BsurfError {
    #[error("triangulation failed validation (offending edges {:?})", .0.offending_edges())]
    Invalid(Box<ValidationReport>),
    #[error(transparent)]
    Tri(#[from] TriError),
    #[error("sector tracing failed at edge {edge}: {reason}")]
    Trace { edge: EdgeId, reason: String },
    #[error("tet {tet}: flow graph edges {found:?} disagree with the standard-position count")]
    Reconciliation { tet: TetId, found: Vec<u8> },
    #[error("flow graph edge {0} does not exist")]
    UnknownFlowEdge(usize),
    #[error("edge sequence is not a closed walk (break after position {0})")]
    NotClosed(usize),
    #[error("empty cycle")]
    EmptyCycle,
    #[error("face class has {found} weights, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("face weights violate the branch equation of edge {edge}")]
    NotASolution { edge: EdgeId },
    #[error("flow graph edge {0} has no recorded route")]
    MissingRoute(usize),
}

pub(crate) fn require_valid(tri: &VeeringTriangulation) -> Result<(), BsurfError> {
    let report = tri.validate();
    if report.ok {
        Ok(())
    } else {
        Err(BsurfError::Invalid(Box::new(report)))
    }
}

/// One dual edge per face, directed from the tetrahedron below the face to the one above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualEdge {
    pub face: FaceId,
    pub below: TetId,
    pub above: TetId,
}

/// The dual graph of the triangulation: vertices are tetrahedra and the
/// directed edges, indexed by face, are the branch lines of the branched surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualGraph {
    pub num_vertices: usize,
    pub edges: Vec<DualEdge>,
}

impl DualGraph {
    pub fn out_degree(&self, t: TetId) -> usize {
        self.edges.iter().filter(|e| e.below == t).count()
    }

    pub fn in_degree(&self, t: TetId) -> usize {
        self.edges.iter().filter(|e| e.above == t).count()
    }
}

pub fn dual_graph(tri: &VeeringTriangulation) -> Result<DualGraph, BsurfError> {
    require_valid(tri)?;
    let edges = (0..tri.num_faces())
        .map(|f| {
            let [(a, fa), (b, _)] = tri.face_slots(f);
            let (below, above) = if tri.is_top_face(a, fa) {
                (a, b)
            } else {
                (b, a)
            };
            DualEdge {
                face: f,
                below,
                above,
            }
        })
        .collect();
    Ok(DualGraph {
        num_vertices: tri.num_tets(),
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_graph_is_two_in_two_out() {
        for text in [
            include_str!("../../fixtures/fig8.json"),
            include_str!("../../fixtures/m016.json"),
            include_str!("../../fixtures/m203.json"),
        ] {
            let tri = VeeringTriangulation::from_json(text).unwrap();
            let g = dual_graph(&tri).unwrap();
            assert_eq!(g.edges.len(), 2 * tri.num_tets());
            for t in 0..tri.num_tets() {
                assert_eq!(g.out_degree(t), 2);
                assert_eq!(g.in_degree(t), 2);
            }
        }
    }

    #[test]
    fn invalid_triangulation_is_refused() {
        let tri =
            VeeringTriangulation::from_json(include_str!("../../fixtures/bad_angle.json")).unwrap();
        assert!(matches!(dual_graph(&tri), Err(BsurfError::Invalid(_))));
    }
}
