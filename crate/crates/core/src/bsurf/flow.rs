use serde::{Deserialize, Serialize};

use super::sectors::{build_sectors, SectorComplex, Side};
use super::BsurfError;
use crate::tri::{EdgeId, FaceId, TetId, VeeringTriangulation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowEdgeKind {
    /// From the bottom edge of the owning tetrahedron to its top edge.
    FromBottom,
    /// From an equatorial edge of the owning tetrahedron to its top edge.
    FromEquatorial,
}

/// A flow graph edge. `crossings` lists the faces (dual edges of the branched
/// surface) crossed on the way from the source sector to the target triple point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowEdge {
    pub src: EdgeId,
    pub dst: EdgeId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tet: Option<TetId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<FlowEdgeKind>,
    pub crossings: Vec<FaceId>,
}

/// The flow graph: one vertex per edge of the triangulation and three edges
/// into the top edge of every tetrahedron. Edges are ordered by owning
/// tetrahedron, then kind, then source corner.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowGraph {
    pub vertices: usize,
    #[serde(default)]
    pub faces: usize,
    pub edges: Vec<FlowEdge>,
}

impl FlowGraph {
    pub fn from_json(text: &str) -> Result<FlowGraph, serde_json::Error> {
        let g: FlowGraph = serde_json::from_str(text)?;
        let faces = g
            .edges
            .iter()
            .flat_map(|e| e.crossings.iter().map(|f| f + 1))
            .max()
            .unwrap_or(0);
        let bad = g
            .edges
            .iter()
            .any(|e| e.src >= g.vertices || e.dst >= g.vertices);
        if bad {
            return Err(serde::de::Error::custom(
                "flow graph edge endpoint out of range",
            ));
        }
        Ok(FlowGraph {
            faces: g.faces.max(faces),
            ..g
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("flow graphs always serialise")
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn crossing_word(&self, edge: usize) -> Result<&[FaceId], BsurfError> {
        self.edges
            .get(edge)
            .map(|e| e.crossings.as_slice())
            .ok_or(BsurfError::UnknownFlowEdge(edge))
    }

    /// Multiplicity of each face in the crossing word of `edge`.
    pub fn face_counts(&self, edge: usize) -> Vec<u64> {
        let mut counts = vec![0u64; self.faces];
        for &f in &self.edges[edge].crossings {
            counts[f] += 1;
        }
        counts
    }

    /// The subgraph keeping edges where `keep` is true; vertex indices are unchanged.
    pub fn subgraph(&self, keep: &[bool]) -> FlowGraph {
        FlowGraph {
            vertices: self.vertices,
            faces: self.faces,
            edges: self
                .edges
                .iter()
                .zip(keep)
                .filter(|(_, &k)| k)
                .map(|(e, _)| e.clone())
                .collect(),
        }
    }

    /// Checks that the edge indices form a closed walk.
    pub fn check_cycle(&self, cycle: &[usize]) -> Result<(), BsurfError> {
        if cycle.is_empty() {
            return Err(BsurfError::EmptyCycle);
        }
        for &i in cycle {
            if i >= self.edges.len() {
                return Err(BsurfError::UnknownFlowEdge(i));
            }
        }
        for k in 0..cycle.len() {
            let next = cycle[(k + 1) % cycle.len()];
            if self.edges[cycle[k]].dst != self.edges[next].src {
                return Err(BsurfError::NotClosed(k));
            }
        }
        Ok(())
    }

    /// All closed walks of length at most `max_len`, each listed once up to
    /// rotation, as its lexicographically least rotation.
    pub fn closed_walks(&self, max_len: usize) -> Vec<Vec<usize>> {
        let mut out_edges = vec![Vec::new(); self.vertices];
        for (i, e) in self.edges.iter().enumerate() {
            out_edges[e.src].push(i);
        }
        let mut walks = Vec::new();
        let mut path = Vec::new();
        for first in 0..self.edges.len() {
            path.clear();
            path.push(first);
            self.extend_walks(first, max_len, &out_edges, &mut path, &mut walks);
        }
        walks
    }

    fn extend_walks(
        &self,
        first: usize,
        max_len: usize,
        out_edges: &[Vec<usize>],
        path: &mut Vec<usize>,
        walks: &mut Vec<Vec<usize>>,
    ) {
        let last = self.edges[*path.last().expect("path is nonempty")].dst;
        if last == self.edges[first].src && is_least_rotation(path) {
            walks.push(path.clone());
        }
        if path.len() == max_len {
            return;
        }
        for &next in &out_edges[last] {
            if next >= first {
                path.push(next);
                self.extend_walks(first, max_len, out_edges, path, walks);
                path.pop();
            }
        }
    }
}

fn is_least_rotation(path: &[usize]) -> bool {
    (1..path.len()).all(|r| {
        let rotated = path[r..].iter().chain(&path[..r]);
        path.iter().le(rotated)
    })
}

/// Where a flow graph edge ends inside the sector of its source edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RouteTarget {
    /// The corner at this index (at least 1) up the given side.
    Side(Side, usize),
    /// The top triple point of the sector.
    Top,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Route {
    pub sector: EdgeId,
    pub target: RouteTarget,
}

impl Route {
    /// Faces crossed travelling up the canonical side; the top point is reached via side A.
    pub fn canonical_word(&self, sc: &SectorComplex) -> Vec<FaceId> {
        let s = &sc.sectors[self.sector];
        match self.target {
            RouteTarget::Side(side, i) => s.faces(side)[..=i].to_vec(),
            RouteTarget::Top => s.faces_a.clone(),
        }
    }

    /// Signed faces crossed going the other way round: up the opposite side to
    /// the top point and then back down to the target.
    pub fn opposite_word(&self, sc: &SectorComplex) -> Vec<(FaceId, i64)> {
        let s = &sc.sectors[self.sector];
        match self.target {
            RouteTarget::Top => s.faces_b.iter().map(|&f| (f, 1)).collect(),
            RouteTarget::Side(side, i) => {
                let other = match side {
                    Side::A => Side::B,
                    Side::B => Side::A,
                };
                let up = s.faces(other).iter().map(|&f| (f, 1));
                let down = s.faces(side)[i + 1..].iter().rev().map(|&f| (f, -1));
                up.chain(down).collect()
            }
        }
    }
}

pub fn flow_graph(tri: &VeeringTriangulation) -> Result<FlowGraph, BsurfError> {
    flow_graph_with_routes(tri).map(|(g, _, _)| g)
}

/// Builds the flow graph in dual position, returning the sector complex and
/// the route of each edge inside its source sector alongside the graph.
pub fn flow_graph_with_routes(
    tri: &VeeringTriangulation,
) -> Result<(FlowGraph, Vec<Route>, SectorComplex), BsurfError> {
    let sc = build_sectors(tri)?;
    struct Candidate {
        tet: TetId,
        kind: FlowEdgeKind,
        slot: u8,
        src: EdgeId,
        route: Route,
    }
    let mut cands = Vec::new();
    for s in &sc.sectors {
        for side in [Side::A, Side::B] {
            for (i, c) in s.corners(side).iter().enumerate().skip(1) {
                cands.push(Candidate {
                    tet: c.tet,
                    kind: FlowEdgeKind::FromEquatorial,
                    slot: c.local_edge,
                    src: s.edge,
                    route: Route {
                        sector: s.edge,
                        target: RouteTarget::Side(side, i),
                    },
                });
            }
        }
        cands.push(Candidate {
            tet: s.top,
            kind: FlowEdgeKind::FromBottom,
            slot: s.top_corner.local_edge,
            src: s.edge,
            route: Route {
                sector: s.edge,
                target: RouteTarget::Top,
            },
        });
    }
    cands.sort_by_key(|c| (c.tet, c.kind, c.slot));

    for t in 0..tri.num_tets() {
        let owned: Vec<&Candidate> = cands.iter().filter(|c| c.tet == t).collect();
        let slots: Vec<u8> = owned.iter().map(|c| c.slot).collect();
        let side_slots: Vec<u8> = sc
            .sectors
            .iter()
            .flat_map(|s| [s.corners_a[0], s.corners_b[0]])
            .filter(|c| c.tet == t)
            .map(|c| c.local_edge)
            .collect();
        let mut expected: Vec<u8> = vec![tri.bottom_edge(t)];
        expected.extend(
            tri.equatorial_edges(t)
                .into_iter()
                .filter(|e| !side_slots.contains(e)),
        );
        let mut found = slots.clone();
        found.sort_unstable();
        expected.sort_unstable();
        let bottom_ok = owned
            .iter()
            .any(|c| c.kind == FlowEdgeKind::FromBottom && c.slot == tri.bottom_edge(t));
        if found != expected || !bottom_ok {
            return Err(BsurfError::Reconciliation {
                tet: t,
                found: slots,
            });
        }
    }

    let mut edges = Vec::with_capacity(cands.len());
    let mut routes = Vec::with_capacity(cands.len());
    for c in &cands {
        edges.push(FlowEdge {
            src: c.src,
            dst: tri.edge_of(c.tet, tri.top_edge(c.tet)),
            tet: Some(c.tet),
            kind: Some(c.kind),
            crossings: c.route.canonical_word(&sc),
        });
        routes.push(c.route);
    }
    let graph = FlowGraph {
        vertices: tri.num_edges(),
        faces: tri.num_faces(),
        edges,
    };
    Ok((graph, routes, sc))
}
