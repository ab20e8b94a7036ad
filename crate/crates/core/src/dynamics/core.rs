use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::{DynamicsError, WeightedDigraph};
use crate::bsurf::{dual_graph, BranchEquations, FaceClass, FlowGraph};
use crate::tri::{UnionFind, VeeringTriangulation};

/// Component index of every vertex under strong connectivity.
pub fn strongly_connected_components(
    vertices: usize,
    arcs: impl IntoIterator<Item = (usize, usize)>,
) -> Vec<usize> {
    let mut g = DiGraph::<(), ()>::with_capacity(vertices, 0);
    let nodes: Vec<_> = (0..vertices).map(|_| g.add_node(())).collect();
    for (s, d) in arcs {
        g.add_edge(nodes[s], nodes[d], ());
    }
    let mut comp = vec![0; vertices];
    for (c, scc) in tarjan_scc(&g).into_iter().enumerate() {
        for n in scc {
            comp[n.index()] = c;
        }
    }
    comp
}

/// Marks the edges lying on some cycle: those whose endpoints share a strong component.
fn cycle_edges(vertices: usize, arcs: &[(usize, usize)]) -> Vec<bool> {
    let comp = strongly_connected_components(vertices, arcs.iter().copied());
    arcs.iter().map(|&(s, d)| comp[s] == comp[d]).collect()
}

/// The union of all cycles of `g`: edges between vertices of a common strong
/// component. Vertices keep their indices; those left without edges are inactive.
pub fn dynamical_core(g: &WeightedDigraph) -> WeightedDigraph {
    let arcs: Vec<_> = g.edges.iter().map(|e| (e.src, e.dst)).collect();
    let keep = cycle_edges(g.vertices, &arcs);
    WeightedDigraph {
        vertices: g.vertices,
        edges: g
            .edges
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(e, _)| *e)
            .collect(),
    }
}

/// The dynamical core of a flow graph, keeping crossing words and owning tetrahedra.
pub fn flow_core(phi: &FlowGraph) -> FlowGraph {
    let arcs: Vec<_> = phi.edges.iter().map(|e| (e.src, e.dst)).collect();
    phi.subgraph(&cycle_edges(phi.vertices, &arcs))
}

/// Removes every flow graph edge whose crossing word meets the support of `eta`.
pub fn cut(
    phi: &FlowGraph,
    eta: &FaceClass,
    eqs: &BranchEquations,
) -> Result<FlowGraph, DynamicsError> {
    if !eta.is_nonnegative() {
        return Err(DynamicsError::NotCarried("negative face weight".into()));
    }
    eqs.check(eta)?;
    if eta.weights.len() < phi.faces {
        return Err(DynamicsError::DimensionMismatch {
            expected: phi.faces,
            found: eta.weights.len(),
        });
    }
    let keep: Vec<bool> = phi
        .edges
        .iter()
        .map(|e| e.crossings.iter().all(|&f| eta.weights[f] == 0))
        .collect();
    Ok(phi.subgraph(&keep))
}

/// Tetrahedra grouped by the pieces of the manifold cut open along a surface:
/// two tetrahedra share a piece when joined through faces of weight zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutComponents {
    pub of_tet: Vec<usize>,
    pub count: usize,
}

impl CutComponents {
    pub fn tets(&self, component: usize) -> Vec<usize> {
        (0..self.of_tet.len())
            .filter(|&t| self.of_tet[t] == component)
            .collect()
    }
}

pub fn cut_components(
    tri: &VeeringTriangulation,
    eta: &FaceClass,
) -> Result<CutComponents, DynamicsError> {
    let dual = dual_graph(tri)?;
    if eta.weights.len() != tri.num_faces() {
        return Err(DynamicsError::DimensionMismatch {
            expected: tri.num_faces(),
            found: eta.weights.len(),
        });
    }
    let mut uf = UnionFind::new(tri.num_tets());
    for e in &dual.edges {
        if eta.weights[e.face] == 0 {
            uf.union(e.below, e.above);
        }
    }
    let mut label = vec![usize::MAX; tri.num_tets()];
    let mut count = 0;
    let mut of_tet = Vec::with_capacity(tri.num_tets());
    for t in 0..tri.num_tets() {
        let r = uf.find(t);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        of_tet.push(label[r]);
    }
    Ok(CutComponents { of_tet, count })
}

/// Keeps the flow graph edges whose owning tetrahedron, source tetrahedron and
/// crossed faces all lie in the given component.
pub fn restrict_to_component(
    phi: &FlowGraph,
    tri: &VeeringTriangulation,
    comps: &CutComponents,
    component: usize,
) -> Result<FlowGraph, DynamicsError> {
    if component >= comps.count {
        return Err(DynamicsError::UnknownComponent {
            component,
            count: comps.count,
        });
    }
    let below: Vec<usize> = {
        let mut b = vec![0; tri.num_edges()];
        for t in 0..tri.num_tets() {
            b[tri.edge_of(t, tri.top_edge(t))] = t;
        }
        b
    };
    let mut keep = Vec::with_capacity(phi.edges.len());
    for (i, e) in phi.edges.iter().enumerate() {
        let t = e.tet.ok_or(DynamicsError::MissingTet { edge: i })?;
        let inside = |tet: usize| comps.of_tet[tet] == component;
        let faces_inside = e.crossings.iter().all(|&f| {
            let [(a, _), (b, _)] = tri.face_slots(f);
            inside(a) && inside(b)
        });
        keep.push(inside(t) && inside(below[e.src]) && faces_inside);
    }
    Ok(phi.subgraph(&keep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bsurf::flow_graph;

    #[test]
    fn core_drops_tails_and_keeps_cycles() {
        let g = WeightedDigraph::from_edges(
            4,
            &[(0, 1, 1), (1, 0, 1), (1, 2, 1), (2, 3, 1), (3, 3, 2)],
        );
        let core = dynamical_core(&g);
        let kept: Vec<_> = core.edges.iter().map(|e| e.label).collect();
        assert_eq!(kept, vec![0, 1, 4]);
        assert_eq!(core.active_vertices(), vec![0, 1, 3]);
        assert_eq!(dynamical_core(&core), core);
    }

    #[test]
    fn dag_core_is_empty() {
        let g = WeightedDigraph::from_edges(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]);
        assert!(dynamical_core(&g).is_empty());
    }

    #[test]
    fn cutting_figure_eight_along_fiber() {
        let tri =
            VeeringTriangulation::from_json(include_str!("../../fixtures/fig8.json")).unwrap();
        let phi = flow_graph(&tri).unwrap();
        let eqs = BranchEquations::new(&tri).unwrap();
        let fiber = FaceClass::new(vec![1, 0, 1, 0]);
        let cut_phi = cut(&phi, &fiber, &eqs).unwrap();
        assert!(cut_phi
            .edges
            .iter()
            .all(|e| !e.crossings.contains(&0) && !e.crossings.contains(&2)));
        assert!(flow_core(&cut_phi).edges.is_empty());
        let comps = cut_components(&tri, &fiber).unwrap();
        assert_eq!(comps.count, 1);

        let zero = FaceClass::zero(4);
        assert_eq!(cut(&phi, &zero, &eqs).unwrap(), phi);
        let comps = cut_components(&tri, &zero).unwrap();
        let restricted = restrict_to_component(&phi, &tri, &comps, 0).unwrap();
        assert_eq!(restricted, phi);
        assert!(matches!(
            restrict_to_component(&phi, &tri, &comps, 3),
            Err(DynamicsError::UnknownComponent { .. })
        ));
    }

    #[test]
    fn cut_rejects_non_carried_classes() {
        let tri =
            VeeringTriangulation::from_json(include_str!("../../fixtures/fig8.json")).unwrap();
        let phi = flow_graph(&tri).unwrap();
        let eqs = BranchEquations::new(&tri).unwrap();
        assert!(cut(&phi, &FaceClass::new(vec![-1, 0, -1, 0]), &eqs).is_err());
        assert!(cut(&phi, &FaceClass::new(vec![1, 0, 0, 0]), &eqs).is_err());
    }

    #[test]
    fn disconnected_triangulation_splits_into_components() {
        let tri =
            VeeringTriangulation::from_json(include_str!("../../fixtures/fig8_pair.json")).unwrap();
        let comps = cut_components(&tri, &FaceClass::zero(tri.num_faces())).unwrap();
        assert_eq!(comps.count, 2);
        assert_eq!(comps.tets(1), vec![2, 3]);
        let phi = flow_graph(&tri).unwrap();
        let half = restrict_to_component(&phi, &tri, &comps, 1).unwrap();
        assert_eq!(half.edges.len(), 6);
    }
}
