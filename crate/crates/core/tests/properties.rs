use num_traits::{One, Zero};
use proptest::prelude::*;
use stretch_core::bsurf::flow_graph;
use stretch_core::cones::{Membership, RationalCone};
use stretch_core::dynamics::{
    dynamical_core, growth_rate, GrowthMode, WeightedDigraph, WeightedEdge,
};
use stretch_core::fixtures;
use stretch_core::linalg::{q, Q};
use stretch_core::track::{apply_fold, FoldingCycle};
use stretch_core::tri::{Color, Perm4, PiPair, TriangulationDoc, VeeringTriangulation};

fn perm4() -> impl Strategy<Value = Perm4> {
    Just(vec![0u8, 1, 2, 3])
        .prop_shuffle()
        .prop_map(|v| Perm4([v[0], v[1], v[2], v[3]]))
}

fn compose(outer: Perm4, inner: Perm4) -> Perm4 {
    Perm4([0, 1, 2, 3].map(|v| outer.apply(inner.apply(v))))
}

fn census_index() -> impl Strategy<Value = usize> {
    0..fixtures::census().len()
}

/// Renames tetrahedron `t` to `order[t]` and relabels its vertices by `verts[t]`.
fn relabel(tri: &VeeringTriangulation, order: &[usize], verts: &[Perm4]) -> VeeringTriangulation {
    let mut doc = tri.to_doc();
    doc.colors = None;
    let old = doc.tets.clone();
    for (t, tet) in old.iter().enumerate() {
        let sigma = verts[t];
        let mut new = tet.clone();
        for (f, g) in tet.glue.iter().enumerate() {
            let u = g.0;
            let p = Perm4(g.2);
            let image = compose(compose(verts[u], p), sigma.inverse());
            new.glue[sigma.apply(f as u8) as usize] =
                stretch_core::tri::GluingDoc(order[u], verts[u].apply(g.1), image.0);
        }
        let pi = PiPair::from_index(tet.pi_pair).unwrap();
        let moved = sigma.apply_edge(pi.edges()[0]);
        new.pi_pair = (0..3)
            .find(|&i| PiPair::from_index(i).unwrap().edges().contains(&moved))
            .unwrap();
        doc.tets[order[t]] = new;
    }
    TriangulationDoc::into_triangulation(doc).unwrap()
}

struct Summary {
    tets: usize,
    edges: usize,
    faces: usize,
    degrees: Vec<usize>,
    colour_counts: [usize; 2],
    veering: bool,
    flow: (usize, usize),
}

fn summary(tri: &VeeringTriangulation) -> Summary {
    let mut degrees: Vec<usize> = (0..tri.num_edges()).map(|e| tri.edge_degree(e)).collect();
    degrees.sort_unstable();
    let colours = tri.colors().unwrap();
    let red = colours.iter().filter(|&&c| c == Color::Red).count();
    let mut colour_counts = [red, colours.len() - red];
    colour_counts.sort_unstable();
    let phi = flow_graph(tri).unwrap();
    Summary {
        tets: tri.num_tets(),
        edges: tri.num_edges(),
        faces: tri.num_faces(),
        degrees,
        colour_counts,
        veering: tri.is_veering(),
        flow: (phi.vertices, phi.edges.len()),
    }
}

fn digraph(max_v: usize, max_e: usize, max_w: u64) -> impl Strategy<Value = WeightedDigraph> {
    (1..=max_v).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n, 0..=max_w), 0..=max_e)
            .prop_map(move |edges| WeightedDigraph::from_edges(n, &edges))
    })
}

fn rational_vec(dim: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(-4i64..=4, dim).prop_map(|v| v.into_iter().map(q).collect())
}

fn combination(gens: &[Vec<Q>], coeffs: &[u8], dim: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); dim];
    for (g, &c) in gens.iter().zip(coeffs) {
        for j in 0..dim {
            out[j] += &g[j] * q(c as i64);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn perm_inverse_and_sign(p in perm4(), r in perm4()) {
        prop_assert_eq!(compose(p, p.inverse()), Perm4::IDENTITY);
        prop_assert_eq!(compose(p.inverse(), p), Perm4::IDENTITY);
        prop_assert_eq!(p.inverse().sign(), p.sign());
        prop_assert_eq!(compose(p, r).sign(), p.sign() * r.sign());
        for e in 0..6 {
            prop_assert_eq!(p.inverse().apply_edge(p.apply_edge(e)), e);
        }
    }

    #[test]
    fn triangulation_json_round_trip(i in census_index()) {
        let (_, tri) = &fixtures::census()[i];
        let again = VeeringTriangulation::from_json(&tri.to_json()).unwrap();
        prop_assert_eq!(again.to_json(), tri.to_json());
        prop_assert_eq!(again.colors().unwrap(), tri.colors().unwrap());
    }

    #[test]
    fn relabelling_preserves_invariants(
        (i, order, verts) in census_index().prop_flat_map(|i| {
            let n = fixtures::census()[i].1.num_tets();
            (
                Just(i),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
                prop::collection::vec(perm4(), n),
            )
        })
    ) {
        let (_, tri) = &fixtures::census()[i];
        let moved = relabel(tri, &order, &verts);
        prop_assert!(moved.validate().ok);
        let (a, b) = (summary(tri), summary(&moved));
        prop_assert_eq!(a.tets, b.tets);
        prop_assert_eq!(a.edges, b.edges);
        prop_assert_eq!(a.faces, b.faces);
        prop_assert_eq!(a.degrees, b.degrees);
        prop_assert_eq!(a.colour_counts, b.colour_counts);
        prop_assert_eq!(a.veering, b.veering);
        prop_assert_eq!(a.flow, b.flow);
    }

    #[test]
    fn dynamical_core_is_idempotent(g in digraph(8, 16, 3)) {
        let core = dynamical_core(&g);
        prop_assert_eq!(dynamical_core(&core), core.clone());
        // Every surviving edge lies on a cycle, so it has a successor and a predecessor.
        for e in &core.edges {
            prop_assert!(core.edges.iter().any(|f| f.src == e.dst));
            prop_assert!(core.edges.iter().any(|f| f.dst == e.src));
        }
    }

    #[test]
    fn weighted_growth_is_homogeneous(g in digraph(6, 12, 4), k in 2u64..=4) {
        let g = WeightedDigraph {
            vertices: g.vertices,
            edges: g.edges.iter().map(|e| WeightedEdge { weight: e.weight + 1, ..*e }).collect(),
        };
        let scaled = WeightedDigraph {
            vertices: g.vertices,
            edges: g.edges.iter().map(|e| WeightedEdge { weight: e.weight * k, ..*e }).collect(),
        };
        match (growth_rate(&g, GrowthMode::Weighted), growth_rate(&scaled, GrowthMode::Weighted)) {
            (Ok(a), Ok(b)) => {
                let expected = a.lambda.powf(1.0 / k as f64);
                prop_assert!((b.lambda - expected).abs() < 1e-8 * expected, "{} vs {}", b.lambda, expected);
            }
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn double_description_round_trip(
        gens in prop::collection::vec(rational_vec(4), 1..6),
        coeffs in prop::collection::vec(0u8..4, 6),
    ) {
        let cone = RationalCone::from_generators(4, &gens, &[]).unwrap();
        prop_assert!(cone.check_double_description());
        for g in &gens {
            prop_assert!(cone.contains(g).unwrap());
        }
        let x = combination(&gens, &coeffs, 4);
        prop_assert!(cone.contains(&x).unwrap());
        let again = RationalCone::from_constraints(4, &cone.ineqs, &cone.eqs).unwrap();
        prop_assert_eq!(&again, &cone);
        let json = RationalCone::from_json(&cone.to_json()).unwrap();
        prop_assert_eq!(&json, &cone);
    }

    #[test]
    fn positive_combination_of_all_rays_is_interior(
        gens in prop::collection::vec(rational_vec(3), 1..5),
        coeffs in prop::collection::vec(1u8..4, 8),
    ) {
        let cone = RationalCone::from_generators(3, &gens, &[]).unwrap();
        let mut all = cone.rays.clone();
        for l in &cone.lines {
            all.push(l.clone());
            all.push(l.iter().map(|x| -x).collect());
        }
        prop_assume!(!all.is_empty() && all.len() <= coeffs.len());
        let x = combination(&all, &coeffs, 3);
        prop_assert_eq!(cone.membership(&x).unwrap(), Membership::RelativeInterior);
    }
}

#[test]
fn elementary_fold_matrices_have_unit_diagonal() {
    let fixtures = std::iter::once(fixtures::PUNCTURED_TORUS).chain(fixtures::ENDPERIODIC);
    for text in fixtures {
        let cycle = FoldingCycle::from_json(text).unwrap();
        let mut track = cycle.track.clone();
        for mv in &cycle.moves {
            let (next, m) = apply_fold(&track, mv).unwrap();
            let n = track.num_branches();
            assert_eq!(m.n, n);
            assert_eq!(next.num_branches(), n);
            let b = track.index_of(mv.branch).unwrap();
            for i in 0..n {
                assert!(m.entries[i][i].is_one());
                let off: u64 = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| u64::try_from(&m.entries[i][j]).unwrap())
                    .sum();
                let expected = if i == b { mv.over.len() as u64 } else { 0 };
                assert_eq!(off, expected, "row {i} of fold {mv:?}");
            }
            track = next;
        }
    }
}
