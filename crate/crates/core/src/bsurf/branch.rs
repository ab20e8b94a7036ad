use serde::{Deserialize, Serialize};

use super::flow::{FlowGraph, Route};
use super::sectors::SectorComplex;
use super::{require_valid, BsurfError};
use crate::linalg::{self, Q};
use crate::tri::{EdgeId, VeeringTriangulation};

/// One linear equation per edge: the weights of the faces climbing side A of
/// the edge link equal those climbing side B. Rows are indexed by edge and
/// columns by face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchEquations {
    pub num_faces: usize,
    pub rows: Vec<Vec<i64>>,
}

impl BranchEquations {
    pub fn new(tri: &VeeringTriangulation) -> Result<BranchEquations, BsurfError> {
        require_valid(tri)?;
        let mut rows = Vec::with_capacity(tri.num_edges());
        for e in 0..tri.num_edges() {
            let link = tri.edge_link(e)?;
            let mut row = vec![0i64; tri.num_faces()];
            for f in link.faces_side_a(tri) {
                row[f] += 1;
            }
            for f in link.faces_side_b(tri) {
                row[f] -= 1;
            }
            rows.push(row);
        }
        Ok(BranchEquations {
            num_faces: tri.num_faces(),
            rows,
        })
    }

    /// No equations at all: every weight vector is a solution.
    pub fn unconstrained(num_faces: usize) -> BranchEquations {
        BranchEquations {
            num_faces,
            rows: Vec::new(),
        }
    }

    pub fn rational_rows(&self) -> Vec<Vec<Q>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&x| linalg::q(x)).collect())
            .collect()
    }

    /// The first edge whose equation fails, if any.
    pub fn first_violation(&self, weights: &[i64]) -> Option<EdgeId> {
        self.rows
            .iter()
            .position(|row| row.iter().zip(weights).map(|(a, b)| a * b).sum::<i64>() != 0)
    }

    pub fn check(&self, w: &FaceClass) -> Result<(), BsurfError> {
        if w.weights.len() != self.num_faces {
            return Err(BsurfError::DimensionMismatch {
                expected: self.num_faces,
                found: w.weights.len(),
            });
        }
        match self.first_violation(&w.weights) {
            Some(edge) => Err(BsurfError::NotASolution { edge }),
            None => Ok(()),
        }
    }

    /// An integer basis of the solution space.
    pub fn solution_basis(&self) -> Vec<FaceClass> {
        linalg::nullspace(&self.rational_rows(), self.num_faces)
            .iter()
            .map(|v| FaceClass {
                weights: linalg::primitive_integer(v)
                    .into_iter()
                    .map(|x| i64::try_from(x).expect("basis entries fit in i64"))
                    .collect(),
            })
            .collect()
    }
}

/// A weight on each face of the triangulation. Nonnegative solutions of the
/// branch equations are the surfaces carried by the branched surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceClass {
    pub weights: Vec<i64>,
}

impl FaceClass {
    pub fn new(weights: Vec<i64>) -> FaceClass {
        FaceClass { weights }
    }

    pub fn zero(num_faces: usize) -> FaceClass {
        FaceClass {
            weights: vec![0; num_faces],
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.weights.iter().all(|&w| w >= 0)
    }

    pub fn is_carried(&self, eqs: &BranchEquations) -> bool {
        self.is_nonnegative() && eqs.check(self).is_ok()
    }
}

/// The number of times the closed walk `cycle` in the flow graph crosses the
/// surface `w`, counted through the crossing words of its edges.
pub fn pairing(
    phi: &FlowGraph,
    cycle: &[usize],
    w: &FaceClass,
    eqs: &BranchEquations,
) -> Result<i64, BsurfError> {
    eqs.check(w)?;
    phi.check_cycle(cycle)?;
    Ok(cycle
        .iter()
        .flat_map(|&i| phi.edges[i].crossings.iter())
        .map(|&f| w.weights[f])
        .sum())
}

/// The same pairing computed with every edge routed around the opposite side
/// of its sector.
pub fn pairing_opposite(
    phi: &FlowGraph,
    routes: &[Route],
    sectors: &SectorComplex,
    cycle: &[usize],
    w: &FaceClass,
    eqs: &BranchEquations,
) -> Result<i64, BsurfError> {
    eqs.check(w)?;
    phi.check_cycle(cycle)?;
    let mut total = 0;
    for &i in cycle {
        let route = routes.get(i).ok_or(BsurfError::MissingRoute(i))?;
        total += route
            .opposite_word(sectors)
            .iter()
            .map(|&(f, s)| s * w.weights[f])
            .sum::<i64>();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bsurf::flow_graph_with_routes;

    fn fig8() -> VeeringTriangulation {
        VeeringTriangulation::from_json(include_str!("../../fixtures/fig8.json")).unwrap()
    }

    #[test]
    fn figure_eight_branch_equations() {
        let eqs = BranchEquations::new(&fig8()).unwrap();
        assert_eq!(eqs.rows, vec![vec![-1, 0, 1, 0], vec![0, -1, 0, 1]]);
        let basis = eqs.solution_basis();
        assert_eq!(
            basis,
            vec![
                FaceClass::new(vec![1, 0, 1, 0]),
                FaceClass::new(vec![0, 1, 0, 1])
            ]
        );
    }

    #[test]
    fn pairing_checks_its_inputs() {
        let tri = fig8();
        let (phi, routes, sc) = flow_graph_with_routes(&tri).unwrap();
        let eqs = BranchEquations::new(&tri).unwrap();
        let w = FaceClass::new(vec![1, 0, 1, 0]);
        assert_eq!(pairing(&phi, &[1], &w, &eqs).unwrap(), 1);
        assert_eq!(
            pairing_opposite(&phi, &routes, &sc, &[1], &w, &eqs).unwrap(),
            1
        );
        assert!(matches!(
            pairing(&phi, &[3], &w, &eqs),
            Err(BsurfError::NotClosed(0))
        ));
        assert!(matches!(
            pairing(&phi, &[], &w, &eqs),
            Err(BsurfError::EmptyCycle)
        ));
        let bad = FaceClass::new(vec![1, 0, 0, 0]);
        assert!(matches!(
            pairing(&phi, &[1], &bad, &eqs),
            Err(BsurfError::NotASolution { edge: 0 })
        ));
        let short = FaceClass::new(vec![1, 0]);
        assert!(matches!(
            pairing(&phi, &[1], &short, &eqs),
            Err(BsurfError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn zero_class_pairs_to_zero() {
        let tri = fig8();
        let phi = crate::bsurf::flow_graph(&tri).unwrap();
        let eqs = BranchEquations::new(&tri).unwrap();
        for walk in phi.closed_walks(5) {
            assert_eq!(pairing(&phi, &walk, &FaceClass::zero(4), &eqs).unwrap(), 0);
        }
    }
}
