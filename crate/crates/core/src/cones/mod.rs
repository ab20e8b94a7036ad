//! Exact rational polyhedral cones: the cone of carried classes, images under
//! restriction maps, and the entropy function sampled on a cone.

mod dd;
mod entropy;
mod qserde;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bsurf::{BranchEquations, BsurfError};
use crate::dynamics::DynamicsError;
use crate::linalg::{self, Q};
use crate::tri::VeeringTriangulation;

pub use entropy::{
    convexity_probe, entropy_sample, ConvexityPoint, ConvexityReport, EntropyContext, EntropyModel,
    EntropySample, SampleStatus,
};

/// Largest ambient dimension handled by the double description code.
pub const MAX_CONE_DIM: usize = 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConeError {
    #[error("cone dimension {dim} exceeds the cap {MAX_CONE_DIM}")]
    DimensionCap { dim: usize },
    #[error("expected vectors of length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("restriction map has kernel dimension {found}, declared {declared}")]
    KernelMismatch { declared: usize, found: usize },
    #[error("restriction map rows have unequal lengths")]
    Ragged,
    #[error("sample at {t} is not usable: {status:?}")]
    NonInterior { t: f64, status: SampleStatus },
    #[error(transparent)]
    Bsurf(#[from] BsurfError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

/// Where a point sits relative to a cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Outside,
    Boundary,
    RelativeInterior,
}

/// A polyhedral cone `cone(rays) + span(lines) = {x : ineqs·x >= 0, eqs·x = 0}`
/// stored in canonical form: `lines` and `eqs` are reduced row echelon bases,
/// `rays` are primitive integer vectors orthogonal to the lines, and `ineqs`
/// are primitive facet normals orthogonal to the equations, both sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalCone {
    pub dim: usize,
    #[serde(with = "qserde::matrix")]
    pub rays: Vec<Vec<Q>>,
    #[serde(with = "qserde::matrix")]
    pub ineqs: Vec<Vec<Q>>,
    #[serde(default, with = "qserde::matrix")]
    pub lines: Vec<Vec<Q>>,
    #[serde(default, with = "qserde::matrix")]
    pub eqs: Vec<Vec<Q>>,
}

fn check_lengths(dim: usize, vs: &[Vec<Q>]) -> Result<(), ConeError> {
    if dim > MAX_CONE_DIM {
        return Err(ConeError::DimensionCap { dim });
    }
    match vs.iter().find(|v| v.len() != dim) {
        Some(v) => Err(ConeError::DimensionMismatch {
            expected: dim,
            found: v.len(),
        }),
        None => Ok(()),
    }
}

impl RationalCone {
    /// The cone `{x : ineqs·x >= 0, eqs·x = 0}`.
    pub fn from_constraints(
        dim: usize,
        ineqs: &[Vec<Q>],
        eqs: &[Vec<Q>],
    ) -> Result<RationalCone, ConeError> {
        check_lengths(dim, ineqs)?;
        check_lengths(dim, eqs)?;
        let (rays, lines) = dd::extreme_rays(dim, ineqs, eqs);
        let (facets, equations) = dd::extreme_rays(dim, &rays, &lines);
        Ok(RationalCone::canonical(dim, rays, lines, facets, equations))
    }

    /// The cone `cone(rays) + span(lines)`.
    pub fn from_generators(
        dim: usize,
        rays: &[Vec<Q>],
        lines: &[Vec<Q>],
    ) -> Result<RationalCone, ConeError> {
        check_lengths(dim, rays)?;
        check_lengths(dim, lines)?;
        let (facets, equations) = dd::extreme_rays(dim, rays, lines);
        let (rays, lines) = dd::extreme_rays(dim, &facets, &equations);
        Ok(RationalCone::canonical(dim, rays, lines, facets, equations))
    }

    fn canonical(
        dim: usize,
        rays: Vec<Vec<Q>>,
        lines: Vec<Vec<Q>>,
        ineqs: Vec<Vec<Q>>,
        eqs: Vec<Vec<Q>>,
    ) -> RationalCone {
        let lines = linalg::rref(&lines, dim).0;
        let eqs = linalg::rref(&eqs, dim).0;
        RationalCone {
            dim,
            rays: reduce_modulo(&rays, &lines, dim),
            ineqs: reduce_modulo(&ineqs, &eqs, dim),
            lines,
            eqs,
        }
    }

    /// Dimension of the linear span of the cone.
    pub fn span_dimension(&self) -> usize {
        self.dim - self.eqs.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn membership(&self, x: &[Q]) -> Result<Membership, ConeError> {
        if x.len() != self.dim {
            return Err(ConeError::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        if self.eqs.iter().any(|e| !linalg::dot(e, x).is_zero()) {
            return Ok(Membership::Outside);
        }
        let mut interior = true;
        for a in &self.ineqs {
            let v = linalg::dot(a, x);
            if v.is_negative() {
                return Ok(Membership::Outside);
            }
            if v.is_zero() {
                interior = false;
            }
        }
        Ok(if interior {
            Membership::RelativeInterior
        } else {
            Membership::Boundary
        })
    }

    pub fn contains(&self, x: &[Q]) -> Result<bool, ConeError> {
        Ok(self.membership(x)? != Membership::Outside)
    }

    /// Checks that the two descriptions agree: every generator satisfies every
    /// constraint, and recomputing either description from the other
    /// reproduces this cone exactly.
    pub fn check_double_description(&self) -> bool {
        let generators_inside = self.rays.iter().all(|r| {
            self.ineqs.iter().all(|a| !linalg::dot(a, r).is_negative())
                && self.eqs.iter().all(|e| linalg::dot(e, r).is_zero())
        }) && self.lines.iter().all(|l| {
            self.ineqs
                .iter()
                .chain(&self.eqs)
                .all(|a| linalg::dot(a, l).is_zero())
        });
        let from_h = RationalCone::from_constraints(self.dim, &self.ineqs, &self.eqs);
        let from_v = RationalCone::from_generators(self.dim, &self.rays, &self.lines);
        generators_inside && from_h.as_ref() == Ok(self) && from_v.as_ref() == Ok(self)
    }

    pub fn from_json(text: &str) -> Result<RationalCone, serde_json::Error> {
        let raw: RationalCone = serde_json::from_str(text)?;
        RationalCone::from_constraints(raw.dim, &raw.ineqs, &raw.eqs)
            .map_err(|e| serde::de::Error::custom(e.to_string()))
            .and_then(|c| {
                let g = RationalCone::from_generators(raw.dim, &raw.rays, &raw.lines)
                    .map_err(|e| serde::de::Error::custom(e.to_string()))?;
                if c == g {
                    Ok(c)
                } else {
                    Err(serde::de::Error::custom(
                        "rays and inequalities describe different cones",
                    ))
                }
            })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("cones always serialise")
    }
}

/// Projects each vector onto the orthogonal complement of `span(basis)`,
/// drops zeros, scales to primitive integers, sorts and deduplicates.
fn reduce_modulo(vs: &[Vec<Q>], basis: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    let mut out: Vec<Vec<Q>> = vs
        .iter()
        .map(|v| project_out(v, basis, dim))
        .filter(|v| !linalg::is_zero_vector(v))
        .map(|v| linalg::primitive(&v))
        .collect();
    out.sort();
    out.dedup();
    out
}

fn project_out(v: &[Q], basis: &[Vec<Q>], dim: usize) -> Vec<Q> {
    if basis.is_empty() {
        return v.to_vec();
    }
    // Solve (B Bᵀ) c = B v and subtract Bᵀ c.
    let k = basis.len();
    let mut aug: Vec<Vec<Q>> = (0..k)
        .map(|i| {
            let mut row: Vec<Q> = (0..k).map(|j| linalg::dot(&basis[i], &basis[j])).collect();
            row.push(linalg::dot(&basis[i], v));
            row
        })
        .collect();
    aug = linalg::rref(&aug, k + 1).0;
    let mut out = v.to_vec();
    for (i, row) in aug.iter().enumerate() {
        let c = &row[k];
        for j in 0..dim {
            out[j] -= c * &basis[i][j];
        }
    }
    out
}

/// The cone of nonnegative face weights satisfying the branch equations.
pub fn carried_cone(tri: &VeeringTriangulation) -> Result<RationalCone, ConeError> {
    carried_cone_from_equations(&BranchEquations::new(tri)?)
}

pub fn carried_cone_from_equations(eqs: &BranchEquations) -> Result<RationalCone, ConeError> {
    let dim = eqs.num_faces;
    let positivity: Vec<Vec<Q>> = (0..dim)
        .map(|i| (0..dim).map(|j| linalg::q(i64::from(i == j))).collect())
        .collect();
    RationalCone::from_constraints(dim, &positivity, &eqs.rational_rows())
}

/// A linear map between cohomology groups given by its matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionMap {
    pub source_dim: usize,
    #[serde(with = "qserde::matrix")]
    pub matrix: Vec<Vec<Q>>,
}

impl RestrictionMap {
    pub fn new(source_dim: usize, matrix: Vec<Vec<Q>>) -> Result<RestrictionMap, ConeError> {
        if matrix.iter().any(|r| r.len() != source_dim) {
            return Err(ConeError::Ragged);
        }
        Ok(RestrictionMap { source_dim, matrix })
    }

    pub fn from_integers(
        source_dim: usize,
        rows: &[Vec<i64>],
    ) -> Result<RestrictionMap, ConeError> {
        RestrictionMap::new(
            source_dim,
            rows.iter()
                .map(|r| r.iter().map(|&x| linalg::q(x)).collect())
                .collect(),
        )
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        self.matrix.iter().map(|row| linalg::dot(row, v)).collect()
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &RestrictionMap) -> Result<RestrictionMap, ConeError> {
        if after.source_dim != self.target_dim() {
            return Err(ConeError::DimensionMismatch {
                expected: self.target_dim(),
                found: after.source_dim,
            });
        }
        let matrix = after
            .matrix
            .iter()
            .map(|row| {
                (0..self.source_dim)
                    .map(|j| {
                        (0..row.len()).fold(Q::zero(), |acc, k| acc + &row[k] * &self.matrix[k][j])
                    })
                    .collect()
            })
            .collect();
        Ok(RestrictionMap {
            source_dim: self.source_dim,
            matrix,
        })
    }

    pub fn kernel_dim(&self) -> usize {
        self.source_dim - linalg::rank(&self.matrix, self.source_dim)
    }

    pub fn check_kernel_dim(&self, declared: usize) -> Result<(), ConeError> {
        let found = self.kernel_dim();
        if found == declared {
            Ok(())
        } else {
            Err(ConeError::KernelMismatch { declared, found })
        }
    }
}

/// The image of a cone under a linear map.
pub fn image_cone(c: &RationalCone, r: &RestrictionMap) -> Result<RationalCone, ConeError> {
    if r.source_dim != c.dim {
        return Err(ConeError::DimensionMismatch {
            expected: c.dim,
            found: r.source_dim,
        });
    }
    let rays: Vec<Vec<Q>> = c.rays.iter().map(|v| r.apply(v)).collect();
    let lines: Vec<Vec<Q>> = c.lines.iter().map(|v| r.apply(v)).collect();
    RationalCone::from_generators(r.target_dim(), &rays, &lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn figure_eight_carried_cone() {
        let tri = VeeringTriangulation::from_json(crate::fixtures::FIG8).unwrap();
        let c = carried_cone(&tri).unwrap();
        assert_eq!(c.rays, vec![v(&[0, 1, 0, 1]), v(&[1, 0, 1, 0])]);
        assert!(c.is_pointed());
        assert_eq!(c.span_dimension(), 2);
        assert_eq!(
            c.membership(&v(&[1, 0, 1, 0])).unwrap(),
            Membership::Boundary
        );
        assert_eq!(
            c.membership(&v(&[1, 1, 1, 1])).unwrap(),
            Membership::RelativeInterior
        );
        assert_eq!(
            c.membership(&v(&[1, 0, 0, 0])).unwrap(),
            Membership::Outside
        );
        assert!(c.check_double_description());
    }

    #[test]
    fn quadrant_with_a_line() {
        // {x >= 0} x R in R^2.
        let c = RationalCone::from_constraints(2, &[v(&[1, 0])], &[]).unwrap();
        assert_eq!(c.rays, vec![v(&[1, 0])]);
        assert_eq!(c.lines, vec![v(&[0, 1])]);
        assert!(!c.is_pointed());
        let again = RationalCone::from_generators(2, &[v(&[3, 5])], &[v(&[0, -2])]).unwrap();
        assert_eq!(c, again);
        assert!(c.check_double_description());
    }

    #[test]
    fn redundant_generators_are_pruned() {
        let c = RationalCone::from_generators(
            2,
            &[v(&[1, 0]), v(&[0, 1]), v(&[1, 1]), v(&[2, 0])],
            &[],
        )
        .unwrap();
        assert_eq!(c.rays, vec![v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(c.ineqs, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn equations_with_no_nonzero_solution() {
        let eqs = BranchEquations {
            num_faces: 2,
            rows: vec![vec![1, 1]],
        };
        let c = carried_cone_from_equations(&eqs).unwrap();
        assert!(c.rays.is_empty());
        assert!(c.lines.is_empty());
        assert_eq!(
            c.membership(&v(&[0, 0])).unwrap(),
            Membership::RelativeInterior
        );
    }

    #[test]
    fn image_composition() {
        let c =
            RationalCone::from_generators(3, &[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])], &[])
                .unwrap();
        let r1 = RestrictionMap::from_integers(3, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let r2 = RestrictionMap::from_integers(2, &[vec![1, -1]]).unwrap();
        let composed = image_cone(&c, &r1.then(&r2).unwrap()).unwrap();
        let stepwise = image_cone(&image_cone(&c, &r1).unwrap(), &r2).unwrap();
        assert_eq!(composed, stepwise);
        assert_eq!(composed.lines, vec![v(&[1])]);
        r1.check_kernel_dim(1).unwrap();
        assert!(r1.check_kernel_dim(0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = RationalCone::from_constraints(2, &[v(&[1, 0])], &[]).unwrap();
        let text = c.to_json();
        assert!(text.contains("\"rays\":[[[1,1],[0,1]]]"), "{text}");
        assert_eq!(RationalCone::from_json(&text).unwrap(), c);
    }

    #[test]
    fn dimension_cap() {
        assert_eq!(
            RationalCone::from_constraints(21, &[], &[]),
            Err(ConeError::DimensionCap { dim: 21 })
        );
    }
}
