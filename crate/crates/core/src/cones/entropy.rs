use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::ConeError;
use crate::bsurf::{flow_graph, BranchEquations, FaceClass, FlowGraph};
use crate::dynamics::{
    cut, cut_components, dynamical_core, growth_rate, restrict_to_component, DynamicsError,
    GrowthMode, WeightedDigraph,
};
use crate::linalg::{self, Q};
use crate::tri::VeeringTriangulation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleStatus {
    InteriorOk,
    /// Some cycle has total weight zero; the growth rate is unbounded.
    ZeroWeightCycle,
    /// No cycles at all: the translation case, reported with `ent = 0`.
    EmptyCore,
}

/// One evaluation of the entropy function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropySample {
    pub xi: Vec<f64>,
    pub lambda: Option<f64>,
    pub ent: Option<f64>,
    pub status: SampleStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

impl EntropySample {
    pub fn is_ok(&self) -> bool {
        self.status == SampleStatus::InteriorOk
    }
}

/// A graph whose edge weights depend linearly on a class: edge `i` gets
/// weight `coefficients[i] · ξ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntropyModel {
    pub vertices: usize,
    pub arcs: Vec<(usize, usize)>,
    pub coefficients: Vec<Vec<u64>>,
    pub dim: usize,
}

impl EntropyModel {
    pub fn new(
        vertices: usize,
        dim: usize,
        arcs: Vec<(usize, usize)>,
        coefficients: Vec<Vec<u64>>,
    ) -> Result<Self, ConeError> {
        if let Some(c) = coefficients.iter().find(|c| c.len() != dim) {
            return Err(ConeError::DimensionMismatch {
                expected: dim,
                found: c.len(),
            });
        }
        if coefficients.len() != arcs.len() {
            return Err(ConeError::DimensionMismatch {
                expected: arcs.len(),
                found: coefficients.len(),
            });
        }
        Ok(EntropyModel {
            vertices,
            arcs,
            coefficients,
            dim,
        })
    }

    /// Flow graph edges weighted by the faces they cross.
    pub fn from_flow_graph(phi: &FlowGraph) -> EntropyModel {
        EntropyModel {
            vertices: phi.vertices,
            arcs: phi.edges.iter().map(|e| (e.src, e.dst)).collect(),
            coefficients: (0..phi.edges.len()).map(|i| phi.face_counts(i)).collect(),
            dim: phi.faces,
        }
    }

    /// Evaluates `ent(ξ) = log λ(ξ)`. Rational classes are cleared of
    /// denominators first and the result rescaled by homogeneity.
    pub fn sample(&self, xi: &[Q]) -> Result<EntropySample, ConeError> {
        if xi.len() != self.dim {
            return Err(ConeError::DimensionMismatch {
                expected: self.dim,
                found: xi.len(),
            });
        }
        let xi_f: Vec<f64> = xi.iter().map(linalg::to_f64).collect();
        let weights: Vec<Q> = self
            .coefficients
            .iter()
            .map(|c| {
                c.iter().zip(xi).fold(Q::zero(), |acc, (&k, x)| {
                    acc + Q::from_integer(BigInt::from(k)) * x
                })
            })
            .collect();
        if let Some(i) = weights.iter().position(|w| w.is_negative()) {
            return Err(DynamicsError::NotCarried(format!("edge {i} has negative weight")).into());
        }
        let denom = weights
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let ints: Vec<BigInt> = weights
            .iter()
            .map(|w| (w * Q::from_integer(denom.clone())).to_integer())
            .collect();
        // ent(w) = denom · ent(denom · w)
        let scale = linalg::to_f64(&Q::from_integer(denom));
        let mut graph = WeightedDigraph::new(self.vertices);
        for (&(s, d), w) in self.arcs.iter().zip(&ints) {
            let w = w
                .to_u64()
                .filter(|&w| w <= i32::MAX as u64)
                .ok_or_else(|| {
                    DynamicsError::NotCarried(
                        "edge weight too large after clearing denominators".into(),
                    )
                })?;
            graph.add_edge(s, d, w);
        }
        let empty = |xi: Vec<f64>| EntropySample {
            xi,
            lambda: Some(1.0),
            ent: Some(0.0),
            status: SampleStatus::EmptyCore,
            witness: None,
        };
        if dynamical_core(&graph).is_empty() {
            return Ok(empty(xi_f));
        }
        match growth_rate(&graph, GrowthMode::Weighted) {
            Ok(r) => {
                let ent = scale * r.log_lambda();
                Ok(EntropySample {
                    xi: xi_f,
                    lambda: Some(ent.exp()),
                    ent: Some(ent),
                    status: SampleStatus::InteriorOk,
                    witness: None,
                })
            }
            Err(DynamicsError::ZeroWeightCycle { witness }) => Ok(EntropySample {
                xi: xi_f,
                lambda: None,
                ent: None,
                status: SampleStatus::ZeroWeightCycle,
                witness: Some(witness),
            }),
            Err(DynamicsError::EmptyCore) => Ok(empty(xi_f)),
            Err(e) => Err(e.into()),
        }
    }
}

/// The entropy function of one piece of a veering triangulation cut along a
/// carried surface `η`: weighted cycle growth on the flow graph edges that
/// miss `η` and stay inside the chosen component.
#[derive(Debug, Clone)]
pub struct EntropyContext {
    pub equations: BranchEquations,
    pub phi_n: FlowGraph,
    pub model: EntropyModel,
}

impl EntropyContext {
    pub fn new(
        tri: &VeeringTriangulation,
        eta: &FaceClass,
        component: usize,
    ) -> Result<EntropyContext, ConeError> {
        let equations = BranchEquations::new(tri)?;
        let phi = flow_graph(tri)?;
        let cut_phi = cut(&phi, eta, &equations)?;
        let core = crate::dynamics::flow_core(&cut_phi);
        let comps = cut_components(tri, eta)?;
        let phi_n = restrict_to_component(&core, tri, &comps, component)?;
        let model = EntropyModel::from_flow_graph(&phi_n);
        Ok(EntropyContext {
            equations,
            phi_n,
            model,
        })
    }

    pub fn sample(&self, xi: &[Q]) -> Result<EntropySample, ConeError> {
        if xi.len() != self.equations.num_faces {
            return Err(ConeError::DimensionMismatch {
                expected: self.equations.num_faces,
                found: xi.len(),
            });
        }
        if xi.iter().any(|x| x.is_negative()) {
            return Err(DynamicsError::NotCarried("negative face weight".into()).into());
        }
        if let Some(edge) = self
            .equations
            .rational_rows()
            .iter()
            .position(|r| !linalg::dot(r, xi).is_zero())
        {
            return Err(
                DynamicsError::NotCarried(format!("branch equation of edge {edge} fails")).into(),
            );
        }
        self.model.sample(xi)
    }
}

/// Samples the entropy function of `(tri, η, component)` at each class.
pub fn entropy_sample(
    tri: &VeeringTriangulation,
    eta: &FaceClass,
    component: usize,
    points: &[Vec<Q>],
) -> Result<Vec<EntropySample>, ConeError> {
    let ctx = EntropyContext::new(tri, eta, component)?;
    points.iter().map(|xi| ctx.sample(xi)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityPoint {
    pub t: f64,
    pub sample: EntropySample,
    /// `ent(point) − chord(t)`; positive values violate convexity.
    pub excess: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityReport {
    pub start: EntropySample,
    pub end: EntropySample,
    pub points: Vec<ConvexityPoint>,
    pub max_violation: f64,
}

impl ConvexityReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_violation <= tol
    }
}

/// Samples `k` evenly spaced interior points `(1 − t)ξ₀ + tξ₁` and compares
/// each value with the chord between the endpoint values.
pub fn convexity_probe<F>(
    mut ent: F,
    xi0: &[Q],
    xi1: &[Q],
    k: usize,
) -> Result<ConvexityReport, ConeError>
where
    F: FnMut(&[Q]) -> Result<EntropySample, ConeError>,
{
    let require_ok = |t: f64, s: EntropySample| -> Result<(EntropySample, f64), ConeError> {
        match (s.status.clone(), s.ent) {
            (SampleStatus::InteriorOk, Some(e)) => Ok((s, e)),
            (status, _) => Err(ConeError::NonInterior { t, status }),
        }
    };
    let (start, e0) = require_ok(0.0, ent(xi0)?)?;
    let (end, e1) = require_ok(1.0, ent(xi1)?)?;
    let mut points = Vec::with_capacity(k);
    let mut max_violation: f64 = 0.0;
    for i in 1..=k {
        let t = Q::new(BigInt::from(i), BigInt::from(k + 1));
        let s = Q::one() - &t;
        let x: Vec<Q> = xi0.iter().zip(xi1).map(|(a, b)| &s * a + &t * b).collect();
        let tf = linalg::to_f64(&t);
        let (sample, e) = require_ok(tf, ent(&x)?)?;
        let excess = e - ((1.0 - tf) * e0 + tf * e1);
        max_violation = max_violation.max(excess);
        points.push(ConvexityPoint {
            t: tf,
            sample,
            excess,
        });
    }
    Ok(ConvexityReport {
        start,
        end,
        points,
        max_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, q_ratio};

    fn golden_loops() -> EntropyModel {
        // One vertex, two loops with weights x and y.
        EntropyModel::new(1, 2, vec![(0, 0), (0, 0)], vec![vec![1, 0], vec![0, 1]]).unwrap()
    }

    /// Root of t^a + t^b = 1 in (0,1) by bisection, as -ln t.
    fn two_loop_oracle(a: f64, b: f64) -> f64 {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid.powf(a) + mid.powf(b) > 1.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        -(0.5 * (lo + hi)).ln()
    }

    #[test]
    fn golden_loops_match_closed_form() {
        let m = golden_loops();
        let s = m.sample(&[q(1), q(2)]).unwrap();
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((s.lambda.unwrap() - golden).abs() < 1e-9);
        let s = m.sample(&[q_ratio(3, 2), q_ratio(5, 4)]).unwrap();
        assert!((s.ent.unwrap() - two_loop_oracle(1.5, 1.25)).abs() < 1e-9);
    }

    #[test]
    fn homogeneity() {
        let m = golden_loops();
        let base = m.sample(&[q(2), q(3)]).unwrap().ent.unwrap();
        for k in 1..=5 {
            let e = m.sample(&[q(2 * k), q(3 * k)]).unwrap().ent.unwrap();
            assert!((e * k as f64 - base).abs() < 1e-9, "k={k}");
        }
    }

    #[test]
    fn golden_segment_is_convex() {
        let m = golden_loops();
        let r = convexity_probe(|x| m.sample(x), &[q(1), q(3)], &[q(4), q(1)], 9).unwrap();
        assert!(r.passes(1e-6), "{}", r.max_violation);
        for p in &r.points {
            let x = &p.sample.xi;
            assert!((p.sample.ent.unwrap() - two_loop_oracle(x[0], x[1])).abs() < 1e-8);
        }
    }

    #[test]
    fn degenerate_segment_has_zero_violation() {
        let m = golden_loops();
        let r = convexity_probe(|x| m.sample(x), &[q(1), q(2)], &[q(1), q(2)], 5).unwrap();
        assert!(r.max_violation.abs() < 1e-12);
    }

    #[test]
    fn statuses() {
        let m = golden_loops();
        let s = m.sample(&[q(0), q(1)]).unwrap();
        assert_eq!(s.status, SampleStatus::ZeroWeightCycle);
        assert!(s.ent.is_none());
        let err = convexity_probe(|x| m.sample(x), &[q(0), q(1)], &[q(1), q(1)], 3).unwrap_err();
        assert!(matches!(err, ConeError::NonInterior { .. }));

        let dag = EntropyModel::new(2, 1, vec![(0, 1)], vec![vec![1]]).unwrap();
        let s = dag.sample(&[q(1)]).unwrap();
        assert_eq!(s.status, SampleStatus::EmptyCore);
        assert_eq!(s.ent, Some(0.0));
    }

    #[test]
    fn figure_eight_fibre_entropy() {
        let tri = VeeringTriangulation::from_json(crate::fixtures::FIG8).unwrap();
        let eta = FaceClass::zero(4);
        let s = entropy_sample(&tri, &eta, 0, &[vec![q(1), q(0), q(1), q(0)]]).unwrap();
        let oracle = ((3.0 + 5f64.sqrt()) / 2.0).ln();
        assert!((s[0].ent.unwrap() - oracle).abs() < 1e-8, "{:?}", s[0]);
        let ctx = EntropyContext::new(&tri, &eta, 0).unwrap();
        assert!(ctx.sample(&[q(1), q(0), q(0), q(0)]).is_err());
    }
}
