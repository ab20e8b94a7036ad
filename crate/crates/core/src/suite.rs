//! The acceptance battery: nine executable criteria, each reporting a single
//! pass/fail line. Randomised criteria draw from a ChaCha stream seeded per
//! criterion, so results are reproducible and independent of run order.

use std::fmt;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bsurf::{
    flow_graph, flow_graph_with_routes, pairing, pairing_opposite, BranchEquations, FaceClass,
};
use crate::cones::{
    carried_cone, convexity_probe, image_cone, EntropyContext, EntropyModel, EntropySample,
    Membership, RationalCone, RestrictionMap,
};
use crate::dynamics::{
    cut, cycle_count_oracle, dynamical_core, flow_core, growth_rate, growth_slope, row_sum_growth,
    stretch, strongly_connected_components, CountMatrix, GrowthMode, WeightedDigraph,
};
use crate::fixtures;
use crate::linalg::{self, q, Q};
use crate::track::{gf_growth, intersection_growth, transition_graph, FoldingCycle};

/// Seed used by the acceptance suite unless overridden.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Horizon for the intersection-growth criterion.
    pub n_max: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            n_max: 40,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Set on a failure shown to be intrinsic to the quantity being tested
    /// rather than to the implementation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub elapsed_ms: f64,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} [{}] {}: {} ({:.1} ms)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.elapsed_ms
        )?;
        match &self.note {
            Some(note) => write!(f, " [{note}]"),
            None => Ok(()),
        }
    }
}

pub const TITLES: [&str; 9] = [
    "Perron solver exactness",
    "oracle equivalence suite",
    "row-sum growth",
    "pairing well-definedness",
    "pipeline cross-validation",
    "cut/core algebra",
    "intersection growth",
    "entropy function properties",
    "cone engine exactness",
];

type Outcome = Result<(bool, String), String>;

pub fn run_criterion(id: u8, cfg: &SuiteConfig) -> Option<CriterionResult> {
    let title = *TITLES.get(usize::from(id).checked_sub(1)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(
        cfg.seed
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(u64::from(id)),
    );
    let start = Instant::now();
    let mut note = None;
    let outcome: Outcome = match id {
        1 => criterion_perron(),
        2 => criterion_oracle(&mut rng),
        3 => criterion_row_sums(&mut rng).map(|(passed, detail, n)| {
            note = n;
            (passed, detail)
        }),
        4 => criterion_pairing(),
        5 => criterion_pipeline(),
        6 => criterion_cut_core(&mut rng),
        7 => criterion_intersection(cfg.n_max),
        8 => criterion_entropy(&mut rng),
        9 => criterion_cones(&mut rng),
        _ => return None,
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    Some(CriterionResult {
        id,
        title,
        passed,
        detail,
        note,
        elapsed_ms,
    })
}

pub fn run_all(cfg: &SuiteConfig) -> Vec<CriterionResult> {
    (1..=9).filter_map(|id| run_criterion(id, cfg)).collect()
}

/// A random strongly connected digraph: `n` uniform in `1..=max_vertices`,
/// `m` uniform in `n..=max_edges` edges with uniform endpoints (loops and
/// parallel edges allowed) and weights uniform in `1..=max_weight`, rejected
/// and redrawn until strongly connected.
pub fn random_strong_digraph(
    rng: &mut impl Rng,
    max_vertices: usize,
    max_edges: usize,
    max_weight: u64,
) -> WeightedDigraph {
    loop {
        let n = rng.gen_range(1..=max_vertices);
        let m = rng.gen_range(n..=max_edges.max(n));
        let mut g = WeightedDigraph::new(n);
        for _ in 0..m {
            g.add_edge(
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(1..=max_weight),
            );
        }
        let comp = strongly_connected_components(n, g.edges.iter().map(|e| (e.src, e.dst)));
        if comp.iter().all(|&c| c == comp[0]) && !g.edges.is_empty() {
            return g;
        }
    }
}

/// A random acyclic digraph: every edge goes from a lower to a higher vertex.
pub fn random_dag(rng: &mut impl Rng, n: usize, edges: usize) -> WeightedDigraph {
    let mut g = WeightedDigraph::new(n);
    if n < 2 {
        return g;
    }
    for _ in 0..edges {
        let a = rng.gen_range(0..n - 1);
        let b = rng.gen_range(a + 1..n);
        g.add_edge(a, b, rng.gen_range(0..=3));
    }
    g
}

/// A random strongly connected 4-vertex graph whose edge weights are
/// nonnegative integer combinations of three parameters, each edge using at
/// least one.
pub fn random_linear_model(rng: &mut impl Rng) -> EntropyModel {
    let g = loop {
        let g = random_strong_digraph(rng, 4, 8, 1);
        if g.vertices == 4 {
            break g;
        }
    };
    let arcs: Vec<(usize, usize)> = g.edges.iter().map(|e| (e.src, e.dst)).collect();
    let coefficients = arcs
        .iter()
        .map(|_| loop {
            let c: Vec<u64> = (0..3).map(|_| rng.gen_range(0..=2)).collect();
            if c.iter().any(|&x| x > 0) {
                break c;
            }
        })
        .collect();
    EntropyModel::new(g.vertices, 3, arcs, coefficients)
        .expect("coefficients have the model dimension")
}

fn fmt_err(e: impl fmt::Display) -> String {
    e.to_string()
}

fn criterion_perron() -> Outcome {
    let g = WeightedDigraph::from_edges(2, &[(0, 0, 1), (0, 1, 1), (1, 0, 1)]);
    let start = Instant::now();
    let r = growth_rate(&g, GrowthMode::Unit).map_err(fmt_err)?;
    let elapsed = start.elapsed();
    // Larger root of x^2 - x - 1.
    let oracle = (1.0 + 5f64.sqrt()) / 2.0;
    let err = (r.lambda - oracle).abs();
    let passed = err <= 1e-9 && elapsed < Duration::from_millis(10);
    Ok((
        passed,
        format!(
            "lambda {:.12}, error {err:.2e}, solver time {:.3} ms",
            r.lambda,
            elapsed.as_secs_f64() * 1e3
        ),
    ))
}

fn criterion_oracle(rng: &mut ChaCha8Rng) -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let g = random_strong_digraph(rng, 6, 12, 3);
        let r = growth_rate(&g, GrowthMode::Weighted).map_err(fmt_err)?;
        let counts = cycle_count_oracle(&g, GrowthMode::Weighted, 40).map_err(fmt_err)?;
        let slope = growth_slope(&counts, 20..=40)
            .ok_or_else(|| format!("no closed walks of weight 20..40 in {g:?}"))?;
        worst = worst.max((r.log_lambda() - slope).abs());
    }
    let elapsed = start.elapsed();
    let passed = worst <= 0.05 && elapsed < Duration::from_secs(60);
    Ok((
        passed,
        format!("200 graphs, max |log lambda - slope| {worst:.4} (tol 0.05)"),
    ))
}

/// Row-sum horizon of the criterion, and the longer horizon used to show
/// that a miss is the estimator's `ln C / n` bias.
const ROW_SUM_N: usize = 40;
const ROW_SUM_LONG_N: usize = 160;

fn criterion_row_sums(rng: &mut ChaCha8Rng) -> Result<(bool, String, Option<String>), String> {
    let mut worst: f64 = 0.0;
    let mut misses: Vec<(f64, f64)> = Vec::new();
    let mut check = |w: &CountMatrix, g: &WeightedDigraph| -> Result<(), String> {
        let log_lambda = growth_rate(g, GrowthMode::Unit)
            .map_err(fmt_err)?
            .log_lambda();
        let err = (row_sum_growth(w, ROW_SUM_N).ln() - log_lambda).abs();
        worst = worst.max(err);
        if err > 0.02 {
            let long = (row_sum_growth(w, ROW_SUM_LONG_N).ln() - log_lambda).abs();
            misses.push((err, long));
        }
        Ok(())
    };
    for _ in 0..100 {
        let g = random_strong_digraph(rng, 6, 12, 1);
        check(&CountMatrix::adjacency(&g), &g)?;
    }
    for cycle in fixtures::endperiodic_family() {
        let tg = transition_graph(&cycle).map_err(fmt_err)?;
        check(&tg.matrix, &tg.graph)?;
    }
    let detail = format!(
        "110 graphs, {} outside tol, max error {worst:.4} (tol 0.02)",
        misses.len()
    );
    // A miss is intrinsic when n * error is the same at both horizons: the
    // estimate then equals ln(lambda) + ln(C)/n exactly, with ln C > 0.02 n.
    let intrinsic = misses.iter().all(|&(short, long)| {
        let (a, b) = (short * ROW_SUM_N as f64, long * ROW_SUM_LONG_N as f64);
        (a - b).abs() <= 1e-3 * a && long <= 0.02
    });
    let note = (!misses.is_empty() && intrinsic).then(|| {
        let constants: Vec<String> = misses
            .iter()
            .map(|&(e, _)| format!("{:.3}", e * ROW_SUM_N as f64))
            .collect();
        format!(
            "estimator bias: n * error is constant, ln C = [{}] > {:.1}",
            constants.join(", "),
            0.02 * ROW_SUM_N as f64
        )
    });
    Ok((misses.is_empty(), detail, note))
}

fn criterion_pairing() -> Outcome {
    let mut walks = 0;
    let mut checks = 0;
    for (name, tri) in fixtures::census() {
        let eqs = BranchEquations::new(&tri).map_err(fmt_err)?;
        let (phi, routes, sectors) = flow_graph_with_routes(&tri).map_err(fmt_err)?;
        let basis = eqs.solution_basis();
        for walk in phi.closed_walks(6) {
            walks += 1;
            for w in &basis {
                let a = pairing(&phi, &walk, w, &eqs).map_err(fmt_err)?;
                let b =
                    pairing_opposite(&phi, &routes, &sectors, &walk, w, &eqs).map_err(fmt_err)?;
                checks += 1;
                if a != b {
                    return Ok((false, format!("{name}: walk {walk:?} pairs {a} vs {b}")));
                }
            }
        }
    }
    Ok((
        true,
        format!("6 triangulations, {walks} closed walks, {checks} pairings equal"),
    ))
}

/// Perron root of the figure-eight monodromy matrix [[2,1],[1,1]] from its trace and determinant.
fn monodromy_oracle() -> f64 {
    let (tr, det) = (3.0f64, 1.0f64);
    (tr + (tr * tr - 4.0 * det).sqrt()) / 2.0
}

fn criterion_pipeline() -> Outcome {
    let tri = crate::tri::VeeringTriangulation::from_json(fixtures::FIG8).map_err(fmt_err)?;
    let r = stretch(&tri, &FaceClass::zero(tri.num_faces()), &[1, 0, 1, 0], 0).map_err(fmt_err)?;
    let err = (r.lambda - monodromy_oracle()).abs();
    Ok((
        err <= 1e-8,
        format!("lambda {:.12}, error {err:.2e} (tol 1e-8)", r.lambda),
    ))
}

fn to_i64(v: &[Q]) -> Vec<i64> {
    v.iter()
        .map(|x| x.to_integer().to_i64().expect("small ray entries"))
        .collect()
}

fn criterion_cut_core(rng: &mut ChaCha8Rng) -> Outcome {
    let mut classes = 0;
    let mut cycles = 0;
    for (name, tri) in fixtures::census() {
        let eqs = BranchEquations::new(&tri).map_err(fmt_err)?;
        let phi = flow_graph(&tri).map_err(fmt_err)?;
        let cone = carried_cone(&tri).map_err(fmt_err)?;
        let mut etas = vec![vec![0i64; tri.num_faces()]];
        etas.extend(cone.rays.iter().map(|r| to_i64(r)));
        if cone.rays.len() > 1 {
            let sum: Vec<i64> = (0..tri.num_faces())
                .map(|j| etas[1..].iter().map(|e| e[j]).sum())
                .collect();
            etas.push(sum);
        }
        for eta in etas {
            classes += 1;
            let eta = FaceClass::new(eta);
            let once = cut(&phi, &eta, &eqs).map_err(fmt_err)?;
            let twice = cut(&once, &eta, &eqs).map_err(fmt_err)?;
            if once != twice {
                return Ok((
                    false,
                    format!("{name}: cut is not idempotent for {:?}", eta.weights),
                ));
            }
            let core = flow_core(&once);
            if flow_core(&core) != core {
                return Ok((false, format!("{name}: flow core is not idempotent")));
            }
            let g = WeightedDigraph::unit_from_flow_graph(&once);
            if dynamical_core(&dynamical_core(&g)) != dynamical_core(&g) {
                return Ok((false, format!("{name}: dynamical core is not idempotent")));
            }
            for walk in once.closed_walks(6) {
                cycles += 1;
                let p = pairing(&once, &walk, &eta, &eqs).map_err(fmt_err)?;
                if p != 0 {
                    return Ok((
                        false,
                        format!(
                            "{name}: surviving walk {walk:?} pairs {p} with {:?}",
                            eta.weights
                        ),
                    ));
                }
            }
        }
    }
    for _ in 0..100 {
        let g = random_strong_digraph(rng, 6, 12, 3);
        if dynamical_core(&dynamical_core(&g)) != dynamical_core(&g) {
            return Ok((
                false,
                "dynamical core of a random graph is not idempotent".into(),
            ));
        }
        let n = rng.gen_range(1..=8);
        let edges = rng.gen_range(0..=16);
        let dag = random_dag(rng, n, edges);
        if !dynamical_core(&dag).is_empty() {
            return Ok((false, "dynamical core of a DAG is nonempty".into()));
        }
    }
    Ok((
        true,
        format!("{classes} carried classes, {cycles} surviving walks pair to 0, 100 DAGs"),
    ))
}

fn criterion_intersection(n_max: usize) -> Outcome {
    let mut cycles = vec![(
        "punctured torus",
        FoldingCycle::from_json(fixtures::PUNCTURED_TORUS).map_err(fmt_err)?,
    )];
    for (i, text) in fixtures::ENDPERIODIC.iter().enumerate() {
        let name = ["endperiodic 1", "endperiodic 2", "endperiodic 3"][i];
        cycles.push((name, FoldingCycle::from_json(text).map_err(fmt_err)?));
    }
    let mut worst_gap: f64 = 0.0;
    let mut worst_excess: f64 = f64::NEG_INFINITY;
    let mut pairs = 0;
    for (name, cycle) in cycles {
        let g = transition_graph(&cycle).map_err(fmt_err)?;
        let log_lambda = gf_growth(&g).map_err(fmt_err)?.lambda.ln();
        let n = g.branches.len();
        let mut best = f64::NEG_INFINITY;
        for (ca, cb) in [(1, 0), (0, 1), (1, 1)] {
            let mut c = vec![0u64; n];
            c[0] = ca;
            c[1] = cb;
            let ds = (0..n)
                .map(|j| (0..n).map(|k| u64::from(k == j)).collect::<Vec<u64>>())
                .chain([vec![1; n]]);
            for d in ds {
                let ig = intersection_growth(&g, &c, &d, n_max).map_err(fmt_err)?;
                pairs += 1;
                if let Some(s) = ig.slope {
                    best = best.max(s);
                    worst_excess = worst_excess.max(s - log_lambda);
                }
            }
        }
        let gap = (best - log_lambda).abs();
        if !gap.is_finite() {
            return Ok((false, format!("{name}: no intersection count grows")));
        }
        worst_gap = worst_gap.max(gap);
    }
    let passed = worst_gap <= 0.02 && worst_excess <= 0.01;
    Ok((
        passed,
        format!("4 cycles, {pairs} (c,d) pairs, max |max slope - log lambda| {worst_gap:.2e}, max excess {worst_excess:.2e}"),
    ))
}

/// An entropy function on a cone given by generators, sampled in generator coordinates.
struct EntropyFixture {
    name: String,
    generators: Vec<Vec<Q>>,
    eval: Box<dyn Fn(&[Q]) -> Result<EntropySample, crate::cones::ConeError>>,
}

fn combine(generators: &[Vec<Q>], coeffs: &[Q]) -> Vec<Q> {
    let dim = generators[0].len();
    (0..dim)
        .map(|j| generators.iter().zip(coeffs).map(|(g, c)| &g[j] * c).sum())
        .collect()
}

fn entropy_fixtures(rng: &mut ChaCha8Rng) -> Result<Vec<EntropyFixture>, String> {
    let mut out = Vec::new();
    for (name, tri) in fixtures::census() {
        let cone = carried_cone(&tri).map_err(fmt_err)?;
        if cone.rays.is_empty() {
            continue;
        }
        let ctx =
            EntropyContext::new(&tri, &FaceClass::zero(tri.num_faces()), 0).map_err(fmt_err)?;
        let interior = combine(&cone.rays, &vec![q(1); cone.rays.len()]);
        if !ctx.sample(&interior).map_err(fmt_err)?.is_ok() {
            continue;
        }
        out.push(EntropyFixture {
            name: name.to_string(),
            generators: cone.rays.clone(),
            eval: Box::new(move |x| ctx.sample(x)),
        });
    }
    for i in 0..3 {
        let model = random_linear_model(rng);
        let generators = (0..3)
            .map(|j| (0..3).map(|k| q(i64::from(j == k))).collect())
            .collect();
        out.push(EntropyFixture {
            name: format!("random model {}", i + 1),
            generators,
            eval: Box::new(move |x| model.sample(x)),
        });
    }
    Ok(out)
}

fn criterion_entropy(rng: &mut ChaCha8Rng) -> Outcome {
    let fixtures = entropy_fixtures(rng)?;
    let mut worst_hom: f64 = 0.0;
    let mut worst_convex: f64 = 0.0;
    let mut worst_cont: f64 = 0.0;
    let value = |f: &EntropyFixture, x: &[Q]| -> Result<f64, String> {
        let s = (f.eval)(x).map_err(fmt_err)?;
        match (s.is_ok(), s.ent) {
            (true, Some(e)) => Ok(e),
            _ => Err(format!(
                "{}: sample {:?} has status {:?}",
                f.name, s.xi, s.status
            )),
        }
    };
    for f in &fixtures {
        let r = f.generators.len();
        for _ in 0..20 {
            let c0: Vec<i64> = (0..r).map(|_| rng.gen_range(1..=5)).collect();
            let c1: Vec<i64> = (0..r).map(|_| rng.gen_range(1..=5)).collect();
            let xi0 = combine(&f.generators, &c0.iter().map(|&c| q(c)).collect::<Vec<_>>());
            let xi1 = combine(&f.generators, &c1.iter().map(|&c| q(c)).collect::<Vec<_>>());

            let report = convexity_probe(|x| (f.eval)(x), &xi0, &xi1, 9)
                .map_err(|e| format!("{}: {e}", f.name))?;
            worst_convex = worst_convex.max(report.max_violation);

            let base = value(f, &xi0)?;
            for k in 1..=5i64 {
                let scaled: Vec<Q> = xi0.iter().map(|x| x * q(k)).collect();
                worst_hom = worst_hom.max((value(f, &scaled)? * k as f64 - base).abs());
            }

            let perturbed: Vec<Q> = c0
                .iter()
                .map(|&c| q(c) * linalg::q_ratio(if rng.gen_bool(0.5) { 1001 } else { 999 }, 1000))
                .collect();
            let moved = value(f, &combine(&f.generators, &perturbed))?;
            worst_cont = worst_cont.max((moved - base).abs());
        }
    }
    let names: Vec<&str> = fixtures.iter().map(|f| f.name.as_str()).collect();
    let passed = worst_hom <= 1e-9 && worst_convex <= 1e-6 && worst_cont <= 0.01;
    Ok((
        passed,
        format!(
            "fixtures [{}], homogeneity {worst_hom:.1e} (tol 1e-9), convexity {worst_convex:.1e} (tol 1e-6), continuity {worst_cont:.1e} (tol 0.01)",
            names.join(", ")
        ),
    ))
}

fn random_vector(rng: &mut ChaCha8Rng, dim: usize, range: i64) -> Vec<Q> {
    (0..dim).map(|_| q(rng.gen_range(-range..=range))).collect()
}

fn criterion_cones(rng: &mut ChaCha8Rng) -> Outcome {
    let mut cones: Vec<(String, RationalCone)> = Vec::new();
    for (name, tri) in fixtures::census() {
        cones.push((
            format!("carried {name}"),
            carried_cone(&tri).map_err(fmt_err)?,
        ));
    }
    for i in 0..20 {
        let dim = rng.gen_range(2..=4);
        let rays: Vec<Vec<Q>> = (0..rng.gen_range(1..=6))
            .map(|_| random_vector(rng, dim, 3))
            .collect();
        let lines: Vec<Vec<Q>> = (0..rng.gen_range(0..=1))
            .map(|_| random_vector(rng, dim, 2))
            .collect();
        cones.push((
            format!("random {i}"),
            RationalCone::from_generators(dim, &rays, &lines).map_err(fmt_err)?,
        ));
    }
    for (name, c) in &cones {
        if !c.check_double_description() {
            return Ok((false, format!("{name}: descriptions disagree")));
        }
    }

    let mut compositions = 0;
    for (name, c) in &cones {
        let mid = rng.gen_range(1..=c.dim.max(1));
        let r1 = RestrictionMap::new(
            c.dim,
            (0..mid).map(|_| random_vector(rng, c.dim, 2)).collect(),
        )
        .map_err(fmt_err)?;
        let r2 = RestrictionMap::new(
            mid,
            (0..rng.gen_range(1..=mid))
                .map(|_| random_vector(rng, mid, 2))
                .collect(),
        )
        .map_err(fmt_err)?;
        let stepwise = image_cone(&image_cone(c, &r1).map_err(fmt_err)?, &r2).map_err(fmt_err)?;
        let direct = image_cone(c, &r1.then(&r2).map_err(fmt_err)?).map_err(fmt_err)?;
        let mutual = stepwise
            .rays
            .iter()
            .chain(&stepwise.lines)
            .all(|r| direct.contains(r).unwrap_or(false))
            && direct
                .rays
                .iter()
                .chain(&direct.lines)
                .all(|r| stepwise.contains(r).unwrap_or(false));
        if stepwise != direct || !mutual {
            return Ok((false, format!("{name}: image composition fails")));
        }
        compositions += 1;
    }

    let fig8 = carried_cone(
        &crate::tri::VeeringTriangulation::from_json(fixtures::FIG8).map_err(fmt_err)?,
    )
    .map_err(fmt_err)?;
    let fibre = fig8.contains(&[q(1), q(0), q(1), q(0)]).map_err(fmt_err)?;
    let interior = fig8
        .membership(&[q(1), q(1), q(1), q(1)])
        .map_err(fmt_err)?
        == Membership::RelativeInterior;
    Ok((
        fibre && interior,
        format!("{} cones verified, {compositions} compositions exact, figure-eight fibre carried: {fibre}", cones.len()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let a = random_strong_digraph(&mut ChaCha8Rng::seed_from_u64(7), 6, 12, 3);
        let b = random_strong_digraph(&mut ChaCha8Rng::seed_from_u64(7), 6, 12, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn random_graphs_are_strongly_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = random_strong_digraph(&mut rng, 6, 12, 3);
            assert!(g.edges.len() <= 12);
            assert_eq!(dynamical_core(&g).edges.len(), g.edges.len());
        }
    }

    #[test]
    fn unknown_criterion() {
        assert!(run_criterion(0, &SuiteConfig::default()).is_none());
        assert!(run_criterion(10, &SuiteConfig::default()).is_none());
    }

    #[test]
    fn monodromy_oracle_is_golden_squared() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((monodromy_oracle() - phi * phi).abs() < 1e-12);
    }
}
