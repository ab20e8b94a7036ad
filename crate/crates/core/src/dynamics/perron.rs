use serde::Serialize;

use super::core::{dynamical_core, strongly_connected_components};
use super::{DynamicsError, GrowthMode, WeightedDigraph};

/// Target accuracy of the growth rate root: bisection stops once
/// `|ρ(A(t)) - 1|` is below this or the bracket is narrower than `1e-14`.
pub const GROWTH_TOL: f64 = 1e-12;
const BRACKET_TOL: f64 = 1e-14;
/// Cap on power-iteration steps for a single spectral radius.
pub const MAX_ITERATIONS: usize = 100_000;
const PERRON_REL_TOL: f64 = 1e-14;

/// Spectral radius of a nonnegative matrix with Collatz-Wielandt bounds
/// `lower <= rho <= upper`, and a nonnegative eigenvector supported on a
/// dominant irreducible block.
#[derive(Debug, Clone, PartialEq)]
pub struct Perron {
    pub rho: f64,
    pub lower: f64,
    pub upper: f64,
    pub vector: Vec<f64>,
    pub block: Vec<usize>,
    pub iterations: usize,
}

/// Spectral radius of a square nonnegative matrix, computed block by block
/// over its irreducible components by power iteration on `B + I`.
pub fn spectral_radius(m: &[Vec<f64>]) -> Result<Perron, DynamicsError> {
    let n = m.len();
    let arcs = (0..n).flat_map(|i| (0..n).filter(move |&j| m[i][j] > 0.0).map(move |j| (i, j)));
    let comp = strongly_connected_components(n, arcs);
    let ncomp = comp.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut best = Perron {
        rho: 0.0,
        lower: 0.0,
        upper: 0.0,
        vector: vec![0.0; n],
        block: Vec::new(),
        iterations: 0,
    };
    let mut total_iterations = 0;
    for c in 0..ncomp {
        let idx: Vec<usize> = (0..n).filter(|&i| comp[i] == c).collect();
        let has_edge = idx.iter().any(|&i| idx.iter().any(|&j| m[i][j] > 0.0));
        if !has_edge {
            continue;
        }
        let block: Vec<Vec<f64>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| m[i][j]).collect())
            .collect();
        let (rho, lower, upper, v, iters) = irreducible_radius(&block)?;
        total_iterations += iters;
        if rho > best.rho {
            let mut vector = vec![0.0; n];
            for (k, &i) in idx.iter().enumerate() {
                vector[i] = v[k];
            }
            best = Perron {
                rho,
                lower,
                upper,
                vector,
                block: idx,
                iterations: 0,
            };
        }
    }
    best.iterations = total_iterations;
    Ok(best)
}

/// Plain power-iteration steps tried before switching to repeated squaring.
const POWER_STEPS: usize = 2_000;
const MAX_SQUARINGS: usize = 64;

/// Collatz-Wielandt bounds of `b` at a positive vector `x`.
fn cw_bounds(b: &[Vec<f64>], x: &[f64]) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for (row, &xi) in b.iter().zip(x) {
        let r = row.iter().zip(x).map(|(a, v)| a * v).sum::<f64>() / xi;
        lo = lo.min(r);
        hi = hi.max(r);
    }
    (lo, hi)
}

fn converged(lo: f64, hi: f64) -> bool {
    hi - lo <= PERRON_REL_TOL * hi.max(1.0)
}

fn irreducible_radius(b: &[Vec<f64>]) -> Result<(f64, f64, f64, Vec<f64>, usize), DynamicsError> {
    let n = b.len();
    let mut x = vec![1.0; n];
    let mut y = vec![0.0; n];
    for iter in 1..=POWER_STEPS {
        for i in 0..n {
            y[i] = x[i] + b[i].iter().zip(&x).map(|(a, v)| a * v).sum::<f64>();
        }
        let scale = y.iter().cloned().fold(0.0, f64::max);
        for i in 0..n {
            x[i] = y[i] / scale;
        }
        let (lo, hi) = cw_bounds(b, &x);
        if converged(lo, hi) {
            return Ok((0.5 * (lo + hi), lo.max(0.0), hi, x, iter));
        }
    }
    // Slow mixing: raise B + I to the power 2^k by squaring. Products of
    // nonnegative matrices lose no relative accuracy, so the rows of a high
    // power give the Perron vector even when the spectral gap is tiny.
    let mut s: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| b[i][j] + if i == j { 1.0 } else { 0.0 })
                .collect()
        })
        .collect();
    for k in 1..=MAX_SQUARINGS.min(MAX_ITERATIONS - POWER_STEPS) {
        let mut next = vec![vec![0.0; n]; n];
        for i in 0..n {
            for l in 0..n {
                let a = s[i][l];
                if a != 0.0 {
                    for j in 0..n {
                        next[i][j] += a * s[l][j];
                    }
                }
            }
        }
        let scale = next.iter().flatten().cloned().fold(0.0, f64::max);
        s = next
            .into_iter()
            .map(|r| r.into_iter().map(|v| v / scale).collect())
            .collect();
        let v: Vec<f64> = s.iter().map(|r| r.iter().sum()).collect();
        let top = v.iter().cloned().fold(0.0, f64::max);
        if v.iter().any(|&vi| !(vi > 0.0)) || !(top > 0.0) {
            continue;
        }
        let v: Vec<f64> = v.iter().map(|vi| vi / top).collect();
        let (lo, hi) = cw_bounds(b, &v);
        if converged(lo, hi) {
            return Ok((0.5 * (lo + hi), lo.max(0.0), hi, v, POWER_STEPS + k));
        }
    }
    Err(DynamicsError::NonConvergence {
        iterations: MAX_ITERATIONS,
    })
}

/// Exponential growth rate of a weighted digraph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthResult {
    pub lambda: f64,
    /// The root `t*` of `ρ(A(t)) = 1`; `1/lambda`.
    pub t_star: f64,
    pub residual: f64,
    pub iterations: usize,
    /// Perron vector of `A(t*)` on the dominant block.
    #[serde(skip)]
    pub vector: Vec<f64>,
    #[serde(skip)]
    pub dominant: Vec<usize>,
}

impl GrowthResult {
    pub fn log_lambda(&self) -> f64 {
        self.lambda.ln()
    }
}

/// The growth rate of closed walks in `g`: in unit mode the spectral radius
/// of the adjacency matrix, in weighted mode `1/t*` where `t*` solves
/// `ρ(A(t)) = 1` for `A(t)[u][v] = Σ t^weight`. Bounded growth on a
/// nonempty core gives `lambda = 1`.
pub fn growth_rate(g: &WeightedDigraph, mode: GrowthMode) -> Result<GrowthResult, DynamicsError> {
    let core = dynamical_core(g);
    if core.is_empty() {
        return Err(DynamicsError::EmptyCore);
    }
    match mode {
        GrowthMode::Unit => {
            let p = spectral_radius(&core.count_matrix())?;
            Ok(GrowthResult {
                lambda: p.rho,
                t_star: 1.0 / p.rho,
                residual: p.upper - p.lower,
                iterations: p.iterations,
                vector: p.vector,
                dominant: p.block,
            })
        }
        GrowthMode::Weighted => weighted_growth(&core),
    }
}

fn weighted_growth(core: &WeightedDigraph) -> Result<GrowthResult, DynamicsError> {
    if let Some(witness) = zero_weight_cycle(core) {
        return Err(DynamicsError::ZeroWeightCycle { witness });
    }
    let mut iterations = 0;
    let mut eval = |t: f64| -> Result<Perron, DynamicsError> {
        let p = spectral_radius(&core.matrix_at(t))?;
        iterations += p.iterations;
        Ok(p)
    };
    let at_one = eval(1.0)?;
    if at_one.upper <= 1.0 + GROWTH_TOL {
        return Ok(GrowthResult {
            lambda: 1.0,
            t_star: 1.0,
            residual: (at_one.rho - 1.0).abs(),
            iterations,
            vector: at_one.vector,
            dominant: at_one.block,
        });
    }
    let mut hi = 1.0;
    let mut lo = 0.5;
    let mut p_lo = eval(lo)?;
    while p_lo.rho >= 1.0 {
        hi = lo;
        lo *= 0.5;
        if lo < f64::MIN_POSITIVE {
            return Err(DynamicsError::NonConvergence { iterations });
        }
        p_lo = eval(lo)?;
    }
    let mut best = (lo, p_lo);
    while hi - lo > BRACKET_TOL * hi {
        let mid = 0.5 * (lo + hi);
        let p = eval(mid)?;
        let residual = (p.rho - 1.0).abs();
        let done = residual <= GROWTH_TOL;
        if p.rho > 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if residual < (best.1.rho - 1.0).abs() {
            best = (mid, p);
        }
        if done {
            break;
        }
    }
    let (t_star, p) = best;
    Ok(GrowthResult {
        lambda: 1.0 / t_star,
        t_star,
        residual: (p.rho - 1.0).abs(),
        iterations,
        vector: p.vector,
        dominant: p.block,
    })
}

/// Labels of the edges of some cycle made only of weight-zero edges, if one exists.
fn zero_weight_cycle(g: &WeightedDigraph) -> Option<Vec<usize>> {
    let zero: Vec<_> = g.edges.iter().filter(|e| e.weight == 0).collect();
    let comp = strongly_connected_components(g.vertices, zero.iter().map(|e| (e.src, e.dst)));
    let first = zero.iter().find(|e| comp[e.src] == comp[e.dst])?;
    if first.src == first.dst {
        return Some(vec![first.label]);
    }
    // Breadth-first search back from first.dst to first.src inside the component.
    let c = comp[first.src];
    let mut prev: Vec<Option<usize>> = vec![None; g.vertices];
    let mut seen = vec![false; g.vertices];
    let mut queue = std::collections::VecDeque::from([first.dst]);
    seen[first.dst] = true;
    while let Some(v) = queue.pop_front() {
        if v == first.src {
            break;
        }
        for (k, e) in zero.iter().enumerate() {
            if e.src == v && comp[e.dst] == c && !seen[e.dst] {
                seen[e.dst] = true;
                prev[e.dst] = Some(k);
                queue.push_back(e.dst);
            }
        }
    }
    let mut path = vec![first.label];
    let mut v = first.src;
    let mut back = Vec::new();
    while v != first.dst {
        let k = prev[v].expect("target reachable inside a strong component");
        back.push(zero[k].label);
        v = zero[k].src;
    }
    path.extend(back.into_iter().rev());
    Some(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOLDEN: f64 = 1.618_033_988_749_895;

    #[test]
    fn golden_ratio_graph() {
        let g = WeightedDigraph::from_edges(2, &[(0, 0, 1), (0, 1, 1), (1, 0, 1)]);
        let unit = growth_rate(&g, GrowthMode::Unit).unwrap();
        assert!((unit.lambda - GOLDEN).abs() < 1e-12);
        let weighted = growth_rate(&g, GrowthMode::Weighted).unwrap();
        assert!((weighted.lambda - GOLDEN).abs() < 1e-12);
        assert!(weighted.residual <= GROWTH_TOL);
    }

    #[test]
    fn weights_slow_growth() {
        // Cycles of weight 1 and 2 through one vertex: 1 = t + t^2.
        let g = WeightedDigraph::from_edges(1, &[(0, 0, 1), (0, 0, 2)]);
        let r = growth_rate(&g, GrowthMode::Weighted).unwrap();
        assert!((r.lambda - GOLDEN).abs() < 1e-12);
        let unit = growth_rate(&g, GrowthMode::Unit).unwrap();
        assert!((unit.lambda - 2.0).abs() < 1e-12);
    }

    #[test]
    fn single_cycle_has_growth_one() {
        let g = WeightedDigraph::from_edges(3, &[(0, 1, 2), (1, 2, 1), (2, 0, 3)]);
        assert_eq!(growth_rate(&g, GrowthMode::Weighted).unwrap().lambda, 1.0);
        assert!((growth_rate(&g, GrowthMode::Unit).unwrap().lambda - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_weight_cycle_is_reported_with_witness() {
        let g = WeightedDigraph::from_edges(3, &[(0, 1, 0), (1, 2, 0), (2, 0, 0), (0, 0, 1)]);
        match growth_rate(&g, GrowthMode::Weighted) {
            Err(DynamicsError::ZeroWeightCycle { witness }) => {
                let mut w = witness.clone();
                w.sort();
                assert_eq!(w, vec![0, 1, 2]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dag_has_empty_core() {
        let g = WeightedDigraph::from_edges(2, &[(0, 1, 1)]);
        assert_eq!(
            growth_rate(&g, GrowthMode::Unit),
            Err(DynamicsError::EmptyCore)
        );
    }

    #[test]
    fn reducible_matrix_takes_largest_block() {
        let g = WeightedDigraph::from_edges(
            3,
            &[
                (0, 0, 1),
                (0, 1, 1),
                (1, 1, 1),
                (1, 1, 1),
                (1, 2, 1),
                (2, 1, 1),
            ],
        );
        let p = spectral_radius(&g.count_matrix()).unwrap();
        assert!((p.rho - (1.0 + 2f64.sqrt())).abs() < 1e-12);
        assert_eq!(p.block, vec![1, 2]);
    }
}
