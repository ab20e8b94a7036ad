use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::core::strongly_connected_components;
use super::{DynamicsError, GrowthMode, WeightedDigraph};

/// Largest `n_max` accepted by [`cycle_count_oracle`].
pub const ORACLE_CAP: usize = 400;

/// Exact number `c_n` of rooted closed walks of total weight `n`
/// (unit mode: of length `n`) for `n = 1..=n_max`; entry `n - 1` is `c_n`.
pub fn cycle_count_oracle(
    g: &WeightedDigraph,
    mode: GrowthMode,
    n_max: usize,
) -> Result<Vec<BigUint>, DynamicsError> {
    if n_max > ORACLE_CAP {
        return Err(DynamicsError::CapExceeded {
            n_max,
            cap: ORACLE_CAP,
        });
    }
    let g = match mode {
        GrowthMode::Unit => g.with_unit_weights(),
        GrowthMode::Weighted => g.clone(),
    };
    let zero_order = zero_weight_order(&g)?;
    let positive: Vec<_> = g.edges.iter().filter(|e| e.weight > 0).collect();
    let n = g.vertices;
    let mut counts = vec![BigUint::zero(); n_max];
    for s in 0..n {
        // walks[m][v]: walks from s to v of total weight m.
        let mut walks: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); n]; n_max + 1];
        walks[0][s] = BigUint::from(1u32);
        for m in 0..=n_max {
            for e in &positive {
                let w = e.weight as usize;
                if w <= m && !walks[m - w][e.src].is_zero() {
                    let add = walks[m - w][e.src].clone();
                    walks[m][e.dst] += add;
                }
            }
            for e in &zero_order {
                if !walks[m][e.0].is_zero() {
                    let add = walks[m][e.0].clone();
                    walks[m][e.1] += add;
                }
            }
            if m > 0 {
                counts[m - 1] += &walks[m][s];
            }
        }
    }
    Ok(counts)
}

/// Weight-zero edges ordered so that each comes after every weight-zero edge
/// into its source; fails if the weight-zero edges contain a cycle.
fn zero_weight_order(g: &WeightedDigraph) -> Result<Vec<(usize, usize)>, DynamicsError> {
    let zero: Vec<_> = g.edges.iter().filter(|e| e.weight == 0).collect();
    let comp = strongly_connected_components(g.vertices, zero.iter().map(|e| (e.src, e.dst)));
    if let Some(e) = zero.iter().find(|e| comp[e.src] == comp[e.dst]) {
        return Err(DynamicsError::ZeroWeightCycle {
            witness: vec![e.label],
        });
    }
    let mut indeg = vec![0usize; g.vertices];
    for e in &zero {
        indeg[e.dst] += 1;
    }
    let mut ready: Vec<usize> = (0..g.vertices).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(zero.len());
    while let Some(v) = ready.pop() {
        for e in zero.iter().filter(|e| e.src == v) {
            order.push((e.src, e.dst));
            indeg[e.dst] -= 1;
            if indeg[e.dst] == 0 {
                ready.push(e.dst);
            }
        }
    }
    Ok(order)
}

/// Natural logarithm of a big integer; `-inf` for zero.
pub fn big_ln(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("below f64 range").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit value");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Least-squares slope of `ln c_n` against `n` over `n` in `range`, using only
/// the terms with `c_n > 0`. `counts[n - 1]` is `c_n`. When the window holds
/// fewer than two positive terms (a long period), it is extended downwards
/// until it holds two.
pub fn growth_slope(counts: &[BigUint], range: std::ops::RangeInclusive<usize>) -> Option<f64> {
    let (lo, hi) = (*range.start(), (*range.end()).min(counts.len()));
    let positive = |n: &usize| *n >= 1 && !counts[n - 1].is_zero();
    let mut ns: Vec<usize> = (lo..=hi).filter(positive).collect();
    if ns.len() < 2 {
        let below: Vec<usize> = (1..lo.min(hi + 1))
            .rev()
            .filter(positive)
            .take(2 - ns.len())
            .collect();
        ns.extend(below);
    }
    let points: Vec<(f64, f64)> = ns
        .into_iter()
        .map(|n| (n as f64, big_ln(&counts[n - 1])))
        .collect();
    least_squares_slope(&points)
}

pub fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

/// A square matrix of nonnegative big integers, used for exact powers of transition matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountMatrix {
    pub n: usize,
    pub entries: Vec<Vec<BigUint>>,
}

impl CountMatrix {
    pub fn zeros(n: usize) -> CountMatrix {
        CountMatrix {
            n,
            entries: vec![vec![BigUint::zero(); n]; n],
        }
    }

    pub fn identity(n: usize) -> CountMatrix {
        let mut m = CountMatrix::zeros(n);
        for i in 0..n {
            m.entries[i][i] = BigUint::from(1u32);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> CountMatrix {
        CountMatrix {
            n: rows.len(),
            entries: rows
                .iter()
                .map(|r| r.iter().map(|&x| BigUint::from(x)).collect())
                .collect(),
        }
    }

    /// Edge multiplicities of a digraph.
    pub fn adjacency(g: &WeightedDigraph) -> CountMatrix {
        let mut m = CountMatrix::zeros(g.vertices);
        for e in &g.edges {
            m.entries[e.src][e.dst] += 1u32;
        }
        m
    }

    pub fn mul(&self, other: &CountMatrix) -> CountMatrix {
        let mut out = CountMatrix::zeros(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..self.n {
                    if !other.entries[k][j].is_zero() {
                        out.entries[i][j] += &self.entries[i][k] * &other.entries[k][j];
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, exp: usize) -> CountMatrix {
        let mut result = CountMatrix::identity(self.n);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, v: &[BigUint]) -> Vec<BigUint> {
        let mut out = vec![BigUint::zero(); self.n];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in 0..self.n {
                if !self.entries[i][j].is_zero() {
                    out[j] += vi * &self.entries[i][j];
                }
            }
        }
        out
    }

    pub fn row_sums(&self) -> Vec<BigUint> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    /// Total of all entries.
    pub fn total(&self) -> BigUint {
        self.row_sums().into_iter().sum()
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_f64().unwrap_or(f64::INFINITY))
                    .collect()
            })
            .collect()
    }
}

/// The estimate `max_i (Σ_j (W^n)_ij)^(1/n)` of the growth rate of `W`;
/// zero when `W^n` vanishes.
pub fn row_sum_growth(w: &CountMatrix, n_max: usize) -> f64 {
    let power = w.pow(n_max);
    let best = power.row_sums().into_iter().max().unwrap_or_default();
    if best.is_zero() {
        0.0
    } else {
        (big_ln(&best) / n_max as f64).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(xs: &[u64]) -> Vec<BigUint> {
        xs.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn slope_window_extends_for_long_periods() {
        let g = WeightedDigraph::from_edges(2, &[(0, 1, 8), (1, 0, 8)]);
        let c = cycle_count_oracle(&g, GrowthMode::Weighted, 40).unwrap();
        assert_eq!(growth_slope(&c, 20..=40), Some(0.0));
    }

    #[test]
    fn golden_graph_counts_are_lucas_numbers() {
        let g = WeightedDigraph::from_edges(2, &[(0, 0, 1), (0, 1, 1), (1, 0, 1)]);
        let c = cycle_count_oracle(&g, GrowthMode::Unit, 8).unwrap();
        assert_eq!(c, big(&[1, 3, 4, 7, 11, 18, 29, 47]));
    }

    #[test]
    fn weighted_counts_with_zero_edges() {
        // A weight-0 edge 0 -> 1 followed by a weight-2 edge back: c_2 = 2 (two rootings).
        let g = WeightedDigraph::from_edges(2, &[(0, 1, 0), (1, 0, 2)]);
        let c = cycle_count_oracle(&g, GrowthMode::Weighted, 6).unwrap();
        assert_eq!(c, big(&[0, 2, 0, 2, 0, 2]));
        let loops = WeightedDigraph::from_edges(2, &[(0, 1, 0), (1, 0, 0)]);
        assert!(matches!(
            cycle_count_oracle(&loops, GrowthMode::Weighted, 3),
            Err(DynamicsError::ZeroWeightCycle { .. })
        ));
        assert!(matches!(
            cycle_count_oracle(&g, GrowthMode::Unit, 1000),
            Err(DynamicsError::CapExceeded { .. })
        ));
    }

    #[test]
    fn counts_match_matrix_traces() {
        let g = WeightedDigraph::from_edges(
            3,
            &[(0, 1, 1), (1, 2, 1), (2, 0, 1), (1, 0, 1), (2, 2, 1)],
        );
        let c = cycle_count_oracle(&g, GrowthMode::Unit, 10).unwrap();
        let a = CountMatrix::adjacency(&g);
        for n in 1..=10 {
            let p = a.pow(n);
            let trace: BigUint = (0..3).map(|i| p.entries[i][i].clone()).sum();
            assert_eq!(c[n - 1], trace);
        }
    }

    #[test]
    fn big_ln_matches_f64_and_scales() {
        let x = BigUint::from(123_456_789u64);
        assert!((big_ln(&x) - (123_456_789f64).ln()).abs() < 1e-12);
        let huge = BigUint::from(3u32).pow(2000);
        assert!((big_ln(&huge) - 2000.0 * 3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn row_sums_of_golden_matrix() {
        let w = CountMatrix::from_rows(&[vec![1, 1], vec![1, 0]]);
        let est = row_sum_growth(&w, 40);
        assert!((est.ln() - 1.618_033_988_749_895f64.ln()).abs() < 0.02);
        assert_eq!(
            row_sum_growth(&CountMatrix::from_rows(&[vec![0, 1], vec![0, 0]]), 5),
            0.0
        );
    }

    #[test]
    fn slope_ignores_zero_terms() {
        let c = big(&[0, 4, 0, 16, 0, 64]);
        let s = growth_slope(&c, 1..=6).unwrap();
        assert!((s - 2f64.ln()).abs() < 1e-12);
        assert_eq!(growth_slope(&big(&[0, 0, 0]), 1..=3), None);
    }
}
