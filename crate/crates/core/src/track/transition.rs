use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::fold::{apply_fold, FoldMove};
use super::{BranchId, HalfBranch, TrackError, TrainTrack};
use crate::dynamics::{
    dynamical_core, growth_rate, strongly_connected_components, CountMatrix, DynamicsError,
    GrowthMode, GrowthResult, WeightedDigraph,
};

/// A folding sequence returning a track to itself. `relabel[k]` names the
/// branch of the initial track identified with branch `branches[k]` of the
/// final track. Branches listed in `truncate` are the cut ends of rays in
/// an endperiodic surrogate: they must map simply and lose their outgoing
/// transitions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldingCycle {
    pub track: TrainTrack,
    pub moves: Vec<FoldMove>,
    pub relabel: Vec<BranchId>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub truncate: Vec<BranchId>,
}

impl FoldingCycle {
    pub fn from_json(text: &str) -> Result<FoldingCycle, TrackError> {
        serde_json::from_str(text).map_err(|e| TrackError::Malformed(e.to_string()))
    }
}

/// The transition graph `G_f`: one edge `b -> c` each time the image of
/// branch `b` runs over branch `c`. `matrix[b][c]` counts those edges.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionGraph {
    pub branches: Vec<BranchId>,
    pub matrix: CountMatrix,
    pub graph: WeightedDigraph,
    pub truncated: Vec<BranchId>,
    pub track: TrainTrack,
}

impl TransitionGraph {
    pub fn edge_count(&self) -> BigUint {
        self.matrix.total()
    }

    /// Rows with a single outgoing edge.
    pub fn simple_branches(&self) -> Vec<BranchId> {
        (0..self.branches.len())
            .filter(|&i| self.matrix.entries[i].iter().sum::<BigUint>().is_one())
            .map(|i| self.branches[i])
            .collect()
    }

    /// Branches whose image covers more than one branch.
    pub fn non_simple_branches(&self) -> Vec<BranchId> {
        (0..self.branches.len())
            .filter(|&i| self.matrix.entries[i].iter().sum::<BigUint>() > BigUint::one())
            .map(|i| self.branches[i])
            .collect()
    }
}

pub fn transition_graph(cycle: &FoldingCycle) -> Result<TransitionGraph, TrackError> {
    let track = &cycle.track;
    track.require_valid()?;
    let n = track.num_branches();
    if cycle.relabel.len() != n {
        return Err(TrackError::RelabelNotBijection);
    }
    let mut image = Vec::with_capacity(n);
    for &b in &cycle.relabel {
        image.push(
            track
                .index_of(b)
                .map_err(|_| TrackError::RelabelNotBijection)?,
        );
    }
    if image.iter().collect::<BTreeSet<_>>().len() != n {
        return Err(TrackError::RelabelNotBijection);
    }

    let mut current = track.clone();
    let mut composite = CountMatrix::identity(n);
    for mv in &cycle.moves {
        let (next, m) = apply_fold(&current, mv)?;
        composite = m.mul(&composite);
        current = next;
    }
    check_relabel(track, &current, &cycle.relabel)?;

    // Branch image[k] of the initial track maps to branch k of the final one,
    // whose path in the initial track is row k of the composite.
    let mut w = CountMatrix::zeros(n);
    for k in 0..n {
        w.entries[image[k]] = composite.entries[k].clone();
    }
    for &b in &cycle.truncate {
        let i = track.index_of(b)?;
        if !w.entries[i].iter().sum::<BigUint>().is_one() {
            return Err(TrackError::TruncationNotSimple { branch: b });
        }
        w.entries[i].iter_mut().for_each(|x| *x = BigUint::zero());
    }

    let mut graph = WeightedDigraph::new(n);
    for i in 0..n {
        for j in 0..n {
            let mut k = w.entries[i][j].clone();
            while !k.is_zero() {
                graph.add_edge(i, j, 1);
                k -= 1u32;
            }
        }
    }
    Ok(TransitionGraph {
        branches: track.branches.clone(),
        matrix: w,
        graph,
        truncated: cycle.truncate.clone(),
        track: track.clone(),
    })
}

/// The final track, with branches renamed by `relabel`, must have the same
/// switches as the initial one (sides compared as sets, possibly exchanged).
fn check_relabel(
    initial: &TrainTrack,
    last: &TrainTrack,
    relabel: &[BranchId],
) -> Result<(), TrackError> {
    let rename = |h: &HalfBranch| -> Result<HalfBranch, TrackError> {
        Ok(HalfBranch(relabel[last.index_of(h.0)?], h.1))
    };
    let key =
        |a: BTreeSet<HalfBranch>, b: BTreeSet<HalfBranch>| if a <= b { (a, b) } else { (b, a) };
    let mut wanted: Vec<_> = initial
        .switches
        .iter()
        .map(|s| {
            key(
                s.side_a.iter().copied().collect(),
                s.side_b.iter().copied().collect(),
            )
        })
        .collect();
    for (s, sw) in last.switches.iter().enumerate() {
        let a = sw
            .side_a
            .iter()
            .map(rename)
            .collect::<Result<BTreeSet<_>, _>>()?;
        let b = sw
            .side_b
            .iter()
            .map(rename)
            .collect::<Result<BTreeSet<_>, _>>()?;
        let k = key(a, b);
        match wanted.iter().position(|w| *w == k) {
            Some(p) => {
                wanted.swap_remove(p);
            }
            None => return Err(TrackError::RelabelInconsistent { switch: s }),
        }
    }
    if wanted.is_empty() {
        Ok(())
    } else {
        Err(TrackError::RelabelInconsistent {
            switch: last.switches.len(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GfGrowth {
    pub lambda: f64,
    /// True when the transition graph has no cycles (a translation-like map).
    pub translation: bool,
    /// Branches of the recurrent component realising the growth rate.
    pub dominant_branches: Vec<BranchId>,
    #[serde(skip)]
    pub result: Option<GrowthResult>,
}

/// Growth rate of the transition graph, taken as the maximum over its
/// recurrent components.
pub fn gf_growth(g: &TransitionGraph) -> Result<GfGrowth, DynamicsError> {
    let core = dynamical_core(&g.graph);
    if core.is_empty() {
        return Ok(GfGrowth {
            lambda: 1.0,
            translation: true,
            dominant_branches: Vec::new(),
            result: None,
        });
    }
    let comp =
        strongly_connected_components(core.vertices, core.edges.iter().map(|e| (e.src, e.dst)));
    let mut best: Option<(GrowthResult, usize)> = None;
    let recurrent: BTreeSet<usize> = core.edges.iter().map(|e| comp[e.src]).collect();
    for c in recurrent {
        let sub = WeightedDigraph {
            vertices: core.vertices,
            edges: core
                .edges
                .iter()
                .filter(|e| comp[e.src] == c)
                .copied()
                .collect(),
        };
        let r = growth_rate(&sub, GrowthMode::Unit)?;
        if best.as_ref().map_or(true, |(b, _)| r.lambda > b.lambda) {
            best = Some((r, c));
        }
    }
    let (result, c) = best.expect("nonempty core has a recurrent component");
    let dominant_branches = (0..core.vertices)
        .filter(|&v| comp[v] == c)
        .map(|v| g.branches[v])
        .collect();
    Ok(GfGrowth {
        lambda: result.lambda,
        translation: false,
        dominant_branches,
        result: Some(result),
    })
}

/// Exact intersection numbers `i_n = Σ_j d_j Σ_i (W^n)_ij c_i` of the `n`-th
/// image of a carried curve `c` with a transverse curve `d`, and the slope of
/// `log i_n` fitted over the trailing half of the positive terms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntersectionGrowth {
    #[serde(serialize_with = "crate::bigser::biguint_vec")]
    pub counts: Vec<BigUint>,
    pub slope: Option<f64>,
}

pub fn intersection_growth(
    g: &TransitionGraph,
    c: &[u64],
    d: &[u64],
    n_max: usize,
) -> Result<IntersectionGrowth, TrackError> {
    g.track.check_switch_conditions(c)?;
    if d.len() != g.branches.len() {
        return Err(TrackError::DimensionMismatch {
            expected: g.branches.len(),
            found: d.len(),
        });
    }
    let d: Vec<BigUint> = d.iter().map(|&x| BigUint::from(x)).collect();
    let mut v: Vec<BigUint> = c.iter().map(|&x| BigUint::from(x)).collect();
    let mut counts: Vec<BigUint> = Vec::with_capacity(n_max);
    for _ in 0..n_max {
        v = g.matrix.left_mul(&v);
        counts.push(v.iter().zip(&d).map(|(a, b)| a * b).sum());
    }
    let points: Vec<(f64, f64)> = (n_max / 2..=n_max)
        .filter(|&n| n >= 1 && !counts[n - 1].is_zero())
        .map(|n| (n as f64, crate::dynamics::big_ln(&counts[n - 1])))
        .collect();
    let slope = crate::dynamics::least_squares_slope(&points);
    Ok(IntersectionGrowth { counts, slope })
}
