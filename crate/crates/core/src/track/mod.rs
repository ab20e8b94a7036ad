//! Train tracks on surfaces, folding moves, and the transition graph of a
//! folding cycle whose growth rate is the stretch factor of the map.

mod fold;
mod transition;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use fold::{apply_fold, FoldMove};
pub use transition::{
    gf_growth, intersection_growth, transition_graph, FoldingCycle, GfGrowth, IntersectionGrowth,
    TransitionGraph,
};

pub type BranchId = usize;

/// End `1` of branch `0`; each branch has ends 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfBranch(pub BranchId, pub u8);

impl HalfBranch {
    pub fn branch(self) -> BranchId {
        self.0
    }

    pub fn end(self) -> u8 {
        self.1
    }

    pub fn other_end(self) -> HalfBranch {
        HalfBranch(self.0, 1 - self.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SwitchSide {
    A,
    B,
}

impl SwitchSide {
    pub fn opposite(self) -> SwitchSide {
        match self {
            SwitchSide::A => SwitchSide::B,
            SwitchSide::B => SwitchSide::A,
        }
    }
}

/// A switch with the half-branches on each side listed in their cyclic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Switch {
    #[serde(rename = "sideA")]
    pub side_a: Vec<HalfBranch>,
    #[serde(rename = "sideB")]
    pub side_b: Vec<HalfBranch>,
}

impl Switch {
    pub fn side(&self, s: SwitchSide) -> &Vec<HalfBranch> {
        match s {
            SwitchSide::A => &self.side_a,
            SwitchSide::B => &self.side_b,
        }
    }

    pub fn side_mut(&mut self, s: SwitchSide) -> &mut Vec<HalfBranch> {
        match s {
            SwitchSide::A => &mut self.side_a,
            SwitchSide::B => &mut self.side_b,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrainTrack {
    pub branches: Vec<BranchId>,
    pub switches: Vec<Switch>,
    /// When false, large branches are reported as problems.
    #[serde(default = "default_true")]
    pub large_ok: bool,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "problem", rename_all = "snake_case")]
pub enum TrackProblem {
    DuplicateBranch { branch: BranchId },
    UnknownBranch { branch: BranchId, switch: usize },
    BadEnd { branch: BranchId, end: u8 },
    EndMissing { branch: BranchId, end: u8 },
    EndRepeated { branch: BranchId, end: u8 },
    EmptySide { switch: usize, side: SwitchSide },
    LargeBranch { branch: BranchId },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrackReport {
    pub ok: bool,
    pub problems: Vec<TrackProblem>,
    /// Branches whose two ends are both alone on a side facing a side with several half-branches.
    pub large_branches: Vec<BranchId>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TrackError {
    #[error("invalid train track: {0:?}")]
    Invalid(Vec<TrackProblem>),
    #[error("branch {0} is not in the track")]
    UnknownBranch(BranchId),
    #[error("illegal fold of branch {branch}: {reason}")]
    IllegalFold { branch: BranchId, reason: String },
    #[error("relabelling is not a bijection of branches")]
    RelabelNotBijection,
    #[error("relabelled track does not match the initial track at switch {switch}")]
    RelabelInconsistent { switch: usize },
    #[error("truncated branch {branch} does not map simply")]
    TruncationNotSimple { branch: BranchId },
    #[error("weights violate the switch condition at switch {switch}")]
    SwitchCondition { switch: usize },
    #[error("expected {expected} weights, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl TrainTrack {
    pub fn num_branches(&self) -> usize {
        self.branches.len()
    }

    pub fn index_of(&self, b: BranchId) -> Result<usize, TrackError> {
        self.branches
            .iter()
            .position(|&x| x == b)
            .ok_or(TrackError::UnknownBranch(b))
    }

    /// Switch, side and position of a half-branch.
    pub fn locate(&self, h: HalfBranch) -> Option<(usize, SwitchSide, usize)> {
        self.switches.iter().enumerate().find_map(|(s, sw)| {
            [SwitchSide::A, SwitchSide::B].into_iter().find_map(|side| {
                sw.side(side)
                    .iter()
                    .position(|&x| x == h)
                    .map(|p| (s, side, p))
            })
        })
    }

    pub fn validate(&self) -> TrackReport {
        let mut problems = Vec::new();
        let mut seen_ids = BTreeMap::new();
        for &b in &self.branches {
            if seen_ids.insert(b, ()).is_some() {
                problems.push(TrackProblem::DuplicateBranch { branch: b });
            }
        }
        let mut end_count: BTreeMap<HalfBranch, usize> = BTreeMap::new();
        for (s, sw) in self.switches.iter().enumerate() {
            for side in [SwitchSide::A, SwitchSide::B] {
                if sw.side(side).is_empty() {
                    problems.push(TrackProblem::EmptySide { switch: s, side });
                }
                for &h in sw.side(side) {
                    if !seen_ids.contains_key(&h.0) {
                        problems.push(TrackProblem::UnknownBranch {
                            branch: h.0,
                            switch: s,
                        });
                    } else if h.1 > 1 {
                        problems.push(TrackProblem::BadEnd {
                            branch: h.0,
                            end: h.1,
                        });
                    } else {
                        *end_count.entry(h).or_default() += 1;
                    }
                }
            }
        }
        for &b in seen_ids.keys() {
            for end in 0..2u8 {
                match end_count.get(&HalfBranch(b, end)).copied().unwrap_or(0) {
                    0 => problems.push(TrackProblem::EndMissing { branch: b, end }),
                    1 => {}
                    _ => problems.push(TrackProblem::EndRepeated { branch: b, end }),
                }
            }
        }
        let large_branches = if problems.is_empty() {
            self.large_branches()
        } else {
            Vec::new()
        };
        if !self.large_ok {
            problems.extend(
                large_branches
                    .iter()
                    .map(|&b| TrackProblem::LargeBranch { branch: b }),
            );
        }
        TrackReport {
            ok: problems.is_empty(),
            problems,
            large_branches,
        }
    }

    fn large_branches(&self) -> Vec<BranchId> {
        let large_end = |h: HalfBranch| {
            self.locate(h).is_some_and(|(s, side, _)| {
                let sw = &self.switches[s];
                sw.side(side).len() == 1 && sw.side(side.opposite()).len() >= 2
            })
        };
        self.branches
            .iter()
            .copied()
            .filter(|&b| large_end(HalfBranch(b, 0)) && large_end(HalfBranch(b, 1)))
            .collect()
    }

    pub(crate) fn require_valid(&self) -> Result<(), TrackError> {
        let report = self.validate();
        if report.ok {
            Ok(())
        } else {
            Err(TrackError::Invalid(report.problems))
        }
    }

    /// Checks the switch conditions: at every switch the weights on the two sides balance.
    pub fn check_switch_conditions(&self, weights: &[u64]) -> Result<(), TrackError> {
        if weights.len() != self.branches.len() {
            return Err(TrackError::DimensionMismatch {
                expected: self.branches.len(),
                found: weights.len(),
            });
        }
        for (s, sw) in self.switches.iter().enumerate() {
            let total = |side: &Vec<HalfBranch>| -> Result<u64, TrackError> {
                side.iter()
                    .map(|h| self.index_of(h.0).map(|i| weights[i]))
                    .sum()
            };
            if total(&sw.side_a)? != total(&sw.side_b)? {
                return Err(TrackError::SwitchCondition { switch: s });
            }
        }
        Ok(())
    }
}
