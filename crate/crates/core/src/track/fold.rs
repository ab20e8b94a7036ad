use serde::{Deserialize, Serialize};

use super::{BranchId, HalfBranch, TrackError, TrainTrack};
use crate::dynamics::CountMatrix;

/// Fold branch `branch` successively over the branches in `over`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldMove {
    pub branch: BranchId,
    pub over: Vec<BranchId>,
}

/// Applies a fold. For each target `c`, an end of `branch` adjacent to an end
/// of `c` on a common switch side is slid along `c` to the switch at the far
/// end of `c`, where it joins the side opposite that far end: at the front if
/// it preceded `c`, at the back otherwise. Returns the folded track and the
/// elementary transition matrix `I + Σ E[branch][c]`, rows indexed by the new
/// branches and columns by the old ones.
pub fn apply_fold(
    track: &TrainTrack,
    mv: &FoldMove,
) -> Result<(TrainTrack, CountMatrix), TrackError> {
    track.require_valid()?;
    let illegal = |reason: &str| TrackError::IllegalFold {
        branch: mv.branch,
        reason: reason.into(),
    };
    let b = track.index_of(mv.branch)?;
    if mv.over.is_empty() {
        return Err(illegal("nothing to fold over"));
    }
    let mut targets = Vec::with_capacity(mv.over.len());
    for &c in &mv.over {
        if c == mv.branch {
            return Err(illegal("a branch cannot fold over itself"));
        }
        let ci = track.index_of(c)?;
        if targets.contains(&ci) {
            return Err(illegal("repeated fold target"));
        }
        targets.push(ci);
    }

    let mut out = track.clone();
    for &c in &mv.over {
        let (hb, hc, sw, side, pos_b, pos_c) = adjacent_ends(&out, mv.branch, c)
            .ok_or_else(|| illegal(&format!("no end is adjacent to branch {c}")))?;
        debug_assert_eq!(out.switches[sw].side(side)[pos_c], hc);
        out.switches[sw].side_mut(side).remove(pos_b);
        let (far_sw, far_side, _) = out
            .locate(hc.other_end())
            .expect("valid tracks contain both ends");
        let dest = out.switches[far_sw].side_mut(far_side.opposite());
        if pos_b < pos_c {
            dest.insert(0, hb);
        } else {
            dest.push(hb);
        }
    }

    let mut m = CountMatrix::identity(track.num_branches());
    for &ci in &targets {
        m.entries[b][ci] += 1u32;
    }
    Ok((out, m))
}

fn adjacent_ends(
    track: &TrainTrack,
    b: BranchId,
    c: BranchId,
) -> Option<(
    HalfBranch,
    HalfBranch,
    usize,
    super::SwitchSide,
    usize,
    usize,
)> {
    for end in 0..2u8 {
        let hb = HalfBranch(b, end);
        let (sw, side, pos) = track.locate(hb)?;
        let list = track.switches[sw].side(side);
        for neighbour in [pos.wrapping_sub(1), pos + 1] {
            if let Some(&hc) = list.get(neighbour) {
                if hc.0 == c {
                    return Some((hb, hc, sw, side, pos, neighbour));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::track::tests::torus;

    #[test]
    fn torus_folds_restore_the_track() {
        let t = torus();
        let (t1, m1) = apply_fold(
            &t,
            &FoldMove {
                branch: 0,
                over: vec![1],
            },
        )
        .unwrap();
        assert_eq!(m1, CountMatrix::from_rows(&[vec![1, 1], vec![0, 1]]));
        let (t2, m2) = apply_fold(
            &t1,
            &FoldMove {
                branch: 1,
                over: vec![0],
            },
        )
        .unwrap();
        assert_eq!(m2, CountMatrix::from_rows(&[vec![1, 0], vec![1, 1]]));
        assert_eq!(t2, t);
    }

    #[test]
    fn elementary_matrix_shape() {
        let t = torus();
        let (_, m) = apply_fold(
            &t,
            &FoldMove {
                branch: 1,
                over: vec![0],
            },
        )
        .unwrap();
        for i in 0..2 {
            assert_eq!(m.entries[i][i], 1u32.into());
        }
        let nonidentity_rows = (0..2)
            .filter(|&i| m.entries[i].iter().sum::<num_bigint::BigUint>() > 1u32.into())
            .count();
        assert_eq!(nonidentity_rows, 1);
    }

    #[test]
    fn illegal_folds_are_rejected() {
        let t = torus();
        for mv in [
            FoldMove {
                branch: 0,
                over: vec![],
            },
            FoldMove {
                branch: 0,
                over: vec![0],
            },
            FoldMove {
                branch: 0,
                over: vec![1, 1],
            },
        ] {
            assert!(
                matches!(apply_fold(&t, &mv), Err(TrackError::IllegalFold { .. })),
                "{mv:?}"
            );
        }
        assert_eq!(
            apply_fold(
                &t,
                &FoldMove {
                    branch: 7,
                    over: vec![1]
                }
            ),
            Err(TrackError::UnknownBranch(7))
        );
    }

    #[test]
    fn non_adjacent_branches_cannot_fold() {
        let t: TrainTrack = serde_json::from_str(
            r#"{"branches":[0,1,2],"switches":[
                {"sideA":[[0,0]],"sideB":[[1,0],[2,0]]},
                {"sideA":[[0,1]],"sideB":[[1,1],[2,1]]}]}"#,
        )
        .unwrap();
        assert!(matches!(
            apply_fold(
                &t,
                &FoldMove {
                    branch: 0,
                    over: vec![1]
                }
            ),
            Err(TrackError::IllegalFold { .. })
        ));
        assert!(apply_fold(
            &t,
            &FoldMove {
                branch: 1,
                over: vec![2]
            }
        )
        .is_ok());
    }
}
