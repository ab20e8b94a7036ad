//! Bundled inputs: veering triangulations from the census, malformed
//! variants, folding cycles, and a generator for endperiodic folding cycles.

use crate::track::{FoldMove, FoldingCycle, HalfBranch, Switch, TrainTrack};
use crate::tri::VeeringTriangulation;

pub const FIG8: &str = include_str!("../fixtures/fig8.json");
pub const M003: &str = include_str!("../fixtures/m003.json");
pub const M016: &str = include_str!("../fixtures/m016.json");
pub const M010: &str = include_str!("../fixtures/m010.json");
pub const M119: &str = include_str!("../fixtures/m119.json");
pub const M203: &str = include_str!("../fixtures/m203.json");
/// Two disjoint copies of the figure-eight triangulation.
pub const FIG8_PAIR: &str = include_str!("../fixtures/fig8_pair.json");
/// Taut and coorientable but not veering.
pub const NONVEERING: &str = include_str!("../fixtures/nonveering.json");
/// The figure-eight gluings with one π-pair changed.
pub const BAD_ANGLE: &str = include_str!("../fixtures/bad_angle.json");
/// A taut angle choice where one edge is the top edge of two tetrahedra.
pub const TOP_TWICE: &str = include_str!("../fixtures/top_twice.json");
pub const PUNCTURED_TORUS: &str = include_str!("../fixtures/punctured_torus.json");
pub const GOLDEN_FLOW: &str = include_str!("../fixtures/golden_flow.json");
/// Flow graphs and branch equations of the census fixtures computed by an independent script.
pub const ORACLE_FLOW: &str = include_str!("../fixtures/oracle_flow.json");
pub const ENDPERIODIC: [&str; 3] = [
    include_str!("../fixtures/endperiodic_1.json"),
    include_str!("../fixtures/endperiodic_2.json"),
    include_str!("../fixtures/endperiodic_3.json"),
];

/// The veering census fixtures with their names, figure-eight first.
pub fn census() -> Vec<(&'static str, VeeringTriangulation)> {
    [
        ("fig8", FIG8),
        ("m003", M003),
        ("m016", M016),
        ("m010", M010),
        ("m119", M119),
        ("m203", M203),
    ]
    .into_iter()
    .map(|(name, text)| {
        (
            name,
            VeeringTriangulation::from_json(text).expect("bundled fixture parses"),
        )
    })
    .collect()
}

/// Shape of an endperiodic surrogate: a once-punctured torus core folded by
/// `core` (`'a'` folds branch 0 over branch 1, `'b'` the reverse), a necklace
/// of `necklace` branches through the core switch that branch 0 is folded
/// across, and a separate loop of `ray` branches rotated by the relabelling.
/// Necklace branches are truncated unless `keep_necklace` is set; one ray
/// branch is always truncated, turning the loop into a ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EndperiodicShape {
    pub core: &'static str,
    pub necklace: usize,
    pub ray: usize,
    pub keep_necklace: bool,
}

pub fn endperiodic(shape: EndperiodicShape) -> FoldingCycle {
    let k = shape.necklace;
    let m = shape.ray;
    let necklace = |i: usize| 2 + i;
    let ray = |i: usize| 2 + k + i;
    let n = 2 + k + m;

    let mut core = Switch {
        side_a: vec![HalfBranch(0, 1), HalfBranch(1, 1)],
        side_b: vec![HalfBranch(1, 0), HalfBranch(0, 0)],
    };
    let mut switches = Vec::new();
    if k > 0 {
        core.side_a.push(HalfBranch(necklace(k - 1), 1));
        core.side_b.push(HalfBranch(necklace(0), 0));
    }
    switches.push(core);
    for i in 1..k {
        switches.push(Switch {
            side_a: vec![HalfBranch(necklace(i - 1), 1)],
            side_b: vec![HalfBranch(necklace(i), 0)],
        });
    }
    for i in 0..m {
        switches.push(Switch {
            side_a: vec![HalfBranch(ray((i + m - 1) % m), 1)],
            side_b: vec![HalfBranch(ray(i), 0)],
        });
    }

    let mut moves = Vec::new();
    if k > 0 {
        moves.push(FoldMove {
            branch: 0,
            over: (0..k).map(necklace).collect(),
        });
    }
    for ch in shape.core.chars() {
        match ch {
            'a' => moves.push(FoldMove {
                branch: 0,
                over: vec![1],
            }),
            'b' => moves.push(FoldMove {
                branch: 1,
                over: vec![0],
            }),
            other => panic!("unknown core fold {other:?}"),
        }
    }

    let mut relabel: Vec<usize> = (0..2 + k).collect();
    relabel.extend((0..m).map(|i| ray((i + 1) % m)));
    let mut truncate = Vec::new();
    if !shape.keep_necklace {
        truncate.extend((0..k).map(necklace));
    }
    if m > 0 {
        truncate.push(ray(0));
    }
    FoldingCycle {
        track: TrainTrack {
            branches: (0..n).collect(),
            switches,
            large_ok: false,
        },
        moves,
        relabel,
        truncate,
    }
}

/// The shapes behind [`ENDPERIODIC`], in order.
pub const ENDPERIODIC_SHAPES: [EndperiodicShape; 3] = [
    EndperiodicShape {
        core: "ab",
        necklace: 2,
        ray: 0,
        keep_necklace: false,
    },
    EndperiodicShape {
        core: "aab",
        necklace: 1,
        ray: 3,
        keep_necklace: false,
    },
    EndperiodicShape {
        core: "abb",
        necklace: 3,
        ray: 2,
        keep_necklace: true,
    },
];

/// Ten endperiodic surrogates of varying core and ray lengths, each with at
/// most one necklace branch through the core switch.
pub fn endperiodic_family() -> Vec<FoldingCycle> {
    let shapes = [
        ("ab", 1, 0, false),
        ("ab", 1, 2, false),
        ("aab", 1, 3, false),
        ("abb", 1, 1, false),
        ("aabb", 1, 2, false),
        ("aaab", 1, 0, false),
        ("abab", 1, 4, false),
        ("ab", 0, 3, false),
        ("aab", 1, 0, true),
        ("abb", 1, 1, true),
    ];
    shapes
        .into_iter()
        .map(|(core, necklace, ray, keep_necklace)| {
            endperiodic(EndperiodicShape {
                core,
                necklace,
                ray,
                keep_necklace,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::track::{gf_growth, transition_graph};

    #[test]
    fn bundled_endperiodic_files_match_the_generator() {
        for (text, shape) in ENDPERIODIC.iter().zip(ENDPERIODIC_SHAPES) {
            assert_eq!(FoldingCycle::from_json(text).unwrap(), endperiodic(shape));
        }
    }

    #[test]
    fn endperiodic_family_is_valid() {
        for cycle in endperiodic_family() {
            let g = transition_graph(&cycle).unwrap();
            let growth = gf_growth(&g).unwrap();
            assert!(growth.lambda > 2.0, "{cycle:?}");
            assert!(growth.dominant_branches.iter().all(|&b| b < 2));
        }
    }
}
