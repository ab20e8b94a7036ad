//! Ideal triangulations carrying a taut angle structure and a veering colouring.
//!
//! Tetrahedron vertices are labelled 0..4 and face `i` is the face opposite
//! vertex `i`. The six local edges are indexed in the order
//! `01, 02, 03, 12, 13, 23`, and `pi_pair` selects the pair of opposite edges
//! carrying angle π: `0 = {01, 23}`, `1 = {02, 13}`, `2 = {03, 12}`.

mod format;
mod link;
mod validate;
mod veering;

use std::collections::BTreeMap;

use thiserror::Error;

pub use format::{GluingDoc, TetDoc, TriangulationDoc};
pub use link::{EdgeLink, LinkCorner};
pub use validate::{EdgeCheck, ValidationReport};

pub type TetId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

/// Vertex pairs of the six local edges.
pub const LOCAL_EDGES: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Local edge index of the edge joining vertices `a` and `b`.
pub fn local_edge(a: u8, b: u8) -> u8 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    match (lo, hi) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("no local edge joins vertices {a} and {b}"),
    }
}

/// The local edge opposite to `e`.
pub fn opposite_edge(e: u8) -> u8 {
    5 - e
}

/// Whether the local edge `e` lies in face `f` (the face opposite vertex `f`).
pub fn edge_in_face(e: u8, f: u8) -> bool {
    let (a, b) = LOCAL_EDGES[e as usize];
    a != f && b != f
}

/// A permutation of the four tetrahedron vertices, `p[i]` being the image of `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Perm4(pub [u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    pub fn new(images: [u8; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &v in &images {
            if v > 3 || seen[v as usize] {
                return None;
            }
            seen[v as usize] = true;
        }
        Some(Perm4(images))
    }

    pub fn apply(self, v: u8) -> u8 {
        self.0[v as usize]
    }

    pub fn inverse(self) -> Perm4 {
        let mut inv = [0u8; 4];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Perm4(inv)
    }

    pub fn sign(self) -> i8 {
        perm_sign(self.0)
    }

    /// Image of a local edge.
    pub fn apply_edge(self, e: u8) -> u8 {
        let (a, b) = LOCAL_EDGES[e as usize];
        local_edge(self.apply(a), self.apply(b))
    }
}

/// Sign of the permutation `i -> p[i]` of `0..4`.
pub fn perm_sign(p: [u8; 4]) -> i8 {
    let mut sign = 1;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Face `face` of the owning tetrahedron is glued to face `perm[face]` of `tet`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gluing {
    pub tet: TetId,
    pub face: u8,
    pub perm: Perm4,
}

/// Which pair of opposite edges carries the angle π.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PiPair {
    /// Edges 01 and 23.
    P01_23 = 0,
    /// Edges 02 and 13.
    P02_13 = 1,
    /// Edges 03 and 12.
    P03_12 = 2,
}

impl PiPair {
    pub fn from_index(i: u8) -> Option<PiPair> {
        match i {
            0 => Some(PiPair::P01_23),
            1 => Some(PiPair::P02_13),
            2 => Some(PiPair::P03_12),
            _ => None,
        }
    }

    pub fn index(self) -> u8 {
        self as u8
    }

    /// The two local edges with angle π; the first one contains vertex 0.
    pub fn edges(self) -> [u8; 2] {
        match self {
            PiPair::P01_23 => [0, 5],
            PiPair::P02_13 => [1, 4],
            PiPair::P03_12 => [2, 3],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tetrahedron {
    pub glue: [Gluing; 4],
    pub pi_pair: PiPair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn swap(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriError {
    #[error("malformed triangulation: {0}")]
    Malformed(String),
    #[error("triangulation has no tetrahedra")]
    Empty,
    #[error("tet {tet} face {face}: gluing target out of range")]
    DanglingGluing { tet: TetId, face: u8 },
    #[error("tet {tet} face {face}: gluing permutation is not a permutation of 0..4")]
    BadPermutation { tet: TetId, face: u8 },
    #[error(
        "tet {tet} face {face}: permutation does not carry the face to the declared target face"
    )]
    FaceMismatch { tet: TetId, face: u8 },
    #[error("tet {tet} face {face}: gluing is not reciprocated by its partner")]
    NotInvolutive { tet: TetId, face: u8 },
    #[error("tet {tet}: pi_pair {value} is not in 0..3")]
    BadPiPair { tet: TetId, value: u8 },
    #[error("edge colour key {0:?} is not an edge index")]
    BadColorKey(String),
    #[error("edge {0} does not exist")]
    UnknownEdge(EdgeId),
    #[error("triangulation is not orientable")]
    NotOrientable,
    #[error("taut structure is not coorientable")]
    NotCoorientable,
    #[error("edge {edge} does not have exactly one tetrahedron below it and one above it")]
    NotTaut { edge: EdgeId },
    #[error("taut structure is not veering: colour constraints conflict at edge {edge}")]
    NotVeering { edge: EdgeId },
    #[error("supplied colours must cover every edge; edge {edge} is missing")]
    IncompleteColors { edge: EdgeId },
    #[error("supplied colours are not a veering colouring (conflict at edge {edge})")]
    ColorMismatch { edge: EdgeId },
}

/// A glued collection of ideal tetrahedra with a taut angle choice per
/// tetrahedron, together with the derived edge and face classes, orientation
/// and coorientation.
#[derive(Debug, Clone)]
pub struct VeeringTriangulation {
    tets: Vec<Tetrahedron>,
    supplied_colors: Option<Vec<Color>>,
    edge_of: Vec<[EdgeId; 6]>,
    face_of: Vec<[FaceId; 4]>,
    edge_slots: Vec<Vec<(TetId, u8)>>,
    face_slots: Vec<[(TetId, u8); 2]>,
    orientation: Vec<i8>,
    orientable: bool,
    top: Vec<u8>,
    coorientable: bool,
}

impl VeeringTriangulation {
    /// Builds a triangulation from tetrahedra, checking that the gluings are
    /// well formed and computing edge and face classes.
    pub fn new(tets: Vec<Tetrahedron>) -> Result<Self, TriError> {
        if tets.is_empty() {
            return Err(TriError::Empty);
        }
        check_gluings(&tets)?;
        let n = tets.len();

        let mut uf = UnionFind::new(6 * n);
        for (t, tet) in tets.iter().enumerate() {
            for f in 0..4u8 {
                let g = tet.glue[f as usize];
                for e in 0..6u8 {
                    if edge_in_face(e, f) {
                        uf.union(
                            6 * t + e as usize,
                            6 * g.tet + g.perm.apply_edge(e) as usize,
                        );
                    }
                }
            }
        }
        let mut class_of_root = BTreeMap::new();
        let mut edge_of = vec![[0; 6]; n];
        let mut edge_slots: Vec<Vec<(TetId, u8)>> = Vec::new();
        for t in 0..n {
            for e in 0..6u8 {
                let root = uf.find(6 * t + e as usize);
                let next = class_of_root.len();
                let id = *class_of_root.entry(root).or_insert(next);
                if id == edge_slots.len() {
                    edge_slots.push(Vec::new());
                }
                edge_slots[id].push((t, e));
                edge_of[t][e as usize] = id;
            }
        }

        let mut face_of = vec![[usize::MAX; 4]; n];
        let mut face_slots = Vec::new();
        for t in 0..n {
            for f in 0..4u8 {
                if face_of[t][f as usize] != usize::MAX {
                    continue;
                }
                let g = tets[t].glue[f as usize];
                let id = face_slots.len();
                face_of[t][f as usize] = id;
                face_of[g.tet][g.face as usize] = id;
                face_slots.push([(t, f), (g.tet, g.face)]);
            }
        }

        let (orientation, orientable) = propagate_orientation(&tets);
        let (top, coorientable) = propagate_coorientation(&tets);

        Ok(VeeringTriangulation {
            tets,
            supplied_colors: None,
            edge_of,
            face_of,
            edge_slots,
            face_slots,
            orientation,
            orientable,
            top,
            coorientable,
        })
    }

    /// Attaches a full edge colouring supplied with the input; it is checked
    /// against the veering condition by [`VeeringTriangulation::colors`].
    pub fn with_colors(mut self, colors: Vec<Color>) -> Result<Self, TriError> {
        if colors.len() != self.num_edges() {
            return Err(TriError::IncompleteColors {
                edge: colors.len().min(self.num_edges()),
            });
        }
        self.supplied_colors = Some(colors);
        Ok(self)
    }

    pub fn num_tets(&self) -> usize {
        self.tets.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_slots.len()
    }

    pub fn num_faces(&self) -> usize {
        self.face_slots.len()
    }

    pub fn tets(&self) -> &[Tetrahedron] {
        &self.tets
    }

    pub fn tet(&self, t: TetId) -> &Tetrahedron {
        &self.tets[t]
    }

    pub fn supplied_colors(&self) -> Option<&[Color]> {
        self.supplied_colors.as_deref()
    }

    /// Edge class of local edge `e` of tetrahedron `t`.
    pub fn edge_of(&self, t: TetId, e: u8) -> EdgeId {
        self.edge_of[t][e as usize]
    }

    /// Face class of local face `f` of tetrahedron `t`.
    pub fn face_of(&self, t: TetId, f: u8) -> FaceId {
        self.face_of[t][f as usize]
    }

    /// All (tetrahedron, local edge) slots in an edge class.
    pub fn edge_slots(&self, e: EdgeId) -> &[(TetId, u8)] {
        &self.edge_slots[e]
    }

    /// The two (tetrahedron, local face) slots of a face class.
    pub fn face_slots(&self, f: FaceId) -> [(TetId, u8); 2] {
        self.face_slots[f]
    }

    /// Number of tetrahedron corners around an edge.
    pub fn edge_degree(&self, e: EdgeId) -> usize {
        self.edge_slots[e].len()
    }

    pub fn is_orientable(&self) -> bool {
        self.orientable
    }

    /// Orientation sign of each tetrahedron relative to its vertex labelling,
    /// normalised so that the lowest tetrahedron of each component is `+1`.
    pub fn orientation(&self, t: TetId) -> i8 {
        self.orientation[t]
    }

    pub fn is_coorientable(&self) -> bool {
        self.coorientable
    }

    /// Local index of the top π-edge of `t` under the coorientation.
    pub fn top_edge(&self, t: TetId) -> u8 {
        self.top[t]
    }

    /// Local index of the bottom π-edge of `t`.
    pub fn bottom_edge(&self, t: TetId) -> u8 {
        opposite_edge(self.top[t])
    }

    /// Whether local face `f` of `t` is one of its two top faces, i.e. contains the top edge.
    pub fn is_top_face(&self, t: TetId, f: u8) -> bool {
        edge_in_face(self.top[t], f)
    }

    /// The two top faces of `t`.
    pub fn top_faces(&self, t: TetId) -> [u8; 2] {
        let (a, b) = LOCAL_EDGES[self.bottom_edge(t) as usize];
        [a, b]
    }

    /// The two bottom faces of `t`.
    pub fn bottom_faces(&self, t: TetId) -> [u8; 2] {
        let (a, b) = LOCAL_EDGES[self.top_edge(t) as usize];
        [a, b]
    }

    /// The four local edges of `t` that are neither top nor bottom.
    pub fn equatorial_edges(&self, t: TetId) -> [u8; 4] {
        let pi = self.tets[t].pi_pair.edges();
        let mut out = [0u8; 4];
        let mut k = 0;
        for e in 0..6u8 {
            if e != pi[0] && e != pi[1] {
                out[k] = e;
                k += 1;
            }
        }
        out
    }

    /// Tetrahedra grouped into connected components (by face adjacency).
    pub fn tet_components(&self) -> Vec<usize> {
        let n = self.tets.len();
        let mut uf = UnionFind::new(n);
        for (t, tet) in self.tets.iter().enumerate() {
            for g in &tet.glue {
                uf.union(t, g.tet);
            }
        }
        let mut label = BTreeMap::new();
        (0..n)
            .map(|t| {
                let root = uf.find(t);
                let next = label.len();
                *label.entry(root).or_insert(next)
            })
            .collect()
    }
}

fn check_gluings(tets: &[Tetrahedron]) -> Result<(), TriError> {
    let n = tets.len();
    for (t, tet) in tets.iter().enumerate() {
        for f in 0..4u8 {
            let g = tet.glue[f as usize];
            if g.tet >= n || g.face > 3 {
                return Err(TriError::DanglingGluing { tet: t, face: f });
            }
            if g.perm.apply(f) != g.face {
                return Err(TriError::FaceMismatch { tet: t, face: f });
            }
            if g.tet == t && g.face == f {
                return Err(TriError::NotInvolutive { tet: t, face: f });
            }
            let back = tets[g.tet].glue[g.face as usize];
            if back.tet != t || back.face != f || back.perm != g.perm.inverse() {
                return Err(TriError::NotInvolutive { tet: t, face: f });
            }
        }
    }
    Ok(())
}

/// Breadth-first propagation of orientation signs across faces. A gluing
/// preserves orientation exactly when its permutation composed with the
/// reflection across the face is orientation-reversing.
fn propagate_orientation(tets: &[Tetrahedron]) -> (Vec<i8>, bool) {
    let n = tets.len();
    let mut sign = vec![0i8; n];
    let mut ok = true;
    for root in 0..n {
        if sign[root] != 0 {
            continue;
        }
        sign[root] = 1;
        let mut stack = vec![root];
        while let Some(t) = stack.pop() {
            for g in &tets[t].glue {
                let s = -sign[t] * g.perm.sign();
                if sign[g.tet] == 0 {
                    sign[g.tet] = s;
                    stack.push(g.tet);
                } else if sign[g.tet] != s {
                    ok = false;
                }
            }
        }
    }
    (sign, ok)
}

/// Chooses which π-edge of each tetrahedron is on top so that every face is a
/// top face of exactly one of its two tetrahedra. Within each component the
/// lowest tetrahedron has its top edge through vertex 0.
fn propagate_coorientation(tets: &[Tetrahedron]) -> (Vec<u8>, bool) {
    let n = tets.len();
    let mut top: Vec<Option<u8>> = vec![None; n];
    let mut ok = true;
    for root in 0..n {
        if top[root].is_some() {
            continue;
        }
        top[root] = Some(tets[root].pi_pair.edges()[0]);
        let mut stack = vec![root];
        while let Some(t) = stack.pop() {
            let te = top[t].expect("assigned before push");
            for f in 0..4u8 {
                let g = tets[t].glue[f as usize];
                let is_top = edge_in_face(te, f);
                let want = tets[g.tet]
                    .pi_pair
                    .edges()
                    .into_iter()
                    .find(|&e| edge_in_face(e, g.face) != is_top)
                    .expect("exactly one π-edge lies in each face");
                match top[g.tet] {
                    None => {
                        top[g.tet] = Some(want);
                        stack.push(g.tet);
                    }
                    Some(have) if have != want => ok = false,
                    Some(_) => {}
                }
            }
        }
    }
    (
        top.into_iter()
            .map(|e| e.expect("every tet visited"))
            .collect(),
        ok,
    )
}

/// Disjoint-set forest over `0..n`.
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn fig8() -> VeeringTriangulation {
        VeeringTriangulation::from_json(include_str!("../../fixtures/fig8.json")).unwrap()
    }

    #[test]
    fn local_edge_indexing_round_trips() {
        for (i, &(a, b)) in LOCAL_EDGES.iter().enumerate() {
            assert_eq!(local_edge(a, b) as usize, i);
            assert_eq!(local_edge(b, a) as usize, i);
            let (c, d) = LOCAL_EDGES[opposite_edge(i as u8) as usize];
            assert!(a != c && a != d && b != c && b != d);
        }
    }

    #[test]
    fn perm_sign_and_inverse() {
        let p = Perm4([1, 2, 0, 3]);
        assert_eq!(p.sign(), 1);
        assert_eq!(Perm4([1, 0, 2, 3]).sign(), -1);
        let q = p.inverse();
        for v in 0..4 {
            assert_eq!(q.apply(p.apply(v)), v);
        }
        assert!(Perm4::new([0, 0, 1, 2]).is_none());
    }

    #[test]
    fn figure_eight_classes() {
        let t = fig8();
        assert_eq!(t.num_tets(), 2);
        assert_eq!(t.num_edges(), 2);
        assert_eq!(t.num_faces(), 4);
        assert_eq!(t.edge_degree(0), 6);
        assert_eq!(t.edge_degree(1), 6);
        assert!(t.is_orientable());
        assert!(t.is_coorientable());
        assert_eq!((t.top_edge(0), t.top_edge(1)), (1, 3));
        assert_eq!((t.bottom_edge(0), t.bottom_edge(1)), (4, 2));
    }

    #[test]
    fn every_face_is_top_exactly_once() {
        let t = fig8();
        for f in 0..t.num_faces() {
            let [(a, fa), (b, fb)] = t.face_slots(f);
            assert_ne!(t.is_top_face(a, fa), t.is_top_face(b, fb));
        }
    }

    #[test]
    fn unreciprocated_gluing_is_rejected() {
        let mut tets = fig8().tets().to_vec();
        tets[1].glue[0].perm = Perm4([0, 2, 1, 3]);
        assert!(matches!(
            VeeringTriangulation::new(tets),
            Err(TriError::NotInvolutive { .. }) | Err(TriError::FaceMismatch { .. })
        ));
    }
}
