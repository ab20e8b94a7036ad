use super::{
    local_edge, perm_sign, EdgeId, FaceId, TetId, TriError, VeeringTriangulation, LOCAL_EDGES,
};

/// One tetrahedron corner in the cyclic link of an edge. The walk enters the
/// corner through `enter_face` and leaves through `exit_face`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinkCorner {
    pub tet: TetId,
    pub local_edge: u8,
    pub enter_face: u8,
    pub exit_face: u8,
}

/// The cyclic sequence of corners around an edge, starting at the tetrahedron
/// below the edge and oriented by the global orientation. Corner
/// `top_corner` is the tetrahedron above the edge; the corners strictly
/// between form side A and the rest form side B.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLink {
    pub edge: EdgeId,
    pub corners: Vec<LinkCorner>,
    pub top_corner: usize,
}

impl EdgeLink {
    pub fn degree(&self) -> usize {
        self.corners.len()
    }

    pub fn bottom(&self) -> &LinkCorner {
        &self.corners[0]
    }

    pub fn top(&self) -> &LinkCorner {
        &self.corners[self.top_corner]
    }

    /// Side A corners, bottom to top.
    pub fn side_a(&self) -> Vec<LinkCorner> {
        self.corners[1..self.top_corner].to_vec()
    }

    /// Side B corners, bottom to top.
    pub fn side_b(&self) -> Vec<LinkCorner> {
        self.corners[self.top_corner + 1..]
            .iter()
            .rev()
            .copied()
            .collect()
    }

    /// Faces crossed climbing side A from the bottom corner to the top corner.
    pub fn faces_side_a(&self, tri: &VeeringTriangulation) -> Vec<FaceId> {
        self.corners[..self.top_corner]
            .iter()
            .map(|c| tri.face_of(c.tet, c.exit_face))
            .collect()
    }

    /// Faces crossed climbing side B from the bottom corner to the top corner:
    /// the face between the last corner and the bottom corner first.
    pub fn faces_side_b(&self, tri: &VeeringTriangulation) -> Vec<FaceId> {
        self.corners[self.top_corner..]
            .iter()
            .rev()
            .map(|c| tri.face_of(c.tet, c.exit_face))
            .collect()
    }
}

impl VeeringTriangulation {
    /// Walks once around edge `e`.
    pub fn edge_link(&self, e: EdgeId) -> Result<EdgeLink, TriError> {
        if e >= self.num_edges() {
            return Err(TriError::UnknownEdge(e));
        }
        if !self.is_coorientable() {
            return Err(TriError::NotCoorientable);
        }
        let below: Vec<TetId> = (0..self.num_tets())
            .filter(|&t| self.edge_of(t, self.top_edge(t)) == e)
            .collect();
        if below.len() != 1 {
            return Err(TriError::NotTaut { edge: e });
        }
        let start = below[0];
        let (i, j) = LOCAL_EDGES[self.top_edge(start) as usize];
        let (mut k, mut l) = LOCAL_EDGES[self.bottom_edge(start) as usize];
        if perm_sign([i, j, k, l]) != self.orientation(start) {
            std::mem::swap(&mut k, &mut l);
        }

        let mut corners = Vec::with_capacity(self.edge_degree(e));
        let (mut t, mut i, mut j) = (start, i, j);
        loop {
            let le = local_edge(i, j);
            corners.push(LinkCorner {
                tet: t,
                local_edge: le,
                enter_face: k,
                exit_face: l,
            });
            let g = self.tet(t).glue[l as usize];
            let (ni, nj, nk, nl) = (
                g.perm.apply(i),
                g.perm.apply(j),
                g.perm.apply(l),
                g.perm.apply(k),
            );
            t = g.tet;
            (i, j, k, l) = (ni, nj, nk, nl);
            let first = corners[0];
            if t == first.tet && local_edge(i, j) == first.local_edge && k == first.enter_face {
                break;
            }
            if corners.len() > self.edge_degree(e) {
                return Err(TriError::NotTaut { edge: e });
            }
        }
        let tops: Vec<usize> = (0..corners.len())
            .filter(|&c| corners[c].local_edge == self.bottom_edge(corners[c].tet))
            .collect();
        if tops.len() != 1 || tops[0] == 1 || tops[0] + 1 == corners.len() {
            return Err(TriError::NotTaut { edge: e });
        }
        Ok(EdgeLink {
            edge: e,
            corners,
            top_corner: tops[0],
        })
    }
}

#[cfg(test)]
mod tests {
    use crate::tri::VeeringTriangulation;

    fn fig8() -> VeeringTriangulation {
        VeeringTriangulation::from_json(include_str!("../../fixtures/fig8.json")).unwrap()
    }

    #[test]
    fn figure_eight_links_have_two_corners_per_side() {
        let tri = fig8();
        for e in 0..2 {
            let link = tri.edge_link(e).unwrap();
            assert_eq!(link.degree(), 6);
            assert_eq!(link.top_corner, 3);
            assert_eq!(link.side_a().len(), 2);
            assert_eq!(link.side_b().len(), 2);
            assert_eq!(
                tri.edge_of(link.bottom().tet, tri.top_edge(link.bottom().tet)),
                e
            );
            assert_eq!(
                tri.edge_of(link.top().tet, tri.bottom_edge(link.top().tet)),
                e
            );
        }
    }

    #[test]
    fn figure_eight_side_faces() {
        let tri = fig8();
        let l0 = tri.edge_link(0).unwrap();
        assert_eq!(l0.faces_side_a(&tri), vec![1, 2, 3]);
        assert_eq!(l0.faces_side_b(&tri), vec![3, 0, 1]);
        let l1 = tri.edge_link(1).unwrap();
        assert_eq!(l1.faces_side_a(&tri), vec![0, 3, 2]);
        assert_eq!(l1.faces_side_b(&tri), vec![2, 1, 0]);
    }

    #[test]
    fn consecutive_corners_share_faces() {
        let tri =
            VeeringTriangulation::from_json(include_str!("../../fixtures/m203.json")).unwrap();
        for e in 0..tri.num_edges() {
            let link = tri.edge_link(e).unwrap();
            let n = link.degree();
            for c in 0..n {
                let (a, b) = (link.corners[c], link.corners[(c + 1) % n]);
                assert_eq!(
                    tri.face_of(a.tet, a.exit_face),
                    tri.face_of(b.tet, b.enter_face)
                );
                assert_eq!(tri.edge_of(a.tet, a.local_edge), e);
            }
        }
    }

    #[test]
    fn unknown_edge_is_an_error() {
        assert!(fig8().edge_link(9).is_err());
    }
}
