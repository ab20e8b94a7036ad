use serde::Serialize;

use super::{require_valid, BsurfError};
use crate::tri::{EdgeId, FaceId, LinkCorner, TetId, VeeringTriangulation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    A,
    B,
}

/// The sector of the branched surface spanned by edge `edge`: a disc whose
/// boundary runs up two sides of the edge link from the tetrahedron below the
/// edge to the tetrahedron above it. Triple points on the boundary are the
/// tetrahedra met along the way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sector {
    pub edge: EdgeId,
    pub bottom: TetId,
    pub top: TetId,
    /// Corners of side A, bottom to top; the first is the side point.
    pub corners_a: Vec<LinkCorner>,
    pub corners_b: Vec<LinkCorner>,
    pub top_corner: LinkCorner,
    /// Dual edges crossed climbing side A; one more than the number of corners.
    pub faces_a: Vec<FaceId>,
    pub faces_b: Vec<FaceId>,
}

impl Sector {
    pub fn corners(&self, side: Side) -> &[LinkCorner] {
        match side {
            Side::A => &self.corners_a,
            Side::B => &self.corners_b,
        }
    }

    pub fn faces(&self, side: Side) -> &[FaceId] {
        match side {
            Side::A => &self.faces_a,
            Side::B => &self.faces_b,
        }
    }

    /// The two side points: the first triple points up each side.
    pub fn side_points(&self) -> [TetId; 2] {
        [self.corners_a[0].tet, self.corners_b[0].tet]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorComplex {
    pub sectors: Vec<Sector>,
}

/// Cuts the branched surface into sectors, one per edge, and checks that each
/// tetrahedron is a side point of exactly two sectors through opposite
/// equatorial edges.
pub fn build_sectors(tri: &VeeringTriangulation) -> Result<SectorComplex, BsurfError> {
    require_valid(tri)?;
    tri.colors()?;
    let mut sectors = Vec::with_capacity(tri.num_edges());
    let mut side_points: Vec<Vec<u8>> = vec![Vec::new(); tri.num_tets()];
    for e in 0..tri.num_edges() {
        let link = tri.edge_link(e)?;
        let corners_a = link.side_a();
        let corners_b = link.side_b();
        if corners_a.is_empty() || corners_b.is_empty() {
            return Err(BsurfError::Trace {
                edge: e,
                reason: "a side of the edge link is empty".into(),
            });
        }
        side_points[corners_a[0].tet].push(corners_a[0].local_edge);
        side_points[corners_b[0].tet].push(corners_b[0].local_edge);
        sectors.push(Sector {
            edge: e,
            bottom: link.bottom().tet,
            top: link.top().tet,
            faces_a: link.faces_side_a(tri),
            faces_b: link.faces_side_b(tri),
            corners_a,
            corners_b,
            top_corner: *link.top(),
        });
    }
    for (t, pts) in side_points.iter().enumerate() {
        if pts.len() != 2 || pts[0] + pts[1] != 5 {
            return Err(BsurfError::Trace {
                edge: tri.edge_of(t, tri.top_edge(t)),
                reason: format!("tet {t} is a side point through local edges {pts:?}"),
            });
        }
    }
    Ok(SectorComplex { sectors })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_eight_sectors() {
        let tri =
            VeeringTriangulation::from_json(include_str!("../../fixtures/fig8.json")).unwrap();
        let sc = build_sectors(&tri).unwrap();
        assert_eq!(sc.sectors.len(), 2);
        for s in &sc.sectors {
            assert_eq!(s.faces_a.len(), s.corners_a.len() + 1);
            assert_eq!(s.faces_b.len(), s.corners_b.len() + 1);
            assert_ne!(s.faces_a[0], s.faces_b[0]);
            assert_ne!(s.faces_a.last(), s.faces_b.last());
        }
        assert_eq!(sc.sectors[0].faces_a, vec![1, 2, 3]);
        assert_eq!(sc.sectors[0].faces_b, vec![3, 0, 1]);
    }

    #[test]
    fn non_veering_input_is_refused() {
        let tri = VeeringTriangulation::from_json(include_str!("../../fixtures/nonveering.json"))
            .unwrap();
        assert!(matches!(build_sectors(&tri), Err(BsurfError::Tri(_))));
    }
}
