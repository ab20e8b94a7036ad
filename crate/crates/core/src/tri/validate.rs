use serde::Serialize;

use super::{EdgeId, VeeringTriangulation};

/// Per-edge taut conditions: the angles around the edge sum to 2π (exactly two
/// π corners), and the edge is the top edge of exactly one tetrahedron and the
/// bottom edge of exactly one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeCheck {
    pub edge: EdgeId,
    pub degree: usize,
    pub pi_corners: usize,
    pub below: usize,
    pub above: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub tets: usize,
    pub edges: usize,
    pub faces: usize,
    /// Euler characteristic count for an ideal triangulation: edges equal tetrahedra.
    pub edge_count_matches: bool,
    pub orientable: bool,
    pub coorientable: bool,
    pub edge_checks: Vec<EdgeCheck>,
}

impl ValidationReport {
    pub fn offending_edges(&self) -> Vec<EdgeId> {
        self.edge_checks
            .iter()
            .filter(|c| !c.ok)
            .map(|c| c.edge)
            .collect()
    }
}

impl VeeringTriangulation {
    /// Checks the taut conditions edge by edge, along with orientability and
    /// coorientability.
    pub fn validate(&self) -> ValidationReport {
        let mut checks: Vec<EdgeCheck> = (0..self.num_edges())
            .map(|e| EdgeCheck {
                edge: e,
                degree: self.edge_degree(e),
                pi_corners: 0,
                below: 0,
                above: 0,
                ok: false,
            })
            .collect();
        for t in 0..self.num_tets() {
            for e in self.tet(t).pi_pair.edges() {
                checks[self.edge_of(t, e)].pi_corners += 1;
            }
            checks[self.edge_of(t, self.top_edge(t))].below += 1;
            checks[self.edge_of(t, self.bottom_edge(t))].above += 1;
        }
        for c in &mut checks {
            c.ok = c.pi_corners == 2 && c.below == 1 && c.above == 1;
        }
        let edge_count_matches = self.num_edges() == self.num_tets();
        let ok = checks.iter().all(|c| c.ok)
            && edge_count_matches
            && self.is_orientable()
            && self.is_coorientable();
        ValidationReport {
            ok,
            tets: self.num_tets(),
            edges: self.num_edges(),
            faces: self.num_faces(),
            edge_count_matches,
            orientable: self.is_orientable(),
            coorientable: self.is_coorientable(),
            edge_checks: checks,
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::tri::VeeringTriangulation;

    fn load(text: &str) -> VeeringTriangulation {
        VeeringTriangulation::from_json(text).unwrap()
    }

    #[test]
    fn census_fixtures_validate() {
        for text in [
            include_str!("../../fixtures/fig8.json"),
            include_str!("../../fixtures/m003.json"),
            include_str!("../../fixtures/m016.json"),
            include_str!("../../fixtures/m010.json"),
            include_str!("../../fixtures/m119.json"),
            include_str!("../../fixtures/m203.json"),
            include_str!("../../fixtures/fig8_pair.json"),
        ] {
            let report = load(text).validate();
            assert!(report.ok, "{report:?}");
            assert!(report.offending_edges().is_empty());
        }
    }

    #[test]
    fn changed_angle_breaks_angle_sums() {
        let report = load(include_str!("../../fixtures/bad_angle.json")).validate();
        assert!(!report.ok);
        assert!(report.edge_checks.iter().any(|c| c.pi_corners != 2));
    }

    #[test]
    fn edge_on_top_of_two_tets_is_reported() {
        let report = load(include_str!("../../fixtures/top_twice.json")).validate();
        assert!(!report.ok);
        assert_eq!(report.offending_edges(), vec![0, 1]);
        assert_eq!(report.edge_checks[0].below, 2);
        assert_eq!(report.edge_checks[1].below, 0);
    }
}
