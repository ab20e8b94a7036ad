use super::{local_edge, perm_sign, Color, EdgeId, TriError, VeeringTriangulation, LOCAL_EDGES};

impl VeeringTriangulation {
    /// The veering colouring: the supplied one after checking it, or the
    /// inferred one when none was supplied.
    pub fn colors(&self) -> Result<Vec<Color>, TriError> {
        let inferred = self.infer_colors()?;
        match self.supplied_colors() {
            None => Ok(inferred),
            Some(given) => {
                let swapped: Vec<Color> = inferred.iter().map(|c| c.swap()).collect();
                if given == inferred.as_slice() || given == swapped.as_slice() {
                    Ok(given.to_vec())
                } else {
                    let edge = (0..given.len())
                        .find(|&e| given[e] != inferred[e])
                        .expect("colourings differ somewhere");
                    Err(TriError::ColorMismatch { edge })
                }
            }
        }
    }

    /// Infers the red/blue colouring of the edges. Each tetrahedron, viewed
    /// with its top edge `PR` above its bottom edge `QS` and oriented so that
    /// `(P, Q, R, S)` is negatively oriented, must have `PQ` and `RS` red and
    /// `QR` and `SP` blue (or all tetrahedra the mirror pattern, which is the
    /// same up to exchanging the colours). The result is normalised so that
    /// edge 0 is red.
    pub fn infer_colors(&self) -> Result<Vec<Color>, TriError> {
        if !self.is_orientable() {
            return Err(TriError::NotOrientable);
        }
        if !self.is_coorientable() {
            return Err(TriError::NotCoorientable);
        }
        let mut colors: Vec<Option<Color>> = vec![None; self.num_edges()];
        for t in 0..self.num_tets() {
            for (e, c) in self.tet_pattern(t) {
                let class = self.edge_of(t, e);
                match colors[class] {
                    None => colors[class] = Some(c),
                    Some(have) if have != c => return Err(TriError::NotVeering { edge: class }),
                    Some(_) => {}
                }
            }
        }
        let mut colors: Vec<Color> = colors
            .into_iter()
            .map(|c| c.unwrap_or(Color::Red))
            .collect();
        if colors[0] == Color::Blue {
            colors.iter_mut().for_each(|c| *c = c.swap());
        }
        Ok(colors)
    }

    /// Whether the taut structure admits a veering colouring.
    pub fn is_veering(&self) -> bool {
        self.colors().is_ok()
    }

    /// Colours of the four equatorial edges of `t` forced by the veering pattern.
    fn tet_pattern(&self, t: usize) -> [(u8, Color); 4] {
        let (p, r) = LOCAL_EDGES[self.top_edge(t) as usize];
        let (mut q, mut s) = LOCAL_EDGES[self.bottom_edge(t) as usize];
        if perm_sign([p, q, r, s]) != -self.orientation(t) {
            std::mem::swap(&mut q, &mut s);
        }
        [
            (local_edge(p, q), Color::Red),
            (local_edge(r, s), Color::Red),
            (local_edge(q, r), Color::Blue),
            (local_edge(s, p), Color::Blue),
        ]
    }

    /// Edges of the given colour.
    pub fn edges_of_color(&self, colors: &[Color], color: Color) -> Vec<EdgeId> {
        (0..colors.len()).filter(|&e| colors[e] == color).collect()
    }
}

#[cfg(test)]
mod tests {
    use crate::tri::{Color, TriError, VeeringTriangulation};

    fn load(text: &str) -> VeeringTriangulation {
        VeeringTriangulation::from_json(text).unwrap()
    }

    #[test]
    fn figure_eight_has_one_edge_of_each_colour() {
        let tri = load(include_str!("../../fixtures/fig8.json"));
        assert_eq!(tri.infer_colors().unwrap(), vec![Color::Red, Color::Blue]);
    }

    #[test]
    fn census_fixtures_are_veering() {
        for text in [
            include_str!("../../fixtures/m003.json"),
            include_str!("../../fixtures/m016.json"),
            include_str!("../../fixtures/m010.json"),
            include_str!("../../fixtures/m119.json"),
            include_str!("../../fixtures/m203.json"),
            include_str!("../../fixtures/fig8_pair.json"),
        ] {
            let tri = load(text);
            let colors = tri.infer_colors().unwrap();
            assert_eq!(colors[0], Color::Red);
            assert!(colors.contains(&Color::Blue));
        }
    }

    #[test]
    fn taut_but_not_veering_is_an_error() {
        let tri = load(include_str!("../../fixtures/nonveering.json"));
        assert!(tri.validate().ok);
        assert!(matches!(
            tri.infer_colors(),
            Err(TriError::NotVeering { .. })
        ));
    }

    #[test]
    fn supplied_colours_are_checked() {
        let tri = load(include_str!("../../fixtures/fig8.json"));
        let swapped = tri
            .clone()
            .with_colors(vec![Color::Blue, Color::Red])
            .unwrap();
        assert_eq!(swapped.colors().unwrap(), vec![Color::Blue, Color::Red]);
        let wrong = tri.with_colors(vec![Color::Red, Color::Red]).unwrap();
        assert_eq!(wrong.colors(), Err(TriError::ColorMismatch { edge: 1 }));
    }
}
