use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Color, Gluing, Perm4, PiPair, Tetrahedron, TriError, VeeringTriangulation};

/// On-disk form of a triangulation: per tetrahedron the four gluings
/// `[target tet, target face, vertex permutation]` and the π-pair index,
/// plus an optional edge colouring keyed by edge index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationDoc {
    pub tets: Vec<TetDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<BTreeMap<String, Color>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TetDoc {
    pub glue: [GluingDoc; 4],
    pub pi_pair: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingDoc(pub usize, pub u8, pub [u8; 4]);

impl Serialize for Color {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

impl<'de> Deserialize<'de> for Color {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        match s.as_str() {
            "red" | "R" => Ok(Color::Red),
            "blue" | "B" => Ok(Color::Blue),
            other => Err(serde::de::Error::custom(format!(
                "unknown colour {other:?}"
            ))),
        }
    }
}

impl TriangulationDoc {
    pub fn into_triangulation(self) -> Result<VeeringTriangulation, TriError> {
        let mut tets = Vec::with_capacity(self.tets.len());
        for (t, doc) in self.tets.iter().enumerate() {
            let pi_pair = PiPair::from_index(doc.pi_pair).ok_or(TriError::BadPiPair {
                tet: t,
                value: doc.pi_pair,
            })?;
            let mut glue = [Gluing {
                tet: 0,
                face: 0,
                perm: Perm4::IDENTITY,
            }; 4];
            for (f, g) in doc.glue.iter().enumerate() {
                let perm = Perm4::new(g.2).ok_or(TriError::BadPermutation {
                    tet: t,
                    face: f as u8,
                })?;
                glue[f] = Gluing {
                    tet: g.0,
                    face: g.1,
                    perm,
                };
            }
            tets.push(Tetrahedron { glue, pi_pair });
        }
        let tri = VeeringTriangulation::new(tets)?;
        match self.colors {
            None => Ok(tri),
            Some(map) => {
                let mut colors = vec![None; tri.num_edges()];
                for (key, c) in map {
                    let e: usize = key
                        .parse()
                        .map_err(|_| TriError::BadColorKey(key.clone()))?;
                    if e >= colors.len() {
                        return Err(TriError::UnknownEdge(e));
                    }
                    colors[e] = Some(c);
                }
                let colors = colors
                    .into_iter()
                    .enumerate()
                    .map(|(e, c)| c.ok_or(TriError::IncompleteColors { edge: e }))
                    .collect::<Result<Vec<_>, _>>()?;
                tri.with_colors(colors)
            }
        }
    }
}

impl VeeringTriangulation {
    pub fn from_json(text: &str) -> Result<Self, TriError> {
        let doc: TriangulationDoc =
            serde_json::from_str(text).map_err(|e| TriError::Malformed(e.to_string()))?;
        doc.into_triangulation()
    }

    pub fn to_doc(&self) -> TriangulationDoc {
        TriangulationDoc {
            tets: self
                .tets
                .iter()
                .map(|tet| TetDoc {
                    glue: tet.glue.map(|g| GluingDoc(g.tet, g.face, g.perm.0)),
                    pi_pair: tet.pi_pair.index(),
                })
                .collect(),
            colors: self.supplied_colors.as_ref().map(|cs| {
                cs.iter()
                    .enumerate()
                    .map(|(e, &c)| (e.to_string(), c))
                    .collect()
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("triangulation documents always serialise")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG8: &str = include_str!("../../fixtures/fig8.json");

    #[test]
    fn round_trip_is_identity() {
        let tri = VeeringTriangulation::from_json(FIG8).unwrap();
        let again = VeeringTriangulation::from_json(&tri.to_json()).unwrap();
        assert_eq!(tri.to_doc(), again.to_doc());
        let original: TriangulationDoc = serde_json::from_str(FIG8).unwrap();
        assert_eq!(original, tri.to_doc());
    }

    #[test]
    fn colours_round_trip() {
        let tri = VeeringTriangulation::from_json(FIG8).unwrap();
        let colored = tri
            .clone()
            .with_colors(vec![Color::Red, Color::Blue])
            .unwrap();
        let text = colored.to_json();
        assert!(text.contains("\"colors\":{\"0\":\"red\",\"1\":\"blue\"}"));
        let again = VeeringTriangulation::from_json(&text).unwrap();
        assert_eq!(
            again.supplied_colors(),
            Some(&[Color::Red, Color::Blue][..])
        );
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(matches!(
            VeeringTriangulation::from_json("{"),
            Err(TriError::Malformed(_))
        ));
        assert!(matches!(
            VeeringTriangulation::from_json("{\"tets\":[]}"),
            Err(TriError::Empty)
        ));
        let bad_pi = FIG8.replace("\"pi_pair\": 1", "\"pi_pair\": 7");
        assert!(matches!(
            VeeringTriangulation::from_json(&bad_pi),
            Err(TriError::BadPiPair { .. })
        ));
        let dangling = FIG8.replacen("[[1, 0, [0, 1, 2, 3]]", "[[5, 0, [0, 1, 2, 3]]", 1);
        assert!(matches!(
            VeeringTriangulation::from_json(&dangling),
            Err(TriError::DanglingGluing { tet: 0, face: 0 })
        ));
        let partial =
            FIG8.trim_end().trim_end_matches('}').to_string() + ", \"colors\": {\"0\": \"red\"}}";
        assert!(matches!(
            VeeringTriangulation::from_json(&partial),
            Err(TriError::IncompleteColors { edge: 1 })
        ));
    }
}
