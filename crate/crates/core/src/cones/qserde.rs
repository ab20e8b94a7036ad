//! Rationals in JSON as `[numerator, denominator]` pairs; plain integers are
//! also accepted on input.

pub mod matrix {
    use num_bigint::BigInt;
    use num_traits::{ToPrimitive, Zero};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::linalg::Q;

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Entry {
        Int(i64),
        Pair(i64, i64),
        Text(String, String),
    }

    fn encode(x: &Q) -> Entry {
        match (x.numer().to_i64(), x.denom().to_i64()) {
            (Some(n), Some(d)) => Entry::Pair(n, d),
            _ => Entry::Text(x.numer().to_string(), x.denom().to_string()),
        }
    }

    fn decode<E: serde::de::Error>(e: Entry) -> Result<Q, E> {
        let (n, d) = match e {
            Entry::Int(n) => (BigInt::from(n), BigInt::from(1)),
            Entry::Pair(n, d) => (BigInt::from(n), BigInt::from(d)),
            Entry::Text(n, d) => (
                n.parse().map_err(|_| E::custom("bad numerator"))?,
                d.parse().map_err(|_| E::custom("bad denominator"))?,
            ),
        };
        if d.is_zero() {
            return Err(E::custom("zero denominator"));
        }
        Ok(Q::new(n, d))
    }

    pub fn serialize<S: Serializer>(m: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Entry>> = m.iter().map(|r| r.iter().map(encode).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
        let rows: Vec<Vec<Entry>> = Vec::deserialize(d)?;
        rows.into_iter()
            .map(|r| r.into_iter().map(decode::<D::Error>).collect())
            .collect::<Result<_, _>>()
            .map_err(D::Error::custom)
    }
}
