//! Serialises big integers as decimal strings.

use num_bigint::BigUint;
use serde::Serializer;

pub fn biguint_vec<S: Serializer>(xs: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_str_radix(10)))
}
