//! Serde helpers shared by the report types.

use std::fmt::Display;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::permutation::Permutation;

/// Serializes any value through its `Display` form (quaternion literals,
/// rationals such as `-3/4`).
pub fn serialize_display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Serialize)]
struct PairRef<'a> {
    permutation: &'a Permutation,
    value: String,
}

pub fn serialize_pairs<T: Display, S: Serializer>(
    pairs: &[(Permutation, T)],
    s: S,
) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(pairs.len()))?;
    for (p, v) in pairs {
        seq.serialize_element(&PairRef {
            permutation: p,
            value: v.to_string(),
        })?;
    }
    seq.end()
}
