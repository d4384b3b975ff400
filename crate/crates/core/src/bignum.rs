//! Serde helpers writing big integers as JSON numbers when they fit in `u64`
//! and as decimal strings otherwise.

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Small(u64),
    Big(String),
}

pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match u64::try_from(n) {
        Ok(v) => Repr::Small(v).serialize(s),
        Err(_) => Repr::Big(n.to_string()).serialize(s),
    }
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
    match Repr::deserialize(d)? {
        Repr::Small(v) => Ok(BigUint::from(v)),
        Repr::Big(s) => s.parse().map_err(serde::de::Error::custom),
    }
}
