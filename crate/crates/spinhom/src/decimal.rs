//! Serde adapter writing `BigUint` as a decimal string.

use num_bigint::BigUint;
use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
    let text = String::deserialize(d)?;
    text.parse().map_err(|_| D::Error::custom(format!("{text:?} is not a decimal integer")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::Serialize;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct W(#[serde(with = "super")] BigUint);

    #[test]
    fn round_trip() {
        let big = W(BigUint::from(7u8).pow(40));
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(s, format!("\"{}\"", big.0));
        assert_eq!(serde_json::from_str::<W>(&s).unwrap(), big);
        assert!(serde_json::from_str::<W>("\"12a\"").is_err());
    }
}
