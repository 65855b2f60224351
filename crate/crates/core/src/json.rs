use num_bigint::BigUint;
use serde::ser::Error as _;
use serde::{Serialize, Serializer};

/// Writes a big integer as a bare JSON number with all of its digits.
pub(crate) fn big<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    let num: serde_json::Number = v.to_string().parse().map_err(S::Error::custom)?;
    num.serialize(s)
}

pub(crate) fn big_map<S, K>(v: &std::collections::BTreeMap<K, BigUint>, s: S) -> Result<S::Ok, S::Error>
where
    S: Serializer,
    K: Serialize,
{
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(v.len()))?;
    for (k, val) in v {
        let num: serde_json::Number = val.to_string().parse().map_err(S::Error::custom)?;
        map.serialize_entry(k, &num)?;
    }
    map.end()
}
