//! Rationals on disk as `"p/q"` strings (`"p"` when whole), so scores
//! survive serialization exactly.

use serde::{de::Error, Deserialize, Deserializer, Serializer};

use super::Rate;

pub fn serialize<S: Serializer>(v: &Rate, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rate, D::Error> {
    let text = String::deserialize(d)?;
    parse(&text).ok_or_else(|| D::Error::custom(format!("bad rational `{text}`")))
}

pub fn parse(text: &str) -> Option<Rate> {
    let int = |t: &str| t.trim().parse::<i64>().ok();
    match text.split_once('/') {
        Some((n, q)) => {
            let q = int(q).filter(|q| *q != 0)?;
            Some(Rate::new(int(n)?, q))
        }
        None => int(text).map(Rate::from_integer),
    }
}

/// `Option<Rate>`, with `null` for undefined.
pub mod option {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use super::{parse, Rate};

    pub fn serialize<S: Serializer>(v: &Option<Rate>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.collect_str(r),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rate>, D::Error> {
        match Option::<String>::deserialize(d)? {
            None => Ok(None),
            Some(text) => parse(&text)
                .map(Some)
                .ok_or_else(|| D::Error::custom(format!("bad rational `{text}`"))),
        }
    }
}
