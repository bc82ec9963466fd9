use serde::{Deserialize, Serialize};

/// An integer extended by the distinguished symbol -infinity.
///
/// -infinity is absorbing for addition and minimal for the total order; it is
/// a separate symbol, never an integer sentinel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtInt {
    NegInf,
    Int(i64),
}

impl ExtInt {
    pub fn is_neg_inf(self) -> bool {
        matches!(self, ExtInt::NegInf)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::NegInf => None,
            ExtInt::Int(k) => Some(k),
        }
    }

    /// Addition of a plain integer: -infinity + k = -infinity.
    pub fn plus(self, k: i64) -> ExtInt {
        match self {
            ExtInt::NegInf => ExtInt::NegInf,
            ExtInt::Int(v) => ExtInt::Int(v + k),
        }
    }

    pub fn max(self, other: ExtInt) -> ExtInt {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for ExtInt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtInt {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use ExtInt::*;
        match (self, other) {
            (NegInf, NegInf) => std::cmp::Ordering::Equal,
            (NegInf, Int(_)) => std::cmp::Ordering::Less,
            (Int(_), NegInf) => std::cmp::Ordering::Greater,
            (Int(a), Int(b)) => a.cmp(b),
        }
    }
}

impl std::ops::Add<ExtInt> for ExtInt {
    type Output = ExtInt;
    fn add(self, rhs: ExtInt) -> ExtInt {
        match (self, rhs) {
            (ExtInt::Int(a), ExtInt::Int(b)) => ExtInt::Int(a + b),
            _ => ExtInt::NegInf,
        }
    }
}

impl From<i64> for ExtInt {
    fn from(k: i64) -> Self {
        ExtInt::Int(k)
    }
}

impl std::fmt::Display for ExtInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Int(k) => write!(f, "{k}"),
        }
    }
}

// Serialized as a plain integer or the string "-inf".
impl Serialize for ExtInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtInt::NegInf => s.serialize_str("-inf"),
            ExtInt::Int(k) => s.serialize_i64(*k),
        }
    }
}

impl<'de> Deserialize<'de> for ExtInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) if s == "-inf" => Ok(ExtInt::NegInf),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(ExtInt::Int)
                .ok_or_else(|| serde::de::Error::custom("non-integer ExtInt")),
            other => Err(serde::de::Error::custom(format!(
                "cannot parse ExtInt from {other}"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neg_inf_absorbs() {
        assert_eq!(ExtInt::NegInf.plus(7), ExtInt::NegInf);
        assert_eq!(ExtInt::NegInf + ExtInt::Int(3), ExtInt::NegInf);
        assert_eq!(ExtInt::Int(2) + ExtInt::Int(3), ExtInt::Int(5));
    }

    #[test]
    fn total_order() {
        assert!(ExtInt::NegInf < ExtInt::Int(i64::MIN));
        assert!(ExtInt::Int(1) < ExtInt::Int(2));
        assert_eq!(ExtInt::NegInf.max(ExtInt::Int(-5)), ExtInt::Int(-5));
    }

    #[test]
    fn json_round_trip() {
        let vals = vec![ExtInt::NegInf, ExtInt::Int(-3), ExtInt::Int(7)];
        let s = serde_json::to_string(&vals).unwrap();
        assert_eq!(s, r#"["-inf",-3,7]"#);
        let back: Vec<ExtInt> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, vals);
    }
}
