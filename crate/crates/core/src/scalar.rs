//! Scalar abstractions.
//!
//! Exact counts are generic over [`Count`] so that small rows can be computed
//! in machine words (with overflow reported) and large ones in `BigUint`.
//! Floating-point estimates are generic over [`Real`].

use std::fmt::{Debug, Display};

use num_traits::{CheckedAdd, CheckedSub, Float, FloatConst, FromPrimitive, One, Zero};

/// A nonnegative exact counting type.
pub trait Count:
    Clone + Ord + Debug + Display + Zero + One + CheckedAdd + CheckedSub + From<u64>
{
}

impl<T> Count for T where
    T: Clone + Ord + Debug + Display + Zero + One + CheckedAdd + CheckedSub + From<u64>
{
}

/// floating point: f32 or f64
pub trait Real: Float + FloatConst + FromPrimitive + Debug {}

impl Real for f32 {}
impl Real for f64 {}

/// Serde adapters that write exact integers as decimal strings.
pub mod decimal {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }

    pub mod vec {
        use std::fmt::Display;
        use std::str::FromStr;

        use serde::ser::SerializeSeq;
        use serde::{de, Deserialize, Deserializer, Serializer};

        pub fn serialize<T: Display, S: Serializer>(values: &[T], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&v.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, T, D>(d: D) -> Result<Vec<T>, D::Error>
        where
            T: FromStr,
            T::Err: Display,
            D: Deserializer<'de>,
        {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|s| s.parse().map_err(de::Error::custom))
                .collect()
        }
    }
}
