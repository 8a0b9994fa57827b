//! Serde helpers for arbitrary-precision integers.
//!
//! Integers are written as decimal strings. On input both decimal strings and
//! plain JSON integers are accepted.

use std::fmt::{self, Display};
use std::marker::PhantomData;
use std::str::FromStr;

use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

/// Wrapper giving any `Display + FromStr` integer the decimal-string encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dec<T>(pub T);

impl<T: Display> Serialize for Dec<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

struct DecVisitor<T>(PhantomData<T>);

impl<T> Visitor<'_> for DecVisitor<T>
where
    T: FromStr,
    T::Err: Display,
{
    type Value = Dec<T>;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
        v.trim()
            .parse()
            .map(Dec)
            .map_err(|e| E::custom(format!("bad integer {v:?}: {e}")))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
        self.visit_str(&v.to_string())
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
        self.visit_str(&v.to_string())
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Self::Value, E> {
        Err(E::custom(format!(
            "{v} is not exact; write large integers as decimal strings"
        )))
    }
}

impl<'de, T> Deserialize<'de> for Dec<T>
where
    T: FromStr,
    T::Err: Display,
{
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(DecVisitor(PhantomData))
    }
}

pub mod decimal {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Dec::<T>::deserialize(d).map(|x| x.0)
    }
}

pub mod decimal_vec {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Vec<T>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Vec::<Dec<T>>::deserialize(d).map(|v| v.into_iter().map(|x| x.0).collect())
    }
}

pub mod decimal_pairs {
    use super::*;

    pub fn serialize<A, B, S>(v: &[(A, B)], s: S) -> Result<S::Ok, S::Error>
    where
        A: Display,
        B: Display,
        S: Serializer,
    {
        s.collect_seq(v.iter().map(|(a, b)| [a.to_string(), b.to_string()]))
    }

    pub fn deserialize<'de, A, B, D>(d: D) -> Result<Vec<(A, B)>, D::Error>
    where
        A: FromStr,
        A::Err: Display,
        B: FromStr,
        B::Err: Display,
        D: Deserializer<'de>,
    {
        Vec::<(Dec<A>, Dec<B>)>::deserialize(d)
            .map(|v| v.into_iter().map(|(a, b)| (a.0, b.0)).collect())
    }
}
