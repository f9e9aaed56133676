//! Serde helpers: complex numbers travel as `[re, im]` pairs.

use num_complex::Complex;
use serde::de::Deserializer;
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::scalar::Real;

pub mod pair {
    use super::*;

    pub fn serialize<T: Real, S: Serializer>(z: &Complex<T>, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, T: Real, D: Deserializer<'de>>(d: D) -> Result<Complex<T>, D::Error> {
        let [re, im] = <[T; 2]>::deserialize(d)?;
        Ok(Complex::new(re, im))
    }
}

pub mod pairs {
    use super::*;

    pub fn serialize<T: Real, S: Serializer>(zs: &[Complex<T>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(zs.len()))?;
        for z in zs {
            seq.serialize_element(&[z.re, z.im])?;
        }
        seq.end()
    }

    pub fn deserialize<'de, T: Real, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Vec<Complex<T>>, D::Error> {
        let raw = Vec::<[T; 2]>::deserialize(d)?;
        Ok(raw
            .into_iter()
            .map(|[re, im]| Complex::new(re, im))
            .collect())
    }
}
