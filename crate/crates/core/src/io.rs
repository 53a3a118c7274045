//! JSON input schemas and serde helpers. Rationals travel as `"p/q"` strings.

use serde::{Deserialize, Serialize};

use crate::arith::{self, QVec, Rat};
use crate::cones::Cone;
use crate::error::{Result, ToricError};
use crate::lattice::Lattice;
use crate::pairs::ToricPair;

pub mod rat_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&arith::format_rat(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let v = RatRepr::deserialize(d)?;
        v.to_rat().map_err(serde::de::Error::custom)
    }
}

pub mod qvec_serde {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&arith::format_rat(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<QVec, D::Error> {
        let v = Vec::<RatRepr>::deserialize(d)?;
        v.iter().map(RatRepr::to_rat).collect::<Result<_>>().map_err(serde::de::Error::custom)
    }
}

pub mod qvecs_serde {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(vs: &[QVec], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(vs.len()))?;
        for v in vs {
            let strs: Vec<String> = v.iter().map(arith::format_rat).collect();
            seq.serialize_element(&strs)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<QVec>, D::Error> {
        let vs = Vec::<Vec<RatRepr>>::deserialize(d)?;
        vs.iter()
            .map(|v| v.iter().map(RatRepr::to_rat).collect::<Result<QVec>>())
            .collect::<Result<_>>()
            .map_err(serde::de::Error::custom)
    }
}

pub mod int_serde {
    use crate::arith::Int;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Int, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Int, D::Error> {
        let v = super::RatRepr::deserialize(d)?;
        match v {
            super::RatRepr::Int(n) => Ok(Int::from(n)),
            super::RatRepr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

pub mod ints_serde {
    use crate::arith::Int;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Int], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Int>, D::Error> {
        let vs = Vec::<super::RatRepr>::deserialize(d)?;
        vs.into_iter()
            .map(|v| match v {
                super::RatRepr::Int(n) => Ok(Int::from(n)),
                super::RatRepr::Str(s) => s.parse().map_err(serde::de::Error::custom),
            })
            .collect()
    }
}

/// A rational written either as a string (`"2/3"`, `"0.5"`) or a JSON integer.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum RatRepr {
    Int(i64),
    Str(String),
}

impl RatRepr {
    pub fn to_rat(&self) -> Result<Rat> {
        match self {
            RatRepr::Int(n) => Ok(arith::rat(*n, 1)),
            RatRepr::Str(s) => arith::parse_rat(s),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct LatticeSpec {
    pub generators: Vec<Vec<RatRepr>>,
}

/// `{"lattice": {"generators": [[…]]}, "rays": [[…]], "boundary": […]}`.
/// The lattice defaults to `Zⁿ`; the boundary defaults to zero.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ConeSpec {
    #[serde(default)]
    pub lattice: Option<LatticeSpec>,
    pub rays: Vec<Vec<RatRepr>>,
    #[serde(default)]
    pub boundary: Option<Vec<RatRepr>>,
}

fn parse_rows(rows: &[Vec<RatRepr>]) -> Result<Vec<QVec>> {
    rows.iter().map(|r| r.iter().map(RatRepr::to_rat).collect()).collect()
}

impl ConeSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn lattice(&self) -> Result<Lattice> {
        let n = self.rays.first().map(Vec::len).ok_or_else(|| ToricError::Parse("no rays".into()))?;
        match &self.lattice {
            Some(l) => {
                let gens = parse_rows(&l.generators)?;
                let lat = Lattice::new(&gens)?;
                if lat.dim() != n {
                    return Err(ToricError::DimensionMismatch { expected: n, got: lat.dim() });
                }
                Ok(lat)
            }
            None => Ok(Lattice::standard(n)),
        }
    }

    /// Rays as given (not yet normalized).
    pub fn rays(&self) -> Result<Vec<QVec>> {
        parse_rows(&self.rays)
    }

    pub fn cone(&self) -> Result<Cone> {
        Cone::new(self.lattice()?, &self.rays()?)
    }

    /// The pair with boundary coefficients listed against the rays as given.
    pub fn pair(&self) -> Result<ToricPair> {
        let rays = self.rays()?;
        let boundary: Vec<Rat> = match &self.boundary {
            Some(b) => b.iter().map(RatRepr::to_rat).collect::<Result<_>>()?,
            None => vec![arith::rat(0, 1); rays.len()],
        };
        ToricPair::from_rays(self.lattice()?, &rays, &boundary)
    }
}
