//! Instance manifests: JSON files naming fractal cubes and self-similar
//! ratio vectors.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use holder_lab::cube::{CubeError, FractalCube};
use holder_lab::symbolic::{Base, ScaleFactor, SpaceError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("cannot read manifest: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed manifest: {0}")]
    Json(#[from] serde_json::Error),
    #[error("instance id {0:?} appears twice")]
    DuplicateId(String),
    #[error("unknown instance id {0:?}")]
    UnknownId(String),
    #[error("instance {id:?} uses undeclared base {base:?}")]
    UnknownBase { id: String, base: String },
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("{context}: {text:?} is not an integer")]
    BadInteger { context: String, text: String },
    #[error("instance {id:?}: {source}")]
    Cube { id: String, source: CubeError },
    #[error("instance {id:?}: {source}")]
    Space { id: String, source: SpaceError },
    #[error("instance {0:?} needs at least two ratios")]
    TooFewRatios(String),
}

/// An integer written either as a JSON number or as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum RawInt {
    Small(i64),
    Big(String),
}

impl RawInt {
    fn value(&self, ctx: &str) -> Result<BigInt, ManifestError> {
        match self {
            RawInt::Small(v) => Ok((*v).into()),
            RawInt::Big(s) => s
                .trim()
                .parse()
                .map_err(|_| ManifestError::BadInteger {
                    context: ctx.to_string(),
                    text: s.clone(),
                }),
        }
    }

    fn from_big(v: &BigInt) -> Self {
        i64::try_from(v).map_or_else(|_| RawInt::Big(v.to_string()), RawInt::Small)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawRational {
    pub num: RawInt,
    pub den: RawInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RawRatio {
    Rational { num: RawInt, den: RawInt },
    /// `base^(num/den)`.
    Power { base: String, num: RawInt, den: RawInt },
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RawInstance {
    FractalCube {
        id: String,
        n: u32,
        d: u32,
        digits: Vec<Vec<u32>>,
    },
    SelfSimilar {
        id: String,
        ratios: Vec<RawRatio>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawManifest {
    /// Base name to exact value; `null` leaves the base opaque.
    #[serde(default)]
    pub bases: BTreeMap<String, Option<RawRational>>,
    pub instances: Vec<RawInstance>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Cube(FractalCube),
    SelfSimilar(Vec<ScaleFactor>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    bases: BTreeMap<String, Base>,
    instances: Vec<(String, Instance)>,
}

fn fraction(num: &RawInt, den: &RawInt, ctx: &str) -> Result<BigRational, ManifestError> {
    let (n, d) = (num.value(ctx)?, den.value(ctx)?);
    if d.is_zero() {
        return Err(ManifestError::ZeroDenominator(ctx.to_string()));
    }
    Ok(BigRational::new(n, d))
}

fn raw_fraction(q: &BigRational) -> (RawInt, RawInt) {
    (RawInt::from_big(q.numer()), RawInt::from_big(q.denom()))
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Self, ManifestError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<Self, ManifestError> {
        Self::from_raw(serde_json::from_str(text)?)
    }

    pub fn from_raw(raw: RawManifest) -> Result<Self, ManifestError> {
        let mut bases = BTreeMap::new();
        for (name, value) in raw.bases {
            let base = match value {
                None => Base::opaque(&name),
                Some(v) => {
                    let q = fraction(&v.num, &v.den, &name)?;
                    Base::declared(&name, q).map_err(|source| ManifestError::Space {
                        id: name.clone(),
                        source,
                    })?
                }
            };
            bases.insert(name, base);
        }
        let mut seen = HashSet::new();
        let mut instances = Vec::new();
        for inst in raw.instances {
            let (id, parsed) = match inst {
                RawInstance::FractalCube { id, n, d, digits } => {
                    let cube = FractalCube::validate(n, d, digits)
                        .map_err(|source| ManifestError::Cube { id: id.clone(), source })?;
                    (id, Instance::Cube(cube))
                }
                RawInstance::SelfSimilar { id, ratios } => {
                    if ratios.len() < 2 {
                        return Err(ManifestError::TooFewRatios(id));
                    }
                    let space_err = |source| ManifestError::Space { id: id.clone(), source };
                    let parsed = ratios
                        .iter()
                        .map(|r| match r {
                            RawRatio::Rational { num, den } => {
                                ScaleFactor::rational(fraction(num, den, &id)?).map_err(space_err)
                            }
                            RawRatio::Power { base, num, den } => {
                                let b = bases.get(base).ok_or_else(|| ManifestError::UnknownBase {
                                    id: id.clone(),
                                    base: base.clone(),
                                })?;
                                ScaleFactor::power(b.clone(), fraction(num, den, &id)?).map_err(space_err)
                            }
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    (id, Instance::SelfSimilar(parsed))
                }
            };
            if !seen.insert(id.clone()) {
                return Err(ManifestError::DuplicateId(id));
            }
            instances.push((id, parsed));
        }
        Ok(Self { bases, instances })
    }

    /// Canonical form: sorted digits, reduced fractions.
    pub fn to_raw(&self) -> RawManifest {
        let bases = self
            .bases
            .iter()
            .map(|(name, b)| {
                let v = b.value.as_ref().map(|q| {
                    let (num, den) = raw_fraction(q);
                    RawRational { num, den }
                });
                (name.clone(), v)
            })
            .collect();
        let instances = self
            .instances
            .iter()
            .map(|(id, inst)| match inst {
                Instance::Cube(c) => RawInstance::FractalCube {
                    id: id.clone(),
                    n: c.n(),
                    d: c.d(),
                    digits: c.digits().to_vec(),
                },
                Instance::SelfSimilar(rs) => RawInstance::SelfSimilar {
                    id: id.clone(),
                    ratios: rs
                        .iter()
                        .map(|r| match r {
                            ScaleFactor::Rational(q) => {
                                let (num, den) = raw_fraction(q);
                                RawRatio::Rational { num, den }
                            }
                            ScaleFactor::BasePower { base, exponent } => {
                                let (num, den) = raw_fraction(exponent);
                                RawRatio::Power {
                                    base: base.name.clone(),
                                    num,
                                    den,
                                }
                            }
                        })
                        .collect(),
                },
            })
            .collect();
        RawManifest { bases, instances }
    }

    pub fn get(&self, id: &str) -> Result<&Instance, ManifestError> {
        self.instances
            .iter()
            .find(|(k, _)| k == id)
            .map(|(_, v)| v)
            .ok_or_else(|| ManifestError::UnknownId(id.to_string()))
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.instances.iter().map(|(k, _)| k.as_str())
    }
}
