//! Witness maps between symbolic spaces, built from certified atoms, and
//! their exhaustive exact verification on finite-depth point sets.

mod atom;
mod verify;

use std::fmt::Display;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{mult_dependence, ratio, ArithError, Exponent, LogRatio};
use crate::symbolic::{SpaceError, SymbolicPoint, SymbolicSpace};

pub use atom::{AtomKind, Certificate, MapAtom};
pub use verify::{verify_witness, Extremes, VerificationReport, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("consecutive spaces do not match")]
    SpaceMismatch,
    #[error("space does not have uniform weights")]
    NotUniform,
    #[error("alphabet sizes {0} and {1} are multiplicatively independent")]
    Incommensurable(u32, u32),
    #[error("{0} is not representable exactly")]
    NotRepresentable(String),
    #[error("exponent {0} is not positive")]
    NonPositiveExponent(String),
    #[error("block length must be positive")]
    ZeroBlock,
    #[error("alphabet {alphabet}^{block} overflows")]
    AlphabetOverflow { alphabet: u32, block: u32 },
    #[error("relabeling is not a permutation of the alphabet")]
    InvalidMapping,
    #[error("cannot decide the order of {0}")]
    Undecidable(String),
    #[error("{pairs} pairs exceed the limit of {limit}")]
    PairBudget { pairs: u64, limit: u64 },
}

pub(crate) fn display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// A composite map with a certificate valid for the whole chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapWitness {
    source: SymbolicSpace,
    target: SymbolicSpace,
    atoms: Vec<MapAtom>,
    certificate: Certificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessSummary {
    pub atoms: Vec<AtomKind>,
    pub s: String,
    #[serde(rename = "C")]
    pub c: String,
}

impl MapWitness {
    pub fn identity(space: SymbolicSpace) -> Self {
        Self {
            source: space.clone(),
            target: space,
            atoms: Vec::new(),
            certificate: Certificate::isometry(),
        }
    }

    pub fn from_atom(atom: MapAtom) -> Self {
        Self {
            source: atom.source().clone(),
            target: atom.target().clone(),
            certificate: atom.certificate(),
            atoms: vec![atom],
        }
    }

    /// Chains `atoms` in order; consecutive spaces must carry the same metric.
    pub fn from_atoms(atoms: Vec<MapAtom>) -> Result<Self, WitnessError> {
        let mut iter = atoms.into_iter();
        let first = iter.next().ok_or(WitnessError::SpaceMismatch)?;
        iter.try_fold(Self::from_atom(first), |w, a| w.then(Self::from_atom(a)))
    }

    /// `self` followed by `next`.
    pub fn then(self, next: MapWitness) -> Result<Self, WitnessError> {
        if !self.target.same_metric(&next.source) {
            return Err(WitnessError::SpaceMismatch);
        }
        let certificate = Certificate::compose(&self.certificate, &next.certificate)?;
        let mut atoms = self.atoms;
        atoms.extend(next.atoms);
        Ok(Self {
            source: self.source,
            target: next.target,
            atoms,
            certificate,
        })
    }

    /// Inverse chain, with the certificate recomposed from inverted atoms.
    pub fn inverse(&self) -> Result<Self, WitnessError> {
        if self.atoms.is_empty() {
            return Ok(Self::identity(self.target.clone()));
        }
        Self::from_atoms(self.atoms.iter().rev().map(MapAtom::inverse).collect())
    }

    pub fn source(&self) -> &SymbolicSpace {
        &self.source
    }

    pub fn target(&self) -> &SymbolicSpace {
        &self.target
    }

    pub fn atoms(&self) -> &[MapAtom] {
        &self.atoms
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn eval(&self, x: &SymbolicPoint) -> SymbolicPoint {
        self.atoms.iter().fold(x.clone(), |p, a| a.eval(&p))
    }

    pub fn summary(&self) -> WitnessSummary {
        WitnessSummary {
            atoms: self.atoms.iter().map(|a| a.kind().clone()).collect(),
            s: self.certificate.s.to_string(),
            c: self.certificate.c.to_string(),
        }
    }
}

/// A witness `(Ω_N, ρ_r) → (Ω_{N'}, ρ_{r'})` for `log N / log N' = p/q`:
/// encode `q`-blocks, apply the exponent sending `r^q` to `r'^p`, relabel
/// the common alphabet `N^q = N'^p`, decode `p`-blocks.
pub fn build_uniform_holder_witness(
    source: &SymbolicSpace,
    target: &SymbolicSpace,
) -> Result<MapWitness, WitnessError> {
    if !source.is_uniform() || !target.is_uniform() {
        return Err(WitnessError::NotUniform);
    }
    if source.same_metric(target) {
        return Ok(MapWitness::identity(source.clone()));
    }
    let (n, n2) = (source.alphabet(), target.alphabet());
    let k = match mult_dependence(&ratio(n as i64, 1), &ratio(n2 as i64, 1))? {
        LogRatio::Rational(k) => k,
        LogRatio::Incommensurable => return Err(WitnessError::Incommensurable(n, n2)),
    };
    let to_u32 = |v: &num_bigint::BigInt| {
        u32::try_from(v).map_err(|_| WitnessError::AlphabetOverflow { alphabet: n, block: u32::MAX })
    };
    let (p, q) = (to_u32(k.numer())?, to_u32(k.denom())?);

    let mut atoms = Vec::new();
    let encoded = if q > 1 {
        let a = MapAtom::block_encode(source.clone(), q)?;
        let t = a.target().clone();
        atoms.push(a);
        t
    } else {
        source.clone()
    };
    let decode = if p > 1 {
        Some(MapAtom::block_decode(target.clone(), p)?)
    } else {
        None
    };
    let pre_decode = decode.as_ref().map_or(target.clone(), |d| d.source().clone());
    let from = encoded.weight_of(0);
    let to = pre_decode.weight_of(0);
    if from != to {
        let sigma = Exponent::sending(from, to)
            .ok_or_else(|| WitnessError::NotRepresentable(format!("log({to})/log({from})")))?;
        atoms.push(MapAtom::exponent_onto(encoded, pre_decode.clone(), sigma)?);
    }
    if p > 1 || q > 1 {
        let identity = (0..pre_decode.alphabet()).collect();
        atoms.push(MapAtom::relabel(pre_decode.clone(), pre_decode, identity)?);
    }
    atoms.extend(decode);
    MapWitness::from_atoms(atoms)
}

/// The single exponent map `(Ω, ρ_w) → (Ω, ρ_{w^σ})`.
pub fn build_exponent_witness(
    source: &SymbolicSpace,
    sigma: Exponent,
) -> Result<MapWitness, WitnessError> {
    Ok(MapWitness::from_atom(MapAtom::exponent(source.clone(), sigma)?))
}
