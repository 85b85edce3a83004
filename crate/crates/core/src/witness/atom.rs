use num_rational::BigRational;
use serde::Serialize;

use crate::arith::{Exponent, PowerProduct};
use crate::symbolic::{ScaleFactor, SymbolicPoint, SymbolicSpace, Weights};

use super::WitnessError;

/// Hölder certificate `(s, C)`: `C^{-1} d^s <= d' <= C d^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub s: Exponent,
    pub c: PowerProduct,
}

impl Certificate {
    pub fn isometry() -> Self {
        Self {
            s: Exponent::one(),
            c: PowerProduct::one(),
        }
    }

    /// Certificate of `first` followed by `then`: `(s₁s₂, C₂·C₁^{s₂})`.
    pub fn compose(first: &Self, then: &Self) -> Result<Self, WitnessError> {
        let s = first.s.mul(&then.s).ok_or_else(|| {
            WitnessError::NotRepresentable(format!("exponent product {} * {}", first.s, then.s))
        })?;
        let c1 = then.s.apply(&first.c).ok_or_else(|| {
            WitnessError::NotRepresentable(format!("constant {}^({})", first.c, then.s))
        })?;
        Ok(Self {
            s,
            c: then.c.mul(&c1),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "atom")]
pub enum AtomKind {
    /// Identity on sequences; every weight is raised to `sigma`.
    ExponentMap {
        #[serde(serialize_with = "super::display")]
        sigma: Exponent,
    },
    /// Groups symbols into blocks of `block`, big-endian.
    BlockEncode { block: u32 },
    /// Splits each symbol into `block` digits, big-endian.
    BlockDecode { block: u32 },
    /// Symbol `i` becomes `mapping[i]`.
    Relabel { mapping: Vec<u32> },
}

/// One certified map between two symbolic spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapAtom {
    kind: AtomKind,
    source: SymbolicSpace,
    target: SymbolicSpace,
}

fn raise_weights(space: &SymbolicSpace, sigma: &Exponent) -> Result<SymbolicSpace, WitnessError> {
    let raise = |w: &ScaleFactor| -> Result<ScaleFactor, WitnessError> {
        let v = sigma
            .apply(&w.to_power_product())
            .ok_or_else(|| WitnessError::NotRepresentable(format!("{w}^({sigma})")))?;
        ScaleFactor::from_power_product(&v)
            .ok_or_else(|| WitnessError::NotRepresentable(format!("{w}^({sigma}) = {v}")))
    };
    Ok(match space.weights() {
        Weights::Uniform(r) => SymbolicSpace::uniform(space.alphabet(), raise(r)?)?,
        Weights::Vector(ws) => {
            SymbolicSpace::vector(ws.iter().map(raise).collect::<Result<_, _>>()?)?
        }
    })
}

fn integer_power(r: &ScaleFactor, k: u32) -> ScaleFactor {
    r.pow(&BigRational::from_integer(k.into()))
        .expect("integer powers of ratios stay representable")
}

fn block_alphabet(n: u32, k: u32) -> Result<u32, WitnessError> {
    n.checked_pow(k)
        .ok_or(WitnessError::AlphabetOverflow { alphabet: n, block: k })
}

impl MapAtom {
    /// The exponent map `(Ω, ρ_w) → (Ω, ρ_{w^σ})`, target weights computed.
    pub fn exponent(source: SymbolicSpace, sigma: Exponent) -> Result<Self, WitnessError> {
        if !sigma.is_positive() {
            return Err(WitnessError::NonPositiveExponent(sigma.to_string()));
        }
        let target = raise_weights(&source, &sigma)?;
        Ok(Self {
            kind: AtomKind::ExponentMap { sigma },
            source,
            target,
        })
    }

    /// The exponent map onto a given target, checked weight by weight.
    pub fn exponent_onto(
        source: SymbolicSpace,
        target: SymbolicSpace,
        sigma: Exponent,
    ) -> Result<Self, WitnessError> {
        if !sigma.is_positive() {
            return Err(WitnessError::NonPositiveExponent(sigma.to_string()));
        }
        if source.alphabet() != target.alphabet() || source.is_uniform() != target.is_uniform() {
            return Err(WitnessError::SpaceMismatch);
        }
        for s in 0..source.alphabet() {
            let raised = sigma.apply(source.weight_of(s));
            if raised.as_ref() != Some(target.weight_of(s)) {
                return Err(WitnessError::SpaceMismatch);
            }
        }
        Ok(Self {
            kind: AtomKind::ExponentMap { sigma },
            source,
            target,
        })
    }

    /// `(Ω_N, ρ_r) → (Ω_{N^q}, ρ_{r^q})`.
    pub fn block_encode(source: SymbolicSpace, block: u32) -> Result<Self, WitnessError> {
        let r = source.uniform_weight().ok_or(WitnessError::NotUniform)?;
        if block == 0 {
            return Err(WitnessError::ZeroBlock);
        }
        let target = SymbolicSpace::uniform(
            block_alphabet(source.alphabet(), block)?,
            integer_power(r, block),
        )?;
        Ok(Self {
            kind: AtomKind::BlockEncode { block },
            source,
            target,
        })
    }

    /// `(Ω_{N^p}, ρ_{r^p}) → (Ω_N, ρ_r)`.
    pub fn block_decode(target: SymbolicSpace, block: u32) -> Result<Self, WitnessError> {
        let r = target.uniform_weight().ok_or(WitnessError::NotUniform)?;
        if block == 0 {
            return Err(WitnessError::ZeroBlock);
        }
        let source = SymbolicSpace::uniform(
            block_alphabet(target.alphabet(), block)?,
            integer_power(r, block),
        )?;
        Ok(Self {
            kind: AtomKind::BlockDecode { block },
            source,
            target,
        })
    }

    /// Relabeling isometry: requires `weight_target(mapping[i]) = weight_source(i)`.
    pub fn relabel(
        source: SymbolicSpace,
        target: SymbolicSpace,
        mapping: Vec<u32>,
    ) -> Result<Self, WitnessError> {
        let n = source.alphabet();
        if target.alphabet() != n || mapping.len() != n as usize {
            return Err(WitnessError::InvalidMapping);
        }
        let mut seen = vec![false; n as usize];
        for &m in &mapping {
            if m >= n || std::mem::replace(&mut seen[m as usize], true) {
                return Err(WitnessError::InvalidMapping);
            }
        }
        if (0..n).any(|i| source.weight_of(i) != target.weight_of(mapping[i as usize])) {
            return Err(WitnessError::SpaceMismatch);
        }
        Ok(Self {
            kind: AtomKind::Relabel { mapping },
            source,
            target,
        })
    }

    pub fn kind(&self) -> &AtomKind {
        &self.kind
    }

    pub fn source(&self) -> &SymbolicSpace {
        &self.source
    }

    pub fn target(&self) -> &SymbolicSpace {
        &self.target
    }

    pub fn certificate(&self) -> Certificate {
        match &self.kind {
            AtomKind::ExponentMap { sigma } => Certificate {
                s: sigma.clone(),
                c: PowerProduct::one(),
            },
            // d'/d = r^{-(m mod q)} for a prefix of length m.
            AtomKind::BlockEncode { block } => Certificate {
                s: Exponent::one(),
                c: self.source.weight_of(0).powi(-(*block as i64 - 1)),
            },
            // d/d' = r'^{-(m' - p·⌊m'/p⌋)} for a decoded prefix of length m'.
            AtomKind::BlockDecode { block } => Certificate {
                s: Exponent::one(),
                c: self.target.weight_of(0).powi(-(*block as i64 - 1)),
            },
            AtomKind::Relabel { .. } => Certificate::isometry(),
        }
    }

    pub fn eval(&self, x: &SymbolicPoint) -> SymbolicPoint {
        match &self.kind {
            AtomKind::ExponentMap { .. } => x.clone(),
            AtomKind::Relabel { mapping } => {
                let map = |w: &[u32]| w.iter().map(|&s| mapping[s as usize]).collect();
                SymbolicPoint::new(map(x.preperiod()), map(x.period())).expect("nonempty period")
            }
            AtomKind::BlockEncode { block } => {
                let q = *block as usize;
                let n = self.source.alphabet();
                let pre_len = x.preperiod().len().div_ceil(q) * q;
                let (pre, per) = x.unrolled(pre_len, q);
                let group = |w: &[u32]| -> Vec<u32> {
                    w.chunks(q)
                        .map(|c| c.iter().fold(0u32, |acc, &s| acc * n + s))
                        .collect()
                };
                SymbolicPoint::new(group(&pre), group(&per)).expect("nonempty period")
            }
            AtomKind::BlockDecode { block } => {
                let p = *block as usize;
                let n = self.target.alphabet();
                let split = |w: &[u32]| -> Vec<u32> {
                    w.iter()
                        .flat_map(|&s| {
                            let mut digits = vec![0u32; p];
                            let mut v = s;
                            for slot in digits.iter_mut().rev() {
                                *slot = v % n;
                                v /= n;
                            }
                            digits
                        })
                        .collect()
                };
                SymbolicPoint::new(split(x.preperiod()), split(x.period())).expect("nonempty period")
            }
        }
    }

    pub fn inverse(&self) -> Self {
        let kind = match &self.kind {
            AtomKind::ExponentMap { sigma } => AtomKind::ExponentMap {
                sigma: sigma.recip(),
            },
            AtomKind::BlockEncode { block } => AtomKind::BlockDecode { block: *block },
            AtomKind::BlockDecode { block } => AtomKind::BlockEncode { block: *block },
            AtomKind::Relabel { mapping } => {
                let mut inv = vec![0u32; mapping.len()];
                for (i, &m) in mapping.iter().enumerate() {
                    inv[m as usize] = i as u32;
                }
                AtomKind::Relabel { mapping: inv }
            }
        };
        Self {
            kind,
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }
}
