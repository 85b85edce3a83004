use std::cmp::Ordering;

use crate::arith::{log_ratio, ratio, Exponent, LogRatio, PowerProduct, Rational};
use crate::symbolic::{ScaleFactor, SymbolicSpace};
use crate::witness::{MapAtom, MapWitness};

use super::{rule, ClassifyError, HolderExponent, Verdict, VerdictKind};

/// Two contraction ratios, normalized so that `r₁ ≥ r₂` whenever the
/// order is decidable. An opaque base against a rational cannot be
/// ordered; such instances keep their input order and `is_ordered()` is
/// false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoBranchInstance {
    ratios: [ScaleFactor; 2],
    values: [PowerProduct; 2],
    ordered: bool,
}

impl TwoBranchInstance {
    pub fn new(a: ScaleFactor, b: ScaleFactor) -> Self {
        let (va, vb) = (a.to_power_product(), b.to_power_product());
        match va.compare(&vb) {
            Some(Ordering::Less) => Self {
                ratios: [b, a],
                values: [vb, va],
                ordered: true,
            },
            order => Self {
                ratios: [a, b],
                values: [va, vb],
                ordered: order.is_some(),
            },
        }
    }

    pub fn from_slice(ratios: &[ScaleFactor]) -> Result<Self, ClassifyError> {
        match ratios {
            [a, b] => Ok(Self::new(a.clone(), b.clone())),
            _ => Err(ClassifyError::RatioCount {
                expected: 2,
                got: ratios.len(),
            }),
        }
    }

    /// From power products; each must be a rational or a power of one base.
    pub fn from_values(a: &PowerProduct, b: &PowerProduct) -> Option<Self> {
        Some(Self::new(
            ScaleFactor::from_power_product(a)?,
            ScaleFactor::from_power_product(b)?,
        ))
    }

    pub fn ratios(&self) -> &[ScaleFactor; 2] {
        &self.ratios
    }

    pub fn values(&self) -> &[PowerProduct; 2] {
        &self.values
    }

    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    /// `log r₁ / log r₂`.
    pub fn guard(&self) -> LogRatio {
        log_ratio(&self.values[0], &self.values[1]).expect("ratios differ from one")
    }

    /// `(Ω₂, ρ_(r₁, r₂))`, when the two ratios can share a space.
    pub fn space(&self) -> Option<SymbolicSpace> {
        SymbolicSpace::vector(self.ratios.to_vec()).ok()
    }

    fn swapped(&self) -> Self {
        Self {
            ratios: [self.ratios[1].clone(), self.ratios[0].clone()],
            values: [self.values[1].clone(), self.values[0].clone()],
            ordered: self.ordered,
        }
    }

    /// The orders in which `self` may be matched against another instance.
    fn pairings(&self) -> Vec<Self> {
        if self.ordered {
            vec![self.clone()]
        } else {
            vec![self.clone(), self.swapped()]
        }
    }
}

fn same_values(e: &TwoBranchInstance, f: &TwoBranchInstance) -> bool {
    e.values == f.values
}

/// Identity or relabeling isometry between instances with the same ratios.
fn isometry(e: &TwoBranchInstance, f: &TwoBranchInstance) -> Option<MapWitness> {
    let (se, sf) = (e.space()?, f.space()?);
    if se.same_metric(&sf) {
        return Some(MapWitness::identity(se));
    }
    MapAtom::relabel(se, sf, vec![1, 0]).ok().map(MapWitness::from_atom)
}

/// The exponent map `(r₁, r₂) ↦ (r₁^σ, r₂^σ) = (t₁, t₂)`.
fn exponent_witness(e: &TwoBranchInstance, f: &TwoBranchInstance, sigma: &Exponent) -> Option<MapWitness> {
    MapAtom::exponent_onto(e.space()?, f.space()?, sigma.clone())
        .ok()
        .map(MapWitness::from_atom)
}

/// `r₁ = λ², r₂ = λ³, t₁ = λ, t₂ = λ⁵` with `λ = t₁`.
fn lambda_pattern(e: &TwoBranchInstance, f: &TwoBranchInstance) -> bool {
    let l = &f.values[0];
    e.values[0] == l.powi(2) && e.values[1] == l.powi(3) && f.values[1] == l.powi(5)
}

fn is_commensurable(g: &LogRatio) -> bool {
    g.is_rational()
}

/// Two-branch Lipschitz equivalence.
///
/// With `log r₁/log r₂` irrational the ratios must agree. When both guards
/// are rational the ratios agree or follow the `(λ², λ³) ~ (λ, λ⁵)`
/// pattern in either direction. Mixed guards are never equivalent.
pub fn classify_two_branch_lipschitz(e: &TwoBranchInstance, f: &TwoBranchInstance) -> Verdict {
    for fp in f.pairings() {
        if same_values(e, &fp) {
            return Verdict::new(VerdictKind::LipschitzEquivalent, rule::IDENTITY)
                .with_witness(isometry(e, f));
        }
    }
    let (ge, gf) = (e.guard(), f.guard());
    match (is_commensurable(&ge), is_commensurable(&gf)) {
        (false, false) => Verdict::not_equivalent(
            rule::TWO_BRANCH_LIPSCHITZ_INDEPENDENT,
            "log r1/log r2 is irrational and the ratio pairs differ",
        ),
        (true, true) => {
            if lambda_pattern(e, f) || lambda_pattern(f, e) {
                // No explicit map is known for this pattern.
                Verdict::new(VerdictKind::LipschitzEquivalent, rule::TWO_BRANCH_LIPSCHITZ_DEPENDENT)
            } else {
                Verdict::not_equivalent(
                    rule::TWO_BRANCH_LIPSCHITZ_DEPENDENT,
                    "ratio pairs differ and do not follow the (λ², λ³) ~ (λ, λ⁵) pattern",
                )
            }
        }
        _ => Verdict::not_equivalent(
            rule::TWO_BRANCH_LIPSCHITZ_MIXED,
            "one ratio pair is multiplicatively dependent and the other is not",
        ),
    }
}

/// `log a / log b` for dependent values.
fn rational_log_ratio(a: &PowerProduct, b: &PowerProduct) -> Option<Rational> {
    log_ratio(a, b).ok()?.as_rational().cloned()
}

/// Exponent `s = log b / log a` for the pattern instance, where `a` and `b`
/// are the `λ` of each side: `dim E / dim F` equals it exactly because both
/// Moran equations reduce to `x³ + x² = 1` in `λ^dim`.
fn pattern_exponent(e: &TwoBranchInstance, f: &TwoBranchInstance, ge: &Rational) -> Option<Exponent> {
    let half = ratio(1, 2);
    let (a, b) = if *ge == ratio(2, 3) {
        (e.values[0].pow(&half), f.values[0].clone())
    } else {
        (e.values[0].clone(), f.values[0].pow(&half))
    };
    Exponent::sending(&a, &b)
}

/// Two-branch strict Hölder equivalence, exponent in the `E → F` direction.
///
/// With `log r₁/log r₂` irrational: equivalent iff `log t₁/log r₁ =
/// log t₂/log r₂`, decided exactly when either side is rational and
/// `Unknown` when both are irrational. With both guards rational:
/// equivalent iff the guards agree (an exponent map) or they are `2/3` and
/// `1/5` in either order (no witness).
pub fn classify_two_branch_holder(e: &TwoBranchInstance, f: &TwoBranchInstance) -> Verdict {
    for fp in f.pairings() {
        if same_values(e, &fp) {
            return Verdict::holder(HolderExponent::exact(Exponent::one()), rule::IDENTITY)
                .with_witness(isometry(e, f));
        }
    }
    let (ge, gf) = (e.guard(), f.guard());
    match (ge.as_rational(), gf.as_rational()) {
        (None, None) => independent_case(e, f),
        (Some(ge), Some(gf)) => {
            if ge == gf {
                let Some(sigma) = Exponent::sending(&e.values[0], &f.values[0]) else {
                    return Verdict::unknown(rule::TWO_BRANCH_HOLDER_PROPORTIONAL, "exponent not representable");
                };
                let w = exponent_witness(e, f, &sigma);
                return Verdict::holder(HolderExponent::exact(sigma), rule::TWO_BRANCH_HOLDER_PROPORTIONAL)
                    .with_witness(w);
            }
            let (two_thirds, one_fifth) = (ratio(2, 3), ratio(1, 5));
            if (*ge == two_thirds && *gf == one_fifth) || (*ge == one_fifth && *gf == two_thirds) {
                let s = match pattern_exponent(e, f, ge) {
                    Some(x) => HolderExponent::exact(x),
                    None => HolderExponent {
                        exact: None,
                        approx: f64::NAN,
                    },
                };
                return Verdict::holder(s, rule::TWO_BRANCH_HOLDER_PATTERN);
            }
            Verdict::not_equivalent(
                rule::TWO_BRANCH_HOLDER_PATTERN,
                format!("log r1/log r2 = {ge} and log t1/log t2 = {gf}: neither equal nor {{2/3, 1/5}}"),
            )
        }
        _ => Verdict::not_equivalent(
            rule::TWO_BRANCH_HOLDER_MIXED,
            "one ratio pair is multiplicatively dependent and the other is not",
        ),
    }
}

fn independent_case(e: &TwoBranchInstance, f: &TwoBranchInstance) -> Verdict {
    let mut undecided = false;
    for fp in f.pairings() {
        let s1 = rational_log_ratio(&fp.values[0], &e.values[0]);
        let s2 = rational_log_ratio(&fp.values[1], &e.values[1]);
        match (s1, s2) {
            (Some(a), Some(b)) if a == b => {
                let sigma = Exponent::Rational(a);
                let w = exponent_witness(e, &fp, &sigma);
                return Verdict::holder(HolderExponent::exact(sigma), rule::TWO_BRANCH_HOLDER_INDEPENDENT)
                    .with_witness(w);
            }
            // A rational cannot equal an irrational log-ratio.
            (Some(_), _) | (_, Some(_)) => {}
            (None, None) => undecided = true,
        }
    }
    if undecided {
        Verdict::unknown(
            rule::TWO_BRANCH_HOLDER_INDEPENDENT,
            "log t1/log r1 and log t2/log r2 are both irrational; their equality is not decidable by factorization",
        )
    } else {
        Verdict::not_equivalent(
            rule::TWO_BRANCH_HOLDER_INDEPENDENT,
            "log t1/log r1 differs from log t2/log r2",
        )
    }
}
