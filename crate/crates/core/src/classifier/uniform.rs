use crate::arith::{log_ratio, mult_dependence, ratio, Exponent, LogRatio};
use crate::cube::{check_total_disconnectedness, FractalCube, TdLimits};
use crate::symbolic::SymbolicSpace;
use crate::witness::{build_uniform_holder_witness, MapWitness};

use super::{rule, ClassifyError, HolderExponent, Mode, Verdict, VerdictKind};

/// How cubes are admitted: the total-disconnectedness certifier runs with
/// `limits`; `assume_td` accepts uncertified (but not full) cubes.
#[derive(Clone, Copy, Debug, Default)]
pub struct CubeOptions {
    pub limits: TdLimits,
    pub assume_td: bool,
}

fn alphabet_dependence(n: u32, m: u32) -> Result<LogRatio, ClassifyError> {
    if n == m {
        return Ok(LogRatio::Rational(ratio(1, 1)));
    }
    Ok(mult_dependence(&ratio(n as i64, 1), &ratio(m as i64, 1))?)
}

fn show(l: &LogRatio) -> String {
    match l {
        LogRatio::Rational(k) => k.to_string(),
        LogRatio::Incommensurable => "irrational".into(),
    }
}

fn classify_uniform(
    e: &SymbolicSpace,
    f: &SymbolicSpace,
    mode: Mode,
    tag: &'static str,
) -> Result<Verdict, ClassifyError> {
    if !e.is_uniform() || !f.is_uniform() {
        return Err(ClassifyError::NotUniform);
    }
    if e.same_metric(f) {
        let kind = match mode {
            Mode::Lipschitz => VerdictKind::LipschitzEquivalent,
            Mode::Holder => VerdictKind::StrictlyHolderEquivalent(HolderExponent::exact(Exponent::one())),
        };
        return Ok(Verdict::new(kind, rule::IDENTITY).with_witness(Some(MapWitness::identity(e.clone()))));
    }
    let k_n = alphabet_dependence(e.alphabet(), f.alphabet())?;
    if !k_n.is_rational() {
        return Ok(Verdict::not_equivalent(
            tag,
            format!(
                "log {}/log {} is irrational",
                e.alphabet(),
                f.alphabet()
            ),
        ));
    }
    match mode {
        Mode::Lipschitz => {
            let k_r = log_ratio(e.weight_of(0), f.weight_of(0))?;
            if k_r != k_n {
                return Ok(Verdict::not_equivalent(
                    tag,
                    format!(
                        "log N/log N' = {} but log r/log r' = {}",
                        show(&k_n),
                        show(&k_r)
                    ),
                ));
            }
            let w = build_uniform_holder_witness(e, f)?;
            debug_assert_eq!(w.certificate().s, Exponent::one());
            Ok(Verdict::new(VerdictKind::LipschitzEquivalent, tag).with_witness(Some(w)))
        }
        Mode::Holder => {
            let w = build_uniform_holder_witness(e, f)?;
            let s = HolderExponent::exact(w.certificate().s.clone());
            Ok(Verdict::holder(s, tag).with_witness(Some(w)))
        }
    }
}

/// Uniform symbolic spaces. Lipschitz: `log r/log r' = log N/log N' ∈ Q`.
/// Hölder: `log N/log N' ∈ Q`, with the block-coding witness attached.
pub fn classify_symbolic(
    e: &SymbolicSpace,
    f: &SymbolicSpace,
    mode: Mode,
) -> Result<Verdict, ClassifyError> {
    let tag = match mode {
        Mode::Lipschitz => rule::SYMBOLIC_LIPSCHITZ,
        Mode::Holder => rule::SYMBOLIC_HOLDER,
    };
    classify_uniform(e, f, mode, tag)
}

fn cube_model(c: &FractalCube, opts: &CubeOptions) -> Result<SymbolicSpace, ClassifyError> {
    let status = check_total_disconnectedness(c, &opts.limits);
    Ok(c.to_symbolic(&status, opts.assume_td)?)
}

fn classify_cubes(
    e: &FractalCube,
    f: &FractalCube,
    opts: &CubeOptions,
    mode: Mode,
    tag: &'static str,
) -> Result<Verdict, ClassifyError> {
    let (se, sf) = (cube_model(e, opts)?, cube_model(f, opts)?);
    let mut v = classify_uniform(&se, &sf, mode, tag)?;
    if e == f {
        v.rule = rule::IDENTITY;
    }
    Ok(v)
}

/// Totally disconnected fractal cubes: `log n/log n' = log N/log N' ∈ Q`.
pub fn classify_cubes_lipschitz(
    e: &FractalCube,
    f: &FractalCube,
    opts: &CubeOptions,
) -> Result<Verdict, ClassifyError> {
    classify_cubes(e, f, opts, Mode::Lipschitz, rule::CUBE_LIPSCHITZ)
}

/// Totally disconnected fractal cubes: `log N/log N' ∈ Q`.
pub fn classify_cubes_holder(
    e: &FractalCube,
    f: &FractalCube,
    opts: &CubeOptions,
) -> Result<Verdict, ClassifyError> {
    classify_cubes(e, f, opts, Mode::Holder, rule::CUBE_HOLDER)
}
