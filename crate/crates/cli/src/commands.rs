//! Subcommand implementations. Each returns a JSON payload and an exit
//! code; errors map to exit code 2.

use std::path::Path;

use holder_lab::budget::Budget;
use holder_lab::classifier::{
    classify_cubes_holder, classify_cubes_lipschitz, classify_self_similar, uniform_model,
    ClassifyError, CubeOptions, Mode, Verdict,
};
use holder_lab::cube::{check_total_disconnectedness, render_pbm, CubeError, TdLimits, DEFAULT_MAX_PIXELS};
use holder_lab::exec::Execution;
use holder_lab::symbolic::{dimension_moran, dimension_uniform, ScaleFactor, SpaceError};
use holder_lab::witness::{verify_witness, WitnessError};
use serde_json::{json, Value};
use thiserror::Error;

use crate::manifest::{Instance, Manifest, ManifestError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Manifest(#[from] ManifestError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("instance {0:?} is not a fractal cube")]
    NotACube(String),
    #[error("no witness map is available for {a} vs {b} (verdict {kind})")]
    NoWitness { a: String, b: String, kind: &'static str },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
}

#[derive(Debug)]
pub struct Outcome {
    pub json: Value,
    pub exit: u8,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Self { json, exit: EXIT_OK }
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Lipschitz => "lipschitz",
        Mode::Holder => "holder",
    }
}

/// Ratio vector of an instance; cubes must pass the admission check first.
fn ratios(inst: &Instance, opts: &CubeOptions) -> Result<Vec<ScaleFactor>, CliError> {
    match inst {
        Instance::SelfSimilar(rs) => Ok(rs.clone()),
        Instance::Cube(c) => {
            let status = check_total_disconnectedness(c, &opts.limits);
            let space = c.to_symbolic(&status, opts.assume_td)?;
            let r = space.uniform_weight().expect("cube models are uniform").clone();
            Ok(vec![r; space.alphabet() as usize])
        }
    }
}

pub fn verdict(
    m: &Manifest,
    a: &str,
    b: &str,
    mode: Mode,
    opts: &CubeOptions,
) -> Result<Verdict, CliError> {
    let (ia, ib) = (m.get(a)?, m.get(b)?);
    Ok(match (ia, ib, mode) {
        (Instance::Cube(e), Instance::Cube(f), Mode::Lipschitz) => classify_cubes_lipschitz(e, f, opts)?,
        (Instance::Cube(e), Instance::Cube(f), Mode::Holder) => classify_cubes_holder(e, f, opts)?,
        _ => classify_self_similar(&ratios(ia, opts)?, &ratios(ib, opts)?, mode)?,
    })
}

pub fn classify(
    manifest: &Path,
    a: &str,
    b: &str,
    mode: Mode,
    opts: &CubeOptions,
) -> Result<Outcome, CliError> {
    let m = Manifest::load(manifest)?;
    let v = verdict(&m, a, b, mode, opts)?;
    let mut out = json!({ "a": a, "b": b, "mode": mode_name(mode) });
    if let (Value::Object(dst), Ok(Value::Object(src))) = (&mut out, serde_json::to_value(v.report())) {
        dst.extend(src);
    }
    Ok(Outcome::ok(out))
}

fn cube<'m>(m: &'m Manifest, id: &str) -> Result<&'m holder_lab::cube::FractalCube, CliError> {
    match m.get(id)? {
        Instance::Cube(c) => Ok(c),
        Instance::SelfSimilar(_) => Err(CliError::NotACube(id.to_string())),
    }
}

pub fn check_td(manifest: &Path, id: &str, limits: &TdLimits) -> Result<Outcome, CliError> {
    let m = Manifest::load(manifest)?;
    let status = check_total_disconnectedness(cube(&m, id)?, limits);
    let mut out = json!({ "id": id });
    if let (Value::Object(dst), Ok(Value::Object(src))) = (&mut out, serde_json::to_value(&status)) {
        dst.extend(src);
    }
    Ok(Outcome::ok(out))
}

/// Classifies in Hölder mode and checks the attached witness exhaustively.
pub fn verify(
    manifest: &Path,
    a: &str,
    b: &str,
    depth: Option<u32>,
    opts: &CubeOptions,
    budget: &Budget,
) -> Result<Outcome, CliError> {
    let m = Manifest::load(manifest)?;
    let v = verdict(&m, a, b, Mode::Holder, opts)?;
    let Some(w) = v.witness.as_ref() else {
        return Err(CliError::NoWitness {
            a: a.to_string(),
            b: b.to_string(),
            kind: v.kind.name(),
        });
    };
    let depth = depth.unwrap_or_else(|| budget.deepest(w.source().alphabet()));
    let report = verify_witness(w, depth, budget, Execution::default())?;
    let exit = if report.pass { EXIT_OK } else { EXIT_VERIFY_FAILED };
    let mut out = json!({ "a": a, "b": b, "theorem": v.rule, "witness": w.summary() });
    if let (Value::Object(dst), Ok(Value::Object(src))) = (&mut out, serde_json::to_value(&report)) {
        dst.extend(src);
    }
    Ok(Outcome { json: out, exit })
}

pub fn render(manifest: &Path, id: &str, depth: u32, out: &Path) -> Result<Outcome, CliError> {
    let m = Manifest::load(manifest)?;
    let c = cube(&m, id)?;
    let pbm = render_pbm(c, depth, DEFAULT_MAX_PIXELS)?;
    std::fs::write(out, &pbm).map_err(|source| CliError::Write {
        path: out.display().to_string(),
        source,
    })?;
    let mut lines = pbm.lines().skip(1);
    let size = lines.next().unwrap_or_default().to_string();
    let black = lines.flat_map(|l| l.split(' ')).filter(|p| *p == "1").count();
    Ok(Outcome::ok(json!({
        "id": id,
        "depth": depth,
        "out": out.display().to_string(),
        "size": size,
        "black_pixels": black,
    })))
}

fn twelve_digits(v: f64) -> String {
    format!("{v:.12}")
}

pub fn dimension(manifest: &Path, id: &str) -> Result<Outcome, CliError> {
    let m = Manifest::load(manifest)?;
    let (exact, value) = match m.get(id)? {
        Instance::Cube(c) => {
            let (d, _) = c.dimension();
            (d.exact, d.value)
        }
        Instance::SelfSimilar(rs) => match uniform_model(rs).map(|s| dimension_uniform(&s)) {
            Some(Ok((d, _))) => (d.exact, d.value),
            _ => {
                let terms: Vec<String> = rs.iter().map(|r| format!("({r})^s")).collect();
                let value = dimension_moran(rs)?;
                (format!("root s of {} = 1", terms.join(" + ")), value)
            }
        },
    };
    Ok(Outcome::ok(json!({
        "id": id,
        "exact": exact,
        "value": twelve_digits(value),
    })))
}
