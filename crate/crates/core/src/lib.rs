//! Exact classification of self-similar fractals up to Lipschitz and
//! strict Hölder equivalence, with certified witness maps on symbolic
//! models.

pub mod arith;
pub mod budget;
pub mod classifier;
pub mod cube;
pub mod exec;
pub mod symbolic;
pub mod witness;
