//! Fractal cubes `K(n, D)`: attractors of `x ↦ (x + d)/n`, `d ∈ D ⊂ {0,…,n-1}^d`.

mod components;
mod render;

use num_rational::BigRational;
use thiserror::Error;

use crate::symbolic::{Dimension, LogQuotient, ScaleFactor, SymbolicSpace};

pub use components::{
    check_total_disconnectedness, refine_components, refine_components_with, CellShape, TdLimits,
    TdStatus,
};
pub use render::{render_pbm, DEFAULT_MAX_PIXELS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CubeError {
    #[error("base n = {0} is below 2")]
    BaseTooSmall(u32),
    #[error("dimension d = {0} is below 1")]
    DimensionTooSmall(u32),
    #[error("digit set is empty")]
    NoDigits,
    #[error("digit {digit:?} does not have {d} coordinates")]
    WrongArity { digit: Vec<u32>, d: u32 },
    #[error("digit {digit:?} has a coordinate outside 0..{n}")]
    DigitOutOfRange { digit: Vec<u32>, n: u32 },
    #[error("digit {0:?} listed twice")]
    DuplicateDigit(Vec<u32>),
    #[error("cube has {digits} of {cells} digits; classification needs 2 <= N < n^d")]
    NotClassifiable { digits: usize, cells: u128 },
    #[error("cube is not certified totally disconnected")]
    NotCertified,
    #[error("cube is the full cube, which is not totally disconnected")]
    FullCube,
    #[error("rendering supports d = 1 or 2, got d = {0}")]
    UnsupportedDimension(u32),
    #[error("image of {pixels} pixels exceeds the limit of {limit}")]
    TooManyPixels { pixels: u128, limit: u128 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FractalCube {
    n: u32,
    d: u32,
    digits: Vec<Vec<u32>>,
}

impl FractalCube {
    /// Validates a raw description. Digits come back sorted lexicographically.
    pub fn validate(n: u32, d: u32, mut digits: Vec<Vec<u32>>) -> Result<Self, CubeError> {
        if n < 2 {
            return Err(CubeError::BaseTooSmall(n));
        }
        if d < 1 {
            return Err(CubeError::DimensionTooSmall(d));
        }
        if digits.is_empty() {
            return Err(CubeError::NoDigits);
        }
        for digit in &digits {
            if digit.len() != d as usize {
                return Err(CubeError::WrongArity {
                    digit: digit.clone(),
                    d,
                });
            }
            if digit.iter().any(|&c| c >= n) {
                return Err(CubeError::DigitOutOfRange {
                    digit: digit.clone(),
                    n,
                });
            }
        }
        digits.sort();
        if let Some(w) = digits.windows(2).find(|w| w[0] == w[1]) {
            return Err(CubeError::DuplicateDigit(w[0].clone()));
        }
        Ok(Self { n, d, digits })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn digits(&self) -> &[Vec<u32>] {
        &self.digits
    }

    /// `N = |D|`.
    pub fn digit_count(&self) -> usize {
        self.digits.len()
    }

    /// `n^d`, saturating.
    pub fn cell_count(&self) -> u128 {
        (self.n as u128).checked_pow(self.d).unwrap_or(u128::MAX)
    }

    pub fn is_full(&self) -> bool {
        self.digit_count() as u128 == self.cell_count()
    }

    /// Classification needs `2 <= N < n^d`.
    pub fn check_classifiable(&self) -> Result<(), CubeError> {
        let n = self.digit_count();
        if n < 2 || self.is_full() {
            return Err(CubeError::NotClassifiable {
                digits: n,
                cells: self.cell_count(),
            });
        }
        Ok(())
    }

    /// `dim_H K = log N / log n`.
    pub fn dimension(&self) -> (Dimension, LogQuotient) {
        let q = LogQuotient {
            numerator: BigRational::from_integer((self.digit_count() as u64).into()),
            denominator: BigRational::from_integer(self.n.into()),
        };
        (
            Dimension {
                value: q.value(),
                exact: q.to_string(),
            },
            q,
        )
    }

    /// The symbolic model `(Ω_N, ρ_{1/n})` of a totally disconnected cube.
    /// Requires a certificate, or `assume_td` as an explicit override; the
    /// full cube is refused either way.
    pub fn to_symbolic(&self, status: &TdStatus, assume_td: bool) -> Result<SymbolicSpace, CubeError> {
        if self.is_full() || matches!(status, TdStatus::FullCube) {
            return Err(CubeError::FullCube);
        }
        if !assume_td && !matches!(status, TdStatus::Certified { .. }) {
            return Err(CubeError::NotCertified);
        }
        self.check_classifiable()?;
        let r = ScaleFactor::reciprocal(self.n as u64).expect("n >= 2");
        Ok(SymbolicSpace::uniform(self.digit_count() as u32, r).expect("N >= 2"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cantor() -> FractalCube {
        FractalCube::validate(3, 1, vec![vec![0], vec![2]]).unwrap()
    }

    pub(crate) fn cantor_dust() -> FractalCube {
        FractalCube::validate(3, 2, vec![vec![0, 0], vec![0, 2], vec![2, 0], vec![2, 2]]).unwrap()
    }

    pub(crate) fn full_square() -> FractalCube {
        FractalCube::validate(2, 2, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]).unwrap()
    }

    pub(crate) fn cross() -> FractalCube {
        let plus = [(2, 2), (1, 2), (3, 2), (2, 1), (2, 3)];
        let digits = (0..5)
            .flat_map(|x| (0..5).map(move |y| (x, y)))
            .filter(|c| !plus.contains(c))
            .map(|(x, y)| vec![x, y])
            .collect();
        FractalCube::validate(5, 2, digits).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(cantor().digit_count(), 2);
        assert_eq!(cross().digit_count(), 20);
        assert_eq!(
            FractalCube::validate(3, 2, vec![vec![0, 0], vec![3, 1]]),
            Err(CubeError::DigitOutOfRange {
                digit: vec![3, 1],
                n: 3
            })
        );
        assert!(matches!(
            FractalCube::validate(3, 1, vec![vec![0], vec![0]]),
            Err(CubeError::DuplicateDigit(_))
        ));
        assert_eq!(FractalCube::validate(1, 1, vec![vec![0]]), Err(CubeError::BaseTooSmall(1)));
        assert_eq!(FractalCube::validate(2, 0, vec![vec![]]), Err(CubeError::DimensionTooSmall(0)));
        assert!(matches!(
            FractalCube::validate(3, 2, vec![vec![0]]),
            Err(CubeError::WrongArity { .. })
        ));
    }

    #[test]
    fn digit_order_is_canonical() {
        let a = FractalCube::validate(3, 1, vec![vec![2], vec![0]]).unwrap();
        assert_eq!(a, cantor());
    }

    #[test]
    fn dimensions() {
        assert!((cantor().dimension().0.value - 0.630_929_753_571_457).abs() < 1e-12);
        assert!((cross().dimension().0.value - 1.861_353_116_146_786).abs() < 1e-12);
        assert_eq!(cross().dimension().1.to_string(), "log 20/log 5");
        assert!((full_square().dimension().0.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn symbolic_identification() {
        let limits = TdLimits::default();
        let c = cantor();
        let s = c.to_symbolic(&check_total_disconnectedness(&c, &limits), false).unwrap();
        assert_eq!(s, SymbolicSpace::uniform(2, ScaleFactor::reciprocal(3).unwrap()).unwrap());
        let dust = cantor_dust();
        let s = dust
            .to_symbolic(&check_total_disconnectedness(&dust, &limits), false)
            .unwrap();
        assert_eq!(s.alphabet(), 4);
        let full = full_square();
        let status = check_total_disconnectedness(&full, &limits);
        assert_eq!(full.to_symbolic(&status, false), Err(CubeError::FullCube));
        assert_eq!(full.to_symbolic(&status, true), Err(CubeError::FullCube));
    }

    #[test]
    fn override_without_certificate() {
        let diag = FractalCube::validate(2, 2, vec![vec![0, 0], vec![1, 1]]).unwrap();
        let status = check_total_disconnectedness(&diag, &TdLimits::default());
        assert!(matches!(status, TdStatus::Unknown { .. }));
        assert_eq!(diag.to_symbolic(&status, false), Err(CubeError::NotCertified));
        assert!(diag.to_symbolic(&status, true).is_ok());
    }
}
