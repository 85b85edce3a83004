//! Dense univariate polynomials over the rationals, just enough to decide
//! whether two Moran equations in a shared base have the same root.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Largest degree the exact root test will expand.
pub const MAX_DEGREE: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    /// Coefficients, constant term first, no trailing zeros.
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    fn rem(&self, divisor: &Poly) -> Poly {
        let dd = divisor.degree().expect("nonzero divisor");
        let lead = divisor.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let factor = &r[top] / &lead;
            if !factor.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    let k = top - dd + i;
                    r[k] = &r[k] - &factor * c;
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    fn monic(self) -> Poly {
        match self.coeffs.last().cloned() {
            Some(lead) => Poly::new(self.coeffs.into_iter().map(|c| c / &lead).collect()),
            None => self,
        }
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// `Σ x^(e_i) - 1` with positive integer exponents.
pub fn moran_poly(exponents: &[usize]) -> Poly {
    let deg = exponents.iter().copied().max().unwrap_or(0);
    let mut coeffs = vec![BigRational::zero(); deg + 1];
    coeffs[0] -= BigRational::one();
    for &e in exponents {
        coeffs[e] += BigRational::one();
    }
    Poly::new(coeffs)
}

/// Given two families of positive rational exponents `a` and `b` in a
/// shared base `x`, decides whether the unique roots in `(0, 1)` of
/// `Σ x^(a_i) = 1` and `Σ x^(b_j) = 1` coincide.
///
/// Both sides are increasing on `(0, 1)` and run from `-1` to a positive
/// value, so each root is simple and unique; a shared root exists exactly
/// when the gcd changes sign on `(0, 1)`. `None` when the common scaling
/// would exceed [`MAX_DEGREE`] or an exponent is not positive.
pub fn moran_roots_coincide(a: &[BigRational], b: &[BigRational]) -> Option<bool> {
    if a.is_empty() || b.is_empty() || a.iter().chain(b).any(|e| !e.is_positive()) {
        return None;
    }
    let lcm = a
        .iter()
        .chain(b)
        .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let scale = |es: &[BigRational]| -> Option<Vec<usize>> {
        es.iter()
            .map(|e| {
                let k = (e * BigRational::from_integer(lcm.clone())).to_integer();
                k.to_usize().filter(|&k| k <= MAX_DEGREE)
            })
            .collect()
    };
    let pa = moran_poly(&scale(a)?);
    let pb = moran_poly(&scale(b)?);
    let g = pa.gcd(&pb);
    if g.degree().unwrap_or(0) == 0 {
        return Some(false);
    }
    let at0 = g.eval(&BigRational::zero());
    let at1 = g.eval(&BigRational::one());
    Some(at0.signum() * at1.signum() < BigRational::zero())
}
