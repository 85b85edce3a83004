//! Integer factorization: trial division by a sieved prime table, then
//! Miller-Rabin and Brent's variant of Pollard rho for what remains.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ArithError;

const SIEVE_LIMIT: u32 = 10_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = SIEVE_LIMIT as usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Prime factorization with signed exponents. Keys iterate in increasing
/// order and zero exponents are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PrimeExponentVector {
    entries: BTreeMap<BigUint, i64>,
}

impl PrimeExponentVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, prime: &BigUint) -> i64 {
        self.entries.get(prime).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BigUint, i64)> {
        self.entries.iter().map(|(p, e)| (p, *e))
    }

    /// Adds `exponent` to the entry for `prime`, dropping it if it cancels.
    pub fn add(&mut self, prime: BigUint, exponent: i64) {
        if exponent == 0 {
            return;
        }
        let slot = self.entries.entry(prime.clone()).or_insert(0);
        *slot += exponent;
        if *slot == 0 {
            self.entries.remove(&prime);
        }
    }

    pub fn negated(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|(p, e)| (p.clone(), -e)).collect(),
        }
    }

    /// Rebuilds the positive rational `∏ p^e`.
    pub fn to_rational(&self) -> BigRational {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for (p, e) in &self.entries {
            let power = p.pow(e.unsigned_abs() as u32);
            if *e > 0 {
                num *= power;
            } else {
                den *= power;
            }
        }
        BigRational::new(num.into(), den.into())
    }
}

/// Factors a positive integer. `1` yields the empty vector.
pub fn factorize(n: &BigUint) -> Result<PrimeExponentVector, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroFactorization);
    }
    let mut out = PrimeExponentVector::new();
    let mut rest = n.clone();
    for &p in small_primes() {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut count = 0;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            count += 1;
        }
        out.add(pb, count);
    }
    if rest.is_one() {
        return Ok(out);
    }
    let limit = BigUint::from(SIEVE_LIMIT);
    if rest < &limit * &limit {
        out.add(rest, 1);
        return Ok(out);
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            out.add(m, 1);
            continue;
        }
        let d = pollard_brent(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    Ok(out)
}

/// Signed exponent vector of a positive rational: numerator factors minus
/// denominator factors.
pub fn exponent_vector(q: &BigRational) -> Result<PrimeExponentVector, ArithError> {
    if !q.is_positive() {
        return Err(ArithError::NonPositive(q.to_string()));
    }
    let num = q.numer().magnitude();
    let den = q.denom().magnitude();
    let mut out = factorize(num)?;
    for (p, e) in factorize(den)?.iter() {
        out.add(p.clone(), -e);
    }
    Ok(out)
}

/// Miller-Rabin with the first twelve prime bases. Deterministic below
/// 3.3 * 10^24; beyond that the error probability is below 4^-12.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &p in &small_primes()[..12] {
        let pb = BigUint::from(p);
        if *n == pb {
            return true;
        }
        if (n % &pb).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &small_primes()[..12] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut c = BigUint::one();
    loop {
        if let Some(d) = brent_attempt(n, &c) {
            return d;
        }
        c += 1u32;
    }
}

fn brent_attempt(n: &BigUint, c: &BigUint) -> Option<BigUint> {
    const BATCH: usize = 128;
    let step = |x: &BigUint| (x * x + c) % n;
    let mut y = BigUint::from(2u32);
    let mut r = 1usize;
    let mut q = BigUint::one();
    let mut x;
    let mut ys;
    let mut g;
    loop {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        loop {
            ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                y = step(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += BATCH;
            if k >= r || !g.is_one() {
                break;
            }
        }
        r *= 2;
        if !g.is_one() {
            break;
        }
        if r > (1 << 24) {
            return None;
        }
    }
    if g == *n {
        // Batched product overshot; walk one step at a time from the checkpoint.
        loop {
            ys = step(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if g == *n {
        None
    } else {
        Some(g)
    }
}

/// Exact `k`-th root of a non-negative integer, if one exists.
pub(crate) fn exact_root(n: &BigUint, k: u32) -> Option<BigUint> {
    let root = n.nth_root(k);
    (root.pow(k) == *n).then_some(root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn vec_of(n: u64) -> Vec<(u64, i64)> {
        factorize(&BigUint::from(n))
            .unwrap()
            .iter()
            .map(|(p, e)| (p.to_u64().unwrap(), e))
            .collect()
    }

    #[test]
    fn small_cases() {
        assert!(vec_of(1).is_empty());
        assert_eq!(vec_of(12), vec![(2, 2), (3, 1)]);
        assert_eq!(vec_of(9973), vec![(9973, 1)]);
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(
            factorize(&BigUint::zero()),
            Err(ArithError::ZeroFactorization)
        );
    }

    #[test]
    fn large_semiprime_goes_through_rho() {
        // 1_000_003 * 1_000_033, both prime and beyond the sieve.
        let n = BigUint::from(1_000_003u64) * BigUint::from(1_000_033u64);
        let f = factorize(&n).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.get(&BigUint::from(1_000_003u64)), 1);
        assert_eq!(f.get(&BigUint::from(1_000_033u64)), 1);
    }

    #[test]
    fn prime_power_beyond_sieve() {
        let p = BigUint::from(10_007u32);
        let n = p.pow(3) * BigUint::from(96u32);
        let f = factorize(&n).unwrap();
        assert_eq!(f.get(&p), 3);
        assert_eq!(f.get(&BigUint::from(2u32)), 5);
        assert_eq!(f.get(&BigUint::from(3u32)), 1);
    }

    #[test]
    fn exponent_vectors_of_rationals() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let v = exponent_vector(&r(1, 8)).unwrap();
        assert_eq!(v.iter().map(|(p, e)| (p.to_u64().unwrap(), e)).collect::<Vec<_>>(), vec![(2, -3)]);
        let v = exponent_vector(&r(12, 18)).unwrap();
        assert_eq!(
            v.iter().map(|(p, e)| (p.to_u64().unwrap(), e)).collect::<Vec<_>>(),
            vec![(2, 1), (3, -1)]
        );
        assert!(exponent_vector(&r(1, 1)).unwrap().is_empty());
        assert!(exponent_vector(&r(0, 1)).is_err());
        assert!(exponent_vector(&r(-2, 3)).is_err());
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0u64..5000 {
            let trial = n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_probable_prime(&BigUint::from(n)), trial, "n = {n}");
        }
    }
}
