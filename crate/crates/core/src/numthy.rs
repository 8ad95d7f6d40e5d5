//! Trial-division number theory for permutation degrees.

use crate::error::{Error, Result};
use crate::perm::gcd;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub n: u64,
    /// `(prime, exponent)` with strictly increasing primes.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn of(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("cannot factor 0".into()));
        }
        let mut factors = Vec::new();
        let mut m = n;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                let mut e = 0;
                while m % d == 0 {
                    m /= d;
                    e += 1;
                }
                factors.push((d, e));
            }
            d += 1;
        }
        if m > 1 {
            factors.push((m, 1));
        }
        Ok(Self { n, factors })
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn euler_phi(n: u64) -> Result<u64> {
    let f = Factorization::of(n)?;
    Ok(f.factors
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1)))
}

pub fn pow_mod(mut base: u64, mut e: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % n as u128) as u64;
        }
        base = (base as u128 * base as u128 % n as u128) as u64;
        e >>= 1;
    }
    acc
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Least `k >= 1` with `a^k = 1 (mod n)`.
pub fn mult_order(a: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("modulus {n} must be at least 2")));
    }
    if gcd(a % n, n) != 1 {
        return Err(Error::InvalidArgument(format!("{a} is not a unit mod {n}")));
    }
    let phi = euler_phi(n)?;
    Ok(divisors(phi)
        .into_iter()
        .find(|&d| pow_mod(a, d, n) == 1)
        .expect("phi(n) annihilates every unit"))
}

/// A unit of multiplicative order exactly `p` mod `n`, or `None` when
/// `p` does not divide `phi(n)`. The scan over `a = 2..n-1` is fixed so
/// results are reproducible.
pub fn unit_of_order(p: u64, n: u64) -> Result<Option<u64>> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("modulus {n} must be at least 2")));
    }
    for a in 2..n {
        if gcd(a, n) != 1 {
            continue;
        }
        let ord = mult_order(a, n)?;
        if ord % p == 0 {
            return Ok(Some(pow_mod(a, ord / p, n)));
        }
    }
    Ok(None)
}

/// Smallest primitive root mod a prime `q`.
pub fn primitive_root(q: u64) -> Result<u64> {
    if !is_prime(q) {
        return Err(Error::InvalidArgument(format!("{q} is not prime")));
    }
    if q == 2 {
        return Ok(1);
    }
    Ok((2..q)
        .find(|&g| mult_order(g, q).ok() == Some(q - 1))
        .expect("prime moduli have primitive roots"))
}
