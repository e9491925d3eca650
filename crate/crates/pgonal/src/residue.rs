//! Exact arithmetic in Z_p for odd prime p.
//!
//! Residues are stored as canonical least non-negative representatives so
//! that equality, ordering and lexicographic minimization are unambiguous.

use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidueError {
    /// The modulus is not an odd prime >= 3.
    NotOddPrime(u64),
    ZeroNotInvertible,
    ZeroScalar,
}

impl fmt::Display for ResidueError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueError::NotOddPrime(p) => write!(f, "{p} is not an odd prime >= 3"),
            ResidueError::ZeroNotInvertible => write!(f, "0 has no multiplicative inverse"),
            ResidueError::ZeroScalar => write!(f, "scaling by 0 is not a unit action"),
        }
    }
}

/// An odd prime modulus, verified at construction by trial division.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self, ResidueError> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(ResidueError::NotOddPrime(p));
        }
        Ok(PrimeModulus(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of Z_p in canonical form `0 <= value < p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Residue {
    value: u64,
    modulus: PrimeModulus,
}

impl Residue {
    /// Reduces an arbitrary integer to its canonical representative mod p.
    pub fn normalize(a: i64, p: PrimeModulus) -> Residue {
        let m = p.get() as i64;
        let v = a.rem_euclid(m) as u64;
        Residue { value: v, modulus: p }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    // named add/neg/mul rather than the operator traits: Copy semantics plus
    // debug assertions on matching moduli read better at call sites
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Residue) -> Residue {
        debug_assert_eq!(self.modulus, other.modulus);
        let p = self.modulus.get();
        Residue {
            value: (self.value + other.value) % p,
            modulus: self.modulus,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Residue {
        let p = self.modulus.get();
        Residue {
            value: (p - self.value) % p,
            modulus: self.modulus,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Residue) -> Residue {
        debug_assert_eq!(self.modulus, other.modulus);
        let p = self.modulus.get() as u128;
        let v = (self.value as u128 * other.value as u128) % p;
        Residue {
            value: v as u64,
            modulus: self.modulus,
        }
    }

    /// The unit x with a*x = 1 mod p, via Fermat's little theorem.
    pub fn unit_inverse(self) -> Result<Residue, ResidueError> {
        if self.is_zero() {
            return Err(ResidueError::ZeroNotInvertible);
        }
        let p = self.modulus.get();
        Ok(Residue {
            value: pow_mod(self.value, p - 2, p),
            modulus: self.modulus,
        })
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let m = p as u128;
    let mut acc = 1u128;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Elementwise unit scaling of an exponent tuple, order preserved.
pub fn scale_tuple(js: &[Residue], c: Residue) -> Result<Vec<Residue>, ResidueError> {
    if c.is_zero() {
        return Err(ResidueError::ZeroScalar);
    }
    Ok(js.iter().map(|&j| j.mul(c)).collect())
}
