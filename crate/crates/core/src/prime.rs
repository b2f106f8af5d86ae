//! Primes and arithmetic in the prime field F_p.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A prime number, checked on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub const TWO: Prime = Prime(2);
    pub const THREE: Prime = Prime(3);
    pub const FIVE: Prime = Prime(5);

    pub fn new(value: u32) -> Result<Self, Error> {
        if is_prime(value) {
            Ok(Prime(value))
        } else {
            Err(Error::NotPrime(value))
        }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_odd(self) -> bool {
        self.0 != 2
    }

    /// Canonical residue of an arbitrary integer.
    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.0
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        (self.0 - a % self.0) % self.0
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.0), "inverse of zero");
        self.pow(a, self.0 - 2)
    }

    pub fn pow(self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;
    fn try_from(value: u32) -> Result<Self, Error> {
        Prime::new(value)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::str::FromStr for Prime {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let n: u32 = s.trim().parse().map_err(|e| format!("'{s}': {e}"))?;
        Prime::new(n).map_err(|e| e.to_string())
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_on_construction() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(3).is_ok());
        assert!(Prime::new(97).is_ok());
        for n in [0, 1, 4, 9, 15, 91] {
            assert!(matches!(Prime::new(n), Err(Error::NotPrime(m)) if m == n));
        }
    }

    #[test]
    fn field_arithmetic() {
        let p = Prime::new(5).unwrap();
        assert_eq!(p.reduce(-1), 4);
        assert_eq!(p.mul(3, 4), 2);
        assert_eq!(p.inv(2), 3);
        assert_eq!(p.sub(1, 3), 3);
        for a in 1..5 {
            assert_eq!(p.mul(a, p.inv(a)), 1);
        }
    }
}
