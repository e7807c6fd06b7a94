//! Residue arithmetic in `Z_n` and the unit-group helpers used to pick
//! family parameters (units of a given multiplicative order).

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModularError {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },
}

/// A fully reduced residue `value mod modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: i64, modulus: u64) -> Result<Self, ModularError> {
        if modulus < 2 {
            return Err(ModularError::BadModulus(modulus));
        }
        Ok(Self {
            value: value.rem_euclid(modulus as i64) as u64,
            modulus,
        })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_unit(self) -> bool {
        gcd(self.value, self.modulus) == 1
    }

    pub fn pow(self, exp: u64) -> Residue {
        Residue {
            value: pow_mod(self.value, exp, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl std::ops::Mul for Residue {
    type Output = Residue;

    fn mul(self, other: Residue) -> Residue {
        debug_assert_eq!(self.modulus, other.modulus);
        Residue {
            value: self.value * other.value % self.modulus,
            modulus: self.modulus,
        }
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut result = 1 % modulus;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % modulus;
        }
        b = b * b % modulus;
        exp >>= 1;
    }
    result
}

/// Multiplicative inverse via the extended Euclidean algorithm.
pub fn inv_mod(x: Residue) -> Result<Residue, ModularError> {
    let n = x.modulus as i64;
    let (mut old_r, mut r) = (x.value as i64, n);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(ModularError::NotAUnit {
            value: x.value,
            modulus: x.modulus,
        });
    }
    Residue::new(old_s, x.modulus)
}

/// Least `d >= 1` with `x^d = 1 (mod n)`.
pub fn unit_order(x: Residue) -> Result<u64, ModularError> {
    if !x.is_unit() {
        return Err(ModularError::NotAUnit {
            value: x.value,
            modulus: x.modulus,
        });
    }
    let n = x.modulus;
    let mut acc = x.value % n;
    let mut d = 1;
    while acc != 1 % n {
        acc = acc * x.value % n;
        d += 1;
    }
    Ok(d)
}

/// All units modulo `n` whose multiplicative order is exactly `d`, ascending.
pub fn elements_of_order(d: u64, n: u64) -> Result<Vec<Residue>, ModularError> {
    if n < 2 {
        return Err(ModularError::BadModulus(n));
    }
    Ok((1..n)
        .filter(|&v| gcd(v, n) == 1)
        .map(|v| Residue { value: v, modulus: n })
        .filter(|&r| unit_order(r).map(|o| o == d).unwrap_or(false))
        .collect())
}

/// Smallest unit of order `d` modulo `n`, if any.
pub fn smallest_of_order(d: u64, n: u64) -> Result<Option<Residue>, ModularError> {
    Ok(elements_of_order(d, n)?.into_iter().next())
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
