//! Arithmetic in the prime field F_p.
//!
//! [`Fp`] is the field descriptor carried by every matrix, subspace and
//! algebra element; raw residues are stored as `u32` in `[0, p)`. [`Scalar`]
//! pairs a residue with its field for the places where a standalone value
//! crosses an API boundary.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest modulus accepted; keeps every product of two residues inside `u64`.
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_MODULUS || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Fp { p: p as u32 })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Checks that two objects live over the same field.
    pub fn ensure_same(self, other: Fp) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.p, other.p))
        }
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (if s >= self.p as u64 {
            s - self.p as u64
        } else {
            s
        }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// `a + b*c`.
    #[inline]
    pub fn mul_add(self, a: u32, b: u32, c: u32) -> u32 {
        ((a as u64 + b as u64 * c as u64) % self.p as u64) as u32
    }

    pub fn pow(self, base: u32, mut exp: u64) -> u32 {
        let mut result = 1 % self.p;
        let mut b = base % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        result
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a % self.p == 0 {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    /// `C(n, k) mod p` via Lucas' theorem.
    pub fn binomial(self, mut n: u64, mut k: u64) -> u32 {
        if k > n {
            return 0;
        }
        let p = self.p as u64;
        let mut result = 1u32;
        while n > 0 || k > 0 {
            let (nd, kd) = (n % p, k % p);
            if kd > nd {
                return 0;
            }
            result = self.mul(result, self.small_binomial(nd as u32, kd as u32));
            n /= p;
            k /= p;
        }
        result
    }

    // n < p, so every factor is invertible.
    fn small_binomial(self, n: u32, k: u32) -> u32 {
        let k = k.min(n - k);
        let mut num = 1u32;
        let mut den = 1u32;
        for i in 0..k {
            num = self.mul(num, n - i);
            den = self.mul(den, i + 1);
        }
        self.mul(num, self.inv(den).expect("nonzero below p"))
    }

    pub fn scalar(self, v: i64) -> Scalar {
        Scalar {
            value: self.reduce(v),
            field: self,
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// A residue together with its field.
///
/// The operator impls panic when the moduli differ; use the `try_*`
/// methods to get an error instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u32,
    field: Fp,
}

impl Scalar {
    pub fn new(field: Fp, value: i64) -> Self {
        field.scalar(value)
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> Fp {
        self.field
    }

    pub fn modulus(self) -> u32 {
        self.field.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn signed(self) -> i64 {
        let p = self.field.p as i64;
        let v = self.value as i64;
        if v > p / 2 {
            v - p
        } else {
            v
        }
    }

    pub fn inv(self) -> Option<Scalar> {
        self.field.inv(self.value).map(|value| Scalar {
            value,
            field: self.field,
        })
    }

    pub fn try_add(self, rhs: Scalar) -> Result<Scalar> {
        self.field.ensure_same(rhs.field)?;
        Ok(Scalar {
            value: self.field.add(self.value, rhs.value),
            field: self.field,
        })
    }

    pub fn try_mul(self, rhs: Scalar) -> Result<Scalar> {
        self.field.ensure_same(rhs.field)?;
        Ok(Scalar {
            value: self.field.mul(self.value, rhs.value),
            field: self.field,
        })
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
