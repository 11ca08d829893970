//! The cyclic P-quasigroup `r∘s = 2s − r (mod n)` and its affine relatives
//! `x·y = a_f·x + a_g·y + c` over `Z_n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{gcd, Permutation};
use crate::table::CayleyTable;

/// Parameters of `x·y = a_f·x + a_g·y + c (mod n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineSpec {
    pub n: usize,
    pub a_f: usize,
    pub a_g: usize,
    pub c: usize,
}

impl AffineSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Invalid("modulus must be positive".into()));
        }
        if self.n.is_multiple_of(2) {
            return Err(Error::EvenOrder(self.n));
        }
        for multiplier in [self.a_f, self.a_g] {
            if gcd(multiplier % self.n, self.n) != 1 {
                return Err(Error::NotUnit {
                    multiplier,
                    n: self.n,
                });
            }
        }
        if self.c >= self.n {
            return Err(Error::Invalid(format!(
                "constant {} out of range for modulus {}",
                self.c, self.n
            )));
        }
        Ok(())
    }
}

fn require_odd(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Invalid("order must be positive".into()))
    } else if n.is_multiple_of(2) {
        Err(Error::EvenOrder(n))
    } else {
        Ok(())
    }
}

/// `cells[r][s] = (2s − r) mod n` for odd `n`.
pub fn denes_keedwell(n: usize) -> Result<CayleyTable> {
    require_odd(n)?;
    CayleyTable::from_fn(n, |r, s| (2 * s + n - r) % n)
}

/// `cells[x][y] = (a_f·x + a_g·y + c) mod n`.
pub fn medial_affine(spec: AffineSpec) -> Result<CayleyTable> {
    spec.validate()?;
    let AffineSpec { n, a_f, a_g, c } = spec;
    CayleyTable::from_fn(n, |x, y| (a_f % n * x + a_g % n * y + c) % n)
}

fn pow_mod(base: usize, mut exp: usize, n: usize) -> usize {
    let mut result = 1 % n;
    let mut b = base % n;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % n;
        }
        b = b * b % n;
        exp >>= 1;
    }
    result
}

/// Closed form of `L_x^k` on the cyclic P-quasigroup: `y ↦ 2^k (y − x) + x`.
pub fn left_translation_power(n: usize, x: usize, k: usize) -> Result<Permutation> {
    require_odd(n)?;
    if x >= n {
        return Err(Error::Invalid(format!(
            "element {x} out of range for order {n}"
        )));
    }
    let scale = pow_mod(2, k, n);
    let images = (0..n)
        .map(|y| (scale * ((y + n - x) % n) + x) % n)
        .collect();
    Ok(Permutation::from_images_unchecked(images))
}

/// Multiplicative order of 2 modulo odd `n > 1`, by repeated doubling.
pub fn left_translation_order(n: usize) -> Result<usize> {
    require_odd(n)?;
    if n == 1 {
        return Err(Error::Invalid(
            "order of 2 modulo 1 is undefined here".into(),
        ));
    }
    let mut k = 1;
    let mut v = 2 % n;
    while v != 1 {
        v = v * 2 % n;
        k += 1;
    }
    Ok(k)
}
