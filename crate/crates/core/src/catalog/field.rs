//! Small finite fields `F_q` as polynomials over `F_p` modulo a fixed irreducible.
//!
//! Elements are encoded as integers `Σ cᵢ pⁱ` in `0..q`; 0 and 1 are the field's zero and one.

use crate::error::{Error, Result};
use crate::util::prime_power;

/// Bundled moduli, coefficients from the constant term up (monic).
const MODULI: &[(u64, &[u64])] = &[
    (4, &[1, 1, 1]),           // x² + x + 1
    (8, &[1, 1, 0, 1]),        // x³ + x + 1
    (9, &[1, 0, 1]),           // x² + 1
    (16, &[1, 1, 0, 0, 1]),    // x⁴ + x + 1
    (25, &[2, 1, 1]),          // x² + x + 2
    (27, &[1, 2, 0, 1]),       // x³ − x + 1
    (32, &[1, 0, 1, 0, 0, 1]), // x⁵ + x² + 1
    (49, &[3, 1, 1]),          // x² + x + 3
];

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    k: u32,
    q: usize,
    modulus: Vec<u64>,
    add: Vec<u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    neg: Vec<u16>,
    primitive: u16,
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) =
            prime_power(q).ok_or_else(|| Error::Invalid(format!("{q} is not a prime power")))?;
        let modulus: Vec<u64> = if k == 1 {
            vec![0, 1]
        } else {
            MODULI
                .iter()
                .find(|(qq, _)| *qq == q)
                .map(|(_, m)| m.to_vec())
                .ok_or_else(|| Error::Invalid(format!("no bundled modulus for F_{q}")))?
        };
        let q = q as usize;
        let digits = |mut a: usize| -> Vec<u64> {
            let mut d = vec![0u64; k as usize];
            for c in d.iter_mut() {
                *c = (a as u64) % p;
                a /= p as usize;
            }
            d
        };
        let encode = |d: &[u64]| -> u16 { d.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u16 };
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&s);
                // schoolbook product then reduction by the monic modulus
                let mut prod = vec![0u64; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (k as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (t, m) in modulus.iter().enumerate().take(k as usize) {
                        let idx = deg - k as usize + t;
                        prod[idx] = (prod[idx] + (p - c) * m) % p;
                    }
                }
                mul[a * q + b] = encode(&prod[..k as usize]);
            }
        }
        let mut inv = vec![0u16; q];
        let mut neg = vec![0u16; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as u16;
                }
                if a > 0 && mul[a * q + b] == 1 {
                    inv[a] = b as u16;
                }
            }
            if a > 0 && mul[a * q + inv[a] as usize] != 1 {
                return Err(Error::Invalid(format!("modulus for F_{q} is reducible")));
            }
        }
        let mut f = FiniteField {
            p,
            k,
            q,
            modulus,
            add,
            mul,
            inv,
            neg,
            primitive: 0,
        };
        f.primitive = (1..q as u16)
            .find(|&a| f.mult_order(a) == q - 1)
            .ok_or_else(|| Error::Invalid(format!("F_{q} has no primitive element")))?;
        Ok(f)
    }

    pub fn size(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    /// Panics on zero.
    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u16, e: u64) -> u16 {
        let mut r = 1u16;
        for _ in 0..e {
            r = self.mul(r, a);
        }
        r
    }

    /// `a ↦ a^p`.
    pub fn frobenius(&self, a: u16) -> u16 {
        self.pow(a, self.p)
    }

    /// The least generator of the multiplicative group.
    pub fn primitive(&self) -> u16 {
        self.primitive
    }

    pub fn mult_order(&self, a: u16) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
            if n > self.q {
                return 0;
            }
        }
        n
    }

    /// `1, ω, …, ω^{k-1}`: an `F_p`-basis for the primitive `ω`.
    pub fn prime_basis(&self) -> Vec<u16> {
        (0..self.k)
            .map(|i| self.pow(self.primitive, i as u64))
            .collect()
    }

    pub fn is_square(&self, a: u16) -> bool {
        a == 0 || (0..self.q as u16).any(|x| self.mul(x, x) == a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bundled_fields_satisfy_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 25, 27, 32, 49] {
            let f = FiniteField::new(q).unwrap();
            assert_eq!(f.mult_order(f.primitive()), q as usize - 1);
            for _ in 0..200 {
                let a = rng.random_range(0..q as u16);
                let b = rng.random_range(0..q as u16);
                let c = rng.random_range(0..q as u16);
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.sub(f.add(a, b), b), a);
            }
            assert_eq!(f.prime_basis().len(), f.degree() as usize);
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f = FiniteField::new(27).unwrap();
        for a in 0..27 {
            for b in 0..27 {
                assert_eq!(
                    f.frobenius(f.add(a, b)),
                    f.add(f.frobenius(a), f.frobenius(b))
                );
            }
        }
    }

    #[test]
    fn composite_sizes_rejected() {
        assert!(FiniteField::new(6).is_err());
        assert!(FiniteField::new(81).is_err());
    }
}
