//! Small Galois fields `GF(q)`, `q = pⁿ`, with full operation tables.
//!
//! Elements are encoded as integers `0..q` whose base-`p` digits are the
//! coefficients of a polynomial modulo a fixed irreducible of degree `n`.

use crate::error::{Error, Result};
use crate::primes::prime_power;

#[derive(Clone, Debug)]
pub struct SmallField {
    q: usize,
    p: usize,
    n: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    primitive: u16,
}

impl SmallField {
    pub fn new(q: usize) -> Result<Self> {
        let (p, n) = prime_power(q as u64)
            .ok_or_else(|| Error::Domain(format!("{} is not a prime power", q)))?;
        if q > 1 << 12 {
            return Err(Error::capacity("field size", 1 << 12));
        }
        let (p, n) = (p as usize, n as usize);
        let modulus = find_irreducible(p, n);

        let digits = |mut x: usize| -> Vec<usize> {
            let mut d = vec![0; n];
            for c in d.iter_mut() {
                *c = x % p;
                x /= p;
            }
            d
        };
        let encode = |d: &[usize]| -> usize { d.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&s) as u16;
                // schoolbook product then reduce by the monic modulus
                let mut prod = vec![0usize; 2 * n];
                for i in 0..n {
                    for j in 0..n {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                for deg in (n..2 * n).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        for k in 0..n {
                            prod[deg - n + k] = (prod[deg - n + k] + (p - c) * modulus[k]) % p;
                        }
                        prod[deg] = 0;
                    }
                }
                mul[a * q + b] = encode(&prod[..n]) as u16;
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u16).collect();
        let inv = (0..q)
            .map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u16 })
            .collect();
        let mut f = SmallField { q, p, n, add, mul, neg, inv, primitive: 1 };
        f.primitive = (1..q as u16)
            .find(|&g| f.multiplicative_order(g) == q - 1)
            .expect("finite field has a primitive element");
        Ok(f)
    }

    fn multiplicative_order(&self, g: u16) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn size(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    pub fn primitive_element(&self) -> u16 {
        self.primitive
    }

    /// `1, ω, ω², …, ωⁿ⁻¹` for the primitive `ω`; spans the field over `GF(p)`.
    pub fn prime_field_basis(&self) -> Vec<u16> {
        // the element with digit vector e_i is x^i, and x^i (i < n) form a basis
        (0..self.n).map(|i| self.p.pow(i as u32) as u16).collect()
    }
}

/// Lexicographically first monic irreducible of degree `n` over `GF(p)`,
/// returned as its low coefficients `c₀..c_{n-1}`.
fn find_irreducible(p: usize, n: usize) -> Vec<usize> {
    if n == 1 {
        return vec![0];
    }
    let total = p.pow(n as u32);
    'outer: for code in 0..total {
        let mut coeffs = vec![0; n];
        let mut c = code;
        for x in coeffs.iter_mut() {
            *x = c % p;
            c /= p;
        }
        // reducible iff some monic factor of degree ≤ n/2 divides it
        for d in 1..=n / 2 {
            for dcode in 0..p.pow(d as u32) {
                let mut div = vec![0; d + 1];
                let mut c = dcode;
                for x in div.iter_mut().take(d) {
                    *x = c % p;
                    c /= p;
                }
                div[d] = 1;
                let mut rem: Vec<usize> = coeffs.clone();
                rem.push(1);
                for deg in (d..=n).rev() {
                    let lead = rem[deg];
                    if lead != 0 {
                        for k in 0..=d {
                            rem[deg - d + k] = (rem[deg - d + k] + (p - lead) * div[k]) % p;
                        }
                    }
                }
                if rem[..d].iter().all(|&x| x == 0) {
                    continue 'outer;
                }
            }
        }
        return coeffs;
    }
    unreachable!("irreducible polynomials exist in every degree")
}
