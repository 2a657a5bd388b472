//! Primality, factorisation and prime selection helpers.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial division bound used before falling back to a primality test.
pub const TRIAL_DIVISION_BOUND: u32 = 1_000_000;

/// Miller–Rabin with the first twelve prime bases is deterministic below this.
const MR_DETERMINISTIC_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_DIVISION_BOUND as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (0..=n).filter(|&i| sieve[i]).map(|i| i as u32).collect()
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin on a big integer; `None` when the input is beyond the range
/// where the fixed bases are proven deterministic and the test did not find
/// a witness.
pub fn is_prime_big(n: &BigUint) -> Option<bool> {
    if let Some(small) = n.to_u64() {
        return Some(is_prime_u64(small));
    }
    let one = BigUint::one();
    let two = &one + &one;
    let n1 = n - &one;
    let mut d = n1.clone();
    let mut s = 0u32;
    while (&d % &two).is_zero() {
        d >>= 1;
        s += 1;
    }
    'bases: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n1 {
                continue 'bases;
            }
        }
        return Some(false);
    }
    let deterministic = n.to_u128().map_or(false, |v| v < MR_DETERMINISTIC_BOUND);
    if deterministic {
        Some(true)
    } else {
        None
    }
}

/// Prime factorisation of a machine integer, ascending.
pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize_u64(n).into_iter().map(|(p, _)| p).collect()
}

/// `Some((p, n))` when `q = pⁿ` with `n ≥ 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize_u64(q).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power(q).is_some()
}

/// Full factorisation of a big integer: trial division up to
/// [`TRIAL_DIVISION_BOUND`], then a primality test on the cofactor.
///
/// Errors when a cofactor remains that is composite or cannot be certified.
pub fn factorize_big(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factor zero".into()));
    }
    if let Some(small) = n.to_u64() {
        return factorize_machine(small);
    }
    let mut m = n.clone();
    let mut out = Vec::new();
    for &p in small_primes() {
        let bp = BigUint::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
    }
    if m.is_one() {
        return Ok(out);
    }
    let bound = BigUint::from(TRIAL_DIVISION_BOUND);
    if m < &bound * &bound {
        out.push((m, 1));
        return Ok(out);
    }
    match is_prime_big(&m) {
        Some(true) => {
            out.push((m, 1));
            Ok(out)
        }
        Some(false) => Err(Error::Configuration(format!(
            "composite cofactor {} survives trial division to {}",
            m, TRIAL_DIVISION_BOUND
        ))),
        None => Err(Error::Configuration(format!(
            "cannot certify primality of cofactor {}",
            m
        ))),
    }
}

fn factorize_machine(mut m: u64) -> Result<Vec<(BigUint, u32)>> {
    let mut out = Vec::new();
    for &p in small_primes() {
        let p = p as u64;
        if p * p > m {
            break;
        }
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((BigUint::from(p), e));
        }
    }
    if m > 1 {
        let bound = TRIAL_DIVISION_BOUND as u64;
        if m >= bound * bound && !is_prime_u64(m) {
            return Err(Error::Configuration(format!(
                "composite cofactor {} survives trial division to {}",
                m, TRIAL_DIVISION_BOUND
            )));
        }
        out.push((BigUint::from(m), 1));
    }
    Ok(out)
}

pub fn largest_prime_factor(n: &BigUint) -> Result<BigUint> {
    factorize_big(n)?
        .into_iter()
        .map(|(p, _)| p)
        .max()
        .ok_or_else(|| Error::Domain("1 has no prime factor".into()))
}

/// Smallest prime `p` with `p ≡ 1 (mod modulus)` and `p > lower`.
pub fn smallest_prime_congruent_one(modulus: u64, lower: u64) -> Result<u64> {
    if modulus == 0 {
        return Err(Error::Configuration("modulus must be positive".into()));
    }
    let mut p = (lower / modulus) * modulus + 1;
    // p < 2^32 keeps every residue product inside u64
    while p < u32::MAX as u64 {
        if p > lower && is_prime_u64(p) {
            return Ok(p);
        }
        p += modulus;
    }
    Err(Error::Configuration(format!(
        "no prime p ≡ 1 (mod {}) with {} < p < 2^32",
        modulus, lower
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn primes_agree_with_naive() {
        for n in 0..5000 {
            assert_eq!(is_prime_u64(n), naive_prime(n), "{}", n);
        }
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn largest_factor_of_suzuki_eight() {
        // |Sz(8)| = 64 · 65 · 7
        assert_eq!(largest_prime_factor(&BigUint::from(29120u32)).unwrap(), BigUint::from(13u32));
    }

    #[test]
    fn big_cofactor_is_certified() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(998_244_353u64);
        let n = &p * &q * BigUint::from(6u32);
        // cofactor p·q is composite and beyond trial division
        assert!(factorize_big(&n).is_err());
        let n = &p * BigUint::from(6u32);
        assert_eq!(largest_prime_factor(&n).unwrap(), p);
    }

    #[test]
    fn congruent_prime() {
        let p = smallest_prime_congruent_one(6, 12).unwrap();
        assert_eq!(p, 13);
        assert_eq!(smallest_prime_congruent_one(60, 120).unwrap(), 181);
    }

    proptest! {
        #[test]
        fn factorisation_multiplies_back(n in 1u64..10_000_000) {
            let f = factorize_u64(n);
            prop_assert_eq!(f.iter().map(|&(p, e)| p.pow(e)).product::<u64>(), n);
            prop_assert!(f.iter().all(|&(p, _)| is_prime_u64(p)));
            let big = factorize_big(&BigUint::from(n)).unwrap();
            prop_assert_eq!(big.len(), f.len());
        }
    }
}
