//! Orders, class numbers and commuting probabilities of six families of
//! finite simple groups of Lie type, with sweeps of the `d < 3/p²` bound.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::{factorize_big, prime_power};
use crate::Rational;

/// Default upper limit of `q` in [`bound_sweep`].
pub const DEFAULT_SWEEP_Q_MAX: u64 = 1 << 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    Psl2,
    Psl3,
    Psu3,
    Suzuki,
    Ree,
    TrialityD4,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::Psl2, Family::Psl3, Family::Psu3, Family::Suzuki, Family::Ree, Family::TrialityD4];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Psl2 => "PSL2",
            Family::Psl3 => "PSL3",
            Family::Psu3 => "PSU3",
            Family::Suzuki => "SUZUKI",
            Family::Ree => "REE",
            Family::TrialityD4 => "TRIALITY_D4",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase();
        Ok(match key.as_str() {
            "psl2" | "l2" => Family::Psl2,
            "psl3" | "l3" => Family::Psl3,
            "psu3" | "u3" => Family::Psu3,
            "suzuki" | "sz" | "2b2" => Family::Suzuki,
            "ree" | "2g2" => Family::Ree,
            "trialityd4" | "triality" | "3d4" => Family::TrialityD4,
            _ => return Err(Error::Input(format!("unknown family {:?}", s))),
        })
    }
}

/// A family member with a validated parameter `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub q: u64,
}

impl FamilySpec {
    pub fn new(family: Family, q: u64) -> Result<Self> {
        let (p, n) = prime_power(q).ok_or_else(|| Error::Domain(format!("q = {} is not a prime power", q)))?;
        if q > 1 << 20 {
            return Err(Error::Domain(format!("q = {} is outside the supported range", q)));
        }
        let ok = match family {
            Family::Psl2 => q >= 4,
            Family::Psl3 => q >= 3,
            Family::Psu3 => q >= 3,
            Family::Suzuki => p == 2 && n % 2 == 1 && n >= 3,
            Family::Ree => p == 3 && n % 2 == 1 && n >= 3,
            Family::TrialityD4 => true,
        };
        if !ok {
            return Err(Error::Domain(format!("{}({}) is not a valid simple group parameter", family, q)));
        }
        Ok(FamilySpec { family, q })
    }

    /// `gcd(3, q−1)` for PSL3, `gcd(3, q+1)` for PSU3, `gcd(2, q−1)` for PSL2, else 1.
    pub fn d_divisor(&self) -> u64 {
        let q = self.q;
        match self.family {
            Family::Psl2 => (q - 1).gcd(&2),
            Family::Psl3 => (q - 1).gcd(&3),
            Family::Psu3 => (q + 1).gcd(&3),
            _ => 1,
        }
    }

    fn characteristic(&self) -> u64 {
        prime_power(self.q).expect("validated").0
    }

    /// Factors whose product is `|G|` times the divisor, up to powers of `p`.
    fn order_pieces(&self) -> Vec<u64> {
        let q = self.q;
        let p = self.characteristic();
        match self.family {
            Family::Psl2 => vec![p, q - 1, q + 1],
            Family::Psl3 => vec![p, q - 1, q + 1, q * q + q + 1],
            Family::Psu3 => vec![p, q - 1, q + 1, q * q - q + 1],
            Family::Suzuki => vec![2, q * q + 1, q - 1],
            Family::Ree => vec![3, q + 1, q * q - q + 1, q - 1],
            Family::TrialityD4 => vec![p, q - 1, q + 1, q * q + q + 1, q * q - q + 1, q * q * q * q - q * q + 1],
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family, self.q)
    }
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

pub fn family_order(spec: &FamilySpec) -> BigUint {
    let q = big(spec.q);
    let one = BigUint::one();
    let q2 = &q * &q;
    let q3 = &q2 * &q;
    let raw = match spec.family {
        Family::Psl2 => &q * (&q2 - &one),
        Family::Psl3 => &q3 * (&q2 - &one) * (&q3 - &one),
        Family::Psu3 => &q3 * (&q2 - &one) * (&q3 + &one),
        Family::Suzuki => &q2 * (&q2 + &one) * (&q - &one),
        Family::Ree => &q3 * (&q3 + &one) * (&q - &one),
        Family::TrialityD4 => {
            let q4 = &q2 * &q2;
            let q6 = &q4 * &q2;
            let q8 = &q4 * &q4;
            q.pow(12) * (&q8 + &q4 + &one) * (&q6 - &one) * (&q2 - &one)
        }
    };
    raw / big(spec.d_divisor())
}

/// `(k, is_bound)`: the class number, or an upper bound for PSL3 with `q ≥ 4` and PSU3.
pub fn family_class_number(spec: &FamilySpec) -> (BigUint, bool) {
    let q = spec.q;
    match spec.family {
        Family::Psl2 if q % 2 == 0 => (big(q + 1), false),
        Family::Psl2 => (big((q + 5) / 2), false),
        Family::Psl3 if q == 3 => (big(12), false),
        // d ≤ (q²+3q) / ((1/3)|SL3(q)|·…) carries a fixed factor 3
        Family::Psl3 => (big(3 * (q * q + 3 * q) / spec.d_divisor()), true),
        Family::Psu3 => (big(q * q + q + 2), true),
        Family::Suzuki => (big(q + 3), false),
        Family::Ree => (big(q + 8), false),
        Family::TrialityD4 => (big(q * q * q * q + q * q * q + q * q + q + 6), false),
    }
}

/// `(d, is_bound)` with `d = k/|G|`, or its upper bound when flagged.
pub fn family_d(spec: &FamilySpec) -> (Rational, bool) {
    let (k, bound) = family_class_number(spec);
    (Rational::new(BigInt::from(k), BigInt::from(family_order(spec))), bound)
}

pub fn family_largest_prime(spec: &FamilySpec) -> Result<BigUint> {
    let order = family_order(spec);
    let mut best = BigUint::zero();
    for piece in spec.order_pieces() {
        if piece < 2 {
            continue;
        }
        for (p, _) in factorize_big(&big(piece))? {
            if p > best && (&order % &p).is_zero() {
                best = p;
            }
        }
    }
    if best.is_zero() {
        return Err(Error::Internal(format!("no prime divisor found for {}", spec)));
    }
    Ok(best)
}

mod big_str {
    use num_bigint::BigUint;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?.parse().map_err(de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyInvariants {
    pub family: Family,
    pub q: u64,
    #[serde(with = "big_str")]
    pub order: BigUint,
    #[serde(with = "big_str")]
    pub class_number: BigUint,
    #[serde(with = "crate::metrics::ratio_str")]
    pub d_value: Rational,
    pub bound_flag: bool,
    #[serde(with = "big_str")]
    pub largest_prime: BigUint,
}

pub fn family_invariants(spec: &FamilySpec) -> Result<FamilyInvariants> {
    let order = family_order(spec);
    let (class_number, bound_flag) = family_class_number(spec);
    let (d_value, _) = family_d(spec);
    let largest_prime = family_largest_prime(spec)?;
    if class_number > order {
        return Err(Error::Internal(format!("class number exceeds order for {}", spec)));
    }
    Ok(FamilyInvariants { family: spec.family, q: spec.q, order, class_number, d_value, bound_flag, largest_prime })
}

/// One JSONL row of a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub family: Family,
    pub q: u64,
    pub order: String,
    pub p: String,
    pub d_num: String,
    pub d_den: String,
    pub bound_flag: bool,
    /// `p²/3 < √|G|`, tested as `p⁴ < 9|G|`.
    pub lemma31_holds: bool,
    /// `d < 3/p²`, tested as `d_num·p² < 3·d_den`.
    pub d_below_3_over_p2: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSkip {
    pub family: Family,
    pub q: u64,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub skipped: Vec<SweepSkip>,
    /// Human-readable descriptions of failed checks.
    pub violations: Vec<String>,
}

impl SweepReport {
    pub fn lemma31_exceptions(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| !r.lemma31_holds)
    }
}

/// Valid parameters `q ≤ q_max` for a family, ascending.
pub fn valid_parameters(family: Family, q_max: u64) -> Vec<u64> {
    (2..=q_max.min(1 << 20)).filter(|&q| FamilySpec::new(family, q).is_ok()).collect()
}

pub fn sweep_row(spec: &FamilySpec) -> Result<SweepRow> {
    let inv = family_invariants(spec)?;
    let p = &inv.largest_prime;
    let p2 = p * p;
    let num = inv.d_value.numer().to_biguint().expect("positive");
    let den = inv.d_value.denom().to_biguint().expect("positive");
    Ok(SweepRow {
        family: spec.family,
        q: spec.q,
        order: inv.order.to_string(),
        p: p.to_string(),
        d_num: num.to_string(),
        d_den: den.to_string(),
        bound_flag: inv.bound_flag,
        lemma31_holds: &p2 * &p2 < big(9) * &inv.order,
        d_below_3_over_p2: num * p2 < big(3) * den,
    })
}

/// Largest prime of `q²+1` is at most `(q²+1)/3`.
pub fn suzuki_square_plus_one_check(q: u64) -> Result<bool> {
    let n = big(q * q + 1);
    let largest = factorize_big(&n)?.into_iter().map(|(p, _)| p).max().expect("n > 1");
    Ok(largest * big(3) <= n)
}

/// Evaluates every valid `q ≤ q_max` of the given families.
pub fn bound_sweep(families: &[Family], q_max: u64) -> SweepReport {
    let specs: Vec<FamilySpec> = families
        .iter()
        .flat_map(|&f| valid_parameters(f, q_max).into_iter().map(move |q| FamilySpec { family: f, q }))
        .collect();
    collect_sweep(specs.iter().map(|s| (*s, sweep_row(s))))
}

/// Assembles a report from already evaluated rows, in input order.
pub fn collect_sweep(results: impl IntoIterator<Item = (FamilySpec, Result<SweepRow>)>) -> SweepReport {
    let mut report = SweepReport::default();
    for (spec, result) in results {
        match result {
            Ok(row) => {
                if !row.d_below_3_over_p2 {
                    report.violations.push(format!("{}: d ≥ 3/p² with p = {}", spec, row.p));
                }
                if spec.family == Family::Suzuki {
                    match suzuki_square_plus_one_check(spec.q) {
                        Ok(true) => {}
                        Ok(false) => report.violations.push(format!("{}: q²+1 has a prime factor above (q²+1)/3", spec)),
                        Err(e) => report.skipped.push(SweepSkip { family: spec.family, q: spec.q, reason: e.to_string() }),
                    }
                }
                report.rows.push(row);
            }
            Err(e) => report.skipped.push(SweepSkip { family: spec.family, q: spec.q, reason: e.to_string() }),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::metrics::ratio;

    fn spec(f: Family, q: u64) -> FamilySpec {
        FamilySpec::new(f, q).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(family_order(&spec(Family::Psl2, 7)), big(168));
        assert_eq!(family_order(&spec(Family::Psl2, 4)), big(60));
        assert_eq!(family_order(&spec(Family::Psl2, 5)), big(60));
        assert_eq!(family_order(&spec(Family::Suzuki, 8)), big(29120));
        assert_eq!(family_order(&spec(Family::Psl3, 3)), big(5616));
        assert_eq!(family_order(&spec(Family::Psu3, 3)), big(6048));
        assert_eq!(family_order(&spec(Family::Ree, 27)), big(10_073_444_472));
        assert_eq!(family_order(&spec(Family::TrialityD4, 2)), big(211_341_312));
        assert_eq!(family_order(&spec(Family::Psl3, 4)), big(20160));
    }

    #[test]
    fn parameter_validation() {
        assert!(FamilySpec::new(Family::Psl2, 3).is_err());
        assert!(FamilySpec::new(Family::Psl2, 6).is_err());
        assert!(FamilySpec::new(Family::Suzuki, 2).is_err());
        assert!(FamilySpec::new(Family::Suzuki, 16).is_err());
        assert!(FamilySpec::new(Family::Suzuki, 32).is_ok());
        assert!(FamilySpec::new(Family::Ree, 3).is_err());
        assert!(FamilySpec::new(Family::Ree, 27).is_ok());
        assert!(FamilySpec::new(Family::Psl3, 2).is_err());
        assert_eq!(valid_parameters(Family::Suzuki, 1024), vec![8, 32, 128, 512]);
        assert_eq!(valid_parameters(Family::Ree, 1024), vec![27, 243]);
        assert_eq!("suzuki".parse::<Family>().unwrap(), Family::Suzuki);
        assert_eq!("TRIALITY_D4".parse::<Family>().unwrap(), Family::TrialityD4);
        assert!("e8".parse::<Family>().is_err());
    }

    #[test]
    fn d_values() {
        assert_eq!(family_d(&spec(Family::Psl2, 4)), (ratio(1, 12), false));
        assert_eq!(family_d(&spec(Family::Psl2, 5)), (ratio(1, 12), false));
        assert_eq!(family_d(&spec(Family::Psl2, 7)), (ratio(1, 28), false));
        assert_eq!(family_d(&spec(Family::Psl3, 3)), (ratio(1, 468), false));
        assert_eq!(family_d(&spec(Family::Suzuki, 8)), (ratio(11, 29120), false));
        assert!(family_d(&spec(Family::Psu3, 3)).1);
        assert!(family_d(&spec(Family::Psl3, 4)).1);
    }

    #[test]
    fn psl2_against_constructed_groups() {
        for q in [4u64, 5, 7, 8, 9, 11, 13] {
            let g = builtin::psl2(q as usize).unwrap();
            let (d, bound) = family_d(&spec(Family::Psl2, q));
            assert!(!bound);
            assert_eq!(d, ratio(g.class_count() as u64, g.order() as u64), "q = {}", q);
        }
    }

    #[test]
    fn largest_primes() {
        assert_eq!(family_largest_prime(&spec(Family::Suzuki, 8)).unwrap(), big(13));
        assert_eq!(family_largest_prime(&spec(Family::Psl2, 4)).unwrap(), big(5));
        assert_eq!(family_largest_prime(&spec(Family::Psl3, 3)).unwrap(), big(13));
        assert_eq!(family_largest_prime(&spec(Family::Psl2, 9)).unwrap(), big(5));
    }

    #[test]
    fn sweep_examples() {
        let r = sweep_row(&spec(Family::Suzuki, 8)).unwrap();
        assert_eq!((r.p.as_str(), r.d_num.as_str(), r.d_den.as_str()), ("13", "11", "29120"));
        assert!(r.d_below_3_over_p2);
        let r = sweep_row(&spec(Family::Psl2, 5)).unwrap();
        assert_eq!((r.p.as_str(), r.d_num.as_str(), r.d_den.as_str()), ("5", "1", "12"));
        let report = bound_sweep(&Family::ALL, 64);
        assert!(report.violations.is_empty(), "{:?}", report.violations);
        assert!(report.skipped.is_empty());
        let json = serde_json::to_string(&report.rows[0]).unwrap();
        assert!(json.starts_with("{\"family\":\"PSL2\",\"q\":4,"));
    }
}
