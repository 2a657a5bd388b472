//! Degree sum, class number, involution count and their ratios to |G|.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::subgroup::derived_subgroup;
use crate::Rational;

/// Default order cap for [`commuting_pairs_bruteforce`].
pub const DEFAULT_COMMUTING_CAP: usize = 6000;

/// Serde adapter writing rationals as `"num/den"` strings.
pub mod ratio_str {
    use super::*;
    use serde::{de, Deserializer, Serializer};

    pub fn format(r: &Rational) -> String {
        format!("{}/{}", r.numer(), r.denom())
    }

    pub fn parse(s: &str) -> std::result::Result<Rational, String> {
        let (n, d) = s.split_once('/').ok_or_else(|| format!("expected num/den, got {:?}", s))?;
        let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator in {:?}", s))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator in {:?}", s))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {:?}", s));
        }
        Ok(Rational::new(n, d))
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(de::Error::custom)
    }
}

pub fn ratio(num: u64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupMetrics {
    pub order: u64,
    pub class_number: u64,
    pub degree_sum: u64,
    pub involution_count: u64,
    #[serde(with = "ratio_str")]
    pub t: Rational,
    #[serde(with = "ratio_str")]
    pub d: Rational,
    #[serde(with = "ratio_str")]
    pub i: Rational,
}

impl GroupMetrics {
    pub fn from_counts(order: u64, class_number: u64, degree_sum: u64, involution_count: u64) -> Self {
        GroupMetrics {
            order,
            class_number,
            degree_sum,
            involution_count,
            t: ratio(degree_sum, order),
            d: ratio(class_number, order),
            i: ratio(involution_count, order),
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.class_number == self.order
    }

    /// `i ≤ t ≤ √d`, compared as `i² ≤ t² ≤ d`.
    pub fn sandwich_holds(&self) -> bool {
        let t2 = &self.t * &self.t;
        &self.i * &self.i <= t2 && t2 <= self.d
    }

    fn check(&self) -> Result<()> {
        let ok = self.degree_sum >= self.class_number
            && self.degree_sum <= self.order
            && (self.degree_sum == self.order) == self.is_abelian()
            && (self.d == Rational::one()) == self.is_abelian()
            && self.sandwich_holds();
        if ok {
            Ok(())
        } else {
            Err(Error::Internal(format!("inconsistent metrics {:?}", self)))
        }
    }
}

/// Number of `x` with `x² = 1`, identity included.
pub fn involution_count(g: &PermutationGroup) -> u64 {
    g.elements().filter(|&x| g.mul(x, x) == g.identity()).count() as u64
}

pub fn compute_metrics(g: &PermutationGroup, degrees: &[u64]) -> Result<GroupMetrics> {
    let order = g.order() as u64;
    let k = g.class_count() as u64;
    if degrees.len() as u64 != k {
        return Err(Error::Input(format!("{} degrees for {} classes", degrees.len(), k)));
    }
    if degrees.iter().map(|d| d * d).sum::<u64>() != order {
        return Err(Error::Input("squared degrees do not sum to the group order".into()));
    }
    let m = GroupMetrics::from_counts(order, k, degrees.iter().sum(), involution_count(g));
    m.check()?;
    Ok(m)
}

/// Number of ordered commuting pairs, by direct comparison of `xy` and `yx`.
pub fn commuting_pair_count(g: &PermutationGroup) -> u64 {
    let n = g.order() as u32;
    let mut off_diagonal = 0u64;
    for x in 0..n {
        let a = g.element(x);
        for y in x + 1..n {
            let b = g.element(y);
            if a.iter().zip(b).all(|(&ai, &bi)| b[ai as usize] == a[bi as usize]) {
                off_diagonal += 1;
            }
        }
    }
    2 * off_diagonal + n as u64
}

/// `|{(x,y) : xy = yx}| / |G|²`.
pub fn commuting_pairs_bruteforce(g: &PermutationGroup) -> Result<Rational> {
    commuting_pairs_bruteforce_with_cap(g, DEFAULT_COMMUTING_CAP)
}

pub fn commuting_pairs_bruteforce_with_cap(g: &PermutationGroup, cap: usize) -> Result<Rational> {
    if g.order() > cap {
        return Err(Error::capacity(format!("commuting-pair enumeration of {} (order {})", g.name(), g.order()), cap));
    }
    let n = g.order() as u64;
    Ok(ratio(commuting_pair_count(g), n * n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfBoundWitness {
    /// `Σ_{χ(1) ≥ 3} (χ(1)² − 2χ(1))`
    pub lhs: u64,
    /// `|G:G′|`
    pub rhs: u64,
    /// `2T(G) > |G|`
    pub verdict: bool,
}

/// Witness for `2T(G) > |G| ⇔ lhs < rhs`. Errors if the two sides disagree.
pub fn half_bound_witness(g: &PermutationGroup, degrees: &[u64]) -> Result<HalfBoundWitness> {
    let rhs = (g.order() / derived_subgroup(g).order()) as u64;
    half_bound_from_parts(g.order() as u64, rhs, degrees)
}

pub fn half_bound_from_parts(order: u64, abelianization: u64, degrees: &[u64]) -> Result<HalfBoundWitness> {
    let lhs = degrees.iter().filter(|&&d| d >= 3).map(|d| d * d - 2 * d).sum();
    let verdict = 2 * degrees.iter().sum::<u64>() > order;
    if verdict != (lhs < abelianization) {
        return Err(Error::Internal(format!(
            "half-bound equivalence fails: lhs {} rhs {} 2T>|G| {}",
            lhs, abelianization, verdict
        )));
    }
    Ok(HalfBoundWitness { lhs, rhs: abelianization, verdict })
}
