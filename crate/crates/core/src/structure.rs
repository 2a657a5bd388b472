//! Chief series, Fitting subgroup and the structural predicates
//! (abelian, nilpotent, supersolvable, solvable, p-solvable).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::primes::prime_divisors;
use crate::quotient::quotient_group;
use crate::subgroup::{
    center, derived_series, generated_subgroup, is_prime_power_of, lower_central_series, normal_closure, Subgroup,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralProfile {
    pub abelian: bool,
    pub nilpotent: bool,
    pub solvable: bool,
    pub supersolvable: bool,
    /// One entry per prime dividing `|G|`.
    pub p_solvable: BTreeMap<u64, bool>,
    /// `None` for non-solvable groups.
    pub fitting_height: Option<u32>,
    pub fitting_order: u64,
    pub center_order: u64,
    pub derived_order: u64,
    /// Number of proper descents in the derived series before it stabilises.
    pub derived_length: u32,
    /// Orders `|N_{i+1} : N_i|` of the computed chief series, bottom up.
    pub chief_factor_orders: Vec<u64>,
}

impl StructuralProfile {
    /// p-solvability for any prime; primes not dividing `|G|` are trivially fine.
    pub fn is_p_solvable(&self, p: u64) -> bool {
        self.p_solvable.get(&p).copied().unwrap_or(true)
    }
}

/// A chief series `1 = N₀ < N₁ < … < N_r = G` of normal subgroups.
///
/// Each step picks, among the normal closures `⟨N_i, x⟩^G` for class
/// representatives `x ∉ N_i` (in class order), one of smallest order. A
/// minimal normal subgroup of `G/N_i` is the image of such a closure, and a
/// closure of least order cannot properly contain another one, so the chosen
/// step is a chief factor.
pub fn chief_series(g: &PermutationGroup) -> Vec<Subgroup> {
    let gens = g.generator_indices();
    let mut current = generated_subgroup(g, &[]);
    let mut series = vec![current.clone()];
    while current.order() < g.order() {
        let mut best: Option<Subgroup> = None;
        for class in g.classes() {
            let x = class[0];
            if current.contains(x) {
                continue;
            }
            let mut seeds = current.generators().to_vec();
            seeds.push(x);
            let cand = normal_closure(g, &seeds, gens);
            let better = best.as_ref().map_or(true, |b| cand.order() < b.order());
            if better {
                let prime_step = is_prime((cand.order() / current.order()) as u64);
                best = Some(cand);
                if prime_step {
                    break;
                }
            }
        }
        current = best.expect("some class lies outside a proper subgroup");
        series.push(current.clone());
    }
    series
}

fn is_prime(n: u64) -> bool {
    crate::primes::is_prime_u64(n)
}

pub fn chief_factor_orders(series: &[Subgroup]) -> Vec<u64> {
    series.windows(2).map(|w| (w[1].order() / w[0].order()) as u64).collect()
}

/// `O_p(G)`, the largest normal p-subgroup: exactly the elements whose normal
/// closure is a p-group.
pub fn p_core(g: &PermutationGroup, p: u64) -> Subgroup {
    let closures = class_normal_closures(g);
    core_from_closures(g, &closures, |n| is_prime_power_of(n.order(), p as usize))
}

/// `F(G)`, generated by the `O_p(G)` for the primes dividing `|G|`.
pub fn fitting_subgroup(g: &PermutationGroup) -> Subgroup {
    let closures = class_normal_closures(g);
    let mut gens = Vec::new();
    for p in prime_divisors(g.order() as u64) {
        let op = core_from_closures(g, &closures, |n| is_prime_power_of(n.order(), p as usize));
        gens.extend_from_slice(op.generators());
    }
    let f = generated_subgroup(g, &gens);
    debug_assert!(f.is_normal());
    f
}

fn class_normal_closures(g: &PermutationGroup) -> Vec<Subgroup> {
    g.classes()
        .iter()
        .map(|c| normal_closure(g, &[c[0]], g.generator_indices()))
        .collect()
}

fn core_from_closures(g: &PermutationGroup, closures: &[Subgroup], keep: impl Fn(&Subgroup) -> bool) -> Subgroup {
    let reps: Vec<u32> = g
        .classes()
        .iter()
        .zip(closures)
        .filter(|(_, n)| keep(n))
        .flat_map(|(c, _)| c.iter().copied())
        .collect();
    generated_subgroup(g, &reps)
}

#[derive(Clone, Debug)]
pub struct FittingData {
    pub subgroup: Subgroup,
    /// `None` when `G` is not solvable.
    pub height: Option<u32>,
}

impl FittingData {
    pub fn height(&self) -> Result<u32> {
        self.height
            .ok_or_else(|| Error::Undefined("Fitting height requested for a non-solvable group".into()))
    }
}

pub fn is_solvable(g: &PermutationGroup) -> bool {
    derived_series(g).last().map_or(true, Subgroup::is_trivial)
}

pub fn fitting_data(g: &PermutationGroup) -> Result<FittingData> {
    let subgroup = fitting_subgroup(g);
    let height = if is_solvable(g) {
        let mut h = 0;
        let mut cur = g.clone();
        let mut f = subgroup.clone();
        while cur.order() > 1 {
            cur = quotient_group(&cur, &f)?.into_group();
            f = fitting_subgroup(&cur);
            h += 1;
        }
        Some(h)
    } else {
        None
    };
    Ok(FittingData { subgroup, height })
}

pub fn fitting_height(g: &PermutationGroup) -> Result<u32> {
    fitting_data(g)?.height()
}

pub fn structural_predicates(g: &PermutationGroup) -> Result<StructuralProfile> {
    let derived = derived_series(g);
    let solvable = derived.last().map_or(true, Subgroup::is_trivial);
    let nilpotent = lower_central_series(g).last().map_or(true, Subgroup::is_trivial);
    let chief = chief_series(g);
    let factors = chief_factor_orders(&chief);
    let supersolvable = factors.iter().all(|&m| is_prime(m));
    let p_solvable = prime_divisors(g.order() as u64)
        .into_iter()
        .map(|p| (p, factors.iter().all(|&m| is_prime_power_of(m as usize, p as usize) || m % p != 0)))
        .collect();
    let fitting = fitting_data(g)?;
    let profile = StructuralProfile {
        abelian: g.is_abelian(),
        nilpotent,
        solvable,
        supersolvable,
        p_solvable,
        fitting_height: fitting.height,
        fitting_order: fitting.subgroup.order() as u64,
        center_order: center(g).order() as u64,
        derived_order: derived.get(1).map_or(g.order(), Subgroup::order) as u64,
        derived_length: (derived.len() - 1) as u32,
        chief_factor_orders: factors,
    };
    check_profile(&profile, g.order() as u64)?;
    Ok(profile)
}

fn check_profile(p: &StructuralProfile, order: u64) -> Result<()> {
    let chain = (!p.abelian || p.nilpotent) && (!p.nilpotent || p.supersolvable) && (!p.supersolvable || p.solvable);
    let psolv = p.p_solvable.values().all(|&b| b) == p.solvable;
    let product: u64 = p.chief_factor_orders.iter().product();
    let height = match p.fitting_height {
        Some(0) => order == 1,
        Some(1) => order == 1 || p.nilpotent,
        _ => true,
    };
    if chain && psolv && product == order && height {
        Ok(())
    } else {
        Err(Error::Internal(format!("inconsistent structural profile {:?}", p)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{self, from_spec};
    use crate::subgroup::{normal_subgroups, subgroup_is_nilpotent};

    #[test]
    fn a4_profile() {
        let p = structural_predicates(&builtin::alternating(4).unwrap()).unwrap();
        assert!(p.solvable && !p.supersolvable && !p.nilpotent);
        assert_eq!(p.chief_factor_orders, vec![4, 3]);
        assert!(p.is_p_solvable(2) && p.is_p_solvable(3));
    }

    #[test]
    fn s3_profile() {
        let p = structural_predicates(&builtin::symmetric(3).unwrap()).unwrap();
        assert!(p.supersolvable && !p.nilpotent);
        assert_eq!(p.chief_factor_orders, vec![3, 2]);
        assert_eq!(p.fitting_height, Some(2));
        assert_eq!(p.fitting_order, 3);
    }

    #[test]
    fn a5_profile() {
        let p = structural_predicates(&builtin::alternating(5).unwrap()).unwrap();
        assert!(!p.solvable);
        assert_eq!(p.p_solvable.iter().map(|(&p, &b)| (p, b)).collect::<Vec<_>>(), vec![(2, false), (3, false), (5, false)]);
        assert_eq!(p.fitting_height, None);
        assert!(fitting_height(&builtin::alternating(5).unwrap()).is_err());
    }

    #[test]
    fn s4_fitting() {
        let g = builtin::symmetric(4).unwrap();
        let f = fitting_data(&g).unwrap();
        assert_eq!(f.subgroup.order(), 4);
        assert_eq!(f.height, Some(3));
    }

    #[test]
    fn nilpotent_fitting_is_whole() {
        for spec in ["quaternion:8", "dihedral:4", "extraspecial:27:9", "cyclic:6"] {
            let g = from_spec(spec).unwrap();
            let f = fitting_data(&g).unwrap();
            assert_eq!(f.subgroup.order(), g.order());
            assert_eq!(f.height, Some(1));
        }
        assert_eq!(fitting_height(&builtin::cyclic(1).unwrap()).unwrap(), 0);
    }

    #[test]
    fn p_solvability_of_mixed_product() {
        // A5 × C7: 7-solvable (the only chief factor divisible by 7 is C7) but not 2-solvable
        let p = structural_predicates(&from_spec("product:alternating:5,cyclic:7").unwrap()).unwrap();
        assert!(p.is_p_solvable(7) && !p.is_p_solvable(2) && p.is_p_solvable(11));
    }

    #[test]
    fn fitting_oracle_largest_nilpotent_normal() {
        for spec in ["symmetric:4", "dihedral:6", "affine:5", "product:symmetric:3,cyclic:3", "sl2:3", "dicyclic:3"] {
            let g = from_spec(spec).unwrap();
            let largest = normal_subgroups(&g, 200)
                .unwrap()
                .into_iter()
                .filter(|n| subgroup_is_nilpotent(&g, n))
                .max_by_key(Subgroup::order)
                .unwrap();
            assert_eq!(fitting_subgroup(&g), largest, "{}", spec);
        }
    }

    #[test]
    fn chief_series_is_normal_and_minimal() {
        for spec in ["symmetric:4", "sl2:3", "product:alternating:4,cyclic:2", "dihedral:6"] {
            let g = from_spec(spec).unwrap();
            let series = chief_series(&g);
            let normals = normal_subgroups(&g, 200).unwrap();
            for w in series.windows(2) {
                assert!(w[1].is_normal());
                // nothing normal strictly between consecutive terms
                assert!(!normals.iter().any(|n| w[0].is_subset_of(n) && n.is_subset_of(&w[1]) && n.order() != w[0].order() && n.order() != w[1].order()));
            }
        }
    }
}
