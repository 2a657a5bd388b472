//! Isoclinism: stem groups, exhaustive isoclinism tests for small central
//! quotients, degree proportions and the four structure cases for groups
//! with large commuting probability.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::quotient::{quotient_group, Quotient};
use crate::subgroup::{center, derived_subgroup, generated_subgroup, is_prime_power_of, Subgroup};

/// Default cap on `|G/Z(G)|` for [`are_isoclinic`].
pub const DEFAULT_ISOCLINISM_CAP: usize = 24;
const PAIRING_CHECK_CAP: usize = 120;

/// `Z(G) ⊆ G′`
pub fn stem_check(g: &PermutationGroup) -> bool {
    center(g).is_subset_of(&derived_subgroup(g))
}

/// The map `(aZ, bZ) ↦ [a, b]` from `G/Z × G/Z` onto a generating set of `G′`.
#[derive(Clone, Debug)]
pub struct CommutatorPairing {
    pub central_quotient: PermutationGroup,
    pub derived: Subgroup,
    projection: Quotient,
    /// `pairing[a·|Q| + b]` is a `G`-element index.
    pairing: Vec<u32>,
}

impl CommutatorPairing {
    pub fn new(g: &PermutationGroup) -> Result<Self> {
        let z = center(g);
        let derived = derived_subgroup(g);
        let projection = quotient_group(g, &z)?;
        let q = projection.group().order();
        let mut rep = vec![u32::MAX; q];
        for x in g.elements() {
            let c = projection.project(x) as usize;
            if rep[c] == u32::MAX {
                rep[c] = x;
            }
        }
        let mut pairing = vec![0u32; q * q];
        for a in 0..q {
            for b in 0..q {
                pairing[a * q + b] = g.commutator(rep[a], rep[b]);
            }
        }
        let cp = CommutatorPairing {
            central_quotient: projection.group().clone(),
            derived,
            projection,
            pairing,
        };
        if q <= PAIRING_CHECK_CAP {
            cp.check(g, &rep)?;
        }
        Ok(cp)
    }

    pub fn quotient_order(&self) -> usize {
        self.central_quotient.order()
    }

    /// `[a, b]` for quotient elements `a`, `b`.
    pub fn value(&self, a: u32, b: u32) -> u32 {
        self.pairing[a as usize * self.quotient_order() + b as usize]
    }

    pub fn project(&self, x: u32) -> u32 {
        self.projection.project(x)
    }

    fn check(&self, g: &PermutationGroup, rep: &[u32]) -> Result<()> {
        for x in g.elements() {
            let a = self.project(x);
            for (b, &r) in rep.iter().enumerate() {
                if g.commutator(x, r) != self.value(a, b as u32) || g.commutator(r, x) != self.value(b as u32, a) {
                    return Err(Error::Internal("commutator pairing depends on coset representatives".into()));
                }
            }
        }
        let mut values = self.pairing.clone();
        values.sort_unstable();
        values.dedup();
        if generated_subgroup(g, &values) != self.derived {
            return Err(Error::Internal("commutator values do not generate the derived subgroup".into()));
        }
        Ok(())
    }
}

pub fn are_isoclinic(g: &PermutationGroup, h: &PermutationGroup) -> Result<bool> {
    are_isoclinic_with_cap(g, h, DEFAULT_ISOCLINISM_CAP)
}

/// Exhaustive search for compatible isomorphisms `G/Z(G) → H/Z(H)` and `G′ → H′`.
pub fn are_isoclinic_with_cap(g: &PermutationGroup, h: &PermutationGroup, cap: usize) -> Result<bool> {
    let (zg, zh) = (center(g), center(h));
    let (dg, dh) = (derived_subgroup(g), derived_subgroup(h));
    if g.order() / zg.order() != h.order() / zh.order() || dg.order() != dh.order() {
        return Ok(false);
    }
    let q = g.order() / zg.order();
    if q > cap {
        return Err(Error::capacity(format!("isoclinism search with |G/Z| = {}", q), cap));
    }
    if q == 1 {
        return Ok(true);
    }
    let pg = CommutatorPairing::new(g)?;
    let ph = CommutatorPairing::new(h)?;
    let qg = &pg.central_quotient;
    let qh = &ph.central_quotient;
    let gens = small_generating_set(qg);
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&s| qh.elements().filter(|&y| qh.element_order(y) == qg.element_order(s)).collect())
        .collect();
    let mut found = false;
    for_each_tuple(&candidates, &mut |images| {
        if let Some(phi) = extend_homomorphism(qg, qh, &gens, images) {
            if is_bijection(&phi, qh.order()) && commutators_compatible(g, h, &pg, &ph, &phi) {
                found = true;
            }
        }
        found
    });
    Ok(found)
}

/// Greedy generating set, preferring elements of large order.
fn small_generating_set(g: &PermutationGroup) -> Vec<u32> {
    let mut elems: Vec<u32> = g.elements().collect();
    elems.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut gens = Vec::new();
    let mut current = generated_subgroup(g, &gens);
    for x in elems {
        if current.order() == g.order() {
            break;
        }
        if !current.contains(x) {
            gens.push(x);
            current = generated_subgroup(g, &gens);
        }
    }
    gens
}

/// Calls `f` on each tuple in the product of `choices` until it returns true.
fn for_each_tuple(choices: &[Vec<u32>], f: &mut dyn FnMut(&[u32]) -> bool) {
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; choices.len()];
    let mut tuple: Vec<u32> = choices.iter().map(|c| c[0]).collect();
    loop {
        if f(&tuple) {
            return;
        }
        let mut pos = 0;
        loop {
            if pos == choices.len() {
                return;
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                tuple[pos] = choices[pos][idx[pos]];
                break;
            }
            idx[pos] = 0;
            tuple[pos] = choices[pos][0];
            pos += 1;
        }
    }
}

/// Extends `gens[i] ↦ images[i]` along the Cayley graph; `None` if inconsistent.
fn extend_homomorphism(
    src: &PermutationGroup,
    dst: &PermutationGroup,
    gens: &[u32],
    images: &[u32],
) -> Option<Vec<u32>> {
    let mut phi = vec![u32::MAX; src.order()];
    phi[src.identity() as usize] = dst.identity();
    let mut queue = vec![src.identity()];
    while let Some(x) = queue.pop() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = src.mul(x, s);
            let image = dst.mul(phi[x as usize], t);
            match phi[y as usize] {
                u32::MAX => {
                    phi[y as usize] = image;
                    queue.push(y);
                }
                existing if existing != image => return None,
                _ => {}
            }
        }
    }
    Some(phi)
}

fn is_bijection(map: &[u32], target_size: usize) -> bool {
    let mut seen = vec![false; target_size];
    map.iter().all(|&y| y != u32::MAX && !std::mem::replace(&mut seen[y as usize], true))
}

/// Whether `[a,b] ↦ [φa, φb]` is well defined and extends to an isomorphism `G′ → H′`.
fn commutators_compatible(
    g: &PermutationGroup,
    h: &PermutationGroup,
    pg: &CommutatorPairing,
    ph: &CommutatorPairing,
    phi: &[u32],
) -> bool {
    let q = pg.quotient_order() as u32;
    let mut psi: HashMap<u32, u32> = HashMap::new();
    for a in 0..q {
        for b in 0..q {
            let c = pg.value(a, b);
            let d = ph.value(phi[a as usize], phi[b as usize]);
            if *psi.entry(c).or_insert(d) != d {
                return false;
            }
        }
    }
    let seeds: Vec<(u32, u32)> = psi.iter().map(|(&c, &d)| (c, d)).collect();
    let mut ext: HashMap<u32, u32> = HashMap::from([(g.identity(), h.identity())]);
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        let fx = ext[&x];
        for &(s, t) in &seeds {
            let y = g.mul(x, s);
            let image = h.mul(fx, t);
            match ext.get(&y) {
                None => {
                    ext.insert(y, image);
                    queue.push(y);
                }
                Some(&existing) if existing != image => return false,
                _ => {}
            }
        }
    }
    let mut targets: Vec<u32> = ext.values().copied().collect();
    targets.sort_unstable();
    targets.dedup();
    ext.len() == pg.derived.order() && targets.len() == ext.len()
}

/// Outcome of comparing degree multiplicities of two isoclinic groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProportionCheck {
    pub holds: bool,
    /// Degrees where `m_d·|H| ≠ n_d·|G|`.
    pub mismatched_degrees: Vec<u64>,
    /// `T(G)·|H| = T(H)·|G|`
    pub degree_sum_ratio_equal: bool,
}

pub fn multiplicity_proportion_check(
    g: &PermutationGroup,
    h: &PermutationGroup,
    degrees_g: &[u64],
    degrees_h: &[u64],
) -> ProportionCheck {
    proportion_from_orders(g.order() as u64, h.order() as u64, degrees_g, degrees_h)
}

pub fn proportion_from_orders(order_g: u64, order_h: u64, degrees_g: &[u64], degrees_h: &[u64]) -> ProportionCheck {
    let count = |ds: &[u64]| {
        let mut m: BTreeMap<u64, u64> = BTreeMap::new();
        for &d in ds {
            *m.entry(d).or_default() += 1;
        }
        m
    };
    let (mg, mh) = (count(degrees_g), count(degrees_h));
    let mut keys: Vec<u64> = mg.keys().chain(mh.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    let mismatched_degrees: Vec<u64> = keys
        .into_iter()
        .filter(|d| {
            let m = mg.get(d).copied().unwrap_or(0) as u128;
            let n = mh.get(d).copied().unwrap_or(0) as u128;
            m == 0 || n == 0 || m * order_h as u128 != n * order_g as u128
        })
        .collect();
    let tg: u64 = degrees_g.iter().sum();
    let th: u64 = degrees_h.iter().sum();
    ProportionCheck {
        holds: mismatched_degrees.is_empty(),
        mismatched_degrees,
        degree_sum_ratio_equal: tg as u128 * order_h as u128 == th as u128 * order_g as u128,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RusinCaseId {
    TwoGroup,
    ThreeGroup,
    S3Type,
    D10Type,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RusinCase {
    pub case_id: RusinCaseId,
    pub central_quotient_order: u64,
    pub derived_order: u64,
}

pub fn rusin_case_classify(g: &PermutationGroup) -> RusinCase {
    let q = (g.order() / center(g).order()) as u64;
    let d = derived_subgroup(g).order() as u64;
    rusin_case_from_orders(q, d)
}

/// Classification from `|G/Z(G)|` and `|G′|`. A central quotient of order 6
/// or 10 is never cyclic, so it is `S3` or `D10`.
pub fn rusin_case_from_orders(central_quotient_order: u64, derived_order: u64) -> RusinCase {
    let (q, d) = (central_quotient_order as usize, derived_order as usize);
    let case_id = if is_prime_power_of(q, 2) && is_prime_power_of(d, 2) {
        RusinCaseId::TwoGroup
    } else if is_prime_power_of(q, 3) && is_prime_power_of(d, 3) {
        RusinCaseId::ThreeGroup
    } else if q == 6 && d == 3 {
        RusinCaseId::S3Type
    } else if q == 10 && d == 5 {
        RusinCaseId::D10Type
    } else {
        RusinCaseId::None
    };
    RusinCase { case_id, central_quotient_order, derived_order }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{self, from_spec};
    use crate::chartable::character_degrees;

    fn g(spec: &str) -> PermutationGroup {
        from_spec(spec).unwrap()
    }

    #[test]
    fn stem_groups() {
        assert!(stem_check(&g("symmetric:3")));
        assert!(stem_check(&g("quaternion:8")));
        assert!(!stem_check(&g("product:cyclic:2,symmetric:3")));
        assert!(!stem_check(&g("cyclic:4")));
        assert!(stem_check(&g("cyclic:1")));
    }

    #[test]
    fn isoclinism_examples() {
        assert!(are_isoclinic(&g("dihedral:4"), &g("quaternion:8")).unwrap());
        assert!(are_isoclinic(&g("symmetric:3"), &g("product:symmetric:3,cyclic:2")).unwrap());
        assert!(!are_isoclinic(&g("symmetric:3"), &g("dihedral:5")).unwrap());
        assert!(are_isoclinic(&g("cyclic:6"), &g("product:cyclic:2,cyclic:2")).unwrap());
        assert!(!are_isoclinic(&g("dihedral:4"), &g("symmetric:3")).unwrap());
        assert!(are_isoclinic(&g("alternating:4"), &g("product:alternating:4,cyclic:3")).unwrap());
        assert!(are_isoclinic(&g("extraspecial:27:3"), &g("extraspecial:27:9")).unwrap());
        assert!(are_isoclinic(&g("dihedral:8"), &g("dicyclic:4")).unwrap());
        assert!(!are_isoclinic(&g("dihedral:4"), &g("dihedral:8")).unwrap());
    }

    #[test]
    fn isoclinism_cap() {
        let a5 = g("alternating:5");
        assert!(matches!(are_isoclinic(&a5, &a5), Err(Error::Capacity { cap: 24, .. })));
        assert!(are_isoclinic_with_cap(&a5, &g("product:alternating:5,cyclic:2"), 60).unwrap());
    }

    #[test]
    fn symmetric_and_reflexive_on_small_groups() {
        let specs = ["symmetric:3", "dihedral:4", "quaternion:8", "dihedral:6", "dicyclic:3", "alternating:4"];
        for a in specs {
            for b in specs {
                let ab = are_isoclinic(&g(a), &g(b)).unwrap();
                assert_eq!(ab, are_isoclinic(&g(b), &g(a)).unwrap());
                if a == b {
                    assert!(ab);
                }
            }
        }
        // D12 and Dic12 are isoclinic to S3
        assert!(are_isoclinic(&g("dihedral:6"), &g("symmetric:3")).unwrap());
        assert!(are_isoclinic(&g("dicyclic:3"), &g("symmetric:3")).unwrap());
    }

    #[test]
    fn proportions() {
        let s3 = g("symmetric:3");
        let s3c2 = g("product:symmetric:3,cyclic:2");
        let c = multiplicity_proportion_check(&s3, &s3c2, &[1, 1, 2], &character_degrees(&s3c2).unwrap());
        assert!(c.holds && c.degree_sum_ratio_equal);
        let q8 = builtin::quaternion8();
        let d8 = g("dihedral:4");
        let c = multiplicity_proportion_check(&q8, &d8, &character_degrees(&q8).unwrap(), &character_degrees(&d8).unwrap());
        assert!(c.holds);
        let bad = multiplicity_proportion_check(&s3, &d8, &[1, 1, 2], &[1, 1, 1, 1, 2]);
        assert!(!bad.holds);
        assert_eq!(bad.mismatched_degrees, vec![1, 2]);
    }

    #[test]
    fn rusin_cases() {
        assert_eq!(rusin_case_classify(&g("dihedral:4")).case_id, RusinCaseId::TwoGroup);
        assert_eq!(rusin_case_classify(&g("extraspecial:27:3")).case_id, RusinCaseId::ThreeGroup);
        assert_eq!(rusin_case_classify(&g("symmetric:3")).case_id, RusinCaseId::S3Type);
        assert_eq!(rusin_case_classify(&g("dihedral:5")).case_id, RusinCaseId::D10Type);
        assert_eq!(rusin_case_classify(&g("alternating:4")).case_id, RusinCaseId::None);
        let es = g("extraspecial:27:3");
        assert_eq!(es.class_count(), 11);
        assert_eq!(serde_json::to_string(&RusinCaseId::S3Type).unwrap(), "\"S3_TYPE\"");
    }

    #[test]
    fn pairing_is_well_defined() {
        for spec in ["quaternion:8", "sl2:3", "product:symmetric:3,cyclic:4", "extraspecial:27:9"] {
            let grp = g(spec);
            let p = CommutatorPairing::new(&grp).unwrap();
            assert_eq!(p.quotient_order() * center(&grp).order(), grp.order());
        }
    }
}
