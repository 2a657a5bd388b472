//! Subgroups as sets of element indices of a parent group, plus the closure
//! machinery (generated subgroups, normal closures, commutator subgroups,
//! centre, derived and lower central series, normal subgroup enumeration).

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::PermutationGroup;

/// Largest order for which all normal subgroups are enumerated by default.
pub const DEFAULT_NORMAL_SUBGROUP_CAP: usize = 200;

/// A subgroup of a parent `PermutationGroup`, stored as sorted element indices.
#[derive(Clone, Debug)]
pub struct Subgroup {
    elements: Vec<u32>,
    member: Vec<bool>,
    gens: Vec<u32>,
    normal: bool,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.member[x as usize]
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, g: &PermutationGroup, other: &Subgroup) -> Subgroup {
        let common: Vec<u32> = self.elements.iter().copied().filter(|&x| other.contains(x)).collect();
        let mut c = Closure::new(g.order());
        for x in common {
            if !c.member[x as usize] {
                c.extend(g, x);
            }
        }
        c.finish(g)
    }
}

/// Incrementally growing subgroup.
struct Closure {
    member: Vec<bool>,
    list: Vec<u32>,
    gens: Vec<u32>,
}

impl Closure {
    fn new(n: usize) -> Self {
        let mut member = vec![false; n];
        member[0] = true;
        Closure { member, list: vec![0], gens: Vec::new() }
    }

    /// Adds `y` as a generator and closes. The old element set is already
    /// closed under the old generators, so only cosets reached through `y`
    /// need exploring.
    fn extend(&mut self, g: &PermutationGroup, y: u32) {
        if self.member[y as usize] {
            return;
        }
        self.gens.push(y);
        let old = self.list.len();
        let mut head = self.list.len();
        for i in 0..old {
            let z = g.mul(self.list[i], y);
            if !self.member[z as usize] {
                self.member[z as usize] = true;
                self.list.push(z);
            }
        }
        while head < self.list.len() {
            let x = self.list[head];
            head += 1;
            for k in 0..self.gens.len() {
                let z = g.mul(x, self.gens[k]);
                if !self.member[z as usize] {
                    self.member[z as usize] = true;
                    self.list.push(z);
                }
            }
        }
    }

    fn finish(mut self, g: &PermutationGroup) -> Subgroup {
        self.list.sort_unstable();
        let normal = self
            .gens
            .iter()
            .all(|&h| g.generator_indices().iter().all(|&c| self.member[g.conjugate(h, c) as usize]));
        Subgroup { elements: self.list, member: self.member, gens: self.gens, normal }
    }
}

pub fn trivial_subgroup(g: &PermutationGroup) -> Subgroup {
    Closure::new(g.order()).finish(g)
}

pub fn whole_group(g: &PermutationGroup) -> Subgroup {
    generated_subgroup(g, g.generator_indices())
}

/// `⟨gens⟩`
pub fn generated_subgroup(g: &PermutationGroup, gens: &[u32]) -> Subgroup {
    let mut c = Closure::new(g.order());
    for &x in gens {
        c.extend(g, x);
    }
    c.finish(g)
}

/// Smallest subgroup containing `seeds` and normalised by `conjugators`.
pub fn normal_closure(g: &PermutationGroup, seeds: &[u32], conjugators: &[u32]) -> Subgroup {
    let mut c = Closure::new(g.order());
    let mut pending: Vec<u32> = Vec::new();
    for &s in seeds {
        if !c.member[s as usize] {
            c.extend(g, s);
            pending.push(s);
        }
    }
    while let Some(h) = pending.pop() {
        for &x in conjugators {
            let y = g.conjugate(h, x);
            if !c.member[y as usize] {
                c.extend(g, y);
                pending.push(y);
            }
        }
    }
    c.finish(g)
}

/// Product `AB` of two normal subgroups.
pub fn normal_product(g: &PermutationGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut c = Closure::new(g.order());
    for &x in a.gens.iter().chain(&b.gens) {
        c.extend(g, x);
    }
    c.finish(g)
}

/// `[A, B]` for subgroups normalised by `conjugators` (normally the generators of G).
pub fn commutator_subgroup(g: &PermutationGroup, a: &Subgroup, b: &Subgroup, conjugators: &[u32]) -> Subgroup {
    let mut seeds = Vec::new();
    for &x in &a.gens {
        for &y in &b.gens {
            seeds.push(g.commutator(x, y));
        }
    }
    normal_closure(g, &seeds, conjugators)
}

/// `G′`
pub fn derived_subgroup(g: &PermutationGroup) -> Subgroup {
    let all = whole_group(g);
    commutator_subgroup(g, &all, &all, g.generator_indices())
}

/// `Z(G)`: elements commuting with every generator.
pub fn center(g: &PermutationGroup) -> Subgroup {
    let gens = g.generator_indices();
    let central: Vec<u32> = g.elements().filter(|&x| gens.iter().all(|&s| g.commute(x, s))).collect();
    generated_subgroup(g, &central)
}

/// `C_G(H)`
pub fn centralizer(g: &PermutationGroup, h: &Subgroup) -> Subgroup {
    let cent: Vec<u32> = g
        .elements()
        .filter(|&x| h.gens.iter().all(|&s| g.commute(x, s)))
        .collect();
    generated_subgroup(g, &cent)
}

/// `G = G⁽⁰⁾ ≥ G⁽¹⁾ ≥ …` down to the first repeated term (inclusive).
pub fn derived_series(g: &PermutationGroup) -> Vec<Subgroup> {
    let mut series = vec![whole_group(g)];
    loop {
        let last = series.last().unwrap();
        let next = commutator_subgroup(g, last, last, &last.gens.clone());
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

/// `G = γ₁ ≥ γ₂ = [G, G] ≥ γ₃ = [γ₂, G] ≥ …` down to the first repeated term.
pub fn lower_central_series(g: &PermutationGroup) -> Vec<Subgroup> {
    let all = whole_group(g);
    let mut series = vec![all.clone()];
    loop {
        let last = series.last().unwrap();
        let next = commutator_subgroup(g, last, &all, g.generator_indices());
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

/// Lower central series of a subgroup `h`, computed inside the parent.
pub fn subgroup_is_nilpotent(g: &PermutationGroup, h: &Subgroup) -> bool {
    let mut cur = h.clone();
    loop {
        if cur.is_trivial() {
            return true;
        }
        let next = commutator_subgroup(g, &cur, h, &h.gens);
        if next.order() == cur.order() {
            return false;
        }
        cur = next;
    }
}

/// All normal subgroups of `g`, sorted by order then elements.
///
/// Every normal subgroup is a product of normal closures of single classes,
/// so the search joins those closures until no new subgroup appears.
pub fn normal_subgroups(g: &PermutationGroup, cap: usize) -> Result<Vec<Subgroup>> {
    if g.order() > cap {
        return Err(Error::capacity("normal subgroup enumeration (group order)", cap));
    }
    let gens = g.generator_indices();
    let mut atoms: Vec<Subgroup> = Vec::new();
    for class in g.classes().iter().skip(1) {
        let n = normal_closure(g, &[class[0]], gens);
        if !atoms.contains(&n) {
            atoms.push(n);
        }
    }
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let triv = trivial_subgroup(g);
    seen.insert(triv.elements.clone());
    let mut all = vec![triv.clone()];
    let mut frontier = vec![triv];
    while let Some(a) = frontier.pop() {
        for b in &atoms {
            if b.is_subset_of(&a) {
                continue;
            }
            let c = normal_product(g, &a, b);
            if seen.insert(c.elements.clone()) {
                all.push(c.clone());
                frontier.push(c);
            }
        }
    }
    all.sort_by(|x, y| x.order().cmp(&y.order()).then_with(|| x.elements.cmp(&y.elements)));
    Ok(all)
}

pub fn is_prime_power_of(n: usize, p: usize) -> bool {
    let mut n = n;
    while n > 1 && n % p == 0 {
        n /= p;
    }
    n == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn s3_derived_and_center() {
        let g = builtin::symmetric(3).unwrap();
        let d = derived_subgroup(&g);
        assert_eq!(d.order(), 3);
        assert!(d.is_normal());
        assert_eq!(center(&g).order(), 1);
        assert_eq!(derived_series(&g).iter().map(Subgroup::order).collect::<Vec<_>>(), vec![6, 3, 1]);
    }

    #[test]
    fn q8_derived_equals_center() {
        let g = builtin::quaternion8();
        let d = derived_subgroup(&g);
        let z = center(&g);
        assert_eq!(d.order(), 2);
        assert_eq!(d, z);
    }

    #[test]
    fn abelian_derived_trivial() {
        let g = builtin::cyclic(12).unwrap();
        assert!(derived_subgroup(&g).is_trivial());
        assert_eq!(center(&g).order(), 12);
    }

    #[test]
    fn commutator_oracle_matches() {
        // G′ as the subgroup generated by every commutator.
        for g in [builtin::symmetric(4).unwrap(), builtin::alternating(5).unwrap(), builtin::dihedral(6).unwrap()] {
            let comms: Vec<u32> = g.elements().flat_map(|a| g.elements().map(move |b| (a, b))).map(|(a, b)| g.commutator(a, b)).collect();
            assert_eq!(generated_subgroup(&g, &comms), derived_subgroup(&g), "{}", g.name());
        }
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let g = builtin::symmetric(4).unwrap();
        let orders: Vec<usize> = normal_subgroups(&g, 200).unwrap().iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        assert!(normal_subgroups(&g, 10).is_err());
    }

    #[test]
    fn normal_subgroups_oracle() {
        // Brute force: unions of classes closed under multiplication.
        for g in [builtin::dihedral(4).unwrap(), builtin::quaternion8(), builtin::symmetric(3).unwrap(), builtin::cyclic(6).unwrap()] {
            let k = g.class_count();
            let mut brute: Vec<Vec<u32>> = Vec::new();
            for mask in 0u32..(1 << k) {
                if mask & 1 == 0 {
                    continue;
                }
                let mut set: Vec<u32> = (0..k).filter(|c| mask >> c & 1 == 1).flat_map(|c| g.classes()[c].clone()).collect();
                set.sort_unstable();
                let closed = set.iter().all(|&a| set.iter().all(|&b| set.binary_search(&g.mul(a, b)).is_ok()));
                if closed {
                    brute.push(set);
                }
            }
            brute.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
            let ours: Vec<Vec<u32>> = normal_subgroups(&g, 200).unwrap().into_iter().map(|s| s.elements).collect();
            assert_eq!(ours, brute, "{}", g.name());
        }
    }
}
