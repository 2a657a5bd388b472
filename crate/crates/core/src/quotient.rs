//! Quotient groups as permutation groups on cosets.

use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::Perm;
use crate::subgroup::Subgroup;

/// `G/N` acting on the right cosets of `N`, with the natural projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    group: PermutationGroup,
    coset_of: Vec<u32>,
    coset_image: Vec<u32>,
}

impl Quotient {
    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn into_group(self) -> PermutationGroup {
        self.group
    }

    /// Image of a `G`-element in `G/N`.
    pub fn project(&self, x: u32) -> u32 {
        self.coset_image[self.coset_of[x as usize] as usize]
    }

    /// All `G`-elements mapping into the given set of `G/N`-elements.
    pub fn preimage(&self, image: &[u32]) -> Vec<u32> {
        let mut wanted = vec![false; self.group.order()];
        for &y in image {
            wanted[y as usize] = true;
        }
        (0..self.coset_of.len() as u32).filter(|&x| wanted[self.project(x) as usize]).collect()
    }
}

/// Builds `G/N`. For trivial `N` the group itself is returned (the coset
/// action would be the regular representation of the same group).
pub fn quotient_group(g: &PermutationGroup, n: &Subgroup) -> Result<Quotient> {
    if !n.is_normal() {
        return Err(Error::Domain("quotient by a subgroup that is not normal".into()));
    }
    let size = g.order();
    let name = format!("{}/N{}", g.name(), n.order());
    if n.is_trivial() {
        return Ok(Quotient {
            group: g.clone().with_name(name),
            coset_of: (0..size as u32).collect(),
            coset_image: (0..size as u32).collect(),
        });
    }

    let mut coset_of = vec![u32::MAX; size];
    let mut reps = Vec::new();
    for x in 0..size as u32 {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &m in n.elements() {
            coset_of[g.mul(m, x) as usize] = c;
        }
    }
    let index = reps.len();
    if index > u16::MAX as usize {
        return Err(Error::capacity("quotient degree", u16::MAX as usize));
    }
    let action = |x: u32| -> Perm {
        let images = reps.iter().map(|&r| coset_of[g.mul(r, x) as usize] as u16).collect();
        Perm::from_images(images).expect("coset action is a permutation")
    };
    let gens = g.generator_indices().iter().map(|&s| action(s)).collect();
    let group = PermutationGroup::new(name, index, gens)?;
    if group.order() != index {
        return Err(Error::Internal(format!(
            "coset action of order {} on {} cosets",
            group.order(),
            index
        )));
    }
    let coset_image = reps
        .iter()
        .map(|&r| group.index_of(action(r).images()).expect("rep image lies in the quotient"))
        .collect();
    Ok(Quotient { group, coset_of, coset_image })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::subgroup::{center, derived_subgroup, generated_subgroup, normal_subgroups, trivial_subgroup, whole_group};

    #[test]
    fn s4_mod_v4_is_s3() {
        let g = builtin::symmetric(4).unwrap();
        let v4 = normal_subgroups(&g, 200).unwrap().into_iter().find(|n| n.order() == 4).unwrap();
        let q = quotient_group(&g, &v4).unwrap();
        assert_eq!(q.group().order(), 6);
        assert_eq!(q.group().class_count(), 3);
    }

    #[test]
    fn g_mod_g_trivial() {
        let g = builtin::alternating(4).unwrap();
        let q = quotient_group(&g, &whole_group(&g)).unwrap();
        assert_eq!(q.group().order(), 1);
    }

    #[test]
    fn sl25_mod_center_is_a5() {
        let g = builtin::sl2(5).unwrap();
        let z = center(&g);
        assert_eq!(z.order(), 2);
        let q = quotient_group(&g, &z).unwrap();
        assert_eq!(q.group().order(), 60);
        assert_eq!(q.group().class_count(), 5);
    }

    #[test]
    fn projection_is_homomorphism() {
        let g = builtin::dihedral(6).unwrap();
        let d = derived_subgroup(&g);
        let q = quotient_group(&g, &d).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(q.project(g.mul(a, b)), q.group().mul(q.project(a), q.project(b)));
            }
        }
        assert!(q.group().is_abelian());
        assert_eq!(q.group().class_count(), q.group().order());
        assert_eq!(q.preimage(&[0]).len(), d.order());
    }

    #[test]
    fn trivial_kernel() {
        let g = builtin::symmetric(3).unwrap();
        let q = quotient_group(&g, &trivial_subgroup(&g)).unwrap();
        assert_eq!(q.group().order(), 6);
        assert_eq!(q.group().class_count(), 3);
    }

    #[test]
    fn non_normal_rejected() {
        let g = builtin::symmetric(3).unwrap();
        let t = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        let h = generated_subgroup(&g, &[t]);
        assert!(matches!(quotient_group(&g, &h), Err(Error::Domain(_))));
    }
}
