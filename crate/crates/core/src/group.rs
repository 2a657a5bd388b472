//! Fully enumerated permutation groups.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Default cap on the number of enumerated elements.
pub const DEFAULT_ELEMENT_CAP: usize = 200_000;

/// Groups up to this order get a full multiplication table on first use.
const CAYLEY_TABLE_MAX: usize = 1024;

type Buf = SmallVec<[u16; 64]>;

/// A finite group given by permutation generators, with every element listed
/// in lexicographic order of image arrays and the conjugacy classes computed.
///
/// Elements are addressed by their `u32` position in that order; index 0 is
/// always the identity.
#[derive(Clone)]
pub struct PermutationGroup {
    name: String,
    degree: usize,
    generators: Vec<Perm>,
    gen_idx: Vec<u32>,
    flat: Vec<u16>,
    index: HashMap<Box<[u16]>, u32>,
    inverse: Vec<u32>,
    classes: Vec<Vec<u32>>,
    class_of: Vec<u32>,
    table: OnceLock<Option<Vec<u32>>>,
}

impl fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermutationGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("classes", &self.classes.len())
            .finish()
    }
}

/// Builds a group from 1-based image arrays with the default element cap.
pub fn group_from_generators(degree: usize, generators: &[Vec<u32>]) -> Result<PermutationGroup> {
    let mut perms = Vec::with_capacity(generators.len());
    for g in generators {
        if g.len() != degree {
            return Err(Error::Input(format!(
                "image array {:?} has length {} but the degree is {}",
                g,
                g.len(),
                degree
            )));
        }
        perms.push(Perm::from_one_based(g)?);
    }
    PermutationGroup::new("G", degree, perms)
}

impl PermutationGroup {
    pub fn new(name: impl Into<String>, degree: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::with_cap(name, degree, generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn with_cap(
        name: impl Into<String>,
        degree: usize,
        generators: Vec<Perm>,
        cap: usize,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Input("degree must be positive".into()));
        }
        if degree > u16::MAX as usize {
            return Err(Error::capacity("permutation degree", u16::MAX as usize));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::Input(format!(
                    "generator {:?} has degree {} but the group degree is {}",
                    g,
                    g.degree(),
                    degree
                )));
            }
        }

        // Closure by right multiplication with the generators.
        let id = Perm::identity(degree);
        let mut seen: HashMap<Box<[u16]>, ()> = HashMap::new();
        let mut found: Vec<Box<[u16]>> = vec![id.clone().into()];
        seen.insert(id.into(), ());
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let next: Box<[u16]> = found[i].iter().map(|&x| g.images()[x as usize]).collect();
                if !seen.contains_key(&next) {
                    if found.len() >= cap {
                        return Err(Error::capacity("group order (element enumeration)", cap));
                    }
                    seen.insert(next.clone(), ());
                    found.push(next);
                    queue.push_back(found.len() - 1);
                }
            }
        }
        drop(seen);
        found.sort_unstable();

        let n = found.len();
        let mut flat = Vec::with_capacity(n * degree);
        let mut index = HashMap::with_capacity(n);
        for (i, e) in found.into_iter().enumerate() {
            flat.extend_from_slice(&e);
            index.insert(e, i as u32);
        }

        let mut group = PermutationGroup {
            name: name.into(),
            degree,
            gen_idx: Vec::new(),
            generators,
            flat,
            index,
            inverse: Vec::new(),
            classes: Vec::new(),
            class_of: Vec::new(),
            table: OnceLock::new(),
        };
        group.gen_idx = group
            .generators
            .iter()
            .map(|g| group.index_of(g.images()).expect("generator enumerated"))
            .collect();
        group.inverse = (0..n as u32)
            .map(|i| {
                let inv = group.perm(i).inverse();
                group.index_of(inv.images()).expect("closed under inverses")
            })
            .collect();
        group.compute_classes();
        Ok(group)
    }

    /// Enumerates a subgroup of `parent`, given by parent element indices, as a
    /// group in its own right (same degree).
    pub fn from_elements_of(
        parent: &PermutationGroup,
        name: impl Into<String>,
        generators: &[u32],
    ) -> Result<Self> {
        let gens = generators.iter().map(|&g| parent.perm(g)).collect();
        PermutationGroup::new(name, parent.degree, gens)
    }

    /// Direct product acting on the disjoint union of the two point sets.
    pub fn direct_product(a: &PermutationGroup, b: &PermutationGroup) -> Result<Self> {
        let ida = Perm::identity(a.degree);
        let idb = Perm::identity(b.degree);
        let mut gens: Vec<Perm> = a.generators.iter().map(|g| g.direct_sum(&idb)).collect();
        gens.extend(b.generators.iter().map(|g| ida.direct_sum(g)));
        PermutationGroup::new(format!("{}x{}", a.name, b.name), a.degree + b.degree, gens)
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let c = classes.len() as u32;
            let mut members = vec![start as u32];
            class_of[start] = c;
            let mut head = 0;
            while head < members.len() {
                let x = members[head];
                head += 1;
                for gi in 0..self.gen_idx.len() {
                    let y = self.conjugate(x, self.gen_idx[gi]);
                    if class_of[y as usize] == u32::MAX {
                        class_of[y as usize] = c;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.flat.len() / self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.gen_idx
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn element(&self, i: u32) -> &[u16] {
        let i = i as usize;
        &self.flat[i * self.degree..(i + 1) * self.degree]
    }

    pub fn perm(&self, i: u32) -> Perm {
        Perm::from_images(self.element(i).to_vec()).expect("stored elements are bijections")
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order() as u32
    }

    pub fn index_of(&self, images: &[u16]) -> Option<u32> {
        self.index.get(images).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.degree && self.index.contains_key(p.images())
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let ea = self.element(a);
        let eb = self.element(b);
        let buf: Buf = ea.iter().map(|&x| eb[x as usize]).collect();
        self.index[&buf[..]]
    }

    fn cayley(&self) -> Option<&Vec<u32>> {
        self.table
            .get_or_init(|| {
                let n = self.order();
                if n > CAYLEY_TABLE_MAX {
                    return None;
                }
                let mut t = Vec::with_capacity(n * n);
                for a in 0..n as u32 {
                    for b in 0..n as u32 {
                        t.push(self.mul_slow(a, b));
                    }
                }
                Some(t)
            })
            .as_ref()
    }

    /// Product `a * b` (apply `a` first).
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match self.cayley() {
            Some(t) => t[a as usize * self.order() + b as usize],
            None => self.mul_slow(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    /// `g⁻¹ x g`
    pub fn conjugate(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `a⁻¹ b⁻¹ a b`
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn commute(&self, a: u32, b: u32) -> bool {
        let ea = self.element(a);
        let eb = self.element(b);
        ea.iter()
            .zip(0..)
            .all(|(&x, i)| eb[x as usize] == ea[eb[i as usize] as usize])
    }

    pub fn element_order(&self, a: u32) -> u64 {
        self.perm(a).order()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.classes
            .iter()
            .map(|c| self.element_order(c[0]))
            .fold(1, num_integer::lcm)
    }

    /// Conjugacy classes, ordered by smallest member; each class is sorted and
    /// its first element is the chosen representative. Class 0 is `{1}`.
    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn class_of(&self, a: u32) -> usize {
        self.class_of[a as usize] as usize
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.gen_idx;
        g.iter().all(|&a| g.iter().all(|&b| self.commute(a, b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[&[usize]]) -> Perm {
        Perm::from_cycles(n, c).unwrap()
    }

    #[test]
    fn symmetric_three() {
        let g = PermutationGroup::new("S3", 3, vec![cyc(3, &[&[0, 1, 2]]), cyc(3, &[&[0, 1]])]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.class_count(), 3);
        assert_eq!(g.class_sizes(), vec![1, 3, 2]);
        assert!(g.element(0).iter().enumerate().all(|(i, &x)| i == x as usize));
        assert!(!g.is_abelian());
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn trivial_group() {
        let g = group_from_generators(1, &[]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.class_count(), 1);
    }

    #[test]
    fn a5_from_one_based() {
        let g = group_from_generators(5, &[vec![2, 3, 4, 5, 1], vec![1, 2, 4, 5, 3]]).unwrap();
        assert_eq!(g.order(), 60);
        assert_eq!(g.class_count(), 5);
    }

    #[test]
    fn errors() {
        assert!(matches!(group_from_generators(3, &[vec![1, 1, 2]]), Err(Error::Input(_))));
        assert!(matches!(group_from_generators(3, &[vec![1, 2]]), Err(Error::Input(_))));
        let s5 = vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[0, 1]])];
        match PermutationGroup::with_cap("S5", 5, s5, 100) {
            Err(Error::Capacity { cap, .. }) => assert_eq!(cap, 100),
            other => panic!("expected capacity error, got {:?}", other),
        }
    }

    #[test]
    fn multiplication_agrees_with_perm_composition() {
        let g = PermutationGroup::new("S4", 4, vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[0, 1]])]).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                let p = g.perm(a).then(&g.perm(b));
                assert_eq!(g.mul(a, b), g.index_of(p.images()).unwrap());
                assert_eq!(g.mul_slow(a, b), g.mul(a, b));
            }
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }
}
