//! Permutations of `0..n` stored as image arrays.
//!
//! Products compose left to right: `(a * b)(i) = b(a(i))`, i.e. apply `a`
//! first. With this convention conjugation is `x^g = g⁻¹ x g` and the
//! commutator is `[a, b] = a⁻¹ b⁻¹ a b`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u16]>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u16).collect())
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::Input(format!(
                    "image array {:?} is not a bijection of 0..{}",
                    images, n
                )));
            }
            seen[x] = true;
        }
        Ok(Perm(images.into_boxed_slice()))
    }

    /// Builds a permutation from 1-based images as used in group files.
    pub fn from_one_based(images: &[u32]) -> Result<Self> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(Error::capacity("permutation degree", u16::MAX as usize));
        }
        let mut zero = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x as usize > n {
                return Err(Error::Input(format!(
                    "image array {:?} is not a bijection of 1..{}",
                    images, n
                )));
            }
            zero.push((x - 1) as u16);
        }
        Perm::from_images(zero).map_err(|_| {
            Error::Input(format!(
                "image array {:?} is not a bijection of 1..{}",
                images, n
            ))
        })
    }

    /// Builds a permutation of `0..degree` from disjoint cycles of 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a >= degree || b >= degree || touched[a] {
                    return Err(Error::Input(format!("bad cycle {:?} for degree {}", cycle, degree)));
                }
                touched[a] = true;
                images[a] = b as u16;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<u32> {
        self.0.iter().map(|&x| x as u32 + 1).collect()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Perm(inv.into_boxed_slice())
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inverse().then(&other.inverse()).then(self).then(other)
    }

    /// Disjoint union action: `self` on the first block, `other` shifted after it.
    pub fn direct_sum(&self, other: &Perm) -> Perm {
        let shift = self.degree() as u16;
        Perm(
            self.0
                .iter()
                .copied()
                .chain(other.0.iter().map(|&x| x + shift))
                .collect(),
        )
    }

    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut order = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }
}

impl From<Perm> for Box<[u16]> {
    fn from(p: Perm) -> Self {
        p.0
    }
}

impl fmt::Debug for Perm {
    /// Cycle notation with 1-based points.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for start in 0..n {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.0[x] as usize;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_left_to_right() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).apply(0), 2);
        assert_eq!(a.then(&a.inverse()), Perm::identity(3));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_one_based(&[1, 1, 2]).is_err());
        assert!(Perm::from_one_based(&[0, 1]).is_err());
        assert!(Perm::from_one_based(&[2, 3, 1]).is_ok());
    }

    #[test]
    fn order_and_debug() {
        let p = Perm::from_cycles(5, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(format!("{:?}", p), "(1 2)(3 4 5)");
        assert_eq!(format!("{:?}", Perm::identity(2)), "()");
    }
}
