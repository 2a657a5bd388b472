//! Irreducible character degrees and the character table modulo a prime,
//! via Burnside's class algebra and Dixon's simultaneous eigenvectors.
//!
//! The class sums `C_i` span the centre of the group algebra with
//! `C_i C_j = Σ_k a_ijk C_k`. Each irreducible `χ` gives a central character
//! `ω_χ(C_i) = |C_i| χ(g_i) / χ(1)`, and the vector `(ω_χ(C_k))_k` is a common
//! eigenvector of the matrices `(M_i)_jk = a_ijk` with eigenvalue `ω_χ(C_i)`.
//! Working modulo a prime `p ≡ 1 (mod exp G)` every eigenvalue lies in the
//! prime field, and `p > 2|G|` makes degrees and multiplicities recoverable
//! from their residues.

use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::modp::{charpoly, mat_vec, nullspace, roots, rref, Matrix, Zp};
use crate::primes::{is_prime_u64, smallest_prime_congruent_one};
use crate::subgroup::Subgroup;

/// Full character table with values reduced modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterData {
    pub group_name: String,
    pub order: u64,
    pub modulus: u64,
    /// Exponent of the group, the order of the roots of unity involved.
    pub exponent: u64,
    pub class_sizes: Vec<u64>,
    /// Class of `g⁻¹` for a representative `g` of each class.
    pub inverse_class: Vec<usize>,
    /// `χ(1)` for each row, non-decreasing.
    pub degrees: Vec<u64>,
    /// Rows are characters, columns are classes (group class order).
    pub table: Vec<Vec<u64>>,
}

impl CharacterData {
    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn field(&self) -> Zp {
        Zp::new(self.modulus)
    }

    /// `Σ_j |C_j| χ_a(g_j) χ_b(g_j⁻¹)` reduced mod p.
    pub fn inner_product_scaled(&self, a: usize, b: usize) -> u64 {
        let f = self.field();
        (0..self.class_count()).fold(0, |acc, j| {
            let term = f.mul(
                f.reduce(self.class_sizes[j]),
                f.mul(self.table[a][j], self.table[b][self.inverse_class[j]]),
            );
            f.add(acc, term)
        })
    }

    pub fn degree_sum(&self) -> u64 {
        self.degrees.iter().sum()
    }

    fn check(&self) -> Result<()> {
        let k = self.class_count();
        let f = self.field();
        if self.table.len() != k || self.degrees.len() != k {
            return Err(Error::Internal(format!("{} characters for {} classes", self.table.len(), k)));
        }
        if self.degrees.iter().map(|d| d * d).sum::<u64>() != self.order {
            return Err(Error::Internal("sum of squared degrees differs from |G|".into()));
        }
        for a in 0..k {
            if self.table[a][0] != self.degrees[a] {
                return Err(Error::Internal("identity column differs from degrees".into()));
            }
            for b in 0..k {
                let expected = if a == b { f.reduce(self.order) } else { 0 };
                if self.inner_product_scaled(a, b) != expected {
                    return Err(Error::Internal(format!("row orthogonality fails for rows {} and {}", a, b)));
                }
            }
        }
        Ok(())
    }
}

/// Smallest prime `p ≡ 1 (mod exp G)` with `p > 2|G|`.
pub fn choose_modulus(g: &PermutationGroup) -> Result<u64> {
    smallest_prime_congruent_one(g.exponent(), 2 * g.order() as u64)
}

pub fn character_table_mod_p(g: &PermutationGroup) -> Result<CharacterData> {
    let p = choose_modulus(g)?;
    character_table_with_prime(g, p)
}

/// Degrees of `Irr(G)` in non-decreasing order.
pub fn character_degrees(g: &PermutationGroup) -> Result<Vec<u64>> {
    Ok(character_table_mod_p(g)?.degrees)
}

/// Structure constants `a_ijk = #{x ∈ C_i : x⁻¹ g_k ∈ C_j}`, flattened as
/// `[(i·k + j)·k + kk]`.
pub fn class_structure_constants(g: &PermutationGroup) -> Vec<u32> {
    let k = g.class_count();
    let mut a = vec![0u32; k * k * k];
    for (kk, class) in g.classes().iter().enumerate() {
        let rep = class[0];
        for x in g.elements() {
            let i = g.class_of(x);
            let j = g.class_of(g.mul(g.inv(x), rep));
            a[(i * k + j) * k + kk] += 1;
        }
    }
    a
}

/// Character table over `Z/pZ` for a caller-chosen prime (used to put a
/// normal subgroup's table on its parent's modulus).
pub fn character_table_with_prime(g: &PermutationGroup, p: u64) -> Result<CharacterData> {
    let exponent = g.exponent();
    let order = g.order() as u64;
    if !is_prime_u64(p) || p >= 1 << 32 {
        return Err(Error::Configuration(format!("modulus {} is not a prime below 2^32", p)));
    }
    if (p - 1) % exponent != 0 || p <= 2 * order {
        return Err(Error::Configuration(format!(
            "modulus {} needs p ≡ 1 (mod {}) and p > {}",
            p,
            exponent,
            2 * order
        )));
    }
    let f = Zp::new(p);
    let k = g.class_count();
    let class_sizes: Vec<u64> = g.class_sizes().into_iter().map(|s| s as u64).collect();
    let inverse_class: Vec<usize> = g.classes().iter().map(|c| g.class_of(g.inv(c[0]))).collect();

    if k == 1 {
        let data = CharacterData {
            group_name: g.name().to_string(),
            order,
            modulus: p,
            exponent,
            class_sizes,
            inverse_class,
            degrees: vec![1],
            table: vec![vec![1]],
        };
        data.check()?;
        return Ok(data);
    }

    let a = class_structure_constants(g);
    let class_matrix = |i: usize| -> Matrix {
        (0..k)
            .map(|j| (0..k).map(|kk| f.reduce(a[(i * k + j) * k + kk] as u64)).collect())
            .collect()
    };

    let mut identity: Matrix = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    rref(f, &mut identity);
    let mut spaces: Vec<Matrix> = vec![identity];
    for i in 1..k {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = class_matrix(i);
        let mut next = Vec::with_capacity(spaces.len());
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
            } else {
                next.extend(split_space(f, &m, space)?);
            }
        }
        spaces = next;
    }
    if let Some(s) = spaces.iter().find(|s| s.len() > 1) {
        return Err(Error::Internal(format!(
            "class matrices leave a common eigenspace of dimension {}",
            s.len()
        )));
    }

    let mut rows: Vec<(u64, Vec<u64>)> = Vec::with_capacity(k);
    for space in &spaces {
        let v = &space[0];
        let s0 = f.inv(v[0]);
        let omega: Vec<u64> = v.iter().map(|&x| f.mul(x, s0)).collect();
        // χ(1)² · Σ_j ω_j ω_{j'} / |C_j| = |G|
        let s = (0..k).fold(0, |acc, j| {
            let t = f.mul(f.mul(omega[j], omega[inverse_class[j]]), f.inv(class_sizes[j]));
            f.add(acc, t)
        });
        if s == 0 {
            return Err(Error::Internal("degenerate central character".into()));
        }
        let sq = f.mul(f.reduce(order), f.inv(s));
        let deg = exact_sqrt(sq)
            .filter(|d| d * d <= order && order % d == 0)
            .ok_or_else(|| Error::Internal(format!("residue {} is not a squared degree", sq)))?;
        let values = (0..k)
            .map(|j| f.mul(f.mul(omega[j], deg), f.inv(class_sizes[j])))
            .collect();
        rows.push((deg, values));
    }
    rows.sort();
    let data = CharacterData {
        group_name: g.name().to_string(),
        order,
        modulus: p,
        exponent,
        class_sizes,
        inverse_class,
        degrees: rows.iter().map(|r| r.0).collect(),
        table: rows.into_iter().map(|r| r.1).collect(),
    };
    data.check()?;
    Ok(data)
}

fn exact_sqrt(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).find(|x| x * x == n)
}

/// Splits a common eigenspace (rows in reduced echelon form) into the
/// eigenspaces of `m` restricted to it.
fn split_space(f: Zp, m: &Matrix, basis: Matrix) -> Result<Vec<Matrix>> {
    let d = basis.len();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).expect("echelon rows are nonzero"))
        .collect();
    let images: Vec<Vec<u64>> = basis.iter().map(|b| mat_vec(f, m, b)).collect();
    // restricted[s][r] = coordinate s of M b_r
    let restricted: Matrix = (0..d).map(|s| (0..d).map(|r| images[r][pivots[s]]).collect()).collect();
    let eigenvalues = roots(f, &charpoly(f, &restricted));
    if eigenvalues.len() == 1 {
        return Ok(vec![basis]);
    }
    let mut pieces = Vec::with_capacity(eigenvalues.len());
    let mut total = 0;
    for lambda in eigenvalues {
        let shifted: Matrix = (0..d)
            .map(|s| (0..d).map(|r| if s == r { f.sub(restricted[s][r], lambda) } else { restricted[s][r] }).collect())
            .collect();
        let coords = nullspace(f, &shifted);
        let mut vectors: Matrix = coords
            .iter()
            .map(|y| {
                let mut v = vec![0u64; basis[0].len()];
                for (s, &ys) in y.iter().enumerate() {
                    if ys != 0 {
                        for (vi, &bi) in v.iter_mut().zip(&basis[s]) {
                            *vi = f.add(*vi, f.mul(ys, bi));
                        }
                    }
                }
                v
            })
            .collect();
        rref(f, &mut vectors);
        total += vectors.len();
        pieces.push(vectors);
    }
    if total != d {
        return Err(Error::Internal("class matrix is not diagonalisable over the chosen prime".into()));
    }
    Ok(pieces)
}

/// Maps each conjugacy class of the subgroup group `h` into the class of `g` containing it.
pub fn class_fusion(g: &PermutationGroup, h: &PermutationGroup) -> Result<Vec<usize>> {
    if g.degree() != h.degree() {
        return Err(Error::Domain("subgroup acts on a different point set".into()));
    }
    h.classes()
        .iter()
        .map(|c| {
            g.index_of(h.element(c[0]))
                .map(|x| g.class_of(x))
                .ok_or_else(|| Error::Domain(format!("{} is not a subgroup of {}", h.name(), g.name())))
        })
        .collect()
}

/// Multiplicities `⟨χ_i↓N, θ_j⟩` as a `k(G) × k(N)` matrix.
///
/// `n_group` is `n` enumerated as a group in its own right and `chars_n` its
/// table over the same prime as `chars_g`.
pub fn restriction_multiplicities(
    g: &PermutationGroup,
    n: &Subgroup,
    n_group: &PermutationGroup,
    chars_g: &CharacterData,
    chars_n: &CharacterData,
) -> Result<Vec<Vec<u64>>> {
    if !n.is_normal() {
        return Err(Error::Domain("restriction to a subgroup that is not normal".into()));
    }
    if chars_g.modulus != chars_n.modulus {
        return Err(Error::Domain(format!(
            "tables use different moduli {} and {}",
            chars_g.modulus, chars_n.modulus
        )));
    }
    if n_group.order() != n.order() {
        return Err(Error::Domain("subgroup and its enumerated group differ in order".into()));
    }
    let fusion = class_fusion(g, n_group)?;
    let f = chars_g.field();
    let inv_n = f.inv(f.reduce(chars_n.order));
    let mut out = Vec::with_capacity(chars_g.table.len());
    for (chi, &chi_deg) in chars_g.table.iter().zip(&chars_g.degrees) {
        let row: Vec<u64> = chars_n
            .table
            .iter()
            .map(|theta| {
                let s = (0..chars_n.class_count()).fold(0, |acc, c| {
                    let t = f.mul(
                        f.reduce(chars_n.class_sizes[c]),
                        f.mul(chi[fusion[c]], theta[chars_n.inverse_class[c]]),
                    );
                    f.add(acc, t)
                });
                f.mul(s, inv_n)
            })
            .collect();
        let weighted: u64 = row.iter().zip(&chars_n.degrees).map(|(m, d)| m * d).sum();
        if weighted != chi_deg {
            return Err(Error::Internal("restricted degrees do not add up".into()));
        }
        out.push(row);
    }
    Ok(out)
}
