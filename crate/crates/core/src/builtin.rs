//! Builders for the group families used by the corpus.
//!
//! Spec strings have the form `family:param[:param]`, e.g. `symmetric:4`,
//! `psl2:7`, `extraspecial:27:9` or `product:alternating:5,cyclic:2`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::SmallField;
use crate::group::PermutationGroup;
use crate::perm::Perm;
use crate::primes::{is_prime_power, is_prime_u64};

/// Largest `n` accepted by `symmetric:n` and `alternating:n`.
pub const MAX_SYMMETRIC_DEGREE: usize = 6;
/// Largest field size accepted by the linear-group builders.
pub const MAX_LINEAR_FIELD: usize = 13;

fn perm(images: Vec<usize>) -> Perm {
    Perm::from_images(images.into_iter().map(|x| x as u16).collect()).expect("builder produced a bijection")
}

pub fn cyclic(n: usize) -> Result<PermutationGroup> {
    if n == 0 {
        return Err(Error::Domain("cyclic group order must be positive".into()));
    }
    let gens = if n == 1 { vec![] } else { vec![perm((0..n).map(|i| (i + 1) % n).collect())] };
    PermutationGroup::new(format!("C{}", n), n, gens)
}

/// Dihedral group of order `2n` (symmetries of an `n`-gon), `n ≥ 3`.
pub fn dihedral(n: usize) -> Result<PermutationGroup> {
    if n < 3 {
        return Err(Error::Domain("dihedral:n needs n ≥ 3".into()));
    }
    let rot = perm((0..n).map(|i| (i + 1) % n).collect());
    let refl = perm((0..n).map(|i| (n - i) % n).collect());
    PermutationGroup::new(format!("D{}", 2 * n), n, vec![rot, refl])
}

pub fn symmetric(n: usize) -> Result<PermutationGroup> {
    if n == 0 || n > MAX_SYMMETRIC_DEGREE {
        return Err(Error::Domain(format!("symmetric:n needs 1 ≤ n ≤ {}", MAX_SYMMETRIC_DEGREE)));
    }
    let gens = if n == 1 {
        vec![]
    } else {
        vec![perm((0..n).map(|i| (i + 1) % n).collect()), Perm::from_cycles(n, &[&[0, 1]])?]
    };
    PermutationGroup::new(format!("S{}", n), n, gens)
}

pub fn alternating(n: usize) -> Result<PermutationGroup> {
    if n == 0 || n > MAX_SYMMETRIC_DEGREE {
        return Err(Error::Domain(format!("alternating:n needs 1 ≤ n ≤ {}", MAX_SYMMETRIC_DEGREE)));
    }
    let gens = (2..n).map(|i| Perm::from_cycles(n, &[&[0, 1, i]])).collect::<Result<Vec<_>>>()?;
    PermutationGroup::new(format!("A{}", n), n, gens)
}

/// Dicyclic group of order `4m`: `⟨a, x | a²ᵐ = 1, x² = aᵐ, x⁻¹ax = a⁻¹⟩`,
/// in its regular representation.
pub fn dicyclic(m: usize) -> Result<PermutationGroup> {
    if m < 2 {
        return Err(Error::Domain("dicyclic:m needs m ≥ 2".into()));
    }
    let n = 2 * m;
    // element a^k x^e has index k + n*e
    let by_a = (0..2 * n)
        .map(|i| if i < n { (i + 1) % n } else { n + (i - n + n - 1) % n })
        .collect();
    let by_x = (0..2 * n).map(|i| if i < n { i + n } else { (i - n + m) % n }).collect();
    let name = if m == 2 { "Q8".to_string() } else { format!("Dic{}", 4 * m) };
    PermutationGroup::new(name, 2 * n, vec![perm(by_a), perm(by_x)])
}

pub fn quaternion8() -> PermutationGroup {
    dicyclic(2).expect("Q8")
}

/// Extraspecial groups of order 27: exponent 3 (unitriangular 3×3 matrices
/// over GF(3) acting on nonzero vectors) or exponent 9 (`x ↦ ax + b` on Z/9
/// with `a ∈ {1, 4, 7}`).
pub fn extraspecial27(exponent: usize) -> Result<PermutationGroup> {
    match exponent {
        3 => {
            let f = SmallField::new(3)?;
            let mut e12 = identity_matrix(3);
            e12[1] = 1;
            let mut e23 = identity_matrix(3);
            e23[5] = 1;
            let points = nonzero_vectors(&f, 3);
            let gens = vec![linear_perm(&f, 3, &points, &e12, false), linear_perm(&f, 3, &points, &e23, false)];
            PermutationGroup::new("ES27_exp3", points.len(), gens)
        }
        9 => {
            let x = perm((0..9).map(|i| (i + 1) % 9).collect());
            let y = perm((0..9).map(|i| 4 * i % 9).collect());
            PermutationGroup::new("ES27_exp9", 9, vec![x, y])
        }
        _ => Err(Error::Domain("extraspecial:27:e needs e ∈ {3, 9}".into())),
    }
}

/// `AGL(1, p)`: all maps `x ↦ ax + b` on GF(p).
pub fn affine(p: usize) -> Result<PermutationGroup> {
    if !is_prime_u64(p as u64) {
        return Err(Error::Domain(format!("affine:p needs a prime, got {}", p)));
    }
    frobenius_inner(p, p - 1, format!("AGL(1,{})", p))
}

/// `C_p ⋊ C_r` acting on GF(p), for `r | p − 1`.
pub fn frobenius(p: usize, r: usize) -> Result<PermutationGroup> {
    if !is_prime_u64(p as u64) || r == 0 || (p - 1) % r != 0 {
        return Err(Error::Domain(format!("frobenius:p:r needs p prime and r | p-1, got {}:{}", p, r)));
    }
    frobenius_inner(p, r, format!("C{}:C{}", p, r))
}

fn frobenius_inner(p: usize, r: usize, name: String) -> Result<PermutationGroup> {
    let f = SmallField::new(p)?;
    let mut w = 1usize;
    for _ in 0..(p - 1) / r {
        w = w * f.primitive_element() as usize % p;
    }
    let mut gens = vec![];
    if p > 1 {
        gens.push(perm((0..p).map(|i| (i + 1) % p).collect()));
    }
    if r > 1 {
        gens.push(perm((0..p).map(|i| i * w % p).collect()));
    }
    PermutationGroup::new(name, p, gens)
}

fn identity_matrix(n: usize) -> Vec<u16> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

fn nonzero_vectors(f: &SmallField, n: usize) -> Vec<Vec<u16>> {
    let q = f.size();
    (1..q.pow(n as u32))
        .map(|mut code| {
            let mut v = vec![0u16; n];
            for x in v.iter_mut() {
                *x = (code % q) as u16;
                code /= q;
            }
            v
        })
        .collect()
}

/// Scale so the first nonzero coordinate is 1.
fn normalize(f: &SmallField, v: &mut [u16]) {
    if let Some(&lead) = v.iter().find(|&&x| x != 0) {
        let s = f.inv(lead);
        for x in v.iter_mut() {
            *x = f.mul(*x, s);
        }
    }
}

fn projective_points(f: &SmallField, n: usize) -> Vec<Vec<u16>> {
    let mut pts: Vec<Vec<u16>> = nonzero_vectors(f, n)
        .into_iter()
        .map(|mut v| {
            normalize(f, &mut v);
            v
        })
        .collect();
    pts.sort();
    pts.dedup();
    pts
}

/// Permutation induced by `v ↦ vM` on `points` (projectively when asked).
fn linear_perm(f: &SmallField, n: usize, points: &[Vec<u16>], m: &[u16], projective: bool) -> Perm {
    let index: HashMap<&[u16], usize> = points.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let images = points
        .iter()
        .map(|v| {
            let mut w = vec![0u16; n];
            for (j, wj) in w.iter_mut().enumerate() {
                for (i, &vi) in v.iter().enumerate() {
                    *wj = f.add(*wj, f.mul(vi, m[i * n + j]));
                }
            }
            if projective {
                normalize(f, &mut w);
            }
            index[w.as_slice()]
        })
        .collect();
    perm(images)
}

/// Transvections `I + a·E_ij` over an additive basis of the field; they generate `SL(n, q)`.
fn transvections(f: &SmallField, n: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for &a in &f.prime_field_basis() {
                let mut m = identity_matrix(n);
                m[i * n + j] = a;
                out.push(m);
            }
        }
    }
    out
}

fn linear_field(q: usize) -> Result<SmallField> {
    if !is_prime_power(q as u64) || q > MAX_LINEAR_FIELD {
        return Err(Error::Domain(format!(
            "linear groups need a prime power q ≤ {}, got {}",
            MAX_LINEAR_FIELD, q
        )));
    }
    SmallField::new(q)
}

/// `SL(2, q)` acting faithfully on the `q² − 1` nonzero vectors of GF(q)².
pub fn sl2(q: usize) -> Result<PermutationGroup> {
    let f = linear_field(q)?;
    let pts = nonzero_vectors(&f, 2);
    let gens = transvections(&f, 2).iter().map(|m| linear_perm(&f, 2, &pts, m, false)).collect();
    PermutationGroup::new(format!("SL(2,{})", q), pts.len(), gens)
}

/// `PSL(2, q)` on the projective line (degree `q + 1`).
pub fn psl2(q: usize) -> Result<PermutationGroup> {
    let f = linear_field(q)?;
    let pts = projective_points(&f, 2);
    let gens = transvections(&f, 2).iter().map(|m| linear_perm(&f, 2, &pts, m, true)).collect();
    PermutationGroup::new(format!("PSL(2,{})", q), pts.len(), gens)
}

/// `PGL(2, q)` on the projective line.
pub fn pgl2(q: usize) -> Result<PermutationGroup> {
    let f = linear_field(q)?;
    let pts = projective_points(&f, 2);
    let mut mats = transvections(&f, 2);
    mats.push(vec![f.primitive_element(), 0, 0, 1]);
    let gens = mats.iter().map(|m| linear_perm(&f, 2, &pts, m, true)).collect();
    PermutationGroup::new(format!("PGL(2,{})", q), pts.len(), gens)
}

/// `PSL(3, q)` on the `q² + q + 1` points of the projective plane, `q ≤ 4`.
pub fn psl3(q: usize) -> Result<PermutationGroup> {
    if q > 4 {
        return Err(Error::Domain("psl3:q is limited to q ≤ 4".into()));
    }
    let f = linear_field(q)?;
    let pts = projective_points(&f, 3);
    let gens = transvections(&f, 3).iter().map(|m| linear_perm(&f, 3, &pts, m, true)).collect();
    PermutationGroup::new(format!("PSL(3,{})", q), pts.len(), gens)
}

pub fn direct_product(factors: &[PermutationGroup]) -> Result<PermutationGroup> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::Input("product needs at least one factor".into()))?;
    let mut acc = first.clone();
    for f in rest {
        acc = PermutationGroup::direct_product(&acc, f)?;
    }
    Ok(acc)
}

fn param(parts: &[&str], i: usize, spec: &str) -> Result<usize> {
    parts
        .get(i)
        .ok_or_else(|| Error::Input(format!("spec '{}' is missing parameter {}", spec, i)))?
        .trim()
        .parse()
        .map_err(|_| Error::Input(format!("spec '{}' has a non-integer parameter", spec)))
}

/// Parses a builtin spec string (without any `builtin:` prefix).
pub fn from_spec(spec: &str) -> Result<PermutationGroup> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("product:") {
        let factors = rest.split(',').map(from_spec).collect::<Result<Vec<_>>>()?;
        if factors.len() < 2 {
            return Err(Error::Input(format!("product spec '{}' needs at least two factors", spec)));
        }
        return direct_product(&factors);
    }
    let parts: Vec<&str> = spec.split(':').collect();
    let p = |i| param(&parts, i, spec);
    match parts[0] {
        "cyclic" => cyclic(p(1)?),
        "dihedral" => dihedral(p(1)?),
        "symmetric" => symmetric(p(1)?),
        "alternating" => alternating(p(1)?),
        "quaternion" => match parts.get(1).map(|s| s.trim()) {
            None | Some("8") => Ok(quaternion8()),
            _ => Err(Error::Input("only quaternion:8 is built in (see dicyclic:m)".into())),
        },
        "dicyclic" => dicyclic(p(1)?),
        "extraspecial" => {
            if p(1)? != 27 {
                return Err(Error::Input("only extraspecial:27:3 and extraspecial:27:9 are built in".into()));
            }
            extraspecial27(p(2)?)
        }
        "sl2" => sl2(p(1)?),
        "psl2" => psl2(p(1)?),
        "pgl2" => pgl2(p(1)?),
        "psl3" => psl3(p(1)?),
        "affine" => affine(p(1)?),
        "frobenius" => frobenius(p(1)?, p(2)?),
        other => Err(Error::Input(format!("unknown builtin family '{}'", other))),
    }
}
