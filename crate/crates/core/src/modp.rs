//! Arithmetic and dense linear algebra over a prime field `Z/pZ`, `p < 2³²`.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zp {
    p: u64,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p < 1 << 32, "modulus out of range");
        Zp { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.p
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Symmetric lift into `(-p/2, p/2]`.
    pub fn lift(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

pub type Matrix = Vec<Vec<u64>>;

/// Row-reduces in place to reduced echelon form, dropping zero rows.
/// Returns the pivot columns.
pub fn rref(f: Zp, rows: &mut Matrix) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let s = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, s);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in 0..ncols {
                    let t = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{y : M y = 0}` for a square or rectangular `M` (rows × cols).
pub fn nullspace(f: Zp, m: &Matrix) -> Matrix {
    let ncols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let pivots = rref(f, &mut a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut y = vec![0; ncols];
            y[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                y[pc] = f.neg(a[r][fc]);
            }
            y
        })
        .collect()
}

/// Characteristic polynomial `det(xI − M)`, coefficients from constant term
/// up to the leading 1. Reduces to Hessenberg form first, O(n³).
pub fn charpoly(f: Zp, m: &Matrix) -> Vec<u64> {
    let n = m.len();
    let mut h = m.clone();
    for col in 0..n.saturating_sub(2) {
        let row = col + 1;
        let Some(piv) = (row..n).find(|&i| h[i][col] != 0) else {
            continue;
        };
        if piv != row {
            h.swap(piv, row);
            for r in h.iter_mut() {
                r.swap(piv, row);
            }
        }
        let t = f.inv(h[row][col]);
        for i in row + 1..n {
            let u = f.mul(h[i][col], t);
            if u == 0 {
                continue;
            }
            // row_i -= u·row_row ; col_row += u·col_i  (similarity transform)
            for j in 0..n {
                let v = f.mul(u, h[row][j]);
                h[i][j] = f.sub(h[i][j], v);
            }
            for r in h.iter_mut() {
                let v = f.mul(u, r[i]);
                r[row] = f.add(r[row], v);
            }
        }
    }
    // p_k = (x − h_kk) p_{k−1} − Σ_{i<k} (Π sub-diagonal) h_{i,k} p_{i−1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![0u64; k + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(h[k][k], c));
        }
        let mut t = 1u64;
        for i in (0..k).rev() {
            t = f.mul(t, h[i + 1][i]);
            let coeff = f.mul(t, h[i][k]);
            if coeff == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = f.sub(next[d], f.mul(coeff, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

pub fn eval(f: Zp, poly: &[u64], x: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Distinct roots in `Z/pZ` by exhaustive evaluation.
pub fn roots(f: Zp, poly: &[u64]) -> Vec<u64> {
    (0..f.modulus()).filter(|&x| eval(f, poly, x) == 0).collect()
}

pub fn mat_vec(f: Zp, m: &Matrix, v: &[u64]) -> Vec<u64> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const P: u64 = 101;

    fn det_bruteforce(f: Zp, m: &Matrix) -> u64 {
        // Laplace expansion, fine for n ≤ 5
        let n = m.len();
        if n == 0 {
            return 1;
        }
        let mut acc = 0;
        for j in 0..n {
            let minor: Matrix = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
            let term = f.mul(m[0][j], det_bruteforce(f, &minor));
            acc = if j % 2 == 0 { f.add(acc, term) } else { f.sub(acc, term) };
        }
        acc
    }

    proptest! {
        #[test]
        fn charpoly_matches_determinant(entries in proptest::collection::vec(0u64..P, 16), x in 0u64..P) {
            let f = Zp::new(P);
            let m: Matrix = entries.chunks(4).map(|c| c.to_vec()).collect();
            let xi_minus_m: Matrix = (0..4).map(|i| (0..4).map(|j| {
                let d = if i == j { x } else { 0 };
                f.sub(d, m[i][j])
            }).collect()).collect();
            prop_assert_eq!(eval(f, &charpoly(f, &m), x), det_bruteforce(f, &xi_minus_m));
        }

        #[test]
        fn nullspace_vectors_are_killed(entries in proptest::collection::vec(0u64..7, 12)) {
            let f = Zp::new(7);
            let m: Matrix = entries.chunks(4).map(|c| c.to_vec()).collect();
            let ns = nullspace(f, &m);
            let mut a = m.clone();
            let rank = rref(f, &mut a).len();
            prop_assert_eq!(ns.len(), 4 - rank);
            for y in ns {
                prop_assert!(mat_vec(f, &m, &y).iter().all(|&v| v == 0));
            }
        }
    }

    #[test]
    fn inverse_and_lift() {
        let f = Zp::new(13);
        for a in 1..13 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.lift(12), -1);
        assert_eq!(f.from_i64(-1), 12);
    }
}
