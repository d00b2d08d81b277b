//! Exact linear algebra over ℤ and ℚ for the small matrices (rank ≤ 28) that
//! occur here: determinants, inverses, Hermite and Smith normal forms,
//! integer kernels, inertia and LLL reduction of Gram matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Q;
use crate::error::{Error, Result};

pub type IMat = Vec<Vec<BigInt>>;
pub type QMat = Vec<Vec<Q>>;

pub fn to_imat(a: &[Vec<i64>]) -> IMat {
    a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn to_qmat(a: &IMat) -> QMat {
    a.iter()
        .map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect())
        .collect()
}

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn qmat_mul(a: &QMat, b: &QMat) -> QMat {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| {
            (0..m)
                .map(|j| {
                    r.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .fold(Q::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

pub fn qmat_vec(a: &QMat, v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|r| r.iter().zip(v).fold(Q::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

pub fn imat_mul(a: &IMat, b: &IMat) -> IMat {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| {
            (0..m)
                .map(|j| r.iter().zip(b).fold(BigInt::zero(), |acc, (x, brow)| acc + x * &brow[j]))
                .collect()
        })
        .collect()
}

/// Bilinear form `xᵀ G y` with rational vectors and integer Gram matrix.
pub fn bilinear(g: &IMat, x: &[Q], y: &[Q]) -> Q {
    let mut acc = Q::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        let mut row = Q::zero();
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() && !g[i][j].is_zero() {
                row += yj * Q::from_integer(g[i][j].clone());
            }
        }
        acc += xi * row;
    }
    acc
}

/// Determinant of an integer matrix by fraction-free elimination.
pub fn det_int(a: &IMat) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Gaussian elimination on an augmented system with `ncols` unknowns.
/// Returns the unique solution, or `None` if the system is inconsistent or
/// underdetermined.
pub fn solve_augmented(rows: &mut [Vec<Q>], ncols: usize) -> Option<Vec<Q>> {
    let m = rows.len();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..=ncols {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() < ncols || rows[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    Some((0..ncols).map(|i| rows[i][ncols].clone()).collect())
}

/// Solves `a x = b` for square invertible `a`.
pub fn solve_q(a: &QMat, b: &[Q]) -> Option<Vec<Q>> {
    let mut rows: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    solve_augmented(&mut rows, a.first().map_or(0, Vec::len))
}

/// Inverse of a square rational matrix.
pub fn inverse_q(a: &QMat) -> Option<QMat> {
    let n = a.len();
    let mut rows: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !rows[i][c].is_zero())?;
        rows.swap(c, p);
        let inv = Q::one() / &rows[c][c];
        for x in rows[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..2 * n {
                    let t = &f * &rows[c][j];
                    rows[i][j] -= t;
                }
            }
        }
    }
    Some(rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Inertia `(positive, negative)` of a nondegenerate symmetric rational
/// matrix, from the pivots of an exact symmetric elimination.
pub fn inertia(a: &QMat) -> Result<(usize, usize)> {
    let n = a.len();
    let mut m = a.clone();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        if m[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !m[i][i].is_zero()) {
                m.swap(i, k);
                for row in m.iter_mut() {
                    row.swap(i, k);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) {
                // Replace basis vector k by e_k + e_j; its norm is 2 m[k][j] ≠ 0.
                for c in 0..n {
                    let t = m[j][c].clone();
                    m[k][c] += t;
                }
                for r in 0..n {
                    let t = m[r][j].clone();
                    m[r][k] += t;
                }
            } else {
                return Err(Error::Singular);
            }
        }
        let p = m[k][k].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &p;
            for j in k..n {
                let t = &f * &m[k][j];
                m[i][j] -= t;
            }
        }
        for i in k + 1..n {
            m[k][i] = Q::zero();
        }
    }
    Ok((pos, neg))
}

/// Extended gcd: returns `(g, x, y)` with `a x + b y = g ≥ 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Integer coefficients `u` with `Σ u_i a_i = gcd(a)`, together with the gcd.
pub fn gcd_combination(a: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coeffs = vec![BigInt::zero(); a.len()];
    for (i, ai) in a.iter().enumerate() {
        let (ng, x, y) = ext_gcd(&g, ai);
        for c in coeffs.iter_mut().take(i) {
            *c *= &x;
        }
        coeffs[i] = y;
        g = ng;
    }
    (g, coeffs)
}

/// Row Hermite normal form of the lattice spanned by `rows`.
///
/// Returns `(basis, transform)` where the basis rows are the nonzero rows of
/// the echelon form and `transform[i]` expresses `basis[i]` as an integer
/// combination of the input rows. The remaining transform rows (relations)
/// are returned third.
pub fn hnf_rows(rows: &IMat) -> (IMat, IMat, IMat) {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut a = rows.clone();
    let mut t = identity(m);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..m).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| a[i][c].abs()).unwrap();
            a.swap(r, p);
            t.swap(r, p);
            let mut done = true;
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].div_floor(&a[r][c]);
                for j in 0..n {
                    let v = &f * &a[r][j];
                    a[i][j] -= v;
                }
                for j in 0..m {
                    let v = &f * &t[r][j];
                    t[i][j] -= v;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
            for x in t[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let f = a[i][c].div_floor(&a[r][c]);
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                let v = &f * &a[r][j];
                a[i][j] -= v;
            }
            for j in 0..m {
                let v = &f * &t[r][j];
                t[i][j] -= v;
            }
        }
        r += 1;
    }
    let relations = t.split_off(r);
    a.truncate(r);
    (a, t, relations)
}

/// Basis of `{x ∈ ℤⁿ : a x = 0}`.
pub fn integer_kernel(a: &IMat, n: usize) -> IMat {
    let at: IMat = if a.is_empty() {
        vec![Vec::new(); n]
    } else {
        transpose(a)
    };
    let (_, _, relations) = hnf_rows(&at);
    relations
}

/// Smith normal form `u a v = d` with `d` diagonal, `d_i | d_{i+1}`, and
/// `u`, `v` unimodular.
pub struct Smith {
    pub u: IMat,
    pub diag: Vec<BigInt>,
    pub v: IMat,
}

pub fn smith_normal_form(a: &IMat) -> Smith {
    let n = a.len();
    let mut m = a.clone();
    let mut u = identity(n);
    let mut v = identity(n);
    for t in 0..n {
        loop {
            // Pivot: smallest nonzero entry of the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if !m[i][j].is_zero()
                        && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            m.swap(t, pi);
            u.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..n {
                let f = m[i][t].div_floor(&m[t][t]);
                if !f.is_zero() {
                    for j in 0..n {
                        let x = &f * &m[t][j];
                        m[i][j] -= x;
                        let y = &f * &u[t][j];
                        u[i][j] -= y;
                    }
                }
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let f = m[t][j].div_floor(&m[t][t]);
                if !f.is_zero() {
                    for i in 0..n {
                        let x = &f * &m[i][t];
                        m[i][j] -= x;
                        let y = &f * &v[i][t];
                        v[i][j] -= y;
                    }
                }
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold a row with a non-multiple into row t.
            let bad = (t + 1..n)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&m[i][j] % &m[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    for j in 0..n {
                        let x = m[i][j].clone();
                        m[t][j] += x;
                        let y = u[i][j].clone();
                        u[t][j] += y;
                    }
                }
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for j in 0..n {
                m[t][j] = -&m[t][j];
                u[t][j] = -&u[t][j];
            }
        }
    }
    let diag = (0..n).map(|i| m[i][i].clone()).collect();
    Smith { u, diag, v }
}

/// LLL reduction (δ = 3/4) of a positive definite integer Gram matrix.
///
/// Returns the reduced Gram matrix and the unimodular transform whose rows
/// are the new basis vectors in the old coordinates.
pub fn lll_gram(g: &IMat) -> (IMat, IMat) {
    let n = g.len();
    let mut gm = g.clone();
    let mut t = identity(n);
    if n <= 1 {
        return (gm, t);
    }
    let mut mu: QMat = vec![vec![Q::zero(); n]; n];
    let mut b: Vec<Q> = vec![Q::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = Q::from_integer(gm[i][j].clone());
            for l in 0..j {
                s -= &mu[j][l] * &mu[i][l] * &b[l];
            }
            mu[i][j] = s / &b[j];
        }
        let mut s = Q::from_integer(gm[i][i].clone());
        for l in 0..i {
            s -= &mu[i][l] * &mu[i][l] * &b[l];
        }
        b[i] = s;
    }
    let half = Q::new(BigInt::one(), BigInt::from(2));
    let delta = Q::new(BigInt::from(3), BigInt::from(4));

    let size_reduce = |k: usize, l: usize, gm: &mut IMat, t: &mut IMat, mu: &mut QMat| {
        if mu[k][l].abs() <= half {
            return;
        }
        let r = (&mu[k][l] + &half).floor().to_integer();
        let rq = Q::from_integer(r.clone());
        for j in 0..l {
            let x = &rq * &mu[l][j];
            mu[k][j] -= x;
        }
        mu[k][l] -= &rq;
        let gkk = &gm[k][k] - BigInt::from(2) * &r * &gm[k][l] + &r * &r * &gm[l][l];
        for i in 0..n {
            if i != k {
                let x = &r * &gm[l][i];
                gm[k][i] -= x;
                gm[i][k] = gm[k][i].clone();
            }
        }
        gm[k][k] = gkk;
        for j in 0..n {
            let x = &r * &t[l][j];
            t[k][j] -= x;
        }
    };

    let mut k = 1;
    while k < n {
        size_reduce(k, k - 1, &mut gm, &mut t, &mut mu);
        let lhs = b[k].clone();
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &b[k - 1];
        if lhs < rhs {
            let m = mu[k][k - 1].clone();
            let bnew = &b[k] + &m * &m * &b[k - 1];
            mu[k][k - 1] = &m * &b[k - 1] / &bnew;
            b[k] = &b[k - 1] * &b[k] / &bnew;
            b[k - 1] = bnew;
            for j in 0..k - 1 {
                let (lo, hi) = mu.split_at_mut(k);
                std::mem::swap(&mut lo[k - 1][j], &mut hi[0][j]);
            }
            for i in k + 1..n {
                let tt = mu[i][k].clone();
                mu[i][k] = &mu[i][k - 1] - &m * &tt;
                mu[i][k - 1] = &tt + &mu[k][k - 1] * &mu[i][k];
            }
            gm.swap(k, k - 1);
            for row in gm.iter_mut() {
                row.swap(k, k - 1);
            }
            t.swap(k, k - 1);
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                size_reduce(k, l, &mut gm, &mut t, &mut mu);
            }
            k += 1;
        }
    }
    (gm, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, q};

    fn im(a: &[&[i64]]) -> IMat {
        a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn determinant_and_inverse() {
        let a = im(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(det_int(&a), BigInt::from(4));
        let inv = inverse_q(&to_qmat(&a)).unwrap();
        assert_eq!(inv[0][0], q(3, 4));
        assert_eq!(det_int(&im(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
    }

    #[test]
    fn inertia_of_hyperbolic_plane() {
        assert_eq!(inertia(&to_qmat(&im(&[&[0, 1], &[1, 0]]))).unwrap(), (1, 1));
        assert_eq!(inertia(&to_qmat(&im(&[&[0, 0], &[0, 2]]))), Err(Error::Singular));
        let x = vec![vec![int(-2), int(1)], vec![int(1), int(-2)]];
        assert_eq!(inertia(&x).unwrap(), (0, 2));
    }

    #[test]
    fn smith_form_reconstructs() {
        let a = im(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let d = imat_mul(&imat_mul(&s.u, &a), &s.v);
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { s.diag[i].clone() } else { BigInt::zero() };
                assert_eq!(d[i][j], expected);
            }
        }
        assert_eq!(det_int(&s.u).abs(), BigInt::one());
        assert_eq!(det_int(&s.v).abs(), BigInt::one());
    }

    #[test]
    fn kernel_and_hnf() {
        let a = im(&[&[2, 3, 5]]);
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((BigInt::from(2) * &v[0] + BigInt::from(3) * &v[1] + BigInt::from(5) * &v[2]).is_zero());
        }
        let (basis, tr, rel) = hnf_rows(&im(&[&[2, 0], &[0, 2], &[1, 1]]));
        assert_eq!(basis.len(), 2);
        assert_eq!(rel.len(), 1);
        assert_eq!(det_int(&basis).abs(), BigInt::from(2));
        let input = im(&[&[2, 0], &[0, 2], &[1, 1]]);
        assert_eq!(imat_mul(&tr, &input), basis);
        let (g, u) = gcd_combination(&[BigInt::from(6), BigInt::from(10), BigInt::from(15)]);
        assert_eq!(g, BigInt::one());
        assert_eq!(BigInt::from(6) * &u[0] + BigInt::from(10) * &u[1] + BigInt::from(15) * &u[2], g);
    }

    #[test]
    fn lll_shortens_skewed_basis() {
        // Basis (1,0), (100,1) of ℤ²: the reduced Gram is the identity up to sign.
        let g = im(&[&[1, 100], &[100, 10001]]);
        let (r, t) = lll_gram(&g);
        assert_eq!(&r[0][0] + &r[1][1], BigInt::from(2));
        let back = imat_mul(&imat_mul(&t, &g), &transpose(&t));
        assert_eq!(back, r);
    }
}
