//! Exact linear algebra over the rationals.
//!
//! Everything here is small and dense: the matrices involved are `h₁ × h₁`
//! with `h₁` the first Betti number of a tropical curve, a single-digit
//! number in practice. Exactness matters more than asymptotics because
//! Delaunay ties must be decided without floating point.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rat;

/// Unit lower-triangular `L` and positive diagonal `d` with `B = L·diag(d)·Lᵀ`.
#[derive(Debug, Clone)]
pub struct Ldlt {
    pub lower: Vec<Vec<Rat>>,
    pub diag: Vec<Rat>,
}

/// Exact LDLᵀ decomposition of a symmetric matrix.
///
/// Returns `None` when some pivot is ≤ 0, i.e. exactly when the matrix is
/// not positive definite (the pivots are ratios of leading principal
/// minors).
pub fn ldlt(b: &[Vec<Rat>]) -> Option<Ldlt> {
    let n = b.len();
    let mut lower = vec![vec![Rat::zero(); n]; n];
    let mut diag = vec![Rat::zero(); n];
    for i in 0..n {
        let mut d = b[i][i].clone();
        for k in 0..i {
            d -= &lower[i][k] * &lower[i][k] * &diag[k];
        }
        if d <= Rat::zero() {
            return None;
        }
        lower[i][i] = Rat::one();
        for j in i + 1..n {
            let mut v = b[j][i].clone();
            for k in 0..i {
                v -= &lower[j][k] * &lower[i][k] * &diag[k];
            }
            lower[j][i] = v / &d;
        }
        diag[i] = d;
    }
    Some(Ldlt { lower, diag })
}

/// `true` iff the symmetric matrix is positive definite, decided exactly.
pub fn is_positive_definite(b: &[Vec<Rat>]) -> bool {
    b.is_empty() || ldlt(b).is_some()
}

/// Exact determinant by fraction-free-ish Gaussian elimination.
pub fn det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut sign = false;
    let mut result = Rat::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(p) => p,
            None => return Rat::zero(),
        };
        if pivot != col {
            a.swap(pivot, col);
            sign = !sign;
        }
        let p = a[col][col].clone();
        result *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    if sign {
        -result
    } else {
        result
    }
}

/// Exact inverse; `None` for singular input.
pub fn inverse(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv = vec![vec![Rat::zero(); n]; n];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot, col);
        inv.swap(pivot, col);
        let p = a[col][col].clone();
        for c in 0..n {
            a[col][c] /= &p;
            inv[col][c] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let s1 = &f * &a[col][c];
                a[r][c] -= s1;
                let s2 = &f * &inv[col][c];
                inv[r][c] -= s2;
            }
        }
    }
    Some(inv)
}

/// Row vector times matrix, exact.
pub fn row_times_matrix(x: &[Rat], m: &[Vec<Rat>]) -> Vec<Rat> {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![Rat::zero(); cols];
    for (xi, row) in x.iter().zip(m.iter()) {
        if xi.is_zero() {
            continue;
        }
        for (o, mij) in out.iter_mut().zip(row.iter()) {
            *o += xi * mij;
        }
    }
    out
}

/// Exact `x · M · yᵀ` for rational row vectors.
pub fn bilinear(x: &[Rat], m: &[Vec<Rat>], y: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (xi, row) in x.iter().zip(m.iter()) {
        if xi.is_zero() {
            continue;
        }
        let mut r = Rat::zero();
        for (mij, yj) in row.iter().zip(y.iter()) {
            r += mij * yj;
        }
        acc += xi * r;
    }
    acc
}

/// Integer vector promoted to rationals.
pub fn ints_to_rats(x: &[i64]) -> Vec<Rat> {
    x.iter().map(|&v| Rat::from_integer(v.into())).collect()
}

/// Nearest integer to a rational, ties rounded up.
pub fn nearest_int(x: &Rat) -> BigInt {
    (x + Rat::new(1.into(), 2.into())).floor().to_integer()
}

/// Nearest `i64`; panics when the value does not fit (never the case for the
/// lattice ranges this crate enumerates).
pub fn nearest_i64(x: &Rat) -> i64 {
    nearest_int(x).to_i64().expect("lattice coordinate out of i64 range")
}

/// Max row sum of absolute values, an exact bound for the ∞-operator norm.
pub fn inf_norm(m: &[Vec<Rat>]) -> Rat {
    let mut best = Rat::zero();
    for row in m {
        let mut s = Rat::zero();
        for v in row {
            s += v.abs();
        }
        if s > best {
            best = s;
        }
    }
    best
}

/// Rational to double, via `p/q` in big-float-free fashion.
pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Fall back to a division of truncated parts for huge operands.
        let n = x.numer().to_f64().unwrap_or(f64::MAX);
        let d = x.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

/// Least common multiple of all denominators in a rational slice.
pub fn denominator_lcm<'a, I: IntoIterator<Item = &'a Rat>>(xs: I) -> BigInt {
    let mut l = BigInt::from(1);
    for x in xs {
        l = l.lcm(x.denom());
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn mat(entries: &[&[i64]]) -> Vec<Vec<Rat>> {
        entries
            .iter()
            .map(|row| row.iter().map(|&v| rat_int(v)).collect())
            .collect()
    }

    #[test]
    fn ldlt_reconstructs_and_detects_non_pd() {
        let b = mat(&[&[2, 1], &[1, 2]]);
        let f = ldlt(&b).expect("pd");
        // B = L D L^T
        for i in 0..2 {
            for j in 0..2 {
                let mut s = Rat::zero();
                for k in 0..2 {
                    s += &f.lower[i][k] * &f.lower[j][k] * &f.diag[k];
                }
                assert_eq!(s, b[i][j]);
            }
        }
        let not_pd = mat(&[&[1, 2], &[2, 1]]);
        assert!(ldlt(&not_pd).is_none());
        assert!(is_positive_definite(&[]));
    }

    #[test]
    fn det_and_inverse_agree() {
        let m = mat(&[&[3, 1, 0], &[1, 4, 1], &[0, 1, 5]]);
        let d = det(&m);
        assert_eq!(d, rat_int(3 * 4 * 5 - 3 - 5));
        let inv = inverse(&m).expect("invertible");
        for i in 0..3 {
            for j in 0..3 {
                let mut s = Rat::zero();
                for k in 0..3 {
                    s += &m[i][k] * &inv[k][j];
                }
                assert_eq!(s, if i == j { rat_int(1) } else { rat_int(0) });
            }
        }
    }

    #[test]
    fn nearest_int_rounds_half_up() {
        assert_eq!(nearest_i64(&rat(1, 2)), 1);
        assert_eq!(nearest_i64(&rat(-1, 2)), 0);
        assert_eq!(nearest_i64(&rat(7, 3)), 2);
        assert_eq!(nearest_i64(&rat(-7, 3)), -2);
    }
}
