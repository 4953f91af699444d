//! Dense exact linear algebra over `Q` and quadratic fields.

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::numfield::FieldElem;

/// Exact field scalars. Division by a nonzero element must be exact.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
}

impl Scalar for FieldElem {
    fn zero() -> Self {
        FieldElem::zero()
    }
    fn one() -> Self {
        FieldElem::one()
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self.checked_div(other).expect("nonzero pivot")
    }
}

pub type Matrix<T> = Vec<Vec<T>>;

pub fn zeros<T: Scalar>(rows: usize, cols: usize) -> Matrix<T> {
    vec![vec![T::zero(); cols]; rows]
}

pub fn identity<T: Scalar>(n: usize) -> Matrix<T> {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

pub fn transpose<T: Scalar>(a: &Matrix<T>) -> Matrix<T> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| (0..rows).map(|i| a[i][j].clone()).collect()).collect()
}

pub fn mat_mul<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(T::zero(), |acc, t| {
                        if row[t].is_zero() || b[t][j].is_zero() {
                            acc
                        } else {
                            acc.add(&row[t].mul(&b[t][j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<T: Scalar>(a: &Matrix<T>, v: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .fold(T::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
        })
        .collect()
}

pub fn mat_sub<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.sub(y)).collect())
        .collect()
}

/// `a - c I` for square `a`.
pub fn shift_diagonal<T: Scalar>(a: &Matrix<T>, c: &T) -> Matrix<T> {
    let mut out = a.clone();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = row[i].sub(c);
    }
    out
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<T: Scalar>(a: &mut Matrix<T>) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = T::one().div(&a[r][c]);
        for x in a[r].iter_mut().skip(c) {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Scalar>(a: &Matrix<T>) -> usize {
    let mut m = a.clone();
    rref(&mut m).len()
}

/// Basis of the right kernel `{x : a x = 0}`, one vector per free column.
pub fn kernel<T: Scalar>(a: &Matrix<T>, cols: usize) -> Vec<Vec<T>> {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = m[i][f].neg();
            }
            v
        })
        .collect()
}

/// Solves `a x = b` exactly. Inconsistent systems give [`Error::NotInSpan`],
/// underdetermined ones [`Error::RaisePrecision`].
pub fn solve<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Result<Vec<T>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Matrix<T> = a
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return Err(Error::NotInSpan);
    }
    if pivots.len() < cols {
        return Err(Error::RaisePrecision);
    }
    Ok((0..cols).map(|i| aug[i][cols].clone()).collect())
}

/// Characteristic polynomial `det(x I - a)` by Faddeev-LeVerrier, coefficients
/// from the constant term up (monic).
pub fn char_poly(a: &Matrix<Rational>) -> Vec<Rational> {
    let n = a.len();
    let mut coeffs = vec![<Rational as Zero>::zero(); n + 1];
    coeffs[n] = <Rational as One>::one();
    let mut m: Matrix<Rational> = zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = mat_mul(a, &m);
        let trace: Rational = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -trace / Rational::from_integer((k as i64).into());
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::numfield::QuadField;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rref_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&a, &k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn solve_reports_failures() {
        let a = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(solve(&a, &[int(2), int(3), int(5)]).unwrap(), vec![int(2), int(3)]);
        assert_eq!(solve(&a, &[int(2), int(3), int(6)]), Err(Error::NotInSpan));
        let b = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&b, &[int(1), int(2)]), Err(Error::RaisePrecision));
    }

    #[test]
    fn char_poly_small() {
        // [[2,1],[1,2]]: x^2 - 4x + 3
        let a = m(&[&[2, 1], &[1, 2]]);
        assert_eq!(char_poly(&a), vec![int(3), int(-4), int(1)]);
        let b = m(&[&[0, 1, 0], &[0, 0, 1], &[6, -11, 6]]);
        assert_eq!(char_poly(&b), vec![int(-6), int(11), int(-6), int(1)]);
    }

    #[test]
    fn quadratic_field_solve() {
        let k = QuadField::new(-26).unwrap();
        let s = FieldElem::sqrt_d(k);
        let a = vec![vec![FieldElem::one(), s.clone()], vec![s.clone(), FieldElem::from_int(1)]];
        let x = vec![FieldElem::from_int(3), &s + &FieldElem::from_int(1)];
        let b = mat_vec(&a, &x);
        assert_eq!(solve(&a, &b).unwrap(), x);
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(entries in proptest::collection::vec(-4i64..5, 12)) {
            let a: Matrix<Rational> = entries.chunks(4).map(|r| r.iter().map(|&x| int(x)).collect()).collect();
            let ker = kernel(&a, 4);
            prop_assert_eq!(ker.len() + rank(&a), 4);
            for v in ker {
                prop_assert!(mat_vec(&a, &v).iter().all(Zero::is_zero));
            }
        }
    }
}
