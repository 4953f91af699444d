//! Univariate polynomials over `Q` (coefficient vectors, constant term first)
//! and factorization of monic integer polynomials of small degree.
//!
//! Candidate factors come from floating-point roots; every factor is then
//! confirmed by exact division, so the result never depends on rounding.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::numfield::{FieldElem, QuadField};

pub type Poly = Vec<Rational>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(Rational::zero());
    }
    p
}

pub fn degree(p: &Poly) -> usize {
    trim(p.clone()).len() - 1
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Quotient and remainder of `a / b`, `b` nonzero.
pub fn divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let b = trim(b.clone());
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut r = trim(a.clone());
    if r.len() < b.len() {
        return (vec![Rational::zero()], r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
        if r.len() < b.len() {
            break;
        }
    }
    (trim(q), r)
}

pub fn derivative(p: &Poly) -> Poly {
    if p.len() <= 1 {
        return vec![Rational::zero()];
    }
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
}

pub fn monic(p: &Poly) -> Poly {
    let p = trim(p.clone());
    let lead = p.last().unwrap().clone();
    p.iter().map(|c| c / &lead).collect()
}

pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let mut x = trim(a.clone());
    let mut y = trim(b.clone());
    while !(y.len() == 1 && y[0].is_zero()) {
        let (_, r) = divmod(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

pub fn eval(p: &Poly, x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Evaluates `p` at a square matrix.
pub fn eval_matrix(p: &Poly, a: &crate::linalg::Matrix<Rational>) -> crate::linalg::Matrix<Rational> {
    use crate::linalg::mat_mul;
    let n = a.len();
    let mut acc: crate::linalg::Matrix<Rational> = vec![vec![Rational::zero(); n]; n];
    for c in p.iter().rev() {
        acc = mat_mul(&acc, a);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += c;
        }
    }
    acc
}

fn to_complex_coeffs(p: &Poly) -> Vec<Complex64> {
    p.iter().map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)).collect()
}

/// All complex roots of a squarefree polynomial by Aberth iteration.
fn numeric_roots(p: &Poly) -> Vec<Complex64> {
    let p = monic(p);
    let n = p.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let c = to_complex_coeffs(&p);
    let dc: Vec<Complex64> = (1..=n).map(|i| c[i] * i as f64).collect();
    let horner = |cs: &[Complex64], z: Complex64| cs.iter().rev().fold(Complex64::new(0.0, 0.0), |a, &x| a * z + x);
    // Cauchy bound for the starting circle.
    let radius = 1.0 + c[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64))
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let ratio = horner(&c, z[i]) / horner(&dc, z[i]);
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[i] -= step;
            moved = moved.max(step.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn round_real_poly(roots: &[Complex64]) -> Option<Poly> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        coeffs = next;
    }
    let mut out = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        let scale = 1.0 + c.re.abs();
        if c.im.abs() > 1e-6 * scale || (c.re - c.re.round()).abs() > 1e-4 * scale.max(1.0).sqrt() {
            return None;
        }
        out.push(Rational::from_integer(BigInt::from(c.re.round() as i128)));
    }
    Some(out)
}

fn is_integral(p: &Poly) -> bool {
    p.iter().all(|c| c.is_integer())
}

/// Irreducible monic factors over `Q` with multiplicity. The input must be a
/// monic polynomial with integer coefficients.
pub fn factor(p: &Poly) -> Result<Vec<(Poly, usize)>> {
    let p = trim(p.clone());
    if !p.last().is_some_and(One::is_one) || !is_integral(&p) {
        return Err(Error::InvalidArgument("factor expects a monic integer polynomial".into()));
    }
    let squarefree = monic(&divmod(&p, &gcd(&p, &derivative(&p))).0);
    let mut remaining = squarefree;
    let mut roots = numeric_roots(&remaining);
    let mut factors: Vec<Poly> = Vec::new();
    let mut size = 1;
    while degree(&remaining) > 0 {
        if size > roots.len() {
            return Err(Error::AmbiguousEigensystem("numeric factor search failed".into()));
        }
        let mut found = None;
        for subset in subsets(roots.len(), size) {
            let chosen: Vec<Complex64> = subset.iter().map(|&i| roots[i]).collect();
            let Some(cand) = round_real_poly(&chosen) else { continue };
            let (q, r) = divmod(&remaining, &cand);
            if r.iter().all(Zero::is_zero) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                factors.push(cand);
                remaining = q;
                roots = roots
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, z)| *z)
                    .collect();
            }
            None => size += 1,
        }
    }
    let mut out = Vec::new();
    for f in factors {
        let mut mult = 0;
        let mut rest = p.clone();
        loop {
            let (q, r) = divmod(&rest, &f);
            if !r.iter().all(Zero::is_zero) {
                break;
            }
            mult += 1;
            rest = q;
        }
        out.push((f, mult));
    }
    out.sort_by(|a, b| degree(&a.0).cmp(&degree(&b.0)).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `n = d * s^2` with `d` squarefree (sign kept on `d`).
pub fn squarefree_decomposition(n: &BigInt) -> (BigInt, BigInt) {
    let mut d = BigInt::one();
    let mut s = BigInt::one();
    let mut m = n.abs();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= &p;
        }
        p += 1;
    }
    d *= m;
    if n.is_negative() {
        d = -d;
    }
    (d, s)
}

/// Roots of a monic quadratic `x^2 + b x + c` in `Q(sqrt d)`, `+sqrt` root first.
pub fn quadratic_roots(p: &Poly) -> Result<(FieldElem, FieldElem)> {
    if degree(p) != 2 {
        return Err(Error::InvalidArgument("quadratic_roots needs degree 2".into()));
    }
    let p = monic(p);
    let (b, c) = (&p[1], &p[0]);
    let disc = b * b - int(4) * c;
    // disc = num/den with den a square after scaling: num*den / den^2
    let scaled = disc.numer() * disc.denom();
    let (d, s) = squarefree_decomposition(&scaled);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let a = -b * &half;
    if d.is_one() {
        let root = Rational::new(s, disc.denom().clone()) * &half;
        return Ok((FieldElem::rational(&a + &root), FieldElem::rational(&a - &root)));
    }
    let field = QuadField::new(d.to_i64().ok_or_else(|| Error::Unsupported("discriminant too large".into()))?)?;
    let coef = Rational::new(s, disc.denom().clone()) * &half;
    Ok((
        FieldElem::new(field, a.clone(), coef.clone()),
        FieldElem::new(field, a, -coef),
    ))
}

/// The monic minimal polynomial over `Q` of a field element.
pub fn minimal_polynomial(x: &FieldElem) -> Poly {
    if x.is_rational() {
        vec![-x.a().clone(), Rational::one()]
    } else {
        vec![x.norm(), -x.trace(), Rational::one()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        cs.iter().map(|&c| int(c)).collect()
    }

    #[test]
    fn division_and_gcd() {
        let a = mul(&p(&[-1, 1]), &p(&[2, 0, 1]));
        let (q, r) = divmod(&a, &p(&[2, 0, 1]));
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.iter().all(Zero::is_zero));
        assert_eq!(gcd(&a, &p(&[-1, 1])), p(&[-1, 1]));
    }

    #[test]
    fn factor_with_repeated_and_quadratic_factors() {
        let beta = p(&[-20468736, -1080, 1]);
        let lin = p(&[48, 1]);
        let cubic = p(&[-1, -1, 0, 1]);
        let all = mul(&mul(&mul(&lin, &lin), &beta), &cubic);
        let f = factor(&all).unwrap();
        assert_eq!(f, vec![(lin, 2), (beta, 1), (cubic, 1)]);
    }

    #[test]
    fn quadratic_roots_in_field() {
        let (r1, r2) = quadratic_roots(&p(&[-20468736, -1080, 1])).unwrap();
        assert_eq!(r1.field(), QuadField::new(144169).unwrap());
        assert_eq!(r1.a(), &int(540));
        assert_eq!(r1.b(), &int(12));
        assert_eq!(r2, r1.conj());
        let (s1, _) = quadratic_roots(&p(&[8424, 0, 1])).unwrap();
        assert_eq!(s1, QuadField::sqrt_of(-8424).unwrap());
        let (t1, t2) = quadratic_roots(&p(&[6, -5, 1])).unwrap();
        assert_eq!((t1, t2), (FieldElem::from_int(3), FieldElem::from_int(2)));
        assert_eq!(minimal_polynomial(&r1), p(&[-20468736, -1080, 1]));
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(
            squarefree_decomposition(&BigInt::from(1892929536i64)),
            (BigInt::from(51349), BigInt::from(192))
        );
        assert_eq!(squarefree_decomposition(&BigInt::from(-8424)), (BigInt::from(-26), BigInt::from(18)));
    }
}
