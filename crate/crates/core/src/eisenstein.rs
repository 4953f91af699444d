//! q-expansions of the normalized Eisenstein series `E*_{lambda,N}(z, w)` at
//! `s = 0`, plus a floating-point lattice-sum check of the normalization.

use num_complex::Complex64;

use crate::arith::{bernoulli, generalized_bernoulli, int, DirichletCharacter, Rational};
use crate::error::{Error, Result};
use crate::nearlyhol::NearlyHoloForm;
use crate::qseries::QSeries;

/// `sum_{d | n} w(d) d^{e}` for `n >= 1`.
pub fn twisted_divisor_sum(n: u64, e: u32, omega: &DirichletCharacter) -> num_bigint::BigInt {
    let mut acc = num_bigint::BigInt::from(0);
    for d in 1..=n {
        if n % d == 0 {
            let v = omega.value(d as i64);
            if v != 0 {
                acc += num_bigint::BigInt::from(d).pow(e) * v;
            }
        }
    }
    acc
}

/// `L(1 - lambda, w) = -B_{lambda,w} / lambda`.
fn l_value_at_one_minus(lambda: i64, omega: &DirichletCharacter) -> Rational {
    -generalized_bernoulli(lambda as usize, omega) / int(lambda)
}

/// `E*_{lambda,N}(z, w)` at `s = 0` to `prec` coefficients.
///
/// For `lambda = 2`, `N = 1` the series is not holomorphic and carries the
/// term `-12 w` with `w = 1/(4 pi y)`.
pub fn eisenstein_star(
    lambda: i64,
    level: u64,
    omega: &DirichletCharacter,
    prec: usize,
) -> Result<NearlyHoloForm> {
    if lambda < 1 {
        return Err(Error::InvalidArgument(format!("Eisenstein weight {lambda} < 1")));
    }
    if omega.modulus() != level {
        return Err(Error::InvalidArgument(format!(
            "character modulus {} differs from level {level}",
            omega.modulus()
        )));
    }
    if i64::from(omega.parity()) != lambda.rem_euclid(2) {
        return Err(Error::InvalidArgument(format!(
            "character parity {} does not match weight {lambda}",
            omega.parity()
        )));
    }
    if !omega.is_primitive() {
        return Err(Error::Unsupported("Eisenstein series for an imprimitive character".into()));
    }
    if lambda == 2 && level > 1 {
        return Err(Error::Unsupported("weight-2 Eisenstein series above level 1".into()));
    }
    let scale = int(2) / l_value_at_one_minus(lambda, omega);
    let mut coeffs = Vec::with_capacity(prec);
    for n in 0..prec {
        if n == 0 {
            coeffs.push(int(1));
        } else {
            let s = twisted_divisor_sum(n as u64, (lambda - 1) as u32, omega);
            coeffs.push(&scale * Rational::from_integer(s));
        }
    }
    let holo = QSeries::from_rationals(coeffs).truncate(prec);
    if lambda == 2 {
        // E*_2 = -12/(4 pi y) + 1 - 24 sum sigma_1(n) q^n
        let w_layer = QSeries::constant(crate::numfield::FieldElem::from_int(-12), prec);
        return NearlyHoloForm::new(2, vec![holo, w_layer]);
    }
    Ok(NearlyHoloForm::holomorphic(lambda, holo))
}

/// Level-one Eisenstein series with constant term `-B_k/(2k)` and `q^n`
/// coefficient `sigma_{k-1}(n)`.
pub fn eisenstein_classical(k: i64, prec: usize) -> Result<QSeries> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::InvalidArgument(format!("classical Eisenstein series of weight {k}")));
    }
    let triv = DirichletCharacter::trivial(1);
    let mut coeffs = vec![-bernoulli(k as usize) / int(2 * k)];
    for n in 1..prec {
        coeffs.push(Rational::from_integer(twisted_divisor_sum(n as u64, (k - 1) as u32, &triv)));
    }
    coeffs.truncate(prec);
    Ok(QSeries::from_rationals(coeffs))
}

/// Truncated `L(lambda, w) = sum w(n) n^-lambda` in floating point.
pub fn dirichlet_l_numeric(lambda: i64, omega: &DirichletCharacter, terms: u64) -> f64 {
    (1..=terms)
        .map(|n| f64::from(omega.value(n as i64)) * (n as f64).powi(-(lambda as i32)))
        .sum()
}

/// `sum' w(d) (c z + d)^-lambda` over the box `|c|, |d| <= bound` with `N | c`.
pub fn lattice_sum(lambda: i64, level: u64, omega: &DirichletCharacter, z: Complex64, bound: i64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let n = level as i64;
    for c in -bound..=bound {
        if c % n != 0 {
            continue;
        }
        for d in -bound..=bound {
            if c == 0 && d == 0 {
                continue;
            }
            let v = omega.value(d);
            if v == 0 {
                continue;
            }
            let t = Complex64::new(c as f64, 0.0) * z + Complex64::new(d as f64, 0.0);
            acc += t.powi(-(lambda as i32)) * f64::from(v);
        }
    }
    acc
}

/// Error between `2 L(lambda, w) E*(iy)` from the q-expansion and the lattice
/// sum at `z = iy`, relative to the constant term `2 L(lambda, w)`.
///
/// The scale is the constant term rather than the value itself because level
/// one forms of weight `2 mod 4` vanish at `z = i`. Holomorphic weights only.
pub fn lattice_oracle_error(
    lambda: i64,
    level: u64,
    omega: &DirichletCharacter,
    y: f64,
    bound: i64,
) -> Result<f64> {
    if lambda < 3 {
        return Err(Error::Unsupported("lattice oracle needs absolute convergence".into()));
    }
    let form = eisenstein_star(lambda, level, omega, 30)?;
    let q = (-2.0 * std::f64::consts::PI * y).exp();
    let series = form
        .holomorphic_part()
        .eval_f64(q)
        .ok_or_else(|| Error::InvalidArgument("non-rational Eisenstein series".into()))?;
    let scale = 2.0 * dirichlet_l_numeric(lambda, omega, 200_000);
    let got = lattice_sum(lambda, level, omega, Complex64::new(0.0, y), bound);
    Ok((got - Complex64::new(scale * series, 0.0)).norm() / scale.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn coeff(f: &QSeries, n: usize) -> Rational {
        f.coefficient(n).unwrap().to_rational().unwrap()
    }

    #[test]
    fn weight_twelve_and_ten() {
        let triv = DirichletCharacter::trivial(1);
        let e12 = eisenstein_star(12, 1, &triv, 5).unwrap();
        let h = e12.holomorphic_part();
        assert_eq!(coeff(h, 1), rat(65520, 691));
        assert_eq!(coeff(h, 2), rat(134250480, 691));
        assert_eq!(coeff(h, 3), rat(11606736960, 691));
        let e10 = eisenstein_star(10, 1, &triv, 6).unwrap();
        let got: Vec<_> = (1..6).map(|n| coeff(e10.holomorphic_part(), n)).collect();
        let want: Vec<_> = [-264, -135432, -5196576, -69341448, -515625264].iter().map(|&x| int(x)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn weight_two_has_w_term() {
        let e2 = eisenstein_star(2, 1, &DirichletCharacter::trivial(1), 3).unwrap();
        assert_eq!(e2.degree(), 1);
        assert_eq!(e2.layer(1).unwrap(), &QSeries::from_ints(&[-12, 0, 0]));
        assert_eq!(e2.holomorphic_part(), &QSeries::from_ints(&[1, -24, -72]));
    }

    #[test]
    fn weight_one_level_three() {
        let psi = DirichletCharacter::legendre(3).unwrap();
        let e = eisenstein_star(1, 3, &psi, 8).unwrap();
        assert_eq!(e.holomorphic_part(), &QSeries::from_ints(&[1, 6, 0, 6, 6, 0, 0, 12]));
        assert!(eisenstein_star(2, 3, &psi, 4).is_err());
        assert!(eisenstein_star(2, 1, &DirichletCharacter::trivial(1), 4).is_ok());
        assert!(matches!(
            eisenstein_star(3, 3, &DirichletCharacter::trivial(3), 4),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn level_one_matches_classical_eisenstein() {
        let triv = DirichletCharacter::trivial(1);
        for k in [4i64, 6, 8, 12] {
            let star = eisenstein_star(k, 1, &triv, 10).unwrap();
            let classical = eisenstein_classical(k, 10).unwrap();
            let c0 = coeff(&classical, 0);
            assert_eq!(star.holomorphic_part(), &classical.scale_rational(&(int(1) / c0)));
        }
        assert_eq!(coeff(&eisenstein_classical(12, 2).unwrap(), 0), rat(691, 65520));
    }

    #[test]
    fn lattice_sum_agrees() {
        let triv = DirichletCharacter::trivial(1);
        let psi = DirichletCharacter::legendre(3).unwrap();
        for (lambda, level, omega) in [(10, 1, &triv), (12, 1, &triv), (5, 3, &psi)] {
            for y in [1.0, 1.25] {
                let err = lattice_oracle_error(lambda, level, omega, y, 400).unwrap();
                assert!(err < 1e-6, "relative error {err} at weight {lambda}, y = {y}");
            }
        }
    }
}
