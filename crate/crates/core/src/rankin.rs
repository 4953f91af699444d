//! Critical values of Rankin-Selberg convolutions: `D(m, f x g) / (pi^k <f,f>)`
//! from the holomorphic projection of `g delta^{(r)} E*`, and ratios of
//! successive completed L-values.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::BigInt;

use crate::arith::{archimedean_ratio_rational, dirichlet_ratio_rational, gamma_ratio, int, prime_divisors, DirichletCharacter, Rational};
use crate::eisenstein::eisenstein_star;
use crate::error::{Error, Result};
use crate::modforms::{express_in_basis, petersson_coefficient, SpaceBasis};
use crate::modsym::{lratio_table, ModularSymbolSpace};
use crate::nearlyhol::{delta_iter, holomorphic_projection, mul_form};
use crate::numfield::{FieldElem, QuadField};
use crate::qseries::QSeries;

/// An exact value `coeff * pi^pi_power`.
#[derive(Clone, Debug, PartialEq)]
pub struct PiMultiple {
    pub coeff: FieldElem,
    pub pi_power: i32,
}

impl PiMultiple {
    pub fn new(coeff: FieldElem, pi_power: i32) -> Self {
        PiMultiple { coeff, pi_power }
    }

    pub fn rational(r: Rational, pi_power: i32) -> Self {
        PiMultiple::new(FieldElem::rational(r), pi_power)
    }

    /// `(-2 pi i)^e` for even `e`.
    pub fn minus_two_pi_i(e: i32) -> Result<Self> {
        if e % 2 != 0 {
            return Err(Error::PiExponent(e));
        }
        // (-2i)^2 = -4
        let base = int(-4);
        let c = if e >= 0 {
            num_traits::pow(base, (e / 2) as usize)
        } else {
            num_traits::pow(base, (-e / 2) as usize).recip()
        };
        Ok(PiMultiple::rational(c, e))
    }

    pub fn mul(&self, other: &PiMultiple) -> PiMultiple {
        PiMultiple::new(&self.coeff * &other.coeff, self.pi_power + other.pi_power)
    }

    pub fn div(&self, other: &PiMultiple) -> Result<PiMultiple> {
        Ok(PiMultiple::new(self.coeff.checked_div(&other.coeff)?, self.pi_power - other.pi_power))
    }

    /// The coefficient, provided every power of `pi` has cancelled.
    pub fn exact(self) -> Result<FieldElem> {
        if self.pi_power != 0 {
            return Err(Error::PiExponent(self.pi_power));
        }
        Ok(self.coeff)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoints {
    pub all: RangeInclusive<i64>,
    /// Points strictly right of the center, where the algebraicity theorem applies.
    pub right: RangeInclusive<i64>,
}

pub fn critical_points(k: i64, l: i64) -> Result<CriticalPoints> {
    if l >= k {
        return Err(Error::InvalidArgument(format!("need l < k, got k = {k}, l = {l}")));
    }
    Ok(CriticalPoints {
        all: l..=k - 1,
        right: (k + l - 2).div_euclid(2) + 1..=k - 1,
    })
}

/// `Gamma(k-l-2r) / (Gamma(k-1-r) Gamma(k-l-r)) (-1)^r 4^{k-1} N/3 prod_{p|N} (1 + 1/p)`.
pub fn c_constant(k: i64, l: i64, r: i64, level: u64) -> Result<Rational> {
    if r < 0 || l + 2 * r >= k {
        return Err(Error::InvalidArgument(format!("c_r needs 0 <= r and l + 2r < k (k = {k}, l = {l}, r = {r})")));
    }
    let mut c = gamma_ratio(k - l - 2 * r, k - 1 - r)? * gamma_ratio(1, k - l - r)?;
    if r % 2 == 1 {
        c = -c;
    }
    c *= Rational::from_integer(BigInt::from(4).pow((k - 1) as u32));
    c *= Rational::new(BigInt::from(level), BigInt::from(3));
    for p in prime_divisors(level) {
        c *= Rational::new(BigInt::from(p + 1), BigInt::from(p));
    }
    Ok(c)
}

/// `f` is a labelled element of `basis` (weight `k`, level `N`); `g` has weight
/// `l` and character `psi`.
#[derive(Clone, Copy, Debug)]
pub struct RankinInput<'a> {
    pub basis: &'a SpaceBasis,
    pub f: &'a str,
    pub g: &'a QSeries,
    pub l: i64,
    pub psi: &'a DirichletCharacter,
}

/// Intermediate data of one run of the algorithm at a critical point.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    pub m: i64,
    pub r: i64,
    pub lambda: i64,
    pub h0: QSeries,
    /// Coordinates of `h0` in the basis.
    pub coeffs: Vec<FieldElem>,
    /// Label of `f_rho`, whose (Petersson-corrected) coefficient is `alpha`.
    pub rho_label: String,
    pub alpha: FieldElem,
    pub c: Rational,
}

impl Projection {
    pub fn value(&self) -> FieldElem {
        self.alpha.scale(&self.c)
    }
}

impl<'a> RankinInput<'a> {
    pub fn k(&self) -> i64 {
        self.basis.weight
    }

    pub fn level(&self) -> u64 {
        self.basis.level
    }

    /// `chi psi` as a character modulo the level.
    pub fn omega(&self) -> Result<DirichletCharacter> {
        let chi = &self.basis.get(self.f)?.character;
        Ok(chi.extend_to(self.level())?.mul(&self.psi.extend_to(self.level())?))
    }

    fn check_point(&self, m: i64) -> Result<()> {
        let range = critical_points(self.k(), self.l)?.right;
        if !range.contains(&m) {
            return Err(Error::InvalidArgument(format!(
                "m = {m} outside the range {}..={} right of the center",
                range.start(),
                range.end()
            )));
        }
        Ok(())
    }

    /// Label of `f_rho(z) = conj(f(-conj z))`: `f` itself for real coefficients,
    /// the Galois conjugate for an imaginary quadratic coefficient field.
    pub fn rho_label(&self) -> Result<String> {
        match self.basis.get(self.f)?.series.field() {
            QuadField::Sqrt(d) if d.is_negative() => self.basis.conjugate_label(self.f),
            _ => Ok(self.f.to_string()),
        }
    }

    pub fn project(&self, m: i64) -> Result<Projection> {
        self.check_point(m)?;
        let k = self.k();
        let r = k - 1 - m;
        let lambda = k - self.l - 2 * r;
        let prec = self.basis.prec().min(self.g.prec());
        let e = eisenstein_star(lambda, self.level(), &self.omega()?, prec)?;
        let f = mul_form(self.g, self.l, &delta_iter(lambda, r as usize, &e)?)?;
        let hs = holomorphic_projection(&f, k, f.degree())?;
        let h0 = hs.into_iter().next().expect("projection has a holomorphic part");
        let coeffs = express_in_basis(&h0, self.basis)?;
        let rho_label = self.rho_label()?;
        let alpha = petersson_coefficient(&coeffs, self.basis, &rho_label)?;
        Ok(Projection {
            m,
            r,
            lambda,
            h0,
            coeffs,
            rho_label,
            alpha,
            c: c_constant(k, self.l, r, self.level())?,
        })
    }

    /// `D(m, f x g) / (pi^k <f, f>)`.
    pub fn normalized_d(&self, m: i64) -> Result<FieldElem> {
        Ok(self.project(m)?.value())
    }

    /// `D(m, f x g) / D(m + 1, f x g)`.
    pub fn d_ratio(&self, m: i64) -> Result<FieldElem> {
        let num = self.normalized_d(m)?;
        let den = self.normalized_d(m + 1)?;
        num.checked_div(&den)
    }

    /// `L(m, f x g) / L(m + 1, f x g)` for the completed L-function.
    pub fn completed_ratio(&self, m: i64) -> Result<FieldElem> {
        let common = common_factor(self.k(), self.l, m, &self.omega()?)?;
        let d = PiMultiple::new(self.d_ratio(m)?, 0);
        common.mul(&d).exact()
    }
}

/// `L_inf(m) L_N(2m+2-k-l) / (L_inf(m+1) L_N(2m+4-k-l))`, depending only on
/// weights and the character.
pub fn common_factor(k: i64, l: i64, m: i64, omega: &DirichletCharacter) -> Result<PiMultiple> {
    let arch = PiMultiple::rational(archimedean_ratio_rational(m, l)?, 2);
    let abel = PiMultiple::rational(dirichlet_ratio_rational(2 * m + 2 - k - l, omega)?, -2);
    Ok(arch.mul(&abel))
}

/// Normalized standard L-values `D(j, f)` as multiples of `D(1, f)` (odd `j`)
/// or `D(2, f)` (even `j`), keyed by `j`.
#[derive(Clone, Debug)]
pub struct StandardTable {
    pub k: i64,
    values: BTreeMap<usize, FieldElem>,
}

impl StandardTable {
    pub fn new(space: &ModularSymbolSpace, p: u64, ap: &FieldElem) -> Result<Self> {
        Ok(StandardTable {
            k: space.k as i64,
            values: lratio_table(space, p, ap)?,
        })
    }

    /// `D(j, f)` as `value * (-2 pi i)^e * D(1 or 2, f)`.
    fn d(&self, j: i64) -> Result<(FieldElem, i32)> {
        let v = usize::try_from(j)
            .ok()
            .and_then(|j| self.values.get(&j))
            .ok_or_else(|| Error::InvalidArgument(format!("D({j}, f) is not a critical value")))?;
        let e = if j % 2 == 1 { j - 1 } else { j - 2 };
        Ok((v.clone(), e as i32))
    }
}

/// `L(m, f x E_l) / L(m + 1, f x E_l)` for a level-one eigenform `f` and the
/// Eisenstein series with `a(n) = sigma_{l-1}(n)`, through
/// `D(s, f x E_l) = D(s, f) D(s-l+1, f) / zeta(2s+2-k-l)`.
pub fn completed_ratio_eisenstein(table: &StandardTable, l: i64, m: i64) -> Result<FieldElem> {
    let k = table.k;
    if l % 2 != 0 || m - l + 1 < 1 || m + 1 > k - 1 || 2 * m + 2 - k - l < 2 {
        return Err(Error::InvalidArgument(format!("m = {m} outside the Eisenstein product range")));
    }
    let (a, ea) = table.d(m)?;
    let (b, eb) = table.d(m - l + 1)?;
    let (c, ec) = table.d(m + 1)?;
    let (d, ed) = table.d(m - l + 2)?;
    // D(1, f) and D(2, f) each occur once above and once below the line
    let values = (&a * &b).checked_div(&(&c * &d))?;
    let d_ratio = PiMultiple::new(values, 0).mul(&PiMultiple::minus_two_pi_i(ea + eb - ec - ed)?);
    let triv = DirichletCharacter::trivial(1);
    // zeta(2m+4-k-l) / zeta(2m+2-k-l)
    let s = 2 * m + 2 - k - l;
    let zeta = PiMultiple::rational(dirichlet_ratio_rational(s, &triv)?.recip(), 2);
    let common = common_factor(k, l, m, &triv)?;
    common.mul(&zeta).mul(&d_ratio).exact()
}

/// The rational value of a common factor, after checking the powers of `pi` cancel.
pub fn common_factor_rational(k: i64, l: i64, m: i64, omega: &DirichletCharacter) -> Result<Rational> {
    common_factor(k, l, m, omega)?
        .exact()?
        .to_rational()
        .ok_or_else(|| Error::InvalidArgument("irrational common factor".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn critical_ranges() {
        let c = critical_points(24, 12).unwrap();
        assert_eq!((c.all, c.right), (12..=23, 18..=23));
        assert_eq!(critical_points(13, 6).unwrap().all, 6..=12);
        assert_eq!(critical_points(13, 6).unwrap().right, 9..=12);
        assert_eq!(critical_points(7, 6).unwrap().all, 6..=6);
        assert!(critical_points(12, 12).is_err());
    }

    #[test]
    fn c_constants() {
        let four = |e: u32| Rational::from_integer(BigInt::from(4).pow(e));
        let fact = |n: u64| Rational::from_integer(crate::arith::factorial(n));
        assert_eq!(c_constant(24, 12, 0, 1).unwrap(), four(23) / (int(3) * fact(22)));
        assert_eq!(
            c_constant(24, 12, 1, 1).unwrap(),
            -four(23) * fact(9) / (int(3) * fact(21) * fact(10))
        );
        assert_eq!(c_constant(13, 6, 0, 3).unwrap(), four(12) * int(4) / (int(3) * fact(11)));
        assert!(c_constant(24, 12, 6, 1).is_err());
    }

    #[test]
    fn pi_bookkeeping() {
        assert_eq!(common_factor_rational(24, 12, 22, &DirichletCharacter::trivial(1)).unwrap(), rat(13650, 83611));
        let psi = DirichletCharacter::legendre(3).unwrap();
        assert_eq!(common_factor_rational(26, 13, 24, &psi).unwrap(), rat(60951, 444808));
        assert_eq!(PiMultiple::minus_two_pi_i(-2).unwrap(), PiMultiple::rational(rat(-1, 4), -2));
        assert_eq!(PiMultiple::minus_two_pi_i(3), Err(Error::PiExponent(3)));
        assert_eq!(PiMultiple::rational(int(1), 2).exact(), Err(Error::PiExponent(2)));
    }
}
