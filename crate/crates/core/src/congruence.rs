//! Congruences: Sturm-bound checks between q-expansions, and congruence
//! reports for ratios of successive completed Rankin-Selberg L-values.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{int, DirichletCharacter, Rational};
use crate::data::bundled_space;
use crate::error::{Error, Result};
use crate::modforms::SpaceBasis;
use crate::modsym::build_space;
use crate::numfield::{primes_above, rational_str, valuation, FieldElem, PrimeIdealRef};
use crate::qseries::QSeries;
use crate::rankin::{common_factor_rational, completed_ratio_eisenstein, RankinInput, StandardTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Group {
    Gamma0,
    Gamma1,
}

/// Index of `Gamma_0(N)` or `Gamma_1(N)` in `SL_2(Z)`, with `Gamma_1(2)` given index 3.
pub fn group_index(level: u64, group: Group) -> Rational {
    let primes = crate::arith::prime_divisors(level);
    let n = int(level as i64);
    match group {
        Group::Gamma0 => primes
            .iter()
            .fold(n, |acc, &p| acc * (int(1) + Rational::new(1.into(), BigInt::from(p)))),
        Group::Gamma1 => match level {
            1 => int(1),
            2 => int(3),
            _ => primes.iter().fold(&n * &n, |acc, &p| {
                acc * (int(1) - Rational::new(1.into(), BigInt::from(p * p)))
            }),
        },
    }
}

/// `k m / 12 - (m - 1) / N` for a cuspidal difference, `k m / 12` otherwise.
pub fn sturm_bound(k: i64, level: u64, group: Group, cuspidal_difference: bool) -> Rational {
    let m = group_index(level, group);
    let bound = int(k) * &m / int(12);
    if cuspidal_difference {
        bound - (m - int(1)) / int(level as i64)
    } else {
        bound
    }
}

/// `v_P(x)`, with `None` for `x = 0` (infinite valuation).
pub fn valuation_or_infinite(x: &FieldElem, ideal: &PrimeIdealRef) -> Result<Option<i64>> {
    if x.is_zero() {
        return Ok(None);
    }
    valuation(x, ideal).map(Some)
}

/// Whether `a(n, f) = a(n, g) (mod P)` for every `n` up to the Sturm bound.
/// The difference is treated as cuspidal when both constant terms vanish.
pub fn check_form_congruence(f: &QSeries, g: &QSeries, ideal: &PrimeIdealRef, k: i64, level: u64, group: Group) -> Result<bool> {
    Ok(form_congruence_detail(f, g, ideal, k, level, group)?.congruent)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormCongruence {
    #[serde(with = "rational_str")]
    pub bound: Rational,
    /// `v_P(a(n, f) - a(n, g))` for `n = 0..=floor(bound)`; `None` is infinite.
    pub valuations: Vec<Option<i64>>,
    pub congruent: bool,
}

pub fn form_congruence_detail(
    f: &QSeries,
    g: &QSeries,
    ideal: &PrimeIdealRef,
    k: i64,
    level: u64,
    group: Group,
) -> Result<FormCongruence> {
    let cuspidal = f.coefficient(0)?.is_zero() && g.coefficient(0)?.is_zero();
    let bound = sturm_bound(k, level, group, cuspidal);
    let last = bound.floor().to_integer();
    let last = usize::try_from(last).unwrap_or(0);
    let have = f.prec().min(g.prec());
    if have <= last {
        return Err(Error::InsufficientPrecision { needed: last + 1, have });
    }
    let valuations = (0..=last)
        .map(|n| valuation_or_infinite(&(f.coefficient(n)? - g.coefficient(n)?), ideal))
        .collect::<Result<Vec<_>>>()?;
    let congruent = valuations.iter().all(|v| v.map_or(true, |v| v >= 1));
    Ok(FormCongruence {
        bound,
        valuations,
        congruent,
    })
}

/// `v_P` of the common factor `L_inf(m) L_N(2m+2-k-l) / (L_inf(m+1) L_N(2m+4-k-l))`.
pub fn hypothesis_valuation(k: i64, l: i64, m: i64, omega: &DirichletCharacter, ideal: &PrimeIdealRef) -> Result<i64> {
    let c = common_factor_rational(k, l, m, omega)?;
    valuation(&FieldElem::rational(c), ideal)
}

pub fn hypothesis_check(k: i64, l: i64, m: i64, omega: &DirichletCharacter, ideal: &PrimeIdealRef) -> Result<bool> {
    Ok(hypothesis_valuation(k, l, m, omega, ideal)? >= 0)
}

/// One side of a comparison: a way to produce completed L-value ratios.
pub trait RatioSource: Sync {
    fn completed_ratio(&self, m: i64) -> Result<FieldElem>;
    /// The rational factor relating completed and `D` ratios.
    fn common_factor(&self, m: i64) -> Result<Rational>;
    fn d_ratio(&self, m: i64) -> Result<FieldElem> {
        self.completed_ratio(m)?
            .checked_div(&FieldElem::rational(self.common_factor(m)?))
    }
}

impl RatioSource for RankinInput<'_> {
    fn completed_ratio(&self, m: i64) -> Result<FieldElem> {
        RankinInput::completed_ratio(self, m)
    }

    fn common_factor(&self, m: i64) -> Result<Rational> {
        common_factor_rational(self.k(), self.l, m, &self.omega()?)
    }

    fn d_ratio(&self, m: i64) -> Result<FieldElem> {
        RankinInput::d_ratio(self, m)
    }
}

/// `f x E_l` through the standard L-function of `f`.
pub struct EisensteinSource<'a> {
    pub table: &'a StandardTable,
    pub l: i64,
}

impl RatioSource for EisensteinSource<'_> {
    fn completed_ratio(&self, m: i64) -> Result<FieldElem> {
        completed_ratio_eisenstein(self.table, self.l, m)
    }

    fn common_factor(&self, m: i64) -> Result<Rational> {
        common_factor_rational(self.table.k, self.l, m, &DirichletCharacter::trivial(1))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdealValuation {
    pub ideal: PrimeIdealRef,
    /// `None` when the difference is zero.
    pub valuation: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub m: i64,
    pub ratio_left: FieldElem,
    pub ratio_right: FieldElem,
    pub difference: FieldElem,
    pub valuations: Vec<IdealValuation>,
    #[serde(with = "rational_str")]
    pub common_factor: Rational,
    pub hypothesis_ok: bool,
    pub congruent: bool,
    pub d_ratio_left: FieldElem,
    pub d_ratio_right: FieldElem,
    pub d_valuations: Vec<IdealValuation>,
}

impl RatioReport {
    /// Valuation of the completed-ratio difference at the first designated ideal.
    pub fn valuation(&self) -> Option<i64> {
        self.valuations.first().and_then(|v| v.valuation)
    }

    pub fn d_valuation(&self) -> Option<i64> {
        self.d_valuations.first().and_then(|v| v.valuation)
    }
}

fn valuations_at(x: &FieldElem, ideals: &[PrimeIdealRef]) -> Result<Vec<IdealValuation>> {
    ideals
        .iter()
        .map(|i| {
            Ok(IdealValuation {
                ideal: i.clone(),
                valuation: valuation_or_infinite(x, i)?,
            })
        })
        .collect()
}

/// Compares the two sides at `m`; congruent means valuation at least 1 at
/// every designated ideal.
pub fn ratio_congruence_report(
    left: &dyn RatioSource,
    right: &dyn RatioSource,
    m: i64,
    ideals: &[PrimeIdealRef],
) -> Result<RatioReport> {
    if ideals.is_empty() {
        return Err(Error::InvalidArgument("no designated ideal".into()));
    }
    let ratio_left = left.completed_ratio(m)?;
    let ratio_right = right.completed_ratio(m)?;
    let difference = &ratio_left - &ratio_right;
    let valuations = valuations_at(&difference, ideals)?;
    let common_factor = left.common_factor(m)?;
    if common_factor != right.common_factor(m)? {
        return Err(Error::InvalidArgument(format!("the two sides have different common factors at m = {m}")));
    }
    let c = FieldElem::rational(common_factor.clone());
    let hypothesis_ok = ideals
        .iter()
        .map(|i| valuation(&c, i))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(|&v| v >= 0);
    let congruent = valuations.iter().all(|v| v.valuation.map_or(true, |v| v >= 1));
    let d_ratio_left = left.d_ratio(m)?;
    let d_ratio_right = right.d_ratio(m)?;
    let d_valuations = valuations_at(&(&d_ratio_left - &d_ratio_right), ideals)?;
    Ok(RatioReport {
        m,
        ratio_left,
        ratio_right,
        difference,
        valuations,
        common_factor,
        hypothesis_ok,
        congruent,
        d_ratio_left,
        d_ratio_right,
        d_valuations,
    })
}

/// The expected outcome at one critical point of an example: the verdict for
/// completed ratios, the exponent of the designated ideal in their difference
/// (when known), and the verdict for `D` ratios.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub m: i64,
    pub congruent: bool,
    pub valuation: Option<i64>,
    pub d_congruent: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Example {
    pub id: u32,
    pub title: String,
    pub ideals: Vec<PrimeIdealRef>,
    pub expectations: Vec<Expectation>,
}

fn congruent_range(ms: std::ops::RangeInclusive<i64>) -> Vec<Expectation> {
    ms.map(|m| Expectation {
        m,
        congruent: true,
        valuation: None,
        d_congruent: None,
    })
    .collect()
}

fn with_valuation(mut e: Vec<Expectation>, m: i64, v: i64) -> Vec<Expectation> {
    for x in e.iter_mut().filter(|x| x.m == m) {
        x.valuation = Some(v);
    }
    e
}

fn field_of(space: &str, label: &str) -> Result<crate::numfield::QuadField> {
    Ok(bundled_space(space)?.get(label)?.series.field())
}

pub fn example(id: u32) -> Result<Example> {
    let (title, ideals, expectations) = match id {
        1 => {
            let ideals = primes_above(144169, field_of("level1_weight24", "f1")?)?;
            let e = (18..=22).fold(congruent_range(18..=22), |e, m| with_valuation(e, m, 1));
            ("S_24(1) x S_12(1): f1, f2 against Delta", ideals, e)
        }
        2 => {
            let ideals = primes_above(51349, field_of("level1_weight30", "f1")?)?;
            ("S_30(1) x S_12(1): f1, f2 against Delta", ideals, congruent_range(21..=28))
        }
        3 => {
            let ideals = primes_above(13, field_of("level3_weight13", "f2")?)?;
            let e = with_valuation(congruent_range(9..=11), 11, 1);
            ("S_13(3, chi) x S_6(3): f1, f2 against g", ideals, e)
        }
        4 => {
            let ideals = primes_above(13, field_of("level3_weight13", "f2")?)?;
            let mut e = congruent_range(19..=23);
            e.push(Expectation {
                m: 24,
                congruent: false,
                valuation: Some(-2),
                d_congruent: Some(true),
            });
            ("S_26(1) x S_13(3, psi): f against g1, g2", ideals, e)
        }
        5 => {
            let ideals = primes_above(691, field_of("level1_weight24", "f1")?)?;
            ("S_24(1) x M_12(1): f against Delta, E_12", ideals, congruent_range(18..=22))
        }
        _ => return Err(Error::InvalidArgument(format!("no example {id}; examples are 1..=5"))),
    };
    Ok(Example {
        id,
        title: title.to_string(),
        ideals,
        expectations,
    })
}

fn reports(left: &dyn RatioSource, right: &dyn RatioSource, ex: &Example) -> Result<Vec<RatioReport>> {
    ex.expectations
        .par_iter()
        .map(|e| ratio_congruence_report(left, right, e.m, &ex.ideals))
        .collect()
}

/// Runs an example over its full range of critical points, in order of `m`.
pub fn example_suite(id: u32) -> Result<Vec<RatioReport>> {
    example_suite_with(id, &bundled_space)
}

/// As [`example_suite`], reading each space by its manifest name from `spaces`.
pub fn example_suite_with(id: u32, spaces: &dyn Fn(&str) -> Result<SpaceBasis>) -> Result<Vec<RatioReport>> {
    let ex = example(id)?;
    let triv = DirichletCharacter::trivial(1);
    match id {
        1 | 2 => {
            let basis = spaces(if id == 1 { "level1_weight24" } else { "level1_weight30" })?;
            let delta = spaces("level1_weight12")?.get("delta")?.series.clone();
            let left = RankinInput { basis: &basis, f: "f1", g: &delta, l: 12, psi: &triv };
            let right = RankinInput { f: "f2", ..left };
            reports(&left, &right, &ex)
        }
        3 => {
            let basis = spaces("level3_weight13")?;
            let g6 = spaces("level3_weight6")?;
            let g = g6.get("g")?;
            let left = RankinInput { basis: &basis, f: "f1", g: &g.series, l: 6, psi: &g.character };
            let right = RankinInput { f: "f2", ..left };
            reports(&left, &right, &ex)
        }
        4 => {
            let basis = spaces("level3_weight26")?;
            let w13 = spaces("level3_weight13")?;
            let (g1, g2) = (w13.get("f1")?, w13.get("f2")?);
            let left = RankinInput { basis: &basis, f: "f", g: &g1.series, l: 13, psi: &g1.character };
            let right = RankinInput { g: &g2.series, ..left };
            reports(&left, &right, &ex)
        }
        5 => {
            let basis = spaces("level1_weight24")?;
            let delta = spaces("level1_weight12")?.get("delta")?.series.clone();
            let left = RankinInput { basis: &basis, f: "f1", g: &delta, l: 12, psi: &triv };
            let a2 = basis.get("f1")?.series.coefficient(2)?.clone();
            let table = StandardTable::new(&build_space(24, 1)?, 2, &a2)?;
            let right = EisensteinSource { table: &table, l: 12 };
            reports(&left, &right, &ex)
        }
        _ => unreachable!("example() rejects other ids"),
    }
}

/// Differences between the computed reports and the expectations of an example.
pub fn mismatches(ex: &Example, reports: &[RatioReport]) -> Vec<String> {
    let mut out = Vec::new();
    for e in &ex.expectations {
        let Some(r) = reports.iter().find(|r| r.m == e.m) else {
            out.push(format!("m = {}: no report", e.m));
            continue;
        };
        if r.congruent != e.congruent {
            out.push(format!("m = {}: congruent = {}, expected {}", e.m, r.congruent, e.congruent));
        }
        if e.valuation.is_some() && r.valuation() != e.valuation {
            out.push(format!("m = {}: valuation {:?}, expected {:?}", e.m, r.valuation(), e.valuation));
        }
        if let Some(expected) = e.d_congruent {
            let got = r.d_valuations.iter().all(|v| v.valuation.map_or(true, |v| v >= 1));
            if got != expected {
                out.push(format!("m = {}: D-ratio congruent = {got}, expected {expected}", e.m));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::numfield::{IdealKind, QuadField};

    #[test]
    fn sturm_bounds() {
        assert_eq!(sturm_bound(24, 1, Group::Gamma0, true), int(2));
        assert_eq!(sturm_bound(13, 3, Group::Gamma1, true), rat(19, 3));
        assert_eq!(sturm_bound(12, 1, Group::Gamma0, false), int(1));
        assert_eq!(group_index(3, Group::Gamma1), int(8));
        assert_eq!(group_index(2, Group::Gamma1), int(3));
        assert_eq!(group_index(3, Group::Gamma0), int(4));
        for k in 2..40 {
            assert!(sturm_bound(k, 3, Group::Gamma1, true) < sturm_bound(k + 1, 3, Group::Gamma1, true));
        }
    }

    #[test]
    fn hypothesis() {
        let triv = DirichletCharacter::trivial(1);
        let k = QuadField::new(144169).unwrap();
        let p691 = primes_above(691, k).unwrap();
        assert_eq!(hypothesis_valuation(24, 12, 22, &triv, &p691[0]).unwrap(), -1);
        assert!(!hypothesis_check(24, 12, 22, &triv, &p691[1]).unwrap());
        let big = primes_above(144169, k).unwrap();
        assert_eq!(big[0].kind, IdealKind::Ramified);
        assert!(hypothesis_check(24, 12, 20, &triv, &big[0]).unwrap());
        let psi = DirichletCharacter::legendre(3).unwrap();
        let p13 = primes_above(13, QuadField::new(-26).unwrap()).unwrap();
        assert!(!hypothesis_check(26, 13, 24, &psi, &p13[0]).unwrap());
    }
}
