//! Bases of spaces of modular forms as q-expansions: level-one Miller bases,
//! Hecke operators on q-expansions, splitting into eigenforms or rational
//! Hecke-stable blocks, linear expression in a basis and the Petersson
//! correction for oldforms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int, is_prime, DirichletCharacter, Rational};
use crate::eisenstein::eisenstein_classical;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::numfield::FieldElem;
use crate::poly::{self, Poly};
use crate::qseries::QSeries;

/// Number of coefficient rows beyond the dimension used to certify a solve.
pub const GUARD_ROWS: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BasisKind {
    Newform,
    /// `f(p z)` for the element labelled `source`.
    Oldform { p: u64, source: String },
    /// Member of a rational basis of a Hecke-stable subspace.
    RationalBlock,
    /// Eisenstein series, orthogonal to every cusp form.
    Eisenstein,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasisElement {
    pub label: String,
    pub kind: BasisKind,
    pub series: QSeries,
    pub eigen: BTreeMap<u64, FieldElem>,
    /// Nebentypus of the form itself (a level-one newform viewed at level 3
    /// keeps the trivial character mod 1).
    pub character: DirichletCharacter,
}

impl BasisElement {
    pub fn newform(label: &str, series: QSeries, character: DirichletCharacter) -> Self {
        let eigen = (2..series.prec() as u64)
            .filter(|&p| is_prime(p) && p < 12)
            .map(|p| (p, series.coeffs()[p as usize].clone()))
            .collect();
        BasisElement {
            label: label.to_string(),
            kind: BasisKind::Newform,
            series,
            eigen,
            character,
        }
    }

    pub fn other(label: &str, kind: BasisKind, series: QSeries, character: DirichletCharacter) -> Self {
        BasisElement {
            label: label.to_string(),
            kind,
            series,
            eigen: BTreeMap::new(),
            character,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpaceBasis {
    pub weight: i64,
    pub level: u64,
    pub character: DirichletCharacter,
    pub elements: Vec<BasisElement>,
}

impl SpaceBasis {
    pub fn new(weight: i64, level: u64, character: DirichletCharacter, elements: Vec<BasisElement>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Schema("space without elements".into()));
        }
        let basis = SpaceBasis {
            weight,
            level,
            character,
            elements,
        };
        let series: Vec<QSeries> = basis.elements.iter().map(|e| e.series.clone()).collect();
        if series_rank(&series) != series.len() {
            return Err(Error::Schema("basis elements are linearly dependent".into()));
        }
        Ok(basis)
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn prec(&self) -> usize {
        self.elements.iter().map(|e| e.series.prec()).min().unwrap_or(0)
    }

    pub fn get(&self, label: &str) -> Result<&BasisElement> {
        self.elements
            .iter()
            .find(|e| e.label == label)
            .ok_or_else(|| Error::MissingLabel(label.to_string()))
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e.label == label)
            .ok_or_else(|| Error::MissingLabel(label.to_string()))
    }

    /// Label of the element whose series is the coefficientwise conjugate of `label`'s.
    pub fn conjugate_label(&self, label: &str) -> Result<String> {
        let target = self.get(label)?.series.galois_conj();
        let prec = target.prec();
        self.elements
            .iter()
            .find(|e| e.series.truncate(prec) == target.truncate(e.series.prec()))
            .map(|e| e.label.clone())
            .ok_or_else(|| Error::MissingLabel(format!("conjugate of {label}")))
    }
}

fn series_rank(series: &[QSeries]) -> usize {
    let prec = series.iter().map(QSeries::prec).min().unwrap_or(0);
    let m: Matrix<FieldElem> = (0..prec)
        .map(|n| series.iter().map(|s| s.coeffs()[n].clone()).collect())
        .collect();
    linalg::rank(&m)
}

fn delta_series(prec: usize) -> QSeries {
    // q prod (1 - q^n)^24
    eta_product(&[(1, 24)], 1, prec)
}

/// `q^shift prod_i prod_n (1 - q^{m_i n})^{e_i}` truncated to `prec`.
pub fn eta_product(factors: &[(usize, i64)], shift: usize, prec: usize) -> QSeries {
    let mut c = vec![BigInt::zero(); prec];
    if shift < prec {
        c[shift] = BigInt::one();
    }
    for &(m, e) in factors {
        for n in 1..prec {
            let step = m * n;
            if step >= prec {
                break;
            }
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    // multiply by (1 - q^step)
                    for i in (step..prec).rev() {
                        let t = c[i - step].clone();
                        c[i] -= t;
                    }
                } else {
                    // divide by (1 - q^step)
                    for i in step..prec {
                        let t = c[i - step].clone();
                        c[i] += t;
                    }
                }
            }
        }
    }
    QSeries::from_rationals(c.into_iter().map(Rational::from_integer).collect())
}

fn echelon_series(series: &[QSeries]) -> Vec<QSeries> {
    let prec = series.iter().map(QSeries::prec).min().unwrap_or(0);
    let mut rows: Matrix<FieldElem> = series.iter().map(|s| s.coeffs()[..prec].to_vec()).collect();
    let pivots = linalg::rref(&mut rows);
    rows.into_iter()
        .take(pivots.len())
        .map(|r| QSeries::from_elems(r).expect("coefficients share a field"))
        .collect()
}

/// Miller-style basis of `M_k(SL_2(Z))`: element `i` is `q^i + O(q^dim)`.
pub fn miller_basis(k: i64, prec: usize) -> Result<SpaceBasis> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::InvalidArgument(format!("Miller basis needs even k >= 4, got {k}")));
    }
    let e4 = eisenstein_classical(4, prec)?.scale_rational(&int(240));
    let e6 = eisenstein_classical(6, prec)?.scale_rational(&int(-504));
    let delta = delta_series(prec);
    let mut spanning = Vec::new();
    let mut j = 0;
    while 12 * j <= k {
        let rest = k - 12 * j;
        // rest = 4a + 6b with b in {0, 1}
        let (a, b) = match rest % 4 {
            0 => (rest / 4, 0),
            _ if rest >= 6 => ((rest - 6) / 4, 1),
            _ => {
                j += 1;
                continue;
            }
        };
        let s = delta
            .pow(j as u32)?
            .mul(&e4.pow(a as u32)?)?
            .mul(&e6.pow(b as u32)?)?;
        spanning.push(s);
        j += 1;
    }
    let rows = echelon_series(&spanning);
    let elements = rows
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            BasisElement::other(&format!("m{i}"), BasisKind::RationalBlock, s, DirichletCharacter::trivial(1))
        })
        .collect();
    SpaceBasis::new(k, 1, DirichletCharacter::trivial(1), elements)
}

/// Cuspidal part of the Miller basis (elements with zero constant term).
pub fn miller_cusp_basis(k: i64, prec: usize) -> Result<Vec<QSeries>> {
    Ok(miller_basis(k, prec)?
        .elements
        .into_iter()
        .map(|e| e.series)
        .filter(|s| s.coeffs()[0].is_zero())
        .collect())
}

/// `T_p` on a q-expansion of weight `k` and character `chi`:
/// `b(n) = a(np) + chi(p) p^{k-1} a(n/p)`.
pub fn hecke_on_qexp(f: &QSeries, p: u64, k: i64, chi: &DirichletCharacter) -> Result<QSeries> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("T_p needs prime p, got {p}")));
    }
    let p = p as usize;
    let out_prec = (f.prec() + p - 1) / p;
    if out_prec == 0 {
        return Err(Error::InsufficientPrecision { needed: p, have: f.prec() });
    }
    let scale = Rational::from_integer(BigInt::from(chi.value(p as i64)) * BigInt::from(p).pow((k - 1) as u32));
    let mut coeffs = Vec::with_capacity(out_prec);
    for n in 0..out_prec {
        let mut c = f.coeffs()[n * p].clone();
        if n % p == 0 && !scale.is_zero() {
            c += &f.coeffs()[n / p].scale(&scale);
        }
        coeffs.push(c);
    }
    QSeries::new(f.field(), coeffs)
}

/// Expresses each `T_p b_j` in the basis `b`; column `j` holds the coordinates.
pub fn hecke_matrix_on_series(basis: &[QSeries], p: u64, k: i64, chi: &DirichletCharacter) -> Result<Matrix<Rational>> {
    let images = basis
        .iter()
        .map(|b| hecke_on_qexp(b, p, k, chi))
        .collect::<Result<Vec<_>>>()?;
    let prec = images.iter().map(QSeries::prec).min().unwrap_or(0);
    let needed = basis.len() + GUARD_ROWS;
    if prec < needed {
        return Err(Error::InsufficientPrecision { needed: needed * p as usize, have: basis[0].prec() });
    }
    let a: Matrix<Rational> = (0..prec)
        .map(|n| basis.iter().map(|b| rational_coeff(b, n)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut cols = Vec::with_capacity(basis.len());
    for img in &images {
        let rhs = (0..prec).map(|n| rational_coeff(img, n)).collect::<Result<Vec<_>>>()?;
        cols.push(linalg::solve(&a, &rhs)?);
    }
    Ok(linalg::transpose(&cols))
}

fn rational_coeff(s: &QSeries, n: usize) -> Result<Rational> {
    s.coefficient(n)?
        .to_rational()
        .ok_or_else(|| Error::InvalidArgument("expected rational coefficients".into()))
}

/// A Hecke-stable piece of a space cut out by an irreducible factor of the
/// characteristic polynomial of `T_p`.
#[derive(Clone, Debug)]
pub struct HeckeBlock {
    pub char_factor: Poly,
    pub multiplicity: usize,
    /// Rational basis of `ker g(T_p)` in echelon form.
    pub rational_basis: Vec<QSeries>,
}

/// Splits the span of `basis` by the irreducible factors of `T_p`.
pub fn hecke_decomposition(basis: &[QSeries], p: u64, k: i64, chi: &DirichletCharacter) -> Result<Vec<HeckeBlock>> {
    let m = hecke_matrix_on_series(basis, p, k, chi)?;
    let cp = linalg::char_poly(&m);
    let mut blocks = Vec::new();
    for (factor, mult) in poly::factor(&cp)? {
        let mut g = factor.clone();
        for _ in 1..mult {
            g = poly::mul(&g, &factor);
        }
        let gm = poly::eval_matrix(&g, &m);
        let ker = linalg::kernel(&gm, basis.len());
        let series: Vec<QSeries> = ker.iter().map(|v| combine_rational(basis, v)).collect();
        blocks.push(HeckeBlock {
            char_factor: factor,
            multiplicity: mult,
            rational_basis: echelon_series(&series),
        });
    }
    Ok(blocks)
}

fn combine_rational(basis: &[QSeries], v: &[Rational]) -> QSeries {
    let prec = basis.iter().map(QSeries::prec).min().unwrap_or(0);
    basis.iter().zip(v).fold(QSeries::zero(prec), |acc, (b, c)| {
        acc.add(&b.truncate(prec).scale_rational(c)).expect("rational series")
    })
}

fn combine(basis: &[QSeries], v: &[FieldElem]) -> Result<QSeries> {
    let prec = basis.iter().map(QSeries::prec).min().unwrap_or(0);
    let mut acc = QSeries::zero(prec);
    for (b, c) in basis.iter().zip(v) {
        acc = acc.add(&b.truncate(prec).scale(c)?)?;
    }
    Ok(acc)
}

fn normalize_leading(s: QSeries) -> Result<QSeries> {
    let c1 = s.coefficient(1)?.clone();
    if c1.is_zero() {
        return Err(Error::NormalizerVanishes);
    }
    s.scale(&c1.inv()?)
}

/// Normalized eigenforms for a block whose factor has degree 1 or 2.
fn block_eigenforms(block: &HeckeBlock, p: u64, k: i64, chi: &DirichletCharacter) -> Result<Vec<QSeries>> {
    let deg = poly::degree(&block.char_factor);
    if block.multiplicity != 1 {
        return Err(Error::AmbiguousEigensystem(format!(
            "T_{p} eigenvalue of multiplicity {}",
            block.multiplicity
        )));
    }
    let roots = match deg {
        1 => vec![FieldElem::rational(-block.char_factor[0].clone())],
        2 => {
            let (r1, r2) = poly::quadratic_roots(&block.char_factor)?;
            vec![r1, r2]
        }
        _ => {
            return Err(Error::FieldDegree(format!(
                "Hecke field of degree {deg}"
            )))
        }
    };
    let m = hecke_matrix_on_series(&block.rational_basis, p, k, chi)?;
    let mf: Matrix<FieldElem> = m
        .iter()
        .map(|row| row.iter().map(|x| FieldElem::rational(x.clone())).collect())
        .collect();
    let mut out = Vec::new();
    for r in roots {
        let shifted = linalg::shift_diagonal(&mf, &r);
        let ker = linalg::kernel(&shifted, block.rational_basis.len());
        if ker.len() != 1 {
            return Err(Error::AmbiguousEigensystem(format!("eigenspace of dimension {}", ker.len())));
        }
        out.push(normalize_leading(combine(&block.rational_basis, &ker[0])?)?);
    }
    Ok(out)
}

/// Splits the span of `basis` into normalized eigenforms for `T_p`.
/// Fails with [`Error::FieldDegree`] when a Hecke field has degree above 2.
pub fn eigen_split(basis: &[QSeries], p: u64, k: i64, chi: &DirichletCharacter) -> Result<Vec<QSeries>> {
    let mut out = Vec::new();
    for block in hecke_decomposition(basis, p, k, chi)? {
        out.extend(block_eigenforms(&block, p, k, chi)?);
    }
    Ok(out)
}

/// Newforms of `S_k(SL_2(Z))` labelled `f1, f2, ...` (`delta` for `k = 12`).
pub fn eigen_split_level1(k: i64, prec: usize) -> Result<SpaceBasis> {
    let triv = DirichletCharacter::trivial(1);
    let cusp = miller_cusp_basis(k, 2 * prec)?;
    let forms = eigen_split(&cusp, 2, k, &triv)?;
    let elements = forms
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            let label = if k == 12 { "delta".to_string() } else { format!("f{}", i + 1) };
            BasisElement::newform(&label, s.truncate(prec), triv.clone())
        })
        .collect();
    SpaceBasis::new(k, 1, triv, elements)
}

/// `M_k(SL_2(Z))` as the classical Eisenstein series `e{k}` followed by the
/// newforms of [`eigen_split_level1`].
pub fn eigen_basis_level1_full(k: i64, prec: usize) -> Result<SpaceBasis> {
    let triv = DirichletCharacter::trivial(1);
    let e = BasisElement::other(&format!("e{k}"), BasisKind::Eisenstein, eisenstein_classical(k, prec)?, triv.clone());
    let mut elements = vec![e];
    elements.extend(eigen_split_level1(k, prec)?.elements);
    SpaceBasis::new(k, 1, triv, elements)
}

/// Solves `h = sum c_i B_i` exactly on `dim + GUARD_ROWS` leading coefficients
/// and checks the remaining ones.
pub fn express_in_basis(h: &QSeries, basis: &SpaceBasis) -> Result<Vec<FieldElem>> {
    let series: Vec<&QSeries> = basis.elements.iter().map(|e| &e.series).collect();
    let prec = series.iter().map(|s| s.prec()).min().unwrap_or(0).min(h.prec());
    let needed = basis.dim() + GUARD_ROWS;
    if prec < needed {
        return Err(Error::InsufficientPrecision { needed, have: prec });
    }
    let a: Matrix<FieldElem> = (0..needed)
        .map(|n| series.iter().map(|s| s.coeffs()[n].clone()).collect())
        .collect();
    let rhs: Vec<FieldElem> = (0..needed).map(|n| h.coeffs()[n].clone()).collect();
    let c = linalg::solve(&a, &rhs)?;
    for n in needed..prec {
        let mut acc = FieldElem::zero();
        for (s, ci) in series.iter().zip(&c) {
            acc += &(&s.coeffs()[n] * ci);
        }
        if acc != h.coeffs()[n] {
            return Err(Error::NotInSpan);
        }
    }
    Ok(c)
}

/// `c_target + sum_{oldforms V_p(target)} c_old p^{1-k} a(p, target) / (1 + p)`.
/// Elements of other eigensystems are orthogonal to the target and drop out.
pub fn petersson_coefficient(coeffs: &[FieldElem], basis: &SpaceBasis, target: &str) -> Result<FieldElem> {
    let idx = basis.index_of(target)?;
    let t = &basis.elements[idx];
    if t.kind != BasisKind::Newform {
        return Err(Error::InvalidArgument(format!("{target} is not a newform")));
    }
    let mut alpha = coeffs[idx].clone();
    for (e, c) in basis.elements.iter().zip(coeffs) {
        if let BasisKind::Oldform { p, source } = &e.kind {
            if source == target {
                let ap = t.series.coefficient(*p as usize)?.clone();
                let factor = Rational::new(BigInt::one(), BigInt::from(*p).pow((basis.weight - 1) as u32) * (*p + 1));
                alpha += &(c * &ap.scale(&factor));
            }
        }
    }
    Ok(alpha)
}

/// Validation of a newform prefix: `a(1) = 1`, `a(mn) = a(m) a(n)` for coprime
/// `m, n`, and `a(p^{j+1}) = a(p) a(p^j) - chi(p) p^{k-1} a(p^{j-1})`.
pub fn check_hecke_consistency(f: &QSeries, k: i64, chi: &DirichletCharacter) -> Result<()> {
    let prec = f.prec();
    let a = |n: usize| f.coeffs()[n].clone();
    if prec > 1 && a(1) != FieldElem::one() {
        return Err(Error::HeckeInconsistent("a(1) != 1".into()));
    }
    for m in 2..prec {
        for n in 2..prec {
            if m * n >= prec {
                break;
            }
            if num_integer::gcd(m, n) == 1 && a(m * n) != &a(m) * &a(n) {
                return Err(Error::HeckeInconsistent(format!("a({}) != a({m}) a({n})", m * n)));
            }
        }
    }
    for p in (2..prec).filter(|&p| is_prime(p as u64)) {
        let s = Rational::from_integer(BigInt::from(chi.value(p as i64)) * BigInt::from(p).pow((k - 1) as u32));
        let mut prev = FieldElem::one();
        let mut cur = a(p);
        let mut pj = p;
        while pj * p < prec {
            let next = &(&a(p) * &cur) - &prev.scale(&s);
            if a(pj * p) != next {
                return Err(Error::HeckeInconsistent(format!("a({}) breaks the T_{p} recursion", pj * p)));
            }
            prev = cur;
            cur = next;
            pj *= p;
        }
    }
    Ok(())
}

/// Forms on `Gamma_1(3)`, built from the weight-one Eisenstein series
/// `1 + 6 sum (sum_{d|n} chi(d)) q^n` and the weight-three form
/// `eta(3z)^9 / eta(z)^3`; cusp forms are `eta(z)^6 eta(3z)^6` times `M_{k-6}`.
pub mod level3 {
    use super::*;
    use crate::eisenstein::eisenstein_star;

    pub fn weight_one_eisenstein(prec: usize) -> QSeries {
        let psi = DirichletCharacter::legendre(3).expect("3 is prime");
        eisenstein_star(1, 3, &psi, prec)
            .expect("weight-one level-three Eisenstein series")
            .holomorphic_part()
            .clone()
    }

    pub fn weight_three_form(prec: usize) -> QSeries {
        eta_product(&[(3, 9), (1, -3)], 1, prec)
    }

    pub fn weight_six_cusp_form(prec: usize) -> QSeries {
        eta_product(&[(1, 6), (3, 6)], 1, prec)
    }

    /// `{a^{k-3j} C^j}`, a basis of `M_k(Gamma_1(3))`.
    pub fn modular_basis(k: i64, prec: usize) -> Result<Vec<QSeries>> {
        if k < 0 {
            return Err(Error::InvalidArgument(format!("negative weight {k}")));
        }
        let a = weight_one_eisenstein(prec);
        let c = weight_three_form(prec);
        (0..=k / 3)
            .map(|j| a.pow((k - 3 * j) as u32)?.mul(&c.pow(j as u32)?))
            .collect()
    }

    pub fn cusp_basis(k: i64, prec: usize) -> Result<Vec<QSeries>> {
        if k < 6 {
            return Ok(Vec::new());
        }
        let g = weight_six_cusp_form(prec);
        let raw = modular_basis(k - 6, prec)?
            .iter()
            .map(|m| g.mul(m))
            .collect::<Result<Vec<_>>>()?;
        Ok(echelon_series(&raw))
    }

    /// Character of `M_k(Gamma_1(3))`: the quadratic character for odd `k`.
    pub fn character(k: i64) -> DirichletCharacter {
        if k % 2 == 0 {
            DirichletCharacter::trivial(3)
        } else {
            DirichletCharacter::legendre(3).expect("3 is prime")
        }
    }

    /// Newforms of `S_13(Gamma_0(3), chi)`: the rational one first, then the
    /// conjugate pair with `a(2) = +sqrt(-8424)` before `-sqrt(-8424)`.
    pub fn weight13_newforms(prec: usize) -> Result<SpaceBasis> {
        let chi = character(13);
        let cusp = cusp_basis(13, 2 * prec)?;
        let forms = eigen_split(&cusp, 2, 13, &chi)?;
        let elements = forms
            .into_iter()
            .enumerate()
            .map(|(i, s)| BasisElement::newform(&format!("f{}", i + 1), s.truncate(prec), chi.clone()))
            .collect();
        SpaceBasis::new(13, 3, chi, elements)
    }

    /// `S_6(Gamma_0(3))`, spanned by `eta(z)^6 eta(3z)^6`.
    pub fn weight6(prec: usize) -> Result<SpaceBasis> {
        let chi = character(6);
        let g = BasisElement::newform("g", weight_six_cusp_form(prec), chi.clone());
        SpaceBasis::new(6, 3, chi, vec![g])
    }

    /// `S_26(Gamma_0(3))` as `{f, f(3z)}` plus rational bases of the two
    /// new Hecke-stable blocks (labels `b2_*`, `b3_*` by block dimension).
    pub fn weight26(prec: usize) -> Result<SpaceBasis> {
        let chi = character(26);
        let cusp = cusp_basis(26, 2 * prec)?;
        let f = eigen_split_level1(26, prec)?.elements.remove(0).series;
        let fhat = f.v_operator(3);
        let mut elements = vec![
            BasisElement::newform("f", f.clone(), DirichletCharacter::trivial(1)),
            BasisElement::other(
                "fhat",
                BasisKind::Oldform { p: 3, source: "f".into() },
                fhat,
                chi.clone(),
            ),
        ];
        let a2 = f.coefficient(2)?.to_rational().expect("rational level-one form");
        for block in hecke_decomposition(&cusp, 2, 26, &chi)? {
            let is_old = poly::degree(&block.char_factor) == 1 && block.char_factor[0] == -a2.clone();
            if is_old {
                continue;
            }
            let d = block.rational_basis.len();
            for (i, s) in block.rational_basis.into_iter().enumerate() {
                elements.push(BasisElement::other(
                    &format!("b{d}_{}", i + 1),
                    BasisKind::RationalBlock,
                    s.truncate(prec),
                    chi.clone(),
                ));
            }
        }
        SpaceBasis::new(26, 3, chi, elements)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::QuadField;
    use crate::arith::rat;

    fn r(n: i64) -> FieldElem {
        FieldElem::from_int(n)
    }

    #[test]
    fn miller_level_one() {
        let b12 = miller_cusp_basis(12, 6).unwrap();
        assert_eq!(b12, vec![QSeries::from_ints(&[0, 1, -24, 252, -1472, 4830])]);
        let m4 = miller_basis(4, 3).unwrap();
        assert_eq!(m4.dim(), 1);
        assert_eq!(m4.elements[0].series, QSeries::from_ints(&[1, 240, 2160]));
        assert_eq!(miller_cusp_basis(24, 10).unwrap().len(), 2);
        assert!(miller_basis(7, 5).is_err());
    }

    #[test]
    fn hecke_on_delta() {
        let delta = delta_series(30);
        let t2 = hecke_on_qexp(&delta, 2, 12, &DirichletCharacter::trivial(1)).unwrap();
        assert_eq!(t2, delta.truncate(15).scale_rational(&int(-24)));
        let z = hecke_on_qexp(&QSeries::zero(10), 3, 12, &DirichletCharacter::trivial(1)).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn weight24_newforms() {
        let b = eigen_split_level1(24, 12).unwrap();
        let f1 = &b.get("f1").unwrap().series;
        let beta = FieldElem::new(QuadField::new(144169).unwrap(), int(540), int(12));
        assert_eq!(f1.coefficient(2).unwrap(), &beta);
        assert_eq!(f1.coefficient(3).unwrap(), &(&(&beta * &r(-48)) + &r(195660)));
        assert_eq!(b.get("f2").unwrap().series, f1.galois_conj());
        assert_eq!(b.conjugate_label("f1").unwrap(), "f2");
        for e in &b.elements {
            check_hecke_consistency(&e.series, 24, &DirichletCharacter::trivial(1)).unwrap();
        }
    }

    #[test]
    fn weight30_field() {
        let b = eigen_split_level1(30, 8).unwrap();
        let a2 = b.elements[0].series.coefficient(2).unwrap().clone();
        assert_eq!(a2.field(), QuadField::new(51349).unwrap());
        assert_eq!(poly::minimal_polynomial(&a2), vec![int(-454569984), int(-8640), int(1)]);
    }

    #[test]
    fn level_three_spaces() {
        let s13 = level3::weight13_newforms(10).unwrap();
        assert_eq!(s13.dim(), 3);
        let nu = QuadField::sqrt_of(-8424).unwrap();
        let f1 = &s13.get("f1").unwrap().series;
        let f2 = &s13.get("f2").unwrap().series;
        assert_eq!(&f1.coeffs()[1..5], &[r(1), r(0), r(729), r(4096)]);
        assert_eq!(f2.coefficient(2).unwrap(), &nu);
        assert_eq!(f2.coefficient(3).unwrap(), &(&(&nu * &r(-3)) - &r(675)));
        assert_eq!(f2.coefficient(4).unwrap(), &r(-4328));
        assert_eq!(s13.conjugate_label("f2").unwrap(), "f3");
        let g = &level3::weight6(6).unwrap().elements[0].series;
        assert_eq!(g, &QSeries::from_ints(&[0, 1, -6, 9, 4, 6]));
        let s26 = level3::weight26(16).unwrap();
        let labels: Vec<_> = s26.elements.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, ["f", "fhat", "b2_1", "b2_2", "b3_1", "b3_2", "b3_3"]);
        let f = &s26.get("f").unwrap().series;
        let want = [0, 1, -48, -195804, -33552128, -741989850, 9398592];
        assert_eq!(f.truncate(7), QSeries::from_ints(&want));
    }

    #[test]
    fn express_and_petersson() {
        let b = eigen_split_level1(24, 12).unwrap();
        let h = b.elements[0].series.clone();
        assert_eq!(express_in_basis(&h, &b).unwrap(), vec![r(1), r(0)]);
        assert_eq!(
            express_in_basis(&QSeries::monomial(11, 12), &b),
            Err(Error::NotInSpan)
        );
        assert!(matches!(
            express_in_basis(&h.truncate(5), &b),
            Err(Error::InsufficientPrecision { .. })
        ));
        let alpha = petersson_coefficient(&[r(3), r(4)], &b, "f1").unwrap();
        assert_eq!(alpha, r(3));

        let s26 = level3::weight26(16).unwrap();
        let mut c = vec![r(0); 7];
        c[0] = r(2);
        c[1] = r(5);
        let alpha = petersson_coefficient(&c, &s26, "f").unwrap();
        let corr = rat(-195804, 4) / Rational::from_integer(BigInt::from(3).pow(25));
        assert_eq!(alpha, &r(2) + &FieldElem::rational(corr * int(5)));
        c[1] = r(0);
        assert_eq!(petersson_coefficient(&c, &s26, "f").unwrap(), r(2));
    }

    #[test]
    fn hecke_consistency_rejects_bad_prefix() {
        let mut coeffs: Vec<FieldElem> = delta_series(10).coeffs().to_vec();
        coeffs[6] = r(1);
        let bad = QSeries::from_elems(coeffs).unwrap();
        assert!(matches!(
            check_hecke_consistency(&bad, 12, &DirichletCharacter::trivial(1)),
            Err(Error::HeckeInconsistent(_))
        ));
        assert!(SpaceBasis::new(12, 1, DirichletCharacter::trivial(1), vec![]).is_err());
    }
}
