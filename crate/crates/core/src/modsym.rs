//! Weight-k modular symbols for `Gamma_1(N)` through Manin symbols, Hecke
//! matrices from Heilbronn-Cremona matrices, and normalized standard L-value
//! ratios read off from the pairing with a Hecke eigenform.
//!
//! Conventions: a Manin symbol `[X^j Y^{k-2-j}, (c, d)]` is acted on from the
//! right by `g = [[a, b], [c', d']]` as
//! `[P(aX + bY, c'X + d'Y), (c, d) g]`. Hecke matrices use the column
//! convention: column `i` holds the coordinates of `T_p e_i`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{binomial, factorial, gcd_u64, Rational};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::numfield::FieldElem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ManinSymbol {
    /// Exponent of `X` in `X^j Y^{k-2-j}`.
    pub j: usize,
    pub c: u64,
    pub d: u64,
}

#[derive(Clone, Debug)]
pub struct ModularSymbolSpace {
    pub k: usize,
    pub level: u64,
    pairs: Vec<(u64, u64)>,
    pair_index: HashMap<(u64, u64), usize>,
    /// Generators that survive as basis elements `e_1..e_n`.
    basis: Vec<usize>,
    /// Coordinates of every generator in the basis.
    expr: Vec<Vec<Rational>>,
}

type Mat2 = [i64; 4];

const SIGMA: Mat2 = [0, -1, 1, 0];
const TAU: Mat2 = [0, -1, 1, -1];
const MINUS_ONE: Mat2 = [-1, 0, 0, -1];

fn reduce(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}

impl ModularSymbolSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn ngens(&self) -> usize {
        (self.k - 1) * self.pairs.len()
    }

    fn gen_index(&self, j: usize, c: u64, d: u64) -> usize {
        let p = self.pair_index[&(c, d)];
        j * self.pairs.len() + p
    }

    pub fn symbol(&self, gen: usize) -> ManinSymbol {
        let (c, d) = self.pairs[gen % self.pairs.len()];
        ManinSymbol { j: gen / self.pairs.len(), c, d }
    }

    pub fn basis_symbols(&self) -> Vec<ManinSymbol> {
        self.basis.iter().map(|&g| self.symbol(g)).collect()
    }

    /// `x g` as a combination of generators.
    fn act(&self, gen: usize, g: &Mat2) -> Vec<(usize, BigInt)> {
        let s = self.symbol(gen);
        let w = self.k - 2;
        let [a, b, c, d] = *g;
        // (aX + bY)^j (cX + dY)^{w-j}, coefficients indexed by the X-exponent
        let first = binomial_power(a, b, s.j);
        let second = binomial_power(c, d, w - s.j);
        let mut poly = vec![BigInt::zero(); w + 1];
        for (i, x) in first.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (t, y) in second.iter().enumerate() {
                poly[i + t] += x * y;
            }
        }
        let n = self.level;
        let (uc, ud) = (s.c as i64, s.d as i64);
        let nc = reduce(uc * a + ud * c, n);
        let nd = reduce(uc * b + ud * d, n);
        poly.into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (self.gen_index(i, nc, nd), x))
            .collect()
    }

    /// Coordinates in the basis of a combination of generators.
    fn coords(&self, combo: &[(usize, BigInt)]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (g, x) in combo {
            let x = Rational::from_integer(x.clone());
            for (o, e) in out.iter_mut().zip(&self.expr[*g]) {
                if !e.is_zero() {
                    *o += &x * e;
                }
            }
        }
        out
    }
}

/// Coefficients of `(aX + bY)^e` indexed by the power of `X`.
fn binomial_power(a: i64, b: i64, e: usize) -> Vec<BigInt> {
    (0..=e)
        .map(|i| binomial(e as u64, i as u64) * BigInt::from(a).pow(i as u32) * BigInt::from(b).pow((e - i) as u32))
        .collect()
}

/// `M_k(Gamma_1(N))` as the quotient of the Manin symbols by the two- and
/// three-term relations and the identification of `x` with `x (-I)`.
pub fn build_space(k: usize, level: u64) -> Result<ModularSymbolSpace> {
    if k < 2 || level < 1 {
        return Err(Error::InvalidArgument(format!("modular symbols need k >= 2, N >= 1 (got {k}, {level})")));
    }
    let mut pairs = Vec::new();
    for c in 0..level {
        for d in 0..level {
            if gcd_u64(gcd_u64(c, d), level) == 1 {
                pairs.push((c, d));
            }
        }
    }
    if level == 1 {
        pairs.push((0, 0));
    }
    let pair_index = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut space = ModularSymbolSpace {
        k,
        level,
        pairs,
        pair_index,
        basis: Vec::new(),
        expr: Vec::new(),
    };
    let n = space.ngens();
    let mut rows: Matrix<Rational> = Vec::new();
    let push = |rows: &mut Matrix<Rational>, terms: Vec<(usize, BigInt)>| {
        let mut row = vec![Rational::zero(); n];
        for (g, x) in terms {
            row[g] += Rational::from_integer(x);
        }
        if row.iter().any(|x| !x.is_zero()) {
            rows.push(row);
        }
    };
    for x in 0..n {
        let one = vec![(x, BigInt::from(1))];
        let mut two = one.clone();
        two.extend(space.act(x, &SIGMA));
        push(&mut rows, two);
        let mut three = one.clone();
        three.extend(space.act(x, &TAU));
        let tau2 = mat_mul(&TAU, &TAU);
        three.extend(space.act(x, &tau2));
        push(&mut rows, three);
        let mut inv = one;
        inv.extend(space.act(x, &MINUS_ONE).into_iter().map(|(g, c)| (g, -c)));
        push(&mut rows, inv);
    }
    let pivots = if rows.is_empty() { Vec::new() } else { linalg::rref(&mut rows) };
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let dim = free.len();
    let mut expr = vec![vec![Rational::zero(); dim]; n];
    for (slot, &f) in free.iter().enumerate() {
        expr[f][slot] = Rational::from_integer(1.into());
    }
    for (i, &p) in pivots.iter().enumerate() {
        for (slot, &f) in free.iter().enumerate() {
            expr[p][slot] = -rows[i][f].clone();
        }
    }
    space.basis = free;
    space.expr = expr;
    Ok(space)
}

fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

/// Matrix `A` whose column `i` holds the coordinates of
/// `b_i = X^{i-1} Y^{k-1-i} {0, oo}`, the Manin symbol with the identity coset.
pub fn path_symbols(space: &ModularSymbolSpace) -> Matrix<Rational> {
    let d = 1 % space.level;
    let cols: Vec<Vec<Rational>> = (0..space.k - 1)
        .map(|j| space.coords(&[(space.gen_index(j, 0, d), BigInt::from(1))]))
        .collect();
    debug_assert!(cols.iter().flatten().any(|x| !x.is_zero()) || space.dim() == 0);
    linalg::transpose(&cols)
}

/// Heilbronn matrices of determinant `p` in Cremona's form.
pub fn heilbronn_cremona(p: u64) -> Vec<Mat2> {
    let p = p as i64;
    if p == 2 {
        return vec![[1, 0, 0, 2], [2, 0, 0, 1], [2, 1, 0, 1], [1, 0, 1, 2]];
    }
    let mut out = vec![[1, 0, 0, p]];
    let half = p / 2;
    for r in -half..=half {
        let (mut x1, mut x2, mut y1, mut y2) = (p, -r, 0i64, 1i64);
        let (mut a, mut b) = (-p, r);
        out.push([x1, x2, y1, y2]);
        while b != 0 {
            let q = (a as f64 / b as f64).round() as i64;
            let c = a - b * q;
            a = -b;
            b = c;
            let x3 = q * x2 - x1;
            x1 = x2;
            x2 = x3;
            let y3 = q * y2 - y1;
            y1 = y2;
            y2 = y3;
            out.push([x1, x2, y1, y2]);
        }
    }
    out
}

/// Matrix of `T_p` (column convention) for `p` prime to the level.
pub fn hecke_matrix(space: &ModularSymbolSpace, p: u64) -> Result<Matrix<Rational>> {
    if !crate::arith::is_prime(p) {
        return Err(Error::InvalidArgument(format!("T_p needs a prime, got {p}")));
    }
    if space.level % p == 0 {
        return Err(Error::Unsupported(format!("T_{p} at level {} (p divides the level)", space.level)));
    }
    let hs = heilbronn_cremona(p);
    let cols: Vec<Vec<Rational>> = space
        .basis
        .iter()
        .map(|&g| {
            let mut combo = Vec::new();
            for h in &hs {
                combo.extend(space.act(g, h));
            }
            space.coords(&combo)
        })
        .collect();
    Ok(linalg::transpose(&cols))
}

/// Pairing ratios `(f, b_m) / (f, b_1)` for odd `m` and `(f, b_m) / (f, b_2)`
/// for even `m`, `1 <= m <= k-1`, where `f` is the eigenform with `T_p f = a_p f`.
pub fn pairing_ratios(space: &ModularSymbolSpace, p: u64, ap: &FieldElem) -> Result<BTreeMap<usize, FieldElem>> {
    let b = hecke_matrix(space, p)?;
    let a = path_symbols(space);
    let lift = |m: &Matrix<Rational>| -> Matrix<FieldElem> {
        m.iter().map(|r| r.iter().map(|x| FieldElem::rational(x.clone())).collect()).collect()
    };
    let bt = linalg::shift_diagonal(&lift(&linalg::transpose(&b)), ap);
    let ker = linalg::kernel(&bt, space.dim());
    if ker.is_empty() {
        return Err(Error::AmbiguousEigensystem(format!("{ap} is not a T_{p} eigenvalue")));
    }
    // Row i of `values` holds the pairings of b_{i+1} with each kernel functional.
    let at = lift(&linalg::transpose(&a));
    let values = linalg::transpose(&ker.iter().map(|v| linalg::mat_vec(&at, v)).collect::<Matrix<FieldElem>>());
    let mut out = BTreeMap::new();
    for parity in [1usize, 0] {
        let rows: Vec<usize> = (1..space.k).filter(|m| m % 2 == parity).collect();
        let sub: Matrix<FieldElem> = rows.iter().map(|&m| values[m - 1].clone()).collect();
        let rank = linalg::rank(&sub);
        if rank > 1 {
            return Err(Error::AmbiguousEigensystem(format!(
                "{rank} independent functionals on the parity-{parity} paths"
            )));
        }
        let norm_m = if parity == 1 { 1 } else { 2 };
        if norm_m >= space.k {
            continue;
        }
        let col = (0..ker.len())
            .find(|&c| !values[norm_m - 1][c].is_zero())
            .ok_or(Error::NormalizerVanishes)?;
        let denom = values[norm_m - 1][col].clone();
        for &m in &rows {
            out.insert(m, values[m - 1][col].checked_div(&denom)?);
        }
    }
    Ok(out)
}

/// Normalized ratios `D(m,f) / ((-2 pi i)^{m-1} D(1,f))` for odd `m` and
/// `D(m,f) / ((-2 pi i)^{m-2} D(2,f))` for even `m`: the pairing ratios
/// divided by `(m-1)!`.
pub fn lratio_table(space: &ModularSymbolSpace, p: u64, ap: &FieldElem) -> Result<BTreeMap<usize, FieldElem>> {
    Ok(pairing_ratios(space, p, ap)?
        .into_iter()
        .map(|(m, r)| (m, r.scale(&Rational::new(1.into(), factorial(m as u64 - 1)))))
        .collect())
}
