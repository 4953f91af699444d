//! Exact rational utilities: Bernoulli numbers, real Dirichlet characters and
//! the rational parts of archimedean and abelian L-factor ratios.
//!
//! Every ratio returned here is the rational coefficient of a fixed power of
//! pi. [`dirichlet_ratio_rational`] returns `R` with
//! `L_N(s, w) / L_N(s + 2, w) = R * pi^-2` and [`archimedean_ratio_rational`]
//! returns `P` with `L_inf(m) / L_inf(m + 1) = P * pi^2`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `v_p` of a nonzero integer.
pub fn int_valuation(x: &BigInt, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

/// `v_p` of a rational; `None` for zero.
pub fn rational_valuation(x: &Rational, p: u64) -> Option<i64> {
    let num = int_valuation(x.numer(), p)?;
    let den = int_valuation(x.denom(), p).unwrap_or(0);
    Some(num - den)
}

/// A real-valued Dirichlet character, stored as a table of values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CharacterRepr", into = "CharacterRepr")]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<i8>,
    parity: u8,
    conductor: u64,
}

#[derive(Serialize, Deserialize)]
struct CharacterRepr {
    modulus: u64,
    values: Vec<i8>,
}

impl TryFrom<CharacterRepr> for DirichletCharacter {
    type Error = Error;
    fn try_from(r: CharacterRepr) -> Result<Self> {
        DirichletCharacter::from_values(r.modulus, r.values)
    }
}

impl From<DirichletCharacter> for CharacterRepr {
    fn from(c: DirichletCharacter) -> Self {
        CharacterRepr {
            modulus: c.modulus,
            values: c.values,
        }
    }
}

impl DirichletCharacter {
    pub fn trivial(modulus: u64) -> Self {
        let values = (0..modulus)
            .map(|a| if gcd_u64(a, modulus) == 1 { 1 } else { 0 })
            .collect();
        Self::from_values(modulus, values).expect("principal character is valid")
    }

    /// The Legendre symbol modulo an odd prime.
    pub fn legendre(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidArgument(format!(
                "legendre symbol needs an odd prime, got {p}"
            )));
        }
        let mut values = vec![-1i8; p as usize];
        values[0] = 0;
        for x in 1..p {
            values[((x * x) % p) as usize] = 1;
        }
        Self::from_values(p, values)
    }

    pub fn from_values(modulus: u64, values: Vec<i8>) -> Result<Self> {
        if modulus == 0 || values.len() as u64 != modulus {
            return Err(Error::InvalidArgument(format!(
                "character table of length {} for modulus {modulus}",
                values.len()
            )));
        }
        for (a, &v) in values.iter().enumerate() {
            let coprime = gcd_u64(a as u64, modulus) == 1;
            if !matches!(v, -1..=1) || coprime != (v != 0) {
                return Err(Error::InvalidArgument(format!(
                    "bad character value {v} at residue {a} mod {modulus}"
                )));
            }
        }
        if values[(1 % modulus) as usize] != 1 {
            return Err(Error::InvalidArgument("character must send 1 to 1".into()));
        }
        for a in 0..modulus {
            for b in 0..modulus {
                let ab = ((a * b) % modulus) as usize;
                if values[a as usize] * values[b as usize] != values[ab] {
                    return Err(Error::InvalidArgument(format!(
                        "character table is not multiplicative at ({a}, {b})"
                    )));
                }
            }
        }
        let minus_one = values[((modulus - 1) % modulus) as usize];
        let parity = if minus_one == -1 { 1 } else { 0 };
        let conductor = (1..=modulus)
            .filter(|m| modulus % m == 0)
            .find(|&m| {
                (0..modulus).all(|a| gcd_u64(a, modulus) != 1 || a % m != 1 % m || values[a as usize] == 1)
            })
            .unwrap_or(modulus);
        Ok(Self {
            modulus,
            values,
            parity,
            conductor,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn value(&self, a: i64) -> i8 {
        self.values[a.rem_euclid(self.modulus as i64) as usize]
    }

    pub fn is_trivial(&self) -> bool {
        self.conductor == 1
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    /// The primitive character modulo the conductor inducing `self`.
    pub fn primitive(&self) -> Self {
        let c = self.conductor;
        let values = (0..c)
            .map(|a| {
                if gcd_u64(a, c) != 1 {
                    return 0;
                }
                let lift = (0..self.modulus)
                    .map(|j| a + j * c)
                    .find(|x| gcd_u64(*x, self.modulus) == 1)
                    .expect("a unit lift exists");
                self.value(lift as i64)
            })
            .collect();
        Self::from_values(c, values).expect("primitive character is valid")
    }

    /// Pointwise product, as a character modulo the lcm of the moduli.
    pub fn mul(&self, other: &Self) -> Self {
        let m = self.modulus.lcm(&other.modulus);
        let values = (0..m as i64)
            .map(|a| self.value(a) * other.value(a))
            .collect();
        Self::from_values(m, values).expect("product of characters is a character")
    }

    /// The same character viewed modulo a multiple of its modulus.
    pub fn extend_to(&self, modulus: u64) -> Result<Self> {
        if modulus % self.modulus != 0 {
            return Err(Error::InvalidArgument(format!(
                "{modulus} is not a multiple of {}",
                self.modulus
            )));
        }
        Ok(self.mul(&Self::trivial(modulus)))
    }
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
    out.push(Rational::one());
    for m in 1..=n {
        let mut acc = Rational::zero();
        for (j, b) in out.iter().enumerate() {
            acc += Rational::from_integer(binomial(m as u64 + 1, j as u64)) * b;
        }
        out.push(-acc / int(m as i64 + 1));
    }
    out
}

pub fn bernoulli(n: usize) -> Rational {
    bernoulli_numbers(n).pop().expect("non-empty")
}

/// `B_n(x)` with the same convention as [`bernoulli`].
pub fn bernoulli_polynomial(n: usize, x: &Rational) -> Rational {
    let b = bernoulli_numbers(n);
    let mut acc = Rational::zero();
    let mut xpow = Rational::one();
    // sum_j C(n, j) B_j x^(n-j), accumulated from j = n downwards
    for j in (0..=n).rev() {
        acc += Rational::from_integer(binomial(n as u64, j as u64)) * &b[j] * &xpow;
        xpow *= x;
    }
    acc
}

/// `B_{n, w} = N^(n-1) sum_{a=1}^{N} w(a) B_n(a/N)`; for modulus 1 this has `B_{1,1} = +1/2`.
pub fn generalized_bernoulli(n: usize, omega: &DirichletCharacter) -> Rational {
    let big_n = omega.modulus() as i64;
    let mut acc = Rational::zero();
    for a in 1..=big_n {
        let v = omega.value(a);
        if v == 0 {
            continue;
        }
        let term = bernoulli_polynomial(n, &rat(a, big_n));
        if v > 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    let scale = if n == 0 {
        rat(1, big_n)
    } else {
        Rational::from_integer(BigInt::from(big_n).pow(n as u32 - 1))
    };
    acc * scale
}

/// `R` with `L_N(s, w) / L_N(s + 2, w) = R * pi^-2`.
///
/// The sign is `-1` relative to the ratio formula that drops the
/// `(-1)^(1 + (s - e)/2)` factors; with it, zeta ratios come out positive.
pub fn dirichlet_ratio_rational(s: i64, omega: &DirichletCharacter) -> Result<Rational> {
    let prim = omega.primitive();
    if s < 1 || (s - prim.parity() as i64).rem_euclid(2) != 0 {
        return Err(Error::NonCritical(format!(
            "s = {s} for a character of parity {}",
            prim.parity()
        )));
    }
    // real characters are their own conjugates
    let num = generalized_bernoulli(s as usize, &prim);
    let den = generalized_bernoulli(s as usize + 2, &prim);
    if den.is_zero() || num.is_zero() {
        return Err(Error::NonCritical(format!("vanishing Bernoulli number at s = {s}")));
    }
    let nc = int(prim.modulus() as i64);
    let mut r = -int((s + 2) * (s + 1)) * &nc * &nc / int(4) * num / den;
    for p in prime_divisors(omega.modulus()) {
        let chi_p = prim.value(p as i64);
        if chi_p == 0 {
            continue;
        }
        let pp = BigInt::from(p);
        let top = Rational::one() - int(chi_p as i64) / Rational::from_integer(pp.pow(s as u32));
        let bot = Rational::one() - int(chi_p as i64) / Rational::from_integer(pp.pow(s as u32 + 2));
        r = r * top / bot;
    }
    Ok(r)
}

/// `P = 4 / (m (m + 1 - l))` with `L_inf(m) / L_inf(m + 1) = P * pi^2`.
pub fn archimedean_ratio_rational(m: i64, l: i64) -> Result<Rational> {
    if m < l || m < 1 {
        return Err(Error::InvalidArgument(format!(
            "archimedean ratio needs m >= l, got m = {m}, l = {l}"
        )));
    }
    Ok(rat(4, m * (m + 1 - l)))
}

/// `Gamma(a) / Gamma(b)` for positive integers.
pub fn gamma_ratio(a: i64, b: i64) -> Result<Rational> {
    if a < 1 || b < 1 {
        return Err(Error::InvalidArgument(format!(
            "gamma ratio at non-positive argument ({a}, {b})"
        )));
    }
    Ok(Rational::new(factorial(a as u64 - 1), factorial(b as u64 - 1)))
}
