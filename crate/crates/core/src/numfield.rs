//! Exact arithmetic in `Q` and in quadratic fields `Q(sqrt d)`, prime ideals
//! above odd primes, and ideal-adic valuations.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{int_valuation, is_prime, rational_valuation, Rational};
use crate::error::{Error, Result};

/// `Q` itself or `Q(sqrt d)` for squarefree `d` other than 0 and 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadField {
    Rational,
    Sqrt(i64),
}

fn is_squarefree(d: i64) -> bool {
    let n = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(Error::InvalidArgument(format!(
                "{d} is not a squarefree integer other than 0, 1"
            )));
        }
        Ok(QuadField::Sqrt(d))
    }

    pub fn d(&self) -> Option<i64> {
        match self {
            QuadField::Rational => None,
            QuadField::Sqrt(d) => Some(*d),
        }
    }

    /// The smallest field containing both, if one exists among `Q` and `Q(sqrt d)`.
    pub fn join(self, other: QuadField) -> Result<QuadField> {
        match (self, other) {
            (QuadField::Rational, f) | (f, QuadField::Rational) => Ok(f),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::FieldMismatch(a.to_string(), b.to_string())),
        }
    }

    /// The square root of a non-square integer `n`, written as `s sqrt(d)`.
    pub fn sqrt_of(n: i64) -> Result<FieldElem> {
        if n == 0 {
            return Ok(FieldElem::zero());
        }
        let mut s = 1i64;
        let mut d = n;
        let mut p = 2i64;
        while p * p <= d.abs() {
            while d % (p * p) == 0 {
                d /= p * p;
                s *= p;
            }
            p += 1;
        }
        if d == 1 {
            return Ok(FieldElem::from_int(s));
        }
        let field = QuadField::new(d)?;
        Ok(FieldElem::new(field, Rational::zero(), Rational::from_integer(s.into())))
    }
}

impl fmt::Display for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadField::Rational => write!(f, "Q"),
            QuadField::Sqrt(d) => write!(f, "Q(sqrt({d}))"),
        }
    }
}

impl Serialize for QuadField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            QuadField::Rational => s.serialize_str("rational"),
            QuadField::Sqrt(d) => s.serialize_i64(*d),
        }
    }
}

impl<'de> Deserialize<'de> for QuadField {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(de)? {
            Repr::Int(d) => QuadField::new(d).map_err(serde::de::Error::custom),
            Repr::Str(s) if s == "rational" => Ok(QuadField::Rational),
            Repr::Str(s) => Err(serde::de::Error::custom(format!("bad field marker {s:?}"))),
        }
    }
}

/// Rationals serialize as decimal strings `"p/q"` to avoid any precision loss.
pub mod rational_str {
    use super::*;

    pub fn parse(s: &str) -> Result<Rational> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n = BigInt::from_str(n).map_err(|e| Error::Schema(format!("bad rational {s:?}: {e}")))?;
        let d = BigInt::from_str(d).map_err(|e| Error::Schema(format!("bad rational {s:?}: {e}")))?;
        if d.is_zero() {
            return Err(Error::Schema(format!("zero denominator in {s:?}")));
        }
        Ok(Rational::new(n, d))
    }

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(de)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

/// `a + b sqrt(d)`, with `b = 0` whenever the field is `Q`.
///
/// Equality compares values: a rational number is equal to itself whichever
/// field it was built in.
#[derive(Clone, Debug)]
pub struct FieldElem {
    field: QuadField,
    a: Rational,
    b: Rational,
}

impl PartialEq for FieldElem {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.field == o.field)
    }
}

impl Eq for FieldElem {}

impl std::hash::Hash for FieldElem {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.a.hash(h);
        self.b.hash(h);
    }
}

impl FieldElem {
    pub fn new(field: QuadField, a: Rational, b: Rational) -> Self {
        assert!(
            field != QuadField::Rational || b.is_zero(),
            "irrational part in Q"
        );
        FieldElem { field, a, b }
    }

    pub fn rational(a: Rational) -> Self {
        FieldElem {
            field: QuadField::Rational,
            a,
            b: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(Rational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The generator `sqrt(d)` of a quadratic field.
    pub fn sqrt_d(field: QuadField) -> Self {
        match field {
            QuadField::Rational => panic!("Q has no quadratic generator"),
            f => FieldElem::new(f, Rational::zero(), Rational::one()),
        }
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    /// Re-home a rational element into a larger field.
    pub fn coerce(&self, field: QuadField) -> Result<FieldElem> {
        if self.b.is_zero() {
            return Ok(FieldElem {
                field,
                a: self.a.clone(),
                b: Rational::zero(),
            });
        }
        let f = self.field.join(field)?;
        if f != field {
            return Err(Error::FieldMismatch(self.field.to_string(), field.to_string()));
        }
        Ok(FieldElem {
            field,
            a: self.a.clone(),
            b: self.b.clone(),
        })
    }

    fn d_rat(&self) -> Rational {
        Rational::from_integer(self.field.d().unwrap_or(0).into())
    }

    pub fn conj(&self) -> FieldElem {
        FieldElem {
            field: self.field,
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    pub fn norm(&self) -> Rational {
        &self.a * &self.a - self.d_rat() * &self.b * &self.b
    }

    pub fn trace(&self) -> Rational {
        &self.a + &self.a
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(FieldElem {
            field: self.field,
            a: &self.a / &n,
            b: -&self.b / &n,
        })
    }

    pub fn checked_div(&self, other: &FieldElem) -> Result<FieldElem> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> FieldElem {
        FieldElem {
            field: self.field,
            a: &self.a * r,
            b: &self.b * r,
        }
    }

    pub fn pow(&self, e: u32) -> FieldElem {
        let mut acc = FieldElem::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `(s, t)` with `self = s + t * gen`, for a generator with nonzero irrational part.
    pub fn in_terms_of(&self, gen: &FieldElem) -> Result<(Rational, Rational)> {
        if gen.b.is_zero() {
            return Err(Error::InvalidArgument("generator must be irrational".into()));
        }
        if self.field != QuadField::Rational && self.field != gen.field {
            return Err(Error::FieldMismatch(self.field.to_string(), gen.field.to_string()));
        }
        let t = &self.b / &gen.b;
        let s = &self.a - &t * &gen.a;
        Ok((s, t))
    }

    /// `s + t * gen`.
    pub fn from_generator(gen: &FieldElem, s: Rational, t: Rational) -> FieldElem {
        &gen.scale(&t) + &FieldElem::rational(s)
    }

    /// Parses `"a,b"` (meaning `a + b sqrt d`) or a bare rational.
    pub fn parse_pair(s: &str, field: QuadField) -> Result<FieldElem> {
        match s.split_once(',') {
            Some((a, b)) => {
                let a = rational_str::parse(a)?;
                let b = rational_str::parse(b)?;
                if !b.is_zero() && field == QuadField::Rational {
                    return Err(Error::InvalidArgument("irrational part given for Q".into()));
                }
                Ok(FieldElem::rational(a).coerce(field)?.add_b(b))
            }
            None => FieldElem::rational(rational_str::parse(s)?).coerce(field),
        }
    }

    fn add_b(mut self, b: Rational) -> Self {
        self.b += b;
        self
    }

    fn binop_field(&self, other: &FieldElem) -> QuadField {
        match self.field.join(other.field) {
            Ok(f) => f,
            Err(_) if other.b.is_zero() => self.field,
            Err(_) if self.b.is_zero() => other.field,
            Err(e) => panic!("arithmetic across fields: {e}"),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field.d() {
            Some(d) if !self.b.is_zero() => {
                if self.b.is_negative() {
                    write!(f, "{} - {}*sqrt({d})", self.a, -&self.b)
                } else {
                    write!(f, "{} + {}*sqrt({d})", self.a, self.b)
                }
            }
            _ => write!(f, "{}", self.a),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FieldElemRepr {
    d: QuadField,
    #[serde(with = "rational_str")]
    a: Rational,
    #[serde(with = "rational_str")]
    b: Rational,
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldElemRepr {
            d: self.field,
            a: self.a.clone(),
            b: self.b.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldElem {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let r = FieldElemRepr::deserialize(de)?;
        if r.d == QuadField::Rational && !r.b.is_zero() {
            return Err(serde::de::Error::custom("irrational part in Q"));
        }
        Ok(FieldElem {
            field: r.d,
            a: r.a,
            b: r.b,
        })
    }
}

impl From<Rational> for FieldElem {
    fn from(r: Rational) -> Self {
        FieldElem::rational(r)
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, o: &FieldElem) -> FieldElem {
        FieldElem {
            field: self.binop_field(o),
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, o: &FieldElem) -> FieldElem {
        FieldElem {
            field: self.binop_field(o),
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, o: &FieldElem) -> FieldElem {
        let field = self.binop_field(o);
        if self.b.is_zero() {
            return FieldElem {
                field,
                a: &self.a * &o.a,
                b: &self.a * &o.b,
            };
        }
        if o.b.is_zero() {
            return FieldElem {
                field,
                a: &self.a * &o.a,
                b: &self.b * &o.a,
            };
        }
        let d = Rational::from_integer(field.d().unwrap_or(0).into());
        FieldElem {
            field,
            a: &self.a * &o.a + d * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl<'a> Div<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn div(self, o: &FieldElem) -> FieldElem {
        self.checked_div(o).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &FieldElem) -> FieldElem {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<FieldElem> for &'a FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            field: self.field,
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -(self.clone())
    }
}

impl AddAssign<&FieldElem> for FieldElem {
    fn add_assign(&mut self, o: &FieldElem) {
        self.field = self.binop_field(o);
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl SubAssign<&FieldElem> for FieldElem {
    fn sub_assign(&mut self, o: &FieldElem) {
        self.field = self.binop_field(o);
        self.a -= &o.a;
        self.b -= &o.b;
    }
}

impl MulAssign<&FieldElem> for FieldElem {
    fn mul_assign(&mut self, o: &FieldElem) {
        *self = &*self * o;
    }
}

/// How a rational prime behaves in the field, with the root of `d` mod `p`
/// that singles out one of the two split ideals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum IdealKind {
    Split { root: u64 },
    Inert,
    Ramified,
    /// The prime `(p)` of `Q` itself.
    Rational,
}

/// A prime ideal above an odd rational prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeIdealRef {
    pub field: QuadField,
    pub p: u64,
    #[serde(flatten)]
    pub kind: IdealKind,
}

fn mod_u64(x: &Rational, p: u64) -> Option<u64> {
    // x must be p-integral
    let pp = BigInt::from(p);
    let den = x.denom().mod_floor(&pp);
    if den.is_zero() {
        return None;
    }
    let inv = mod_inverse(&den, &pp)?;
    Some((x.numer().mod_floor(&pp) * inv).mod_floor(&pp).to_u64().expect("small"))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Lifts `r` with `r^2 = d (mod p)` to a root modulo `p^m`.
fn hensel_lift(r: u64, d: i64, p: u64, m: u32) -> BigInt {
    let modulus = BigInt::from(p).pow(m);
    let d = BigInt::from(d);
    let mut x = BigInt::from(r);
    let mut prec = 1u32;
    while prec < m {
        prec = (prec * 2).min(m);
        let f = (&x * &x - &d).mod_floor(&modulus);
        let inv = mod_inverse(&(&x * 2), &modulus).expect("p odd and r a unit");
        x = (&x - f * inv).mod_floor(&modulus);
    }
    x
}

impl PrimeIdealRef {
    pub fn split(field: QuadField, p: u64, root: u64) -> Result<Self> {
        let d = field
            .d()
            .ok_or_else(|| Error::InvalidArgument("Q has no split primes".into()))?;
        let r = root % p;
        if p == 2 || !is_prime(p) {
            return Err(Error::Unsupported(format!("prime ideal above {p}")));
        }
        let dp = d.rem_euclid(p as i64) as u64;
        if dp == 0 || (r as u128 * r as u128 % p as u128) as u64 != dp {
            return Err(Error::InvalidArgument(format!("{root} is not a square root of {d} mod {p}")));
        }
        Ok(PrimeIdealRef {
            field,
            p,
            kind: IdealKind::Split { root: r },
        })
    }

    /// The ideal containing `gen - value`, for a generator of the field.
    pub fn where_generator_is(field: QuadField, p: u64, gen: &FieldElem, value: i64) -> Result<Self> {
        // gen = u + v sqrt(d)  ==>  sqrt(d) = (value - u) / v  mod p
        let x = (Rational::from_integer(value.into()) - gen.a()) / gen.b();
        let r = mod_u64(&x, p)
            .ok_or_else(|| Error::InvalidArgument(format!("generator not {p}-integral")))?;
        let ideals = primes_above(p, field)?;
        ideals
            .into_iter()
            .find(|i| match i.kind {
                IdealKind::Split { root } => root == r,
                _ => true,
            })
            .ok_or_else(|| Error::InvalidArgument(format!("no ideal above {p} with that residue")))
    }

    /// Ramification index over `p`.
    pub fn ramification(&self) -> i64 {
        match self.kind {
            IdealKind::Ramified => 2,
            _ => 1,
        }
    }

    /// The other prime above `p` for split primes; `self` otherwise.
    pub fn conjugate(&self) -> Self {
        match self.kind {
            IdealKind::Split { root } => PrimeIdealRef {
                field: self.field,
                p: self.p,
                kind: IdealKind::Split { root: self.p - root },
            },
            _ => self.clone(),
        }
    }
}

impl fmt::Display for PrimeIdealRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.field.d()) {
            (IdealKind::Split { root }, Some(d)) => write!(f, "({}, sqrt({d}) - {root})", self.p),
            (IdealKind::Ramified, Some(d)) => write!(f, "({}, sqrt({d}))", self.p),
            _ => write!(f, "({})", self.p),
        }
    }
}

/// The prime ideals above an odd prime `p`.
pub fn primes_above(p: u64, field: QuadField) -> Result<Vec<PrimeIdealRef>> {
    if p == 2 {
        return Err(Error::Unsupported("valuations above 2".into()));
    }
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let Some(d) = field.d() else {
        return Ok(vec![PrimeIdealRef {
            field,
            p,
            kind: IdealKind::Rational,
        }]);
    };
    let dp = d.rem_euclid(p as i64) as u64;
    if dp == 0 {
        return Ok(vec![PrimeIdealRef {
            field,
            p,
            kind: IdealKind::Ramified,
        }]);
    }
    // Euler's criterion, then a brute-force root for the small primes used here
    let pp = BigInt::from(p);
    let euler = BigInt::from(dp).modpow(&BigInt::from((p - 1) / 2), &pp);
    if !euler.is_one() {
        return Ok(vec![PrimeIdealRef {
            field,
            p,
            kind: IdealKind::Inert,
        }]);
    }
    let r = (1..p)
        .find(|x| (*x as u128 * *x as u128 % p as u128) as u64 == dp)
        .expect("a quadratic residue has a root");
    Ok(vec![
        PrimeIdealRef::split(field, p, r)?,
        PrimeIdealRef::split(field, p, p - r)?,
    ])
}

/// The exact `P`-adic valuation of a nonzero element.
pub fn valuation(x: &FieldElem, ideal: &PrimeIdealRef) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    if x.field() != QuadField::Rational && x.field() != ideal.field {
        return Err(Error::FieldMismatch(x.field().to_string(), ideal.field.to_string()));
    }
    let p = ideal.p;
    match ideal.kind {
        IdealKind::Rational => {
            if !x.is_rational() {
                return Err(Error::FieldMismatch(x.field().to_string(), "Q".into()));
            }
            Ok(rational_valuation(x.a(), p).expect("nonzero"))
        }
        IdealKind::Ramified => Ok(rational_valuation(&x.norm(), p).expect("nonzero")),
        IdealKind::Inert => Ok(rational_valuation(&x.norm(), p).expect("nonzero") / 2),
        IdealKind::Split { root } => {
            let d = ideal.field.d().expect("split ideals live in quadratic fields");
            // x = (A + B sqrt d) / D with integers A, B, D
            let den = x.a().denom().lcm(x.b().denom());
            let big_a = x.a().numer() * (&den / x.a().denom());
            let big_b = x.b().numer() * (&den / x.b().denom());
            let int_norm = &big_a * &big_a - BigInt::from(d) * &big_b * &big_b;
            let n = int_valuation(&int_norm, p).expect("nonzero norm");
            let m = n as u32 + 1;
            let lifted = hensel_lift(root, d, p, m);
            let v = int_valuation(&(&big_a + &big_b * lifted), p).unwrap_or(m as i64);
            debug_assert!(v <= n);
            Ok(v - int_valuation(&den, p).unwrap_or(0))
        }
    }
}
