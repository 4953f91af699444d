//! Truncated q-expansions with coefficients in `Q` or a quadratic field.

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::numfield::{FieldElem, QuadField};

/// Default number of coefficients carried through computations.
pub const DEFAULT_PREC: usize = 40;

/// `sum_{n < prec} a(n) q^n`. The precision is the number of known coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSeries {
    field: QuadField,
    coeffs: Vec<FieldElem>,
}

impl QSeries {
    /// Coefficients must all lie in `field` (rational ones are re-homed).
    pub fn new(field: QuadField, coeffs: Vec<FieldElem>) -> Result<Self> {
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.coerce(field))
            .collect::<Result<Vec<_>>>()?;
        Ok(QSeries { field, coeffs })
    }

    /// Builds a series over the smallest field holding all coefficients.
    pub fn from_elems(coeffs: Vec<FieldElem>) -> Result<Self> {
        let mut field = QuadField::Rational;
        for c in &coeffs {
            if !c.is_rational() {
                field = field.join(c.field())?;
            }
        }
        Self::new(field, coeffs)
    }

    pub fn from_rationals(coeffs: Vec<Rational>) -> Self {
        QSeries {
            field: QuadField::Rational,
            coeffs: coeffs.into_iter().map(FieldElem::rational).collect(),
        }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        QSeries {
            field: QuadField::Rational,
            coeffs: coeffs.iter().map(|&c| FieldElem::from_int(c)).collect(),
        }
    }

    pub fn zero(prec: usize) -> Self {
        QSeries {
            field: QuadField::Rational,
            coeffs: vec![FieldElem::zero(); prec],
        }
    }

    pub fn constant(c: FieldElem, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if prec > 0 {
            s.field = s.field.join(c.field()).unwrap_or(c.field());
            s.coeffs[0] = c;
        }
        s.rehome()
    }

    pub fn one(prec: usize) -> Self {
        Self::constant(FieldElem::one(), prec)
    }

    /// `q^n` to the given precision.
    pub fn monomial(n: usize, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if n < prec {
            s.coeffs[n] = FieldElem::one();
        }
        s
    }

    fn rehome(mut self) -> Self {
        let f = self.field;
        for c in &mut self.coeffs {
            *c = c.coerce(f).expect("coefficient in series field");
        }
        self
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coefficient(&self, n: usize) -> Result<&FieldElem> {
        self.coeffs.get(n).ok_or(Error::PrecisionExceeded {
            index: n,
            prec: self.prec(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElem::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, prec: usize) -> Self {
        QSeries {
            field: self.field,
            coeffs: self.coeffs.iter().take(prec).cloned().collect(),
        }
    }

    fn joined(&self, other: &QSeries) -> Result<QuadField> {
        self.field.join(other.field)
    }

    pub fn add(&self, other: &QSeries) -> Result<QSeries> {
        let field = self.joined(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(QSeries { field, coeffs }.rehome())
    }

    pub fn sub(&self, other: &QSeries) -> Result<QSeries> {
        let field = self.joined(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(QSeries { field, coeffs }.rehome())
    }

    /// Truncated product; the precision is the smaller of the two.
    pub fn mul(&self, other: &QSeries) -> Result<QSeries> {
        let field = self.joined(other)?;
        let prec = self.prec().min(other.prec());
        let mut coeffs = vec![FieldElem::zero().coerce(field)?; prec];
        for (i, a) in self.coeffs.iter().enumerate().take(prec) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(prec - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += &(a * b);
            }
        }
        Ok(QSeries { field, coeffs }.rehome())
    }

    pub fn scale(&self, c: &FieldElem) -> Result<QSeries> {
        let field = if c.is_rational() {
            self.field
        } else {
            self.field.join(c.field())?
        };
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        Ok(QSeries { field, coeffs }.rehome())
    }

    pub fn scale_rational(&self, r: &Rational) -> QSeries {
        QSeries {
            field: self.field,
            coeffs: self.coeffs.iter().map(|a| a.scale(r)).collect(),
        }
    }

    pub fn neg(&self) -> QSeries {
        self.scale_rational(&Rational::from_integer((-1).into()))
    }

    pub fn pow(&self, e: u32) -> Result<QSeries> {
        let mut acc = QSeries::one(self.prec());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `d = q d/dq`: multiplies the n-th coefficient by n.
    pub fn d_operator(&self) -> QSeries {
        self.d_pow(1)
    }

    /// `d^t`, applied coefficientwise as `n^t a(n)`.
    pub fn d_pow(&self, t: u32) -> QSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| {
                if t == 0 {
                    a.clone()
                } else {
                    a.scale(&Rational::from_integer(num_bigint::BigInt::from(n).pow(t)))
                }
            })
            .collect();
        QSeries {
            field: self.field,
            coeffs,
        }
    }

    /// `f(q) -> f(q^p)`, keeping the precision.
    pub fn v_operator(&self, p: usize) -> QSeries {
        assert!(p >= 1, "V_p needs p >= 1");
        let mut out = vec![FieldElem::zero().coerce(self.field).expect("zero coerces"); self.prec()];
        for (n, a) in self.coeffs.iter().enumerate() {
            if n * p >= out.len() {
                break;
            }
            out[n * p] = a.clone();
        }
        QSeries {
            field: self.field,
            coeffs: out,
        }
    }

    /// Applies the nontrivial automorphism of the coefficient field.
    pub fn galois_conj(&self) -> QSeries {
        QSeries {
            field: self.field,
            coeffs: self.coeffs.iter().map(FieldElem::conj).collect(),
        }
    }

    /// Floating-point evaluation at a real `q` for series with rational coefficients.
    pub fn eval_f64(&self, q: f64) -> Option<f64> {
        let mut acc = 0.0;
        let mut qn = 1.0;
        for c in &self.coeffs {
            let r = c.to_rational()?;
            acc += r.to_f64()? * qn;
            qn *= q;
        }
        Some(acc)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(FieldElem::is_rational)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let body = if c.is_rational() {
                c.to_string()
            } else {
                format!("({c})")
            };
            match n {
                0 => write!(f, "{body}")?,
                1 => write!(f, "{body}*q")?,
                _ => write!(f, "{body}*q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.prec())
    }
}

/// Coefficients in `n`, as rationals, when the series is rational.
pub fn rational_coeffs(s: &QSeries) -> Option<Vec<Rational>> {
    s.coeffs().iter().map(FieldElem::to_rational).collect()
}

/// True if every coefficient is zero past `prec`; used by callers that pad.
pub fn all_zero(coeffs: &[Rational]) -> bool {
    coeffs.iter().all(Zero::is_zero)
}
