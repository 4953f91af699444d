//! Nearly holomorphic forms as polynomials in `w = 1/(4 pi y)` with q-series
//! coefficients, the Maass-Shimura operators and holomorphic projection.
//!
//! The derivation `d = q d/dq` acts on `w` by `d(w) = w^2`, so
//! `delta_lambda = d - lambda w` is purely algebraic in this representation.

use crate::arith::{binomial, gamma_ratio, int, Rational};
use crate::error::{Error, Result};
use crate::qseries::QSeries;

/// `sum_t layers[t] * w^t`, of nominal weight `weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearlyHoloForm {
    weight: i64,
    layers: Vec<QSeries>,
}

impl NearlyHoloForm {
    pub fn new(weight: i64, layers: Vec<QSeries>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::InvalidArgument("nearly holomorphic form without layers".into()));
        }
        Ok(NearlyHoloForm { weight, layers }.trimmed())
    }

    pub fn holomorphic(weight: i64, g: QSeries) -> Self {
        NearlyHoloForm {
            weight,
            layers: vec![g],
        }
    }

    fn trimmed(mut self) -> Self {
        while self.layers.len() > 1 && self.layers.last().is_some_and(QSeries::is_zero) {
            self.layers.pop();
        }
        self
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    /// Highest power of `w` with a nonzero layer (0 for a holomorphic form).
    pub fn degree(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer(&self, t: usize) -> Option<&QSeries> {
        self.layers.get(t)
    }

    pub fn layers(&self) -> &[QSeries] {
        &self.layers
    }

    pub fn prec(&self) -> usize {
        self.layers.iter().map(QSeries::prec).min().unwrap_or(0)
    }

    pub fn holomorphic_part(&self) -> &QSeries {
        &self.layers[0]
    }

    pub fn is_zero(&self) -> bool {
        self.layers.iter().all(QSeries::is_zero)
    }

    pub fn add(&self, other: &NearlyHoloForm) -> Result<NearlyHoloForm> {
        let prec = self.prec().min(other.prec());
        let n = self.layers.len().max(other.layers.len());
        let mut layers = Vec::with_capacity(n);
        for t in 0..n {
            let layer = match (self.layers.get(t), other.layers.get(t)) {
                (Some(a), Some(b)) => a.add(b)?,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            layers.push(layer.truncate(prec));
        }
        Ok(NearlyHoloForm {
            weight: self.weight,
            layers,
        }
        .trimmed())
    }

    pub fn sub(&self, other: &NearlyHoloForm) -> Result<NearlyHoloForm> {
        self.add(&other.scale_rational(&int(-1)))
    }

    pub fn scale_rational(&self, c: &Rational) -> NearlyHoloForm {
        NearlyHoloForm {
            weight: self.weight,
            layers: self.layers.iter().map(|g| g.scale_rational(c)).collect(),
        }
        .trimmed()
    }
}

/// `(d - lambda w) F`. The result has weight `F.weight + 2`.
pub fn delta(lambda: i64, f: &NearlyHoloForm) -> Result<NearlyHoloForm> {
    let prec = f.prec();
    let mut layers: Vec<QSeries> = (0..=f.layers.len()).map(|_| QSeries::zero(prec)).collect();
    for (t, g) in f.layers.iter().enumerate() {
        let g = g.truncate(prec);
        layers[t] = layers[t].add(&g.d_operator())?;
        // d(w^t) = t w^{t+1}, and -lambda w raises the degree by one.
        let shift = int(t as i64 - lambda);
        layers[t + 1] = layers[t + 1].add(&g.scale_rational(&shift))?;
    }
    Ok(NearlyHoloForm {
        weight: f.weight + 2,
        layers,
    }
    .trimmed())
}

/// `delta_{lambda+2r-2} ... delta_{lambda+2} delta_lambda F`; `r = 0` is the identity.
pub fn delta_iter(lambda: i64, r: usize, f: &NearlyHoloForm) -> Result<NearlyHoloForm> {
    let mut out = f.clone();
    for i in 0..r {
        out = delta(lambda + 2 * i as i64, &out)?;
    }
    Ok(out)
}

/// Closed form of `delta_lambda^{(r)} h` for holomorphic `h`:
/// the `w^j` layer is `C(r,j) Gamma(lambda+r)/Gamma(lambda+r-j) (-1)^j d^{r-j} h`.
pub fn delta_iter_closed(lambda: i64, r: usize, h: &QSeries) -> Result<NearlyHoloForm> {
    let mut layers = Vec::with_capacity(r + 1);
    for j in 0..=r {
        let mut c = Rational::from_integer(binomial(r as u64, j as u64));
        c *= gamma_ratio(lambda + r as i64, lambda + (r - j) as i64)?;
        if j % 2 == 1 {
            c = -c;
        }
        layers.push(h.d_pow((r - j) as u32).scale_rational(&c));
    }
    NearlyHoloForm::new(lambda + 2 * r as i64, layers)
}

/// Multiplies every `w`-layer by the holomorphic series `g` of weight `l`.
pub fn mul_form(g: &QSeries, l: i64, f: &NearlyHoloForm) -> Result<NearlyHoloForm> {
    let layers = f
        .layers
        .iter()
        .map(|layer| g.mul(layer))
        .collect::<Result<Vec<_>>>()?;
    Ok(NearlyHoloForm {
        weight: f.weight + l,
        layers,
    }
    .trimmed())
}

/// Writes `F = sum_nu delta_{k-2nu}^{(nu)} h_nu` with holomorphic `h_nu` and
/// returns `h_0, ..., h_{r_top}`.
///
/// The top layer of `delta_{k-2nu}^{(nu)} h` is `(-1)^nu Gamma(k-nu)/Gamma(k-2nu) h`,
/// so the `h_nu` are peeled off from the highest power of `w` downwards.
pub fn holomorphic_projection(f: &NearlyHoloForm, k: i64, r_top: usize) -> Result<Vec<QSeries>> {
    if k <= 2 * r_top as i64 {
        return Err(Error::WeightTooSmall { k, r: r_top });
    }
    if f.degree() > r_top {
        return Err(Error::InvalidArgument(format!(
            "form has w-degree {} above the projection degree {r_top}",
            f.degree()
        )));
    }
    let prec = f.prec();
    let mut residual = f.clone();
    let mut out = vec![QSeries::zero(prec); r_top + 1];
    for nu in (0..=r_top).rev() {
        let top = match residual.layer(nu) {
            Some(layer) if !layer.is_zero() => layer.truncate(prec),
            _ => continue,
        };
        let lambda = k - 2 * nu as i64;
        let mut lead = gamma_ratio(lambda, k - nu as i64)?;
        if nu % 2 == 1 {
            lead = -lead;
        }
        let h = top.scale_rational(&lead);
        let image = delta_iter(lambda, nu, &NearlyHoloForm::holomorphic(lambda, h.clone()))?;
        residual = residual.sub(&image)?;
        debug_assert!(residual.layer(nu).map_or(true, QSeries::is_zero));
        out[nu] = h;
    }
    if !residual.is_zero() {
        return Err(Error::InvalidArgument("projection residual did not vanish".into()));
    }
    Ok(out)
}

/// `sum_nu delta_{k-2nu}^{(nu)} h_nu`, the inverse of [`holomorphic_projection`].
pub fn reconstruct(hs: &[QSeries], k: i64) -> Result<NearlyHoloForm> {
    let prec = hs.iter().map(QSeries::prec).min().unwrap_or(0);
    let mut acc = NearlyHoloForm::holomorphic(k, QSeries::zero(prec));
    for (nu, h) in hs.iter().enumerate() {
        let lambda = k - 2 * nu as i64;
        let term = delta_iter(lambda, nu, &NearlyHoloForm::holomorphic(lambda, h.clone()))?;
        acc = acc.add(&term)?;
    }
    Ok(acc)
}
