//! Long-time limit law of X_t/t.
//!
//! The rescaled position converges weakly to an absolutely continuous law on
//! two lobes ±(inner, outer), where inner = √(1 − 4c²s²) and
//! outer = √(1 + 4c²s²). The density is
//!
//! ```text
//! f(x) ν₊(x) 1[x ∈ D] + f(−x) ν₋(x) 1[−x ∈ D],   D = (inner, outer)
//! ```
//!
//! and has inverse-square-root blow-ups at the four lobe edges (only two when
//! θ = π/4 or 3π/4, where the inner edges merge at the origin).

use std::f64::consts::PI;

use crate::coin::{CoinParameter, InitialCoin};
use crate::distribution::Distribution;
use crate::error::{Result, WalkError};
use crate::quadrature::{pairwise_sum, CompositeGauss};

/// Points this close to a lobe edge are treated as lying on it.
pub const EDGE_TOLERANCE: f64 = 1e-12;

/// arccos arguments within this distance outside [−1, 1] are clamped.
pub const ARCCOS_CLAMP: f64 = 1e-12;

const LOBE_ORDER: usize = 64;
const LOBE_PANELS: usize = 8;

/// D(x) = 1 − 16c⁴s⁴ + 4c⁴s⁴x²
pub fn d_of_x(x: f64, p: &CoinParameter) -> f64 {
    let u2 = p.u() * p.u();
    1.0 - u2 + 0.25 * u2 * x * x
}

/// W₊(x) = 2(1 + 4c²s²) − (1 + 2c²s²)x² − x√D(x)
pub fn w_plus(x: f64, p: &CoinParameter) -> f64 {
    let u = p.u();
    2.0 * (1.0 + u) - (1.0 + 0.5 * u) * x * x - x * d_of_x(x, p).sqrt()
}

/// W₋(x) = −2(1 − 4c²s²) + (1 − 2c²s²)x² + x√D(x)
pub fn w_minus(x: f64, p: &CoinParameter) -> f64 {
    let u = p.u();
    -2.0 * (1.0 - u) + (1.0 - 0.5 * u) * x * x + x * d_of_x(x, p).sqrt()
}

/// ν₊(x) = 1 + (2c²s²x + √D(x))/(1 + 4c²s²) · (2|α|² − 1)
pub fn nu_plus(x: f64, alpha2: f64, p: &CoinParameter) -> f64 {
    1.0 + (0.5 * p.u() * x + d_of_x(x, p).sqrt()) / (1.0 + p.u()) * (2.0 * alpha2 - 1.0)
}

/// ν₋(x) = 1 + (2c²s²x − √D(x))/(1 + 4c²s²) · (2|α|² − 1)
pub fn nu_minus(x: f64, alpha2: f64, p: &CoinParameter) -> f64 {
    1.0 + (0.5 * p.u() * x - d_of_x(x, p).sqrt()) / (1.0 + p.u()) * (2.0 * alpha2 - 1.0)
}

/// The positive lobe (inner, outer) of the limit law's support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportInterval {
    pub inner: f64,
    pub outer: f64,
}

impl SupportInterval {
    /// Strictly inside (inner, outer).
    pub fn contains(&self, x: f64) -> bool {
        self.inner < x && x < self.outer
    }

    /// Within [`EDGE_TOLERANCE`] of either edge.
    pub fn is_edge(&self, x: f64) -> bool {
        (x - self.inner).abs() <= EDGE_TOLERANCE || (x - self.outer).abs() <= EDGE_TOLERANCE
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.inner + self.outer)
    }
}

pub fn support(p: &CoinParameter) -> Result<SupportInterval> {
    p.require_limit_regime()?;
    let u = p.u();
    Ok(SupportInterval {
        inner: (1.0 - u).sqrt(),
        outer: (1.0 + u).sqrt(),
    })
}

/// f(x) without range checks. Returns a non-finite value when rounding puts
/// W± at or below zero.
fn f_unchecked(x: f64, p: &CoinParameter) -> f64 {
    dk_dx_unchecked(x, p) / PI
}

fn dk_dx_unchecked(x: f64, p: &CoinParameter) -> f64 {
    let root_d = d_of_x(x, p).sqrt();
    let numer = (x + 2.0 * root_d).powi(2);
    numer / (2.0 * (4.0 - x * x) * root_d * w_plus(x, p).sqrt() * w_minus(x, p).sqrt())
}

fn require_open_support(x: f64, p: &CoinParameter) -> Result<SupportInterval> {
    let sup = support(p)?;
    if !sup.contains(x) || sup.is_edge(x) {
        return Err(WalkError::Domain(format!(
            "x = {x} is not inside the open support ({}, {})",
            sup.inner, sup.outer
        )));
    }
    Ok(sup)
}

/// f(x) = (x + 2√D)² / (2π(4 − x²)√D √W₊ √W₋) on the open support.
pub fn f_of_x(x: f64, p: &CoinParameter) -> Result<f64> {
    require_open_support(x, p)?;
    let val = f_unchecked(x, p);
    if val.is_finite() {
        Ok(val)
    } else {
        Err(WalkError::Domain(format!(
            "f is not finite at x = {x} (too close to an edge)"
        )))
    }
}

/// dk/dx of the inverse of h on (inner, outer).
pub fn dk_dx(x: f64, p: &CoinParameter) -> Result<f64> {
    require_open_support(x, p)?;
    let val = dk_dx_unchecked(x, p);
    if val.is_finite() {
        Ok(val)
    } else {
        Err(WalkError::Domain(format!("dk/dx is not finite at x = {x}")))
    }
}

/// Solves h(k) = x for k ∈ [0, π/2]:
/// k = ½ arccos((2 − x² − x√D) / (2c²s²(4 − x²))).
pub fn k_of_x(x: f64, p: &CoinParameter) -> Result<f64> {
    let sup = support(p)?;
    let inside = sup.inner - EDGE_TOLERANCE <= x && x <= sup.outer + EDGE_TOLERANCE;
    if !inside {
        return Err(WalkError::Domain(format!(
            "x = {x} is outside the closed support [{}, {}]",
            sup.inner, sup.outer
        )));
    }
    let arg = (2.0 - x * x - x * d_of_x(x, p).sqrt()) / (2.0 * p.c2s2() * (4.0 - x * x));
    let arg = if arg.abs() > 1.0 && arg.abs() <= 1.0 + ARCCOS_CLAMP {
        arg.signum()
    } else {
        arg
    };
    if !(-1.0..=1.0).contains(&arg) {
        return Err(WalkError::Domain(format!(
            "arccos argument {arg} out of range at x = {x}"
        )));
    }
    Ok(0.5 * arg.acos())
}

/// Estimated width 2√(1 − 4c²s²)·t of the empty region around the origin.
pub fn gap_width(t: u64, p: &CoinParameter) -> Result<f64> {
    Ok(2.0 * support(p)?.inner * t as f64)
}

/// The limit density for a coin parameter and initial weight |α|².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitDensityModel {
    p: CoinParameter,
    alpha2: f64,
    support: SupportInterval,
}

impl LimitDensityModel {
    pub fn new(p: CoinParameter, alpha2: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha2) {
            return Err(WalkError::Domain(format!(
                "|alpha|^2 = {alpha2} is outside [0, 1]"
            )));
        }
        let support = support(&p)?;
        Ok(Self { p, alpha2, support })
    }

    /// The law depends on the coin only through |α|².
    pub fn from_coin(p: CoinParameter, coin: &InitialCoin) -> Result<Self> {
        Self::new(p, coin.alpha2().clamp(0.0, 1.0))
    }

    pub fn parameter(&self) -> &CoinParameter {
        &self.p
    }

    pub fn alpha2(&self) -> f64 {
        self.alpha2
    }

    pub fn support(&self) -> SupportInterval {
        self.support
    }

    /// True when |x| sits on one of the four singular abscissae.
    pub fn is_boundary(&self, x: f64) -> bool {
        self.support.is_edge(x.abs())
    }

    fn positive_lobe(&self, y: f64) -> f64 {
        f_unchecked(y, &self.p) * nu_plus(y, self.alpha2, &self.p)
    }

    fn negative_lobe(&self, y: f64) -> f64 {
        f_unchecked(-y, &self.p) * nu_minus(y, self.alpha2, &self.p)
    }

    /// f(x)ν₊(x)1[x ∈ D] + f(−x)ν₋(x)1[−x ∈ D]. Lobe edges are a domain error.
    pub fn density(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(WalkError::Domain(format!("x = {x} is not finite")));
        }
        if self.is_boundary(x) {
            return Err(WalkError::Domain(format!(
                "x = {x} is a singular edge of the support"
            )));
        }
        let mut val = 0.0;
        if self.support.contains(x) {
            val += self.positive_lobe(x);
        }
        if self.support.contains(-x) {
            val += self.negative_lobe(x);
        }
        if val.is_finite() {
            Ok(val)
        } else {
            Err(WalkError::Domain(format!(
                "density is not finite at x = {x}"
            )))
        }
    }

    /// ∫_a^b g(y)·ρ(y) dy over a piece [a, b] of one lobe, `positive`
    /// selecting which. Both ends may carry edge singularities.
    fn lobe_integral<G>(&self, positive: bool, a: f64, b: f64, g: &G) -> f64
    where
        G: Fn(f64) -> f64,
    {
        let rule = CompositeGauss::new(LOBE_ORDER);
        if positive {
            rule.integrate_edge_singular(a, b, LOBE_PANELS, |y| g(y) * self.positive_lobe(y))
        } else {
            // the negative lobe in the mirrored variable z = −y ∈ [−b, −a]
            rule.integrate_edge_singular(-b, -a, LOBE_PANELS, |z| g(-z) * self.negative_lobe(-z))
        }
    }

    /// ∫ g(x) ρ(x) dx over the whole support.
    pub fn integrate<G>(&self, g: G) -> f64
    where
        G: Fn(f64) -> f64,
    {
        let SupportInterval { inner, outer } = self.support;
        self.lobe_integral(false, -outer, -inner, &g) + self.lobe_integral(true, inner, outer, &g)
    }

    /// ∫ x^r ρ(x) dx.
    pub fn moment(&self, r: u32) -> f64 {
        self.integrate(|x| x.powi(r as i32))
    }

    /// Total mass; one up to quadrature error.
    pub fn total_mass(&self) -> f64 {
        self.moment(0)
    }

    /// Mass of one lobe restricted to [a, b] ⊆ lobe. Integrates whichever of
    /// [a, b] or its complement within the lobe keeps the quadrature away from
    /// a nearby singular edge.
    fn lobe_mass(&self, positive: bool, a: f64, b: f64) -> f64 {
        let one = |_: f64| 1.0;
        let (lo, hi) = if positive {
            (self.support.inner, self.support.outer)
        } else {
            (-self.support.outer, -self.support.inner)
        };
        if a <= lo && b >= hi {
            return self.lobe_integral(positive, lo, hi, &one);
        }
        let whole = self.lobe_integral(positive, lo, hi, &one);
        let mid = 0.5 * (lo + hi);
        // [lo, b] with b interior
        if a <= lo {
            return if b <= mid {
                self.lobe_integral(positive, lo, b, &one)
            } else {
                whole - self.lobe_integral(positive, b, hi, &one)
            };
        }
        // [a, hi] with a interior
        if a >= mid {
            self.lobe_integral(positive, a, hi, &one)
        } else {
            whole - self.lobe_integral(positive, lo, a, &one)
        }
    }

    /// lim P(X_t/t ≤ x).
    pub fn cdf(&self, x: f64) -> f64 {
        let SupportInterval { inner, outer } = self.support;
        if x.is_nan() {
            return f64::NAN;
        }
        if x <= -outer {
            return 0.0;
        }
        let neg_full = || self.lobe_mass(false, -outer, -inner);
        if x < -inner {
            return self.lobe_mass(false, -outer, x);
        }
        if x <= inner {
            return neg_full();
        }
        if x < outer {
            return neg_full() + self.lobe_mass(true, inner, x);
        }
        neg_full() + self.lobe_mass(true, inner, outer)
    }

    /// (1/t)·ρ(x/t), the limit law's estimate of P(X_t = x).
    pub fn approx_probability(&self, x: i64, t: u64) -> Result<f64> {
        if t == 0 {
            return Err(WalkError::Domain("approximation requires t >= 1".into()));
        }
        let t = t as f64;
        Ok(self.density(x as f64 / t)? / t)
    }

    /// [`approx_probability`](Self::approx_probability) with lattice sites
    /// that land on a singular edge evaluated half a site into the support.
    pub fn lattice_approximation(&self, x: i64, t: u64) -> Result<f64> {
        match self.approx_probability(x, t) {
            Err(WalkError::Domain(_)) if t > 0 && self.is_boundary(x as f64 / t as f64) => {
                let tf = t as f64;
                let mag = (x as f64).abs();
                let on_inner = (mag / tf - self.support.inner).abs() <= EDGE_TOLERANCE;
                let nudged = if on_inner { mag + 0.5 } else { mag - 0.5 };
                let sign = if x < 0 { -1.0 } else { 1.0 };
                Ok(self.density(sign * nudged / tf)? / tf)
            }
            other => other,
        }
    }
    /// ½ Σ_x |P(X_t = x) − (1/t)ρ(x/t)| over the light cone |x| ≤ 2t, with
    /// edge sites handled as in [`lattice_approximation`](Self::lattice_approximation).
    pub fn total_variation(&self, dist: &Distribution, t: u64) -> Result<f64> {
        let reach = 2 * t as i64;
        let terms = (-reach..=reach)
            .map(|x| Ok((dist.probability(x) - self.lattice_approximation(x, t)?).abs()))
            .collect::<Result<Vec<f64>>>()?;
        Ok(0.5 * pairwise_sum(&terms))
    }
}
