use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Result, WalkError};

/// Below this value of `u = 4c²s²` the angle is treated as one of the axis
/// cases θ ∈ {0, π/2}, where the limit law does not exist.
pub const AXIS_U_TOLERANCE: f64 = 1e-14;

const NORM_TOLERANCE: f64 = 1e-10;

/// The coin angle θ ∈ [0, π) together with its cached trigonometric values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinParameter {
    theta: f64,
    c: f64,
    s: f64,
    u: f64,
}

impl CoinParameter {
    /// Builds a parameter from an angle already in `[0, π)`.
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(WalkError::Domain(format!(
                "theta must be finite, got {theta}"
            )));
        }
        if !(0.0..PI).contains(&theta) {
            return Err(WalkError::Domain(format!(
                "theta = {theta} is outside [0, pi)"
            )));
        }
        let u = (2.0 * theta).sin().powi(2).clamp(0.0, 1.0);
        Ok(Self::from_parts(theta, u))
    }

    /// Like [`CoinParameter::new`] but first reduces any finite angle modulo π.
    pub fn new_reduced(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(WalkError::Domain(format!(
                "theta must be finite, got {theta}"
            )));
        }
        let mut reduced = theta.rem_euclid(PI);
        // rem_euclid can round up to exactly PI for tiny negative inputs
        if reduced >= PI {
            reduced = 0.0;
        }
        Self::new(reduced)
    }

    /// θ = (num/den)·π. When 4·num/den is an integer, `u` is set to its exact
    /// value (0 or 1) so that e.g. π/4 hits the closed-gap case exactly.
    pub fn from_pi_fraction(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(WalkError::Domain("zero denominator in pi fraction".into()));
        }
        if num >= den {
            return Err(WalkError::Domain(format!(
                "{num}pi/{den} is outside [0, pi)"
            )));
        }
        let theta = num as f64 * PI / den as f64;
        let quarter = 4 * num;
        let u = if quarter.is_multiple_of(den) {
            // 2θ is a multiple of π/2: sin²(2θ) is 0 for even multiples, 1 for odd ones
            if (quarter / den).is_multiple_of(2) {
                0.0
            } else {
                1.0
            }
        } else {
            (2.0 * theta).sin().powi(2).clamp(0.0, 1.0)
        };
        Ok(Self::from_parts(theta, u))
    }

    fn from_parts(theta: f64, u: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { theta, c, s, u }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// cos θ
    pub fn c(&self) -> f64 {
        self.c
    }

    /// sin θ
    pub fn s(&self) -> f64 {
        self.s
    }

    /// 4c²s² = sin²(2θ)
    pub fn u(&self) -> f64 {
        self.u
    }

    /// c²s² = u/4
    pub fn c2s2(&self) -> f64 {
        0.25 * self.u
    }

    /// True for θ ∈ {0, π/2} (up to [`AXIS_U_TOLERANCE`]).
    pub fn is_axis(&self) -> bool {
        self.u <= AXIS_U_TOLERANCE
    }

    /// Fails for the axis angles, where the walk is a pure swap/shift and no
    /// continuous limit law exists.
    pub fn require_limit_regime(&self) -> Result<()> {
        if self.is_axis() {
            Err(WalkError::Domain(format!(
                "theta = {} is excluded: the limit law requires theta != 0, pi/2",
                self.theta
            )))
        } else {
            Ok(())
        }
    }
}

/// Coin amplitudes (α, β) of the walker's localized start state α|0⟩ + β|1⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialCoin {
    alpha: C64,
    beta: C64,
}

impl InitialCoin {
    pub fn new(alpha: C64, beta: C64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite()) {
            return Err(WalkError::Validation(
                "coin amplitudes must be finite".into(),
            ));
        }
        let norm2 = alpha.norm_sqr() + beta.norm_sqr();
        if (norm2 - 1.0).abs() > NORM_TOLERANCE {
            return Err(WalkError::Validation(format!(
                "|alpha|^2 + |beta|^2 = {norm2}, expected 1"
            )));
        }
        Ok(Self { alpha, beta })
    }

    /// Rescales (α, β) to unit norm. Fails only for the zero vector.
    pub fn normalized(alpha: C64, beta: C64) -> Result<Self> {
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(WalkError::Validation(
                "cannot normalize a zero coin state".into(),
            ));
        }
        Self::new(alpha / norm, beta / norm)
    }

    /// |0⟩
    pub fn up() -> Self {
        Self {
            alpha: C64::new(1.0, 0.0),
            beta: C64::new(0.0, 0.0),
        }
    }

    /// (1/√2)|0⟩ + (i/√2)|1⟩, the symmetric start state.
    pub fn symmetric() -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            alpha: C64::new(r, 0.0),
            beta: C64::new(0.0, r),
        }
    }

    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    pub fn beta(&self) -> C64 {
        self.beta
    }

    /// |α|²
    pub fn alpha2(&self) -> f64 {
        self.alpha.norm_sqr()
    }

    pub fn as_pair(&self) -> [C64; 2] {
        [self.alpha, self.beta]
    }

    /// (|0⟩⟨0| − |1⟩⟨1|)φ = (α, −β)
    pub fn reflected(&self) -> [C64; 2] {
        [self.alpha, -self.beta]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn pi_over_three() {
        let p = CoinParameter::new(PI / 3.0).unwrap();
        assert_abs_diff_eq!(p.c(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p.s(), 3f64.sqrt() / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.u(), 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(p.c() * p.c() + p.s() * p.s(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn axis_zero() {
        let p = CoinParameter::new(0.0).unwrap();
        assert_eq!((p.c(), p.s(), p.u()), (1.0, 0.0, 0.0));
        assert!(p.is_axis());
        assert!(p.require_limit_regime().is_err());
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(CoinParameter::new(3.5), Err(WalkError::Domain(_))));
        assert!(CoinParameter::new(PI).is_err());
        assert!(CoinParameter::new(-0.1).is_err());
        assert!(CoinParameter::new(f64::NAN).is_err());
    }

    #[test]
    fn reduction_is_opt_in() {
        let p = CoinParameter::new_reduced(3.5).unwrap();
        assert_abs_diff_eq!(p.theta(), 3.5 - PI, epsilon = 1e-15);
        let q = CoinParameter::new_reduced(-PI / 4.0).unwrap();
        assert_abs_diff_eq!(q.theta(), 3.0 * PI / 4.0, epsilon = 1e-15);
    }

    #[test]
    fn exact_fractions() {
        assert_eq!(CoinParameter::from_pi_fraction(1, 4).unwrap().u(), 1.0);
        assert_eq!(CoinParameter::from_pi_fraction(3, 4).unwrap().u(), 1.0);
        assert_eq!(CoinParameter::from_pi_fraction(1, 2).unwrap().u(), 0.0);
        assert_eq!(CoinParameter::from_pi_fraction(0, 7).unwrap().u(), 0.0);
        assert_eq!(CoinParameter::from_pi_fraction(2, 8).unwrap().u(), 1.0);
        assert!(CoinParameter::from_pi_fraction(1, 1).is_err());
        assert!(CoinParameter::from_pi_fraction(1, 0).is_err());
        assert!(CoinParameter::from_pi_fraction(1, 2)
            .unwrap()
            .require_limit_regime()
            .is_err());
    }

    #[test]
    fn initial_coin_validation() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(InitialCoin::new(C64::new(r, 0.0), C64::new(0.0, r)).is_ok());
        assert!(matches!(
            InitialCoin::new(C64::new(1.0, 0.0), C64::new(1.0, 0.0)),
            Err(WalkError::Validation(_))
        ));
        let n = InitialCoin::normalized(C64::new(1.0, 0.0), C64::new(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(n.alpha2(), 0.5, epsilon = 1e-15);
        assert!(InitialCoin::normalized(C64::new(0.0, 0.0), C64::new(0.0, 0.0)).is_err());
        assert_eq!(n.reflected()[1], -n.beta());
    }
}
