//! Momentum-space picture of the walk.
//!
//! With ψ̂_t(k) = Σ_x e^{−ikx} ψ_t(x), one step of the walk becomes a 2×2
//! unitary Û1(k) or Û2(k). The two-step operator Û2Û1 has eigenvalues
//! λ_j = g(k) ∓ i√(1−g²) (j = 1 takes the + sign), and the rescaled position
//! carried by branch j is the group velocity iλ'_j/(2λ_j) = ∓ sgn(sin 2k) h(k).

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64 as C64;
use rustfft::FftPlanner;

use crate::coin::{CoinParameter, InitialCoin};
use crate::distribution::Distribution;
use crate::error::{Result, WalkError};
use crate::quadrature::{pairwise_sum, CompositeGauss};
use crate::walk::Operator;

/// Below this value of √(1 − g(k)²) the eigenvalues are treated as coincident.
pub const DEGENERACY_TOLERANCE: f64 = 1e-14;

const ZERO: C64 = C64::new(0.0, 0.0);

/// A 2×2 complex matrix on span{|0⟩, |1⟩}; `m[row][col]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinMatrix {
    pub m: [[C64; 2]; 2],
}

impl CoinMatrix {
    pub fn new(m: [[C64; 2]; 2]) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        let one = C64::new(1.0, 0.0);
        Self::new([[one, ZERO], [ZERO, one]])
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    pub fn mul(&self, rhs: &CoinMatrix) -> CoinMatrix {
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.m[i][0] * rhs.m[0][j] + self.m[i][1] * rhs.m[1][j];
            }
        }
        CoinMatrix::new(out)
    }

    pub fn adjoint(&self) -> CoinMatrix {
        let m = &self.m;
        CoinMatrix::new([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// max |(M†M − I)_{ij}|
    pub fn unitarity_defect(&self) -> f64 {
        let prod = self.adjoint().mul(self);
        let id = CoinMatrix::identity();
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((prod.m[i][j] - id.m[i][j]).norm());
            }
        }
        worst
    }
}

/// Û1(k) = 2cs·cos k·σ_z + (c² − e^{2ik}s²)|0⟩⟨1| + (c² − e^{−2ik}s²)|1⟩⟨0|
pub fn u1_hat(k: f64, p: &CoinParameter) -> CoinMatrix {
    let (c, s) = (p.c(), p.s());
    let diag = 2.0 * c * s * k.cos();
    let e2 = C64::from_polar(1.0, 2.0 * k);
    let c2 = C64::new(c * c, 0.0);
    CoinMatrix::new([
        [C64::new(diag, 0.0), c2 - e2 * (s * s)],
        [c2 - e2.conj() * (s * s), C64::new(-diag, 0.0)],
    ])
}

/// Û2(k) = 2cs·cos k·σ_z + (−s² + e^{−2ik}c²)|0⟩⟨1| + (−s² + e^{2ik}c²)|1⟩⟨0|
pub fn u2_hat(k: f64, p: &CoinParameter) -> CoinMatrix {
    let (c, s) = (p.c(), p.s());
    let diag = 2.0 * c * s * k.cos();
    let e2 = C64::from_polar(1.0, 2.0 * k);
    let ms2 = C64::new(-s * s, 0.0);
    CoinMatrix::new([
        [C64::new(diag, 0.0), ms2 + e2.conj() * (c * c)],
        [ms2 + e2 * (c * c), C64::new(-diag, 0.0)],
    ])
}

pub fn operator_hat(op: Operator, k: f64, p: &CoinParameter) -> CoinMatrix {
    match op {
        Operator::U1 => u1_hat(k, p),
        Operator::U2 => u2_hat(k, p),
    }
}

/// g(k) = 2c²s² sin² 2k + cos 2k, half the trace of Û2Û1.
pub fn g_of_k(k: f64, p: &CoinParameter) -> f64 {
    let (s2k, c2k) = (2.0 * k).sin_cos();
    2.0 * p.c2s2() * s2k * s2k + c2k
}

/// 1 − 4c²s²(c²s² sin² 2k + cos 2k), the radicand shared by h(k) and
/// √(1 − g²). Written as (1 − u) + u sin²k (2 − u cos²k) so that no
/// cancellation occurs near k = 0 when u = 1.
fn radicand(k: f64, p: &CoinParameter) -> f64 {
    let u = p.u();
    let (sk, ck) = k.sin_cos();
    (1.0 - u) + u * sk * sk * (2.0 - u * ck * ck)
}

/// 1 − 4c²s² cos 2k = (1 − u) + 2u sin²k
fn h_numerator(k: f64, p: &CoinParameter) -> f64 {
    let u = p.u();
    let sk = k.sin();
    (1.0 - u) + 2.0 * u * sk * sk
}

/// √(1 − g(k)²), evaluated as |sin 2k|·√radicand to avoid cancellation near g = ±1.
fn eigen_gap(k: f64, p: &CoinParameter) -> f64 {
    (2.0 * k).sin().abs() * radicand(k, p).sqrt()
}

/// The two branches of the spectrum, in the (−1)^j sign convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// j = 1: λ₁ = g + i√(1−g²)
    One,
    /// j = 2: λ₂ = g − i√(1−g²)
    Two,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::One, Branch::Two];

    /// (−1)^j
    pub fn sign(self) -> f64 {
        match self {
            Branch::One => -1.0,
            Branch::Two => 1.0,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Branch::One => 1,
            Branch::Two => 2,
        }
    }
}

/// λ_j(k) = g(k) − (−1)^j i√(1 − g(k)²). Defined at every k, including the
/// degenerate momenta where both branches meet.
pub fn eigenvalue(branch: Branch, k: f64, p: &CoinParameter) -> C64 {
    C64::new(g_of_k(k, p), -branch.sign() * eigen_gap(k, p))
}

pub fn eigenvalues(k: f64, p: &CoinParameter) -> [C64; 2] {
    [eigenvalue(Branch::One, k, p), eigenvalue(Branch::Two, k, p)]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub branch: Branch,
    pub eigenvalue: C64,
    /// Unit-norm eigenvector of Û2(k)Û1(k).
    pub vector: [C64; 2],
    /// N_j(k), the squared norm of the unnormalized closed-form vector.
    pub normalizer: f64,
}

/// Closed-form eigen-decomposition of Û2(k)Û1(k). The eigenvector formula
/// is 0/0 at k ∈ {0, ±π/2, ±π}; those momenta give [`WalkError::Degenerate`].
pub fn eigensystem(k: f64, p: &CoinParameter) -> Result<[EigenPair; 2]> {
    if !k.is_finite() {
        return Err(WalkError::Domain(format!(
            "momentum must be finite, got {k}"
        )));
    }
    let g = g_of_k(k, p);
    let gap = eigen_gap(k, p);
    if gap <= DEGENERACY_TOLERANCE {
        return Err(WalkError::Degenerate { k });
    }
    let (c, s) = (p.c(), p.s());
    let (c2, s2) = (c * c, s * s);
    let s2k = (2.0 * k).sin();
    let sk = k.sin();
    // c⁴ + s⁴ − 2c²s² cos 2k = (1 − u) + u sin²k
    let base = ((1.0 - p.u()) + p.u() * sk * sk) * s2k;
    // 1 − cos 2k = 2 sin²k
    let lower = C64::new(2.0 * sk * sk, -(c2 - s2) * s2k) * (2.0 * c * s * k.cos());
    let lower_norm = lower.norm_sqr();

    let make = |branch: Branch| -> Result<EigenPair> {
        let upper_re = base + branch.sign() * gap;
        let normalizer = upper_re * upper_re + lower_norm;
        if normalizer <= 0.0 || !normalizer.is_finite() {
            return Err(WalkError::Degenerate { k });
        }
        let scale = normalizer.sqrt().recip();
        Ok(EigenPair {
            branch,
            eigenvalue: C64::new(g, -branch.sign() * gap),
            vector: [C64::new(0.0, upper_re * scale), lower * scale],
            normalizer,
        })
    };
    Ok([make(Branch::One)?, make(Branch::Two)?])
}

/// h(k) = (1 − 4c²s² cos 2k) / √(1 − 4c²s²(c²s² sin² 2k + cos 2k)).
pub fn h_of_k(k: f64, p: &CoinParameter) -> Result<f64> {
    p.require_limit_regime()?;
    let numer = h_numerator(k, p);
    let rad = radicand(k, p);
    if rad == 0.0 {
        // u = 1 at k ∈ {0, ±π}: both vanish and h tends to √(1 − u) = 0
        return Ok(0.0);
    }
    Ok(numer / rad.sqrt())
}

/// iλ'_j(k) / (2λ_j(k)) = (−1)^j sgn(sin 2k) h(k).
pub fn group_velocity(branch: Branch, k: f64, p: &CoinParameter) -> Result<f64> {
    let s2k = (2.0 * k).sin();
    if s2k.abs() < 1e-15 {
        return Err(WalkError::Domain(format!(
            "group velocity undefined at sin 2k = 0 (k = {k})"
        )));
    }
    Ok(branch.sign() * s2k.signum() * h_of_k(k, p)?)
}

/// ψ̂_t(k) at a single momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierState {
    pub k: f64,
    pub time: u64,
    pub value: [C64; 2],
}

impl FourierState {
    /// ψ̂_0(k) = (α, β) for the walker localized at the origin.
    pub fn initial(k: f64, coin: &InitialCoin) -> Self {
        Self {
            k,
            time: 0,
            value: coin.as_pair(),
        }
    }

    /// Applies Û1 at even times and Û2 at odd times.
    pub fn evolve(&mut self, steps: u64, p: &CoinParameter) {
        let mats = [u1_hat(self.k, p), u2_hat(self.k, p)];
        for _ in 0..steps {
            self.value = mats[(self.time % 2) as usize].apply(self.value);
            self.time += 1;
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.value[0].norm_sqr() + self.value[1].norm_sqr()
    }
}

/// Smallest n ≥ `min` whose only prime factors are 2, 3 and 5.
fn smooth_size(min: usize) -> usize {
    let mut n = min.max(1);
    loop {
        let mut m = n;
        for f in [2, 3, 5] {
            while m.is_multiple_of(f) {
                m /= f;
            }
        }
        if m == 1 {
            return n;
        }
        n += 1;
    }
}

/// Position distribution at time `t` recovered from momentum space.
///
/// ψ̂_t is a trigonometric polynomial with frequencies in [−2t, 2t], so
/// sampling it on N ≥ 4t + 1 equispaced momenta and inverting the discrete
/// Fourier sum recovers every amplitude exactly (up to rounding).
pub fn reconstruct_distribution(t: u64, coin: &InitialCoin, p: &CoinParameter) -> Distribution {
    let reach = 2 * t as usize;
    let n = smooth_size(2 * reach + 5);
    let mut up = Vec::with_capacity(n);
    let mut down = Vec::with_capacity(n);
    for m in 0..n {
        let k = 2.0 * PI * m as f64 / n as f64;
        let mut st = FourierState::initial(k, coin);
        st.evolve(t, p);
        up.push(st.value[0]);
        down.push(st.value[1]);
    }
    let ifft = FftPlanner::new().plan_fft_inverse(n);
    ifft.process(&mut up);
    ifft.process(&mut down);
    let scale = (n as f64).recip();
    let reach = reach as i64;
    let entries = (-reach..=reach)
        .map(|x| {
            let idx = x.rem_euclid(n as i64) as usize;
            (
                x,
                (up[idx] * scale).norm_sqr() + (down[idx] * scale).norm_sqr(),
            )
        })
        .filter(|&(_, prob)| prob >= Distribution::DROP_THRESHOLD)
        .collect();
    Distribution::from_sorted_unchecked(entries)
}

/// Settings for the composite Gauss–Legendre evaluation of limit moments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentQuadrature {
    /// Gauss–Legendre nodes per panel.
    pub order: usize,
    /// Panels per half of (0, π/2) at the first pass.
    pub initial_panels: usize,
    /// Stop doubling once successive estimates differ by less than this.
    pub tolerance: f64,
    pub max_panels: usize,
}

impl Default for MomentQuadrature {
    fn default() -> Self {
        Self {
            order: 64,
            initial_panels: 16,
            tolerance: 1e-10,
            max_panels: 1024,
        }
    }
}

/// The k-integrand of the folded moment representation on (0, π/2):
///
/// (−h)^r Σ|⟨w|ψ⟩|² over w ∈ {v₁, v̄₁}, ψ ∈ {φ, φ̃}
///   + h^r Σ|⟨w|ψ⟩|² over w ∈ {v₂, v̄₂}, ψ ∈ {φ, φ̃}, all over 2π.
fn folded_integrand(k: f64, r: u32, coin: &InitialCoin, p: &CoinParameter) -> Result<f64> {
    let pairs = eigensystem(k, p)?;
    let h = h_of_k(k, p)?;
    let states = [coin.as_pair(), coin.reflected()];
    let weight = |v: &[C64; 2]| -> f64 {
        let mut acc = 0.0;
        for psi in &states {
            // ⟨v|ψ⟩ and ⟨v̄|ψ⟩
            acc += (v[0].conj() * psi[0] + v[1].conj() * psi[1]).norm_sqr();
            acc += (v[0] * psi[0] + v[1] * psi[1]).norm_sqr();
        }
        acc
    };
    let lobe1 = (-h).powi(r as i32) * weight(&pairs[0].vector);
    let lobe2 = h.powi(r as i32) * weight(&pairs[1].vector);
    Ok((lobe1 + lobe2) / (2.0 * PI))
}

/// lim E[(X_t/t)^r] from the momentum-space representation, with default
/// quadrature settings.
pub fn limit_moment(r: u32, coin: &InitialCoin, p: &CoinParameter) -> Result<f64> {
    limit_moment_with(r, coin, p, &MomentQuadrature::default())
}

/// The limit moment ∫ Σ_j (iλ'_j/2λ_j)^r |⟨v_j|φ⟩|² dk/2π, folded onto
/// (0, π/2) and integrated on the two halves split at π/4. Panels are doubled
/// until two successive estimates agree to `quad.tolerance`.
pub fn limit_moment_with(
    r: u32,
    coin: &InitialCoin,
    p: &CoinParameter,
    quad: &MomentQuadrature,
) -> Result<f64> {
    p.require_limit_regime()?;
    let rule = CompositeGauss::new(quad.order);
    let estimate = |panels: usize| -> Result<f64> {
        let mut err = None;
        let mut halves = [0.0; 2];
        for (half, (a, b)) in [(0.0, FRAC_PI_4), (FRAC_PI_4, FRAC_PI_2)]
            .into_iter()
            .enumerate()
        {
            halves[half] =
                rule.integrate(a, b, panels, |k| match folded_integrand(k, r, coin, p) {
                    Ok(v) => v,
                    Err(e) => {
                        err.get_or_insert(e);
                        0.0
                    }
                });
        }
        match err {
            Some(e) => Err(e),
            None => Ok(pairwise_sum(&halves)),
        }
    };
    let mut panels = quad.initial_panels.max(1);
    let mut prev = estimate(panels)?;
    while panels < quad.max_panels {
        panels *= 2;
        let next = estimate(panels)?;
        if (next - prev).abs() < quad.tolerance {
            return Ok(next);
        }
        prev = next;
    }
    Ok(prev)
}
