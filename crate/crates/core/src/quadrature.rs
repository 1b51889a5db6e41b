//! Composite Gauss–Legendre rules and a fixed-order summation helper.
//!
//! All sums here go through [`pairwise_sum`], so the rounding pattern of a
//! result depends only on its inputs.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;

/// Sums with a fixed binary tree: halves are summed recursively, leaves of at
/// most eight terms are summed left to right.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 8 {
        values.iter().sum()
    } else {
        let (lo, hi) = values.split_at(values.len() / 2);
        pairwise_sum(lo) + pairwise_sum(hi)
    }
}

/// A Gauss–Legendre rule of fixed order applied over equal-width panels.
/// Nodes are interior, so endpoints of a panel are never evaluated.
pub struct CompositeGauss {
    rule: GaussLegendre,
}

impl CompositeGauss {
    pub fn new(order: usize) -> Self {
        let order = NonZeroUsize::new(order.max(1)).expect("order clamped to >= 1");
        Self {
            rule: GaussLegendre::new(order),
        }
    }

    /// ∫_a^b f over `panels` equal sub-intervals.
    pub fn integrate<F>(&self, a: f64, b: f64, panels: usize, mut f: F) -> f64
    where
        F: FnMut(f64) -> f64,
    {
        let panels = panels.max(1);
        let width = (b - a) / panels as f64;
        let parts: Vec<f64> = (0..panels)
            .map(|i| {
                let lo = a + width * i as f64;
                let hi = if i + 1 == panels { b } else { lo + width };
                self.rule.integrate(lo, hi, &mut f)
            })
            .collect();
        pairwise_sum(&parts)
    }

    /// ∫_a^b f for integrands with (at worst) inverse-square-root blow-up at
    /// either endpoint. The interval is split at its midpoint; the left half
    /// uses y = a + v², the right half y = b − v², which turns 1/√ endpoint
    /// behaviour into a bounded integrand in v.
    pub fn integrate_edge_singular<F>(&self, a: f64, b: f64, panels: usize, mut f: F) -> f64
    where
        F: FnMut(f64) -> f64,
    {
        if b <= a {
            return 0.0;
        }
        let half = 0.5 * (b - a);
        let reach = half.sqrt();
        let left = self.integrate(0.0, reach, panels, |v| 2.0 * v * f(a + v * v));
        let right = self.integrate(0.0, reach, panels, |v| 2.0 * v * f(b - v * v));
        left + right
    }
}
