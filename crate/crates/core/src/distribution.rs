use crate::error::{Result, WalkError};
use crate::quadrature::pairwise_sum;

/// A finitely supported probability mass function on the integers, stored
/// in ascending position order.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    entries: Vec<(i64, f64)>,
}

impl Distribution {
    /// Probabilities below this are omitted from the entry list.
    pub const DROP_THRESHOLD: f64 = 1e-300;

    const SUM_TOLERANCE: f64 = 1e-12;

    /// Validated constructor: positions strictly ascending, probabilities
    /// nonnegative and summing to one.
    pub fn new(entries: Vec<(i64, f64)>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(WalkError::Validation(
                "positions must be strictly ascending".into(),
            ));
        }
        if let Some(&(x, prob)) = entries
            .iter()
            .find(|(_, prob)| !(prob.is_finite() && *prob >= 0.0))
        {
            return Err(WalkError::Validation(format!(
                "invalid probability {prob} at x = {x}"
            )));
        }
        let dist = Self { entries };
        let total = dist.total();
        if (total - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(WalkError::Validation(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(dist)
    }

    pub(crate) fn from_sorted_unchecked(entries: Vec<(i64, f64)>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[(i64, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// P(X = x); zero off the stored support.
    pub fn probability(&self, x: i64) -> f64 {
        self.entries
            .binary_search_by_key(&x, |&(pos, _)| pos)
            .map(|i| self.entries[i].1)
            .unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        let probs: Vec<f64> = self.entries.iter().map(|&(_, prob)| prob).collect();
        pairwise_sum(&probs)
    }

    /// E[(X/scale)^r], summed in ascending x.
    pub fn moment(&self, r: u32, scale: f64) -> f64 {
        let terms: Vec<f64> = self
            .entries
            .iter()
            .map(|&(x, prob)| (x as f64 / scale).powi(r as i32) * prob)
            .collect();
        pairwise_sum(&terms)
    }

    /// Σ p(x) over a ≤ x ≤ b.
    pub fn interval_mass(&self, a: f64, b: f64) -> f64 {
        let probs: Vec<f64> = self
            .entries
            .iter()
            .filter(|&&(x, _)| a <= x as f64 && x as f64 <= b)
            .map(|&(_, prob)| prob)
            .collect();
        pairwise_sum(&probs)
    }

    /// ½ Σ_x |p(x) − q(x)| where `other` gives q at every position of `self`.
    /// Mass of q outside `self`'s support is not counted.
    pub fn total_variation<F>(&self, mut other: F) -> f64
    where
        F: FnMut(i64) -> f64,
    {
        let terms: Vec<f64> = self
            .entries
            .iter()
            .map(|&(x, prob)| (prob - other(x)).abs())
            .collect();
        0.5 * pairwise_sum(&terms)
    }
}
