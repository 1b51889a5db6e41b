//! Position-space evolution.
//!
//! The walk alternates two five-band operators: `U1` at even times and `U2`
//! at odd times. Each moves amplitude by at most two sites, so the occupied
//! window grows by two sites on each side per step.

use num_complex::Complex64 as C64;

use crate::coin::{CoinParameter, InitialCoin};
use crate::distribution::Distribution;

/// Amplitudes (a⁰_x, a¹_x) on the coin basis at one site.
pub type CoinPair = [C64; 2];

const ZERO: C64 = C64::new(0.0, 0.0);

/// Which of the two alternating operators to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    U1,
    U2,
}

impl Operator {
    /// U1 at even times, U2 at odd times.
    pub fn at_time(time: u64) -> Self {
        if time.is_multiple_of(2) {
            Operator::U1
        } else {
            Operator::U2
        }
    }
}

/// Per-shift 2×2 blocks of an operator: `blocks[d + 2]` maps the coin pair at
/// x to the contribution landing at x + d. Rows index the output coin.
#[derive(Debug, Clone, Copy)]
struct Stencil {
    blocks: [[[f64; 2]; 2]; 5],
}

impl Stencil {
    fn new(op: Operator, p: &CoinParameter) -> Self {
        let (c, s) = (p.c(), p.s());
        let (c2, s2, cs) = (c * c, s * s, c * s);
        let hop = [[cs, 0.0], [0.0, -cs]];
        match op {
            // x−2: −s²|0⟩⟨1|   x: c²(|0⟩⟨1|+|1⟩⟨0|)   x+2: −s²|1⟩⟨0|
            Operator::U1 => Self {
                blocks: [
                    [[0.0, -s2], [0.0, 0.0]],
                    hop,
                    [[0.0, c2], [c2, 0.0]],
                    hop,
                    [[0.0, 0.0], [-s2, 0.0]],
                ],
            },
            // x−2: c²|1⟩⟨0|   x: −s²(|0⟩⟨1|+|1⟩⟨0|)   x+2: c²|0⟩⟨1|
            Operator::U2 => Self {
                blocks: [
                    [[0.0, 0.0], [c2, 0.0]],
                    hop,
                    [[0.0, -s2], [-s2, 0.0]],
                    hop,
                    [[0.0, c2], [0.0, 0.0]],
                ],
            },
        }
    }
}

/// The walker's state on a finite window of sites at a given time.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    time: u64,
    offset: i64,
    amplitudes: Vec<CoinPair>,
}

impl WalkState {
    /// The walker at the origin with coin state α|0⟩ + β|1⟩, at time 0.
    pub fn localized(coin: &InitialCoin) -> Self {
        Self {
            time: 0,
            offset: 0,
            amplitudes: vec![coin.as_pair()],
        }
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    /// Lattice index of the first site in the window.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn amplitudes(&self) -> &[CoinPair] {
        &self.amplitudes
    }

    /// Inclusive range of lattice sites covered by the window.
    pub fn window(&self) -> (i64, i64) {
        (self.offset, self.offset + self.amplitudes.len() as i64 - 1)
    }

    /// Amplitude pair at site x (zero outside the window).
    pub fn amplitude_at(&self, x: i64) -> CoinPair {
        let idx = x - self.offset;
        if idx < 0 {
            return [ZERO; 2];
        }
        self.amplitudes
            .get(idx as usize)
            .copied()
            .unwrap_or([ZERO; 2])
    }

    /// Σ_x |a⁰_x|² + |a¹_x|².
    pub fn norm_sqr(&self) -> f64 {
        let terms: Vec<f64> = self
            .amplitudes
            .iter()
            .map(|[a0, a1]| a0.norm_sqr() + a1.norm_sqr())
            .collect();
        crate::quadrature::pairwise_sum(&terms)
    }

    /// Applies `op` once, growing the window by two sites on each side and
    /// advancing the clock by one step.
    pub fn apply(&mut self, op: Operator, p: &CoinParameter) {
        let stencil = Stencil::new(op, p);
        let old = &self.amplitudes;
        let mut next = vec![[ZERO; 2]; old.len() + 4];
        // old index i sits at new index i + 2; shift d lands at i + 2 + d
        for (i, &[a0, a1]) in old.iter().enumerate() {
            for (band, block) in stencil.blocks.iter().enumerate() {
                let out = &mut next[i + band];
                out[0] += a0 * block[0][0] + a1 * block[0][1];
                out[1] += a0 * block[1][0] + a1 * block[1][1];
            }
        }
        self.amplitudes = next;
        self.offset -= 2;
        self.time += 1;
    }

    /// One step of U1, returned as a new state.
    pub fn apply_u1(&self, p: &CoinParameter) -> Self {
        let mut next = self.clone();
        next.apply(Operator::U1, p);
        next
    }

    /// One step of U2, returned as a new state.
    pub fn apply_u2(&self, p: &CoinParameter) -> Self {
        let mut next = self.clone();
        next.apply(Operator::U2, p);
        next
    }

    /// Advances `steps` times, choosing U1 or U2 by the parity of the current time.
    pub fn evolve_in_place(&mut self, steps: u64, p: &CoinParameter) {
        for _ in 0..steps {
            self.apply(Operator::at_time(self.time), p);
        }
    }

    pub fn evolve(&self, steps: u64, p: &CoinParameter) -> Self {
        let mut next = self.clone();
        next.evolve_in_place(steps, p);
        next
    }

    /// Finding probability p(x) = |a⁰_x|² + |a¹_x|².
    pub fn distribution(&self) -> Distribution {
        Distribution::from_sorted_unchecked(
            self.amplitudes
                .iter()
                .enumerate()
                .map(|(i, [a0, a1])| (self.offset + i as i64, a0.norm_sqr() + a1.norm_sqr()))
                .filter(|&(_, prob)| prob >= Distribution::DROP_THRESHOLD)
                .collect(),
        )
    }
}

/// Runs the walk from the localized start state for `time` steps.
pub fn simulate(coin: &InitialCoin, p: &CoinParameter, time: u64) -> WalkState {
    let mut state = WalkState::localized(coin);
    state.evolve_in_place(time, p);
    state
}

/// Dense matrix of `op` on a ring of `sites` positions (periodic wrap), basis
/// ordered (x, coin) → 2x + coin. Used to check unitarity of the bands.
pub fn operator_matrix(op: Operator, p: &CoinParameter, sites: usize) -> Vec<Vec<C64>> {
    let stencil = Stencil::new(op, p);
    let dim = 2 * sites;
    let mut m = vec![vec![ZERO; dim]; dim];
    for x in 0..sites {
        for (band, block) in stencil.blocks.iter().enumerate() {
            let target = (x as i64 + band as i64 - 2).rem_euclid(sites as i64) as usize;
            for out in 0..2 {
                for inp in 0..2 {
                    m[2 * target + out][2 * x + inp] += C64::new(block[out][inp], 0.0);
                }
            }
        }
    }
    m
}
