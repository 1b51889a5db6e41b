//! Table builders behind each subcommand. No I/O happens here.

use std::f64::consts::PI;

use splitwalk::spectral::{eigenvalues, h_of_k, limit_moment};
use splitwalk::{simulate, CoinParameter, InitialCoin, LimitDensityModel, WalkState};

use crate::error::CliError;
use crate::output::{Cell, Table};

pub const MAX_MOMENT_ORDER: u32 = 8;

/// `x,probability` at time `t`, ascending x.
pub fn simulate_table(coin: &InitialCoin, p: &CoinParameter, t: u64) -> Table {
    let dist = simulate(coin, p, t).distribution();
    let mut table = Table::new(vec!["x", "probability"]);
    for &(x, prob) in dist.entries() {
        table.push(vec![Cell::Int(x), Cell::Real(prob)]);
    }
    table
}

/// `x,density` on `grid` equispaced points over [−outer − 0.1, outer + 0.1].
/// The grid is exactly mirror-symmetric; a point on a singular edge is moved
/// half a grid step into the support.
pub fn density_table(model: &LimitDensityModel, grid: usize) -> Result<Table, CliError> {
    if grid < 2 {
        return Err(CliError::Usage("--grid must be at least 2".into()));
    }
    let support = model.support();
    let half_width = support.outer + 0.1;
    let last = (grid - 1) as f64;
    let step = 2.0 * half_width / last;
    let mut table = Table::new(vec!["x", "density"]);
    for i in 0..grid {
        let mut x = (2.0 * i as f64 - last) * half_width / last;
        if model.is_boundary(x) {
            let inward = if (x.abs() - support.outer).abs() < 0.25 * step {
                -0.5 * step
            } else {
                0.5 * step
            };
            x = x.signum() * (x.abs() + inward);
        }
        table.push(vec![Cell::Real(x), Cell::Real(model.density(x)?)]);
    }
    Ok(table)
}

/// `x,p_simulated,p_limit_approx` over |x| ≤ 2t, plus the total-variation
/// distance between the two columns.
pub fn compare_table(
    coin: &InitialCoin,
    p: &CoinParameter,
    t: u64,
) -> Result<(Table, f64), CliError> {
    if t == 0 {
        return Err(CliError::Usage("compare requires --time >= 1".into()));
    }
    let model = LimitDensityModel::from_coin(*p, coin)?;
    let dist = simulate(coin, p, t).distribution();
    let reach = 2 * t as i64;
    let mut table = Table::new(vec!["x", "p_simulated", "p_limit_approx"]);
    for x in -reach..=reach {
        let approx = model.lattice_approximation(x, t)?;
        table.push(vec![
            Cell::Int(x),
            Cell::Real(dist.probability(x)),
            Cell::Real(approx),
        ]);
    }
    let tv = model.total_variation(&dist, t)?;
    Ok((table, tv))
}

/// `t,r,empirical,limit` for every requested (t, r).
pub fn moments_table(
    coin: &InitialCoin,
    p: &CoinParameter,
    orders: &[u32],
    times: &[u64],
) -> Result<Table, CliError> {
    if let Some(&r) = orders.iter().find(|&&r| r > MAX_MOMENT_ORDER) {
        return Err(CliError::Usage(format!(
            "moment order {r} exceeds {MAX_MOMENT_ORDER}"
        )));
    }
    if times.contains(&0) {
        return Err(CliError::Usage("moment times must be >= 1".into()));
    }
    if orders.is_empty() || times.is_empty() {
        return Err(CliError::Usage(
            "need at least one order and one time".into(),
        ));
    }
    p.require_limit_regime()?;
    let limits = orders
        .iter()
        .map(|&r| limit_moment(r, coin, p))
        .collect::<Result<Vec<f64>, _>>()?;

    let mut sorted: Vec<u64> = times.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut state = WalkState::localized(coin);
    let mut table = Table::new(vec!["t", "r", "empirical", "limit"]);
    for &t in &sorted {
        state.evolve_in_place(t - state.time(), p);
        let dist = state.distribution();
        for (&r, &limit) in orders.iter().zip(&limits) {
            table.push(vec![
                Cell::Int(t as i64),
                Cell::Int(r as i64),
                Cell::Real(dist.moment(r, t as f64)),
                Cell::Real(limit),
            ]);
        }
    }
    Ok(table)
}

/// Eigenvalues of Û2Û1 and h(k) at the midpoints of `samples` equal cells
/// of (0, π).
pub fn spectrum_table(p: &CoinParameter, samples: usize) -> Result<Table, CliError> {
    if samples == 0 {
        return Err(CliError::Usage("--grid must be at least 1".into()));
    }
    p.require_limit_regime()?;
    let mut table = Table::new(vec![
        "k",
        "lambda1_re",
        "lambda1_im",
        "lambda2_re",
        "lambda2_im",
        "h",
    ]);
    for m in 0..samples {
        let k = (m as f64 + 0.5) * PI / samples as f64;
        let [l1, l2] = eigenvalues(k, p);
        table.push(vec![
            Cell::Real(k),
            Cell::Real(l1.re),
            Cell::Real(l1.im),
            Cell::Real(l2.re),
            Cell::Real(l2.im),
            Cell::Real(h_of_k(k, p)?),
        ]);
    }
    Ok(table)
}
