//! The invariant battery run by `walkgauge verify`.

use serde::Serialize;

use crate::classify::MAX_ENTROPY_TOLERANCE;
use crate::entropy::{Analyzer, EntropyPoint};
use crate::error::{Error, Result};
use crate::exact::{hamilton_reduction_check, is_walk_regular_exact};
use crate::graph::{is_connected, Graph};
use crate::grid::BetaGrid;

pub const SLACK_TOLERANCE: f64 = 1e-8;
pub const SIGMA_ZERO_TOLERANCE: f64 = 1e-12;

/// Thresholds used by [`run_battery_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Most negative inequality slack accepted.
    pub slack: f64,
    /// Largest `ln n - S` at `beta = 1` still counted as maximal entropy.
    pub max_entropy: f64,
    /// Largest `sigma_d^2(e^A)` still counted as zero.
    pub sigma_zero: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            slack: SLACK_TOLERANCE,
            max_entropy: MAX_ENTROPY_TOLERANCE,
            sigma_zero: SIGMA_ZERO_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> CheckResult {
    CheckResult {
        name,
        passed,
        detail,
    }
}

fn worst(points: &[EntropyPoint], key: impl Fn(&EntropyPoint) -> f64) -> (f64, f64) {
    points
        .iter()
        .map(|p| (key(p), p.beta))
        .fold(
            (f64::INFINITY, 0.0),
            |acc, x| if x.0 < acc.0 { x } else { acc },
        )
}

/// Runs every check over `grid` at the default tolerances.
pub fn run_battery(g: &Graph, grid: &BetaGrid) -> Result<Vec<CheckResult>> {
    run_battery_with(g, grid, &Tolerances::default())
}

/// Returns `Err` only when the spectrum itself cannot be computed; failed
/// checks are reported in the list.
pub fn run_battery_with(g: &Graph, grid: &BetaGrid, tol: &Tolerances) -> Result<Vec<CheckResult>> {
    let analyzer = Analyzer::new(g)?;
    let n = g.n() as f64;
    let mut out = Vec::new();

    let points: std::result::Result<Vec<EntropyPoint>, Error> =
        grid.values().iter().map(|&b| analyzer.point(b)).collect();
    let points = match points {
        Ok(p) => {
            let gap = p
                .iter()
                .map(|x| (x.entropy - x.entropy_via_z).abs())
                .fold(0.0, f64::max);
            out.push(check(
                "two-formula identity",
                gap <= 1e-9,
                format!("max |S - S_z| = {gap:e} over {} points", p.len()),
            ));
            p
        }
        Err(e) => {
            out.push(check("two-formula identity", false, e.to_string()));
            return Ok(out);
        }
    };

    let (min_room, at) = worst(&points, |p| n.ln() + 1e-12 - p.entropy);
    let mass = points
        .iter()
        .map(|p| (p.p.iter().sum::<f64>() - 1.0).abs())
        .fold(0.0, f64::max);
    out.push(check(
        "maximum entropy bound",
        min_room >= 0.0 && mass <= 1e-12,
        format!(
            "min (ln n - S) = {:e} at beta = {at}; max |sum p - 1| = {mass:e}",
            min_room - 1e-12
        ),
    ));

    let (z_bound, at) = worst(&points, |p| p.ln_z - n.ln());
    out.push(check(
        "partition function Z >= n",
        z_bound >= -1e-12,
        format!("min (ln Z - ln n) = {z_bound:e} at beta = {at}"),
    ));

    let (had, at) = worst(&points, |p| p.hadamard_slack);
    out.push(check(
        "hadamard",
        had >= -tol.slack,
        format!("min sum z_i = {had:e} at beta = {at}"),
    ));

    let (bg, at) = worst(&points, |p| {
        if p.bg_hypothesis_met {
            p.bg_slack
        } else {
            f64::INFINITY
        }
    });
    let unmet = points.iter().filter(|p| !p.bg_hypothesis_met).count();
    out.push(check(
        "borwein-girgensohn",
        bg >= -tol.slack && unmet == 0,
        format!("min slack = {bg:e} at beta = {at}; hypothesis unmet at {unmet} points"),
    ));

    let connected = is_connected(g);
    let exact = is_walk_regular_exact(g).walk_regular;
    let at_one = analyzer.point(1.0)?;
    let maximal = at_one.deficit <= tol.max_entropy;
    out.push(check(
        "walk-regular iff maximal entropy at beta = 1",
        exact == maximal,
        format!(
            "exact = {exact}, deficit(1) = {:e} <= {:e} is {maximal}{}",
            at_one.deficit,
            tol.max_entropy,
            if connected {
                ""
            } else {
                " (graph is disconnected)"
            }
        ),
    ));

    let sigma = at_one.diag_variance;
    let zero = sigma <= tol.sigma_zero;
    out.push(check(
        "diagonal variance consistency",
        zero == exact,
        format!("sigma_d^2(e^A) = {sigma:e}, exact walk-regular = {exact}"),
    ));

    out.push(match hamilton_reduction_check(g) {
        Ok(ok) => check(
            "cayley-hamilton reduction",
            ok,
            format!(
                "diag(A^n) {} the characteristic-polynomial combination",
                if ok { "matches" } else { "differs from" }
            ),
        ),
        Err(e) => check("cayley-hamilton reduction", false, e.to_string()),
    });

    Ok(out)
}
