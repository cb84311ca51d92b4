//! Walk entropy, diagonal variance, limits and inequality slacks.
//!
//! For `y_i = (e^{beta A})_ii` and `Z = sum_i y_i`, the walk entropy is the
//! Shannon entropy of `p_i = y_i / Z`. Everything here is evaluated from a
//! [`Spectrum`] in log-scaled form, so large `beta * lambda_1` never overflows.
//!
//! The entropy deficit `ln n - S` is computed without forming the difference:
//! with `r_i = n p_i - 1` (so `sum_i r_i = 0`),
//!
//! ```text
//! ln n - S = (1/n) sum_i [ (1 + r_i) ln(1 + r_i) - r_i ]
//! ```
//!
//! where every term is non-negative, and `r_i` itself is formed as
//! `sum_j (n Q_ij^2 - 1) w_j / sum_j w_j` from the eigenvector rows.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{is_connected, Graph};
use crate::grid::BetaGrid;
use crate::spectral::{ShiftedWeights, Spectrum};

/// `x ln x` with the limit value 0 at `x = 0`.
pub fn xlnx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// `(1 + r) ln(1 + r) - r`, accurate for tiny `|r|`.
fn deficit_term(r: f64) -> f64 {
    if r <= -1.0 {
        return 1.0;
    }
    if r.abs() < 1e-4 {
        let r2 = r * r;
        r2 / 2.0 - r2 * r / 6.0 + r2 * r2 / 12.0 - r2 * r2 * r / 20.0
    } else {
        (1.0 + r) * r.ln_1p() - r
    }
}

fn deficit_from_deviation(r: &[f64]) -> f64 {
    r.iter().map(|&x| deficit_term(x)).sum::<f64>() / r.len() as f64
}

/// Borwein-Girgensohn constant: 2 for `n <= 4`, `e (1 - 1/n)` for `n >= 5`.
pub fn bg_constant(n: usize) -> f64 {
    if n <= 4 {
        2.0
    } else {
        std::f64::consts::E * (1.0 - 1.0 / n as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BgCheck {
    /// `sum z_i e^{z_i} - (c_n / n) sum z_i^2`.
    pub slack: f64,
    pub constant: f64,
    /// Whether `sum z_i >= -1e-8`; the bound is only asserted when this holds.
    pub hypothesis_met: bool,
}

impl BgCheck {
    pub fn holds(&self) -> bool {
        !self.hypothesis_met || self.slack >= -1e-8
    }
}

/// Slack of `(c_n / n) sum z_i^2 <= sum z_i e^{z_i}`.
pub fn bg_bound_check(z: &[f64], n: usize) -> BgCheck {
    let constant = bg_constant(n);
    let hypothesis_met = z.iter().sum::<f64>() >= -1e-8;
    let lhs: f64 = z
        .iter()
        .map(|&zi| {
            let y = zi.exp();
            if y == 0.0 {
                0.0
            } else {
                zi * y
            }
        })
        .sum();
    let squares: f64 = z.iter().map(|zi| zi * zi).sum();
    BgCheck {
        slack: lhs - constant / n as f64 * squares,
        constant,
        hypothesis_met,
    }
}

/// Population variance of a matrix diagonal divided by `sum |m_ii|`.
pub fn diagonal_variance(diag: &[f64]) -> Result<f64> {
    let norm: f64 = diag.iter().map(|x| x.abs()).sum();
    if diag.is_empty() || norm == 0.0 {
        return Err(Error::InvalidParameter(
            "diagonal variance needs a diagonal that is not all zero".into(),
        ));
    }
    let s = diag.len() as f64;
    let mean = diag.iter().sum::<f64>() / s;
    let var = diag.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / s;
    Ok(var / norm)
}

/// One evaluation of the walk entropy at a fixed `beta`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyPoint {
    pub beta: f64,
    pub p: Vec<f64>,
    /// `-sum p_i ln p_i`, in nats.
    pub entropy: f64,
    /// `ln Z - (1/Z) sum z_i e^{z_i}`.
    pub entropy_via_z: f64,
    pub ln_z: f64,
    /// `ln n - entropy`, computed in cancellation-free form.
    pub deficit: f64,
    /// Population variance of `diag(e^{beta A})` over `sum_i y_i`.
    pub diag_variance: f64,
    /// Population variance of `p`.
    pub normalized_variance: f64,
    pub hadamard_slack: f64,
    pub bg_slack: f64,
    pub bg_hypothesis_met: bool,
}

/// Entropy in the `beta -> inf` limit, `-sum q_i ln q_i` with `q` the
/// normalized diagonal of the top-eigenspace projector (`phi_1(i)^2` when
/// `lambda_1` is simple).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitEntropy {
    pub entropy: f64,
    pub deficit: f64,
    pub multiplicity: usize,
    /// `lambda_1` is not simple, so no single Perron vector exists.
    pub outside_connected_scope: bool,
}

pub fn limit_infinity_entropy(s: &Spectrum) -> LimitEntropy {
    let n = s.n();
    let m = s.top_multiplicity();
    let q: Vec<f64> = s
        .top_projector_diagonal()
        .into_iter()
        .map(|x| x / m as f64)
        .collect();
    let entropy = -q.iter().map(|&x| xlnx(x)).sum::<f64>();
    let r: Vec<f64> = (0..n)
        .map(|i| {
            (0..m)
                .map(|j| n as f64 * s.component(i, j).powi(2) - 1.0)
                .sum::<f64>()
                / m as f64
        })
        .collect();
    LimitEntropy {
        entropy,
        deficit: deficit_from_deviation(&r),
        multiplicity: m,
        outside_connected_scope: m > 1,
    }
}

/// Grid sweep with both limits and a numeric estimate of the entropy gap.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyProfile {
    pub n: usize,
    pub graph_id: Option<String>,
    pub grid: Vec<f64>,
    pub points: Vec<EntropyPoint>,
    /// `ln n`, the `beta -> 0` limit.
    pub limit_zero: f64,
    pub limit_infinity: LimitEntropy,
    /// Extra `(beta, deficit)` evaluations from refinement around the grid maximum.
    pub refined: Vec<(f64, f64)>,
    /// Largest entropy seen over the refined grid and the `beta -> inf` limit.
    pub sup_estimate: f64,
    /// `ln n - sup_estimate`; an estimate, not a proven bound.
    pub gap_estimate: f64,
}

impl EntropyProfile {
    pub fn max_deficit(&self) -> f64 {
        self.points.iter().map(|p| p.deficit).fold(0.0, f64::max)
    }

    pub fn min_deficit(&self) -> f64 {
        self.points
            .iter()
            .map(|p| p.deficit)
            .fold(f64::INFINITY, f64::min)
    }
}

/// `(beta, sigma_d^2, var(p))` at each grid value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaPoint {
    pub beta: f64,
    pub sigma_d2: f64,
    pub normalized: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SigmaProfile {
    pub points: Vec<SigmaPoint>,
    /// Smallest `sigma_d^2` over the grid.
    pub floor: f64,
}

impl SigmaProfile {
    /// Whether `var(p)` at the last grid value is below 1% of its grid maximum.
    /// `None` when the grid stops short of `beta = 40`.
    pub fn decays(&self) -> Option<bool> {
        let last = self.points.last()?;
        if last.beta < 40.0 {
            return None;
        }
        let peak = self.points.iter().map(|p| p.normalized).fold(0.0, f64::max);
        Some(last.normalized < peak * 1e-2)
    }
}

/// A graph together with its spectrum; evaluates entropy quantities at any `beta`.
#[derive(Debug, Clone)]
pub struct Analyzer<'g> {
    graph: &'g Graph,
    spectrum: Spectrum,
}

impl<'g> Analyzer<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self> {
        Ok(Analyzer {
            graph,
            spectrum: Spectrum::of(graph)?,
        })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    fn deviation(&self, w: &ShiftedWeights) -> Vec<f64> {
        let n = self.spectrum.n();
        let total = w.sum();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (n as f64 * self.spectrum.component(i, j).powi(2) - 1.0) * w.weights[j]
                    })
                    .sum::<f64>()
                    / total
            })
            .collect()
    }

    /// Full evaluation at `beta >= 0`. Fails if the two entropy formulas
    /// disagree by more than `1e-9` (scaled up once `|ln Z| > 1000`).
    pub fn point(&self, beta: f64) -> Result<EntropyPoint> {
        let n = self.spectrum.n();
        let nf = n as f64;
        let w = self.spectrum.shifted_weights(beta)?;
        let diag = crate::spectral::exp_diagonal(&self.spectrum, beta)?;

        let scaled_total: f64 = diag.scaled.iter().sum();
        let p: Vec<f64> = diag.scaled.iter().map(|y| y / scaled_total).collect();
        let entropy = -p.iter().map(|&x| xlnx(x)).sum::<f64>();

        let ln_z = if beta == 0.0 {
            nf.ln()
        } else {
            w.log_scale + w.sum().ln()
        };
        let weighted_z: f64 = p
            .iter()
            .zip(&diag.z)
            .map(|(&pi, &zi)| if pi == 0.0 { 0.0 } else { pi * zi })
            .sum();
        let entropy_via_z = ln_z - weighted_z;

        let r = if beta == 0.0 {
            vec![0.0; n]
        } else {
            self.deviation(&w)
        };
        let deficit = deficit_from_deviation(&r);
        let r_squares: f64 = r.iter().map(|x| x * x).sum();
        let normalized_variance = r_squares / (nf * nf * nf);
        let diag_variance = if r_squares == 0.0 {
            0.0
        } else {
            // e^s * mean(scaled) * sum r^2 / n^2
            (diag.log_scale + (w.sum() / nf).ln() + r_squares.ln() - 2.0 * nf.ln()).exp()
        };

        let bg = bg_bound_check(&diag.z, n);
        let tolerance = 1e-9 * (ln_z.abs() / 1e3).max(1.0);
        if (entropy - entropy_via_z).abs() > tolerance {
            return Err(Error::Diagnostic(format!(
                "entropy formulas disagree at beta = {beta}: {entropy} vs {entropy_via_z}"
            )));
        }
        Ok(EntropyPoint {
            beta,
            p,
            entropy,
            entropy_via_z,
            ln_z,
            deficit,
            diag_variance,
            normalized_variance,
            hadamard_slack: diag.z_sum(),
            bg_slack: bg.slack,
            bg_hypothesis_met: bg.hypothesis_met,
        })
    }

    pub fn limit_infinity(&self) -> LimitEntropy {
        limit_infinity_entropy(&self.spectrum)
    }

    /// Evaluates every grid point, both limits, and refines around the grid
    /// maximum of the entropy with three rounds of trisection.
    pub fn profile(&self, grid: &BetaGrid, refine: bool) -> Result<EntropyProfile> {
        let points: Vec<EntropyPoint> = grid
            .values()
            .par_iter()
            .map(|&b| self.point(b))
            .collect::<Result<_>>()?;
        let limit_infinity = self.limit_infinity();

        let mut refined = Vec::new();
        if refine && points.len() >= 2 {
            let best = points
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.deficit.total_cmp(&b.1.deficit))
                .map(|(k, _)| k)
                .expect("grid is non-empty");
            let values = grid.values();
            let mut lo = values[best.saturating_sub(1)];
            let mut hi = values[(best + 1).min(values.len() - 1)];
            for _ in 0..3 {
                let a = lo + (hi - lo) / 3.0;
                let b = lo + 2.0 * (hi - lo) / 3.0;
                let da = self.point(a)?.deficit;
                let db = self.point(b)?.deficit;
                refined.push((a, da));
                refined.push((b, db));
                if da <= db {
                    hi = b;
                } else {
                    lo = a;
                }
            }
        }

        let gap_estimate = points
            .iter()
            .map(|p| p.deficit)
            .chain(refined.iter().map(|r| r.1))
            .chain(std::iter::once(limit_infinity.deficit))
            .fold(f64::INFINITY, f64::min);
        let limit_zero = (self.graph.n() as f64).ln();
        Ok(EntropyProfile {
            n: self.graph.n(),
            graph_id: None,
            grid: grid.values().to_vec(),
            points,
            limit_zero,
            limit_infinity,
            refined,
            sup_estimate: limit_zero - gap_estimate,
            gap_estimate,
        })
    }

    pub fn sigma_profile(&self, grid: &BetaGrid) -> Result<SigmaProfile> {
        let points: Vec<SigmaPoint> = grid
            .values()
            .par_iter()
            .map(|&beta| {
                self.point(beta).map(|p| SigmaPoint {
                    beta,
                    sigma_d2: p.diag_variance,
                    normalized: p.normalized_variance,
                })
            })
            .collect::<Result<_>>()?;
        let floor = points
            .iter()
            .map(|p| p.sigma_d2)
            .fold(f64::INFINITY, f64::min);
        Ok(SigmaProfile { points, floor })
    }
}

/// Walk entropy `S(G, beta)` and related quantities.
pub fn walk_entropy(g: &Graph, beta: f64) -> Result<EntropyPoint> {
    Analyzer::new(g)?.point(beta)
}

/// `ln Z - (1/Z) sum_i z_i e^{z_i}`.
pub fn entropy_via_z(g: &Graph, beta: f64) -> Result<f64> {
    Ok(walk_entropy(g, beta)?.entropy_via_z)
}

pub fn entropy_profile(g: &Graph, grid: &BetaGrid) -> Result<EntropyProfile> {
    Analyzer::new(g)?.profile(grid, true)
}

/// Diagonal variance of `e^{beta A}` across the grid. Graphs whose matrix
/// exponential has a constant diagonal (walk-regular, including edgeless)
/// give zero everywhere.
pub fn sigma_d_profile(g: &Graph, grid: &BetaGrid) -> Result<SigmaProfile> {
    Analyzer::new(g)?.sigma_profile(grid)
}

/// True if `g` is connected; [`limit_infinity_entropy`] is only the Perron
/// entropy in that case.
pub fn perron_limit_applies(g: &Graph) -> bool {
    is_connected(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    /// Entropy of P3 at beta = 1 from the closed-form diagonal.
    fn p3_closed_form() -> (f64, f64) {
        let c = 2f64.sqrt().cosh();
        let y = [(c + 1.0) / 2.0, c, (c + 1.0) / 2.0];
        let z: f64 = y.iter().sum();
        let s = -y.iter().map(|v| v / z * (v / z).ln()).sum::<f64>();
        (s, 3f64.ln() - s)
    }

    #[test]
    fn k2_is_maximal() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let pt = walk_entropy(&g, 1.0).unwrap();
        assert!(close(pt.entropy, 2f64.ln(), 1e-15));
        assert!(pt.deficit.abs() < 1e-15);
        assert!(close(entropy_via_z(&g, 1.0).unwrap(), 2f64.ln(), 1e-12));
    }

    #[test]
    fn p3_matches_closed_form() {
        let (s, d) = p3_closed_form();
        let pt = walk_entropy(&p3(), 1.0).unwrap();
        assert!(close(pt.entropy, s, 1e-13));
        assert!(close(pt.deficit, d, 1e-13));
        assert!(close(pt.entropy_via_z, s, 1e-12));
        // Frozen from the closed form.
        assert!(close(pt.entropy, 1.086894, 1e-6));
        assert!(close(pt.deficit, 0.011718, 1e-6));
        for (got, want) in pt.p.iter().zip([0.2966734, 0.4066531, 0.2966734]) {
            assert!(close(*got, want, 1e-6));
        }
    }

    #[test]
    fn tiny_beta_is_uniform() {
        let pt = walk_entropy(&p3(), 1e-12).unwrap();
        assert!(close(pt.entropy, 3f64.ln(), 1e-9));
        let zero = walk_entropy(&p3(), 0.0).unwrap();
        assert_eq!(zero.deficit, 0.0);
        assert!(close(zero.entropy, 3f64.ln(), 1e-15));
    }

    #[test]
    fn edgeless_is_uniform() {
        let g = Graph::edgeless(4).unwrap();
        let pt = walk_entropy(&g, 1.0).unwrap();
        assert!(close(pt.entropy_via_z, 4f64.ln(), 1e-15));
        assert_eq!(pt.deficit, 0.0);
        assert_eq!(pt.hadamard_slack, 0.0);
        assert_eq!(pt.diag_variance, 0.0);
    }

    #[test]
    fn diagonal_variance_cases() {
        assert_eq!(diagonal_variance(&[2.5; 4]).unwrap(), 0.0);
        assert!(close(
            diagonal_variance(&[1.0, 2.0, 3.0]).unwrap(),
            1.0 / 9.0,
            1e-15
        ));
        let y = [1.589091, 2.178183, 1.589091];
        assert!(close(diagonal_variance(&y).unwrap(), 0.0143974, 1e-6));
        assert!(diagonal_variance(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn point_variance_matches_definition() {
        let pt = walk_entropy(&p3(), 1.0).unwrap();
        let c = 2f64.sqrt().cosh();
        let y = [(c + 1.0) / 2.0, c, (c + 1.0) / 2.0];
        assert!(close(
            pt.diag_variance,
            diagonal_variance(&y).unwrap(),
            1e-14
        ));
    }

    #[test]
    fn bg_constants() {
        for n in 2..=4 {
            assert_eq!(bg_constant(n), 2.0);
        }
        assert!(close(bg_constant(5), std::f64::consts::E * 0.8, 1e-15));
        assert!(close(bg_constant(5), 2.1746255, 1e-7));
    }

    #[test]
    fn bg_slack_cases() {
        let zero = bg_bound_check(&[0.0; 3], 3);
        assert_eq!(zero.slack, 0.0);
        assert!(zero.hypothesis_met);
        let c = 2f64.sqrt().cosh();
        let z = [((c + 1.0) / 2.0f64).ln(), c.ln(), ((c + 1.0) / 2.0f64).ln()];
        let chk = bg_bound_check(&z, 3);
        assert!(close(chk.slack, 3.1677 - 0.6900, 1e-3));
        assert!(chk.holds());
        let neg = bg_bound_check(&[-1.0, 0.0], 2);
        assert!(!neg.hypothesis_met);
        assert!(neg.holds());
    }

    #[test]
    fn limits() {
        let s = Spectrum::of(&p3()).unwrap();
        let l = limit_infinity_entropy(&s);
        assert!(close(l.entropy, 1.5 * 2f64.ln(), 1e-12));
        assert!(close(l.deficit, 3f64.ln() - 1.5 * 2f64.ln(), 1e-12));
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let l = limit_infinity_entropy(&Spectrum::of(&star).unwrap());
        assert!(close(l.entropy, 0.5 * 2f64.ln() + 0.5 * 6f64.ln(), 1e-12));
        assert!(close(l.entropy, 1.2424533, 1e-7));
        let c5 = Graph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let l = limit_infinity_entropy(&Spectrum::of(&c5).unwrap());
        assert!(close(l.entropy, 5f64.ln(), 1e-12));
        assert!(l.deficit < 1e-20);
        assert!(!l.outside_connected_scope);
    }

    #[test]
    fn disconnected_limit_is_flagged() {
        let tri = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let sq = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let g = tri.disjoint_union(&sq);
        let l = limit_infinity_entropy(&Spectrum::of(&g).unwrap());
        assert!(l.outside_connected_scope);
        assert!(close(l.entropy, 48f64.ln() / 2.0, 1e-12));
        assert!(!perron_limit_applies(&g));
    }

    #[test]
    fn c6_profile_is_flat() {
        let c6 = Graph::new(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let grid = BetaGrid::from_values(vec![0.1, 1.0, 10.0]).unwrap();
        let prof = entropy_profile(&c6, &grid).unwrap();
        for pt in &prof.points {
            assert!(close(pt.entropy, 6f64.ln(), 1e-9));
        }
        assert!(prof.gap_estimate <= 1e-9);
    }

    #[test]
    fn p3_profile_gap_comes_from_small_beta() {
        let grid = BetaGrid::from_values(vec![0.01, 0.1, 1.0, 10.0, 40.0]).unwrap();
        let prof = entropy_profile(&p3(), &grid).unwrap();
        assert!(prof.points.iter().all(|p| p.deficit > 0.0));
        assert!(close(prof.limit_infinity.entropy, 1.0397208, 1e-7));
        assert!(prof.points[3].deficit > 0.05);
        // The entropy tends to ln n as beta -> 0, so the best grid point is the smallest.
        assert!(prof.gap_estimate < 1e-9);
        assert!(close(
            prof.sup_estimate + prof.gap_estimate,
            3f64.ln(),
            1e-15
        ));
        assert_eq!(prof.refined.len(), 6);
    }

    #[test]
    fn sigma_profile_cases() {
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let grid = BetaGrid::default_grid();
        let prof = sigma_d_profile(&c4, &grid).unwrap();
        // Zero up to round-off relative to the scale e^{2 beta} of the diagonal.
        for p in &prof.points {
            assert!(p.sigma_d2 <= 1e-12 * (2.0 * p.beta).exp(), "{p:?}");
            assert!(p.normalized < 1e-24);
        }
        let prof = sigma_d_profile(&p3(), &BetaGrid::from_values(vec![1.0]).unwrap()).unwrap();
        assert!(close(prof.points[0].sigma_d2, 0.0143974, 1e-6));
        let empty = sigma_d_profile(&Graph::edgeless(3).unwrap(), &grid).unwrap();
        assert_eq!(empty.floor, 0.0);
    }

    #[test]
    fn deficit_term_is_smooth_across_branch() {
        for r in [9.9e-5f64, 1e-4, 1.01e-4, -9.9e-5, -1.01e-4] {
            let exact = (1.0 + r) * r.ln_1p() - r;
            assert!(close(deficit_term(r), exact, 1e-18));
        }
        assert_eq!(deficit_term(-1.0), 1.0);
    }
}
