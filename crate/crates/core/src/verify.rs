//! Seeded numerical checks of the Bernstein–Markov type inequalities, the
//! extremal-ratio search and a linear-programming oracle for tiny cubes.
//!
//! Trials and restarts run in parallel; trial `i` draws from
//! [`stream_rng`]`(seed, i)` and results are reduced in index order, so a
//! report depends only on its parameters, never on the thread count.

use std::f64::consts::PI;
use std::time::Instant;

use minilp::{ComparisonOp, OptimizationDirection, Problem};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::constructions::{
    chebyshev_function, chebyshev_t, kushilevitz, kushilevitz_poly, sensitivity_at,
    Boolean01Function, EvalMode,
};
use crate::cube::{lp_norm_of, walsh_sign, CubeFunction, Spectrum, C64, DEFAULT_DEGREE_TOL};
use crate::error::{Error, Result};
use crate::interpolation::{boundary_samples, make_params, three_lines_check};
use crate::report::{finite_or_label, Bound, Verdict, VerificationReport};
use crate::rng::{gaussian_function, gaussian_in_window, gaussian_window_coeffs, stream_rng};
use crate::spectral::{complex_power, heat, laplacian_by_partials, laplacian_power, Window};

/// Largest dimension accepted by the sampling checks and the search.
pub const MAX_CHECK_DIM: usize = 14;
/// Largest dimension of [`brute_linf_operator_norm`].
pub const MAX_ORACLE_DIM: usize = 4;
const CHECK_TOL: f64 = 1e-9;

/// Index of the first maximum; `NaN` never wins.
fn first_argmax(values: &[f64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, &v) in values.iter().enumerate() {
        if best.map_or(!v.is_nan(), |b| v > values[b]) {
            best = Some(i);
        }
    }
    best
}

fn check_dims(n: usize, d: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::Capacity { n, max });
    }
    if d > n {
        return Err(Error::InvalidParams(format!("degree d = {d} exceeds n = {n}")));
    }
    Ok(())
}

fn norm(f: &CubeFunction, p: f64) -> f64 {
    f.lp_norm(p).expect("exponent validated by caller")
}

/// Largest `‖Δf‖₂ / ‖f‖₂` over random `f ∈ Deg≤d`; passes iff it is at most `d`.
pub fn check_bm_l2(n: usize, d: usize, trials: usize, seed: u64) -> Result<VerificationReport> {
    let start = Instant::now();
    check_dims(n, d, MAX_CHECK_DIM)?;
    let ratio = |f: &CubeFunction| {
        let f2 = norm(f, 2.0);
        if f2 == 0.0 {
            0.0
        } else {
            norm(&laplacian_power(f, 1), 2.0) / f2
        }
    };
    let ratios: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|i| ratio(&gaussian_in_window(n, Window::Low(d), &mut stream_rng(seed, i as u64))))
        .collect();
    let best = first_argmax(&ratios);
    let observed = best.map_or(0.0, |i| ratios[i]);
    let violations = ratios.iter().filter(|&&r| r > d as f64 + CHECK_TOL).count();

    let mut report = VerificationReport::new("bm-l2")
        .param("d", d)
        .param("n", n)
        .param("seed", seed)
        .param("trials", trials);
    report.observed = observed;
    report.bound = Bound::Value(d as f64);
    report.verdict = Verdict::from_ok(violations == 0);
    report.detail("violations", violations);
    if let Some(i) = best {
        report.detail("argmax_trial", i);
        report.set_witness(&gaussian_in_window(n, Window::Low(d), &mut stream_rng(seed, i as u64)));
    }
    Ok(report.timed(start))
}

/// Exponents of `R(f) = ‖Δ^k f‖_p / (d^k ‖f‖₂^{1−θ} ‖f‖_{p_ε}^θ)`.
///
/// For `p = ∞` the ratio is `‖Δ^k f‖_∞ / (d^k ‖f‖_∞)`, i.e. `θ = 1`, `p_ε = ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct RatioShape {
    d: usize,
    k: u32,
    p: f64,
    p_eps: f64,
    theta: f64,
}

impl RatioShape {
    fn new(d: usize, k: u32, p: f64, eps: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParams("the Bernstein ratio needs d >= 1".into()));
        }
        if p.is_infinite() && p > 0.0 {
            if k == 0 {
                return Err(Error::InvalidParams("k must be at least 1".into()));
            }
            return Ok(Self { d, k, p, p_eps: p, theta: 1.0 });
        }
        let params = make_params(p, eps, k)?;
        Ok(Self { d, k, p, p_eps: params.p_eps, theta: params.theta })
    }

    /// The same shape with `∞` replaced by a finite exponent.
    fn smoothed(self, s: f64) -> Self {
        if self.p.is_infinite() {
            Self { p: s, p_eps: s, ..self }
        } else {
            self
        }
    }

    fn eval(&self, f_vals: &[C64], h_vals: &[C64]) -> f64 {
        let num = lp_norm_of(h_vals, self.p).expect("valid exponent");
        let f2 = lp_norm_of(f_vals, 2.0).expect("valid exponent");
        let fq = lp_norm_of(f_vals, self.p_eps).expect("valid exponent");
        if num == 0.0 {
            return 0.0;
        }
        let den = (self.d as f64).powi(self.k as i32) * f2.powf(1.0 - self.theta) * fq.powf(self.theta);
        num / den
    }
}

/// `R(f)` evaluated directly; `p = ∞` is allowed (then `eps` is ignored).
pub fn bernstein_ratio(f: &CubeFunction, d: usize, k: u32, p: f64, eps: f64) -> Result<f64> {
    let shape = RatioShape::new(d, k, p, eps)?;
    let h = laplacian_power(f, k);
    Ok(shape.eval(f.values(), h.values()))
}

/// Multi-start projected gradient ascent settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub restarts: usize,
    pub steps: usize,
    /// Initial step length on the unit sphere of coefficient vectors.
    pub step_size: f64,
    /// The step length is multiplied by `decay` every `decay_every` steps.
    pub decay: f64,
    pub decay_every: usize,
    pub seed: u64,
    /// Finite exponent that stands in for `p = ∞` during the ascent.
    pub smoothing_p: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            restarts: 8,
            steps: 400,
            step_size: 0.5,
            decay: 0.9,
            decay_every: 50,
            seed: 0,
            smoothing_p: 64.0,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.restarts == 0 || self.steps == 0 || self.decay_every == 0 {
            return bad("restarts, steps and decay_every must be at least 1".into());
        }
        if !(self.smoothing_p >= 2.0) || !self.smoothing_p.is_finite() {
            return bad(format!("smoothing_p must be finite and >= 2, got {}", self.smoothing_p));
        }
        if !(self.step_size > 0.0) || !self.step_size.is_finite() {
            return bad(format!("step_size must be positive, got {}", self.step_size));
        }
        if !(self.decay > 0.0 && self.decay <= 1.0) {
            return bad(format!("decay must lie in (0, 1], got {}", self.decay));
        }
        Ok(())
    }
}

const NUMERIC_STEP: f64 = 1e-5;
const SMOOTH_FLOOR: f64 = 1e-12;

/// Walsh coefficients of the gradient of `log ‖v‖_p` with respect to the
/// Walsh coefficients of `v` (real `v`).
fn log_norm_gradient(values: &[C64], p: f64) -> Spectrum {
    let n = values.len().trailing_zeros() as usize;
    let max = values.iter().map(|v| v.re.abs()).fold(0.0, f64::max);
    if max == 0.0 {
        return Spectrum::zeros(n).expect("valid dimension");
    }
    let scaled: Vec<f64> = values.iter().map(|v| v.re / max).collect();
    let mean_pow = scaled.iter().map(|u| u.abs().powf(p)).sum::<f64>() / values.len() as f64;
    let dual = scaled
        .iter()
        .map(|&u| C64::new(u.signum() * u.abs().powf(p - 1.0) / (max * mean_pow), 0.0))
        .collect();
    CubeFunction::new(n, dual).expect("finite values").spectrum()
}

struct Ascent<'a> {
    n: usize,
    shape: RatioShape,
    /// Masks of levels `≤ d`.
    support: &'a [usize],
    /// `ℓ^k` by mask.
    weights: &'a [f64],
}

impl Ascent<'_> {
    fn functions(&self, coeffs: &[f64]) -> (CubeFunction, CubeFunction) {
        let len = 1usize << self.n;
        let mut c = vec![C64::new(0.0, 0.0); len];
        let mut h = vec![C64::new(0.0, 0.0); len];
        for &m in self.support {
            c[m] = C64::new(coeffs[m], 0.0);
            h[m] = C64::new(coeffs[m] * self.weights[m], 0.0);
        }
        let f = Spectrum::new(self.n, c).expect("finite").to_function();
        let h = Spectrum::new(self.n, h).expect("finite").to_function();
        (f, h)
    }

    fn log_ratio(&self, shape: &RatioShape, coeffs: &[f64]) -> f64 {
        let (f, h) = self.functions(coeffs);
        shape.eval(f.values(), h.values()).ln()
    }

    fn gradient(&self, coeffs: &[f64]) -> Vec<f64> {
        let s = self.shape;
        let (f, h) = self.functions(coeffs);
        let rough = |v: &CubeFunction, p: f64| {
            p < 2.0 && v.values().iter().any(|x| x.re.abs() < SMOOTH_FLOOR)
        };
        let mut grad = vec![0.0; coeffs.len()];
        if rough(&f, s.p_eps) || rough(&h, s.p) {
            for &m in self.support {
                let mut plus = coeffs.to_vec();
                let mut minus = coeffs.to_vec();
                plus[m] += NUMERIC_STEP;
                minus[m] -= NUMERIC_STEP;
                grad[m] = (self.log_ratio(&s, &plus) - self.log_ratio(&s, &minus)) / (2.0 * NUMERIC_STEP);
            }
            return grad;
        }
        let gh = log_norm_gradient(h.values(), s.p);
        let gf = log_norm_gradient(f.values(), s.p_eps);
        let c2: f64 = self.support.iter().map(|&m| coeffs[m] * coeffs[m]).sum();
        for &m in self.support {
            grad[m] = self.weights[m] * gh.coeff(m).re
                - (1.0 - s.theta) * coeffs[m] / c2
                - s.theta * gf.coeff(m).re;
        }
        grad
    }

    /// Runs one restart; returns `(best true ratio, its coefficients)`.
    fn run(&self, init: Vec<f64>, true_shape: &RatioShape, config: &SearchConfig) -> (f64, Vec<f64>) {
        let smooth = self.shape;
        let score = |c: &[f64]| {
            let (f, h) = self.functions(c);
            true_shape.eval(f.values(), h.values())
        };
        let mut c = init;
        let mut current = self.log_ratio(&smooth, &c);
        let mut best = (score(&c), c.clone());
        let mut eta = config.step_size;
        for step in 1..=config.steps {
            if step % config.decay_every == 0 {
                eta *= config.decay;
            }
            if eta < 1e-12 || !current.is_finite() {
                break;
            }
            let mut g = self.gradient(&c);
            // tangent to the sphere: R is scale invariant, so only the direction matters
            let radial: f64 = self.support.iter().map(|&m| g[m] * c[m]).sum();
            self.support.iter().for_each(|&m| g[m] -= radial * c[m]);
            let g_norm = self.support.iter().map(|&m| g[m] * g[m]).sum::<f64>().sqrt();
            if !(g_norm > 1e-14) {
                break;
            }
            let mut trial = c.clone();
            self.support.iter().for_each(|&m| trial[m] += eta * g[m] / g_norm);
            normalize(&mut trial, self.support);
            let value = self.log_ratio(&smooth, &trial);
            if value > current {
                c = trial;
                current = value;
                let true_value = score(&c);
                if true_value > best.0 {
                    best = (true_value, c.clone());
                }
            } else {
                eta *= 0.5;
            }
        }
        best
    }
}

fn normalize(c: &mut [f64], support: &[usize]) {
    let norm = support.iter().map(|&m| c[m] * c[m]).sum::<f64>().sqrt();
    if norm > 0.0 {
        support.iter().for_each(|&m| c[m] /= norm);
    }
}

/// Maximizes `R(f) = ‖Δ^k f‖_p / (d^k ‖f‖₂^{1−θ} ‖f‖_{p_ε}^θ)` over real
/// `f ∈ Deg≤d` with `‖f‖₂ = 1`.
///
/// `p = f64::INFINITY` optimizes `‖Δ^k f‖_s / (d^k ‖f‖_s)` at
/// `s = config.smoothing_p` and reports the best iterate re-scored at `∞`.
/// The witness is the best iterate; the verdict is always `report`.
pub fn search_bernstein_ratio(
    n: usize,
    d: usize,
    k: u32,
    p: f64,
    eps: f64,
    config: &SearchConfig,
) -> Result<VerificationReport> {
    let start = Instant::now();
    check_dims(n, d, MAX_CHECK_DIM)?;
    config.validate()?;
    let shape = RatioShape::new(d, k, p, eps)?;
    let len = 1usize << n;
    let support: Vec<usize> = (0..len).filter(|m| m.count_ones() as usize <= d).collect();
    let weights: Vec<f64> = (0..len)
        .map(|m| (m.count_ones() as f64).powi(k as i32))
        .collect();
    let ascent = Ascent {
        n,
        shape: shape.smoothed(config.smoothing_p),
        support: &support,
        weights: &weights,
    };
    let runs: Vec<(f64, Vec<f64>)> = (0..config.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream_rng(config.seed, r as u64);
            let init = gaussian_window_coeffs(n, Window::Low(d), &mut rng);
            ascent.run(init, &shape, config)
        })
        .collect();
    let scores: Vec<f64> = runs.iter().map(|r| r.0).collect();
    let best = first_argmax(&scores).expect("at least one restart");
    let (observed, coeffs) = &runs[best];
    let (witness, _) = ascent.functions(coeffs);

    let mut report = VerificationReport::new("bernstein")
        .param("d", d)
        .param("k", k)
        .param("n", n)
        .param("p", finite_or_label(p))
        .param("restarts", config.restarts)
        .param("seed", config.seed)
        .param("steps", config.steps);
    if p.is_infinite() {
        report = report.param("smoothing_p", config.smoothing_p);
    } else {
        report = report.param("eps", eps);
    }
    report.observed = *observed;
    report.bound = Bound::ReportedOnly;
    report.verdict = Verdict::Report;
    report.detail("best_restart", best);
    report.detail("implied_constant_lower_bound", observed.powf(1.0 / k as f64));
    report.detail("theta", shape.theta);
    report.detail("p_eps", finite_or_label(shape.p_eps));
    report.set_witness(&witness);
    Ok(report.timed(start))
}

/// `sup { ‖Δ^k f‖_∞ / ‖f‖_∞ : f ∈ Deg≤d, f real }` for `n ≤ 4`, solved exactly
/// as a linear program.
///
/// Translations `f(δ) ↦ f(δ ⊙ η)` preserve `Deg≤d`, `‖·‖_∞` and commute with
/// `Δ`, so the supremum is attained at the all-ones point: maximize
/// `(Δ^k f)(1,…,1) = Σ_S |S|^k f̂(S)` subject to `|f(x)| ≤ 1` for every `x`.
pub fn brute_linf_operator_norm(n: usize, d: usize, k: u32) -> Result<f64> {
    check_dims(n, d, MAX_ORACLE_DIM)?;
    let masks: Vec<usize> = (0..1usize << n).filter(|m| m.count_ones() as usize <= d).collect();
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    // Parseval gives |f̂(S)| ≤ ‖f‖₂ ≤ ‖f‖_∞ ≤ 1
    let vars: Vec<_> = masks
        .iter()
        .map(|&m| lp.add_var((m.count_ones() as f64).powi(k as i32), (-1.0, 1.0)))
        .collect();
    for x in 0..1usize << n {
        let row: Vec<_> = vars
            .iter()
            .zip(&masks)
            .map(|(&v, &m)| (v, walsh_sign(m, x)))
            .collect();
        lp.add_constraint(row.as_slice(), ComparisonOp::Le, 1.0);
        lp.add_constraint(row.as_slice(), ComparisonOp::Ge, -1.0);
    }
    let solution = lp
        .solve()
        .map_err(|e| Error::InvalidParams(format!("oracle linear program failed: {e}")))?;
    Ok(solution.objective())
}

/// A named test function for the corpus checks.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusMember {
    pub name: String,
    pub f: CubeFunction,
}

impl CorpusMember {
    pub fn new(name: impl Into<String>, f: CubeFunction) -> Self {
        Self { name: name.into(), f }
    }
}

/// `1` on `{δ : δ_j = s_j for (j, s_j) in fixed}`, `0` elsewhere; `j` is 1-based.
pub fn subcube_indicator(n: usize, fixed: &[(usize, i8)]) -> Result<CubeFunction> {
    for &(j, s) in fixed {
        if j == 0 || j > n {
            return Err(Error::Coordinate { j, n });
        }
        if s != 1 && s != -1 {
            return Err(Error::InvalidParams(format!("subcube sign must be ±1, got {s}")));
        }
    }
    let fixed = fixed.to_vec();
    CubeFunction::from_index_fn(n, move |i| {
        // bit j-1 clear means δ_j = +1
        let inside = fixed
            .iter()
            .all(|&(j, s)| (i >> (j - 1) & 1 == 0) == (s == 1));
        C64::new(inside as u8 as f64, 0.0)
    })
}

/// `sgn(δ_a + δ_b + δ_c)` on `{-1,1}^n`; coordinates are 1-based.
pub fn majority3_junta(n: usize, coords: [usize; 3]) -> Result<CubeFunction> {
    if let Some(&j) = coords.iter().find(|&&j| j == 0 || j > n) {
        return Err(Error::Coordinate { j, n });
    }
    CubeFunction::from_index_fn(n, move |i| {
        let plus = coords.iter().filter(|&&j| i >> (j - 1) & 1 == 0).count();
        C64::new(if plus >= 2 { 1.0 } else { -1.0 }, 0.0)
    })
}

/// The `{−1, 0, 1}`-valued corpus: every character on 4 coordinates,
/// subcube indicators and signed subcubes on 6, majority-3 juntas and the
/// first Kushilevitz function.
pub fn standard_corpus() -> Result<Vec<CorpusMember>> {
    let mut corpus = Vec::new();
    for mask in 0..16 {
        corpus.push(CorpusMember::new(
            format!("character n=4 S={mask:#06b}"),
            CubeFunction::character(4, mask)?,
        ));
    }
    let cubes: [&[(usize, i8)]; 5] = [
        &[(1, 1)],
        &[(1, 1), (2, -1)],
        &[(2, 1), (4, 1), (6, -1)],
        &[(1, -1), (3, -1), (5, 1), (6, 1)],
        &[(1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (6, 1)],
    ];
    for fixed in cubes {
        let sub = subcube_indicator(6, fixed)?;
        corpus.push(CorpusMember::new(format!("subcube n=6 fixed={fixed:?}"), sub.clone()));
        let chi = CubeFunction::character(6, 0b110000)?;
        let signed = CubeFunction::new(
            6,
            sub.values().iter().zip(chi.values()).map(|(a, b)| a * b).collect(),
        )?;
        corpus.push(CorpusMember::new(format!("signed subcube n=6 fixed={fixed:?}"), signed));
    }
    for coords in [[1, 2, 3], [2, 4, 6]] {
        corpus.push(CorpusMember::new(
            format!("majority3 n=6 on {coords:?}"),
            majority3_junta(6, coords)?,
        ));
    }
    corpus.push(CorpusMember::new("majority3 n=3", majority3_junta(3, [1, 2, 3])?));
    let k1 = kushilevitz(1, EvalMode::Materialized)?;
    corpus.push(CorpusMember::new(
        "kushilevitz k=1",
        k1.as_table().expect("materialized").to_pm1(),
    ));
    Ok(corpus)
}

fn check_ternary(member: &CorpusMember) -> Result<()> {
    let values = member.f.values();
    match values
        .iter()
        .position(|v| v.im != 0.0 || !(v.re == 0.0 || v.re == 1.0 || v.re == -1.0))
    {
        Some(index) => Err(Error::NonBoolean {
            index,
            value: values[index].to_string(),
            expected: "{-1,0,1}",
        }),
        None => Ok(()),
    }
}

/// `‖Δf‖₁ ≤ 2d ‖f‖₁` for each `{−1,0,1}`-valued member, `d = deg f`.
pub fn check_boolean_l1(corpus: &[CorpusMember]) -> Result<VerificationReport> {
    let start = Instant::now();
    corpus.iter().try_for_each(check_ternary)?;
    let rows: Vec<_> = corpus
        .par_iter()
        .map(|m| {
            let d = m.f.spectrum().degree(DEFAULT_DEGREE_TOL);
            // partial derivatives take values in {0, ±1/2, ±1}: sums are exact
            let lhs = norm(&laplacian_by_partials(&m.f), 1.0);
            let f1 = norm(&m.f, 1.0);
            (d, lhs, 2.0 * d as f64 * f1, f1)
        })
        .collect();
    let mut report = VerificationReport::new("boolean-l1").param("corpus_size", corpus.len());
    let mut min_margin = f64::INFINITY;
    let mut ratios = Vec::with_capacity(rows.len());
    let mut members = Vec::with_capacity(rows.len());
    for (m, &(d, lhs, rhs, f1)) in corpus.iter().zip(&rows) {
        let margin = rhs - lhs;
        min_margin = min_margin.min(margin);
        ratios.push(if d > 0 && f1 > 0.0 { lhs / (d as f64 * f1) } else { 0.0 });
        members.push(json!({"name": m.name, "d": d, "lhs": lhs, "rhs": rhs, "margin": margin}));
    }
    let best = first_argmax(&ratios);
    report.observed = best.map_or(0.0, |i| ratios[i]);
    report.bound = Bound::Value(2.0);
    report.verdict = Verdict::from_ok(min_margin >= -CHECK_TOL);
    report.detail("min_margin", finite_or_label(min_margin));
    report.detail("members", members);
    if let Some(i) = best {
        report.set_witness(&corpus[i].f);
    }
    Ok(report.timed(start))
}

/// Reports `max ‖Δf‖_p / (d ‖f‖_p)` over the corpus and checks the norm
/// coincidence `‖f‖_{p_ε}^{p_ε} = ‖f‖₂² = ‖f‖_p^p` with `ε = (p−1)/2`.
pub fn check_corma(corpus: &[CorpusMember], p: f64) -> Result<VerificationReport> {
    let start = Instant::now();
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidParams(format!("p must lie in (1, inf), got {p}")));
    }
    corpus.iter().try_for_each(check_ternary)?;
    let eps = (p - 1.0) / 2.0;
    let p_eps = if p >= 2.0 { p + eps } else { p - eps };
    let rows: Vec<_> = corpus
        .par_iter()
        .map(|m| {
            let d = m.f.spectrum().degree(DEFAULT_DEGREE_TOL);
            let fp = norm(&m.f, p);
            let lhs = norm(&laplacian_power(&m.f, 1), p);
            let powers = [norm(&m.f, p_eps).powf(p_eps), norm(&m.f, 2.0).powi(2), fp.powf(p)];
            let spread = powers.iter().fold(0.0_f64, |acc, &x| acc.max((x - powers[1]).abs()));
            let ratio = if d > 0 && fp > 0.0 { lhs / (d as f64 * fp) } else { 0.0 };
            (d, ratio, spread)
        })
        .collect();
    let ratios: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let max_spread = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    let best = first_argmax(&ratios);
    let mut report = VerificationReport::new("corma")
        .param("corpus_size", corpus.len())
        .param("p", p);
    report.observed = best.map_or(0.0, |i| ratios[i]);
    report.bound = Bound::ReportedOnly;
    report.verdict = if max_spread <= 1e-10 { Verdict::Report } else { Verdict::Fail };
    report.detail("p_eps", p_eps);
    report.detail("norm_identity_max_error", max_spread);
    report.detail(
        "members",
        corpus
            .iter()
            .zip(&rows)
            .map(|(m, r)| json!({"name": m.name, "d": r.0, "ratio": r.1}))
            .collect::<Vec<_>>(),
    );
    if let Some(i) = best {
        report.set_witness(&corpus[i].f);
    }
    Ok(report.timed(start))
}

fn validate_t_grid(t_grid: &[f64]) -> Result<()> {
    if t_grid.is_empty() {
        return Err(Error::InvalidParams("empty t grid".into()));
    }
    match t_grid.iter().find(|t| !(**t >= 0.0) || !t.is_finite()) {
        Some(t) => Err(Error::InvalidParams(format!("t must be finite and >= 0, got {t}"))),
        None => Ok(()),
    }
}

/// `‖e^{−tΔ}f‖_p ≤ exp(−(1−θ) t d) ‖f‖₂^{1−θ} ‖f‖_{p_ε}^θ` for random
/// `f ∈ Tail≥d`, every `t` in `t_grid`.
pub fn check_heat_tail(
    n: usize,
    d: usize,
    p: f64,
    eps: f64,
    t_grid: &[f64],
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    check_dims(n, d, MAX_CHECK_DIM)?;
    validate_t_grid(t_grid)?;
    let params = make_params(p, eps, 1)?;
    let theta = params.theta;
    let c = 1.0 - theta;
    let sample = |i: usize| gaussian_in_window(n, Window::Tail(d), &mut stream_rng(seed, i as u64));
    // per trial: (max ratio, min margin)
    let per_trial: Vec<(f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let f = sample(i);
            let base = norm(&f, 2.0).powf(1.0 - theta) * norm(&f, params.p_eps).powf(theta);
            t_grid.iter().fold((0.0_f64, f64::INFINITY), |(ratio, margin), &t| {
                let lhs = norm(&heat(&f, t).expect("t >= 0"), p);
                let rhs = (-c * t * d as f64).exp() * base;
                let r = if rhs > 0.0 { lhs / rhs } else { 0.0 };
                (ratio.max(r), margin.min(rhs - lhs))
            })
        })
        .collect();
    let ratios: Vec<f64> = per_trial.iter().map(|r| r.0).collect();
    let min_margin = per_trial.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let violations = per_trial.iter().filter(|r| r.1 < -CHECK_TOL).count();
    let best = first_argmax(&ratios);

    let mut report = VerificationReport::new("heat-tail")
        .param("d", d)
        .param("eps", eps)
        .param("n", n)
        .param("p", p)
        .param("seed", seed)
        .param("t", t_grid)
        .param("trials", trials);
    report.observed = best.map_or(0.0, |i| ratios[i]);
    report.bound = Bound::Value(1.0);
    report.verdict = Verdict::from_ok(violations == 0);
    report.detail("c", c);
    report.detail("theta", theta);
    report.detail("min_margin", finite_or_label(min_margin));
    report.detail("violations", violations);
    if let Some(i) = best {
        report.detail("argmax_trial", i);
        report.set_witness(&sample(i));
    }
    Ok(report.timed(start))
}

/// Reports the largest implied constant
/// `Ĉ = −log(‖e^{−tΔ}f‖_{p+ε} / ‖f‖_p) / (t d)` over random `f ∈ Deg≤d`
/// and `t > 0` in `t_grid`.
pub fn check_helo(
    n: usize,
    d: usize,
    p: f64,
    eps: f64,
    t_grid: &[f64],
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    check_dims(n, d, MAX_CHECK_DIM)?;
    validate_t_grid(t_grid)?;
    if !(p >= 2.0) || !p.is_finite() {
        return Err(Error::InvalidParams(format!("helo needs finite p >= 2, got {p}")));
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidParams(format!("eps must be positive, got {eps}")));
    }
    if d == 0 {
        return Err(Error::InvalidParams("helo needs d >= 1".into()));
    }
    let ts: Vec<f64> = t_grid.iter().copied().filter(|&t| t > 0.0).collect();
    if ts.is_empty() {
        return Err(Error::InvalidParams("helo needs some t > 0".into()));
    }
    let sample = |i: usize| gaussian_in_window(n, Window::Low(d), &mut stream_rng(seed, i as u64));
    let per_trial: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let f = sample(i);
            let fp = norm(&f, p);
            ts.iter()
                .map(|&t| {
                    let lhs = norm(&heat(&f, t).expect("t > 0"), p + eps);
                    -(lhs / fp).ln() / (t * d as f64)
                })
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let best = first_argmax(&per_trial);
    let mut report = VerificationReport::new("helo")
        .param("d", d)
        .param("eps", eps)
        .param("n", n)
        .param("p", p)
        .param("seed", seed)
        .param("t", t_grid)
        .param("trials", trials);
    report.observed = best.map_or(0.0, |i| per_trial[i]);
    report.bound = Bound::ReportedOnly;
    report.verdict = Verdict::Report;
    if let Some(i) = best {
        report.detail("argmax_trial", i);
        report.set_witness(&sample(i));
    }
    Ok(report.timed(start))
}

/// Imaginary powers `L^{iu}`, `L = Δ + γI`: checks `‖L^{iu}f‖₂ = ‖f‖₂` and
/// reports `max ‖L^{iu}f‖_p / (exp((π|1/p − 1/2| + 1)|u|) ‖f‖_p)`.
pub fn check_imaginary_powers(
    n: usize,
    p: f64,
    u_grid: &[f64],
    gamma: f64,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    check_dims(n, 0, MAX_CHECK_DIM)?;
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::Domain(format!("imaginary powers need gamma > 0, got {gamma}")));
    }
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidParams(format!("p must lie in (1, inf), got {p}")));
    }
    if u_grid.is_empty() || u_grid.iter().any(|u| !u.is_finite()) {
        return Err(Error::InvalidParams("u grid must be non-empty and finite".into()));
    }
    let rate = PI * (1.0 / p - 0.5).abs() + 1.0;
    let sample = |i: usize| gaussian_function(n, &mut stream_rng(seed, i as u64));
    // per trial: (max ratio, max relative unitarity error)
    let per_trial: Vec<Result<(f64, f64)>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let f = sample(i);
            let (f2, fp) = (norm(&f, 2.0), norm(&f, p));
            u_grid.iter().try_fold((0.0_f64, 0.0_f64), |(ratio, err), &u| {
                let h = complex_power(&f, C64::new(0.0, u), gamma)?;
                let unitarity = (norm(&h, 2.0) - f2).abs() / f2;
                let r = norm(&h, p) / ((rate * u.abs()).exp() * fp);
                Ok((ratio.max(r), err.max(unitarity)))
            })
        })
        .collect();
    let per_trial: Vec<(f64, f64)> = per_trial.into_iter().collect::<Result<_>>()?;
    let ratios: Vec<f64> = per_trial.iter().map(|r| r.0).collect();
    let max_err = per_trial.iter().map(|r| r.1).fold(0.0, f64::max);
    let best = first_argmax(&ratios);
    let mut report = VerificationReport::new("imaginary")
        .param("gamma", gamma)
        .param("n", n)
        .param("p", p)
        .param("seed", seed)
        .param("trials", trials)
        .param("u", u_grid);
    report.observed = best.map_or(0.0, |i| ratios[i]);
    report.bound = Bound::ReportedOnly;
    report.verdict = if max_err <= 1e-10 { Verdict::Report } else { Verdict::Fail };
    report.detail("max_unitarity_error", max_err);
    if let Some(i) = best {
        report.detail("argmax_trial", i);
        report.set_witness(&sample(i));
    }
    Ok(report.timed(start))
}

/// `(n/2)(T_d(1) − T_d(1 − 2/n))`, the value of `Δ T_d(Σδ/n)` at the all-ones point.
pub fn chebyshev_formula(n: usize, d: usize) -> f64 {
    let nf = n as f64;
    nf / 2.0 * (chebyshev_t(d, 1.0) - chebyshev_t(d, 1.0 - 2.0 / nf))
}

/// For each `n`, enumerates `r(n) = ‖Δf‖_∞ / ‖f‖_∞` for `f = T_d(Σδ/n)` and
/// checks `r(n) ≥ (n/2)(T_d(1) − T_d(1 − 2/n))`. Whether `r` is nondecreasing
/// and at most `d²` along the list is recorded in the details.
pub fn check_chebyshev_lower(n_list: &[usize], d: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    if n_list.is_empty() {
        return Err(Error::InvalidParams("empty n list".into()));
    }
    let mut ns = n_list.to_vec();
    ns.sort_unstable();
    for &n in &ns {
        check_dims(n, d, 20)?;
    }
    let rows: Vec<(usize, f64, f64, f64)> = ns
        .iter()
        .map(|&n| {
            let f = chebyshev_function(n, d)?;
            let lap = laplacian_power(&f, 1);
            let r = norm(&lap, f64::INFINITY) / norm(&f, f64::INFINITY);
            Ok((n, r, chebyshev_formula(n, d), lap.at(0).re))
        })
        .collect::<Result<_>>()?;
    let target = (d * d) as f64;
    let formula_ok = rows.iter().all(|&(_, r, formula, _)| r >= formula - CHECK_TOL);
    let trend_ok = rows.windows(2).all(|w| w[1].1 >= w[0].1 - CHECK_TOL)
        && rows.iter().all(|r| r.1 <= target + CHECK_TOL);
    let &(n_max, r_max, formula_max, _) = rows.last().expect("non-empty");

    let mut report = VerificationReport::new("chebyshev")
        .param("d", d)
        .param("n", &ns);
    report.observed = r_max;
    report.bound = Bound::Value(formula_max);
    report.verdict = Verdict::from_ok(formula_ok);
    report.detail("target", target);
    report.detail("trend_nondecreasing_to_target", trend_ok);
    report.detail(
        "rows",
        rows.iter()
            .map(|&(n, r, formula, at_ones)| {
                json!({"n": n, "ratio": r, "formula": formula, "laplacian_at_all_ones": at_ones})
            })
            .collect::<Vec<_>>(),
    );
    report.set_witness(&chebyshev_function(n_max, d)?);
    Ok(report.timed(start))
}

/// `log 6 / log 3`.
pub fn kushilevitz_exponent() -> f64 {
    6f64.ln() / 3f64.ln()
}

/// Exact checks of the `k`-th Kushilevitz function, `k ∈ {1, 2}`.
///
/// `k = 1`: range `{−1, 1}`, degree 3, `‖Δf‖_∞ = 6 = 3^{log 6/log 3}`.
/// `k = 2`: sensitivity 36 at the recursively built input (point queries on
/// the lazy composition) and degree 9 of the sparse composed polynomial.
pub fn check_kushilevitz(k: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    let exponent = kushilevitz_exponent();
    let mut report = VerificationReport::new("kushilevitz").param("k", k);
    report.detail("bound_form", "d^(log 6/log 3)");
    match k {
        1 => {
            let table = kushilevitz(1, EvalMode::Materialized)?;
            let f = table.as_table().expect("materialized").to_pm1();
            let range_ok = f.values().iter().all(|v| v.im == 0.0 && v.re.abs() == 1.0);
            let degree = f.spectrum().degree(DEFAULT_DEGREE_TOL);
            let sup = norm(&laplacian_power(&f, 1), f64::INFINITY);
            let bound = (degree as f64).powf(exponent);
            let identity_err = (3f64.powf(exponent) - 6.0).abs();
            report.observed = sup;
            report.bound = Bound::Value(bound);
            report.verdict =
                Verdict::from_ok(range_ok && degree == 3 && sup == 6.0 && identity_err <= 1e-12);
            report.detail("range_pm1", range_ok);
            report.detail("degree", degree);
            report.detail("exponent", exponent);
            report.detail("exponent_identity_error", identity_err);
            report.set_witness(&f);
        }
        2 => {
            let lazy = kushilevitz(2, EvalMode::Lazy)?;
            let x = lazy
                .full_sensitivity_input(true)
                .ok_or_else(|| Error::InvalidParams("no fully sensitive base input".into()))?;
            let s = sensitivity_at(&lazy, x);
            let degree = kushilevitz_poly(2)?.degree();
            let bound = (degree as f64).powf(exponent);
            report.observed = s as f64;
            report.bound = Bound::Value(bound);
            report.verdict = Verdict::from_ok(s >= 36 && degree == 9);
            report.detail("degree", degree);
            report.detail("exponent", exponent);
            report.detail("extremal_input", format!("{x:#011x}"));
            report.detail("flip_queries", lazy.arity());
            report.detail("sensitivity", s);
        }
        0 => return Err(Error::InvalidParams("kushilevitz needs k >= 1".into())),
        _ => {
            return Err(Error::Capacity {
                n: 6usize.saturating_pow(k),
                max: 36,
            })
        }
    }
    Ok(report.timed(start))
}

/// Three-lines check on seeded random data: `f ∈ Deg≤d` with Gaussian
/// coefficients (stream 0) and Gaussian `g` (stream 1) scaled to `‖g‖_{p'} = 1`,
/// sampled at `samples` points per boundary line over `u ∈ [−8, 8]`.
#[allow(clippy::too_many_arguments)]
pub fn check_three_lines(
    n: usize,
    d: usize,
    p: f64,
    eps: f64,
    k: u32,
    gamma: f64,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    check_dims(n, d, MAX_CHECK_DIM)?;
    let params = make_params(p, eps, k)?;
    let f = gaussian_in_window(n, Window::Low(d), &mut stream_rng(seed, 0));
    let g = gaussian_function(n, &mut stream_rng(seed, 1));
    let g = g.scaled(C64::new(1.0 / norm(&g, params.p_dual), 0.0));
    let report = three_lines_check(&boundary_samples(samples, 8.0), &f, &g, &params, gamma)?
        .param("samples", samples)
        .param("seed", seed);
    Ok(report.timed(start))
}

/// The Boolean-valued members of the corpus that [`check_boolean_l1`] and
/// [`check_corma`] accept, as `{0,1}` truth tables for sensitivity checks.
pub fn boolean_corpus() -> Result<Vec<(String, Boolean01Function)>> {
    Ok(vec![
        ("majority3".into(), Boolean01Function::majority(3)?),
        ("parity5".into(), Boolean01Function::parity(5)?),
        ("and4".into(), Boolean01Function::and(4)?),
        (
            "kushilevitz k=1".into(),
            kushilevitz(1, EvalMode::Materialized)?
                .as_table()
                .expect("materialized")
                .clone(),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::full_mask;

    #[test]
    fn bm_l2_top_character_is_tight() {
        let f = CubeFunction::character(6, full_mask(6)).unwrap();
        let r = norm(&laplacian_power(&f, 1), 2.0) / norm(&f, 2.0);
        assert!((r - 6.0).abs() < 1e-12);
        let report = check_bm_l2(6, 0, 5, 1).unwrap();
        assert_eq!(report.observed, 0.0);
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn bm_l2_random_passes_and_witness_reproduces() {
        let report = check_bm_l2(10, 3, 100, 7).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert!(report.observed <= 3.0 + 1e-9 && report.observed > 1.0);
        let w = report.witness_function().unwrap().unwrap();
        let r = norm(&laplacian_power(&w, 1), 2.0) / norm(&w, 2.0);
        assert!((r - report.observed).abs() < 1e-9);
        assert!(check_bm_l2(4, 5, 1, 0).is_err());
        assert!(check_bm_l2(15, 1, 1, 0).is_err());
    }

    #[test]
    fn first_argmax_prefers_lowest_index() {
        assert_eq!(first_argmax(&[1.0, 3.0, 3.0, 2.0]), Some(1));
        assert_eq!(first_argmax(&[f64::NAN, 0.5]), Some(1));
        assert_eq!(first_argmax(&[]), None);
    }

    #[test]
    fn ratio_of_top_character_is_one() {
        for p in [1.5, 3.0, 4.0, f64::INFINITY] {
            let f = CubeFunction::character(5, full_mask(5)).unwrap();
            let r = bernstein_ratio(&f, 5, 1, p, 0.25).unwrap();
            assert!((r - 1.0).abs() < 1e-12, "p = {p}");
        }
    }

    #[test]
    fn analytic_gradient_matches_differences() {
        let n = 4;
        let support: Vec<usize> = (0..16).filter(|m: &usize| m.count_ones() <= 2).collect();
        let weights: Vec<f64> = (0..16).map(|m: usize| m.count_ones() as f64).collect();
        for (p, eps) in [(4.0, 4.0), (3.0, 1.0)] {
            let shape = RatioShape::new(2, 1, p, eps).unwrap();
            let ascent = Ascent { n, shape, support: &support, weights: &weights };
            let mut c = gaussian_window_coeffs(n, Window::Low(2), &mut stream_rng(3, 0));
            normalize(&mut c, &support);
            let g = ascent.gradient(&c);
            for &m in &support {
                let mut plus = c.clone();
                let mut minus = c.clone();
                plus[m] += 1e-6;
                minus[m] -= 1e-6;
                let fd = (ascent.log_ratio(&shape, &plus) - ascent.log_ratio(&shape, &minus)) / 2e-6;
                assert!((fd - g[m]).abs() < 1e-6, "mask {m}: {fd} vs {}", g[m]);
            }
        }
    }

    #[test]
    fn search_reaches_character_ratio() {
        let config = SearchConfig { restarts: 4, steps: 200, seed: 5, ..SearchConfig::default() };
        let report = search_bernstein_ratio(4, 4, 1, 3.0, 1.0, &config).unwrap();
        assert!(report.observed >= 1.0 - 1e-9);
        assert_eq!(report.verdict, Verdict::Report);
        let w = report.witness_function().unwrap().unwrap();
        let again = bernstein_ratio(&w, 4, 1, 3.0, 1.0).unwrap();
        assert!(report.observed <= again + 1e-12);
        assert!((report.observed - again).abs() < 1e-9);
    }

    #[test]
    fn search_config_validation() {
        let ok = SearchConfig::default();
        assert!(ok.validate().is_ok());
        assert!(SearchConfig { restarts: 0, ..ok }.validate().is_err());
        assert!(SearchConfig { steps: 0, ..ok }.validate().is_err());
        assert!(SearchConfig { smoothing_p: 1.5, ..ok }.validate().is_err());
        assert!(search_bernstein_ratio(4, 2, 1, 2.0, 1.0, &ok).is_err());
    }

    #[test]
    fn oracle_small_cases() {
        assert!(brute_linf_operator_norm(2, 2, 1).unwrap() >= 2.0 - 1e-9);
        assert!((brute_linf_operator_norm(3, 1, 1).unwrap() - 1.0).abs() < 1e-9);
        for n in 1..=4 {
            let mut prev = 0.0;
            for d in 0..=n {
                let v = brute_linf_operator_norm(n, d, 1).unwrap();
                assert!(v >= prev - 1e-9);
                assert!(v <= (d * d) as f64 + 1e-9);
                prev = v;
            }
        }
        assert!(brute_linf_operator_norm(5, 1, 1).is_err());
    }

    #[test]
    fn corpus_checks() {
        let corpus = standard_corpus().unwrap();
        let report = check_boolean_l1(&corpus).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        let corma = check_corma(&corpus, 3.0).unwrap();
        assert_eq!(corma.verdict, Verdict::Report);
        assert!(corma.observed >= 1.0 - 1e-12);
        let bad = vec![CorpusMember::new("half", CubeFunction::constant(2, C64::new(0.5, 0.0)).unwrap())];
        assert!(matches!(check_boolean_l1(&bad), Err(Error::NonBoolean { .. })));
        assert!(check_corma(&corpus, 1.0).is_err());
    }

    #[test]
    fn character_l1_and_corma_ratio() {
        let chi = CubeFunction::character(5, 0b10110).unwrap();
        let corpus = vec![CorpusMember::new("chi", chi)];
        let r = check_boolean_l1(&corpus).unwrap();
        assert!((r.observed - 1.0).abs() < 1e-12);
        let c = check_corma(&corpus, 1.5).unwrap();
        assert!((c.observed - 1.0).abs() < 1e-12);
    }

    #[test]
    fn subcube_indicator_values() {
        let f = subcube_indicator(3, &[(1, 1), (3, -1)]).unwrap();
        // δ = (1, ·, −1) ↔ bit 0 clear, bit 2 set
        let ones: Vec<usize> = (0..8).filter(|&i| f.at(i).re == 1.0).collect();
        assert_eq!(ones, vec![0b100, 0b110]);
        assert!(subcube_indicator(3, &[(4, 1)]).is_err());
        assert!(subcube_indicator(3, &[(1, 0)]).is_err());
    }

    #[test]
    fn heat_tail_single_character_and_zero_time() {
        let report = check_heat_tail(8, 3, 4.0, 2.0, &[0.0, 0.5], 20, 3).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert!(report.observed <= 1.0 + 1e-9);
        assert!(check_heat_tail(8, 3, 2.0, 2.0, &[0.5], 1, 0).is_err());
        assert!(check_heat_tail(8, 3, 4.0, 2.0, &[-0.5], 1, 0).is_err());
    }

    #[test]
    fn helo_character_constant_is_one() {
        let f = CubeFunction::character(6, 0b111).unwrap();
        let t = 0.7;
        let c = -(norm(&heat(&f, t).unwrap(), 4.0) / norm(&f, 2.0)).ln() / (t * 3.0);
        assert!((c - 1.0).abs() < 1e-12);
        let report = check_helo(8, 2, 2.0, 2.0, &[0.0, 0.5, 1.0], 20, 1).unwrap();
        assert!(report.observed.is_finite());
        assert!(check_helo(8, 2, 1.5, 2.0, &[1.0], 1, 0).is_err());
        assert!(check_helo(8, 2, 2.0, 2.0, &[0.0], 1, 0).is_err());
    }

    #[test]
    fn imaginary_powers_report() {
        let r = check_imaginary_powers(6, 4.0, &[0.0], 1.0, 10, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Report);
        assert!((r.observed - 1.0).abs() < 1e-12);
        let r = check_imaginary_powers(6, 4.0, &[-1.0, 1.0], 1.0, 10, 2).unwrap();
        assert!(r.observed > 0.0 && r.observed < 10.0);
        assert!(check_imaginary_powers(6, 4.0, &[1.0], 0.0, 1, 0).is_err());
    }

    #[test]
    fn chebyshev_check_rows() {
        assert!((chebyshev_formula(4, 2) - 3.0).abs() < 1e-12);
        assert!((chebyshev_formula(16, 2) - 3.75).abs() < 1e-12);
        let r = check_chebyshev_lower(&[4, 8, 16], 2).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.details["trend_nondecreasing_to_target"], json!(true));
        let r = check_chebyshev_lower(&[3, 5, 9], 1).unwrap();
        assert!((r.observed - 1.0).abs() < 1e-12);
        assert!(check_chebyshev_lower(&[21], 2).is_err());
        assert!(check_chebyshev_lower(&[2], 3).is_err());
    }

    #[test]
    fn kushilevitz_checks() {
        let r = check_kushilevitz(1).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.observed, 6.0);
        assert!(check_kushilevitz(3).is_err());
        assert!(check_kushilevitz(0).is_err());
    }

    #[test]
    fn three_lines_runner() {
        let r = check_three_lines(6, 2, 4.0, 4.0, 1, 1.0, 33, 4).unwrap();
        assert_ne!(r.verdict, Verdict::Fail);
        assert_eq!(r.params["seed"], json!(4));
    }

    #[test]
    fn boolean_corpus_sensitivity_matches_laplacian() {
        for (name, f) in boolean_corpus().unwrap() {
            let r = crate::constructions::linf_laplacian_equals_sensitivity_check(&f).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{name}");
        }
    }
}
