//! Operators diagonalized by the Walsh basis.
//!
//! Every operator here acts on `w_S` by a scalar that depends only on the
//! level `|S|`, so a multiplier is evaluated once per level and then applied
//! to each coefficient by popcount.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cube::{fwht_forward, fwht_inverse, CubeFunction, Spectrum, C64};
use crate::error::{Error, Result};

/// Coefficients at or below this modulus may sit on a level where the
/// multiplier is undefined.
pub const SINGULAR_TOL: f64 = 1e-12;

/// Spectral window kept by a projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Window {
    /// Levels `0..=d`.
    Low(usize),
    /// Levels `d..=n`.
    Tail(usize),
}

impl Window {
    fn contains(self, level: usize) -> bool {
        match self {
            Window::Low(d) => level <= d,
            Window::Tail(d) => level >= d,
        }
    }

    fn bound(self) -> usize {
        match self {
            Window::Low(d) | Window::Tail(d) => d,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MultiplierKind {
    Identity,
    /// `(ℓ + γ)^z`.
    Power { z: C64 },
    /// `e^{-t(ℓ + γ)}`.
    Heat { t: f64 },
    Projection(Window),
    /// Explicit values for levels `0..len`.
    Levels(Vec<C64>),
}

/// A map from level `ℓ` (and shift `γ`) to a complex scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelMultiplier {
    gamma: f64,
    kind: MultiplierKind,
}

impl LevelMultiplier {
    pub fn identity() -> Self {
        Self {
            gamma: 0.0,
            kind: MultiplierKind::Identity,
        }
    }

    /// `L^z` with `L = Δ + γI`. Requires `Re z ≥ 0` and `γ ≥ 0`.
    pub fn power(z: C64, gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        if !(z.re >= 0.0) || !z.im.is_finite() || !z.re.is_finite() {
            return Err(Error::Domain(format!(
                "complex power needs finite z with Re z >= 0, got {z}"
            )));
        }
        Ok(Self {
            gamma,
            kind: MultiplierKind::Power { z },
        })
    }

    /// `e^{-tΔ}` for `t ≥ 0`.
    pub fn heat(t: f64) -> Result<Self> {
        Self::shifted_heat(t, 0.0)
    }

    /// `e^{-tL}` with `L = Δ + γI`, for `t ≥ 0`.
    pub fn shifted_heat(t: f64, gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!(
                "heat time must be finite and >= 0, got {t}; use the unstable constructor for backward flow"
            )));
        }
        Ok(Self {
            gamma,
            kind: MultiplierKind::Heat { t },
        })
    }

    /// `e^{-tΔ}` for any finite `t`, including the unbounded backward flow `t < 0`.
    pub fn heat_unstable(t: f64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::Domain(format!("heat time must be finite, got {t}")));
        }
        Ok(Self {
            gamma: 0.0,
            kind: MultiplierKind::Heat { t },
        })
    }

    pub fn projection(window: Window) -> Self {
        Self {
            gamma: 0.0,
            kind: MultiplierKind::Projection(window),
        }
    }

    /// Multiplier `ℓ^k` (with `0^0 = 1`).
    pub fn laplacian_power(k: u32) -> Self {
        Self::from_fn(64, |level| C64::new((level as f64).powi(k as i32), 0.0))
    }

    /// Table of explicit values for levels `0..=max_level`.
    pub fn from_fn(max_level: usize, rule: impl Fn(usize) -> C64) -> Self {
        Self {
            gamma: 0.0,
            kind: MultiplierKind::Levels((0..=max_level).map(rule).collect()),
        }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn kind(&self) -> &MultiplierKind {
        &self.kind
    }

    /// Value at one level, or `None` where the multiplier is undefined
    /// (`0^{iu}` when `γ = 0`, or a level beyond an explicit table).
    pub fn at_level(&self, level: usize) -> Option<C64> {
        let shifted = level as f64 + self.gamma;
        match &self.kind {
            MultiplierKind::Identity => Some(C64::new(1.0, 0.0)),
            MultiplierKind::Power { z } => {
                if shifted == 0.0 {
                    // 0^z = 0 for Re z > 0; undefined on the imaginary axis
                    (z.re > 0.0).then(|| C64::new(0.0, 0.0))
                } else {
                    Some((z * shifted.ln()).exp())
                }
            }
            MultiplierKind::Heat { t } => Some(C64::new((-t * shifted).exp(), 0.0)),
            MultiplierKind::Projection(w) => {
                Some(C64::new(if w.contains(level) { 1.0 } else { 0.0 }, 0.0))
            }
            MultiplierKind::Levels(table) => table.get(level).copied(),
        }
    }

    /// Values for levels `0..=n`.
    pub fn level_values(&self, n: usize) -> Vec<Option<C64>> {
        (0..=n).map(|l| self.at_level(l)).collect()
    }

    pub fn to_descriptor(&self) -> MultiplierDescriptor {
        let mut d = MultiplierDescriptor {
            kind: String::new(),
            gamma: self.gamma,
            z: None,
            t: None,
            d: None,
            levels: None,
        };
        match &self.kind {
            MultiplierKind::Identity => d.kind = "identity".into(),
            MultiplierKind::Power { z } => {
                d.kind = "power".into();
                d.z = Some([z.re, z.im]);
            }
            MultiplierKind::Heat { t } => {
                d.kind = if *t < 0.0 { "heat-unstable" } else { "heat" }.into();
                d.t = Some(*t);
            }
            MultiplierKind::Projection(Window::Low(k)) => {
                d.kind = "low".into();
                d.d = Some(*k);
            }
            MultiplierKind::Projection(Window::Tail(k)) => {
                d.kind = "tail".into();
                d.d = Some(*k);
            }
            MultiplierKind::Levels(table) => {
                d.kind = "levels".into();
                d.levels = Some(table.iter().map(|c| [c.re, c.im]).collect());
            }
        }
        d
    }

    pub fn from_descriptor(desc: &MultiplierDescriptor) -> Result<Self> {
        let missing = |field: &str| {
            Error::InvalidParams(format!("multiplier kind {:?} needs field {field:?}", desc.kind))
        };
        match desc.kind.as_str() {
            "identity" => Ok(Self::identity()),
            "power" => {
                let [re, im] = desc.z.ok_or_else(|| missing("z"))?;
                Self::power(C64::new(re, im), desc.gamma)
            }
            "heat" => Self::shifted_heat(desc.t.ok_or_else(|| missing("t"))?, desc.gamma),
            "heat-unstable" => Self::heat_unstable(desc.t.ok_or_else(|| missing("t"))?),
            "low" => Ok(Self::projection(Window::Low(desc.d.ok_or_else(|| missing("d"))?))),
            "tail" => Ok(Self::projection(Window::Tail(desc.d.ok_or_else(|| missing("d"))?))),
            "levels" => {
                let table = desc.levels.as_ref().ok_or_else(|| missing("levels"))?;
                Ok(Self {
                    gamma: 0.0,
                    kind: MultiplierKind::Levels(
                        table.iter().map(|&[re, im]| C64::new(re, im)).collect(),
                    ),
                })
            }
            other => Err(Error::InvalidParams(format!("unknown multiplier kind {other:?}"))),
        }
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma >= 0.0) || !gamma.is_finite() {
        return Err(Error::Domain(format!("shift gamma must be finite and >= 0, got {gamma}")));
    }
    Ok(())
}

/// Serialized multiplier: `{"kind", "gamma", "z": [re, im] | "t" | "d" | "levels"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplierDescriptor {
    pub kind: String,
    #[serde(default)]
    pub gamma: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<[f64; 2]>>,
}

/// `coeffs'[mask] = m(popcount(mask)) · coeffs[mask]`.
pub fn apply_multiplier(s: &Spectrum, m: &LevelMultiplier) -> Result<Spectrum> {
    let levels = m.level_values(s.n());
    if let Some((mask, _)) = s.coeffs().iter().enumerate().find(|(mask, c)| {
        levels[mask.count_ones() as usize].is_none() && c.norm() > SINGULAR_TOL
    }) {
        let level = mask.count_ones();
        return Err(Error::SingularMultiplier(format!(
            "multiplier undefined at level {level} but coefficient at mask {mask:#b} is nonzero"
        )));
    }
    let coeffs = s
        .coeffs()
        .par_iter()
        .enumerate()
        .map(|(mask, &c)| match levels[mask.count_ones() as usize] {
            Some(v) => v * c,
            None => C64::new(0.0, 0.0),
        })
        .collect();
    Spectrum::new(s.n(), coeffs)
}

/// Applies a multiplier to a point-space function via forward/inverse transforms.
pub fn apply_to_function(f: &CubeFunction, m: &LevelMultiplier) -> Result<CubeFunction> {
    Ok(fwht_inverse(&apply_multiplier(&fwht_forward(f), m)?))
}

fn coordinate_bit(j: usize, n: usize) -> Result<usize> {
    if j == 0 || j > n {
        return Err(Error::Coordinate { j, n });
    }
    Ok(1 << (j - 1))
}

/// `∂_j f(δ) = (f(δ) − f(δ with coordinate j flipped)) / 2`, for `1 ≤ j ≤ n`.
pub fn partial_derivative(f: &CubeFunction, j: usize) -> Result<CubeFunction> {
    let bit = coordinate_bit(j, f.n())?;
    let v = f.values();
    CubeFunction::from_index_fn(f.n(), |i| (v[i] - v[i ^ bit]) * 0.5)
}

/// `Δf = Σ_j ∂_j f`, evaluated pointwise without any transform.
pub fn laplacian_by_partials(f: &CubeFunction) -> CubeFunction {
    let n = f.n();
    let v = f.values();
    CubeFunction::from_index_fn(n, |i| {
        (0..n).map(|j| (v[i] - v[i ^ (1 << j)]) * 0.5).sum()
    })
    .expect("same shape as a valid input")
}

/// `Δ^k f` through the level multiplier `ℓ^k`.
pub fn laplacian_power(f: &CubeFunction, k: u32) -> CubeFunction {
    if k == 0 {
        return f.clone();
    }
    apply_to_function(f, &LevelMultiplier::laplacian_power(k))
        .expect("integer powers are defined on every level")
}

/// `Bf(δ) = ½ Σ_j f(δ with coordinate j flipped)`, so that `Δ = (n/2)I − B`.
pub fn b_operator(f: &CubeFunction) -> CubeFunction {
    let n = f.n();
    let v = f.values();
    CubeFunction::from_index_fn(n, |i| (0..n).map(|j| v[i ^ (1 << j)]).sum::<C64>() * 0.5)
        .expect("same shape as a valid input")
}

/// `e^{-tΔ} f` for `t ≥ 0`.
pub fn heat(f: &CubeFunction, t: f64) -> Result<CubeFunction> {
    apply_to_function(f, &LevelMultiplier::heat(t)?)
}

/// `e^{-tΔ} f` for any finite `t`. For `t < 0` this is the backward flow,
/// which amplifies level `ℓ` by `e^{|t|ℓ}`.
pub fn heat_unstable(f: &CubeFunction, t: f64) -> Result<CubeFunction> {
    apply_to_function(f, &LevelMultiplier::heat_unstable(t)?)
}

/// `e^{-tL} f` with `L = Δ + γI`.
pub fn shifted_heat(f: &CubeFunction, t: f64, gamma: f64) -> Result<CubeFunction> {
    apply_to_function(f, &LevelMultiplier::shifted_heat(t, gamma)?)
}

/// `L^z f = Σ (|S| + γ)^z f̂(S) w_S`.
pub fn complex_power(f: &CubeFunction, z: C64, gamma: f64) -> Result<CubeFunction> {
    apply_to_function(f, &LevelMultiplier::power(z, gamma)?)
}

/// Same as [`complex_power`] but staying in the Walsh domain.
pub fn complex_power_spectrum(s: &Spectrum, z: C64, gamma: f64) -> Result<Spectrum> {
    apply_multiplier(s, &LevelMultiplier::power(z, gamma)?)
}

/// Zeroes every coefficient outside the window.
pub fn project(s: &Spectrum, window: Window) -> Result<Spectrum> {
    if window.bound() > s.n() {
        return Err(Error::InvalidParams(format!(
            "projection level {} exceeds n = {}",
            window.bound(),
            s.n()
        )));
    }
    apply_multiplier(s, &LevelMultiplier::projection(window))
}
