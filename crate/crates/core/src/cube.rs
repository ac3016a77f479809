//! Functions on the Hamming cube `{-1,1}^n` and their Walsh spectra.
//!
//! A point `δ` is stored by its index `i < 2^n`: bit `j` of `i` is 0 when
//! `δ_{j+1} = +1` and 1 when `δ_{j+1} = -1`. The all-ones point is index 0.
//! A subset `S ⊆ [n]` is stored as the bitmask with bit `j` set iff `j+1 ∈ S`,
//! so `w_S(δ(i)) = (-1)^{popcount(i & mask(S))}`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Largest supported dimension.
pub const MAX_DIM: usize = 30;

/// Default threshold below which a Walsh coefficient counts as zero.
pub const DEFAULT_DEGREE_TOL: f64 = 1e-10;

/// Below this length the transform runs on the calling thread.
const PAR_MIN_LEN: usize = 1 << 14;
/// Half-block length from which the butterfly pairs of a single block are split.
const PAR_INNER_MIN: usize = 1 << 12;

const ZERO: C64 = C64::new(0.0, 0.0);

fn check_dim(n: usize) -> Result<usize> {
    if n > MAX_DIM {
        return Err(Error::Capacity { n, max: MAX_DIM });
    }
    Ok(1usize << n)
}

fn check_values(n: usize, values: &[C64]) -> Result<()> {
    let expected = check_dim(n)?;
    if values.len() != expected {
        return Err(Error::Length {
            n,
            expected,
            got: values.len(),
        });
    }
    if let Some(index) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    Ok(())
}

/// Sign pattern `δ(i)` of a point index, as `±1` entries for coordinates `1..=n`.
pub fn point_from_index(index: usize, n: usize) -> Vec<i8> {
    (0..n)
        .map(|j| if index >> j & 1 == 0 { 1 } else { -1 })
        .collect()
}

/// Inverse of [`point_from_index`]. Any entry that is not `+1` counts as `-1`.
pub fn index_from_point(point: &[i8]) -> usize {
    point
        .iter()
        .enumerate()
        .filter(|(_, &s)| s != 1)
        .fold(0, |acc, (j, _)| acc | 1 << j)
}

/// `w_S(δ(index))` as `±1.0`.
#[inline]
pub fn walsh_sign(mask: usize, index: usize) -> f64 {
    if (mask & index).count_ones() & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Mask of the subset `{1, …, n}`.
#[inline]
pub fn full_mask(n: usize) -> usize {
    (1usize << n) - 1
}

/// Unnormalized in-place Walsh–Hadamard butterfly.
///
/// `data.len()` must be a power of two. Each output entry is produced by the
/// same sequence of floating point operations no matter how the passes are
/// split across threads, so results are bit-identical for any pool size.
pub fn fwht_in_place(data: &mut [C64]) {
    let len = data.len();
    assert!(len.is_power_of_two(), "transform length must be a power of two");
    let mut h = 1;
    while h < len {
        if len >= PAR_MIN_LEN {
            data.par_chunks_mut(2 * h).for_each(|block| butterfly_block(block, h));
        } else {
            data.chunks_mut(2 * h).for_each(|block| butterfly_block(block, h));
        }
        h *= 2;
    }
}

#[inline]
fn butterfly_block(block: &mut [C64], h: usize) {
    let (lo, hi) = block.split_at_mut(h);
    if h >= PAR_INNER_MIN {
        lo.par_iter_mut().zip(hi.par_iter_mut()).for_each(|(a, b)| {
            let (x, y) = (*a, *b);
            *a = x + y;
            *b = x - y;
        });
    } else {
        for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x, y) = (*a, *b);
            *a = x + y;
            *b = x - y;
        }
    }
}

/// `(2^{-n} Σ |v|^p)^{1/p}`, or the max modulus for `p = ∞`.
pub(crate) fn lp_norm_of(values: &[C64], p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::Domain(format!("L^p norm needs p >= 1, got {p}")));
    }
    let max = values.iter().map(|v| v.norm()).fold(0.0_f64, f64::max);
    if p.is_infinite() || max == 0.0 {
        return Ok(max);
    }
    let count = values.len() as f64;
    if p == 2.0 {
        let sum: f64 = values.iter().map(|v| v.norm_sqr()).sum();
        return Ok((sum / count).sqrt());
    }
    // scale by the max modulus so large exponents neither overflow nor underflow
    let sum: f64 = values.iter().map(|v| (v.norm() / max).powf(p)).sum();
    Ok(max * (sum / count).powf(1.0 / p))
}

/// Dense complex-valued function on `{-1,1}^n`, stored by point index.
#[derive(Debug, Clone, PartialEq)]
pub struct CubeFunction {
    n: usize,
    values: Vec<C64>,
}

impl CubeFunction {
    pub fn new(n: usize, values: Vec<C64>) -> Result<Self> {
        check_values(n, &values)?;
        Ok(Self { n, values })
    }

    pub fn from_real(n: usize, values: &[f64]) -> Result<Self> {
        Self::new(n, values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Builds a function by evaluating `f` at every point index.
    pub fn from_index_fn(n: usize, f: impl Fn(usize) -> C64 + Sync + Send) -> Result<Self> {
        let len = check_dim(n)?;
        Self::new(n, (0..len).into_par_iter().map(f).collect())
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::constant(n, ZERO)
    }

    pub fn constant(n: usize, value: C64) -> Result<Self> {
        let len = check_dim(n)?;
        Self::new(n, vec![value; len])
    }

    /// The Walsh function `w_S` for `S` given as a bitmask.
    pub fn character(n: usize, mask: usize) -> Result<Self> {
        let len = check_dim(n)?;
        if mask >= len {
            return Err(Error::InvalidParams(format!(
                "mask {mask:#b} has bits beyond n = {n}"
            )));
        }
        Self::from_index_fn(n, |i| C64::new(walsh_sign(mask, i), 0.0))
    }

    /// Indicator of the single point with the given index.
    pub fn point_indicator(n: usize, index: usize) -> Result<Self> {
        let len = check_dim(n)?;
        if index >= len {
            return Err(Error::InvalidParams(format!("point index {index} >= 2^{n}")));
        }
        let mut values = vec![ZERO; len];
        values[index] = C64::new(1.0, 0.0);
        Self::new(n, values)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<C64> {
        self.values
    }

    #[inline]
    pub fn at(&self, index: usize) -> C64 {
        self.values[index]
    }

    /// True when every imaginary part is at most `tol` in modulus.
    pub fn is_real(&self, tol: f64) -> bool {
        self.values.iter().all(|v| v.im.abs() <= tol)
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn scaled(&self, alpha: C64) -> Self {
        Self {
            n: self.n,
            values: self.values.iter().map(|&v| alpha * v).collect(),
        }
    }

    /// `alpha·self + beta·other`.
    pub fn combine(&self, alpha: C64, other: &Self, beta: C64) -> Result<Self> {
        same_dim(self.n, other.n)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| alpha * a + beta * b)
            .collect();
        Self::new(self.n, values)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_abs_diff(&self.values, &other.values)
    }

    pub fn spectrum(&self) -> Spectrum {
        fwht_forward(self)
    }

    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        lp_norm(self, p)
    }
}

/// Dense Walsh coefficients: `coeffs[mask] = f̂(S)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    n: usize,
    coeffs: Vec<C64>,
}

impl Spectrum {
    pub fn new(n: usize, coeffs: Vec<C64>) -> Result<Self> {
        check_values(n, &coeffs)?;
        Ok(Self { n, coeffs })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        let len = check_dim(n)?;
        Ok(Self {
            n,
            coeffs: vec![ZERO; len],
        })
    }

    /// Spectrum of `w_S`: one unit coefficient at `mask`.
    pub fn unit(n: usize, mask: usize) -> Result<Self> {
        let mut s = Self::zeros(n)?;
        if mask >= s.coeffs.len() {
            return Err(Error::InvalidParams(format!(
                "mask {mask:#b} has bits beyond n = {n}"
            )));
        }
        s.coeffs[mask] = C64::new(1.0, 0.0);
        Ok(s)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C64> {
        self.coeffs
    }

    #[inline]
    pub fn coeff(&self, mask: usize) -> C64 {
        self.coeffs[mask]
    }

    pub fn to_function(&self) -> CubeFunction {
        fwht_inverse(self)
    }

    pub fn degree(&self, tol: f64) -> usize {
        degree(self, tol)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_abs_diff(&self.coeffs, &other.coeffs)
    }

    /// `Σ_S |f̂(S)|²`, which equals `‖f‖₂²` by Parseval.
    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let mut weights = vec![0.0; self.n + 1];
        for (mask, c) in self.coeffs.iter().enumerate() {
            weights[mask.count_ones() as usize] += c.norm_sqr();
        }
        DegreeProfile { weights }
    }
}

/// Spectral mass per level: `weights[d] = Σ_{|S|=d} |f̂(S)|²`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeProfile {
    pub weights: Vec<f64>,
}

impl DegreeProfile {
    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// True when no level above `d` carries more than `tol` of mass.
    pub fn is_low_degree(&self, d: usize, tol: f64) -> bool {
        self.weights.iter().skip(d + 1).all(|&w| w <= tol)
    }

    /// True when no level below `d` carries more than `tol` of mass.
    pub fn is_tail(&self, d: usize, tol: f64) -> bool {
        self.weights.iter().take(d).all(|&w| w <= tol)
    }
}

fn same_dim(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DimensionMismatch { left, right });
    }
    Ok(())
}

fn max_abs_diff(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `coeffs[mask] = 2^{-n} Σ_δ f(δ) w_S(δ)`.
pub fn fwht_forward(f: &CubeFunction) -> Spectrum {
    let mut coeffs = f.values.clone();
    fwht_in_place(&mut coeffs);
    // power of two, so the scaling is exact
    let scale = (-(f.n as i32) as f64).exp2();
    coeffs.iter_mut().for_each(|c| *c *= scale);
    Spectrum { n: f.n, coeffs }
}

/// `f = Σ_S f̂(S) w_S`.
pub fn fwht_inverse(s: &Spectrum) -> CubeFunction {
    let mut values = s.coeffs.clone();
    fwht_in_place(&mut values);
    CubeFunction { n: s.n, values }
}

pub fn lp_norm(f: &CubeFunction, p: f64) -> Result<f64> {
    lp_norm_of(&f.values, p)
}

/// Hermitian inner product `2^{-n} Σ f(δ) conj(g(δ))`.
pub fn inner_product(f: &CubeFunction, g: &CubeFunction) -> Result<C64> {
    same_dim(f.n, g.n)?;
    let sum: C64 = f.values.iter().zip(&g.values).map(|(a, b)| a * b.conj()).sum();
    Ok(sum / f.values.len() as f64)
}

/// Bilinear pairing `2^{-n} Σ f(δ) g(δ)` (no conjugation).
pub fn bilinear_pairing(f: &CubeFunction, g: &CubeFunction) -> Result<C64> {
    same_dim(f.n, g.n)?;
    let sum: C64 = f.values.iter().zip(&g.values).map(|(a, b)| a * b).sum();
    Ok(sum / f.values.len() as f64)
}

/// Largest `|S|` with `|f̂(S)| > tol`; 0 for the zero function.
pub fn degree(s: &Spectrum, tol: f64) -> usize {
    s.coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > tol)
        .map(|(mask, _)| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Change of cube applied by [`from_boolean01`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BooleanRemap {
    /// Map each value `x ∈ {0,1}` to `2x − 1`.
    pub values: bool,
    /// Read the input as indexed by `{0,1}` bits (`bit j = x_{j+1}`) and
    /// evaluate it at `x_j = (δ_j + 1)/2`.
    pub coordinates: bool,
}

impl BooleanRemap {
    pub const FULL: Self = Self {
        values: true,
        coordinates: true,
    };
}

const BOOLEAN_TOL: f64 = 1e-12;

/// Converts a `{0,1}`-valued function to the `±1` cube,
/// `f(δ) = 2 f̃((δ₁+1)/2, …, (δ_n+1)/2) − 1` when both remaps are selected.
pub fn from_boolean01(f01: &CubeFunction, remap: BooleanRemap) -> Result<CubeFunction> {
    for (index, v) in f01.values.iter().enumerate() {
        let is_bit = v.im.abs() <= BOOLEAN_TOL
            && (v.re.abs() <= BOOLEAN_TOL || (v.re - 1.0).abs() <= BOOLEAN_TOL);
        if !is_bit {
            return Err(Error::NonBoolean {
                index,
                value: v.to_string(),
                expected: "{0,1}",
            });
        }
    }
    let mask = full_mask(f01.n);
    CubeFunction::from_index_fn(f01.n, |i| {
        // δ_j = +1 (bit 0) corresponds to x_j = 1
        let source = if remap.coordinates { !i & mask } else { i };
        let bit = f01.values[source].re.round();
        let value = if remap.values { 2.0 * bit - 1.0 } else { bit };
        C64::new(value, 0.0)
    })
}

/// Which representation a serialized file holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DataKind {
    Point,
    Walsh,
}

/// On-disk form of a function or spectrum: `{"im", "kind", "n", "re"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubeFile {
    pub im: Vec<f64>,
    pub kind: DataKind,
    pub n: usize,
    pub re: Vec<f64>,
}

/// A deserialized file, validated against the dimension it declares.
#[derive(Debug, Clone, PartialEq)]
pub enum CubeData {
    Point(CubeFunction),
    Walsh(Spectrum),
}

impl CubeData {
    pub fn n(&self) -> usize {
        match self {
            CubeData::Point(f) => f.n(),
            CubeData::Walsh(s) => s.n(),
        }
    }

    pub fn kind(&self) -> DataKind {
        match self {
            CubeData::Point(_) => DataKind::Point,
            CubeData::Walsh(_) => DataKind::Walsh,
        }
    }

    pub fn to_function(&self) -> CubeFunction {
        match self {
            CubeData::Point(f) => f.clone(),
            CubeData::Walsh(s) => s.to_function(),
        }
    }

    pub fn to_spectrum(&self) -> Spectrum {
        match self {
            CubeData::Point(f) => f.spectrum(),
            CubeData::Walsh(s) => s.clone(),
        }
    }

    pub fn to_file(&self) -> CubeFile {
        let (kind, n, data) = match self {
            CubeData::Point(f) => (DataKind::Point, f.n, &f.values),
            CubeData::Walsh(s) => (DataKind::Walsh, s.n, &s.coeffs),
        };
        CubeFile {
            im: data.iter().map(|c| c.im).collect(),
            kind,
            n,
            re: data.iter().map(|c| c.re).collect(),
        }
    }

    pub fn from_file(file: CubeFile) -> Result<Self> {
        if file.re.len() != file.im.len() {
            return Err(Error::Malformed(format!(
                "re has {} entries but im has {}",
                file.re.len(),
                file.im.len()
            )));
        }
        let data: Vec<C64> = file
            .re
            .iter()
            .zip(&file.im)
            .map(|(&re, &im)| C64::new(re, im))
            .collect();
        Ok(match file.kind {
            DataKind::Point => CubeData::Point(CubeFunction::new(file.n, data)?),
            DataKind::Walsh => CubeData::Walsh(Spectrum::new(file.n, data)?),
        })
    }

    /// Key-sorted JSON text with a trailing newline.
    pub fn to_json(&self) -> String {
        crate::to_sorted_json(&self.to_file())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CubeFile =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_file(file)
    }
}

impl From<CubeFunction> for CubeData {
    fn from(f: CubeFunction) -> Self {
        CubeData::Point(f)
    }
}

impl From<Spectrum> for CubeData {
    fn from(s: Spectrum) -> Self {
        CubeData::Walsh(s)
    }
}
