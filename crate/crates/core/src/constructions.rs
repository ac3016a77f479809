//! Extremal functions: Chebyshev functions of the normalized coordinate sum,
//! and the Kushilevitz family built by repeated block composition of a
//! six-variable cubic, together with sensitivity and composition machinery.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use crate::cube::{from_boolean01, BooleanRemap, CubeFunction, C64};
use crate::error::{Error, Result};
use crate::report::{Bound, Verdict, VerificationReport};
use crate::spectral::laplacian_power;

/// Largest arity that is materialized as a truth table.
pub const MAX_MATERIALIZED_VARS: usize = 24;
/// Largest arity a lazy formula can address (inputs are `u64` bit vectors).
pub const MAX_LAZY_VARS: usize = 64;

/// Chebyshev polynomial of the first kind by the three-term recurrence.
pub fn chebyshev_t(d: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if d == 0 {
        return prev;
    }
    for _ in 1..d {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `f(δ) = T_d((δ₁ + ⋯ + δ_n) / n)` for `1 ≤ d ≤ n`.
pub fn chebyshev_function(n: usize, d: usize) -> Result<CubeFunction> {
    if d == 0 || d > n {
        return Err(Error::InvalidParams(format!(
            "chebyshev function needs 1 <= d <= n, got n = {n}, d = {d}"
        )));
    }
    let nf = n as f64;
    CubeFunction::from_index_fn(n, |i| {
        let sum = nf - 2.0 * i.count_ones() as f64;
        C64::new(chebyshev_t(d, sum / nf), 0.0)
    })
}

/// The ten triples of the cubic part of `θ̃`, 1-based.
pub const KUSHILEVITZ_TRIPLES: [[usize; 3]; 10] = [
    [1, 2, 5],
    [1, 2, 6],
    [1, 3, 4],
    [1, 3, 6],
    [1, 4, 5],
    [2, 3, 4],
    [2, 3, 5],
    [2, 4, 6],
    [3, 5, 6],
    [4, 5, 6],
];

/// Truth table of a `{0,1}^n → {0,1}` function; bit `j` of the index is `x_{j+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boolean01Function {
    n: usize,
    values: Vec<bool>,
}

impl Boolean01Function {
    pub fn new(n: usize, values: Vec<bool>) -> Result<Self> {
        if n > MAX_MATERIALIZED_VARS {
            return Err(Error::Capacity {
                n,
                max: MAX_MATERIALIZED_VARS,
            });
        }
        if values.len() != 1 << n {
            return Err(Error::Length {
                n,
                expected: 1 << n,
                got: values.len(),
            });
        }
        Ok(Self { n, values })
    }

    /// From integer values, which must all be 0 or 1.
    pub fn from_bits(n: usize, bits: &[u8]) -> Result<Self> {
        if let Some(index) = bits.iter().position(|&b| b > 1) {
            return Err(Error::NonBoolean {
                index,
                value: bits[index].to_string(),
                expected: "{0,1}",
            });
        }
        Self::new(n, bits.iter().map(|&b| b == 1).collect())
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        if n > MAX_MATERIALIZED_VARS {
            return Err(Error::Capacity {
                n,
                max: MAX_MATERIALIZED_VARS,
            });
        }
        Self::new(n, (0..1usize << n).map(f).collect())
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        Self::from_fn(n, |_| value)
    }

    /// `x_j` for `1 ≤ j ≤ n`.
    pub fn dictator(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::Coordinate { j, n });
        }
        Self::from_fn(n, |x| x >> (j - 1) & 1 == 1)
    }

    pub fn parity(n: usize) -> Result<Self> {
        Self::from_fn(n, |x| x.count_ones() & 1 == 1)
    }

    pub fn and(n: usize) -> Result<Self> {
        Self::from_fn(n, |x| x == (1 << n) - 1)
    }

    /// Majority of `n` bits; `n` must be odd.
    pub fn majority(n: usize) -> Result<Self> {
        if n % 2 == 0 {
            return Err(Error::InvalidParams(format!("majority needs odd n, got {n}")));
        }
        Self::from_fn(n, |x| 2 * x.count_ones() as usize > n)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn eval(&self, x: usize) -> bool {
        self.values[x]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// The same table as a `{0,1}`-valued [`CubeFunction`] indexed by `x`.
    pub fn to_cube01(&self) -> CubeFunction {
        let values = self
            .values
            .iter()
            .map(|&b| C64::new(if b { 1.0 } else { 0.0 }, 0.0))
            .collect();
        CubeFunction::new(self.n, values).expect("table sizes match")
    }

    /// `f(δ) = 2 f̃((δ₁+1)/2, …, (δ_n+1)/2) − 1` on the `±1` cube.
    pub fn to_pm1(&self) -> CubeFunction {
        from_boolean01(&self.to_cube01(), BooleanRemap::FULL).expect("values are bits")
    }
}

/// `θ̃(x) = Σ x_i − Σ_{i<j} x_i x_j + Σ_{T ∈ K} Π_{i∈T} x_i`, evaluated on all 64 inputs.
pub fn theta_tilde() -> Boolean01Function {
    let values = (0..64usize)
        .map(|x| {
            let bit = |i: usize| (x >> (i - 1) & 1) as i32;
            let linear: i32 = (1..=6).map(bit).sum();
            let quadratic: i32 = (1..=6)
                .flat_map(|i| (i + 1..=6).map(move |j| (i, j)))
                .map(|(i, j)| bit(i) * bit(j))
                .sum();
            let cubic: i32 = KUSHILEVITZ_TRIPLES
                .iter()
                .map(|t| bit(t[0]) * bit(t[1]) * bit(t[2]))
                .sum();
            let v = linear - quadratic + cubic;
            assert!(v == 0 || v == 1, "theta_tilde({x:06b}) = {v} is not a bit");
            v == 1
        })
        .collect();
    Boolean01Function { n: 6, values }
}

/// Flat input of a composition: block `i` (0-based) occupies bits `i·n .. (i+1)·n`,
/// i.e. variable `(i, j)` (1-based) sits at flat position `(i−1)·n + j`.
#[inline]
fn block_input(x: u64, block: usize, inner_arity: usize) -> u64 {
    let mask = if inner_arity == 64 { u64::MAX } else { (1u64 << inner_arity) - 1 };
    (x >> (block * inner_arity)) & mask
}

/// `(f̃ ⋄ g̃)(x₁₁, …, x_mn) = f̃(g̃(x₁₁, …, x₁ₙ), …, g̃(x_m1, …, x_mn))`, materialized.
pub fn compose(outer: &Boolean01Function, inner: &Boolean01Function) -> Result<Boolean01Function> {
    let arity = outer.n * inner.n;
    if arity > MAX_MATERIALIZED_VARS {
        return Err(Error::Capacity {
            n: arity,
            max: MAX_MATERIALIZED_VARS,
        });
    }
    let values = (0..1usize << arity)
        .into_par_iter()
        .map(|x| {
            let y = (0..outer.n).fold(0usize, |acc, i| {
                let block = block_input(x as u64, i, inner.n) as usize;
                acc | (inner.eval(block) as usize) << i
            });
            outer.eval(y)
        })
        .collect();
    Boolean01Function::new(arity, values)
}

/// Materialization strategy for [`kushilevitz`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    Materialized,
    Lazy,
}

/// A Boolean function given either by a truth table or by a composition tree
/// that answers point queries without materializing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BooleanFormula {
    Table(Boolean01Function),
    Composed {
        outer: Box<BooleanFormula>,
        inner: Box<BooleanFormula>,
    },
}

impl BooleanFormula {
    /// Lazy composition; fails if the arity exceeds [`MAX_LAZY_VARS`].
    pub fn compose_lazy(outer: BooleanFormula, inner: BooleanFormula) -> Result<Self> {
        let arity = outer.arity() * inner.arity();
        if arity > MAX_LAZY_VARS {
            return Err(Error::Capacity {
                n: arity,
                max: MAX_LAZY_VARS,
            });
        }
        Ok(BooleanFormula::Composed {
            outer: Box::new(outer),
            inner: Box::new(inner),
        })
    }

    pub fn arity(&self) -> usize {
        match self {
            BooleanFormula::Table(t) => t.n,
            BooleanFormula::Composed { outer, inner } => outer.arity() * inner.arity(),
        }
    }

    /// Value at the input whose bit `j` is `x_{j+1}`.
    pub fn eval(&self, x: u64) -> bool {
        match self {
            BooleanFormula::Table(t) => t.eval(x as usize),
            BooleanFormula::Composed { outer, inner } => {
                let m = inner.arity();
                let y = (0..outer.arity()).fold(0u64, |acc, i| {
                    acc | (inner.eval(block_input(x, i, m)) as u64) << i
                });
                outer.eval(y)
            }
        }
    }

    pub fn as_table(&self) -> Option<&Boolean01Function> {
        match self {
            BooleanFormula::Table(t) => Some(t),
            BooleanFormula::Composed { .. } => None,
        }
    }

    pub fn materialize(&self) -> Result<Boolean01Function> {
        match self {
            BooleanFormula::Table(t) => Ok(t.clone()),
            BooleanFormula::Composed { outer, inner } => {
                compose(&outer.materialize()?, &inner.materialize()?)
            }
        }
    }

    /// An input `x` with `f(x) = value` at which every coordinate is sensitive.
    ///
    /// Tables are searched exhaustively (lowest index first). For a composition,
    /// take such an input `y` for the outer function and feed block `i` an
    /// inner input with value `y_i` and full inner sensitivity. The result is a
    /// candidate only; callers confirm it with [`sensitivity_at`].
    pub fn full_sensitivity_input(&self, value: bool) -> Option<u64> {
        match self {
            BooleanFormula::Table(t) => (0..1usize << t.n)
                .find(|&x| t.eval(x) == value && sensitivity_at_table(t, x) == t.n as u32)
                .map(|x| x as u64),
            BooleanFormula::Composed { outer, inner } => {
                let y = outer.full_sensitivity_input(value)?;
                let zero = inner.full_sensitivity_input(false);
                let one = inner.full_sensitivity_input(true);
                let m = inner.arity();
                (0..outer.arity()).try_fold(0u64, |acc, i| {
                    let block = if y >> i & 1 == 1 { one? } else { zero? };
                    Some(acc | block << (i * m))
                })
            }
        }
    }
}

/// `θ̃ ⋄ ⋯ ⋄ θ̃` (`k` factors) on `6^k` variables.
///
/// Materialized mode needs `6^k ≤ 24` (only `k = 1`); lazy mode needs `6^k ≤ 64`.
pub fn kushilevitz(k: u32, mode: EvalMode) -> Result<BooleanFormula> {
    if k == 0 {
        return Err(Error::InvalidParams("kushilevitz needs k >= 1".into()));
    }
    let arity = 6usize.checked_pow(k).unwrap_or(usize::MAX);
    let max = match mode {
        EvalMode::Materialized => MAX_MATERIALIZED_VARS,
        EvalMode::Lazy => MAX_LAZY_VARS,
    };
    if arity > max {
        return Err(Error::Capacity { n: arity, max });
    }
    let base = BooleanFormula::Table(theta_tilde());
    let mut f = base.clone();
    for _ in 1..k {
        f = BooleanFormula::compose_lazy(f, base.clone())?;
    }
    match mode {
        EvalMode::Materialized => Ok(BooleanFormula::Table(f.materialize()?)),
        EvalMode::Lazy => Ok(f),
    }
}

fn sensitivity_at_table(t: &Boolean01Function, x: usize) -> u32 {
    let v = t.eval(x);
    (0..t.n).filter(|&j| t.eval(x ^ 1 << j) != v).count() as u32
}

/// Number of coordinates whose flip changes `f(x)`.
pub fn sensitivity_at(f: &BooleanFormula, x: u64) -> u32 {
    let v = f.eval(x);
    (0..f.arity()).filter(|&j| f.eval(x ^ 1 << j) != v).count() as u32
}

/// `max_x s(f, x)` with the lowest maximizing input.
pub fn sensitivity(f: &Boolean01Function) -> (u32, usize) {
    (0..1usize << f.n)
        .into_par_iter()
        .map(|x| (sensitivity_at_table(f, x), x))
        .reduce(
            || (0, usize::MAX),
            |a, b| match a.0.cmp(&b.0) {
                std::cmp::Ordering::Greater => a,
                std::cmp::Ordering::Less => b,
                std::cmp::Ordering::Equal => if a.1 <= b.1 { a } else { b },
            },
        )
}

/// Sensitivity of a `±1`-valued function by sign-flip queries on the cube.
pub fn sensitivity_pm1(f: &CubeFunction) -> Result<u32> {
    let v = f.values();
    if let Some(index) = v.iter().position(|z| z.im != 0.0 || z.re.abs() != 1.0) {
        return Err(Error::NonBoolean {
            index,
            value: v[index].to_string(),
            expected: "{-1,1}",
        });
    }
    let n = f.n();
    Ok((0..v.len())
        .map(|i| (0..n).filter(|&j| v[i ^ 1 << j] != v[i]).count() as u32)
        .max()
        .unwrap_or(0))
}

/// Multilinear polynomial with integer coefficients over `{0,1}` variables,
/// stored as monomial mask → coefficient. Since `x² = x`, products OR masks.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultilinearPoly {
    terms: BTreeMap<u64, i64>,
}

impl MultilinearPoly {
    pub fn constant(c: i64) -> Self {
        let mut p = Self::default();
        p.add_term(0, c);
        p
    }

    /// The monomial `x_{j+1}` (0-based `j`).
    pub fn variable(j: usize) -> Self {
        let mut p = Self::default();
        p.add_term(1 << j, 1);
        p
    }

    pub fn add_term(&mut self, mask: u64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(mask).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&mask);
        }
    }

    pub fn terms(&self) -> &BTreeMap<u64, i64> {
        &self.terms
    }

    /// Unique multilinear representation of a truth table (Möbius inversion).
    pub fn from_table(t: &Boolean01Function) -> Self {
        let mut coeffs: Vec<i64> = t.values.iter().map(|&b| b as i64).collect();
        for j in 0..t.n {
            for x in 0..coeffs.len() {
                if x >> j & 1 == 1 {
                    coeffs[x] -= coeffs[x ^ 1 << j];
                }
            }
        }
        let mut p = Self::default();
        for (mask, c) in coeffs.into_iter().enumerate() {
            p.add_term(mask as u64, c);
        }
        p
    }

    /// `θ̃` written from its defining sum.
    pub fn theta_tilde() -> Self {
        let mut p = Self::default();
        for i in 0..6 {
            p.add_term(1 << i, 1);
            for j in i + 1..6 {
                p.add_term(1 << i | 1 << j, -1);
            }
        }
        for t in KUSHILEVITZ_TRIPLES {
            p.add_term(t.iter().fold(0, |m, &i| m | 1 << (i - 1)), 1);
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> i64 {
        self.terms
            .iter()
            .filter(|(&m, _)| x & m == m)
            .map(|(_, &c)| c)
            .sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (&a, &ca) in &self.terms {
            for (&b, &cb) in &other.terms {
                out.add_term(a | b, ca * cb);
            }
        }
        out
    }

    fn shifted(&self, by: usize) -> Self {
        Self {
            terms: self.terms.iter().map(|(&m, &c)| (m << by, c)).collect(),
        }
    }

    /// Substitutes a copy of `inner` (on its own block of `inner_arity`
    /// variables) for each variable of `self`.
    pub fn compose(&self, outer_arity: usize, inner: &Self, inner_arity: usize) -> Result<Self> {
        if outer_arity * inner_arity > MAX_LAZY_VARS {
            return Err(Error::Capacity {
                n: outer_arity * inner_arity,
                max: MAX_LAZY_VARS,
            });
        }
        let blocks: Vec<Self> = (0..outer_arity)
            .map(|i| inner.shifted(i * inner_arity))
            .collect();
        let mut out = Self::default();
        for (&mask, &c) in &self.terms {
            let mut product = Self::constant(c);
            for (i, block) in blocks.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    product = product.mul(block);
                }
            }
            for (&m, &pc) in &product.terms {
                out.add_term(m, pc);
            }
        }
        Ok(out)
    }
}

/// Sparse polynomial of `θ̃ ⋄ ⋯ ⋄ θ̃` (`k` factors), by repeated substitution.
pub fn kushilevitz_poly(k: u32) -> Result<MultilinearPoly> {
    if k == 0 {
        return Err(Error::InvalidParams("kushilevitz needs k >= 1".into()));
    }
    let base = MultilinearPoly::theta_tilde();
    let mut p = base.clone();
    let mut arity = 6;
    for _ in 1..k {
        p = p.compose(arity, &base, 6)?;
        arity *= 6;
    }
    Ok(p)
}

/// Compares `‖Δf‖_∞` of the `±1` image (spectral route) with the exhaustive
/// sensitivity of `f01`; the two must agree exactly.
pub fn linf_laplacian_equals_sensitivity_check(f01: &Boolean01Function) -> Result<VerificationReport> {
    let start = Instant::now();
    if f01.n > 20 {
        return Err(Error::Capacity { n: f01.n, max: 20 });
    }
    let f = f01.to_pm1();
    let lap_sup = laplacian_power(&f, 1).lp_norm(f64::INFINITY)?;
    let (s, argmax) = sensitivity(f01);
    let mut report = VerificationReport::new("linf-laplacian-sensitivity").param("n", f01.n);
    report.observed = lap_sup;
    report.bound = Bound::Value(s as f64);
    report.verdict = Verdict::from_ok((lap_sup - s as f64).abs() <= 1e-9);
    report.detail("sensitivity", s);
    report.detail("sensitivity_argmax", argmax);
    Ok(report.timed(start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::DEFAULT_DEGREE_TOL;
    use crate::rng::stream_rng;
    use crate::spectral::laplacian_by_partials;
    use rand::Rng;

    #[test]
    fn chebyshev_recurrence() {
        assert_eq!(chebyshev_t(2, 1.0), 1.0);
        assert_eq!(chebyshev_t(2, 0.5), -0.5);
        for d in 0..=20 {
            assert_eq!(chebyshev_t(d, 1.0), 1.0);
        }
        for d in 0..=10 {
            for i in 0..=100 {
                let angle = std::f64::consts::PI * i as f64 / 100.0;
                let expected = (d as f64 * angle).cos();
                assert!((chebyshev_t(d, angle.cos()) - expected).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn chebyshev_function_properties() {
        let f = chebyshev_function(4, 2).unwrap();
        assert_eq!(f.spectrum().degree(DEFAULT_DEGREE_TOL), 2);
        for n in 1..=12 {
            for d in 1..=n {
                let f = chebyshev_function(n, d).unwrap();
                assert_eq!(f.at(0).re, 1.0);
                assert_eq!(f.lp_norm(f64::INFINITY).unwrap(), 1.0);
                assert!(f.spectrum().degree(DEFAULT_DEGREE_TOL) <= d);
            }
        }
        assert!(chebyshev_function(3, 4).is_err());
        assert!(chebyshev_function(3, 0).is_err());
    }

    #[test]
    fn chebyshev_laplacian_at_all_ones() {
        let f = chebyshev_function(8, 2).unwrap();
        let lap = laplacian_power(&f, 1);
        assert!((lap.at(0).re - 3.5).abs() < 1e-12);

        let linear = chebyshev_function(7, 1).unwrap();
        let lap = laplacian_power(&linear, 1);
        assert!(lap.max_abs_diff(&linear) < 1e-12);
        let ratio = lap.lp_norm(f64::INFINITY).unwrap() / linear.lp_norm(f64::INFINITY).unwrap();
        assert!((ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn theta_tilde_values() {
        let t = theta_tilde();
        assert!(!t.eval(0));
        assert!(t.eval(0b000001));
        assert_eq!(t.values().len(), 64);
        for triple in KUSHILEVITZ_TRIPLES {
            assert!(triple.windows(2).all(|w| w[0] < w[1]));
            assert!(triple.iter().all(|&i| (1..=6).contains(&i)));
        }
        let mut sorted = KUSHILEVITZ_TRIPLES.to_vec();
        sorted.dedup();
        assert_eq!(sorted.len(), 10);
    }

    #[test]
    fn compose_identities() {
        let g = Boolean01Function::majority(3).unwrap();
        let id = Boolean01Function::dictator(1, 1).unwrap();
        assert_eq!(compose(&id, &g).unwrap(), g);
        let and2 = Boolean01Function::and(2).unwrap();
        assert_eq!(compose(&and2, &and2).unwrap(), Boolean01Function::and(4).unwrap());
        let big = Boolean01Function::parity(5).unwrap();
        assert!(matches!(compose(&big, &big), Err(Error::Capacity { .. })));
    }

    #[test]
    fn compose_degree_submultiplicative() {
        let funcs = [
            Boolean01Function::and(2).unwrap(),
            Boolean01Function::parity(2).unwrap(),
            Boolean01Function::majority(3).unwrap(),
            Boolean01Function::dictator(2, 2).unwrap(),
            Boolean01Function::parity(4).unwrap(),
            Boolean01Function::from_bits(2, &[0, 1, 1, 1]).unwrap(),
        ];
        let deg = |f: &Boolean01Function| f.to_pm1().spectrum().degree(DEFAULT_DEGREE_TOL);
        for f in &funcs {
            for g in &funcs {
                if f.n() * g.n() > 16 {
                    continue;
                }
                let h = compose(f, g).unwrap();
                assert!(deg(&h) <= deg(f) * deg(g));
                assert_eq!(
                    MultilinearPoly::from_table(&h).degree(),
                    deg(&h),
                    "multilinear and Fourier degree agree"
                );
            }
        }
    }

    #[test]
    fn lazy_matches_materialized() {
        let f = Boolean01Function::majority(3).unwrap();
        let g = Boolean01Function::parity(2).unwrap();
        let lazy = BooleanFormula::compose_lazy(
            BooleanFormula::Table(f.clone()),
            BooleanFormula::Table(g.clone()),
        )
        .unwrap();
        let table = compose(&f, &g).unwrap();
        for x in 0..64 {
            assert_eq!(lazy.eval(x as u64), table.eval(x));
        }
    }

    #[test]
    fn theta_squared_point_queries() {
        let lazy = kushilevitz(2, EvalMode::Lazy).unwrap();
        assert_eq!(lazy.arity(), 36);
        assert!(!lazy.eval(0));
        let t = theta_tilde();
        let inner_all_ones = t.eval(63) as usize;
        let expected = t.eval(if inner_all_ones == 1 { 63 } else { 0 });
        assert_eq!(lazy.eval((1u64 << 36) - 1), expected);
        assert!(matches!(
            kushilevitz(2, EvalMode::Materialized),
            Err(Error::Capacity { .. })
        ));
        assert!(kushilevitz(3, EvalMode::Lazy).is_err());
        assert!(kushilevitz(0, EvalMode::Lazy).is_err());
    }

    #[test]
    fn kushilevitz_one() {
        let f = kushilevitz(1, EvalMode::Materialized).unwrap();
        let table = f.as_table().unwrap();
        let pm = table.to_pm1();
        assert!(pm.values().iter().all(|v| v.im == 0.0 && v.re.abs() == 1.0));
        let s = pm.spectrum();
        assert_eq!(s.degree(DEFAULT_DEGREE_TOL), 3);
        assert!(s.degree_profile().is_low_degree(3, 1e-20));
        assert_eq!(laplacian_power(&pm, 1).lp_norm(f64::INFINITY).unwrap(), 6.0);
        assert_eq!(sensitivity(table).0, 6);
        assert_eq!(sensitivity_pm1(&pm).unwrap(), 6);
        let exponent = 6f64.ln() / 3f64.ln();
        assert!((3f64.powf(exponent) - 6.0).abs() < 1e-12);
    }

    #[test]
    fn sensitivity_basics() {
        let parity = Boolean01Function::parity(5).unwrap();
        for x in 0..32 {
            assert_eq!(sensitivity_at(&BooleanFormula::Table(parity.clone()), x), 5);
        }
        assert_eq!(sensitivity(&Boolean01Function::constant(4, true).unwrap()).0, 0);
        assert_eq!(sensitivity(&theta_tilde()).0, 6);
        let maj = Boolean01Function::majority(3).unwrap();
        assert_eq!(sensitivity(&maj).0, 2);
        let bad = CubeFunction::constant(2, C64::new(0.5, 0.0)).unwrap();
        assert!(sensitivity_pm1(&bad).is_err());
        assert!(Boolean01Function::from_bits(1, &[0, 2]).is_err());
    }

    #[test]
    fn pm1_image_preserves_sensitivity() {
        let funcs = [
            theta_tilde(),
            Boolean01Function::majority(5).unwrap(),
            Boolean01Function::parity(6).unwrap(),
            Boolean01Function::and(4).unwrap(),
            compose(&Boolean01Function::majority(3).unwrap(), &Boolean01Function::parity(2).unwrap())
                .unwrap(),
        ];
        for f in &funcs {
            assert_eq!(sensitivity(f).0, sensitivity_pm1(&f.to_pm1()).unwrap());
        }
    }

    #[test]
    fn laplacian_sensitivity_reports() {
        for (f, expected) in [
            (theta_tilde(), 6.0),
            (Boolean01Function::parity(5).unwrap(), 5.0),
            (Boolean01Function::majority(3).unwrap(), 2.0),
        ] {
            let r = linf_laplacian_equals_sensitivity_check(&f).unwrap();
            assert_eq!(r.verdict, Verdict::Pass);
            assert_eq!(r.bound, Bound::Value(expected));
            assert!((r.observed - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn laplacian_of_pm1_is_pointwise_sensitivity() {
        let t = theta_tilde();
        let f = t.to_pm1();
        let lap = laplacian_by_partials(&f);
        let mask = 63usize;
        for i in 0..64 {
            // point index i on the ±1 cube is input !i on the {0,1} cube
            let s = sensitivity_at(&BooleanFormula::Table(t.clone()), (!i & mask) as u64);
            assert_eq!(lap.at(i).re, f.at(i).re * s as f64);
        }
    }

    #[test]
    fn polynomial_matches_table() {
        let p = MultilinearPoly::theta_tilde();
        let t = theta_tilde();
        assert_eq!(MultilinearPoly::from_table(&t), p);
        for x in 0..64 {
            assert_eq!(p.eval(x), t.eval(x as usize) as i64);
        }
        assert_eq!(p.degree(), 3);
    }

    #[test]
    fn composed_polynomial_agrees_with_lazy_queries() {
        let p = kushilevitz_poly(2).unwrap();
        let lazy = kushilevitz(2, EvalMode::Lazy).unwrap();
        assert_eq!(p.degree(), 9);
        let mut rng = stream_rng(12, 0);
        for _ in 0..300 {
            let x: u64 = rng.random::<u64>() & ((1 << 36) - 1);
            assert_eq!(p.eval(x), lazy.eval(x) as i64);
        }
        assert_eq!(kushilevitz_poly(1).unwrap(), MultilinearPoly::theta_tilde());
    }

    #[test]
    fn recursive_extremal_input() {
        let lazy = kushilevitz(2, EvalMode::Lazy).unwrap();
        for value in [false, true] {
            let x = lazy.full_sensitivity_input(value).unwrap();
            assert_eq!(lazy.eval(x), value);
            assert_eq!(sensitivity_at(&lazy, x), 36);
        }
    }
}
