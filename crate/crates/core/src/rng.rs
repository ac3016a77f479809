//! Seeded randomness.
//!
//! Every random draw in the crate comes from ChaCha20 (`rand_chacha`) seeded
//! with `ChaCha20Rng::seed_from_u64(seed)` and then switched to stream
//! `set_stream(index)`, where `index` is the trial or restart number. Each
//! trial therefore owns an independent stream fixed by `(seed, index)` alone,
//! which keeps results independent of thread scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::cube::{CubeFunction, Spectrum, C64};
use crate::spectral::Window;

pub type HarnessRng = ChaCha20Rng;

pub fn stream_rng(seed: u64, stream: u64) -> HarnessRng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Real function with independent standard Gaussian values.
pub fn gaussian_function(n: usize, rng: &mut HarnessRng) -> CubeFunction {
    let values = (0..1usize << n)
        .map(|_| C64::new(StandardNormal.sample(rng), 0.0))
        .collect();
    CubeFunction::new(n, values).expect("finite samples")
}

/// Complex function with independent standard Gaussian real and imaginary parts.
pub fn gaussian_complex_function(n: usize, rng: &mut HarnessRng) -> CubeFunction {
    let values = (0..1usize << n)
        .map(|_| C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect();
    CubeFunction::new(n, values).expect("finite samples")
}

/// Real Gaussian coefficients on the levels inside `window`, scaled to `‖f‖₂ = 1`.
///
/// Masks are visited in increasing order and only in-window masks consume
/// draws. Returns the zero function if the window is empty.
pub fn gaussian_window_coeffs(n: usize, window: Window, rng: &mut HarnessRng) -> Vec<f64> {
    let inside = |mask: usize| {
        let level = mask.count_ones() as usize;
        match window {
            Window::Low(d) => level <= d,
            Window::Tail(d) => level >= d,
        }
    };
    let mut coeffs: Vec<f64> = (0..1usize << n)
        .map(|mask| if inside(mask) { StandardNormal.sample(rng) } else { 0.0 })
        .collect();
    let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm > 0.0 {
        coeffs.iter_mut().for_each(|c| *c /= norm);
    }
    coeffs
}

/// Function with [`gaussian_window_coeffs`] as its Walsh coefficients.
pub fn gaussian_in_window(n: usize, window: Window, rng: &mut HarnessRng) -> CubeFunction {
    let coeffs = gaussian_window_coeffs(n, window, rng)
        .into_iter()
        .map(|c| C64::new(c, 0.0))
        .collect();
    Spectrum::new(n, coeffs).expect("finite samples").to_function()
}
