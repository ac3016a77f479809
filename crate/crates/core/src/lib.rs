//! Fourier analysis on the discrete cube `{-1,1}^n`: Walsh transforms, level
//! multipliers, complex interpolation, extremal constructions and numerical
//! checks of Bernstein–Markov type inequalities.

pub mod constructions;
pub mod cube;
pub mod error;
pub mod interpolation;
pub mod report;
pub mod rng;
pub mod spectral;
pub mod verify;

pub use cube::{CubeData, CubeFunction, DataKind, Spectrum, C64};
pub use error::{Error, Result};
pub use report::{Bound, Verdict, VerificationReport};
pub use spectral::{LevelMultiplier, Window};

use serde::Serialize;

/// Key-sorted JSON with a trailing newline.
pub fn to_sorted_json<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("serializable value");
    let mut s = serde_json::to_string(&value).expect("json value encodes");
    s.push('\n');
    s
}
