use std::f64::consts::PI;

use super::Amplitude;
use crate::error::{Error, Result};

/// `e^{2πi k / n}`, exact when the phase is a multiple of a quarter turn.
pub fn root_of_unity(n: usize, k: i64) -> Amplitude {
    let n_i = n as i64;
    let k = k.rem_euclid(n_i);
    if k == 0 {
        return Amplitude::new(1.0, 0.0);
    }
    if 2 * k == n_i {
        return Amplitude::new(-1.0, 0.0);
    }
    if 4 * k == n_i {
        return Amplitude::new(0.0, 1.0);
    }
    if 4 * k == 3 * n_i {
        return Amplitude::new(0.0, -1.0);
    }
    Amplitude::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)
}

/// The QFT amplitude `e^{2πi·j·l/N} / √N` from domain element `j` to target `l`.
pub fn qft_amplitude(n: usize, j: i64, l: i64) -> Amplitude {
    root_of_unity(n, j * l) / (n as f64).sqrt()
}

/// The N-way QFT as an `N×N` array; entry `[l-1][j-1]` maps `d_j` to `r_l`.
pub fn qft_coefficients(n: usize) -> Result<Vec<Vec<Amplitude>>> {
    if n < 2 {
        return Err(Error::usage(format!("QFT needs N >= 2, got {n}")));
    }
    Ok((1..=n as i64)
        .map(|l| (1..=n as i64).map(|j| qft_amplitude(n, j, l)).collect())
        .collect())
}
