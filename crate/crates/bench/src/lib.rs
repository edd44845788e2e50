//! Deterministic inputs shared by the benchmarks.

use cebit_core::linalg::{Matrix, C64};
use cebit_core::CebitRegister;

/// Normalized register with smoothly varying, non-trivial amplitudes.
pub fn dense_register(n: usize) -> CebitRegister {
    let dim = 1usize << n;
    let norm = (dim as f64).sqrt();
    let amps = (0..dim)
        .map(|k| C64::from_polar(1.0 / norm, 0.37 * k as f64))
        .collect();
    CebitRegister::from_amplitudes(amps).expect("power-of-two length")
}

/// N x N discrete Fourier transform.
pub fn dft(n: usize) -> Matrix {
    let scale = 1.0 / (n as f64).sqrt();
    Matrix::from_shape_fn((n, n), |(j, k)| {
        C64::from_polar(scale, 2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64)
    })
}

pub const GHZ_SOURCE: &str = "cebits 3;\nH pos1;\nCNOT pos1 pol;\nCNOT pol pos0;\nexpect x y y;\n";
