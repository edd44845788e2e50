//! Test-side oracles built from first principles, independent of the
//! library's own matrix helpers.
#![allow(dead_code)]

use cebit_core::linalg::{Matrix, Unitary2, C64};
use ndarray::Array2;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub fn random_complex(rng: &mut impl Rng) -> C64 {
    c(gaussian(rng), gaussian(rng))
}

/// Haar-ish random unitary from Gram-Schmidt on a complex Gaussian matrix.
pub fn random_unitary(n: usize, rng: &mut impl Rng) -> Matrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| random_complex(rng)).collect();
        for q in &cols {
            let proj: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= proj * qi;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    Array2::from_shape_fn((n, n), |(i, j)| cols[j][i])
}

pub fn random_unitary2(rng: &mut impl Rng) -> Unitary2 {
    let m = random_unitary(2, rng);
    Unitary2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)])
}

pub fn mat2(u: &Unitary2) -> Matrix {
    Array2::from_shape_fn((2, 2), |(i, j)| u.0[i][j])
}

pub fn eye(n: usize) -> Matrix {
    Array2::from_shape_fn((n, n), |(i, j)| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) })
}

/// A ⊗ B with A on the more significant index.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    Array2::from_shape_fn((ra * rb, ca * cb), |(i, j)| a[(i / rb, j / cb)] * b[(i % rb, j % cb)])
}

/// Kronecker chain over cebits n-1 .. 0, taking `factor(k)` for cebit k.
pub fn chain(n: usize, factor: impl Fn(usize) -> Matrix) -> Matrix {
    let mut m = factor(n - 1);
    for k in (0..n - 1).rev() {
        m = kron(&m, &factor(k));
    }
    m
}

pub fn embed(n: usize, target: usize, u: &Matrix) -> Matrix {
    chain(n, |k| if k == target { u.clone() } else { eye(2) })
}

pub fn projector(bit: usize) -> Matrix {
    let mut p = Array2::from_elem((2, 2), c(0.0, 0.0));
    p[(bit, bit)] = c(1.0, 0.0);
    p
}

pub fn pauli_x() -> Matrix {
    let mut m = Array2::from_elem((2, 2), c(0.0, 0.0));
    m[(0, 1)] = c(1.0, 0.0);
    m[(1, 0)] = c(1.0, 0.0);
    m
}

/// Σ over control patterns: controls all 1 get `u` on target, otherwise identity.
pub fn controlled(n: usize, controls: &[usize], target: usize, u: &Matrix) -> Matrix {
    let mut total = Array2::from_elem((1 << n, 1 << n), c(0.0, 0.0));
    for pattern in 0..1usize << controls.len() {
        let all_one = pattern == (1 << controls.len()) - 1;
        let term = chain(n, |k| {
            if let Some(pos) = controls.iter().position(|&ctl| ctl == k) {
                projector((pattern >> pos) & 1)
            } else if k == target && all_one {
                u.clone()
            } else {
                eye(2)
            }
        });
        total = total + term;
    }
    total
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    a.dot(b)
}

/// Frobenius-max distance after removing the best global phase.
pub fn phase_distance(a: &Matrix, b: &Matrix) -> f64 {
    let overlap: C64 = a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum();
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { c(1.0, 0.0) };
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x * phase - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_distance(a: &Matrix, b: &Matrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
