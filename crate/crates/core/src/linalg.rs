//! Small dense complex linear algebra used throughout the crate.

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CebitError, Result};

pub type C64 = Complex64;

/// Dense complex matrix, row-major.
pub type Matrix = Array2<C64>;

/// Tolerance used to reject non-unitary inputs.
pub const UNITARY_TOL: f64 = 1e-9;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// A 2x2 complex matrix acting on one cebit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Unitary2(pub [[C64; 2]; 2]);

impl Unitary2 {
    pub const fn new(m00: C64, m01: C64, m10: C64, m11: C64) -> Self {
        Unitary2([[m00, m01], [m10, m11]])
    }

    pub fn real(m00: f64, m01: f64, m10: f64, m11: f64) -> Self {
        Unitary2::new(c(m00, 0.0), c(m01, 0.0), c(m10, 0.0), c(m11, 0.0))
    }

    pub fn identity() -> Self {
        Unitary2::real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn hadamard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Unitary2::real(h, h, h, -h)
    }

    pub fn pauli_x() -> Self {
        Unitary2::real(0.0, 1.0, 1.0, 0.0)
    }

    pub fn pauli_y() -> Self {
        Unitary2::new(ZERO, -I, I, ZERO)
    }

    pub fn pauli_z() -> Self {
        Unitary2::real(1.0, 0.0, 0.0, -1.0)
    }

    /// diag(1, e^{i phase})
    pub fn phase(phase: f64) -> Self {
        Unitary2::new(ONE, ZERO, ZERO, C64::from_polar(1.0, phase))
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[row][col]
    }

    pub fn mul(&self, other: &Unitary2) -> Unitary2 {
        let a = &self.0;
        let b = &other.0;
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (col, entry) in row.iter_mut().enumerate() {
                *entry = a[r][0] * b[0][col] + a[r][1] * b[1][col];
            }
        }
        Unitary2(out)
    }

    pub fn dagger(&self) -> Unitary2 {
        let a = &self.0;
        Unitary2::new(a[0][0].conj(), a[1][0].conj(), a[0][1].conj(), a[1][1].conj())
    }

    pub fn scale(&self, s: C64) -> Unitary2 {
        let a = &self.0;
        Unitary2::new(s * a[0][0], s * a[0][1], s * a[1][0], s * a[1][1])
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        let a = &self.0;
        [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
    }

    pub fn det(&self) -> C64 {
        let a = &self.0;
        a[0][0] * a[1][1] - a[0][1] * a[1][0]
    }

    /// Largest entry of |U†U - I|.
    pub fn unitarity_deviation(&self) -> f64 {
        let p = self.dagger().mul(self);
        let mut dev: f64 = 0.0;
        for r in 0..2 {
            for col in 0..2 {
                let target = if r == col { ONE } else { ZERO };
                dev = dev.max((p.0[r][col] - target).norm());
            }
        }
        dev
    }

    pub fn check_unitary(&self, tol: f64) -> Result<()> {
        let deviation = self.unitarity_deviation();
        if deviation > tol || deviation.is_nan() {
            Err(CebitError::NotUnitary { deviation })
        } else {
            Ok(())
        }
    }

    pub fn to_matrix(&self) -> Matrix {
        let a = &self.0;
        Array2::from_shape_vec((2, 2), vec![a[0][0], a[0][1], a[1][0], a[1][1]])
            .expect("2x2 shape")
    }

    pub fn from_matrix(m: &Matrix) -> Result<Unitary2> {
        if m.dim() != (2, 2) {
            return Err(CebitError::DimensionMismatch {
                expected: 2,
                found: m.nrows().max(m.ncols()),
            });
        }
        Ok(Unitary2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]))
    }

    /// Max entrywise distance to `other` after removing the relative global phase.
    pub fn distance_up_to_phase(&self, other: &Unitary2) -> f64 {
        distance_up_to_phase(&self.to_matrix(), &other.to_matrix())
    }
}

pub fn identity(dim: usize) -> Matrix {
    Array2::from_shape_fn((dim, dim), |(r, col)| if r == col { ONE } else { ZERO })
}

pub fn dagger(m: &Matrix) -> Matrix {
    m.t().mapv(|z| z.conj())
}

/// Largest entry of |M†M - I|; infinite for non-square input.
pub fn unitarity_deviation(m: &Matrix) -> f64 {
    if m.nrows() != m.ncols() {
        return f64::INFINITY;
    }
    let p = dagger(m).dot(m);
    p.indexed_iter()
        .map(|((r, col), z)| {
            let target = if r == col { ONE } else { ZERO };
            (z - target).norm()
        })
        .fold(0.0, f64::max)
}

pub fn check_unitary(m: &Matrix, tol: f64) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(CebitError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let deviation = unitarity_deviation(m);
    if deviation > tol || deviation.is_nan() {
        Err(CebitError::NotUnitary { deviation })
    } else {
        Ok(())
    }
}

/// Kronecker product with `a` as the more significant factor.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    Array2::from_shape_fn((ar * br, ac * bc), |(r, col)| {
        a[(r / br, col / bc)] * b[(r % br, col % bc)]
    })
}

/// Max entrywise |a - e^{iφ} b| with φ fixed by phase-aligning the
/// largest-magnitude entry of `b`.
pub fn distance_up_to_phase(a: &Matrix, b: &Matrix) -> f64 {
    if a.dim() != b.dim() {
        return f64::INFINITY;
    }
    let pivot = b
        .indexed_iter()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
        .map(|(idx, _)| idx);
    let phase = match pivot {
        Some(idx) if b[idx].norm() > 0.0 && a[idx].norm() > 0.0 => {
            let ratio = a[idx] / b[idx];
            ratio / ratio.norm()
        }
        _ => ONE,
    };
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - phase * y).norm())
        .fold(0.0, f64::max)
}

/// Max entrywise |a - b|.
pub fn distance(a: &Matrix, b: &Matrix) -> f64 {
    if a.dim() != b.dim() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// |<a,b>|² / (|a|²|b|²) for two Jones vectors; 0 if either vanishes.
pub fn jones_fidelity(a: [C64; 2], b: [C64; 2]) -> f64 {
    let na = a[0].norm_sqr() + a[1].norm_sqr();
    let nb = b[0].norm_sqr() + b[1].norm_sqr();
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    let overlap = a[0].conj() * b[0] + a[1].conj() * b[1];
    overlap.norm_sqr() / (na * nb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_is_unitary_and_involutive() {
        let h = Unitary2::hadamard();
        assert!(h.unitarity_deviation() < 1e-15);
        assert!(h.mul(&h).distance_up_to_phase(&Unitary2::identity()) < 1e-15);
    }

    #[test]
    fn kron_places_first_factor_most_significant() {
        let x = Unitary2::pauli_x().to_matrix();
        let id = identity(2);
        let k = kron(&x, &id);
        // X on the high bit maps index 0 -> 2.
        assert_eq!(k[(2, 0)], ONE);
        assert_eq!(k[(0, 0)], ZERO);
    }

    #[test]
    fn phase_distance_ignores_global_phase() {
        let h = Unitary2::hadamard();
        let hp = h.scale(C64::from_polar(1.0, 0.7));
        assert!(h.distance_up_to_phase(&hp) < 1e-15);
        assert!(h.distance_up_to_phase(&Unitary2::identity()) > 0.1);
    }

    #[test]
    fn non_square_is_rejected() {
        let m = Array2::from_elem((2, 3), ONE);
        assert!(matches!(
            check_unitary(&m, 1e-9),
            Err(CebitError::NotSquare { .. })
        ));
    }
}
