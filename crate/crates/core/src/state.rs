//! Classical wave amplitudes of an n-cebit register.
//!
//! Amplitude index `b` packs the cebit values with the polarization cebit in
//! bit 0 and the coarse-position cebit in bit `n-1`. The beam carrying an
//! amplitude is `b >> 1`; within a beam, even indices hold the vertical
//! component (value 0) and odd indices the horizontal component (value 1).

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{CebitError, Result};
use crate::linalg::{self, Matrix, Unitary2, C64, ONE, UNITARY_TOL, ZERO};

/// Default upper bound on the number of cebits (2^24 amplitudes).
pub const DEFAULT_MAX_CEBITS: usize = 24;

/// Hard ceiling for [`RegisterLimits::max_cebits`].
pub const ABSOLUTE_MAX_CEBITS: usize = 30;

/// Configurable register size cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterLimits {
    pub max_cebits: usize,
}

impl Default for RegisterLimits {
    fn default() -> Self {
        RegisterLimits {
            max_cebits: DEFAULT_MAX_CEBITS,
        }
    }
}

impl RegisterLimits {
    pub fn new(max_cebits: usize) -> Result<Self> {
        if max_cebits == 0 || max_cebits > ABSOLUTE_MAX_CEBITS {
            return Err(CebitError::CebitCountOutOfRange {
                n: max_cebits,
                cap: ABSOLUTE_MAX_CEBITS,
            });
        }
        Ok(RegisterLimits { max_cebits })
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.max_cebits {
            Err(CebitError::CebitCountOutOfRange {
                n,
                cap: self.max_cebits,
            })
        } else {
            Ok(())
        }
    }
}

/// Cebit values listed most significant first, e.g. `[i, j, k]` for `c_ijk`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisLabel(Vec<u8>);

impl BasisLabel {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = bits.iter().find(|&&b| b > 1) {
            return Err(CebitError::InvalidInput(format!(
                "basis label entries must be 0 or 1, found {bad}"
            )));
        }
        Ok(BasisLabel(bits))
    }

    /// All-zero label on `n` cebits.
    pub fn zeros(n: usize) -> Self {
        BasisLabel(vec![0; n])
    }

    /// Label of amplitude `index` in an `n`-cebit register.
    pub fn from_index(index: usize, n: usize) -> Self {
        BasisLabel((0..n).rev().map(|k| ((index >> k) & 1) as u8).collect())
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }
}

impl std::fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for BasisLabel {
    type Err = CebitError;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|ch| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(CebitError::InvalidInput(format!(
                    "invalid basis label character {other:?}"
                ))),
            })
            .collect::<Result<Vec<u8>>>()?;
        BasisLabel::new(bits)
    }
}

/// The 2^n complex amplitudes of an n-cebit register.
///
/// Normalization is not enforced: a classical wave can carry any power.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CebitRegister {
    n_cebits: usize,
    amplitudes: Vec<C64>,
}

impl CebitRegister {
    /// Basis thesis `|label)` with unit amplitude.
    pub fn new(n: usize, label: &BasisLabel) -> Result<Self> {
        Self::new_with_limits(n, label, RegisterLimits::default())
    }

    pub fn new_with_limits(n: usize, label: &BasisLabel, limits: RegisterLimits) -> Result<Self> {
        limits.check(n)?;
        if label.len() != n {
            return Err(CebitError::DimensionMismatch {
                expected: n,
                found: label.len(),
            });
        }
        let mut amplitudes = vec![ZERO; 1 << n];
        amplitudes[label.index()] = ONE;
        Ok(CebitRegister {
            n_cebits: n,
            amplitudes,
        })
    }

    /// Register with every amplitude zero.
    pub fn zero(n: usize) -> Result<Self> {
        RegisterLimits::default().check(n)?;
        Ok(CebitRegister {
            n_cebits: n,
            amplitudes: vec![ZERO; 1 << n],
        })
    }

    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(CebitError::InvalidInput(format!(
                "amplitude count {len} is not a power of two >= 2"
            )));
        }
        let n = len.trailing_zeros() as usize;
        RegisterLimits::default().check(n)?;
        Ok(CebitRegister {
            n_cebits: n,
            amplitudes,
        })
    }

    pub fn n_cebits(&self) -> usize {
        self.n_cebits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn n_beams(&self) -> usize {
        self.amplitudes.len() / 2
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amplitudes
    }

    pub fn amplitude(&self, label: &BasisLabel) -> Result<C64> {
        if label.len() != self.n_cebits {
            return Err(CebitError::DimensionMismatch {
                expected: self.n_cebits,
                found: label.len(),
            });
        }
        Ok(self.amplitudes[label.index()])
    }

    /// Jones vector (vertical, horizontal) of one beam.
    pub fn jones(&self, beam: usize) -> Result<[C64; 2]> {
        if beam >= self.n_beams() {
            return Err(CebitError::BeamOutOfRange {
                beam,
                beams: self.n_beams(),
            });
        }
        Ok([self.amplitudes[2 * beam], self.amplitudes[2 * beam + 1]])
    }

    /// Total intensity Σ|c|².
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn scale(&mut self, factor: C64) {
        for z in &mut self.amplitudes {
            *z *= factor;
        }
    }

    /// Hermite product Σ conj(a_k) b_k.
    pub fn inner_product(&self, other: &CebitRegister) -> Result<C64> {
        if self.n_cebits != other.n_cebits {
            return Err(CebitError::DimensionMismatch {
                expected: self.n_cebits,
                found: other.n_cebits,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Apply `u` to every amplitude pair that differs only in `cebit`.
    pub fn apply_on_cebit(&mut self, cebit: usize, u: &Unitary2) -> Result<()> {
        if cebit >= self.n_cebits {
            return Err(CebitError::CebitOutOfRange {
                index: cebit,
                n: self.n_cebits,
            });
        }
        u.check_unitary(UNITARY_TOL)?;
        self.apply_on_cebit_unchecked(cebit, u);
        Ok(())
    }

    pub(crate) fn apply_on_cebit_unchecked(&mut self, cebit: usize, u: &Unitary2) {
        let stride = 1usize << cebit;
        let [[m00, m01], [m10, m11]] = u.0;
        for block in self.amplitudes.chunks_exact_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = m00 * x + m01 * y;
                *b = m10 * x + m11 * y;
            }
        }
    }

    /// Replace the selected amplitudes by `m` times themselves.
    pub fn apply_on_indices(&mut self, indices: &[usize], m: &Matrix) -> Result<()> {
        if m.nrows() != m.ncols() {
            return Err(CebitError::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        if m.nrows() != indices.len() {
            return Err(CebitError::DimensionMismatch {
                expected: indices.len(),
                found: m.nrows(),
            });
        }
        let mut seen = HashSet::with_capacity(indices.len());
        for &idx in indices {
            if idx >= self.dim() {
                return Err(CebitError::IndexOutOfRange {
                    index: idx,
                    dim: self.dim(),
                });
            }
            if !seen.insert(idx) {
                return Err(CebitError::DuplicateIndex(idx));
            }
        }
        linalg::check_unitary(m, UNITARY_TOL)?;
        let selected: Vec<C64> = indices.iter().map(|&i| self.amplitudes[i]).collect();
        for (row, &target) in indices.iter().enumerate() {
            self.amplitudes[target] = (0..selected.len())
                .map(|col| m[(row, col)] * selected[col])
                .sum();
        }
        Ok(())
    }

    /// Kronecker product with `self`'s cebits more significant.
    pub fn tensor(&self, other: &CebitRegister) -> Result<CebitRegister> {
        let n = self.n_cebits + other.n_cebits;
        RegisterLimits::default().check(n)?;
        let mut amplitudes = Vec::with_capacity(1 << n);
        for a in &self.amplitudes {
            amplitudes.extend(other.amplitudes.iter().map(|b| a * b));
        }
        Ok(CebitRegister {
            n_cebits: n,
            amplitudes,
        })
    }

    /// Largest |a_k - b_k|.
    pub fn distance(&self, other: &CebitRegister) -> f64 {
        if self.n_cebits != other.n_cebits {
            return f64::INFINITY;
        }
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}
