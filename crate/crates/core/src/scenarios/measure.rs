//! Intensity measurements and Pauli-product expectation values.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::compiler::{lower_gate, Gate, POLARIZATION};
use crate::error::{CebitError, Result};
use crate::linalg::{Unitary2, C64, I, ONE, ZERO};
use crate::optics::{Component, Netlist};
use crate::state::CebitRegister;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'i',
            Pauli::X => 'x',
            Pauli::Y => 'y',
            Pauli::Z => 'z',
        }
    }

    pub fn from_letter(ch: char) -> Option<Pauli> {
        match ch.to_ascii_lowercase() {
            'i' => Some(Pauli::I),
            'x' => Some(Pauli::X),
            'y' => Some(Pauli::Y),
            'z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn matrix(self) -> Unitary2 {
        match self {
            Pauli::I => Unitary2::identity(),
            Pauli::X => Unitary2::pauli_x(),
            Pauli::Y => Unitary2::pauli_y(),
            Pauli::Z => Unitary2::pauli_z(),
        }
    }

    /// Unitary taking the +1 / −1 eigenvectors to |0) / |1).
    pub fn basis_change(self) -> Unitary2 {
        match self {
            Pauli::I | Pauli::Z => Unitary2::identity(),
            Pauli::X => Unitary2::hadamard(),
            // H · S†
            Pauli::Y => Unitary2::hadamard().mul(&Unitary2::new(ONE, ZERO, ZERO, -I)),
        }
    }
}

/// One Pauli letter per cebit, most significant cebit first (`"xyy"` is
/// σx on cebit 2, σy on cebits 1 and 0).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliBasis(Vec<Pauli>);

impl PauliBasis {
    pub fn new(letters: Vec<Pauli>) -> Self {
        PauliBasis(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.0
    }

    /// Letter acting on `cebit` (0 = polarization).
    pub fn on_cebit(&self, cebit: usize) -> Pauli {
        self.0[self.0.len() - 1 - cebit]
    }
}

impl fmt::Display for PauliBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.letter())?;
        }
        Ok(())
    }
}

impl FromStr for PauliBasis {
    type Err = CebitError;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|ch| {
                Pauli::from_letter(ch).ok_or_else(|| {
                    CebitError::InvalidInput(format!("invalid Pauli letter {ch:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(PauliBasis)
    }
}

impl Serialize for PauliBasis {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliBasis {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Photodetector signals |c_b|², one per amplitude.
pub fn detector_intensities(reg: &CebitRegister) -> Vec<f64> {
    reg.amplitudes().iter().map(C64::norm_sqr).collect()
}

fn parity_weighted(intensities: &[f64], basis: &PauliBasis) -> f64 {
    let mask = (0..basis.len())
        .filter(|&k| basis.on_cebit(k) != Pauli::I)
        .fold(0usize, |m, k| m | (1 << k));
    intensities
        .iter()
        .enumerate()
        .map(|(b, &w)| if (b & mask).count_ones() % 2 == 0 { w } else { -w })
        .sum()
}

/// Expectation of the Pauli product `basis`, scaled by the register's norm.
///
/// Each cebit is rotated into its measurement basis, then every detector
/// contributes its intensity times ±1 per measured cebit (bit 0 ↔ +1).
pub fn pauli_expectation(reg: &CebitRegister, basis: &PauliBasis) -> Result<f64> {
    if basis.len() != reg.n_cebits() {
        return Err(CebitError::DimensionMismatch {
            expected: reg.n_cebits(),
            found: basis.len(),
        });
    }
    let mut rotated = reg.clone();
    for cebit in 0..basis.len() {
        let p = basis.on_cebit(cebit);
        if matches!(p, Pauli::X | Pauli::Y) {
            rotated.apply_on_cebit_unchecked(cebit, &p.basis_change());
        }
    }
    Ok(parity_weighted(&detector_intensities(&rotated), basis))
}

/// Expectation value from already-measured detector intensities.
pub fn expectation_from_intensities(intensities: &[f64], basis: &PauliBasis) -> f64 {
    parity_weighted(intensities, basis)
}

/// Optical elements selecting `basis` before the detectors.
///
/// Polarization: HWP(π/8) for x, QWP(π/4) for y. Position: a balanced
/// splitter for x, preceded by a −π/2 delay on the lower beams for y.
pub fn measurement_netlist(n: usize, basis: &PauliBasis) -> Result<Netlist> {
    if basis.len() != n {
        return Err(CebitError::DimensionMismatch {
            expected: n,
            found: basis.len(),
        });
    }
    let mut netlist = Netlist::new(n)?;
    let all: Vec<usize> = (0..1usize << (n - 1)).collect();
    for cebit in 0..n {
        match (basis.on_cebit(cebit), cebit) {
            (Pauli::I | Pauli::Z, _) => {}
            (Pauli::X, _) => netlist.extend(lower_gate(&Gate::H { target: cebit }, n)?)?,
            (Pauli::Y, POLARIZATION) => {
                netlist.push(Component::qwp(std::f64::consts::FRAC_PI_4, all.clone())?)?
            }
            (Pauli::Y, _) => {
                netlist.extend(lower_gate(
                    &Gate::Phase {
                        target: cebit,
                        phase: -std::f64::consts::FRAC_PI_2,
                    },
                    n,
                )?)?;
                netlist.extend(lower_gate(&Gate::H { target: cebit }, n)?)?;
            }
        }
    }
    Ok(netlist)
}
