//! Jones matrices of the polarization elements.
//!
//! Basis order is (vertical, horizontal); angles are measured from the
//! vertical direction.

use std::fmt;
use std::str::FromStr;

use crate::error::CebitError;
use crate::linalg::{c, Unitary2, C64, ONE, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolarizationElement {
    HalfWavePlate,
    QuarterWavePlate,
    Rotator,
    Phase,
}

impl fmt::Display for PolarizationElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolarizationElement::HalfWavePlate => "HWP",
            PolarizationElement::QuarterWavePlate => "QWP",
            PolarizationElement::Rotator => "ROTATOR",
            PolarizationElement::Phase => "PHASE",
        })
    }
}

impl FromStr for PolarizationElement {
    type Err = CebitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "HWP" => Ok(PolarizationElement::HalfWavePlate),
            "QWP" => Ok(PolarizationElement::QuarterWavePlate),
            "ROTATOR" => Ok(PolarizationElement::Rotator),
            "PHASE" => Ok(PolarizationElement::Phase),
            other => Err(CebitError::InvalidComponent(format!(
                "unknown polarization element {other:?}"
            ))),
        }
    }
}

/// Rotation by `angle`: [[cos, -sin], [sin, cos]].
pub fn rotation(angle: f64) -> Unitary2 {
    let (s, co) = angle.sin_cos();
    Unitary2::real(co, -s, s, co)
}

pub fn half_wave_plate(angle: f64) -> Unitary2 {
    let (s, co) = (2.0 * angle).sin_cos();
    Unitary2::real(co, s, s, -co)
}

/// R(θ)·diag(1, i)·R(−θ); no extra global phase.
pub fn quarter_wave_plate(angle: f64) -> Unitary2 {
    let r = rotation(angle);
    let retarder = Unitary2::new(ONE, ZERO, ZERO, c(0.0, 1.0));
    r.mul(&retarder).mul(&rotation(-angle))
}

pub fn jones_matrix(element: PolarizationElement, parameter: f64) -> Unitary2 {
    match element {
        PolarizationElement::HalfWavePlate => half_wave_plate(parameter),
        PolarizationElement::QuarterWavePlate => quarter_wave_plate(parameter),
        PolarizationElement::Rotator => rotation(parameter),
        PolarizationElement::Phase => Unitary2::phase(parameter),
    }
}

/// Two-beam mixing matrix acting on (first beam, second beam).
///
/// `BS(1/2, 0)` is the real Hadamard mixer and `BS(1, 0)` a plain swap.
pub fn beam_splitter(reflectivity: f64, phase: f64) -> Unitary2 {
    let t = (1.0 - reflectivity).max(0.0).sqrt();
    let s = reflectivity.max(0.0).sqrt();
    let e = C64::from_polar(1.0, phase);
    Unitary2::new(c(t, 0.0), e * s, c(s, 0.0), -e * t)
}
