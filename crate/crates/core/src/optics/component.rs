use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::jones::{self, PolarizationElement};
use crate::error::{CebitError, Result};
use crate::linalg::{Matrix, Unitary2, C64};
use crate::state::CebitRegister;

/// Kind and parameters of one optical element.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ComponentKind {
    /// Half-wave plate, fast axis at `angle` from vertical.
    Hwp { angle: f64 },
    /// Quarter-wave plate, fast axis at `angle` from vertical.
    Qwp { angle: f64 },
    /// Optical rotator.
    Rotator { angle: f64 },
    /// Polarization phase diag(1, e^{iφ}).
    Phase { phase: f64 },
    /// Path-length delay multiplying a whole beam by e^{iφ}.
    Delay { phase: f64 },
    /// Polarizing beam splitter: vertical stays, horizontal is exchanged.
    Pbs,
    /// Two-beam mixer, see [`jones::beam_splitter`].
    Bs { reflectivity: f64, phase: f64 },
    /// Exchange two beams.
    Swap,
    /// Terminal photodetector bank.
    DetectorBank,
}

impl ComponentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ComponentKind::Hwp { .. } => "HWP",
            ComponentKind::Qwp { .. } => "QWP",
            ComponentKind::Rotator { .. } => "ROTATOR",
            ComponentKind::Phase { .. } => "PHASE",
            ComponentKind::Delay { .. } => "DELAY",
            ComponentKind::Pbs => "PBS",
            ComponentKind::Bs { .. } => "BS",
            ComponentKind::Swap => "SWAP",
            ComponentKind::DetectorBank => "DETECTOR_BANK",
        }
    }

    pub fn parameters(&self) -> Vec<f64> {
        match *self {
            ComponentKind::Hwp { angle }
            | ComponentKind::Qwp { angle }
            | ComponentKind::Rotator { angle } => vec![angle],
            ComponentKind::Phase { phase } | ComponentKind::Delay { phase } => vec![phase],
            ComponentKind::Bs {
                reflectivity,
                phase,
            } => vec![reflectivity, phase],
            ComponentKind::Pbs | ComponentKind::Swap | ComponentKind::DetectorBank => vec![],
        }
    }

    /// Jones matrix for the polarization elements, `None` otherwise.
    pub fn jones(&self) -> Option<Unitary2> {
        let (element, p) = match *self {
            ComponentKind::Hwp { angle } => (PolarizationElement::HalfWavePlate, angle),
            ComponentKind::Qwp { angle } => (PolarizationElement::QuarterWavePlate, angle),
            ComponentKind::Rotator { angle } => (PolarizationElement::Rotator, angle),
            ComponentKind::Phase { phase } => (PolarizationElement::Phase, phase),
            _ => return None,
        };
        Some(jones::jones_matrix(element, p))
    }

    fn two_beam(&self) -> bool {
        matches!(
            self,
            ComponentKind::Pbs | ComponentKind::Bs { .. } | ComponentKind::Swap
        )
    }
}

/// One optical element and the beams it touches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Component {
    #[serde(flatten)]
    kind: ComponentKind,
    beams: Vec<usize>,
}

impl Component {
    pub fn new(kind: ComponentKind, beams: Vec<usize>) -> Result<Self> {
        if kind.parameters().iter().any(|p| !p.is_finite()) {
            return Err(CebitError::InvalidComponent(format!(
                "{} has a non-finite parameter",
                kind.name()
            )));
        }
        if let ComponentKind::Bs { reflectivity, .. } = kind {
            if !(0.0..=1.0).contains(&reflectivity) {
                return Err(CebitError::InvalidComponent(format!(
                    "BS reflectivity {reflectivity} outside [0, 1]"
                )));
            }
        }
        if kind.two_beam() && beams.len() != 2 {
            return Err(CebitError::InvalidComponent(format!(
                "{} needs exactly 2 beams, got {}",
                kind.name(),
                beams.len()
            )));
        }
        if beams.is_empty() {
            return Err(CebitError::InvalidComponent(format!(
                "{} touches no beams",
                kind.name()
            )));
        }
        let mut seen = HashSet::new();
        if let Some(&dup) = beams.iter().find(|&&b| !seen.insert(b)) {
            return Err(CebitError::InvalidComponent(format!(
                "{} lists beam {dup} twice",
                kind.name()
            )));
        }
        let component = Component { kind, beams };
        if let Some(u) = component.local_matrix() {
            u.check_unitary(1e-12)
                .map_err(|e| CebitError::InvalidComponent(format!("{}: {e}", kind.name())))?;
        }
        Ok(component)
    }

    pub fn hwp(angle: f64, beams: Vec<usize>) -> Result<Self> {
        Self::new(ComponentKind::Hwp { angle }, beams)
    }

    pub fn qwp(angle: f64, beams: Vec<usize>) -> Result<Self> {
        Self::new(ComponentKind::Qwp { angle }, beams)
    }

    pub fn rotator(angle: f64, beams: Vec<usize>) -> Result<Self> {
        Self::new(ComponentKind::Rotator { angle }, beams)
    }

    pub fn phase(phase: f64, beams: Vec<usize>) -> Result<Self> {
        Self::new(ComponentKind::Phase { phase }, beams)
    }

    pub fn delay(phase: f64, beams: Vec<usize>) -> Result<Self> {
        Self::new(ComponentKind::Delay { phase }, beams)
    }

    pub fn pbs(a: usize, b: usize) -> Result<Self> {
        Self::new(ComponentKind::Pbs, vec![a, b])
    }

    pub fn bs(reflectivity: f64, phase: f64, a: usize, b: usize) -> Result<Self> {
        Self::new(
            ComponentKind::Bs {
                reflectivity,
                phase,
            },
            vec![a, b],
        )
    }

    pub fn swap(a: usize, b: usize) -> Result<Self> {
        Self::new(ComponentKind::Swap, vec![a, b])
    }

    pub fn detector_bank(beams: Vec<usize>) -> Result<Self> {
        Self::new(ComponentKind::DetectorBank, beams)
    }

    pub fn kind(&self) -> &ComponentKind {
        &self.kind
    }

    pub fn beams(&self) -> &[usize] {
        &self.beams
    }

    /// The 2x2 matrix the element applies locally (per beam for polarization
    /// elements, across the beam pair for mixers). `None` for detectors.
    pub fn local_matrix(&self) -> Option<Unitary2> {
        match self.kind {
            ComponentKind::Delay { phase } => {
                let e = C64::from_polar(1.0, phase);
                Some(Unitary2::identity().scale(e))
            }
            ComponentKind::Bs {
                reflectivity,
                phase,
            } => Some(jones::beam_splitter(reflectivity, phase)),
            ComponentKind::Pbs | ComponentKind::Swap => Some(Unitary2::pauli_x()),
            ComponentKind::DetectorBank => None,
            kind => kind.jones(),
        }
    }

    pub fn max_beam(&self) -> usize {
        self.beams.iter().copied().max().unwrap_or(0)
    }

    pub(crate) fn check_beams(&self, n_beams: usize) -> Result<()> {
        match self.beams.iter().find(|&&b| b >= n_beams) {
            Some(&beam) => Err(CebitError::BeamOutOfRange {
                beam,
                beams: n_beams,
            }),
            None => Ok(()),
        }
    }

    /// Apply to a register after validating the beam indices.
    pub fn apply(&self, reg: &mut CebitRegister) -> Result<()> {
        self.check_beams(reg.n_beams())?;
        self.apply_unchecked(reg.amplitudes_mut());
        Ok(())
    }

    pub(crate) fn apply_unchecked(&self, amps: &mut [C64]) {
        match self.kind {
            ComponentKind::DetectorBank => {}
            ComponentKind::Delay { phase } => {
                let e = C64::from_polar(1.0, phase);
                for &b in &self.beams {
                    amps[2 * b] *= e;
                    amps[2 * b + 1] *= e;
                }
            }
            ComponentKind::Pbs => amps.swap(2 * self.beams[0] + 1, 2 * self.beams[1] + 1),
            ComponentKind::Swap => {
                let (a, b) = (self.beams[0], self.beams[1]);
                amps.swap(2 * a, 2 * b);
                amps.swap(2 * a + 1, 2 * b + 1);
            }
            ComponentKind::Bs {
                reflectivity,
                phase,
            } => {
                let m = jones::beam_splitter(reflectivity, phase);
                let (a, b) = (self.beams[0], self.beams[1]);
                for pol in 0..2 {
                    let [x, y] = m.apply([amps[2 * a + pol], amps[2 * b + pol]]);
                    amps[2 * a + pol] = x;
                    amps[2 * b + pol] = y;
                }
            }
            kind => {
                let m = kind.jones().expect("polarization element");
                for &b in &self.beams {
                    let [x, y] = m.apply([amps[2 * b], amps[2 * b + 1]]);
                    amps[2 * b] = x;
                    amps[2 * b + 1] = y;
                }
            }
        }
    }

    /// The full 2^n x 2^n matrix of this element.
    pub fn embedded_matrix(&self, n_cebits: usize) -> Result<Matrix> {
        let dim = 1usize << n_cebits;
        self.check_beams(dim / 2)?;
        let mut m = Matrix::zeros((dim, dim));
        let mut column = vec![C64::new(0.0, 0.0); dim];
        for j in 0..dim {
            column.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
            column[j] = C64::new(1.0, 0.0);
            self.apply_unchecked(&mut column);
            for (i, z) in column.iter().enumerate() {
                m[(i, j)] = *z;
            }
        }
        Ok(m)
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.name())?;
        for p in self.kind.parameters() {
            write!(f, " {p}")?;
        }
        for b in &self.beams {
            write!(f, " {b}")?;
        }
        Ok(())
    }
}
