//! Transfer of a position cebit onto the polarization cebit.
//!
//! Network, for beams 0..3 with beam = 2·(cebit 2) + (cebit 1):
//!
//! 1. Light enters beam 1, vertical. HWP(3π/8) then a PBS on beams {0, 1}
//!    produce the EPR pair (|01) − |10))/√2 of cebit 1 and polarization.
//! 2. A Mach-Zehnder on cebit 2 (BS, arm delay φ₁, BS, output delay φ₂)
//!    splits the pair into two copies with relative amplitudes (c₀, c₁).
//! 3. Two balanced splitters mix beams {0, 3} and {1, 2}, sending each Bell
//!    component of the two position cebits into its own beam.
//! 4. Per-beam polarization corrections restore (c₀, c₁) in every beam.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use serde::{Deserialize, Serialize};

use super::named::NamedState;
use crate::error::{CebitError, Result};
use crate::linalg::{jones_fidelity, C64, ZERO};
use crate::optics::{Component, Netlist};
use crate::state::{BasisLabel, CebitRegister};

/// Bell component carried by each beam after the Bell transform.
pub const BELL_BEAM_LABELS: [NamedState; 4] = [
    NamedState::BellPhiPlus,
    NamedState::BellPsiPlus,
    NamedState::BellPsiMinus,
    NamedState::BellPhiMinus,
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TeleportOutcome {
    pub input: [C64; 2],
    /// Jones vector (vertical, horizontal) of each output beam.
    pub beams: [[C64; 2]; 4],
    /// Identity-correction beam rescaled to the input power and phase.
    pub recovered: [C64; 2],
    /// Worst per-beam overlap with the input, up to per-beam phase.
    pub fidelity: f64,
}

/// Balanced splitters on beams {0, 3} and {1, 2}.
pub fn bell_transform_components() -> Vec<Component> {
    vec![
        Component::bs(0.5, 0.0, 0, 3).expect("valid BS"),
        Component::bs(0.5, 0.0, 1, 2).expect("valid BS"),
    ]
}

/// Mix the 00/11 and 01/10 position amplitudes of a three-cebit register.
pub fn bell_transform(reg: &mut CebitRegister) -> Result<()> {
    if reg.n_cebits() != 3 {
        return Err(CebitError::DimensionMismatch {
            expected: 3,
            found: reg.n_cebits(),
        });
    }
    for c in bell_transform_components() {
        c.apply(reg)?;
    }
    Ok(())
}

/// Polarization corrections per beam, following [`BELL_BEAM_LABELS`].
pub fn correction_components() -> Vec<Component> {
    vec![
        Component::rotator(FRAC_PI_2, vec![0]).expect("valid rotator"),
        Component::hwp(0.0, vec![1]).expect("valid HWP"),
        Component::hwp(FRAC_PI_4, vec![3]).expect("valid HWP"),
    ]
}

/// Components preparing the EPR pair and the Mach-Zehnder copy.
pub fn preparation_components(phi_arm: f64, phi_out: f64) -> Result<Vec<Component>> {
    Ok(vec![
        Component::hwp(3.0 * std::f64::consts::FRAC_PI_8, vec![1])?,
        Component::pbs(0, 1)?,
        Component::bs(0.5, 0.0, 0, 2)?,
        Component::bs(0.5, 0.0, 1, 3)?,
        Component::delay(phi_arm, vec![2, 3])?,
        Component::bs(0.5, 0.0, 0, 2)?,
        Component::bs(0.5, 0.0, 1, 3)?,
        Component::delay(phi_out, vec![2, 3])?,
    ])
}

/// Full teleportation network for the given Mach-Zehnder phases.
pub fn teleport_netlist(phi_arm: f64, phi_out: f64) -> Result<Netlist> {
    let mut net = Netlist::new(3)?;
    net.extend(preparation_components(phi_arm, phi_out)?)?;
    net.extend(bell_transform_components())?;
    net.extend(correction_components())?;
    Ok(net)
}

/// Cebit (c₀, c₁) produced by the Mach-Zehnder from unit input, dropping the
/// global factor e^{iφ_arm/2}.
pub fn mach_zehnder_cebit(phi_arm: f64, phi_out: f64) -> [C64; 2] {
    let (s, c) = (phi_arm / 2.0).sin_cos();
    [
        C64::new(c, 0.0),
        C64::new(0.0, -s) * C64::from_polar(1.0, phi_out),
    ]
}

/// Phases and input amplitude reproducing (c₀, c₁) exactly, global phase included.
fn phases_for(c0: C64, c1: C64) -> (f64, f64, C64) {
    let norm = c0.norm().hypot(c1.norm());
    let phi_arm = 2.0 * c1.norm().atan2(c0.norm());
    if c0.norm() > 0.0 {
        let phi_out = if c1.norm() > 0.0 {
            c1.arg() - c0.arg() + FRAC_PI_2
        } else {
            0.0
        };
        (phi_arm, phi_out, C64::from_polar(norm, c0.arg() - phi_arm / 2.0))
    } else {
        (phi_arm, 0.0, C64::from_polar(norm, c1.arg() + FRAC_PI_2 - phi_arm / 2.0))
    }
}

/// The register entering the Bell transform: (c₀|0) + c₁|1)) ⊗ EPR.
pub fn prepared_state(c0: C64, c1: C64) -> Result<CebitRegister> {
    check_nonzero(c0, c1)?;
    let (phi_arm, phi_out, amplitude) = phases_for(c0, c1);
    let mut reg = CebitRegister::new(3, &BasisLabel::new(vec![0, 1, 0])?)?;
    reg.scale(amplitude);
    for c in preparation_components(phi_arm, phi_out)? {
        c.apply(&mut reg)?;
    }
    Ok(reg)
}

fn check_nonzero(c0: C64, c1: C64) -> Result<()> {
    if c0.norm_sqr() + c1.norm_sqr() == 0.0 || !(c0.norm() + c1.norm()).is_finite() {
        return Err(CebitError::InvalidInput(
            "cebit to teleport must be finite and non-zero".into(),
        ));
    }
    Ok(())
}

fn outcome(input: [C64; 2], reg: &CebitRegister) -> TeleportOutcome {
    let mut beams = [[ZERO; 2]; 4];
    for (b, slot) in beams.iter_mut().enumerate() {
        *slot = reg.jones(b).expect("three-cebit register has four beams");
    }
    let fidelity = beams
        .iter()
        .map(|&beam| jones_fidelity(input, beam))
        .fold(1.0, f64::min);
    let reference = beams[2];
    let overlap = input[0].conj() * reference[0] + input[1].conj() * reference[1];
    let in_norm = (input[0].norm_sqr() + input[1].norm_sqr()).sqrt();
    let ref_norm = (reference[0].norm_sqr() + reference[1].norm_sqr()).sqrt();
    let recovered = if overlap.norm() > 0.0 && ref_norm > 0.0 {
        let fix = overlap.conj() / overlap.norm() * (in_norm / ref_norm);
        [reference[0] * fix, reference[1] * fix]
    } else {
        [ZERO; 2]
    };
    TeleportOutcome {
        input,
        beams,
        recovered,
        fidelity,
    }
}

/// Teleport the position cebit (c₀, c₁) into the polarization of all four beams.
pub fn teleport(c0: C64, c1: C64) -> Result<TeleportOutcome> {
    check_nonzero(c0, c1)?;
    let (phi_arm, phi_out, amplitude) = phases_for(c0, c1);
    let mut reg = CebitRegister::new(3, &BasisLabel::new(vec![0, 1, 0])?)?;
    reg.scale(amplitude);
    teleport_netlist(phi_arm, phi_out)?.run(&mut reg)?;
    Ok(outcome([c0, c1], &reg))
}

/// Teleport whatever cebit the Mach-Zehnder phases select.
pub fn teleport_with_phases(phi_arm: f64, phi_out: f64) -> Result<TeleportOutcome> {
    let mut reg = CebitRegister::new(3, &BasisLabel::new(vec![0, 1, 0])?)?;
    teleport_netlist(phi_arm, phi_out)?.run(&mut reg)?;
    Ok(outcome(mach_zehnder_cebit(phi_arm, phi_out), &reg))
}
