//! Three-cebit repetition code against single bit flips, and its
//! Hadamard-conjugated variant against single phase flips.
//!
//! Encoding is one PBS moving the horizontal part of the input beam into
//! beam 3, giving c₀|000) + c₁|111). Decoding runs the two
//! polarization-controlled CNOTs (PBS pairs) and the Toffoli (HWP in beam 3).
//! The restored polarization leaves through a single beam that identifies
//! the flipped cebit:
//!
//! | flipped cebit | exit beam |
//! |---------------|-----------|
//! | none          | 0         |
//! | middle        | 1         |
//! | MSC           | 2         |
//! | polarization  | 3         |

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CebitError, Result};
use crate::linalg::{jones_fidelity, C64, ZERO};
use crate::optics::{Component, Netlist};
use crate::state::CebitRegister;

/// Relative intensity above which a beam counts as bright.
pub const BRIGHT_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlipTarget {
    None,
    Pol,
    Mid,
    Msc,
}

impl FlipTarget {
    pub const ALL: [FlipTarget; 4] = [FlipTarget::None, FlipTarget::Pol, FlipTarget::Mid, FlipTarget::Msc];

    pub fn cebit(self) -> Option<usize> {
        match self {
            FlipTarget::None => None,
            FlipTarget::Pol => Some(0),
            FlipTarget::Mid => Some(1),
            FlipTarget::Msc => Some(2),
        }
    }

    /// Beam carrying the restored polarization after decoding.
    pub fn exit_beam(self) -> usize {
        match self {
            FlipTarget::None => 0,
            FlipTarget::Mid => 1,
            FlipTarget::Msc => 2,
            FlipTarget::Pol => 3,
        }
    }

    pub fn from_exit_beam(beam: usize) -> Option<FlipTarget> {
        FlipTarget::ALL.into_iter().find(|t| t.exit_beam() == beam)
    }
}

impl fmt::Display for FlipTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FlipTarget::None => "none",
            FlipTarget::Pol => "pol",
            FlipTarget::Mid => "mid",
            FlipTarget::Msc => "msc",
        })
    }
}

impl FromStr for FlipTarget {
    type Err = CebitError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(FlipTarget::None),
            "pol" => Ok(FlipTarget::Pol),
            "mid" => Ok(FlipTarget::Mid),
            "msc" => Ok(FlipTarget::Msc),
            other => Err(CebitError::InvalidInput(format!(
                "unknown error target {other:?} (expected none|pol|mid|msc)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyndromeOutcome {
    pub exit_beam: usize,
    pub recovered: [C64; 2],
    /// Error identified from the exit beam.
    pub error_applied: FlipTarget,
}

fn check_three(reg: &CebitRegister) -> Result<()> {
    if reg.n_cebits() != 3 {
        return Err(CebitError::DimensionMismatch {
            expected: 3,
            found: reg.n_cebits(),
        });
    }
    Ok(())
}

/// c₀|000) + c₁|111)
pub fn encode_threefold(c0: C64, c1: C64) -> CebitRegister {
    let mut amps = vec![ZERO; 8];
    amps[0] = c0;
    amps[7] = c1;
    CebitRegister::from_amplitudes(amps).expect("eight amplitudes")
}

/// The single encoding PBS, acting on the input in beam 0.
pub fn encoder_netlist() -> Netlist {
    Netlist::from_components(3, vec![Component::pbs(0, 3).expect("valid PBS")])
        .expect("beams in range")
}

/// X on the named cebit, realized with wave plates or beam swaps.
pub fn flip_components(target: FlipTarget) -> Vec<Component> {
    let c = match target {
        FlipTarget::None => return vec![],
        FlipTarget::Pol => return vec![Component::hwp(FRAC_PI_4, vec![0, 1, 2, 3]).expect("HWP")],
        FlipTarget::Mid => [(0, 1), (2, 3)],
        FlipTarget::Msc => [(0, 2), (1, 3)],
    };
    c.iter()
        .map(|&(a, b)| Component::swap(a, b).expect("SWAP"))
        .collect()
}

/// Z on the named cebit: HWP(0) for polarization, a π delay otherwise.
pub fn phase_flip_components(target: FlipTarget) -> Vec<Component> {
    match target {
        FlipTarget::None => vec![],
        FlipTarget::Pol => vec![Component::hwp(0.0, vec![0, 1, 2, 3]).expect("HWP")],
        FlipTarget::Mid => vec![Component::delay(PI, vec![1, 3]).expect("DELAY")],
        FlipTarget::Msc => vec![Component::delay(PI, vec![2, 3]).expect("DELAY")],
    }
}

/// H on all three cebits.
pub fn hadamard_layer() -> Vec<Component> {
    vec![
        Component::hwp(FRAC_PI_8, vec![0, 1, 2, 3]).expect("HWP"),
        Component::bs(0.5, 0.0, 0, 1).expect("BS"),
        Component::bs(0.5, 0.0, 2, 3).expect("BS"),
        Component::bs(0.5, 0.0, 0, 2).expect("BS"),
        Component::bs(0.5, 0.0, 1, 3).expect("BS"),
    ]
}

/// CNOT pol→mid, CNOT pol→MSC, Toffoli (mid, MSC)→pol.
pub fn correction_netlist() -> Netlist {
    let comps = vec![
        Component::pbs(0, 1).expect("PBS"),
        Component::pbs(2, 3).expect("PBS"),
        Component::pbs(0, 2).expect("PBS"),
        Component::pbs(1, 3).expect("PBS"),
        Component::hwp(FRAC_PI_4, vec![3]).expect("HWP"),
    ];
    Netlist::from_components(3, comps).expect("beams in range")
}

pub fn apply_flip(reg: &mut CebitRegister, target: FlipTarget) -> Result<()> {
    check_three(reg)?;
    for c in flip_components(target) {
        c.apply(reg)?;
    }
    Ok(())
}

pub fn apply_phase_flip(reg: &mut CebitRegister, target: FlipTarget) -> Result<()> {
    check_three(reg)?;
    for c in phase_flip_components(target) {
        c.apply(reg)?;
    }
    Ok(())
}

pub fn apply_hadamard_layer(reg: &mut CebitRegister) -> Result<()> {
    check_three(reg)?;
    for c in hadamard_layer() {
        c.apply(reg)?;
    }
    Ok(())
}

/// Decode a (possibly flipped) code word and locate the bright exit beam.
pub fn correct_flips(reg: &CebitRegister) -> Result<SyndromeOutcome> {
    check_three(reg)?;
    let mut out = reg.clone();
    correction_netlist().run(&mut out)?;
    let total = out.norm_sqr();
    if total == 0.0 {
        return Err(CebitError::OutsideCodeSpace("register carries no light".into()));
    }
    let bright: Vec<usize> = (0..4)
        .filter(|&b| {
            let [v, h] = out.jones(b).expect("four beams");
            (v.norm_sqr() + h.norm_sqr()) / total > BRIGHT_THRESHOLD
        })
        .collect();
    let &[exit_beam] = bright.as_slice() else {
        return Err(CebitError::OutsideCodeSpace(format!(
            "{} beams are bright after decoding ({bright:?})",
            bright.len()
        )));
    };
    Ok(SyndromeOutcome {
        exit_beam,
        recovered: out.jones(exit_beam)?,
        error_applied: FlipTarget::from_exit_beam(exit_beam).expect("beam < 4"),
    })
}

/// Phase-flip code: H on every cebit around the error region, then decode.
///
/// `reg` is a bit-flip code word; a σz error is applied to `target`.
pub fn phase_error_network(reg: &CebitRegister, target: FlipTarget) -> Result<SyndromeOutcome> {
    check_three(reg)?;
    let mut work = reg.clone();
    apply_hadamard_layer(&mut work)?;
    apply_phase_flip(&mut work, target)?;
    apply_hadamard_layer(&mut work)?;
    correct_flips(&work)
}

/// Record of one encode / error / decode round trip.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorCorrectionReport {
    pub error: FlipTarget,
    pub phase_variant: bool,
    pub exit_beam: usize,
    pub recovered: [C64; 2],
    pub fidelity: f64,
}

/// Encode (c₀, c₁) optically, inject `error`, decode, and compare.
pub fn error_correction_round(
    c0: C64,
    c1: C64,
    error: FlipTarget,
    phase_variant: bool,
) -> Result<ErrorCorrectionReport> {
    let mut amps = vec![ZERO; 8];
    amps[0] = c0;
    amps[1] = c1;
    let mut reg = CebitRegister::from_amplitudes(amps)?;
    encoder_netlist().run(&mut reg)?;
    let outcome = if phase_variant {
        phase_error_network(&reg, error)?
    } else {
        apply_flip(&mut reg, error)?;
        correct_flips(&reg)?
    };
    Ok(ErrorCorrectionReport {
        error,
        phase_variant,
        exit_beam: outcome.exit_beam,
        recovered: outcome.recovered,
        fidelity: jones_fidelity([c0, c1], outcome.recovered),
    })
}
