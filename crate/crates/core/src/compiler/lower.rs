//! Lowering of gates to optical components.
//!
//! | gate                  | optics                                         |
//! |-----------------------|------------------------------------------------|
//! | H pol                 | HWP(π/8) on every beam                         |
//! | H pos k               | BS(1/2, 0) on each beam pair differing in k    |
//! | X pol / X pos k       | HWP(π/4) on every beam / SWAP on each pair     |
//! | Z, S, PHASE pol       | HWP(0), QWP(0), PHASE(φ) on every beam         |
//! | Z, S, PHASE pos k     | DELAY(π, π/2, φ) on beams with bit k set       |
//! | CNOT pos → pol        | HWP(π/4) on beams where the control is 1       |
//! | CNOT pol → pos k      | PBS on each beam pair differing in k           |
//! | TOFFOLI pos,pos → pol | HWP(π/4) on beams where both controls are 1    |
//! | U2 pol                | QWP, HWP, QWP on every beam                    |
//! | U2 pos k              | Mach-Zehnder: DELAY, BS, DELAY, BS, DELAY      |

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

use super::decompose::{decompose_su2_mz, decompose_su2_waveplates};
use super::gate::{Gate, GateCircuit};
use crate::error::{CebitError, Result};
use crate::optics::{Component, Netlist};

pub const POLARIZATION: usize = 0;

fn all_beams(n: usize) -> Vec<usize> {
    (0..1usize << (n - 1)).collect()
}

/// Beams whose position cebits listed in `cebits` are all 1.
fn beams_with(n: usize, cebits: &[usize]) -> Vec<usize> {
    let mask = cebits.iter().fold(0usize, |m, &k| m | (1 << (k - 1)));
    all_beams(n).into_iter().filter(|b| b & mask == mask).collect()
}

/// (low, high) beam pairs differing only in position cebit `k`.
fn beam_pairs(n: usize, k: usize) -> Vec<(usize, usize)> {
    let bit = 1usize << (k - 1);
    all_beams(n)
        .into_iter()
        .filter(|b| b & bit == 0)
        .map(|b| (b, b | bit))
        .collect()
}

fn pairwise(
    n: usize,
    k: usize,
    make: impl Fn(usize, usize) -> Result<Component>,
) -> Result<Vec<Component>> {
    beam_pairs(n, k).into_iter().map(|(a, b)| make(a, b)).collect()
}

/// Components realizing `gate` on an `n`-cebit register, in execution order.
pub fn lower_gate(gate: &Gate, n: usize) -> Result<Vec<Component>> {
    gate.validate(n)?;
    let every = all_beams(n);
    match *gate {
        Gate::Expect { .. } => Ok(vec![]),
        Gate::H { target: POLARIZATION } => Ok(vec![Component::hwp(FRAC_PI_8, every)?]),
        Gate::H { target } => pairwise(n, target, |a, b| Component::bs(0.5, 0.0, a, b)),
        Gate::X { target: POLARIZATION } => Ok(vec![Component::hwp(FRAC_PI_4, every)?]),
        Gate::X { target } => pairwise(n, target, Component::swap),
        Gate::Z { target: POLARIZATION } => Ok(vec![Component::hwp(0.0, every)?]),
        Gate::S { target: POLARIZATION } => Ok(vec![Component::qwp(0.0, every)?]),
        Gate::Phase {
            target: POLARIZATION,
            phase,
        } => Ok(vec![Component::phase(phase, every)?]),
        Gate::Z { target } => Ok(vec![Component::delay(PI, beams_with(n, &[target]))?]),
        Gate::S { target } => Ok(vec![Component::delay(FRAC_PI_2, beams_with(n, &[target]))?]),
        Gate::Phase { target, phase } => {
            Ok(vec![Component::delay(phase, beams_with(n, &[target]))?])
        }
        Gate::U2 {
            target: POLARIZATION,
            matrix,
        } => {
            let angles = decompose_su2_waveplates(&matrix)?;
            Ok(vec![
                Component::qwp(angles.qwp_in, every.clone())?,
                Component::hwp(angles.hwp, every.clone())?,
                Component::qwp(angles.qwp_out, every)?,
            ])
        }
        Gate::U2 { target, matrix } => {
            let phases = decompose_su2_mz(&matrix)?;
            let lower = beams_with(n, &[target]);
            let mut out = vec![Component::delay(phases.phi_in, lower.clone())?];
            out.extend(pairwise(n, target, |a, b| Component::bs(0.5, 0.0, a, b))?);
            out.push(Component::delay(phases.phi_arm, lower.clone())?);
            out.extend(pairwise(n, target, |a, b| Component::bs(0.5, 0.0, a, b))?);
            out.push(Component::delay(phases.phi_out, lower)?);
            Ok(out)
        }
        Gate::Cnot {
            control,
            target: POLARIZATION,
        } => Ok(vec![Component::hwp(FRAC_PI_4, beams_with(n, &[control]))?]),
        Gate::Cnot {
            control: POLARIZATION,
            target,
        } => pairwise(n, target, Component::pbs),
        Gate::Cnot { control, target } => Err(CebitError::Unsupported(format!(
            "CNOT between two position cebits ({control} -> {target}) has no direct optical \
             construction; route it through the polarization cebit"
        ))),
        Gate::Toffoli {
            controls,
            target: POLARIZATION,
        } => Ok(vec![Component::hwp(FRAC_PI_4, beams_with(n, &controls))?]),
        Gate::Toffoli { target, .. } => Err(CebitError::Unsupported(format!(
            "TOFFOLI must target the polarization cebit and be controlled by two position \
             cebits (target was cebit {target})"
        ))),
    }
}

/// Concatenate the lowering of every gate.
pub fn compile_circuit(circuit: &GateCircuit) -> Result<Netlist> {
    let n = circuit.n_cebits();
    let mut netlist = Netlist::new(n)?;
    for gate in circuit.gates() {
        netlist.extend(lower_gate(gate, n)?)?;
    }
    Ok(netlist)
}
