//! Joint x/y measurements on the three-cebit GHZ state.

use serde::{Deserialize, Serialize};

use super::measure::{detector_intensities, expectation_from_intensities, measurement_netlist, PauliBasis};
use crate::compiler::{compile_circuit, Gate, GateCircuit};
use crate::error::{CebitError, Result};
use crate::optics::Netlist;
use crate::state::{BasisLabel, CebitRegister};

/// Detectors below this intensity are reported as dark.
pub const DARK_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GhzOutcome {
    pub setting: PauliBasis,
    pub expectation: f64,
    pub intensities: Vec<f64>,
    pub dark_ports: Vec<String>,
    pub bright_ports: Vec<String>,
}

/// H on the coarse-position cebit, then CNOT 2→pol and CNOT pol→1.
pub fn ghz_circuit() -> GateCircuit {
    GateCircuit::from_gates(
        3,
        vec![
            Gate::H { target: 2 },
            Gate::Cnot {
                control: 2,
                target: 0,
            },
            Gate::Cnot {
                control: 0,
                target: 1,
            },
        ],
    )
    .expect("valid GHZ circuit")
}

/// Interferometer preparing the GHZ state from light in beam 0, vertical.
pub fn ghz_preparation_netlist() -> Netlist {
    compile_circuit(&ghz_circuit()).expect("GHZ circuit lowers")
}

/// Run preparation plus the basis-selecting optics and read the eight detectors.
pub fn ghz_experiment(setting: &PauliBasis) -> Result<GhzOutcome> {
    if setting.len() != 3 {
        return Err(CebitError::DimensionMismatch {
            expected: 3,
            found: setting.len(),
        });
    }
    let mut reg = CebitRegister::new(3, &BasisLabel::zeros(3))?;
    ghz_preparation_netlist().run(&mut reg)?;
    measurement_netlist(3, setting)?.run(&mut reg)?;
    let intensities = detector_intensities(&reg);
    let expectation = expectation_from_intensities(&intensities, setting);
    let (mut dark_ports, mut bright_ports) = (Vec::new(), Vec::new());
    for (b, &w) in intensities.iter().enumerate() {
        let label = BasisLabel::from_index(b, 3).to_string();
        if w < DARK_THRESHOLD {
            dark_ports.push(label);
        } else {
            bright_ports.push(label);
        }
    }
    Ok(GhzOutcome {
        setting: setting.clone(),
        expectation,
        intensities,
        dark_ports,
        bright_ports,
    })
}
