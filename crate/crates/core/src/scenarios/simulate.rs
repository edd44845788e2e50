//! Gate-by-gate optical simulation of a circuit with EXPECT markers.

use serde::{Deserialize, Serialize};

use super::measure::{detector_intensities, pauli_expectation, PauliBasis};
use crate::compiler::{lower_gate, Gate, GateCircuit};
use crate::error::Result;
use crate::state::{BasisLabel, CebitRegister};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectationRecord {
    /// Position of the EXPECT statement in the gate list.
    pub index: usize,
    pub basis: PauliBasis,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    pub state: CebitRegister,
    pub expectations: Vec<ExpectationRecord>,
}

impl SimulationResult {
    pub fn intensities(&self) -> Vec<f64> {
        detector_intensities(&self.state)
    }
}

/// Run `circuit` from |0…0), applying the compiled optics of each gate in turn.
pub fn simulate_circuit(circuit: &GateCircuit) -> Result<SimulationResult> {
    let n = circuit.n_cebits();
    let mut state = CebitRegister::new(n, &BasisLabel::zeros(n))?;
    let mut expectations = Vec::new();
    for (index, gate) in circuit.gates().iter().enumerate() {
        if let Gate::Expect { basis } = gate {
            expectations.push(ExpectationRecord {
                index,
                basis: basis.clone(),
                value: pauli_expectation(&state, basis)?,
            });
            continue;
        }
        for c in lower_gate(gate, n)? {
            c.apply(&mut state)?;
        }
    }
    Ok(SimulationResult {
        state,
        expectations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::ghz_circuit;

    #[test]
    fn ghz_with_markers() {
        let mut circuit = ghz_circuit();
        circuit.push(Gate::Expect { basis: "xxx".parse().unwrap() }).unwrap();
        circuit.push(Gate::Expect { basis: "zzi".parse().unwrap() }).unwrap();
        let out = simulate_circuit(&circuit).unwrap();
        assert_eq!(out.expectations.len(), 2);
        assert!((out.expectations[0].value - 1.0).abs() < 1e-12);
        assert!((out.expectations[1].value - 1.0).abs() < 1e-12);
        assert_eq!(out.expectations[0].index, 3);
        let w = out.intensities();
        assert!((w[0] - 0.5).abs() < 1e-12 && (w[7] - 0.5).abs() < 1e-12);
    }
}
