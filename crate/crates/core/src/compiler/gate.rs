use serde::{Deserialize, Serialize};

use crate::error::{CebitError, Result};
use crate::linalg::{Unitary2, UNITARY_TOL};
use crate::scenarios::PauliBasis;
use crate::state::CebitRegister;

/// Gate-level operation on cebit indices (0 = polarization, k >= 1 = position).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Gate {
    H { target: usize },
    X { target: usize },
    Z { target: usize },
    S { target: usize },
    Phase { target: usize, phase: f64 },
    U2 { target: usize, matrix: Unitary2 },
    Cnot { control: usize, target: usize },
    Toffoli { controls: [usize; 2], target: usize },
    /// Measurement marker; contributes no optics.
    Expect { basis: PauliBasis },
}

impl Gate {
    pub fn name(&self) -> &'static str {
        match self {
            Gate::H { .. } => "H",
            Gate::X { .. } => "X",
            Gate::Z { .. } => "Z",
            Gate::S { .. } => "S",
            Gate::Phase { .. } => "PHASE",
            Gate::U2 { .. } => "U2",
            Gate::Cnot { .. } => "CNOT",
            Gate::Toffoli { .. } => "TOFFOLI",
            Gate::Expect { .. } => "EXPECT",
        }
    }

    /// Cebit operands, controls first.
    pub fn operands(&self) -> Vec<usize> {
        match self {
            Gate::H { target }
            | Gate::X { target }
            | Gate::Z { target }
            | Gate::S { target }
            | Gate::Phase { target, .. }
            | Gate::U2 { target, .. } => vec![*target],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::Toffoli { controls, target } => vec![controls[0], controls[1], *target],
            Gate::Expect { .. } => vec![],
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let ops = self.operands();
        for (i, &op) in ops.iter().enumerate() {
            if op >= n {
                return Err(CebitError::CebitOutOfRange { index: op, n });
            }
            if ops[..i].contains(&op) {
                return Err(CebitError::InvalidInput(format!(
                    "{} operands must be distinct (cebit {op} repeated)",
                    self.name()
                )));
            }
        }
        match self {
            Gate::Expect { basis } if basis.len() != n => Err(CebitError::DimensionMismatch {
                expected: n,
                found: basis.len(),
            }),
            Gate::U2 { matrix, .. } => matrix.check_unitary(UNITARY_TOL),
            Gate::Phase { phase, .. } if !phase.is_finite() => {
                Err(CebitError::InvalidInput("non-finite phase".into()))
            }
            _ => Ok(()),
        }
    }

    /// Single-cebit unitary of the gate, if it is one.
    pub fn single_cebit_matrix(&self) -> Option<(usize, Unitary2)> {
        let s = Unitary2::phase(std::f64::consts::FRAC_PI_2);
        match *self {
            Gate::H { target } => Some((target, Unitary2::hadamard())),
            Gate::X { target } => Some((target, Unitary2::pauli_x())),
            Gate::Z { target } => Some((target, Unitary2::pauli_z())),
            Gate::S { target } => Some((target, s)),
            Gate::Phase { target, phase } => Some((target, Unitary2::phase(phase))),
            Gate::U2 { target, matrix } => Some((target, matrix)),
            _ => None,
        }
    }

    /// Apply the gate's abstract action directly to the amplitudes.
    pub fn apply_abstract(&self, reg: &mut CebitRegister) -> Result<()> {
        self.validate(reg.n_cebits())?;
        if let Some((target, u)) = self.single_cebit_matrix() {
            return reg.apply_on_cebit(target, &u);
        }
        let (mask, target) = match *self {
            Gate::Cnot { control, target } => (1usize << control, target),
            Gate::Toffoli { controls, target } => {
                ((1usize << controls[0]) | (1usize << controls[1]), target)
            }
            _ => return Ok(()),
        };
        let amps = reg.amplitudes_mut();
        let bit = 1usize << target;
        for idx in 0..amps.len() {
            if idx & mask == mask && idx & bit == 0 {
                amps.swap(idx, idx | bit);
            }
        }
        Ok(())
    }
}

/// Ordered gates on a fixed number of cebits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateCircuit {
    n_cebits: usize,
    gates: Vec<Gate>,
}

impl GateCircuit {
    pub fn new(n_cebits: usize) -> Result<Self> {
        crate::optics::Netlist::new(n_cebits)?;
        Ok(GateCircuit {
            n_cebits,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(n_cebits: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut circuit = GateCircuit::new(n_cebits)?;
        for g in gates {
            circuit.push(g)?;
        }
        Ok(circuit)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n_cebits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn n_cebits(&self) -> usize {
        self.n_cebits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn apply_abstract(&self, reg: &mut CebitRegister) -> Result<()> {
        for g in &self.gates {
            g.apply_abstract(reg)?;
        }
        Ok(())
    }
}
