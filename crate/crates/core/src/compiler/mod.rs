//! Gate-level IR, lowering to optical netlists, unitary synthesis and
//! resource accounting.

mod decompose;
mod gate;
mod lower;
mod resources;

pub use decompose::{
    decompose_multiport, decompose_su2_mz, decompose_su2_waveplates, multiport_matrix, mz_error,
    waveplate_error, MachZehnderPhases, MultiportMesh, WaveplateAngles, MULTIPORT_MAX_MODES,
};
pub use gate::{Gate, GateCircuit};
pub use lower::{compile_circuit, lower_gate, POLARIZATION};
pub use resources::{max_cebits, resource_report, ResourceReport, REPORT_MAX_CEBITS};
