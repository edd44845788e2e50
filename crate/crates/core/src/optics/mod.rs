//! Optical elements as unitaries on beams and polarizations, and netlists
//! of them.

mod component;
mod jones;
mod netlist;

pub use component::{Component, ComponentKind};
pub use jones::{
    beam_splitter, half_wave_plate, jones_matrix, quarter_wave_plate, rotation,
    PolarizationElement,
};
pub use netlist::{Netlist, TRANSFER_MATRIX_MAX_CEBITS};

use crate::error::Result;
use crate::state::CebitRegister;

/// Apply one component to `reg`.
pub fn apply_component(reg: &mut CebitRegister, component: &Component) -> Result<()> {
    component.apply(reg)
}

/// Execute `netlist` on `reg`.
pub fn run_netlist(reg: &mut CebitRegister, netlist: &Netlist) -> Result<()> {
    netlist.run(reg)
}
