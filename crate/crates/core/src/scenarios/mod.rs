//! Worked experiments: GHZ correlations, teleportation, error correction,
//! and measurement helpers shared by them.

mod errcorr;
mod ghz;
mod measure;
mod named;
mod simulate;
mod teleport;

pub use errcorr::{
    apply_flip, apply_hadamard_layer, apply_phase_flip, correct_flips, correction_netlist,
    encode_threefold, encoder_netlist, error_correction_round, flip_components, hadamard_layer,
    phase_error_network, phase_flip_components, ErrorCorrectionReport, FlipTarget,
    SyndromeOutcome, BRIGHT_THRESHOLD,
};
pub use ghz::{ghz_circuit, ghz_experiment, ghz_preparation_netlist, GhzOutcome, DARK_THRESHOLD};
pub use measure::{
    detector_intensities, expectation_from_intensities, measurement_netlist, pauli_expectation,
    Pauli, PauliBasis,
};
pub use named::{prepare_named_state, NamedState};
pub use simulate::{simulate_circuit, ExpectationRecord, SimulationResult};
pub use teleport::{
    bell_transform, bell_transform_components, correction_components, mach_zehnder_cebit,
    prepared_state, preparation_components, teleport, teleport_netlist, teleport_with_phases,
    TeleportOutcome, BELL_BEAM_LABELS,
};
