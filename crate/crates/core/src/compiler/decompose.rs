//! Synthesis of unitaries from optical primitives.
//!
//! Three routes: a QWP-HWP-QWP retarder sequence for polarization, a
//! Mach-Zehnder interferometer for a position cebit, and a triangular mesh of
//! two-beam mixers for an arbitrary N x N multiport.

use serde::{Deserialize, Serialize};

use crate::error::{CebitError, Result};
use crate::linalg::{self, Matrix, Unitary2, C64, UNITARY_TOL};
use crate::optics::{
    beam_splitter, half_wave_plate, quarter_wave_plate, Component, ComponentKind,
};

/// Largest multiport size accepted by [`decompose_multiport`].
pub const MULTIPORT_MAX_MODES: usize = 256;

/// Fast-axis angles of a QWP-HWP-QWP sequence; `qwp_in` acts first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveplateAngles {
    pub qwp_in: f64,
    pub hwp: f64,
    pub qwp_out: f64,
}

impl WaveplateAngles {
    /// QWP(qwp_out) · HWP(hwp) · QWP(qwp_in)
    pub fn matrix(&self) -> Unitary2 {
        quarter_wave_plate(self.qwp_out)
            .mul(&half_wave_plate(self.hwp))
            .mul(&quarter_wave_plate(self.qwp_in))
    }
}

/// Phase delays of a balanced Mach-Zehnder; `phi_in` acts first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MachZehnderPhases {
    pub phi_in: f64,
    pub phi_arm: f64,
    pub phi_out: f64,
}

impl MachZehnderPhases {
    /// PHASE(φ_out) · BS(1/2) · PHASE(φ_arm) · BS(1/2) · PHASE(φ_in)
    pub fn matrix(&self) -> Unitary2 {
        let bs = beam_splitter(0.5, 0.0);
        Unitary2::phase(self.phi_out)
            .mul(&bs)
            .mul(&Unitary2::phase(self.phi_arm))
            .mul(&bs)
            .mul(&Unitary2::phase(self.phi_in))
    }
}

/// Bloch-sphere rotation of `u`: O_ij = ½ Re tr(σ_i U σ_j U†).
fn bloch_rotation(u: &Unitary2) -> [[f64; 3]; 3] {
    let paulis = [Unitary2::pauli_x(), Unitary2::pauli_y(), Unitary2::pauli_z()];
    let ud = u.dagger();
    let mut o = [[0.0; 3]; 3];
    for (i, si) in paulis.iter().enumerate() {
        for (j, sj) in paulis.iter().enumerate() {
            let p = si.mul(u).mul(sj).mul(&ud);
            o[i][j] = 0.5 * (p.0[0][0] + p.0[1][1]).re;
        }
    }
    o
}

fn ry(a: f64) -> [[f64; 3]; 3] {
    let (s, c) = a.sin_cos();
    [[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]]
}

fn rx(b: f64) -> [[f64; 3]; 3] {
    let (s, c) = b.sin_cos();
    [[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]]
}

fn mat3_mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn mat3_dist(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            d = d.max((a[i][j] - b[i][j]).abs());
        }
    }
    d
}

/// Angles of a QWP-HWP-QWP sequence reproducing `u` up to global phase.
///
/// Up to phase, QWP(q2)·HWP(h)·QWP(q1) is the Bloch rotation
/// Ry(2 q2)·Rx(2 q1 + 2 q2 − 4 h)·Ry(−2 q1), so the angles follow from a
/// y-x-y Euler decomposition of `u`.
pub fn decompose_su2_waveplates(u: &Unitary2) -> Result<WaveplateAngles> {
    u.check_unitary(UNITARY_TOL)?;
    let o = bloch_rotation(u);
    let b = (o[0][1].hypot(o[2][1])).atan2(o[1][1]);
    let sum = (o[0][2] - o[2][0]).atan2(o[0][0] + o[2][2]);
    let diff = (-(o[0][2] + o[2][0])).atan2(o[0][0] - o[2][2]);
    let candidates = [
        ((sum + diff) / 2.0, (sum - diff) / 2.0),
        (
            (sum + diff) / 2.0 + std::f64::consts::PI,
            (sum - diff) / 2.0 + std::f64::consts::PI,
        ),
    ];
    let (a, c) = candidates
        .into_iter()
        .min_by(|x, y| {
            let ex = mat3_dist(&mat3_mul(&mat3_mul(&ry(x.0), &rx(b)), &ry(x.1)), &o);
            let ey = mat3_dist(&mat3_mul(&mat3_mul(&ry(y.0), &rx(b)), &ry(y.1)), &o);
            ex.total_cmp(&ey)
        })
        .expect("two candidates");
    Ok(WaveplateAngles {
        qwp_in: -c / 2.0,
        hwp: (a - c - b) / 4.0,
        qwp_out: a / 2.0,
    })
}

/// Phases of a balanced Mach-Zehnder reproducing `u` up to global phase.
///
/// Up to the global factor e^{iφ_arm/2} the interferometer is
/// [[c, −i s e^{iφ_in}], [−i s e^{iφ_out}, c e^{i(φ_in+φ_out)}]] with
/// c = cos(φ_arm/2), s = sin(φ_arm/2).
pub fn decompose_su2_mz(u: &Unitary2) -> Result<MachZehnderPhases> {
    u.check_unitary(UNITARY_TOL)?;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let cos_half = u.get(0, 0).norm().min(1.0);
    let sin_half = u.get(0, 1).norm().min(1.0);
    let phi_arm = 2.0 * sin_half.atan2(cos_half);
    let arg = |z: C64| if z.norm() > 0.0 { z.arg() } else { 0.0 };
    let global = arg(u.get(0, 0));
    let phi_in = if sin_half > 0.0 {
        arg(u.get(0, 1)) - global + half_pi
    } else {
        0.0
    };
    let phi_out = if cos_half >= sin_half {
        arg(u.get(1, 1)) - global - phi_in
    } else {
        arg(u.get(1, 0)) - global + half_pi
    };
    Ok(MachZehnderPhases {
        phi_in,
        phi_arm,
        phi_out,
    })
}

/// Mixer mesh realizing an N x N unitary on beams `0..N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiportMesh {
    pub n_modes: usize,
    /// Execution order; only `DELAY`, `BS` and `SWAP` on beams `< n_modes`.
    pub components: Vec<Component>,
}

impl MultiportMesh {
    pub fn mixer_count(&self) -> usize {
        self.components
            .iter()
            .filter(|c| matches!(c.kind(), ComponentKind::Bs { .. } | ComponentKind::Swap))
            .count()
    }

    pub fn matrix(&self) -> Result<Matrix> {
        multiport_matrix(&self.components, self.n_modes)
    }
}

/// Triangular (Reck-style) elimination of `u` into two-beam mixers.
///
/// Eliminates the sub-diagonal of U† with mixers acting on neighbouring
/// beams; each mixer is a DELAY on its first beam followed by a BS. The
/// leftover diagonal becomes output DELAYs. At most N(N−1)/2 mixers and N
/// output phases are emitted.
pub fn decompose_multiport(u: &Matrix) -> Result<MultiportMesh> {
    let (rows, cols) = u.dim();
    if rows != cols {
        return Err(CebitError::NotSquare { rows, cols });
    }
    if rows == 0 || rows > MULTIPORT_MAX_MODES {
        return Err(CebitError::InvalidInput(format!(
            "multiport size {rows} outside 1..={MULTIPORT_MAX_MODES}"
        )));
    }
    linalg::check_unitary(u, UNITARY_TOL)?;
    let n = rows;
    let mut w = linalg::dagger(u);
    let mut components = Vec::new();
    for col in 0..n {
        for row in (col + 1..n).rev() {
            let (a, b) = (row - 1, row);
            let (x, y) = (w[(a, col)], w[(b, col)]);
            if y.norm() < 1e-14 {
                w[(b, col)] = C64::new(0.0, 0.0);
                continue;
            }
            let norm = x.norm().hypot(y.norm());
            let (reflectivity, alpha) = if x.norm() == 0.0 {
                (1.0, 0.0)
            } else {
                ((y.norm() / norm).powi(2), y.arg() - x.arg())
            };
            let delay = C64::from_polar(1.0, alpha);
            let bs = beam_splitter(reflectivity, 0.0);
            for k in 0..n {
                let (wa, wb) = (delay * w[(a, k)], w[(b, k)]);
                let [na, nb] = bs.apply([wa, wb]);
                w[(a, k)] = na;
                w[(b, k)] = nb;
            }
            w[(b, col)] = C64::new(0.0, 0.0);
            if alpha != 0.0 {
                components.push(Component::delay(alpha, vec![a])?);
            }
            components.push(Component::bs(reflectivity, 0.0, a, b)?);
        }
    }
    for k in 0..n {
        let phase = -w[(k, k)].arg();
        if phase.abs() > 1e-15 {
            components.push(Component::delay(phase, vec![k])?);
        }
    }
    Ok(MultiportMesh {
        n_modes: n,
        components,
    })
}

/// N x N mode matrix of polarization-independent components on beams `0..n_modes`.
pub fn multiport_matrix(components: &[Component], n_modes: usize) -> Result<Matrix> {
    let mut m = linalg::identity(n_modes);
    for comp in components {
        comp.check_beams(n_modes)?;
        match comp.kind() {
            ComponentKind::Delay { phase } => {
                let e = C64::from_polar(1.0, *phase);
                for &b in comp.beams() {
                    m.row_mut(b).mapv_inplace(|z| z * e);
                }
            }
            ComponentKind::Bs { .. } | ComponentKind::Swap => {
                let local = comp.local_matrix().expect("mixer matrix");
                let (a, b) = (comp.beams()[0], comp.beams()[1]);
                for k in 0..n_modes {
                    let [na, nb] = local.apply([m[(a, k)], m[(b, k)]]);
                    m[(a, k)] = na;
                    m[(b, k)] = nb;
                }
            }
            other => {
                return Err(CebitError::InvalidComponent(format!(
                    "{} is not a polarization-independent mode element",
                    other.name()
                )))
            }
        }
    }
    Ok(m)
}

/// Reconstruction error of a waveplate decomposition, up to global phase.
pub fn waveplate_error(u: &Unitary2, angles: &WaveplateAngles) -> f64 {
    angles.matrix().distance_up_to_phase(u)
}

/// Reconstruction error of a Mach-Zehnder decomposition, up to global phase.
pub fn mz_error(u: &Unitary2, phases: &MachZehnderPhases) -> f64 {
    phases.matrix().distance_up_to_phase(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ONE;
    use ndarray::Array2;
    use std::f64::consts::PI;

    #[test]
    fn waveplates_reproduce_hadamard_and_identity() {
        for u in [Unitary2::hadamard(), Unitary2::identity(), Unitary2::pauli_y(), Unitary2::pauli_z()] {
            let angles = decompose_su2_waveplates(&u).unwrap();
            assert!(waveplate_error(&u, &angles) < 1e-12, "{u:?} -> {angles:?}");
        }
    }

    #[test]
    fn mz_reproduces_hadamard_phase_and_identity() {
        let h = decompose_su2_mz(&Unitary2::hadamard()).unwrap();
        assert!(mz_error(&Unitary2::hadamard(), &h) < 1e-12);
        assert!((h.phi_arm - PI / 2.0).abs() < 1e-12);

        let p = Unitary2::phase(0.7);
        let phases = decompose_su2_mz(&p).unwrap();
        assert!(phases.phi_arm.abs() < 1e-12 || (phases.phi_arm - PI).abs() < 1e-12);
        assert!(mz_error(&p, &phases) < 1e-12);

        let id = decompose_su2_mz(&Unitary2::identity()).unwrap();
        assert!(mz_error(&Unitary2::identity(), &id) < 1e-12);

        let x = decompose_su2_mz(&Unitary2::pauli_x()).unwrap();
        assert!(mz_error(&Unitary2::pauli_x(), &x) < 1e-12);
    }

    #[test]
    fn decomposers_reject_non_unitary() {
        let bad = Unitary2::real(1.0, 0.5, 0.0, 1.0);
        assert!(decompose_su2_waveplates(&bad).is_err());
        assert!(decompose_su2_mz(&bad).is_err());
        assert!(decompose_multiport(&bad.to_matrix()).is_err());
        let rect = Array2::from_elem((2, 3), ONE);
        assert!(matches!(
            decompose_multiport(&rect),
            Err(CebitError::NotSquare { .. })
        ));
    }

    #[test]
    fn identity_multiport_has_no_mixers() {
        let mesh = decompose_multiport(&linalg::identity(4)).unwrap();
        assert!(mesh.components.is_empty());
        assert_eq!(linalg::distance(&mesh.matrix().unwrap(), &linalg::identity(4)), 0.0);
    }

    #[test]
    fn permutation_multiport_uses_swaps() {
        let perm = [2usize, 0, 3, 1];
        let mut u = Matrix::zeros((4, 4));
        for (col, &row) in perm.iter().enumerate() {
            u[(row, col)] = ONE;
        }
        let mesh = decompose_multiport(&u).unwrap();
        for c in &mesh.components {
            if let ComponentKind::Bs { reflectivity, .. } = c.kind() {
                assert!((reflectivity - 1.0).abs() < 1e-15 || reflectivity.abs() < 1e-15);
            }
        }
        assert!(linalg::distance(&mesh.matrix().unwrap(), &u) < 1e-10);
    }
}
