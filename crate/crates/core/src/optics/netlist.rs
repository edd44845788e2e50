use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::component::{Component, ComponentKind};
use super::jones::PolarizationElement;
use crate::error::{CebitError, Result};
use crate::linalg::{Matrix, C64};
use crate::state::{CebitRegister, RegisterLimits};

/// Largest register for which a dense transfer matrix is built (2^12).
pub const TRANSFER_MATRIX_MAX_CEBITS: usize = 12;

/// Ordered optical elements; index order is execution order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Netlist {
    n_cebits: usize,
    components: Vec<Component>,
}

impl Netlist {
    pub fn new(n_cebits: usize) -> Result<Self> {
        if n_cebits == 0 || n_cebits > RegisterLimits::default().max_cebits {
            return Err(CebitError::CebitCountOutOfRange {
                n: n_cebits,
                cap: RegisterLimits::default().max_cebits,
            });
        }
        Ok(Netlist {
            n_cebits,
            components: Vec::new(),
        })
    }

    pub fn from_components(n_cebits: usize, components: Vec<Component>) -> Result<Self> {
        let mut netlist = Netlist::new(n_cebits)?;
        for c in components {
            netlist.push(c)?;
        }
        Ok(netlist)
    }

    pub fn n_cebits(&self) -> usize {
        self.n_cebits
    }

    pub fn n_beams(&self) -> usize {
        1 << (self.n_cebits - 1)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn has_detectors(&self) -> bool {
        self.components
            .last()
            .is_some_and(|c| matches!(c.kind(), ComponentKind::DetectorBank))
    }

    pub fn push(&mut self, component: Component) -> Result<()> {
        component.check_beams(self.n_beams())?;
        if self.has_detectors() {
            return Err(CebitError::InvalidComponent(
                "no component may follow a DETECTOR_BANK".into(),
            ));
        }
        self.components.push(component);
        Ok(())
    }

    pub fn extend(&mut self, components: impl IntoIterator<Item = Component>) -> Result<()> {
        for c in components {
            self.push(c)?;
        }
        Ok(())
    }

    /// Append every component of `other`, which must have the same size.
    pub fn append(&mut self, other: &Netlist) -> Result<()> {
        if other.n_cebits != self.n_cebits {
            return Err(CebitError::DimensionMismatch {
                expected: self.n_cebits,
                found: other.n_cebits,
            });
        }
        self.extend(other.components.iter().cloned())
    }

    /// Execute on `reg` in order.
    pub fn run(&self, reg: &mut CebitRegister) -> Result<()> {
        if reg.n_cebits() != self.n_cebits {
            return Err(CebitError::DimensionMismatch {
                expected: self.n_cebits,
                found: reg.n_cebits(),
            });
        }
        let amps = reg.amplitudes_mut();
        for c in &self.components {
            c.apply_unchecked(amps);
        }
        Ok(())
    }

    /// Dense 2^n x 2^n matrix equal to the product of the components.
    pub fn transfer_matrix(&self) -> Result<Matrix> {
        if self.n_cebits > TRANSFER_MATRIX_MAX_CEBITS {
            return Err(CebitError::TransferCapExceeded {
                dim: 1 << self.n_cebits,
                cap: 1 << TRANSFER_MATRIX_MAX_CEBITS,
            });
        }
        let dim = 1usize << self.n_cebits;
        let mut m = Matrix::zeros((dim, dim));
        let mut column = vec![C64::new(0.0, 0.0); dim];
        for j in 0..dim {
            column.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
            column[j] = C64::new(1.0, 0.0);
            for c in &self.components {
                c.apply_unchecked(&mut column);
            }
            for (i, z) in column.iter().enumerate() {
                m[(i, j)] = *z;
            }
        }
        Ok(m)
    }

    /// Number of components of each kind, keyed by kind name.
    pub fn component_counts(&self) -> BTreeMap<String, usize> {
        let mut counts = BTreeMap::new();
        for c in &self.components {
            *counts.entry(c.kind().name().to_string()).or_insert(0) += 1;
        }
        counts
    }

    /// Line-oriented text form: a `cebits N` header, then `KIND params... beams...`.
    pub fn to_text(&self) -> String {
        let mut out = format!("cebits {}\n", self.n_cebits);
        for c in &self.components {
            out.push_str(&c.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Netlist> {
        let mut netlist: Option<Netlist> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let syntax = |message: String| CebitError::NetlistSyntax { line, message };
            let mut fields = content.split_whitespace();
            let head = fields.next().expect("non-empty line");
            let rest: Vec<&str> = fields.collect();
            let Some(current) = netlist.as_mut() else {
                if !head.eq_ignore_ascii_case("cebits") || rest.len() != 1 {
                    return Err(syntax("expected header `cebits N`".into()));
                }
                let n = rest[0]
                    .parse::<usize>()
                    .map_err(|_| syntax(format!("invalid cebit count {:?}", rest[0])))?;
                netlist = Some(Netlist::new(n).map_err(|e| syntax(e.to_string()))?);
                continue;
            };
            let n_params = match head.to_ascii_uppercase().as_str() {
                "HWP" | "QWP" | "ROTATOR" | "PHASE" | "DELAY" => 1,
                "BS" => 2,
                "PBS" | "SWAP" | "DETECTOR_BANK" => 0,
                _ => return Err(syntax(format!("unknown component kind {head:?}"))),
            };
            if rest.len() < n_params {
                return Err(syntax(format!("{head} expects {n_params} parameter(s)")));
            }
            let params = rest[..n_params]
                .iter()
                .map(|s| {
                    s.parse::<f64>()
                        .map_err(|_| syntax(format!("invalid parameter {s:?}")))
                })
                .collect::<Result<Vec<f64>>>()?;
            let beams = rest[n_params..]
                .iter()
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| syntax(format!("invalid beam index {s:?}")))
                })
                .collect::<Result<Vec<usize>>>()?;
            let kind = match head.to_ascii_uppercase().as_str() {
                "DELAY" => ComponentKind::Delay { phase: params[0] },
                "BS" => ComponentKind::Bs {
                    reflectivity: params[0],
                    phase: params[1],
                },
                "PBS" => ComponentKind::Pbs,
                "SWAP" => ComponentKind::Swap,
                "DETECTOR_BANK" => ComponentKind::DetectorBank,
                other => match other.parse::<PolarizationElement>().map_err(|e| syntax(e.to_string()))? {
                    PolarizationElement::HalfWavePlate => ComponentKind::Hwp { angle: params[0] },
                    PolarizationElement::QuarterWavePlate => ComponentKind::Qwp { angle: params[0] },
                    PolarizationElement::Rotator => ComponentKind::Rotator { angle: params[0] },
                    PolarizationElement::Phase => ComponentKind::Phase { phase: params[0] },
                },
            };
            let component = Component::new(kind, beams).map_err(|e| syntax(e.to_string()))?;
            current.push(component).map_err(|e| syntax(e.to_string()))?;
        }
        netlist.ok_or(CebitError::NetlistSyntax {
            line: 1,
            message: "missing `cebits N` header".into(),
        })
    }
}

impl fmt::Display for Netlist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Netlist {
    type Err = CebitError;

    fn from_str(s: &str) -> Result<Self> {
        Netlist::parse_text(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{self, Unitary2};
    use crate::state::BasisLabel;
    use std::f64::consts::FRAC_PI_8;

    #[test]
    fn empty_netlist_is_identity() {
        let net = Netlist::new(3).unwrap();
        assert_eq!(net.transfer_matrix().unwrap(), linalg::identity(8));
    }

    #[test]
    fn single_hwp_gives_hadamard() {
        let net =
            Netlist::from_components(1, vec![Component::hwp(FRAC_PI_8, vec![0]).unwrap()]).unwrap();
        let t = net.transfer_matrix().unwrap();
        assert!(linalg::distance(&t, &Unitary2::hadamard().to_matrix()) < 1e-15);
    }

    #[test]
    fn detector_bank_is_terminal() {
        let mut net = Netlist::new(2).unwrap();
        net.push(Component::detector_bank(vec![0, 1]).unwrap()).unwrap();
        assert!(net.push(Component::swap(0, 1).unwrap()).is_err());
        let mut reg = CebitRegister::new(2, &BasisLabel::zeros(2)).unwrap();
        net.run(&mut reg).unwrap();
        assert_eq!(reg, CebitRegister::new(2, &BasisLabel::zeros(2)).unwrap());
    }

    #[test]
    fn mismatched_register_is_rejected() {
        let net = Netlist::new(2).unwrap();
        let mut reg = CebitRegister::new(3, &BasisLabel::zeros(3)).unwrap();
        assert!(matches!(
            net.run(&mut reg),
            Err(CebitError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn out_of_range_beam_is_rejected() {
        let mut net = Netlist::new(2).unwrap();
        assert!(net.push(Component::hwp(0.0, vec![2]).unwrap()).is_err());
    }

    #[test]
    fn transfer_cap() {
        assert!(matches!(
            Netlist::new(13).unwrap().transfer_matrix(),
            Err(CebitError::TransferCapExceeded { .. })
        ));
    }

    #[test]
    fn text_form() {
        let text = "# demo\ncebits 2\nHWP 0.5 0 1   # plate\nBS 0.5 0 0 1\nPBS 0 1\nDETECTOR_BANK 0 1\n";
        let net: Netlist = text.parse().unwrap();
        assert_eq!(net.len(), 4);
        assert_eq!(
            net.to_text(),
            "cebits 2\nHWP 0.5 0 1\nBS 0.5 0 0 1\nPBS 0 1\nDETECTOR_BANK 0 1\n"
        );
        assert_eq!(net.to_text().parse::<Netlist>().unwrap(), net);
    }

    #[test]
    fn text_errors_carry_line_numbers() {
        let err = "cebits 2\nHWP 0.1 0\nLENS 1 0\n".parse::<Netlist>().unwrap_err();
        assert!(matches!(err, CebitError::NetlistSyntax { line: 3, .. }));
        let err = "HWP 0.1 0\n".parse::<Netlist>().unwrap_err();
        assert!(matches!(err, CebitError::NetlistSyntax { line: 1, .. }));
        let err = "cebits 2\nBS 0.5 0 0 4\n".parse::<Netlist>().unwrap_err();
        assert!(matches!(err, CebitError::NetlistSyntax { line: 2, .. }));
        assert!("".parse::<Netlist>().is_err());
    }
}
