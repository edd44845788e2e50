//! Beam, detector and power accounting as the register grows.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{CebitError, Result};
use crate::optics::Netlist;
use crate::state::{BasisLabel, CebitRegister, RegisterLimits};

/// Largest `n` whose detector count (2^n) fits the report's integer fields.
pub const REPORT_MAX_CEBITS: usize = 127;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResourceReport {
    #[serde(rename = "n")]
    pub n_cebits: usize,
    pub beams: u128,
    pub detectors: u128,
    #[serde(rename = "components")]
    pub component_counts: BTreeMap<String, usize>,
    pub power_fraction_min: f64,
}

/// Resource report for `n` cebits, optionally tallying a netlist.
///
/// Without a netlist the power fraction is that of the uniform superposition,
/// 2^−(n−1) per beam. With one, the netlist is run on |0…0) and the dimmest
/// bright beam's share of the total power is reported.
pub fn resource_report(n: usize, netlist: Option<&Netlist>) -> Result<ResourceReport> {
    if n == 0 || n > REPORT_MAX_CEBITS {
        return Err(CebitError::CebitCountOutOfRange {
            n,
            cap: REPORT_MAX_CEBITS,
        });
    }
    let beams = 1u128 << (n - 1);
    let detectors = 1u128 << n;
    let mut report = ResourceReport {
        n_cebits: n,
        beams,
        detectors,
        component_counts: BTreeMap::new(),
        power_fraction_min: 0.5f64.powi(n as i32 - 1),
    };
    if let Some(netlist) = netlist {
        if netlist.n_cebits() != n {
            return Err(CebitError::DimensionMismatch {
                expected: n,
                found: netlist.n_cebits(),
            });
        }
        report.component_counts = netlist.component_counts();
        if n <= RegisterLimits::default().max_cebits {
            let mut reg = CebitRegister::new(n, &BasisLabel::zeros(n))?;
            netlist.run(&mut reg)?;
            let total = reg.norm_sqr();
            report.power_fraction_min = (0..reg.n_beams())
                .map(|b| {
                    let [v, h] = reg.jones(b).expect("beam in range");
                    (v.norm_sqr() + h.norm_sqr()) / total
                })
                .filter(|&f| f > 1e-12)
                .fold(1.0, f64::min);
        }
    }
    Ok(report)
}

/// Cebits supported by a beam budget: 1 + log₂(budget), rounded to nearest.
pub fn max_cebits(beam_budget: f64) -> Result<u32> {
    if beam_budget.is_nan() || beam_budget < 1.0 || beam_budget.is_infinite() {
        return Err(CebitError::InvalidInput(format!(
            "beam budget must be a finite number >= 1, got {beam_budget}"
        )));
    }
    Ok((1.0 + beam_budget.log2()).round() as u32)
}
