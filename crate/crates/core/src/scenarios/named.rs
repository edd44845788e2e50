use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CebitError, Result};
use crate::linalg::{c, C64, ZERO};
use crate::state::CebitRegister;

/// Entangled reference states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NamedState {
    Ghz,
    /// (|01) − |10))/√2 between position and polarization.
    Epr,
    BellPsiPlus,
    BellPsiMinus,
    BellPhiPlus,
    BellPhiMinus,
}

impl FromStr for NamedState {
    type Err = CebitError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "GHZ" => Ok(NamedState::Ghz),
            "EPR" => Ok(NamedState::Epr),
            "BELL_PSI_PLUS" => Ok(NamedState::BellPsiPlus),
            "BELL_PSI_MINUS" => Ok(NamedState::BellPsiMinus),
            "BELL_PHI_PLUS" => Ok(NamedState::BellPhiPlus),
            "BELL_PHI_MINUS" => Ok(NamedState::BellPhiMinus),
            other => Err(CebitError::InvalidInput(format!("unknown state {other:?}"))),
        }
    }
}

impl fmt::Display for NamedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NamedState::Ghz => "GHZ",
            NamedState::Epr => "EPR",
            NamedState::BellPsiPlus => "BELL_PSI_PLUS",
            NamedState::BellPsiMinus => "BELL_PSI_MINUS",
            NamedState::BellPhiPlus => "BELL_PHI_PLUS",
            NamedState::BellPhiMinus => "BELL_PHI_MINUS",
        })
    }
}

pub fn prepare_named_state(name: NamedState) -> CebitRegister {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let amps: Vec<C64> = match name {
        NamedState::Ghz => {
            let mut v = vec![ZERO; 8];
            v[0] = c(h, 0.0);
            v[7] = c(h, 0.0);
            v
        }
        NamedState::Epr => vec![ZERO, c(h, 0.0), c(-h, 0.0), ZERO],
        NamedState::BellPsiPlus => vec![ZERO, c(h, 0.0), c(h, 0.0), ZERO],
        NamedState::BellPsiMinus => vec![ZERO, c(h, 0.0), c(-h, 0.0), ZERO],
        NamedState::BellPhiPlus => vec![c(h, 0.0), ZERO, ZERO, c(h, 0.0)],
        NamedState::BellPhiMinus => vec![c(h, 0.0), ZERO, ZERO, c(-h, 0.0)],
    };
    CebitRegister::from_amplitudes(amps).expect("valid named state")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn amplitudes() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let ghz = prepare_named_state(NamedState::Ghz);
        assert_eq!(ghz.n_cebits(), 3);
        assert_eq!(ghz.amplitudes()[0], c(h, 0.0));
        assert_eq!(ghz.amplitudes()[7], c(h, 0.0));
        let epr = prepare_named_state(NamedState::Epr);
        assert_eq!(epr.amplitudes(), &[ZERO, c(h, 0.0), c(-h, 0.0), ZERO]);
        let phi = prepare_named_state(NamedState::BellPhiPlus);
        assert_eq!(phi.amplitudes(), &[c(h, 0.0), ZERO, ZERO, c(h, 0.0)]);
        assert!("bogus".parse::<NamedState>().is_err());
        assert_eq!("bell-phi-minus".parse::<NamedState>().unwrap(), NamedState::BellPhiMinus);
    }
}
