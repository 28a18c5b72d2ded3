//! Reference vertices used by the command-line tool and the test
//! suite.

use crate::error::{Error, Result};
use crate::vertex::{make_case, BoundaryPair, CaseParameters};
use num_complex::Complex64;

/// Named reference vertices, all on three lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetName {
    /// Equal-coupling point interaction, strength 2.
    Fig2,
    /// Rank-2 coupling with a unit projector strength block; one pair
    /// passes low frequencies, the other two pass high.
    Fig4,
    /// Rank-2 coupling with a detuned projector strength block; one
    /// pair passes high frequencies, the other two pass low.
    Fig5,
    /// Rank-2 coupling with an indefinite invertible strength block.
    Fig6,
    /// Fully coupled derivative-side vertex with unit strengths.
    Fig8,
    /// Full-strength vertex whose leading block is singular.
    Fig9,
    /// Full-strength vertex with an invertible, indefinite strength
    /// matrix; every pair transmits only in a middle band.
    Fig10,
}

impl PresetName {
    pub const ALL: [PresetName; 7] = [
        PresetName::Fig2,
        PresetName::Fig4,
        PresetName::Fig5,
        PresetName::Fig6,
        PresetName::Fig8,
        PresetName::Fig9,
        PresetName::Fig10,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PresetName::Fig2 => "fig2",
            PresetName::Fig4 => "fig4",
            PresetName::Fig5 => "fig5",
            PresetName::Fig6 => "fig6",
            PresetName::Fig8 => "fig8",
            PresetName::Fig9 => "fig9",
            PresetName::Fig10 => "fig10",
        }
    }
}

impl std::fmt::Display for PresetName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for PresetName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PresetName::ALL
            .iter()
            .copied()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| {
                Error::Parameter(format!(
                    "unknown preset {s:?}; available: {}",
                    PresetName::ALL.map(|p| p.as_str()).join(", ")
                ))
            })
    }
}

/// Chart parameters of a preset.
pub fn preset_case(name: PresetName) -> CaseParameters {
    let re = |x: f64| Complex64::new(x, 0.0);
    let rt = re(0.5_f64.sqrt());
    match name {
        PresetName::Fig2 => CaseParameters::DeltaN3 {
            s: 2.0,
            t2: rt,
            t3: rt,
        },
        PresetName::Fig4 => CaseParameters::Rank2StN3 {
            s11: 1.0,
            s12: re(1.0),
            s22: 1.0,
            t1: rt,
            t2: rt,
        },
        PresetName::Fig5 => CaseParameters::Rank2StN3 {
            s11: 6.0,
            s12: re(2.0),
            s22: 2.0 / 3.0,
            t1: re(1.0 / 3.0),
            t2: re(0.0),
        },
        PresetName::Fig6 => CaseParameters::Rank2StN3 {
            s11: 1.0,
            s12: re(1.0),
            s22: -2.0,
            t1: rt,
            t2: rt,
        },
        PresetName::Fig8 => CaseParameters::HermitianN3 {
            s11: 1.0,
            s12: re(1.0),
            s13: re(1.0),
            s22: 1.0,
            s23: re(1.0),
            s33: 1.0,
        },
        PresetName::Fig9 => CaseParameters::HermitianN3 {
            s11: 1.0,
            s12: re(1.0),
            s13: re(2.0),
            s22: 1.0,
            s23: re(2.0),
            s33: 1.0,
        },
        PresetName::Fig10 => CaseParameters::HermitianN3 {
            s11: -1.0 / 3.0,
            s12: re(-1.0),
            s13: re(1.0),
            s22: 1.0,
            s23: re(-3.0),
            s33: -4.0,
        },
    }
}

/// The assembled boundary pair of a preset.
pub fn preset_boundary(name: PresetName) -> Result<BoundaryPair> {
    make_case(&preset_case(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::classify;
    use crate::DEFAULT_RANK_TOL;

    #[test]
    fn every_preset_assembles_and_is_admissible() {
        for name in PresetName::ALL {
            let pair = preset_boundary(name).unwrap();
            assert!(pair.is_admissible(DEFAULT_RANK_TOL), "{name} must be admissible");
            let class = classify(&pair, DEFAULT_RANK_TOL).unwrap();
            assert_eq!(class.r_a + class.r_b, 3 + class.r_s, "{name} rank identity");
        }
    }

    #[test]
    fn names_round_trip() {
        for name in PresetName::ALL {
            let parsed: PresetName = name.as_str().parse().unwrap();
            assert_eq!(parsed, name);
        }
        assert!("fig3".parse::<PresetName>().is_err());
    }
}
