//! Pass-band behaviour of pairwise couplings and design of three-line
//! branching filters.
//!
//! Each unordered pair of lines is classified by where its transmission
//! probability survives: high-pass couplings open up with growing wave
//! number (point-interaction behaviour), low-pass couplings close
//! (derivative-coupling behaviour), scale-invariant couplings pass
//! everything, mixed couplings transmit only in an intermediate band,
//! and disconnected pairs never transmit above the threshold.

use crate::error::{Error, Result};
use crate::scattering::{asymptotic_limits, s_matrix};
use crate::vertex::{make_case, make_delta, make_delta_prime, BoundaryPair, CaseParameters};
use num_complex::Complex64;

/// Default transmission-magnitude threshold for classification.
pub const DEFAULT_EPSILON: f64 = 1e-3;

const GRID_LO: f64 = 1e-3;
const GRID_HI: f64 = 1e3;
const GRID_POINTS: usize = 20;

/// Pass-band character of one pair of lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CouplingKind {
    /// Transmission grows from zero toward a high-frequency plateau.
    DeltaLike,
    /// Transmission is the same at every wave number.
    ScaleInvariant,
    /// Transmission survives only in an intermediate band, or resists
    /// a cleaner description.
    Mixed,
    /// Transmission falls from a low-frequency plateau to zero.
    DeltaPrimeLike,
    /// Transmission stays below the threshold everywhere.
    Disconnected,
}

impl CouplingKind {
    /// Compact token used in pattern summaries.
    pub fn token(self) -> &'static str {
        match self {
            CouplingKind::DeltaLike => "δ",
            CouplingKind::ScaleInvariant => "si",
            CouplingKind::Mixed => "mixed",
            CouplingKind::DeltaPrimeLike => "δ′",
            CouplingKind::Disconnected => "none",
        }
    }
}

impl std::fmt::Display for CouplingKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            CouplingKind::DeltaLike => "delta-like (high-pass)",
            CouplingKind::ScaleInvariant => "scale-invariant (all-pass)",
            CouplingKind::Mixed => "mixed (band)",
            CouplingKind::DeltaPrimeLike => "delta-prime-like (low-pass)",
            CouplingKind::Disconnected => "disconnected",
        };
        f.write_str(name)
    }
}

/// Classification record for the pair `(i, j)` (0-based lines).
#[derive(Debug, Clone)]
pub struct PairCoupling {
    pub i: usize,
    pub j: usize,
    pub kind: CouplingKind,
    /// `|T_ij|` at `k -> 0`.
    pub t0: f64,
    /// `|T_ij|` at `k -> infinity`.
    pub tinf: f64,
    pub epsilon: f64,
    /// True when the asymptotic refinement had not settled.
    pub unstable: bool,
}

fn decide(t0: f64, tinf: f64, gmax: f64, gmin: f64, eps: f64) -> CouplingKind {
    let relvar = if gmax > 0.0 { (gmax - gmin) / gmax } else { 0.0 };
    match (t0 > eps, tinf > eps) {
        (true, true) => {
            if relvar < eps {
                CouplingKind::ScaleInvariant
            } else if tinf * tinf <= 0.5 * t0 * t0 {
                CouplingKind::DeltaPrimeLike
            } else if t0 * t0 <= 0.5 * tinf * tinf {
                CouplingKind::DeltaLike
            } else {
                CouplingKind::Mixed
            }
        }
        (false, true) => CouplingKind::DeltaLike,
        (true, false) => CouplingKind::DeltaPrimeLike,
        // Both limits sit at or below the threshold. A limit that still
        // clearly dominates the other keeps its character — this is
        // what makes the decision stable for plateaus grazing the
        // threshold — before the pair is declared dark or banded.
        (false, false) => {
            if t0 >= 0.5 * eps && tinf * tinf <= 0.5 * t0 * t0 {
                CouplingKind::DeltaPrimeLike
            } else if tinf >= 0.5 * eps && t0 * t0 <= 0.5 * tinf * tinf {
                CouplingKind::DeltaLike
            } else if gmax <= eps {
                CouplingKind::Disconnected
            } else {
                CouplingKind::Mixed
            }
        }
    }
}

/// Classifies every pair of lines of a two- or three-line vertex.
pub fn pair_coupling_class(pair: &BoundaryPair, epsilon: f64) -> Result<Vec<PairCoupling>> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::Parameter(format!(
            "threshold must be positive and finite, got {epsilon}"
        )));
    }
    let pairs: &[(usize, usize)] = match pair.n() {
        2 => &[(0, 1)],
        3 => &[(0, 1), (1, 2), (2, 0)],
        n => {
            return Err(Error::UnsupportedCase(format!(
                "pair classification covers 2 or 3 lines, got {n}"
            )))
        }
    };
    let limits = asymptotic_limits(pair)?;
    let ratio = (GRID_HI / GRID_LO).powf(1.0 / (GRID_POINTS as f64 - 1.0));
    let mut grids: Vec<Vec<f64>> = vec![Vec::with_capacity(GRID_POINTS); pairs.len()];
    for m in 0..GRID_POINTS {
        let k = GRID_LO * ratio.powi(m as i32);
        let sm = s_matrix(pair, k)?;
        for (slot, &(i, j)) in grids.iter_mut().zip(pairs) {
            slot.push(sm.transmission(i, j).norm());
        }
    }
    Ok(pairs
        .iter()
        .zip(&grids)
        .map(|(&(i, j), grid)| {
            let t0 = limits.t0(i, j);
            let tinf = limits.tinf(i, j);
            let gmax = grid.iter().copied().fold(t0.max(tinf), f64::max);
            let gmin = grid.iter().copied().fold(t0.min(tinf), f64::min);
            PairCoupling {
                i,
                j,
                kind: decide(t0, tinf, gmax, gmin, epsilon),
                t0,
                tinf,
                epsilon,
                unstable: limits.unstable,
            }
        })
        .collect())
}

/// Sorted-token summary such as `δ-δ-δ′`.
pub fn coupling_pattern(report: &[PairCoupling]) -> String {
    let mut kinds: Vec<CouplingKind> = report.iter().map(|p| p.kind).collect();
    kinds.sort();
    kinds
        .iter()
        .map(|kind| kind.token())
        .collect::<Vec<_>>()
        .join("-")
}

/// Requested pass behaviour for one pair of lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingRequest {
    HighPass,
    LowPass,
}

impl CouplingRequest {
    pub fn target(self) -> CouplingKind {
        match self {
            CouplingRequest::HighPass => CouplingKind::DeltaLike,
            CouplingRequest::LowPass => CouplingKind::DeltaPrimeLike,
        }
    }
}

/// Requested behaviour of the three pairs of a three-line vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterSpec {
    pub pair_12: CouplingRequest,
    pub pair_23: CouplingRequest,
    pub pair_31: CouplingRequest,
}

impl FilterSpec {
    /// `(i, j, request)` triples in the fixed pair order.
    pub fn requests(&self) -> [(usize, usize, CouplingRequest); 3] {
        [
            (0, 1, self.pair_12),
            (1, 2, self.pair_23),
            (2, 0, self.pair_31),
        ]
    }
}

/// A designed vertex together with its achieved classification.
#[derive(Debug, Clone)]
pub struct DesignOutcome {
    pub vertex: BoundaryPair,
    pub report: Vec<PairCoupling>,
    pub epsilon: f64,
}

/// Relabels `base` so that the requested pair plays the role that the
/// pair `(lines.0, lines.1)` plays in the base vertex.
fn assign_pair(base: &BoundaryPair, requested: (usize, usize), lines: (usize, usize)) -> Result<BoundaryPair> {
    let (p, q) = if requested.0 < requested.1 {
        (requested.0, requested.1)
    } else {
        (requested.1, requested.0)
    };
    let mut sigma = [usize::MAX; 3];
    sigma[p] = lines.0;
    sigma[q] = lines.1;
    let third = (0..3).find(|l| *l != p && *l != q).expect("three lines");
    let spare = (0..3)
        .find(|l| *l != lines.0 && *l != lines.1)
        .expect("three lines");
    sigma[third] = spare;
    base.permute_lines(&sigma)
}

/// Builds a three-line vertex realizing the requested pass pattern.
///
/// Uniform requests come straight from the two one-parameter families;
/// a single low-pass (or high-pass) pair comes from the rank-2 charts
/// whose strength block softens exactly one coupling, relabelled onto
/// the requested pair. The report re-classifies the returned vertex at
/// the threshold the recipe is calibrated for.
pub fn design_branching_filter(spec: &FilterSpec) -> Result<DesignOutcome> {
    let rt = Complex64::new(0.5_f64.sqrt(), 0.0);
    let one = Complex64::new(1.0, 0.0);
    let requests = spec.requests();
    let low: Vec<(usize, usize)> = requests
        .iter()
        .filter(|(_, _, r)| *r == CouplingRequest::LowPass)
        .map(|&(i, j, _)| (i, j))
        .collect();
    let high: Vec<(usize, usize)> = requests
        .iter()
        .filter(|(_, _, r)| *r == CouplingRequest::HighPass)
        .map(|&(i, j, _)| (i, j))
        .collect();

    let (vertex, epsilon) = match low.len() {
        0 => (make_delta(3, 2.0, &[rt, rt])?, DEFAULT_EPSILON),
        3 => (make_delta_prime(3, 1.0, &[one, one])?, DEFAULT_EPSILON),
        1 => {
            let base = make_case(&CaseParameters::Rank2StN3 {
                s11: 1.0,
                s12: one,
                s22: 1.0,
                t1: rt,
                t2: rt,
            })?;
            // The projector chart with matched couplings closes the
            // (0, 1) pair at high k and opens the other two.
            (assign_pair(&base, low[0], (0, 1))?, DEFAULT_EPSILON)
        }
        _ => {
            let base = make_case(&CaseParameters::Rank2StN3 {
                s11: 6.0,
                s12: Complex64::new(2.0, 0.0),
                s22: 2.0 / 3.0,
                t1: Complex64::new(1.0 / 3.0, 0.0),
                t2: Complex64::new(0.0, 0.0),
            })?;
            // Detuning the projector chart leaves only the (2, 0) pair
            // open at high k; its plateaus sit near the threshold, so
            // classification is calibrated at a coarser epsilon.
            (assign_pair(&base, high[0], (2, 0))?, 0.2)
        }
    };
    let report = pair_coupling_class(&vertex, epsilon)?;
    Ok(DesignOutcome {
        vertex,
        report,
        epsilon,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{c, ComplexMatrix};
    use crate::presets::{preset_boundary, PresetName};
    use crate::vertex::make_scale_invariant;

    fn kinds(pair: &BoundaryPair, eps: f64) -> Vec<CouplingKind> {
        pair_coupling_class(pair, eps)
            .unwrap()
            .iter()
            .map(|p| p.kind)
            .collect()
    }

    #[test]
    fn matched_point_interaction_is_all_high_pass() {
        let pair = preset_boundary(PresetName::Fig2).unwrap();
        assert_eq!(kinds(&pair, DEFAULT_EPSILON), vec![CouplingKind::DeltaLike; 3]);
    }

    #[test]
    fn unit_projector_chart_closes_exactly_one_pair() {
        let pair = preset_boundary(PresetName::Fig4).unwrap();
        let report = pair_coupling_class(&pair, DEFAULT_EPSILON).unwrap();
        assert_eq!(report[0].kind, CouplingKind::DeltaPrimeLike, "pair (1,2)");
        assert_eq!(report[1].kind, CouplingKind::DeltaLike, "pair (2,3)");
        assert_eq!(report[2].kind, CouplingKind::DeltaLike, "pair (3,1)");
        assert_eq!(coupling_pattern(&report), "δ-δ-δ′");
    }

    #[test]
    fn detuned_projector_chart_opens_exactly_one_pair() {
        let pair = preset_boundary(PresetName::Fig5).unwrap();
        let report = pair_coupling_class(&pair, 0.2).unwrap();
        assert_eq!(report[0].kind, CouplingKind::DeltaPrimeLike, "pair (1,2)");
        assert_eq!(report[1].kind, CouplingKind::DeltaPrimeLike, "pair (2,3)");
        assert_eq!(report[2].kind, CouplingKind::DeltaLike, "pair (3,1)");
        assert_eq!(coupling_pattern(&report), "δ-δ′-δ′");
    }

    #[test]
    fn indefinite_chart_is_all_high_pass() {
        let pair = preset_boundary(PresetName::Fig6).unwrap();
        assert_eq!(kinds(&pair, DEFAULT_EPSILON), vec![CouplingKind::DeltaLike; 3]);
    }

    #[test]
    fn derivative_vertex_is_all_low_pass() {
        let pair = preset_boundary(PresetName::Fig8).unwrap();
        assert_eq!(
            kinds(&pair, DEFAULT_EPSILON),
            vec![CouplingKind::DeltaPrimeLike; 3]
        );
    }

    #[test]
    fn full_strength_vertex_transmits_only_in_a_band() {
        let pair = preset_boundary(PresetName::Fig10).unwrap();
        assert_eq!(kinds(&pair, DEFAULT_EPSILON), vec![CouplingKind::Mixed; 3]);
    }

    #[test]
    fn decoupled_lines_are_disconnected() {
        let pair = BoundaryPair::new(ComplexMatrix::identity(3), ComplexMatrix::zeros(3, 3))
            .unwrap();
        assert_eq!(
            kinds(&pair, DEFAULT_EPSILON),
            vec![CouplingKind::Disconnected; 3]
        );
    }

    #[test]
    fn zero_strength_couplings_are_scale_invariant() {
        let pair = make_scale_invariant(3, &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(
            kinds(&pair, DEFAULT_EPSILON),
            vec![CouplingKind::ScaleInvariant; 3]
        );
    }

    #[test]
    fn every_request_pattern_is_achieved() {
        use CouplingRequest::{HighPass, LowPass};
        for p12 in [HighPass, LowPass] {
            for p23 in [HighPass, LowPass] {
                for p31 in [HighPass, LowPass] {
                    let spec = FilterSpec {
                        pair_12: p12,
                        pair_23: p23,
                        pair_31: p31,
                    };
                    let outcome = design_branching_filter(&spec).unwrap();
                    for ((i, j, request), achieved) in
                        spec.requests().iter().zip(&outcome.report)
                    {
                        assert_eq!((achieved.i, achieved.j), (*i, *j));
                        assert_eq!(
                            achieved.kind,
                            request.target(),
                            "pair ({i}, {j}) of {spec:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn softened_coupling_fades_with_the_chart_parameter() {
        let mut previous = f64::INFINITY;
        for denom in [3.0, 6.0, 12.0, 24.0] {
            let pair = make_case(&CaseParameters::Rank2StN3 {
                s11: 6.0,
                s12: c(6.0 / denom, 0.0),
                s22: 6.0 / (denom * denom),
                t1: c(1.0 / 3.0, 0.0),
                t2: c(0.0, 0.0),
            })
            .unwrap();
            let report = pair_coupling_class(&pair, 0.2).unwrap();
            let t0 = report
                .iter()
                .find(|p| (p.i, p.j) == (2, 0))
                .expect("pair (3,1) present")
                .t0;
            assert!(
                t0 < previous,
                "plateau must shrink as the chart parameter fades: {t0} vs {previous}"
            );
            previous = t0;
        }
    }
}
