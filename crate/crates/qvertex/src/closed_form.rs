//! Closed-form transmission amplitudes for the catalogued vertex
//! families.
//!
//! Every supported chart yields transmission amplitudes that are
//! rational functions of the wave number `k`. The numerator and
//! denominator coefficients are assembled symbolically from the chart
//! parameters, so the amplitudes can be evaluated at `k = 0` (and in
//! degenerate sub-families such as zero strength) where the matrix
//! formula has no meaning: common vanishing low-order coefficients are
//! cancelled before evaluation.
//!
//! Unprinted orientations come from the exchange identity
//! `T_ji(k) = conj(T_ij(-k))`, which holds for every admissible vertex
//! because the inverse of the scattering matrix is both its adjoint and
//! its value at `-k`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scattering::s_matrix;
use crate::vertex::{make_case, CaseParameters};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Relative size below which a leading coefficient counts as zero when
/// reducing a rational function.
const COEFF_CANCEL_TOL: f64 = 1e-14;

/// A rational function of `k`; coefficients ascend in powers of `k`.
#[derive(Debug, Clone)]
struct Rational {
    num: Vec<Complex64>,
    den: Vec<Complex64>,
}

fn horner(coeffs: &[Complex64], k: f64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * k + c)
}

impl Rational {
    fn new(num: Vec<Complex64>, den: Vec<Complex64>) -> Self {
        Rational { num, den }
    }

    /// The exchanged-orientation amplitude `k -> conj(self(-k))`.
    fn mirrored(&self) -> Rational {
        let flip = |v: &[Complex64]| {
            v.iter()
                .enumerate()
                .map(|(m, a)| if m % 2 == 0 { a.conj() } else { -a.conj() })
                .collect::<Vec<_>>()
        };
        Rational::new(flip(&self.num), flip(&self.den))
    }

    fn eval(&self, k: f64) -> Result<Complex64> {
        let peak = |v: &[Complex64]| v.iter().map(|z| z.norm()).fold(0.0_f64, f64::max);
        let num_scale = peak(&self.num);
        let den_scale = peak(&self.den);
        // Strip common factors of k that only exist because a parameter
        // sits at a degenerate value; this keeps k = 0 evaluable.
        let mut lo = 0usize;
        while lo + 1 < self.den.len()
            && self.den[lo].norm() <= COEFF_CANCEL_TOL * den_scale
            && self
                .num
                .get(lo)
                .map_or(true, |z| z.norm() <= COEFF_CANCEL_TOL * num_scale)
        {
            lo += 1;
        }
        let num_val = horner(&self.num[lo.min(self.num.len())..], k);
        let den_val = horner(&self.den[lo..], k);
        if den_val.norm() == 0.0 {
            return Err(Error::Degenerate(format!(
                "amplitude denominator vanishes at k = {k}"
            )));
        }
        Ok(num_val / den_val)
    }
}

/// Named denominator data for the four `n = 3` charts that carry one.
///
/// Fields are the real coefficients of the common denominator written
/// in ascending powers of `k` (up to the stated factors of `i`), plus
/// whatever matrix data feeds the numerators.
#[derive(Debug, Clone)]
pub enum AmplitudeCoefficients {
    /// Rank-2 carrier whose strength block is a scaled projector; the
    /// common denominator is `d1 k + i s d0`.
    RankOneStrength { d0: f64, d1: f64 },
    /// Rank-2 carrier, general strength block; the denominator is
    /// `e2 k^2 + i e1 k + e0`.
    RankTwoGeneral { e0: f64, e1: f64, e2: f64 },
    /// Full-rank derivative coupling with a singular (rank-2) strength
    /// matrix; the denominator reduces to `k^2 + i f1 k + f0`.
    RankTwoStrength { f0: f64, f1: f64 },
    /// Full-rank derivative coupling with an invertible strength
    /// matrix; the denominator is the characteristic cubic
    /// `k^3 + i trace k^2 - minor_sum k - i det`, and the adjugate of
    /// the strength matrix feeds the numerators.
    FullStrength {
        trace: f64,
        minor_sum: f64,
        det: f64,
        adjugate: ComplexMatrix,
    },
}

fn hermitian3(
    s11: f64,
    s12: Complex64,
    s13: Complex64,
    s22: f64,
    s23: Complex64,
    s33: f64,
) -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        vec![re(s11), s12, s13],
        vec![s12.conj(), re(s22), s23],
        vec![s13.conj(), s23.conj(), re(s33)],
    ])
    .expect("fixed-shape rows")
}

fn det3(m: &ComplexMatrix) -> Complex64 {
    m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
        - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
        + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)])
}

fn adjugate3(m: &ComplexMatrix) -> ComplexMatrix {
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
        m[(r0, c0)] * m[(r1, c1)] - m[(r0, c1)] * m[(r1, c0)]
    };
    // adj(M)[i][j] is the (j, i) cofactor.
    ComplexMatrix::from_rows(&[
        vec![minor(1, 2, 1, 2), -minor(0, 2, 1, 2), minor(0, 1, 1, 2)],
        vec![-minor(1, 2, 0, 2), minor(0, 2, 0, 2), -minor(0, 1, 0, 2)],
        vec![minor(1, 2, 0, 1), -minor(0, 2, 0, 1), minor(0, 1, 0, 1)],
    ])
    .expect("fixed-shape rows")
}

/// True when the 2x2 strength block lies in the scaled-projector chart
/// `[[s, cs], [conj(c) s, |c|^2 s]]`, i.e. it is singular with a
/// non-zero leading entry.
fn rank_one_chart(s11: f64, s12: Complex64, s22: f64) -> bool {
    let scale = s11.abs().max(s12.norm()).max(s22.abs());
    scale > 0.0 && s11 != 0.0 && (s11 * s22 - s12.norm_sqr()).abs() <= 1e-12 * scale * scale
}

/// Extracts the named denominator coefficients of the chart, for the
/// four `n = 3` families that have a catalogued set.
pub fn amplitude_coefficients(params: &CaseParameters) -> Result<AmplitudeCoefficients> {
    match *params {
        CaseParameters::Rank2StN3 {
            s11,
            s12,
            s22,
            t1,
            t2,
        } => {
            if rank_one_chart(s11, s12, s22) {
                let c = s12 / s11;
                let d0 = 1.0 + c.norm_sqr() + (c * t1.conj() - t2.conj()).norm_sqr();
                let d1 = 1.0 + t1.norm_sqr() + t2.norm_sqr();
                Ok(AmplitudeCoefficients::RankOneStrength { d0, d1 })
            } else {
                let e0 = s12.norm_sqr() - s11 * s22;
                let e1 = s11 + s22 + s22 * t1.norm_sqr() + s11 * t2.norm_sqr()
                    - 2.0 * (s12 * t1.conj() * t2).re;
                let e2 = 1.0 + t1.norm_sqr() + t2.norm_sqr();
                Ok(AmplitudeCoefficients::RankTwoGeneral { e0, e1, e2 })
            }
        }
        CaseParameters::Rank2ReverseN3 { s, q, r, c, d, .. } => {
            let delta = s * r - q.norm_sqr();
            let f = CaseParameters::corner_entry(s, q, r, c, d);
            let f0 = -delta * (1.0 + c.norm_sqr() + d.norm_sqr());
            let f1 = s + r + f;
            Ok(AmplitudeCoefficients::RankTwoStrength { f0, f1 })
        }
        CaseParameters::HermitianN3 {
            s11,
            s12,
            s13,
            s22,
            s23,
            s33,
        } => {
            let m = hermitian3(s11, s12, s13, s22, s23, s33);
            let minor_sum = (s22 * s33 - s23.norm_sqr())
                + (s11 * s33 - s13.norm_sqr())
                + (s11 * s22 - s12.norm_sqr());
            Ok(AmplitudeCoefficients::FullStrength {
                trace: s11 + s22 + s33,
                minor_sum,
                det: det3(&m).re,
                adjugate: adjugate3(&m),
            })
        }
        _ => Err(Error::UnsupportedCase(
            "no named denominator coefficients are catalogued for this chart".into(),
        )),
    }
}

/// Closed-form scattering amplitudes at one wave number.
#[derive(Debug, Clone)]
pub struct Amplitudes {
    pub k: f64,
    pub n: usize,
    /// `(i, j, T_ij)` in lexicographic order; `T_ij` is the amplitude
    /// into line `i` from line `j` (0-based).
    pub transmissions: Vec<(usize, usize, Complex64)>,
    /// Reflections by line, computed from the scattering matrix;
    /// `None` at `k = 0` where only the transmission limits exist.
    pub reflections: Option<Vec<Complex64>>,
}

impl Amplitudes {
    pub fn transmission(&self, i: usize, j: usize) -> Option<Complex64> {
        self.transmissions
            .iter()
            .find(|&&(a, b, _)| a == i && b == j)
            .map(|&(_, _, t)| t)
    }
}

/// Printed-orientation rationals for one chart, as a list of
/// `((i, j), rational)`; the remaining orientations are mirrored in by
/// the caller.
fn chart_rationals(params: &CaseParameters) -> Result<Vec<((usize, usize), Rational)>> {
    let two = re(2.0);
    match *params {
        CaseParameters::DeltaN2 { s, t } => {
            let den = vec![I * re(s), re(1.0 + t.norm_sqr())];
            Ok(vec![(
                (0, 1),
                Rational::new(vec![re(0.0), two * t], den),
            )])
        }
        CaseParameters::DeltaN3 { s, t2, t3 } => {
            let den = vec![I * re(s), re(1.0 + t2.norm_sqr() + t3.norm_sqr())];
            Ok(vec![
                ((2, 0), Rational::new(vec![re(0.0), two * t3.conj()], den.clone())),
                ((0, 1), Rational::new(vec![re(0.0), two * t2], den.clone())),
                ((1, 2), Rational::new(vec![re(0.0), two * t2.conj() * t3], den)),
            ])
        }
        CaseParameters::Rank2StN3 {
            s11,
            s12,
            s22,
            t1,
            t2,
        } => match amplitude_coefficients(params)? {
            AmplitudeCoefficients::RankOneStrength { d0, d1 } => {
                let s = re(s11);
                let c = s12 / s11;
                let den = vec![I * s * re(d0), re(d1)];
                let t31 = vec![two * I * c.conj() * s * (c * t1.conj() - t2.conj()), two * t1.conj()];
                let t12 = vec![-two * I * c * s, -two * t2.conj() * t1];
                let t23 = vec![-two * I * s * (c.conj() * t1 - t2), two * t2];
                Ok(vec![
                    ((2, 0), Rational::new(t31, den.clone())),
                    ((0, 1), Rational::new(t12, den.clone())),
                    ((1, 2), Rational::new(t23, den)),
                ])
            }
            AmplitudeCoefficients::RankTwoGeneral { e0, e1, e2 } => {
                let den = vec![re(e0), I * re(e1), re(e2)];
                let t31 = vec![
                    re(0.0),
                    two * I * (re(s22) * t1.conj() - s12.conj() * t2.conj()),
                    two * t1.conj(),
                ];
                let t12 = vec![re(0.0), -two * I * s12, -two * t2.conj() * t1];
                let t23 = vec![
                    re(0.0),
                    -two * I * (s12.conj() * t1 - re(s11) * t2),
                    two * t2,
                ];
                Ok(vec![
                    ((2, 0), Rational::new(t31, den.clone())),
                    ((0, 1), Rational::new(t12, den.clone())),
                    ((1, 2), Rational::new(t23, den)),
                ])
            }
            _ => unreachable!("rank-2 carrier charts map to the two cases above"),
        },
        CaseParameters::DeltaPrimeN2 { s, c } => {
            let den = vec![re(s) * re(1.0 + c.norm_sqr()), -I];
            Ok(vec![(
                (0, 1),
                Rational::new(vec![-two * re(s) * c], den),
            )])
        }
        CaseParameters::DeltaPrimeN3 { s, c, d } => {
            let den = vec![re(s) * re(1.0 + c.norm_sqr() + d.norm_sqr()), -I];
            let s_re = re(s);
            Ok(vec![
                ((2, 0), Rational::new(vec![-two * s_re * d.conj()], den.clone())),
                ((0, 1), Rational::new(vec![-two * s_re * c], den.clone())),
                ((1, 2), Rational::new(vec![-two * s_re * c.conj() * d], den)),
            ])
        }
        CaseParameters::Rank2ReverseN3 { s, q, r, c, d, .. } => {
            let (f0, f1) = match amplitude_coefficients(params)? {
                AmplitudeCoefficients::RankTwoStrength { f0, f1 } => (f0, f1),
                _ => unreachable!("reverse chart always yields the rank-2 set"),
            };
            let delta = re(s * r - q.norm_sqr());
            let den = vec![re(f0), I * re(f1), re(1.0)];
            let s31 = (c * re(s) + d * q).conj();
            let s12 = q;
            let s23 = c * q.conj() + d * re(r);
            let t31 = vec![two * c.conj() * delta, -two * I * s31];
            let t12 = vec![-two * c * d.conj() * delta, -two * I * s12];
            let t23 = vec![two * d * delta, -two * I * s23];
            Ok(vec![
                ((2, 0), Rational::new(t31, den.clone())),
                ((0, 1), Rational::new(t12, den.clone())),
                ((1, 2), Rational::new(t23, den)),
            ])
        }
        CaseParameters::HermitianN2 { s11, s12, s22 } => {
            let det = s11 * s22 - s12.norm_sqr();
            let den = vec![-I * re(det), re(-(s11 + s22)), I];
            Ok(vec![(
                (0, 1),
                Rational::new(vec![re(0.0), two * s12], den),
            )])
        }
        CaseParameters::HermitianN3 { .. } => {
            let (trace, minor_sum, det, adj) = match amplitude_coefficients(params)? {
                AmplitudeCoefficients::FullStrength {
                    trace,
                    minor_sum,
                    det,
                    adjugate,
                } => (trace, minor_sum, det, adjugate),
                _ => unreachable!("full chart always yields the cubic set"),
            };
            let s = match *params {
                CaseParameters::HermitianN3 {
                    s11,
                    s12,
                    s13,
                    s22,
                    s23,
                    s33,
                } => hermitian3(s11, s12, s13, s22, s23, s33),
                _ => unreachable!(),
            };
            let den = vec![-I * re(det), re(-minor_sum), I * re(trace), re(1.0)];
            let entry = |i: usize, j: usize| {
                Rational::new(
                    vec![re(0.0), -two * adj[(i, j)], -two * I * s[(i, j)]],
                    den.clone(),
                )
            };
            Ok(vec![
                ((2, 0), entry(2, 0)),
                ((0, 1), entry(0, 1)),
                ((1, 2), entry(1, 2)),
            ])
        }
    }
}

/// Evaluates the chart's closed-form transmission amplitudes at
/// `k >= 0`; reflections are filled in from the scattering matrix for
/// `k > 0`.
pub fn closed_form_amplitudes(params: &CaseParameters, k: f64) -> Result<Amplitudes> {
    if !(k >= 0.0) || !k.is_finite() {
        return Err(Error::Parameter(format!(
            "wave number must be non-negative and finite, got {k}"
        )));
    }
    let pair = make_case(params)?;
    let n = params.n();
    let mut entries = chart_rationals(params)?;
    let printed: Vec<((usize, usize), Rational)> = entries.clone();
    for ((i, j), rational) in printed {
        entries.push(((j, i), rational.mirrored()));
    }
    entries.sort_by_key(|&((i, j), _)| (i, j));

    let mut transmissions = Vec::with_capacity(entries.len());
    for ((i, j), rational) in &entries {
        transmissions.push((*i, *j, rational.eval(k)?));
    }
    let reflections = if k > 0.0 {
        let sm = s_matrix(&pair, k)?;
        Some((0..n).map(|i| sm.reflection(i)).collect())
    } else {
        None
    };
    Ok(Amplitudes {
        k,
        n,
        transmissions,
        reflections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c;
    use proptest::prelude::*;

    fn assert_matches_matrix(params: &CaseParameters, k: f64, tol: f64) {
        let amps = closed_form_amplitudes(params, k).unwrap();
        let pair = make_case(params).unwrap();
        let sm = s_matrix(&pair, k).unwrap();
        for &(i, j, t) in &amps.transmissions {
            let reference = sm.transmission(i, j);
            assert!(
                (t - reference).norm() <= tol,
                "entry ({i}, {j}) at k = {k}: formula {t}, matrix {reference}"
            );
        }
        let refl = amps.reflections.expect("k > 0 fills reflections");
        for (i, &r) in refl.iter().enumerate() {
            assert!((r - sm.reflection(i)).norm() <= tol);
        }
    }

    #[test]
    fn point_interaction_amplitude_matches_matrix_and_limit() {
        let params = CaseParameters::DeltaN2 {
            s: 2.0,
            t: c(1.0, 0.0),
        };
        assert_matches_matrix(&params, 1.0, 1e-13);
        let at_zero = closed_form_amplitudes(&params, 0.0).unwrap();
        assert!(at_zero.reflections.is_none());
        assert!(at_zero.transmission(0, 1).unwrap().norm() < 1e-15);
    }

    #[test]
    fn zero_strength_amplitude_is_scale_invariant() {
        let params = CaseParameters::DeltaN2 {
            s: 0.0,
            t: c(1.0, 0.0),
        };
        for &k in &[0.0, 1e-3, 1.0, 1e3] {
            let amps = closed_form_amplitudes(&params, k).unwrap();
            let t = amps.transmission(0, 1).unwrap();
            assert!((t - c(1.0, 0.0)).norm() < 1e-14, "free junction passes everything");
        }
    }

    #[test]
    fn derivative_coupling_amplitude_documents_its_sign() {
        // At k -> 0 the rank-1 derivative-side vertex transmits
        // -2 s_ij / tr S, with the opposite sign of the couplings.
        let params = CaseParameters::DeltaPrimeN3 {
            s: 1.0,
            c: c(1.0, 0.0),
            d: c(1.0, 0.0),
        };
        let amps = closed_form_amplitudes(&params, 0.0).unwrap();
        for (i, j) in [(0, 1), (1, 2), (2, 0)] {
            let t = amps.transmission(i, j).unwrap();
            assert!((t - c(-2.0 / 3.0, 0.0)).norm() < 1e-14);
        }
        assert_matches_matrix(&params, 0.5, 1e-12);
    }

    #[test]
    fn named_coefficients_match_hand_values() {
        let rank1 = CaseParameters::Rank2StN3 {
            s11: 6.0,
            s12: c(2.0, 0.0),
            s22: 2.0 / 3.0,
            t1: c(1.0 / 3.0, 0.0),
            t2: c(0.0, 0.0),
        };
        match amplitude_coefficients(&rank1).unwrap() {
            AmplitudeCoefficients::RankOneStrength { d0, d1 } => {
                assert!((d0 - 91.0 / 81.0).abs() < 1e-14);
                assert!((d1 - 10.0 / 9.0).abs() < 1e-14);
            }
            other => panic!("expected the rank-one chart, got {other:?}"),
        }

        let full = CaseParameters::HermitianN3 {
            s11: -1.0 / 3.0,
            s12: c(-1.0, 0.0),
            s13: c(1.0, 0.0),
            s22: 1.0,
            s23: c(-3.0, 0.0),
            s33: -4.0,
        };
        match amplitude_coefficients(&full).unwrap() {
            AmplitudeCoefficients::FullStrength {
                trace,
                minor_sum,
                det,
                adjugate,
            } => {
                assert!((trace + 10.0 / 3.0).abs() < 1e-12);
                assert!((minor_sum + 14.0).abs() < 1e-12);
                assert!((det - 40.0 / 3.0).abs() < 1e-12);
                let s = hermitian3(-1.0 / 3.0, c(-1.0, 0.0), c(1.0, 0.0), 1.0, c(-3.0, 0.0), -4.0);
                let product = adjugate.mul(&s);
                let target = ComplexMatrix::identity(3).scale(re(det));
                assert!(product.sub(&target).max_abs() < 1e-12);
            }
            other => panic!("expected the full chart, got {other:?}"),
        }
    }

    #[test]
    fn charts_without_catalogued_coefficients_are_reported() {
        let params = CaseParameters::DeltaN3 {
            s: 1.0,
            t2: c(1.0, 0.0),
            t3: c(1.0, 0.0),
        };
        assert!(matches!(
            amplitude_coefficients(&params),
            Err(Error::UnsupportedCase(_))
        ));
    }

    #[test]
    fn negative_wave_numbers_are_rejected() {
        let params = CaseParameters::DeltaN2 {
            s: 1.0,
            t: c(1.0, 0.0),
        };
        assert!(matches!(
            closed_form_amplitudes(&params, -1.0),
            Err(Error::Parameter(_))
        ));
    }

    fn small_complex() -> impl Strategy<Value = Complex64> {
        (-2.0..2.0_f64, -2.0..2.0_f64).prop_map(|(re, im)| c(re, im))
    }

    fn nonzero_real() -> impl Strategy<Value = f64> {
        (0.2..4.0_f64, prop::bool::ANY).prop_map(|(m, neg)| if neg { -m } else { m })
    }

    fn k_grid() -> impl Strategy<Value = f64> {
        (-3.0..3.0_f64).prop_map(|e| 10f64.powf(e))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn delta_n2_agrees_with_matrix(s in -4.0..4.0_f64, t in small_complex(), k in k_grid()) {
            prop_assume!(t.norm() > 1e-3);
            assert_matches_matrix(&CaseParameters::DeltaN2 { s, t }, k, 1e-10);
        }

        #[test]
        fn delta_n3_agrees_with_matrix(
            s in -4.0..4.0_f64,
            t2 in small_complex(),
            t3 in small_complex(),
            k in k_grid(),
        ) {
            assert_matches_matrix(&CaseParameters::DeltaN3 { s, t2, t3 }, k, 1e-10);
        }

        #[test]
        fn rank_one_chart_agrees_with_matrix(
            s in nonzero_real(),
            cc in small_complex(),
            t1 in small_complex(),
            t2 in small_complex(),
            k in k_grid(),
        ) {
            let params = CaseParameters::Rank2StN3 {
                s11: s,
                s12: cc * s,
                s22: cc.norm_sqr() * s,
                t1,
                t2,
            };
            let in_chart = matches!(
                amplitude_coefficients(&params).unwrap(),
                AmplitudeCoefficients::RankOneStrength { .. }
            );
            prop_assert!(in_chart, "projector chart should be detected");
            assert_matches_matrix(&params, k, 1e-10);
        }

        #[test]
        fn rank_two_chart_agrees_with_matrix(
            s11 in -3.0..3.0_f64,
            s12 in small_complex(),
            s22 in -3.0..3.0_f64,
            t1 in small_complex(),
            t2 in small_complex(),
            k in k_grid(),
        ) {
            assert_matches_matrix(
                &CaseParameters::Rank2StN3 { s11, s12, s22, t1, t2 },
                k,
                1e-10,
            );
        }

        #[test]
        fn delta_prime_n2_agrees_with_matrix(
            s in nonzero_real(),
            cc in small_complex(),
            k in k_grid(),
        ) {
            assert_matches_matrix(&CaseParameters::DeltaPrimeN2 { s, c: cc }, k, 1e-10);
        }

        #[test]
        fn delta_prime_n3_agrees_with_matrix(
            s in nonzero_real(),
            cc in small_complex(),
            d in small_complex(),
            k in k_grid(),
        ) {
            assert_matches_matrix(&CaseParameters::DeltaPrimeN3 { s, c: cc, d }, k, 1e-10);
        }

        #[test]
        fn reverse_chart_agrees_with_matrix(
            s in nonzero_real(),
            r in nonzero_real(),
            q in small_complex(),
            cc in small_complex(),
            d in small_complex(),
            k in k_grid(),
        ) {
            let delta = s * r - q.norm_sqr();
            prop_assume!(delta.abs() > 0.1);
            let params = CaseParameters::Rank2ReverseN3 { s, q, r, c: cc, d, f: None };
            assert_matches_matrix(&params, k, 1e-10);
        }

        #[test]
        fn hermitian_n2_agrees_with_matrix(
            s11 in -3.0..3.0_f64,
            s12 in small_complex(),
            s22 in -3.0..3.0_f64,
            k in k_grid(),
        ) {
            assert_matches_matrix(&CaseParameters::HermitianN2 { s11, s12, s22 }, k, 1e-10);
        }

        #[test]
        fn hermitian_n3_agrees_with_matrix(
            s11 in -3.0..3.0_f64,
            s22 in -3.0..3.0_f64,
            s33 in -3.0..3.0_f64,
            s12 in small_complex(),
            s13 in small_complex(),
            s23 in small_complex(),
            k in k_grid(),
        ) {
            assert_matches_matrix(
                &CaseParameters::HermitianN3 { s11, s12, s13, s22, s23, s33 },
                k,
                1e-10,
            );
        }
    }
}
