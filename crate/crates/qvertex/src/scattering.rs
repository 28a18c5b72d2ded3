//! Scattering matrices, scattering solutions, and asymptotic limits.
//!
//! For a vertex `A psi + B psi' = 0` probed by a plane wave of wave
//! number `k > 0`, the on-shell scattering matrix is
//!
//! ```text
//! S(k) = -(A + ikB)^{-1} (A - ikB),
//! ```
//!
//! unitary whenever the pair is admissible. Reflections sit on the
//! diagonal, the transmission amplitude from line `j` into line `i` at
//! entry `(i, j)`. Swapping the roles of `A` and `B` produces the dual
//! vertex whose scattering matrix is `-S(-1/k)` — low and high wave
//! numbers trade places — which is why [`s_matrix_at`] accepts negative
//! arguments even though physical wave numbers are positive.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::vertex::BoundaryPair;

/// Max-norm bound on `S†S - I` accepted as unitary.
pub const UNITARITY_TOL: f64 = 1e-10;

/// Wave number used for the low-energy limit.
pub const ASYMPTOTIC_K_LO: f64 = 1e-6;
/// Wave number used for the high-energy limit.
pub const ASYMPTOTIC_K_HI: f64 = 1e6;
/// Refinement disagreement above which limits are flagged unstable.
pub const ASYMPTOTIC_STABILITY_TOL: f64 = 1e-6;

/// The scattering matrix at a fixed wave number.
#[derive(Debug, Clone)]
pub struct ScatteringMatrix {
    k: f64,
    m: ComplexMatrix,
}

impl ScatteringMatrix {
    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    /// Reflection amplitude on line `i`.
    pub fn reflection(&self, i: usize) -> Complex64 {
        self.m[(i, i)]
    }

    /// Transmission amplitude from line `j` into line `i`.
    pub fn transmission(&self, i: usize, j: usize) -> Complex64 {
        assert_ne!(i, j, "transmission needs two distinct lines");
        self.m[(i, j)]
    }

    /// Max-norm distance of `S†S` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.m.rows();
        self.m
            .dagger()
            .mul(&self.m)
            .sub(&ComplexMatrix::identity(n))
            .max_abs()
    }
}

/// Evaluates the scattering-matrix formula at any non-zero real wave
/// number. Negative arguments arise only through the high-low duality
/// identity; physical callers want [`s_matrix`].
pub fn s_matrix_at(pair: &BoundaryPair, k: f64) -> Result<ComplexMatrix> {
    if k == 0.0 || !k.is_finite() {
        return Err(Error::Parameter(format!(
            "wave number must be non-zero and finite, got {k}"
        )));
    }
    let ikb = pair.b().scale(Complex64::new(0.0, k));
    let plus = pair.a().add(&ikb);
    let minus = pair.a().sub(&ikb);
    Ok(plus.solve(&minus)?.scale(Complex64::new(-1.0, 0.0)))
}

/// The scattering matrix at physical wave number `k > 0`.
pub fn s_matrix(pair: &BoundaryPair, k: f64) -> Result<ScatteringMatrix> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::Parameter(format!(
            "wave number must be positive and finite, got {k}"
        )));
    }
    Ok(ScatteringMatrix {
        k,
        m: s_matrix_at(pair, k)?,
    })
}

/// The counterpart vertex `B psi + A psi' = 0`.
pub fn dual_boundary(pair: &BoundaryPair) -> BoundaryPair {
    pair.swapped()
}

/// Boundary data of the stationary solution for a wave entering on one
/// line: `psi_i = delta_ij + S_ij`, `psi'_i = ik (S_ij - delta_ij)`.
#[derive(Debug, Clone)]
pub struct ScatteringSolution {
    /// Incoming line (0-based).
    pub line: usize,
    pub k: f64,
    pub reflection: Complex64,
    /// `(i, amplitude)` for every outgoing line `i != line`.
    pub transmissions: Vec<(usize, Complex64)>,
    pub psi: Vec<Complex64>,
    pub psi_prime: Vec<Complex64>,
}

impl ScatteringSolution {
    /// Max-norm residual of `A psi + B psi'`.
    pub fn boundary_residual(&self, pair: &BoundaryPair) -> f64 {
        let n = pair.n();
        let mut residual: f64 = 0.0;
        for row in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for col in 0..n {
                acc += pair.a()[(row, col)] * self.psi[col]
                    + pair.b()[(row, col)] * self.psi_prime[col];
            }
            residual = residual.max(acc.norm());
        }
        residual
    }

    /// Deviation of the outgoing flux from unity.
    pub fn flux_defect(&self) -> f64 {
        let total = self.reflection.norm_sqr()
            + self
                .transmissions
                .iter()
                .map(|(_, t)| t.norm_sqr())
                .sum::<f64>();
        (total - 1.0).abs()
    }
}

/// Scattering solution for a wave entering on `line` at wave number `k`.
pub fn scattering_solution(pair: &BoundaryPair, line: usize, k: f64) -> Result<ScatteringSolution> {
    let n = pair.n();
    if line >= n {
        return Err(Error::LineIndex { index: line, n });
    }
    let sm = s_matrix(pair, k)?;
    let ik = Complex64::new(0.0, k);
    let mut psi = Vec::with_capacity(n);
    let mut psi_prime = Vec::with_capacity(n);
    let mut transmissions = Vec::with_capacity(n - 1);
    for i in 0..n {
        let s_entry = sm.matrix()[(i, line)];
        let delta = if i == line {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        psi.push(s_entry + delta);
        psi_prime.push(ik * (s_entry - delta));
        if i != line {
            transmissions.push((i, s_entry));
        }
    }
    Ok(ScatteringSolution {
        line,
        k,
        reflection: sm.reflection(line),
        transmissions,
        psi,
        psi_prime,
    })
}

/// Numerical `k -> 0` and `k -> infinity` limits of the scattering
/// matrix, with a Richardson error estimate.
#[derive(Debug, Clone)]
pub struct AsymptoticLimits {
    pub low: ComplexMatrix,
    pub high: ComplexMatrix,
    pub low_error: f64,
    pub high_error: f64,
    /// True when either refinement still moved by more than
    /// [`ASYMPTOTIC_STABILITY_TOL`].
    pub unstable: bool,
}

impl AsymptoticLimits {
    /// `|T_ij(0)|`.
    pub fn t0(&self, i: usize, j: usize) -> f64 {
        self.low[(i, j)].norm()
    }

    /// `|T_ij(infinity)|`.
    pub fn tinf(&self, i: usize, j: usize) -> f64 {
        self.high[(i, j)].norm()
    }
}

fn refine_toward(pair: &BoundaryPair, ks: [f64; 3]) -> Result<(ComplexMatrix, f64)> {
    // S is analytic in 1/(a + ik b) entries; along a geometric ladder of
    // evaluation points the leading deviation from the limit is linear
    // in the step, so 2 f(next) - f(prev) cancels it. Two such
    // extrapolations give the estimate and its error in one go.
    let f0 = s_matrix_at(pair, ks[0])?;
    let f1 = s_matrix_at(pair, ks[1])?;
    let f2 = s_matrix_at(pair, ks[2])?;
    let two = Complex64::new(2.0, 0.0);
    let r1 = f1.scale(two).sub(&f0);
    let r2 = f2.scale(two).sub(&f1);
    let err = r2.sub(&r1).max_abs();
    Ok((r2, err))
}

/// Estimates `S(0)` and `S(infinity)` by Richardson refinement at the
/// ends of the accessible wave-number range.
pub fn asymptotic_limits(pair: &BoundaryPair) -> Result<AsymptoticLimits> {
    let k0 = ASYMPTOTIC_K_LO;
    let k1 = ASYMPTOTIC_K_HI;
    let (low, low_error) = refine_toward(pair, [k0, k0 / 2.0, k0 / 4.0])?;
    let (high, high_error) = refine_toward(pair, [k1, 2.0 * k1, 4.0 * k1])?;
    let unstable = low_error > ASYMPTOTIC_STABILITY_TOL || high_error > ASYMPTOTIC_STABILITY_TOL;
    Ok(AsymptoticLimits {
        low,
        high,
        low_error,
        high_error,
        unstable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c;
    use crate::vertex::{make_delta, make_delta_prime, make_scale_invariant, STForm};
    use crate::DEFAULT_RANK_TOL;
    use proptest::prelude::*;

    fn dirichlet(n: usize) -> BoundaryPair {
        BoundaryPair::new(ComplexMatrix::identity(n), ComplexMatrix::zeros(n, n)).unwrap()
    }

    fn neumann(n: usize) -> BoundaryPair {
        BoundaryPair::new(ComplexMatrix::zeros(n, n), ComplexMatrix::identity(n)).unwrap()
    }

    #[test]
    fn dirichlet_reflects_with_sign_flip() {
        let pair = dirichlet(3);
        for &k in &[0.1, 1.0, 10.0] {
            let sm = s_matrix(&pair, k).unwrap();
            let target = ComplexMatrix::identity(3).scale(c(-1.0, 0.0));
            assert!(sm.matrix().sub(&target).max_abs() < 1e-14);
        }
    }

    #[test]
    fn neumann_reflects_without_sign_flip() {
        let pair = neumann(2);
        let sm = s_matrix(&pair, 0.7).unwrap();
        assert!(sm.matrix().sub(&ComplexMatrix::identity(2)).max_abs() < 1e-14);
    }

    #[test]
    fn point_interaction_splits_flux_evenly_at_matched_k() {
        // Strength 2, unit coupling, k = 1: T = 2/(2 + 2i), so both
        // probabilities are 1/2.
        let pair = make_delta(2, 2.0, &[c(1.0, 0.0)]).unwrap();
        let sm = s_matrix(&pair, 1.0).unwrap();
        let t = sm.transmission(0, 1);
        let expected = c(2.0, 0.0) / c(2.0, 2.0);
        assert!((t - expected).norm() < 1e-13);
        assert!((t.norm_sqr() - 0.5).abs() < 1e-13);
        assert!((sm.reflection(0).norm_sqr() - 0.5).abs() < 1e-13);
    }

    #[test]
    fn free_junction_is_transparent() {
        let pair = make_delta(2, 0.0, &[c(1.0, 0.0)]).unwrap();
        let sol = scattering_solution(&pair, 0, 3.0).unwrap();
        assert!(sol.reflection.norm() < 1e-14);
        assert_eq!(sol.transmissions.len(), 1);
        assert!((sol.transmissions[0].1 - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn solutions_satisfy_the_boundary_condition() {
        let pair = make_delta(3, 2.0, &[c(0.5, 0.5), c(-0.25, 0.75)]).unwrap();
        for line in 0..3 {
            for &k in &[0.01, 1.0, 250.0] {
                let sol = scattering_solution(&pair, line, k).unwrap();
                assert!(sol.boundary_residual(&pair) < 1e-10);
                assert!(sol.flux_defect() < 1e-12);
            }
        }
    }

    #[test]
    fn out_of_range_line_is_rejected() {
        let pair = dirichlet(2);
        match scattering_solution(&pair, 2, 1.0) {
            Err(Error::LineIndex { index: 2, n: 2 }) => {}
            other => panic!("expected line-index error, got {other:?}"),
        }
    }

    #[test]
    fn scale_invariant_vertex_has_constant_s_matrix() {
        let pair = make_scale_invariant(3, &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let a = s_matrix(&pair, 0.01).unwrap();
        let b = s_matrix(&pair, 100.0).unwrap();
        assert!(a.matrix().sub(b.matrix()).max_abs() < 1e-12);
        let limits = asymptotic_limits(&pair).unwrap();
        assert!(!limits.unstable);
        assert!(limits.low.sub(&limits.high).max_abs() < 1e-9);
    }

    #[test]
    fn delta_limits_block_low_and_pass_high() {
        let t = 2.0_f64.sqrt().recip();
        let pair = make_delta(3, 2.0, &[c(t, 0.0), c(t, 0.0)]).unwrap();
        let limits = asymptotic_limits(&pair).unwrap();
        assert!(!limits.unstable);
        for (i, j) in [(0, 1), (1, 2), (2, 0)] {
            assert!(limits.t0(i, j) < 1e-9, "low limit should vanish");
            assert!(limits.tinf(i, j) > 0.4, "high limit should transmit");
        }
    }

    #[test]
    fn delta_prime_limits_pass_low_and_block_high() {
        let pair = make_delta_prime(3, 1.0, &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let limits = asymptotic_limits(&pair).unwrap();
        assert!(!limits.unstable);
        for (i, j) in [(0, 1), (1, 2), (2, 0)] {
            assert!((limits.t0(i, j).powi(2) - 4.0 / 9.0).abs() < 1e-9);
            assert!(limits.tinf(i, j) < 1e-9);
        }
    }

    fn small_complex() -> impl Strategy<Value = Complex64> {
        (-3.0..3.0_f64, -3.0..3.0_f64).prop_map(|(re, im)| c(re, im))
    }

    fn random_pair(n: usize) -> impl Strategy<Value = BoundaryPair> {
        (0..=n).prop_flat_map(move |r| {
            let s_entries = proptest::collection::vec(small_complex(), r * r);
            let t_entries = proptest::collection::vec(small_complex(), r * (n - r));
            let wiggle = proptest::collection::vec(small_complex(), n * n);
            (s_entries, t_entries, wiggle).prop_map(move |(se, te, we)| {
                let raw = ComplexMatrix::from_fn(r, r, |i, j| se[i * r.max(1) + j]);
                let s = raw.add(&raw.dagger()).scale(c(0.5, 0.0));
                let t = ComplexMatrix::from_fn(r, n - r, |i, j| te[i * (n - r) + j]);
                let form = STForm::new(n, s, t, (0..n).collect()).unwrap();
                let mut cmat = ComplexMatrix::identity(n);
                for i in 0..n {
                    for j in 0..n {
                        cmat[(i, j)] += we[i * n + j] / (7.0 * n as f64);
                    }
                }
                form.assemble().unwrap().left_multiplied(&cmat).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn s_matrices_are_unitary(pair in random_pair(3), k_exp in -3.0..3.0_f64) {
            let sm = s_matrix(&pair, 10f64.powf(k_exp)).unwrap();
            prop_assert!(sm.unitarity_defect() <= UNITARITY_TOL);
        }

        #[test]
        fn duality_swaps_low_and_high(pair in random_pair(3), k_exp in -1.0..1.0_f64) {
            let k = 10f64.powf(k_exp);
            let dual = dual_boundary(&pair);
            prop_assert!(dual.is_admissible(DEFAULT_RANK_TOL));
            let sd = s_matrix_at(&dual, k).unwrap();
            let original_mirrored = s_matrix_at(&pair, -1.0 / k).unwrap().scale(c(-1.0, 0.0));
            prop_assert!(sd.sub(&original_mirrored).max_abs() <= 1e-10);
        }

        #[test]
        fn solutions_conserve_flux(pair in random_pair(2), k_exp in -2.0..2.0_f64) {
            let sol = scattering_solution(&pair, 1, 10f64.powf(k_exp)).unwrap();
            prop_assert!(sol.flux_defect() <= 1e-10);
            prop_assert!(sol.boundary_residual(&pair) <= 1e-9 * (1.0 + sol.k));
        }
    }
}
