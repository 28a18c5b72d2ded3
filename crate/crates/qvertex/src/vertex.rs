//! Boundary pairs, their normal forms, and the rank-based taxonomy.
//!
//! A vertex of degree `n` is a pair `(A, B)` of `n x n` complex matrices
//! imposing `A psi + B psi' = 0` on boundary values and outward
//! derivatives. The pair is only physical (self-adjoint vertex) when
//! `[A | B]` has full rank and `A B†` is Hermitian; every public
//! constructor here produces such pairs, and [`validate_admissible`]
//! checks arbitrary input.
//!
//! Two normal forms organise the zoo: the ST form, where `B` is reduced
//! to `[[I, T], [0, 0]]` and `A` to `[[-S, 0], [T†, -I]]` (up to an
//! invertible left factor and a relabeling of lines), and the reverse ST
//! form with the roles of `A` and `B` exchanged. The block sizes are set
//! by `rank B` (resp. `rank A`), and the Hermitian block `S` carries the
//! strength content of the coupling.

use num_complex::Complex64;

use crate::error::{AdmissibilityViolation, Error, Result};
use crate::matrix::{numerical_rank, rank_info, ComplexMatrix};
use crate::DEFAULT_HERMITIAN_TOL;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative threshold for accepting a column during pivot scanning.
const PIVOT_SCAN_TOL: f64 = 1e-10;

/// Relative bound on the symmetrization defect of an extracted `S`.
const SYMMETRIZE_TOL: f64 = 1e-9;

/// A boundary condition `A psi + B psi' = 0` on `n` half-lines.
///
/// Construction checks shape and finiteness only; admissibility is a
/// separate, tolerance-dependent question answered by
/// [`BoundaryPair::admissible`].
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPair {
    n: usize,
    a: ComplexMatrix,
    b: ComplexMatrix,
}

impl BoundaryPair {
    pub fn new(a: ComplexMatrix, b: ComplexMatrix) -> Result<Self> {
        if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
            return Err(Error::Dimension(format!(
                "boundary matrices must be square and equally sized, got {}x{} and {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        if a.rows() == 0 {
            return Err(Error::Dimension("boundary matrices must be non-empty".into()));
        }
        a.check_finite()?;
        b.check_finite()?;
        Ok(BoundaryPair { n: a.rows(), a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn b(&self) -> &ComplexMatrix {
        &self.b
    }

    /// Checks self-adjointness of the vertex: `rank [A | B] = n` and
    /// `A B†` Hermitian, both within `rank_tol` (relative).
    pub fn admissible(&self, rank_tol: f64) -> Result<()> {
        validate_admissible(&self.a, &self.b, rank_tol)
    }

    pub fn is_admissible(&self, rank_tol: f64) -> bool {
        self.admissible(rank_tol).is_ok()
    }

    /// The pair `(C A, C B)`, describing the same vertex for invertible `C`.
    pub fn left_multiplied(&self, c: &ComplexMatrix) -> Result<BoundaryPair> {
        BoundaryPair::new(c.mul(&self.a), c.mul(&self.b))
    }

    /// Relabels lines: new line `l` takes the role of old line `sigma[l]`.
    ///
    /// Columns of both matrices are gathered accordingly, so the new pair
    /// constrains the permuted state vector exactly as the old pair
    /// constrained the original one.
    pub fn permute_lines(&self, sigma: &[usize]) -> Result<BoundaryPair> {
        check_permutation(sigma, self.n)?;
        let a = gather_columns(&self.a, sigma);
        let b = gather_columns(&self.b, sigma);
        BoundaryPair::new(a, b)
    }

    /// The counterpart vertex `B psi + A psi' = 0`.
    pub fn swapped(&self) -> BoundaryPair {
        BoundaryPair {
            n: self.n,
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }
}

fn check_permutation(sigma: &[usize], n: usize) -> Result<()> {
    if sigma.len() != n {
        return Err(Error::Dimension(format!(
            "permutation has length {}, expected {}",
            sigma.len(),
            n
        )));
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n {
            return Err(Error::LineIndex { index: s, n });
        }
        if seen[s] {
            return Err(Error::Parameter(format!(
                "index {s} repeats in the line permutation"
            )));
        }
        seen[s] = true;
    }
    Ok(())
}

fn gather_columns(m: &ComplexMatrix, sigma: &[usize]) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.rows(), m.cols(), |r, c| m[(r, sigma[c])])
}

fn scatter_columns(template: &ComplexMatrix, perm: &[usize]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(template.rows(), template.cols());
    for j in 0..template.cols() {
        for i in 0..template.rows() {
            out[(i, perm[j])] = template[(i, j)];
        }
    }
    out
}

/// Validates the self-adjointness conditions for a candidate `(A, B)`.
pub fn validate_admissible(a: &ComplexMatrix, b: &ComplexMatrix, rank_tol: f64) -> Result<()> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::Dimension(
            "admissibility needs square matrices of equal size".into(),
        ));
    }
    let n = a.rows();
    let stacked = a.hstack(b);
    let rank = numerical_rank(&stacked, rank_tol);
    if rank != n {
        return Err(Error::NotAdmissible(AdmissibilityViolation::RankDeficient {
            n,
            rank,
        }));
    }
    let ab = a.mul(&b.dagger());
    let defect = ab.hermitian_defect();
    let threshold = DEFAULT_HERMITIAN_TOL * ab.max_abs().max(1.0);
    if defect > threshold {
        return Err(Error::NotAdmissible(AdmissibilityViolation::NotSelfAdjoint {
            defect,
            threshold,
        }));
    }
    Ok(())
}

/// ST normal form: `B ~ [[I, T], [0, 0]]`, `A ~ [[-S, 0], [T†, -I]]`
/// after left multiplication and the line relabeling recorded in `perm`.
///
/// `perm[j]` is the (0-based) line carried by template column `j`; the
/// first `r` entries are the lines whose derivative block is invertible.
#[derive(Debug, Clone)]
pub struct STForm {
    pub n: usize,
    /// `rank B`.
    pub r: usize,
    /// Hermitian `r x r` strength block (units of inverse length).
    pub s: ComplexMatrix,
    /// Dimensionless `r x (n - r)` coupling block.
    pub t: ComplexMatrix,
    pub perm: Vec<usize>,
    /// Present when pivot selection had to fall back to a residual
    /// search, so entries of `S`, `T` may be poorly conditioned.
    pub conditioning_warning: Option<String>,
}

/// Reverse ST normal form: same template with `A` and `B` exchanged.
/// The strength block carries units of length here.
#[derive(Debug, Clone)]
pub struct ReverseSTForm {
    pub n: usize,
    /// `rank A`.
    pub r: usize,
    pub s: ComplexMatrix,
    pub t: ComplexMatrix,
    pub perm: Vec<usize>,
    pub conditioning_warning: Option<String>,
}

fn validate_form(n: usize, s: &ComplexMatrix, t: &ComplexMatrix, perm: &[usize]) -> Result<()> {
    let r = s.rows();
    if !s.is_square() {
        return Err(Error::Dimension("strength block must be square".into()));
    }
    if r > n {
        return Err(Error::Dimension(format!(
            "strength block of size {r} does not fit degree {n}"
        )));
    }
    if t.rows() != r || t.cols() != n - r {
        return Err(Error::Dimension(format!(
            "coupling block is {}x{}, expected {}x{}",
            t.rows(),
            t.cols(),
            r,
            n - r
        )));
    }
    s.check_finite()?;
    t.check_finite()?;
    check_permutation(perm, n)?;
    Ok(())
}

fn symmetrized(s: &ComplexMatrix) -> Result<ComplexMatrix> {
    let defect = s.hermitian_defect();
    if defect > SYMMETRIZE_TOL * s.max_abs().max(1.0) {
        return Err(Error::NonHermitian { asymmetry: defect });
    }
    let half = Complex64::new(0.5, 0.0);
    Ok(s.add(&s.dagger()).scale(half))
}

impl STForm {
    pub fn new(n: usize, s: ComplexMatrix, t: ComplexMatrix, perm: Vec<usize>) -> Result<Self> {
        validate_form(n, &s, &t, &perm)?;
        let s = symmetrized(&s)?;
        Ok(STForm {
            n,
            r: s.rows(),
            s,
            t,
            perm,
            conditioning_warning: None,
        })
    }

    /// Emits the templated boundary pair with the line relabeling applied.
    pub fn assemble(&self) -> Result<BoundaryPair> {
        let a = scatter_columns(&partner_template(self.n, self.r, &self.s, &self.t), &self.perm);
        let b = scatter_columns(&carrier_template(self.n, self.r, &self.t), &self.perm);
        BoundaryPair::new(a, b)
    }
}

impl ReverseSTForm {
    pub fn new(n: usize, s: ComplexMatrix, t: ComplexMatrix, perm: Vec<usize>) -> Result<Self> {
        validate_form(n, &s, &t, &perm)?;
        let s = symmetrized(&s)?;
        Ok(ReverseSTForm {
            n,
            r: s.rows(),
            s,
            t,
            perm,
            conditioning_warning: None,
        })
    }

    pub fn assemble(&self) -> Result<BoundaryPair> {
        let a = scatter_columns(&carrier_template(self.n, self.r, &self.t), &self.perm);
        let b = scatter_columns(&partner_template(self.n, self.r, &self.s, &self.t), &self.perm);
        BoundaryPair::new(a, b)
    }
}

/// `[[I, T], [0, 0]]` — the shape taken by the higher-rank matrix.
fn carrier_template(n: usize, r: usize, t: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| {
        if i >= r {
            ZERO
        } else if j < r {
            if i == j {
                ONE
            } else {
                ZERO
            }
        } else {
            t[(i, j - r)]
        }
    })
}

/// `[[-S, 0], [T†, -I]]` — the shape taken by the partner matrix.
fn partner_template(n: usize, r: usize, s: &ComplexMatrix, t: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| {
        if i < r && j < r {
            -s[(i, j)]
        } else if i < r {
            ZERO
        } else if j < r {
            t[(j, i - r)].conj()
        } else if i == j {
            -ONE
        } else {
            ZERO
        }
    })
}

struct ReducedCore {
    r: usize,
    s: ComplexMatrix,
    t: ComplexMatrix,
    perm: Vec<usize>,
    warning: Option<String>,
}

/// Shared reduction: brings `carrier` to `[[I, T], [0, 0]]` by row
/// operations and a column relabeling, dragging `partner` along, and
/// reads off the strength block from the reduced partner.
///
/// Pivot columns default to the leftmost independent set (first column
/// whose residual, after eliminating earlier pivots, exceeds a relative
/// threshold); `pivot_override` forces a caller-chosen chart instead.
fn reduce_core(
    carrier: &ComplexMatrix,
    partner: &ComplexMatrix,
    pivot_override: Option<&[usize]>,
    rank_tol: f64,
) -> Result<ReducedCore> {
    let n = carrier.rows();
    let r = numerical_rank(carrier, rank_tol);
    let scale = carrier.max_abs();
    let mut aug = carrier.hstack(partner);
    let mut used_row = vec![false; n];
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (column, row)
    let mut warning: Option<String> = None;

    let residual_peak = |aug: &ComplexMatrix, used: &[bool], col: usize| -> (usize, f64) {
        let mut best_row = usize::MAX;
        let mut best_mag = -1.0;
        for row in 0..n {
            if used[row] {
                continue;
            }
            let mag = aug[(row, col)].norm();
            if mag > best_mag {
                best_mag = mag;
                best_row = row;
            }
        }
        (best_row, best_mag)
    };

    let eliminate = |aug: &mut ComplexMatrix, row: usize, col: usize| {
        let pivot = aug[(row, col)];
        for c in 0..2 * n {
            aug[(row, c)] /= pivot;
        }
        for other in 0..n {
            if other == row {
                continue;
            }
            let factor = aug[(other, col)];
            if factor == ZERO {
                continue;
            }
            for c in 0..2 * n {
                let v = aug[(row, c)];
                aug[(other, c)] -= factor * v;
            }
        }
    };

    if let Some(requested) = pivot_override {
        if requested.len() != r {
            return Err(Error::Parameter(format!(
                "{} pivot columns requested, but the matrix has rank {}",
                requested.len(),
                r
            )));
        }
        let mut cols = requested.to_vec();
        cols.sort_unstable();
        cols.dedup();
        if cols.len() != r {
            return Err(Error::Parameter("pivot columns must be distinct".into()));
        }
        for &col in &cols {
            if col >= n {
                return Err(Error::LineIndex { index: col, n });
            }
            let (row, mag) = residual_peak(&aug, &used_row, col);
            if mag <= PIVOT_SCAN_TOL * scale {
                return Err(Error::Parameter(format!(
                    "requested pivot columns are linearly dependent (column {col} reduces to {mag:.3e})"
                )));
            }
            eliminate(&mut aug, row, col);
            used_row[row] = true;
            pivots.push((col, row));
        }
    } else {
        for col in 0..n {
            if pivots.len() == r {
                break;
            }
            let (row, mag) = residual_peak(&aug, &used_row, col);
            if mag > PIVOT_SCAN_TOL * scale {
                eliminate(&mut aug, row, col);
                used_row[row] = true;
                pivots.push((col, row));
            }
        }
        if pivots.len() < r {
            // The scan threshold rejected columns the rank decision kept:
            // take whatever has the largest residual until the count fits.
            warning = Some(
                "pivot scan fell back to residual-greedy column selection; \
                 the reduced blocks may be ill-conditioned"
                    .to_string(),
            );
            while pivots.len() < r {
                let mut best: Option<(usize, usize, f64)> = None;
                for col in 0..n {
                    if pivots.iter().any(|&(c, _)| c == col) {
                        continue;
                    }
                    let (row, mag) = residual_peak(&aug, &used_row, col);
                    if best.map_or(true, |(_, _, m)| mag > m) {
                        best = Some((col, row, mag));
                    }
                }
                let (col, row, mag) = best.ok_or_else(|| {
                    Error::Internal("pivot search exhausted all columns".into())
                })?;
                if mag == 0.0 {
                    return Err(Error::Degenerate(
                        "matrix rank and elimination disagree; cannot complete reduction".into(),
                    ));
                }
                eliminate(&mut aug, row, col);
                used_row[row] = true;
                pivots.push((col, row));
            }
        }
    }

    pivots.sort_unstable_by_key(|&(col, _)| col);
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(col, _)| col).collect();
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let mut row_order: Vec<usize> = pivots.iter().map(|&(_, row)| row).collect();
    row_order.extend((0..n).filter(|row| !used_row[*row]));

    let mut perm = pivot_cols.clone();
    perm.extend(free_cols.iter().copied());

    let t = ComplexMatrix::from_fn(r, n - r, |i, j| aug[(row_order[i], free_cols[j])]);

    let y = |i: usize, j: usize| aug[(row_order[i], n + j)];
    let y11 = ComplexMatrix::from_fn(r, r, |i, j| y(i, pivot_cols[j]));
    let y12 = ComplexMatrix::from_fn(r, n - r, |i, j| y(i, free_cols[j]));
    let y21 = ComplexMatrix::from_fn(n - r, r, |i, j| y(r + i, pivot_cols[j]));
    let y22 = ComplexMatrix::from_fn(n - r, n - r, |i, j| y(r + i, free_cols[j]));

    // For an admissible pair the lower partner rows satisfy
    // Y21 = -Y22 T†, which pins S without inverting anything.
    let t_dag = t.dagger();
    let consistency = y21.add(&y22.mul(&t_dag)).max_abs();
    let y_scale = aug.max_abs().max(1.0);
    if consistency > 1e-8 * y_scale {
        return Err(Error::Degenerate(format!(
            "reduction residual {consistency:.3e} too large; the pair is inconsistent or \
             too ill-conditioned to reduce"
        )));
    }

    let s_raw = y11.add(&y12.mul(&t_dag)).scale(-ONE);
    let s = symmetrized(&s_raw)?;

    // Rows beyond the rank should have emptied out in the carrier part.
    let mut leftover: f64 = 0.0;
    for i in r..n {
        for c in 0..n {
            leftover = leftover.max(aug[(row_order[i], c)].norm());
        }
    }
    if leftover > 1e-8 * scale.max(1.0) {
        let extra = format!(
            "carrier rows beyond rank {r} retain entries up to {leftover:.3e}"
        );
        warning = Some(match warning {
            Some(w) => format!("{w}; {extra}"),
            None => extra,
        });
    }

    Ok(ReducedCore {
        r,
        s,
        t,
        perm,
        warning,
    })
}

/// Reduces an admissible pair to its ST form.
pub fn to_st_form(pair: &BoundaryPair, rank_tol: f64) -> Result<STForm> {
    pair.admissible(rank_tol)?;
    let core = reduce_core(pair.b(), pair.a(), None, rank_tol)?;
    Ok(STForm {
        n: pair.n(),
        r: core.r,
        s: core.s,
        t: core.t,
        perm: core.perm,
        conditioning_warning: core.warning,
    })
}

/// ST form over a caller-chosen set of pivot lines (0-based columns of `B`).
pub fn to_st_form_with_pivots(
    pair: &BoundaryPair,
    pivots: &[usize],
    rank_tol: f64,
) -> Result<STForm> {
    pair.admissible(rank_tol)?;
    let core = reduce_core(pair.b(), pair.a(), Some(pivots), rank_tol)?;
    Ok(STForm {
        n: pair.n(),
        r: core.r,
        s: core.s,
        t: core.t,
        perm: core.perm,
        conditioning_warning: core.warning,
    })
}

/// Reduces an admissible pair to its reverse ST form (roles of `A` and
/// `B` exchanged; the strength block has units of length).
pub fn to_reverse_st_form(pair: &BoundaryPair, rank_tol: f64) -> Result<ReverseSTForm> {
    pair.admissible(rank_tol)?;
    let core = reduce_core(pair.a(), pair.b(), None, rank_tol)?;
    Ok(ReverseSTForm {
        n: pair.n(),
        r: core.r,
        s: core.s,
        t: core.t,
        perm: core.perm,
        conditioning_warning: core.warning,
    })
}

/// Reverse ST form over a caller-chosen set of pivot lines.
pub fn to_reverse_st_form_with_pivots(
    pair: &BoundaryPair,
    pivots: &[usize],
    rank_tol: f64,
) -> Result<ReverseSTForm> {
    pair.admissible(rank_tol)?;
    let core = reduce_core(pair.a(), pair.b(), Some(pivots), rank_tol)?;
    Ok(ReverseSTForm {
        n: pair.n(),
        r: core.r,
        s: core.s,
        t: core.t,
        perm: core.perm,
        conditioning_warning: core.warning,
    })
}

/// Named vertex families for `n = 2, 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseLabel {
    DirichletDisjoint,
    NeumannDisjoint,
    FtScaleInvariant,
    PartialScaleInvariant,
    DeltaFamily,
    DeltaPrimeFamily,
    MixedRank22,
    GenericRank23,
    GenericRank32,
    GenericFull,
    /// Degrees outside 2 and 3 carry no finer taxonomy; the rank triple
    /// in [`VertexClass`] is the whole story.
    GenericRankTriple,
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseLabel::DirichletDisjoint => "Dirichlet-disjoint",
            CaseLabel::NeumannDisjoint => "Neumann-disjoint",
            CaseLabel::FtScaleInvariant => "FT-scale-invariant",
            CaseLabel::PartialScaleInvariant => "partial-scale-invariant",
            CaseLabel::DeltaFamily => "delta-family",
            CaseLabel::DeltaPrimeFamily => "delta-prime-family",
            CaseLabel::MixedRank22 => "mixed-rank22",
            CaseLabel::GenericRank23 => "generic-rank23",
            CaseLabel::GenericRank32 => "generic-rank32",
            CaseLabel::GenericFull => "generic-full",
            CaseLabel::GenericRankTriple => "generic-rank-triple",
        };
        f.write_str(s)
    }
}

/// The rank triple of a vertex plus its case label.
#[derive(Debug, Clone)]
pub struct VertexClass {
    pub n: usize,
    pub r_a: usize,
    pub r_b: usize,
    pub r_s: usize,
    pub label: CaseLabel,
    /// Set when some singular value fell within a decade of the rank
    /// cut, so the triple is sensitive to the tolerance.
    pub ambiguous: bool,
}

impl VertexClass {
    pub fn describe(&self) -> String {
        format!(
            "{} (r_A={}, r_B={}, r_S={})",
            self.label, self.r_a, self.r_b, self.r_s
        )
    }
}

fn label_for(n: usize, r_a: usize, r_b: usize) -> CaseLabel {
    match (n, r_a, r_b) {
        (2, 2, 0) => CaseLabel::DirichletDisjoint,
        (2, 0, 2) => CaseLabel::NeumannDisjoint,
        (2, 1, 1) => CaseLabel::FtScaleInvariant,
        (2, 2, 1) => CaseLabel::DeltaFamily,
        (2, 1, 2) => CaseLabel::DeltaPrimeFamily,
        (2, 2, 2) => CaseLabel::GenericFull,
        (3, 3, 0) => CaseLabel::DirichletDisjoint,
        (3, 0, 3) => CaseLabel::NeumannDisjoint,
        (3, 2, 1) => CaseLabel::FtScaleInvariant,
        (3, 1, 2) => CaseLabel::PartialScaleInvariant,
        (3, 3, 1) => CaseLabel::DeltaFamily,
        (3, 1, 3) => CaseLabel::DeltaPrimeFamily,
        (3, 2, 2) => CaseLabel::MixedRank22,
        (3, 3, 2) => CaseLabel::GenericRank23,
        (3, 2, 3) => CaseLabel::GenericRank32,
        (3, 3, 3) => CaseLabel::GenericFull,
        _ => CaseLabel::GenericRankTriple,
    }
}

/// Classifies an admissible pair by its rank triple.
///
/// The identity `r_A + r_B = n + r_S` is recomputed from independent
/// rank decisions (on `A`, on `B`, and on the extracted `S` block) and
/// enforced exactly; a mismatch means the tolerance straddles a
/// borderline spectrum and is reported as an error rather than patched.
pub fn classify(pair: &BoundaryPair, rank_tol: f64) -> Result<VertexClass> {
    pair.admissible(rank_tol)?;
    let n = pair.n();
    let info_a = rank_info(pair.a(), rank_tol);
    let info_b = rank_info(pair.b(), rank_tol);
    let st = to_st_form(pair, rank_tol)?;
    let info_s = rank_info(&st.s, rank_tol);
    let (r_a, r_b, r_s) = (info_a.rank, info_b.rank, info_s.rank);
    if r_a + r_b != n + r_s {
        return Err(Error::RankIdentity(format!(
            "r_A={r_a}, r_B={r_b}, r_S={r_s} violate r_A + r_B = n + r_S at n={n}"
        )));
    }
    Ok(VertexClass {
        n,
        r_a,
        r_b,
        r_s,
        label: label_for(n, r_a, r_b),
        ambiguous: info_a.ambiguous || info_b.ambiguous || info_s.ambiguous,
    })
}

/// Scalar charts for the catalogued `n = 2, 3` families.
///
/// Each variant matches one displayed template: the boundary pair built
/// by [`make_case`] reproduces that template literally (no reduction
/// involved), so closed-form amplitudes can be checked against the
/// generic matrix machinery on the same object.
#[derive(Debug, Clone, PartialEq)]
pub enum CaseParameters {
    /// `n = 2`, rank-1 `B`: point interaction of strength `s` with a
    /// scaling coupling `t`.
    DeltaN2 { s: f64, t: Complex64 },
    /// `n = 3`, rank-1 `B`.
    DeltaN3 { s: f64, t2: Complex64, t3: Complex64 },
    /// `n = 3`, rank-2 `B` with Hermitian 2x2 strength block.
    Rank2StN3 {
        s11: f64,
        s12: Complex64,
        s22: f64,
        t1: Complex64,
        t2: Complex64,
    },
    /// `n = 2`, rank-1 `A`: derivative-side point interaction.
    DeltaPrimeN2 { s: f64, c: Complex64 },
    /// `n = 3`, rank-1 `A`.
    DeltaPrimeN3 { s: f64, c: Complex64, d: Complex64 },
    /// `n = 3`, full-rank `B` with rank-2 strength matrix whose third
    /// column is `c`-times the first plus `d`-times the second. `f` is
    /// the resulting corner entry; passing it is optional and checked.
    Rank2ReverseN3 {
        s: f64,
        q: Complex64,
        r: f64,
        c: Complex64,
        d: Complex64,
        f: Option<f64>,
    },
    /// `n = 2`, full-rank `B`: arbitrary Hermitian strength matrix.
    HermitianN2 { s11: f64, s12: Complex64, s22: f64 },
    /// `n = 3`, full-rank `B`.
    HermitianN3 {
        s11: f64,
        s12: Complex64,
        s13: Complex64,
        s22: f64,
        s23: Complex64,
        s33: f64,
    },
}

impl CaseParameters {
    pub fn n(&self) -> usize {
        match self {
            CaseParameters::DeltaN2 { .. }
            | CaseParameters::DeltaPrimeN2 { .. }
            | CaseParameters::HermitianN2 { .. } => 2,
            _ => 3,
        }
    }

    /// The corner entry forced by the dependent-column structure of the
    /// rank-2 full-`B` family.
    pub fn corner_entry(s: f64, q: Complex64, r: f64, c: Complex64, d: Complex64) -> f64 {
        (c.conj() * c * s + c.conj() * d * q + d.conj() * c * q.conj() + d.conj() * d * r).re
    }
}

/// Rank-1-`B` vertex: strength `s` (real, zero gives the scale-invariant
/// case) and couplings `t` of the remaining `n - 1` lines to the first.
pub fn make_delta(n: usize, s: f64, t: &[Complex64]) -> Result<BoundaryPair> {
    if n < 2 {
        return Err(Error::Parameter("a vertex needs at least two lines".into()));
    }
    if t.len() != n - 1 {
        return Err(Error::Dimension(format!(
            "coupling vector has length {}, expected {}",
            t.len(),
            n - 1
        )));
    }
    if !s.is_finite() {
        return Err(Error::Parameter("strength must be finite".into()));
    }
    let s_block = ComplexMatrix::from_fn(1, 1, |_, _| Complex64::new(s, 0.0));
    let t_block = ComplexMatrix::from_fn(1, n - 1, |_, j| t[j]);
    let form = STForm::new(n, s_block, t_block, (0..n).collect())?;
    form.assemble()
}

/// The `s = 0` member of the rank-1-`B` family: scattering is
/// independent of `k`.
pub fn make_scale_invariant(n: usize, t: &[Complex64]) -> Result<BoundaryPair> {
    make_delta(n, 0.0, t)
}

/// Rank-1-`A` vertex: `sbar` is the derivative-side strength (the
/// strength block of the reverse ST form), `coeffs` the couplings of the
/// remaining lines to the first. The assembled pair uses the full-rank
/// `B` template `psi' = S psi` with the dyadic rank-1 `S`.
pub fn make_delta_prime(n: usize, sbar: f64, coeffs: &[Complex64]) -> Result<BoundaryPair> {
    if n < 2 {
        return Err(Error::Parameter("a vertex needs at least two lines".into()));
    }
    if coeffs.len() != n - 1 {
        return Err(Error::Dimension(format!(
            "coefficient vector has length {}, expected {}",
            coeffs.len(),
            n - 1
        )));
    }
    if !sbar.is_finite() {
        return Err(Error::Parameter("strength must be finite".into()));
    }
    if sbar == 0.0 {
        return Err(Error::Degenerate(
            "zero derivative-side strength degenerates to a Neumann junction".into(),
        ));
    }
    let s = 1.0 / sbar;
    let mut u = vec![ONE];
    u.extend(coeffs.iter().map(|c| c.conj()));
    let s_full = ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(s, 0.0) * u[i] * u[j].conj());
    BoundaryPair::new(s_full.scale(-ONE), ComplexMatrix::identity(n))
}

/// Builds the boundary pair displayed by the chart `params`.
pub fn make_case(params: &CaseParameters) -> Result<BoundaryPair> {
    let re = |x: f64| Complex64::new(x, 0.0);
    match *params {
        CaseParameters::DeltaN2 { s, t } => make_delta(2, s, &[t]),
        CaseParameters::DeltaN3 { s, t2, t3 } => make_delta(3, s, &[t2, t3]),
        CaseParameters::Rank2StN3 {
            s11,
            s12,
            s22,
            t1,
            t2,
        } => {
            let s_block = ComplexMatrix::from_rows(&[
                vec![re(s11), s12],
                vec![s12.conj(), re(s22)],
            ])?;
            let t_block = ComplexMatrix::from_rows(&[vec![t1], vec![t2]])?;
            STForm::new(3, s_block, t_block, vec![0, 1, 2])?.assemble()
        }
        CaseParameters::DeltaPrimeN2 { s, c } => {
            if s == 0.0 {
                return Err(Error::Degenerate(
                    "zero strength degenerates to a Neumann junction".into(),
                ));
            }
            make_delta_prime(2, 1.0 / s, &[c])
        }
        CaseParameters::DeltaPrimeN3 { s, c, d } => {
            if s == 0.0 {
                return Err(Error::Degenerate(
                    "zero strength degenerates to a Neumann junction".into(),
                ));
            }
            make_delta_prime(3, 1.0 / s, &[c, d])
        }
        CaseParameters::Rank2ReverseN3 { s, q, r, c, d, f } => {
            let delta = s * r - q.norm_sqr();
            let scale = (s.abs().max(r.abs()).max(q.norm())).powi(2).max(1.0);
            if delta.abs() <= 1e-12 * scale {
                return Err(Error::Parameter(
                    "the leading 2x2 strength block must be invertible for this chart".into(),
                ));
            }
            let f_val = CaseParameters::corner_entry(s, q, r, c, d);
            if let Some(f_given) = f {
                if (f_given - f_val).abs() > 1e-9 * f_val.abs().max(1.0) {
                    return Err(Error::Parameter(format!(
                        "corner entry {f_given} conflicts with the dependent-column \
                         structure (expected {f_val})"
                    )));
                }
            }
            let col3 = [c * re(s) + d * q, c * q.conj() + d * re(r)];
            let s_full = ComplexMatrix::from_rows(&[
                vec![re(s), q, col3[0]],
                vec![q.conj(), re(r), col3[1]],
                vec![col3[0].conj(), col3[1].conj(), re(f_val)],
            ])?;
            BoundaryPair::new(s_full.scale(-ONE), ComplexMatrix::identity(3))
        }
        CaseParameters::HermitianN2 { s11, s12, s22 } => {
            let s_full = ComplexMatrix::from_rows(&[
                vec![re(s11), s12],
                vec![s12.conj(), re(s22)],
            ])?;
            BoundaryPair::new(s_full.scale(-ONE), ComplexMatrix::identity(2))
        }
        CaseParameters::HermitianN3 {
            s11,
            s12,
            s13,
            s22,
            s23,
            s33,
        } => {
            let s_full = ComplexMatrix::from_rows(&[
                vec![re(s11), s12, s13],
                vec![s12.conj(), re(s22), s23],
                vec![s13.conj(), s23.conj(), re(s33)],
            ])?;
            BoundaryPair::new(s_full.scale(-ONE), ComplexMatrix::identity(3))
        }
    }
}
