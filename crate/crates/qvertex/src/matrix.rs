//! Dense complex matrices, sized for boundary-condition work.
//!
//! Everything here operates on small matrices (a vertex of degree `n`
//! needs `n x n` and `n x 2n` shapes), so the implementations favour
//! robustness over asymptotic speed: LU solves use partial pivoting with
//! an explicit singularity floor, and singular values come from a
//! one-sided Jacobi iteration, which keeps full relative accuracy on the
//! small spectra that rank decisions depend on.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::DEFAULT_RANK_TOL;

/// Row-major dense matrix over `Complex64`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix. Zero-dimensional shapes are allowed so that empty
    /// normal-form blocks (Dirichlet has no `S` at all) stay uniform.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn<F>(rows: usize, cols: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> Complex64,
    {
        let mut m = ComplexMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// Builds a matrix from nested rows, rejecting ragged input.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::Dimension("matrix must be non-empty".to_string()));
        }
        let cols = rows[0].len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    cols
                )));
            }
        }
        Ok(ComplexMatrix::from_fn(rows.len(), cols, |r, c| rows[r][c]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        ComplexMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn mul(&self, rhs: &ComplexMatrix) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..rhs.cols {
                    out[(r, c)] += a * rhs[(k, c)];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &ComplexMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)] + rhs[(r, c)])
    }

    pub fn sub(&self, rhs: &ComplexMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)] - rhs[(r, c)])
    }

    pub fn scale(&self, z: Complex64) -> Self {
        ComplexMatrix::from_fn(self.rows, self.cols, |r, c| z * self[(r, c)])
    }

    /// Horizontal concatenation `[self | right]`.
    pub fn hstack(&self, right: &ComplexMatrix) -> Self {
        assert_eq!(self.rows, right.rows, "hstack needs equal row counts");
        ComplexMatrix::from_fn(self.rows, self.cols + right.cols, |r, c| {
            if c < self.cols {
                self[(r, c)]
            } else {
                right[(r, c - self.cols)]
            }
        })
    }

    /// Largest entry magnitude (the max norm).
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Errors on the first NaN or infinite entry.
    pub fn check_finite(&self) -> Result<()> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                let z = self[(r, c)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: r, col: c });
                }
            }
        }
        Ok(())
    }

    /// Max-norm distance to the conjugate transpose; zero iff Hermitian.
    pub fn hermitian_defect(&self) -> f64 {
        assert!(self.is_square(), "hermitian_defect needs a square matrix");
        let mut defect: f64 = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                defect = defect.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        defect
    }

    /// Solves `self * X = rhs` by LU factorisation with partial pivoting.
    ///
    /// A pivot whose magnitude falls at or below `n * 1e-13 * max_abs`
    /// is treated as an exact zero and reported as [`Error::Singular`].
    pub fn solve(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        assert!(self.is_square(), "solve needs a square matrix");
        assert_eq!(self.rows, rhs.rows, "solve shape mismatch");
        let n = self.rows;
        let floor = self.max_abs() * 1e-13 * n as f64;

        let mut lu = self.clone();
        let mut x = rhs.clone();
        for col in 0..n {
            let mut pivot_row = col;
            let mut pivot_mag = lu[(col, col)].norm();
            for r in col + 1..n {
                let mag = lu[(r, col)].norm();
                if mag > pivot_mag {
                    pivot_row = r;
                    pivot_mag = mag;
                }
            }
            if pivot_mag <= floor {
                return Err(Error::Singular { pivot: pivot_mag });
            }
            if pivot_row != col {
                for c in 0..n {
                    lu.entries.swap(col * n + c, pivot_row * n + c);
                }
                for c in 0..x.cols {
                    x.entries.swap(col * x.cols + c, pivot_row * x.cols + c);
                }
            }
            let pivot = lu[(col, col)];
            for r in col + 1..n {
                let factor = lu[(r, col)] / pivot;
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in col..n {
                    let v = lu[(col, c)];
                    lu[(r, c)] -= factor * v;
                }
                for c in 0..x.cols {
                    let v = x[(col, c)];
                    x[(r, c)] -= factor * v;
                }
            }
        }
        for col in (0..n).rev() {
            let pivot = lu[(col, col)];
            for c in 0..x.cols {
                let mut acc = x[(col, c)];
                for k in col + 1..n {
                    acc -= lu[(col, k)] * x[(k, c)];
                }
                x[(col, c)] = acc / pivot;
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<ComplexMatrix> {
        self.solve(&ComplexMatrix::identity(self.rows))
    }

    /// Singular values in descending order, via one-sided Jacobi.
    ///
    /// The iteration orthogonalises matrix columns pairwise with complex
    /// plane rotations; on convergence the column norms are the singular
    /// values. Working on the taller orientation keeps the pair count
    /// small and the Gram entries well scaled.
    pub fn singular_values(&self) -> Vec<f64> {
        let work = if self.rows >= self.cols {
            self.clone()
        } else {
            self.dagger()
        };
        let m = work.rows;
        let n = work.cols;
        let mut cols: Vec<Vec<Complex64>> = (0..n)
            .map(|c| (0..m).map(|r| work[(r, c)]).collect())
            .collect();

        for _sweep in 0..60 {
            let mut rotated = false;
            for p in 0..n {
                for q in p + 1..n {
                    let mut app = 0.0;
                    let mut aqq = 0.0;
                    let mut apq = Complex64::new(0.0, 0.0);
                    for i in 0..m {
                        app += cols[p][i].norm_sqr();
                        aqq += cols[q][i].norm_sqr();
                        apq += cols[p][i].conj() * cols[q][i];
                    }
                    if apq.norm_sqr() <= 1e-28 * app * aqq {
                        continue;
                    }
                    let beta = apq.norm();
                    let phase = apq / beta;
                    let tau = (aqq - app) / (2.0 * beta);
                    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = c * t;
                    let e = phase.conj();
                    for i in 0..m {
                        let u = cols[p][i];
                        let v = cols[q][i];
                        cols[p][i] = c * u - s * e * v;
                        cols[q][i] = s * u + c * e * v;
                    }
                    rotated = true;
                }
            }
            if !rotated {
                break;
            }
        }

        let mut sigma: Vec<f64> = cols
            .iter()
            .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .collect();
        sigma.sort_by(|a, b| b.partial_cmp(a).unwrap());
        sigma
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &mut self.entries[r * self.cols + c]
    }
}

/// Outcome of a numerical rank decision.
#[derive(Debug, Clone)]
pub struct RankInfo {
    pub rank: usize,
    /// All singular values, descending.
    pub singular_values: Vec<f64>,
    /// Ratio of the smallest accepted to the largest rejected singular
    /// value; infinite when nothing was rejected or everything was.
    pub gap: f64,
    /// True when some singular value sits within a factor of ten of the
    /// cut, so the rank decision is sensitive to the tolerance.
    pub ambiguous: bool,
}

/// Ranks `m` by counting singular values above `rtol` times the largest.
pub fn rank_info(m: &ComplexMatrix, rtol: f64) -> RankInfo {
    let sigma = m.singular_values();
    let sigma_max = sigma.first().copied().unwrap_or(0.0);
    let cut = rtol * sigma_max;
    let rank = sigma.iter().filter(|&&s| s > cut).count();
    let gap = if rank == 0 || rank == sigma.len() || sigma[rank] == 0.0 {
        f64::INFINITY
    } else {
        sigma[rank - 1] / sigma[rank]
    };
    let ambiguous = cut > 0.0 && sigma.iter().any(|&s| s > 0.1 * cut && s < 10.0 * cut);
    RankInfo {
        rank,
        singular_values: sigma,
        gap,
        ambiguous,
    }
}

pub fn numerical_rank(m: &ComplexMatrix, rtol: f64) -> usize {
    rank_info(m, rtol).rank
}

/// Hermiticity test relative to the matrix scale.
pub fn is_hermitian(m: &ComplexMatrix, tol: f64) -> bool {
    m.hermitian_defect() <= tol * m.max_abs().max(1.0)
}

/// Shorthand used by tests and examples.
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Rank with the crate-default tolerance.
pub fn default_rank(m: &ComplexMatrix) -> usize {
    numerical_rank(m, DEFAULT_RANK_TOL)
}
