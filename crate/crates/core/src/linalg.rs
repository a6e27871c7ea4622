//! Minimal dense complex matrix kernel.
//!
//! Everything the engine manipulates (permutation operators, Fourier
//! unitaries, Kraus operators, density matrices) is a small square matrix of
//! `Complex64` entries. Matrices are immutable after construction and all
//! operations are pure, so values can be shared freely across threads.
//!
//! Dimensions are capped at [`MAX_DIM`]; within that range the naive O(dim³)
//! product is exact enough that structural checks use fixed tolerances
//! (1e-10 for Hermiticity/trace, 1e-12 for products of exactly representable
//! inputs).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used for every matrix entry.
pub type ComplexScalar = Complex64;

/// Hard cap on matrix dimension. 9-state games are the largest supported.
pub const MAX_DIM: usize = 9;

/// Tolerance for the Hermiticity residual of a density matrix.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Tolerance for |Re(trace) - 1| of a density matrix.
pub const TRACE_TOL: f64 = 1e-10;
/// Tolerance for |Im(trace)| of a density matrix.
pub const TRACE_IMAG_TOL: f64 = 1e-12;
/// Diagonal entries of a density matrix may dip this far below zero.
pub const DIAGONAL_FLOOR: f64 = -1e-9;
/// Unitarity tolerance required of conjugation operators.
pub const CONJUGATION_UNITARITY_TOL: f64 = 1e-10;

/// Dense square matrix of complex scalars, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<ComplexScalar>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, validating the dimension cap
    /// and finiteness of every entry.
    pub fn new(dim: usize, entries: Vec<ComplexScalar>) -> Result<Self> {
        check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: dim * dim,
                right: entries.len(),
            });
        }
        for (idx, z) in entries.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFiniteEntry {
                    row: idx / dim,
                    col: idx % dim,
                });
            }
        }
        Ok(Self { dim, entries })
    }

    /// Builds a matrix entry by entry from `f(row, col)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> ComplexScalar) -> Result<Self> {
        check_dim(dim)?;
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self::new(dim, entries)
    }

    /// Builds a matrix from row-major real entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            dim,
            entries.iter().map(|&x| ComplexScalar::new(x, 0.0)).collect(),
        )
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self::from_parts(dim, vec![ComplexScalar::new(0.0, 0.0); dim * dim]))
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.entries[i * dim + i] = ComplexScalar::new(1.0, 0.0);
        }
        Ok(m)
    }

    /// Internal constructor for entries already known to be valid.
    pub(crate) fn from_parts(dim: usize, entries: Vec<ComplexScalar>) -> Self {
        debug_assert!((1..=MAX_DIM).contains(&dim));
        debug_assert_eq!(entries.len(), dim * dim);
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entry slice.
    pub fn entries(&self) -> &[ComplexScalar] {
        &self.entries
    }

    /// Entry at `(row, col)`. Panics on out-of-bounds indices.
    pub fn get(&self, row: usize, col: usize) -> ComplexScalar {
        assert!(row < self.dim && col < self.dim, "index out of bounds");
        self.entries[row * self.dim + col]
    }

    /// Exact mathematical product; entry (i,j) accumulates over k in
    /// ascending order.
    pub fn mat_mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let d = self.dim;
        let mut out = vec![ComplexScalar::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                for j in 0..d {
                    out[i * d + j] += a * rhs.entries[k * d + j];
                }
            }
        }
        Ok(Self::from_parts(d, out))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                out.push(self.entries[j * d + i].conj());
            }
        }
        Self::from_parts(d, out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::from_parts(self.dim, entries))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self::from_parts(self.dim, entries))
    }

    pub fn scale(&self, s: ComplexScalar) -> Self {
        Self::from_parts(self.dim, self.entries.iter().map(|z| z * s).collect())
    }

    pub fn trace(&self) -> ComplexScalar {
        let mut t = ComplexScalar::new(0.0, 0.0);
        for i in 0..self.dim {
            t += self.entries[i * self.dim + i];
        }
        t
    }

    /// Frobenius norm. Squared magnitudes accumulate in ascending sorted
    /// order, so the result does not depend on how entries are laid out;
    /// permuting a matrix therefore preserves this norm bit-for-bit.
    pub fn frobenius_norm(&self) -> f64 {
        let mut sq: Vec<f64> = self.entries.iter().map(|z| z.norm_sqr()).collect();
        sq.sort_unstable_by(f64::total_cmp);
        sq.iter().sum::<f64>().sqrt()
    }

    /// Largest entrywise absolute difference against `rhs`.
    pub fn max_abs_diff(&self, rhs: &Self) -> Result<f64> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// ||m m^H - I||_F, the residual reported by unitarity failures.
    pub fn unitarity_residual(&self) -> f64 {
        let eye = Self::identity(self.dim).expect("dim already validated");
        let prod = self.mat_mul(&self.adjoint()).expect("same dimension");
        prod.sub(&eye).expect("same dimension").frobenius_norm()
    }

    /// True iff both ||m m^H - I||_F and ||m^H m - I||_F are within `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        assert!(tol > 0.0, "tolerance must be positive");
        let eye = Self::identity(self.dim).expect("dim already validated");
        let adj = self.adjoint();
        let right = self.mat_mul(&adj).expect("same dimension");
        let left = adj.mat_mul(self).expect("same dimension");
        right.sub(&eye).expect("same dimension").frobenius_norm() <= tol
            && left.sub(&eye).expect("same dimension").frobenius_norm() <= tol
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::CapacityExceeded {
            name: "matrix dimension",
            value: dim,
            max: MAX_DIM,
        })
    }
}

/// Hermitian, trace-1, positive-semidefinite matrix representing a roulette
/// state.
///
/// Construction validates eagerly and rejects violations instead of
/// renormalizing; positivity is screened through the diagonal (conjugations
/// by the verification unitaries used in tests extend the screen to other
/// bases).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let residual = mat.sub(&mat.adjoint()).expect("same dimension").frobenius_norm();
        if residual > HERMITICITY_TOL {
            return Err(Error::NotHermitian {
                residual,
                tol: HERMITICITY_TOL,
            });
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_IMAG_TOL {
            return Err(Error::TraceNotOne {
                re: tr.re,
                im: tr.im,
                re_tol: TRACE_TOL,
                im_tol: TRACE_IMAG_TOL,
            });
        }
        for i in 0..mat.dim() {
            let v = mat.get(i, i).re;
            if v < DIAGONAL_FLOOR {
                return Err(Error::NegativeDiagonal {
                    index: i,
                    value: v,
                    floor: DIAGONAL_FLOOR,
                });
            }
        }
        Ok(Self { mat })
    }

    /// Pure state |index><index| on the 0-based computational basis.
    pub fn basis_state(dim: usize, index: usize) -> Result<Self> {
        check_dim(dim)?;
        if index >= dim {
            return Err(Error::OutOfRange {
                name: "basis index",
                value: index,
                min: 0,
                max: dim - 1,
            });
        }
        let mut m = ComplexMatrix::zeros(dim)?;
        m.entries[index * dim + index] = ComplexScalar::new(1.0, 0.0);
        Ok(Self { mat: m })
    }

    /// Maximally mixed state I/dim.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        let eye = ComplexMatrix::identity(dim)?;
        Self::new(eye.scale(ComplexScalar::new(1.0 / dim as f64, 0.0)))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    /// Real parts of the diagonal, unclamped.
    pub fn diagonal_real(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.mat.get(i, i).re).collect()
    }
}

/// Evolves `rho` by a unitary: u rho u^H.
///
/// `u` must be unitary within [`CONJUGATION_UNITARITY_TOL`]; the error
/// carries the observed ||u u^H - I||_F.
pub fn conjugate_by(u: &ComplexMatrix, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if u.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: u.dim(),
            right: rho.dim(),
        });
    }
    let residual = u.unitarity_residual();
    if residual > CONJUGATION_UNITARITY_TOL {
        return Err(Error::NotUnitary {
            residual,
            tol: CONJUGATION_UNITARITY_TOL,
        });
    }
    let evolved = u.mat_mul(rho.matrix())?.mat_mul(&u.adjoint())?;
    DensityMatrix::new(evolved)
}
