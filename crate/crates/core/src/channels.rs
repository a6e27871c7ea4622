//! Generalized Pauli operators and the qudit depolarizing channel.
//!
//! The shift operator Y lowers basis labels (Y|l> = |(l-1) mod d>) and the
//! clock operator Z multiplies |l> by w^l with w = e^{2*pi*i/d}. Together
//! they satisfy the Weyl relation Y Z = w Z Y. The depolarizing channel's
//! Kraus set is sqrt(1-r) I plus the d^2 - 1 operators
//! sqrt(r/(d^2-1)) Y^i Z^j, (i, j) != (0, 0).
//!
//! Kraus sets enforce the trace-preservation relation sum E^H E = I at
//! construction, and [`apply_channel`] accumulates the operator sum in a
//! fixed order so repeated runs are reproducible bit for bit.

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexScalar, DensityMatrix};
use crate::spectral::root_of_unity;

/// Tolerance on ||sum E^H E - I||_F at Kraus-set construction.
pub const KRAUS_COMPLETENESS_TOL: f64 = 1e-10;

/// A finite set of Kraus operators encoding a trace-preserving channel.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    d: usize,
    ops: Vec<ComplexMatrix>,
    label: String,
}

impl KrausSet {
    /// Validates dimensions and the completeness relation.
    pub fn new(d: usize, ops: Vec<ComplexMatrix>, label: impl Into<String>) -> Result<Self> {
        for op in &ops {
            if op.dim() != d {
                return Err(Error::DimensionMismatch {
                    left: d,
                    right: op.dim(),
                });
            }
        }
        let mut sum = ComplexMatrix::zeros(d)?;
        for op in &ops {
            sum = sum.add(&op.adjoint().mat_mul(op)?)?;
        }
        let residual = sum.sub(&ComplexMatrix::identity(d)?)?.frobenius_norm();
        if residual > KRAUS_COMPLETENESS_TOL {
            return Err(Error::IncompleteKraus {
                residual,
                tol: KRAUS_COMPLETENESS_TOL,
            });
        }
        Ok(Self {
            d,
            ops,
            label: label.into(),
        })
    }

    /// The do-nothing channel {I}.
    pub fn identity(d: usize) -> Result<Self> {
        Self::new(d, vec![ComplexMatrix::identity(d)?], "identity")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

fn check_qudit_dim(d: usize) -> Result<()> {
    if !(2..=crate::linalg::MAX_DIM).contains(&d) {
        return Err(Error::OutOfRange {
            name: "qudit dimension",
            value: d,
            min: 2,
            max: crate::linalg::MAX_DIM,
        });
    }
    Ok(())
}

/// Y^i Z^j: column l carries w^{lj} in row (l - i) mod d.
fn generalized_pauli(d: usize, i: usize, j: usize) -> ComplexMatrix {
    let mut entries = vec![ComplexScalar::new(0.0, 0.0); d * d];
    for l in 0..d {
        let row = (l + d - i % d) % d;
        entries[row * d + l] = root_of_unity(d, (l * j) as i64);
    }
    ComplexMatrix::from_parts(d, entries)
}

/// The shift operator: Y|l> = |(l-1) mod d>.
pub fn shift_operator(d: usize) -> Result<ComplexMatrix> {
    check_qudit_dim(d)?;
    Ok(generalized_pauli(d, 1, 0))
}

/// The clock operator: Z|l> = w^l |l>, w = e^{2*pi*i/d}.
pub fn clock_operator(d: usize) -> Result<ComplexMatrix> {
    check_qudit_dim(d)?;
    Ok(generalized_pauli(d, 0, 1))
}

/// Depolarizing channel with noise strength `r`.
///
/// Returns exactly d^2 operators: sqrt(1-r) I first, then
/// sqrt(r/(d^2-1)) Y^i Z^j for (i, j) in lexicographic order skipping
/// (0, 0). The fixed order makes the operator sum reproducible; only the
/// set matters mathematically.
pub fn depolarizing_kraus(d: usize, r: f64) -> Result<KrausSet> {
    check_qudit_dim(d)?;
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidProbability {
            name: "noise strength r",
            value: r,
        });
    }
    let mut ops = Vec::with_capacity(d * d);
    let keep = (1.0 - r).sqrt();
    ops.push(ComplexMatrix::identity(d)?.scale(ComplexScalar::new(keep, 0.0)));
    let spread = (r / (d * d - 1) as f64).sqrt();
    for i in 0..d {
        for j in 0..d {
            if i == 0 && j == 0 {
                continue;
            }
            ops.push(generalized_pauli(d, i, j).scale(ComplexScalar::new(spread, 0.0)));
        }
    }
    KrausSet::new(d, ops, format!("depolarizing(d={d}, r={r})"))
}

/// Operator-sum application: sum_k E_k rho E_k^H, accumulated in set order.
pub fn apply_channel(rho: &DensityMatrix, ks: &KrausSet) -> Result<DensityMatrix> {
    if rho.dim() != ks.d {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: ks.d,
        });
    }
    let mut total = ComplexMatrix::zeros(ks.d)?;
    for op in &ks.ops {
        let term = op.mat_mul(rho.matrix())?.mat_mul(&op.adjoint())?;
        total = total.add(&term)?;
    }
    DensityMatrix::new(total)
}
