//! Fourier diagonalization of the mixing matrix and Bob's strategy
//! unitaries.
//!
//! The mixing matrix D = (1/n) J_n is circulant, so the Fourier matrix
//! F = V(w)/sqrt(n) diagonalizes it: F^H D F = diag(1, 0, .., 0). Bob's
//! unitaries T_k are cyclic column rotations of F chosen so that
//! T_k^H D T_k = |k><k|.
//!
//! Powers of the primitive root w = e^{2*pi*i/n} are always reduced modulo n
//! before exponentiation, so entries like w^{(n-1)^2} are computed from the
//! exact reduced angle rather than by repeated multiplication.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexScalar, DensityMatrix};
use crate::permutations::MAX_DEGREE;

/// w^exponent for w = e^{2*pi*i/n}, with the exponent reduced mod n first.
pub fn root_of_unity(n: usize, exponent: i64) -> ComplexScalar {
    assert!(n >= 1, "root order must be positive");
    let e = exponent.rem_euclid(n as i64) as f64;
    ComplexScalar::from_polar(1.0, TAU * e / n as f64)
}

/// The Fourier matrix F = V(w)/sqrt(n) together with its defining root.
///
/// Column k is the eigenvector of every n x n circulant matrix associated
/// with eigenvalue f(w^k); column 0 is the uniform vector.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierBasis {
    n: usize,
    omega: ComplexScalar,
    f: ComplexMatrix,
}

impl FourierBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Primitive n-th root of unity e^{2*pi*i/n}.
    pub fn omega(&self) -> ComplexScalar {
        self.omega
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.f
    }

    /// Eigenvector column k as a plain vector.
    pub fn column(&self, k: usize) -> Vec<ComplexScalar> {
        assert!(k < self.n, "column index out of range");
        (0..self.n).map(|i| self.f.get(i, k)).collect()
    }
}

/// Builds F for an n-state roulette; entry (j, k) is w^{jk}/sqrt(n).
pub fn fourier_basis(n: usize) -> Result<FourierBasis> {
    let scale = 1.0 / (n as f64).sqrt();
    let f = ComplexMatrix::from_fn(n, |j, k| root_of_unity(n, (j * k) as i64) * scale)?;
    Ok(FourierBasis {
        n,
        omega: root_of_unity(n, 1),
        f,
    })
}

/// The mixing matrix D = (1/n) J_n, the average of all n! permutation
/// matrices and the unique state fixed by every classical strategy.
pub fn mixing_matrix(n: usize) -> Result<DensityMatrix> {
    if !(1..=MAX_DEGREE).contains(&n) {
        return Err(Error::CapacityExceeded {
            name: "mixing matrix dimension",
            value: n,
            max: MAX_DEGREE,
        });
    }
    let v = 1.0 / n as f64;
    let mat = ComplexMatrix::from_fn(n, |_, _| ComplexScalar::new(v, 0.0))?;
    DensityMatrix::new(mat)
}

/// Eigenvalues of the circulant matrix with first row `c`:
/// `[f(w^0), .., f(w^{n-1})]` where `f(mu) = c_0 + c_1 mu + .. + c_{n-1} mu^{n-1}`.
///
/// The matrix itself (entry (i, j) = c[(j - i) mod n]) is never formed.
pub fn circulant_eigenvalues(c: &[ComplexScalar]) -> Vec<ComplexScalar> {
    assert!(!c.is_empty(), "coefficient list must be nonempty");
    let n = c.len();
    (0..n)
        .map(|k| {
            let mut acc = ComplexScalar::new(0.0, 0.0);
            for (j, coeff) in c.iter().enumerate() {
                acc += coeff * root_of_unity(n, (k * j) as i64);
            }
            acc
        })
        .collect()
}

/// Bob's k-th strategy unitary (1-based k).
///
/// Column j holds Fourier eigenvector (j - (k-1)) mod n, i.e. the columns of
/// F rotated right by k-1. This pins the uniform eigenvector at column k-1,
/// giving T_k^H D T_k = |k><k| and T_k |k><k| T_k^H = D.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyUnitary {
    n: usize,
    k: usize,
    mat: ComplexMatrix,
}

impl StrategyUnitary {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Which basis state this unitary is keyed to, 1-based.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }
}

pub fn bob_unitary(n: usize, k: usize) -> Result<StrategyUnitary> {
    let basis = fourier_basis(n)?;
    if !(1..=n).contains(&k) {
        return Err(Error::OutOfRange {
            name: "strategy index k",
            value: k,
            min: 1,
            max: n,
        });
    }
    let shift = k - 1;
    let mat = ComplexMatrix::from_fn(n, |i, j| {
        let src = (j + n - shift) % n;
        basis.matrix().get(i, src)
    })?;
    Ok(StrategyUnitary { n, k, mat })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DensityMatrix;
    use crate::permutations::{enumerate_sn, factorial, perm_to_matrix};

    fn diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        a.max_abs_diff(b).unwrap()
    }

    #[test]
    fn mixing_matrix_small_cases() {
        let d2 = mixing_matrix(2).unwrap();
        let expected = ComplexMatrix::from_real(2, &[0.5, 0.5, 0.5, 0.5]).unwrap();
        assert_eq!(d2.matrix(), &expected);

        let d1 = mixing_matrix(1).unwrap();
        assert_eq!(d1.matrix(), &ComplexMatrix::identity(1).unwrap());

        let d3 = mixing_matrix(3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d3.matrix().get(i, j), ComplexScalar::new(1.0 / 3.0, 0.0));
            }
        }
    }

    #[test]
    fn mixing_matrix_is_the_group_average() {
        for n in 1..=5usize {
            let d = mixing_matrix(n).unwrap();
            let mut sum = ComplexMatrix::zeros(n).unwrap();
            for p in enumerate_sn(n).unwrap() {
                sum = sum.add(&perm_to_matrix(&p)).unwrap();
            }
            let fact = factorial(n) as f64;
            let avg = ComplexMatrix::from_fn(n, |i, j| sum.get(i, j) / fact).unwrap();
            // Integer entry counts divided by n! land on the same float as 1/n.
            assert_eq!(&avg, d.matrix());
        }
    }

    #[test]
    fn fourier_basis_small_cases() {
        let f2 = fourier_basis(2).unwrap();
        let s = 1.0 / 2f64.sqrt();
        let expected = ComplexMatrix::from_real(2, &[s, s, s, -s]).unwrap();
        assert!(diff(f2.matrix(), &expected) <= 1e-15);

        let f1 = fourier_basis(1).unwrap();
        assert_eq!(f1.matrix(), &ComplexMatrix::identity(1).unwrap());

        let f3 = fourier_basis(3).unwrap();
        let w = root_of_unity(3, 1);
        let s3 = 1.0 / 3f64.sqrt();
        let expected3 = ComplexMatrix::new(
            3,
            vec![
                ComplexScalar::new(s3, 0.0),
                ComplexScalar::new(s3, 0.0),
                ComplexScalar::new(s3, 0.0),
                ComplexScalar::new(s3, 0.0),
                w * s3,
                w * w * s3,
                ComplexScalar::new(s3, 0.0),
                w * w * s3,
                w * w * w * w * s3,
            ],
        )
        .unwrap();
        assert!(diff(f3.matrix(), &expected3) <= 1e-12);
    }

    #[test]
    fn fourier_column_zero_is_uniform() {
        for n in 1..=9 {
            let f = fourier_basis(n).unwrap();
            assert!(f.matrix().is_unitary(1e-12));
            let uniform = ComplexScalar::new(1.0 / (n as f64).sqrt(), 0.0);
            for v in f.column(0) {
                assert!((v - uniform).norm() <= 1e-15);
            }
        }
    }

    #[test]
    fn uniform_circulant_has_single_unit_eigenvalue() {
        let third = ComplexScalar::new(1.0 / 3.0, 0.0);
        let eig = circulant_eigenvalues(&[third, third, third]);
        assert!((eig[0] - 1.0).norm() <= 1e-14);
        assert!(eig[1].norm() <= 1e-14);
        assert!(eig[2].norm() <= 1e-14);
    }

    #[test]
    fn identity_circulant_has_flat_spectrum() {
        let one = ComplexScalar::new(1.0, 0.0);
        let zero = ComplexScalar::new(0.0, 0.0);
        let eig = circulant_eigenvalues(&[one, zero, zero, zero]);
        for v in eig {
            assert!((v - one).norm() <= 1e-15);
        }
    }

    #[test]
    fn shift_circulant_matches_brute_force_diagonalization() {
        // First row (0, 1, 0): the cyclic shift. Its eigenvalues are the
        // roots of unity, in Fourier order.
        let zero = ComplexScalar::new(0.0, 0.0);
        let one = ComplexScalar::new(1.0, 0.0);
        let c = [zero, one, zero];
        let eig = circulant_eigenvalues(&c);

        let n = 3;
        let shift = ComplexMatrix::from_fn(n, |i, j| c[(j + n - i) % n]).unwrap();
        let f = fourier_basis(n).unwrap().matrix().clone();
        let diag = f.adjoint().mat_mul(&shift).unwrap().mat_mul(&f).unwrap();
        for (i, &lambda) in eig.iter().enumerate() {
            for j in 0..n {
                let expect = if i == j { lambda } else { zero };
                assert!((diag.get(i, j) - expect).norm() <= 1e-14);
            }
        }
        assert!((eig[1] - root_of_unity(3, 1)).norm() <= 1e-15);
        assert!((eig[2] - root_of_unity(3, 2)).norm() <= 1e-15);
    }

    #[test]
    fn bob_unitaries_match_reference_three_state_forms() {
        let w = root_of_unity(3, 1);
        let s3 = 1.0 / 3f64.sqrt();
        let one = ComplexScalar::new(1.0, 0.0);

        let t1 = bob_unitary(3, 1).unwrap();
        assert_eq!(t1.matrix(), fourier_basis(3).unwrap().matrix());

        let t2 = bob_unitary(3, 2).unwrap();
        let expected_t2 = ComplexMatrix::new(
            3,
            vec![
                one, one, one, //
                w * w, one, w, //
                w * w * w * w, one, w * w,
            ],
        )
        .unwrap()
        .scale(ComplexScalar::new(s3, 0.0));
        assert!(diff(t2.matrix(), &expected_t2) <= 1e-12);
    }

    #[test]
    fn two_state_unitary_matches_hadamard() {
        let t1 = bob_unitary(2, 1).unwrap();
        let s = 1.0 / 2f64.sqrt();
        let expected = ComplexMatrix::from_real(2, &[s, s, s, -s]).unwrap();
        assert!(diff(t1.matrix(), &expected) <= 1e-15);
    }

    #[test]
    fn strategy_unitaries_steer_the_mixing_matrix() {
        for n in 1..=9usize {
            let d = mixing_matrix(n).unwrap();
            for k in 1..=n {
                let t = bob_unitary(n, k).unwrap();
                assert!(t.matrix().is_unitary(1e-12));
                let steered = t
                    .matrix()
                    .adjoint()
                    .mat_mul(d.matrix())
                    .unwrap()
                    .mat_mul(t.matrix())
                    .unwrap();
                let target = DensityMatrix::basis_state(n, k - 1).unwrap();
                assert!(diff(&steered, target.matrix()) <= 1e-12);
                let back = t
                    .matrix()
                    .mat_mul(target.matrix())
                    .unwrap()
                    .mat_mul(&t.matrix().adjoint())
                    .unwrap();
                assert!(diff(&back, d.matrix()) <= 1e-12);
            }
        }
    }

    #[test]
    fn strategy_index_out_of_range_is_rejected() {
        assert!(matches!(bob_unitary(3, 0), Err(Error::OutOfRange { .. })));
        assert!(matches!(bob_unitary(3, 4), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn fourier_diagonalizes_the_mixing_matrix() {
        for n in 1..=9usize {
            let f = fourier_basis(n).unwrap().matrix().clone();
            let d = mixing_matrix(n).unwrap();
            let diag = f.adjoint().mat_mul(d.matrix()).unwrap().mat_mul(&f).unwrap();
            let expected = DensityMatrix::basis_state(n, 0).unwrap();
            assert!(diff(&diag, expected.matrix()) <= 1e-12);
        }
    }

    #[test]
    fn mixing_matrix_is_idempotent() {
        for n in 1..=9usize {
            let d = mixing_matrix(n).unwrap();
            let sq = d.matrix().mat_mul(d.matrix()).unwrap();
            assert!(diff(&sq, d.matrix()) <= 1e-13);
        }
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in 2..=9usize {
            for k in 1..n {
                let mut acc = ComplexScalar::new(0.0, 0.0);
                for l in 0..n {
                    acc += root_of_unity(n, (l * k) as i64);
                }
                assert!(acc.norm() <= 1e-12, "n={n} k={k} sum={acc}");
            }
        }
    }
}
