//! Simulation engine for the N-state quantum roulette game.
//!
//! Alice plays classically: she places a basis state and later applies a
//! probabilistic mixture of the N! permutations of the state labels. Bob
//! plays quantally: his strategy unitaries, built from the Fourier matrix
//! that diagonalizes the circulant mixing matrix D = (1/N) J_N, rotate the
//! placed state onto D, the unique fixed point of every classical strategy,
//! and then out of it onto any target state. Noiseless, Bob therefore
//! wins with probability exactly 1 regardless of Alice's choices.
//!
//! The noisy variant decoheres the placed state with a qudit depolarizing
//! channel before Bob's first move, which breaks the fixed-point argument.
//! For the three-state game the crate also carries the closed-form win
//! expression from the original analysis of that variant, purely as a
//! comparison reference: the numerical engine is treated as ground truth and
//! reports expose the deviation between the two.
//!
//! # Layout
//!
//! - [`linalg`]: dense complex matrices and density-matrix validation.
//! - [`permutations`]: S_N enumeration, permutation conjugation, classical
//!   strategies and the mixing step.
//! - [`spectral`]: Fourier basis, circulant eigenvalues, mixing matrix, and
//!   Bob's strategy unitaries.
//! - [`channels`]: shift/clock operators, depolarizing Kraus sets, and
//!   operator-sum application.
//! - [`game`]: the four-step protocol and outcome extraction.
//!
//! # Determinism
//!
//! Every value is immutable after construction and every operation is a
//! pure function with a fixed accumulation order: identical inputs produce
//! bitwise-identical outputs. With the `parallel` feature (default) the
//! classical mixing step fans out over rayon; the parallel and sequential
//! paths share one accumulation tree, so the feature never changes results.

pub mod channels;
pub mod error;
pub mod game;
pub mod linalg;
pub mod permutations;
pub mod spectral;

pub use channels::{apply_channel, clock_operator, depolarizing_kraus, shift_operator, KrausSet};
pub use error::{Error, Result};
pub use game::{
    outcome_distribution, paper_win_formula, run, run_noiseless, run_noisy, GameConfig,
    GameTranscript, NoisePoint, NoiseSpec,
};
pub use linalg::{conjugate_by, ComplexMatrix, ComplexScalar, DensityMatrix};
pub use permutations::{
    classical_mix, classical_mix_sequential, conjugate_by_permutation, enumerate_sn,
    perm_to_matrix, ClassicalStrategy, Permutation,
};
#[cfg(feature = "parallel")]
pub use permutations::classical_mix_parallel;
pub use spectral::{
    bob_unitary, circulant_eigenvalues, fourier_basis, mixing_matrix, root_of_unity, FourierBasis,
    StrategyUnitary,
};
