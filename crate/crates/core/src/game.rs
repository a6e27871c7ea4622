//! The four-step roulette protocol, noiseless and noisy.
//!
//! Step 1: Alice places a computational basis state (optionally decohered by
//! the depolarizing channel). Step 2: Bob rotates it to the mixing matrix
//! with the strategy unitary keyed to the placed state. Step 3: Alice mixes
//! classically over permutations. Step 4: Bob rotates into his target basis
//! state with the adjoint of the target's strategy unitary.
//!
//! Without noise the mixing matrix absorbs Alice's entire strategy, so Bob's
//! win probability is exactly 1. The engine computes density matrices
//! directly; nothing is sampled.

use std::collections::BTreeSet;

use crate::channels::{apply_channel, depolarizing_kraus};
use crate::error::{Error, Result};
use crate::linalg::{conjugate_by, DensityMatrix};
use crate::permutations::{classical_mix, ClassicalStrategy};
use crate::spectral::bob_unitary;

/// Band around [0, 1] tolerated for outcome probabilities before clamping.
pub const OUTCOME_BAND: f64 = 1e-10;

/// Insertion points for noise during a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum NoisePoint {
    /// The channel acts on the freshly placed state, before Bob's first
    /// unitary. This is the only supported point.
    AfterPlacement,
}

/// Depolarizing-noise configuration for a run.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseSpec {
    r: f64,
    schedule: BTreeSet<NoisePoint>,
}

impl NoiseSpec {
    /// Depolarizing noise of strength `r` applied after placement.
    pub fn depolarizing(r: f64) -> Result<Self> {
        Self::new(r, [NoisePoint::AfterPlacement])
    }

    pub fn new(r: f64, schedule: impl IntoIterator<Item = NoisePoint>) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::InvalidProbability {
                name: "noise strength r",
                value: r,
            });
        }
        let schedule: BTreeSet<NoisePoint> = schedule.into_iter().collect();
        if schedule != BTreeSet::from([NoisePoint::AfterPlacement]) {
            return Err(Error::UnsupportedSchedule(format!(
                "only {{AfterPlacement}} is supported, got {schedule:?}"
            )));
        }
        Ok(Self { r, schedule })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn schedule(&self) -> &BTreeSet<NoisePoint> {
        &self.schedule
    }
}

/// Full configuration of one game.
#[derive(Debug, Clone, PartialEq)]
pub struct GameConfig {
    n: usize,
    initial: usize,
    alice: ClassicalStrategy,
    bob_target: usize,
    noise: Option<NoiseSpec>,
}

impl GameConfig {
    /// `initial` and `bob_target` are 1-based basis-state labels.
    pub fn new(
        n: usize,
        initial: usize,
        alice: ClassicalStrategy,
        bob_target: usize,
        noise: Option<NoiseSpec>,
    ) -> Result<Self> {
        if alice.n() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: alice.n(),
            });
        }
        for (name, value) in [("initial", initial), ("target", bob_target)] {
            if !(1..=n).contains(&value) {
                return Err(Error::OutOfRange {
                    name,
                    value,
                    min: 1,
                    max: n,
                });
            }
        }
        Ok(Self {
            n,
            initial,
            alice,
            bob_target,
            noise,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn alice(&self) -> &ClassicalStrategy {
        &self.alice
    }

    pub fn bob_target(&self) -> usize {
        self.bob_target
    }

    pub fn noise(&self) -> Option<&NoiseSpec> {
        self.noise.as_ref()
    }
}

/// States after each protocol step plus the measured outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct GameTranscript {
    /// State after step 1 (decohered when the run is noisy).
    pub rho0: DensityMatrix,
    /// State after Bob's first unitary.
    pub rho1: DensityMatrix,
    /// State after Alice's classical mixing.
    pub rho2: DensityMatrix,
    /// Final state after Bob's second unitary.
    pub rho3: DensityMatrix,
    /// Clamped computational-basis distribution of `rho3`.
    pub outcome: Vec<f64>,
    /// Probability of Bob's target state.
    pub win_probability: f64,
}

/// Runs the protocol, dispatching on the presence of noise.
pub fn run(cfg: &GameConfig) -> Result<GameTranscript> {
    if cfg.noise.is_some() {
        run_noisy(cfg)
    } else {
        run_noiseless(cfg)
    }
}

/// Noiseless run; errors if the config carries a noise spec.
pub fn run_noiseless(cfg: &GameConfig) -> Result<GameTranscript> {
    if cfg.noise.is_some() {
        return Err(Error::UnexpectedNoise);
    }
    let rho0 = DensityMatrix::basis_state(cfg.n, cfg.initial - 1)?;
    finish_from_placed(cfg, rho0)
}

/// Noisy run: the placed state is decohered by the depolarizing channel
/// before steps 2-4. Bob still keys his first unitary to the placed label.
pub fn run_noisy(cfg: &GameConfig) -> Result<GameTranscript> {
    let Some(noise) = &cfg.noise else {
        return Err(Error::MissingNoise);
    };
    let placed = DensityMatrix::basis_state(cfg.n, cfg.initial - 1)?;
    let channel = depolarizing_kraus(cfg.n, noise.r())?;
    let rho0 = apply_channel(&placed, &channel)?;
    finish_from_placed(cfg, rho0)
}

fn finish_from_placed(cfg: &GameConfig, rho0: DensityMatrix) -> Result<GameTranscript> {
    let opener = bob_unitary(cfg.n, cfg.initial)?;
    let rho1 = conjugate_by(opener.matrix(), &rho0)?;
    let rho2 = classical_mix(&rho1, &cfg.alice)?;
    let closer = bob_unitary(cfg.n, cfg.bob_target)?;
    let rho3 = conjugate_by(&closer.matrix().adjoint(), &rho2)?;
    let outcome = outcome_distribution(&rho3)?;
    let win_probability = outcome[cfg.bob_target - 1];
    Ok(GameTranscript {
        rho0,
        rho1,
        rho2,
        rho3,
        outcome,
        win_probability,
    })
}

/// Computational-basis distribution of a state: real diagonal entries,
/// validated to lie within [`OUTCOME_BAND`] of [0, 1] and then clamped.
pub fn outcome_distribution(rho: &DensityMatrix) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(rho.dim());
    for (index, value) in rho.diagonal_real().into_iter().enumerate() {
        if !(-OUTCOME_BAND..=1.0 + OUTCOME_BAND).contains(&value) {
            return Err(Error::InvalidState {
                index,
                value,
                band: OUTCOME_BAND,
            });
        }
        out.push(value.clamp(0.0, 1.0));
    }
    debug_assert!((out.iter().sum::<f64>() - 1.0).abs() <= 10.0 * OUTCOME_BAND);
    Ok(out)
}

/// Closed-form final probability of state |2> reported in the original
/// three-state noisy-game analysis:
/// `(1/8) (-8 + (7 + a) r) (-1 + p1)` with `a = 2 sqrt(2 r (1 - r))`.
///
/// Kept purely as a comparison reference: it disagrees with the numerical
/// engine (already at r = 0 it yields `1 - p1` where the exact answer is 1),
/// and reports expose the deviation rather than reconciling it.
pub fn paper_win_formula(r: f64, p1: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidProbability {
            name: "noise strength r",
            value: r,
        });
    }
    if !(0.0..=1.0).contains(&p1) {
        return Err(Error::InvalidProbability {
            name: "swap probability p1",
            value: p1,
        });
    }
    let alpha = 2.0 * (2.0 * r * (1.0 - r)).sqrt();
    Ok((1.0 / 8.0) * (-8.0 + (7.0 + alpha) * r) * (-1.0 + p1))
}
