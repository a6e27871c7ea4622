//! Symmetric-group machinery: enumeration of S_N, permutation matrices, and
//! the classical mixing step.
//!
//! Permutations act on states by conjugation. Instead of two dense matrix
//! products, [`conjugate_by_permutation`] moves entries directly:
//! `out[p(i)][p(j)] = rho[i][j]`, which is O(n²) and exact. A classical
//! strategy is a sparse probability assignment over non-identity
//! permutations; the identity implicitly carries the remaining mass.
//!
//! [`classical_mix`] accumulates the convex combination in a fixed order
//! (identity first, then keyed permutations in ascending one-line order),
//! chunked into [`MIX_CHUNK`]-term partial sums. The parallel and sequential
//! paths evaluate the same chunk tree, so their outputs are bitwise
//! identical.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexScalar, DensityMatrix, MAX_DIM};

/// Largest supported group degree; 9! = 362880 keeps full mixing fast.
pub const MAX_DEGREE: usize = MAX_DIM;

/// Slack allowed on the total keyed probability mass.
pub const STRATEGY_MASS_TOL: f64 = 1e-12;

/// Terms per partial sum in the mixing accumulation tree.
pub const MIX_CHUNK: usize = 128;

/// Below this many terms the parallel path cannot amortize its fan-out.
const PARALLEL_DISPATCH_MIN_TERMS: usize = 1024;

/// Element of S_n in one-line notation: `map[j] = p(j)`, 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    n: usize,
    map: Vec<usize>,
}

impl Permutation {
    /// Validates that `map` is a bijection on {0, .., n-1}.
    pub fn from_one_line(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        check_degree(n)?;
        let mut seen = [false; MAX_DEGREE];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(Error::InvalidStrategy(format!(
                    "not a permutation of 0..{n}: {map:?}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self { n, map })
    }

    pub fn identity(n: usize) -> Result<Self> {
        check_degree(n)?;
        Ok(Self {
            n,
            map: (0..n).collect(),
        })
    }

    /// Parses the 1-based space-separated form used in files and reports,
    /// e.g. `"2 1 3"` for the swap of the first two of three states.
    pub fn from_one_based_key(key: &str, n: usize) -> Result<Self> {
        check_degree(n)?;
        let mut map = Vec::with_capacity(n);
        for token in key.split_whitespace() {
            let v: usize = token.parse().map_err(|_| {
                Error::StrategyFormat(format!("bad permutation key {key:?}: {token:?} is not an integer"))
            })?;
            if !(1..=n).contains(&v) {
                return Err(Error::StrategyFormat(format!(
                    "bad permutation key {key:?}: {v} outside 1..={n}"
                )));
            }
            map.push(v - 1);
        }
        if map.len() != n {
            return Err(Error::StrategyFormat(format!(
                "bad permutation key {key:?}: expected {n} entries, got {}",
                map.len()
            )));
        }
        Self::from_one_line(map)
            .map_err(|_| Error::StrategyFormat(format!("bad permutation key {key:?}: not a bijection")))
    }

    /// 1-based space-separated form, the inverse of [`Self::from_one_based_key`].
    pub fn one_based_key(&self) -> String {
        self.map
            .iter()
            .map(|v| (v + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn one_line(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, j: usize) -> usize {
        self.map[j]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(j, &v)| j == v)
    }

    /// Composition `self . other`: applies `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(Self {
            n: self.n,
            map: (0..self.n).map(|j| self.map[other.map[j]]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n];
        for (j, &v) in self.map.iter().enumerate() {
            inv[v] = j;
        }
        Self { n: self.n, map: inv }
    }
}

fn check_degree(n: usize) -> Result<()> {
    if (1..=MAX_DEGREE).contains(&n) {
        Ok(())
    } else {
        Err(Error::CapacityExceeded {
            name: "group degree",
            value: n,
            max: MAX_DEGREE,
        })
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// All n! elements of S_n in lexicographic one-line order; the identity
/// comes first.
pub fn enumerate_sn(n: usize) -> Result<Vec<Permutation>> {
    check_degree(n)?;
    let mut out = Vec::with_capacity(factorial(n));
    let mut map: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation {
            n,
            map: map.clone(),
        });
        if !next_lexicographic(&mut map) {
            break;
        }
    }
    Ok(out)
}

/// Advances `map` to its lexicographic successor; false once exhausted.
fn next_lexicographic(map: &mut [usize]) -> bool {
    if map.len() < 2 {
        return false;
    }
    let mut i = map.len() - 1;
    while i > 0 && map[i - 1] >= map[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = map.len() - 1;
    while map[j] <= map[i - 1] {
        j -= 1;
    }
    map.swap(i - 1, j);
    map[i..].reverse();
    true
}

/// Permutation matrix X(p): column j carries its single 1 in row p(j).
pub fn perm_to_matrix(p: &Permutation) -> ComplexMatrix {
    let n = p.n;
    let mut entries = vec![ComplexScalar::new(0.0, 0.0); n * n];
    for j in 0..n {
        entries[p.map[j] * n + j] = ComplexScalar::new(1.0, 0.0);
    }
    ComplexMatrix::from_parts(n, entries)
}

/// X(p) rho X(p)^H by entry re-indexing: `out[p(i)][p(j)] = rho[i][j]`.
///
/// O(n²), no arithmetic, so trace and Frobenius norm are preserved exactly.
pub fn conjugate_by_permutation(rho: &DensityMatrix, p: &Permutation) -> Result<DensityMatrix> {
    let d = rho.dim();
    if p.n != d {
        return Err(Error::DimensionMismatch {
            left: p.n,
            right: d,
        });
    }
    let src = rho.matrix().entries();
    let mut out = vec![ComplexScalar::new(0.0, 0.0); d * d];
    for i in 0..d {
        for j in 0..d {
            out[p.map[i] * d + p.map[j]] = src[i * d + j];
        }
    }
    DensityMatrix::new(ComplexMatrix::from_parts(d, out))
}

/// Alice's classical strategy: probabilities over non-identity permutations.
///
/// The identity is excluded from explicit keys and implicitly carries
/// `1 - sum` of the keyed mass. Keys iterate in ascending one-line order,
/// which fixes the mixing accumulation order.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalStrategy {
    n: usize,
    probs: BTreeMap<Permutation, f64>,
}

impl ClassicalStrategy {
    /// Strategy that leaves the state alone (all mass on the identity).
    pub fn empty(n: usize) -> Result<Self> {
        check_degree(n)?;
        Ok(Self {
            n,
            probs: BTreeMap::new(),
        })
    }

    pub fn new(n: usize, pairs: impl IntoIterator<Item = (Permutation, f64)>) -> Result<Self> {
        check_degree(n)?;
        let mut probs = BTreeMap::new();
        for (p, w) in pairs {
            if p.n != n {
                return Err(Error::InvalidStrategy(format!(
                    "permutation {:?} has degree {}, strategy expects {n}",
                    p.one_based_key(),
                    p.n
                )));
            }
            if p.is_identity() {
                return Err(Error::InvalidStrategy(
                    "the identity must not be an explicit key; it carries the remainder mass".into(),
                ));
            }
            if !(0.0..=1.0).contains(&w) {
                return Err(Error::InvalidStrategy(format!(
                    "probability {w} for key {:?} outside [0, 1]",
                    p.one_based_key()
                )));
            }
            if probs.insert(p.clone(), w).is_some() {
                return Err(Error::InvalidStrategy(format!(
                    "duplicate key {:?}",
                    p.one_based_key()
                )));
            }
        }
        let total: f64 = probs.values().sum();
        if total > 1.0 + STRATEGY_MASS_TOL {
            return Err(Error::InvalidStrategy(format!(
                "keyed probabilities sum to {total}, exceeding 1"
            )));
        }
        Ok(Self { n, probs })
    }

    /// Parses the strategy file schema:
    /// `{"n": 3, "probs": {"2 1 3": 0.25, "3 2 1": 0.1}}`.
    /// Unknown top-level keys are rejected.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct StrategyFile {
            n: usize,
            #[serde(default)]
            probs: BTreeMap<String, f64>,
        }
        let file: StrategyFile =
            serde_json::from_str(text).map_err(|e| Error::StrategyFormat(e.to_string()))?;
        check_degree(file.n)?;
        let mut pairs = Vec::with_capacity(file.probs.len());
        for (key, w) in file.probs {
            pairs.push((Permutation::from_one_based_key(&key, file.n)?, w));
        }
        Self::new(file.n, pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probs(&self) -> &BTreeMap<Permutation, f64> {
        &self.probs
    }

    pub fn probability_of(&self, p: &Permutation) -> f64 {
        self.probs.get(p).copied().unwrap_or(0.0)
    }

    /// Mass left for the identity, clamped at zero.
    pub fn identity_mass(&self) -> f64 {
        let total: f64 = self.probs.values().sum();
        (1.0 - total).max(0.0)
    }
}

/// Evolves `rho` under Alice's strategy:
/// `(1 - sum p_i) rho + sum p_i X_i rho X_i^H`.
///
/// Dispatches to the parallel path for large strategies when the `parallel`
/// feature is enabled; all paths produce bitwise-identical results.
pub fn classical_mix(rho: &DensityMatrix, strategy: &ClassicalStrategy) -> Result<DensityMatrix> {
    #[cfg(feature = "parallel")]
    {
        if strategy.probs.len() + 1 >= PARALLEL_DISPATCH_MIN_TERMS {
            return classical_mix_parallel(rho, strategy);
        }
    }
    classical_mix_sequential(rho, strategy)
}

/// Sequential mixing path.
pub fn classical_mix_sequential(
    rho: &DensityMatrix,
    strategy: &ClassicalStrategy,
) -> Result<DensityMatrix> {
    let (d, terms) = mix_terms(rho, strategy)?;
    let src = rho.matrix().entries();
    let mut total = vec![ComplexScalar::new(0.0, 0.0); d * d];
    for chunk in terms.chunks(MIX_CHUNK) {
        let partial = eval_chunk(chunk, src, d);
        for (t, p) in total.iter_mut().zip(&partial) {
            *t += *p;
        }
    }
    DensityMatrix::new(ComplexMatrix::from_parts(d, total))
}

/// Parallel mixing path. Chunk partials are computed concurrently, then
/// folded in chunk order, matching the sequential accumulation tree.
#[cfg(feature = "parallel")]
pub fn classical_mix_parallel(
    rho: &DensityMatrix,
    strategy: &ClassicalStrategy,
) -> Result<DensityMatrix> {
    use rayon::prelude::*;

    let (d, terms) = mix_terms(rho, strategy)?;
    let src = rho.matrix().entries();
    let partials: Vec<Vec<ComplexScalar>> = terms
        .par_chunks(MIX_CHUNK)
        .map(|chunk| eval_chunk(chunk, src, d))
        .collect();
    let mut total = vec![ComplexScalar::new(0.0, 0.0); d * d];
    for partial in &partials {
        for (t, p) in total.iter_mut().zip(partial) {
            *t += *p;
        }
    }
    DensityMatrix::new(ComplexMatrix::from_parts(d, total))
}

type MixTerm<'a> = (f64, Option<&'a Permutation>);

fn mix_terms<'a>(
    rho: &DensityMatrix,
    strategy: &'a ClassicalStrategy,
) -> Result<(usize, Vec<MixTerm<'a>>)> {
    let d = rho.dim();
    if strategy.n != d {
        return Err(Error::DimensionMismatch {
            left: strategy.n,
            right: d,
        });
    }
    let mut terms = Vec::with_capacity(strategy.probs.len() + 1);
    terms.push((strategy.identity_mass(), None));
    terms.extend(strategy.probs.iter().map(|(p, &w)| (w, Some(p))));
    Ok((d, terms))
}

fn eval_chunk(chunk: &[MixTerm<'_>], src: &[ComplexScalar], d: usize) -> Vec<ComplexScalar> {
    let mut partial = vec![ComplexScalar::new(0.0, 0.0); d * d];
    for &(w, p) in chunk {
        match p {
            None => {
                for (dst, s) in partial.iter_mut().zip(src) {
                    *dst += *s * w;
                }
            }
            Some(p) => {
                for i in 0..d {
                    for j in 0..d {
                        partial[p.map[i] * d + p.map[j]] += src[i * d + j] * w;
                    }
                }
            }
        }
    }
    partial
}
