//! Exhaustive generator discovery and capacity accounting.
//!
//! Everything here enumerates rather than approximates: minimal prefix
//! fragments by growing k, one-bit generators over all (n-1)! completion
//! orders per seed, and the single-seed state census over the same
//! space. The factorial searches refuse to run above
//! [`DEFAULT_SEARCH_CAP`] unless the caller raises the cap explicitly.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::bipolar::{BipolarVector, MemorySet, Sign};
use crate::census::state_code;
use crate::error::{Error, Result};
use crate::fragment::{Fragment, UpdateOrder};
use crate::recall::{ordered_recall, recall};
use crate::weights::{SpreadMatrix, WeightMatrix};

/// Default ceiling for the factorial order searches (8 * 7! completions
/// per seed value).
pub const DEFAULT_SEARCH_CAP: usize = 8;

/// A fragment plus update order that reproduces a specific target
/// vector when replayed through recall.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorRecord {
    /// The vector this generator reproduces.
    pub target: BipolarVector,
    pub fragment: Fragment,
    pub order: UpdateOrder,
    /// No shorter fragment succeeds under the same order policy.
    pub minimal: bool,
    /// False when only the full fragment reproduces the target, i.e.
    /// the vector is not properly generated from a smaller key.
    pub proper: bool,
}

impl GeneratorRecord {
    /// The parenthesized order notation, e.g. `(4)1325`.
    pub fn notation(&self) -> String {
        self.order.notation()
    }
}

/// Finds the smallest k such that clamping the target's first k values
/// and running plain recall reproduces the target exactly.
///
/// The full fragment always reproduces itself, so k = n is the fallback;
/// it is reported with `proper = false`.
pub fn minimal_prefix_generator(
    b: &SpreadMatrix,
    target: &BipolarVector,
) -> Result<GeneratorRecord> {
    let n = b.n();
    if target.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: target.len(),
        });
    }
    for k in 1..=n {
        let fragment = Fragment::prefix_of(target, k)?;
        let (result, _) = recall(b, &fragment)?;
        if &result == target {
            return Ok(GeneratorRecord {
                target: target.clone(),
                fragment,
                order: UpdateOrder::identity(n, k)?,
                minimal: true,
                proper: k < n,
            });
        }
    }
    unreachable!("the full fragment reproduces its own vector");
}

/// Exhaustively enumerates every single-neuron seed (value fixed to the
/// target's own value there, so the generator agrees with what it
/// generates) and every completion order, returning the pairs whose
/// ordered recall reproduces the target.
///
/// Output is deterministic: ascending by seed neuron, then lexicographic
/// by completion order.
pub fn find_one_bit_generators(
    t: &WeightMatrix,
    target: &BipolarVector,
    max_n: usize,
) -> Result<Vec<GeneratorRecord>> {
    let n = t.n();
    if target.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: target.len(),
        });
    }
    if n > max_n {
        return Err(Error::SearchSpaceExceeded { n, cap: max_n });
    }

    let mut records = Vec::new();
    for seed in 0..n {
        let fragment = Fragment::single(seed, target.get(seed), n)?;
        let rest: Vec<usize> = (0..n).filter(|&i| i != seed).collect();
        for completion in permutations_of(&rest) {
            let mut positions = Vec::with_capacity(n);
            positions.push(seed);
            positions.extend(completion);
            let order = UpdateOrder::new(positions, 1)?;
            let (result, _) = ordered_recall(t, &fragment, &order)?;
            if &result == target {
                records.push(GeneratorRecord {
                    target: target.clone(),
                    fragment: fragment.clone(),
                    order,
                    minimal: true,
                    proper: n > 1,
                });
            }
        }
    }
    Ok(records)
}

/// All permutations of `items`, lexicographic when `items` is ascending.
/// An empty slice yields the single empty permutation.
fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    items.iter().copied().permutations(items.len()).collect()
}

/// How a recalled vector relates to the trained set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateClass {
    /// A trained memory (0-based index) that passes the storage test.
    Stored { memory: usize },
    /// A fixed point whose complement is trained.
    Complement { memory: usize },
    /// A fixed point that is neither trained nor a complement of one.
    Spurious,
    /// Not a fixed point of the storage test at all.
    NotFixed,
}

impl std::fmt::Display for StateClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StateClass::Stored { memory } => write!(f, "memory#{}", memory + 1),
            StateClass::Complement { memory } => {
                write!(f, "complement-of-memory#{}", memory + 1)
            }
            StateClass::Spurious => f.write_str("spurious"),
            StateClass::NotFixed => f.write_str("not-fixed"),
        }
    }
}

/// Classifies `v` the same way the fixed-point census would: trained and
/// fixed, complement-of-trained and fixed, spurious fixed, or not fixed.
pub fn classify(t: &WeightMatrix, memories: &MemorySet, v: &BipolarVector) -> Result<StateClass> {
    if !t.is_stored(v)? {
        return Ok(StateClass::NotFixed);
    }
    if let Some(memory) = memories.position_of(v) {
        return Ok(StateClass::Stored { memory });
    }
    if let Some(memory) = memories.position_of(&v.complement()) {
        return Ok(StateClass::Complement { memory });
    }
    Ok(StateClass::Spurious)
}

/// One single-seed recall under the capacity policy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacityEntry {
    /// Seed neuron, 0-based.
    pub seed: usize,
    pub value: Sign,
    pub result: BipolarVector,
    pub class: StateClass,
}

/// The full map of single-seed recalls: at most 2n seed/value pairs
/// exist, so at most 2n distinct vectors can ever be recalled this way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacityReport {
    pub entries: Vec<CapacityEntry>,
    pub distinct_count: usize,
    /// The counting bound 2n.
    pub bound: usize,
}

/// Runs ordered recall for every (seed, value) pair under the given
/// order policy and classifies each result. The policy maps a 0-based
/// seed and the dimension to one deterministic update order whose first
/// position is the seed.
pub fn one_bit_capacity(
    t: &WeightMatrix,
    memories: &MemorySet,
    policy: impl Fn(usize, usize) -> UpdateOrder,
) -> Result<CapacityReport> {
    let n = t.n();
    if memories.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: memories.n(),
        });
    }

    let mut entries = Vec::with_capacity(2 * n);
    let mut distinct = BTreeSet::new();
    for seed in 0..n {
        for value in [Sign::Plus, Sign::Minus] {
            let fragment = Fragment::single(seed, value, n)?;
            let order = policy(seed, n);
            let (result, _) = ordered_recall(t, &fragment, &order)?;
            let class = classify(t, memories, &result)?;
            distinct.insert(result.clone());
            entries.push(CapacityEntry {
                seed,
                value,
                result,
                class,
            });
        }
    }
    Ok(CapacityReport {
        entries,
        distinct_count: distinct.len(),
        bound: 2 * n,
    })
}

/// The default capacity policy: the seed first, every other neuron in
/// ascending index order.
pub fn seed_first_ascending(seed: usize, n: usize) -> UpdateOrder {
    UpdateOrder::seed_first(seed, n)
}

/// The representative of `v`'s orbit under complement and cyclic shifts:
/// the lexicographically smallest member with +1 ordering before -1.
pub fn canonicalize(v: &BipolarVector) -> BipolarVector {
    let n = v.len();
    let mut best: Option<BipolarVector> = None;
    for base in [v.clone(), v.complement()] {
        for shift in 0..n {
            let candidate = base.cyclic_shift(shift);
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
    }
    best.expect("orbit is nonempty")
}

/// Every state reachable by single-seed ordered recall, collapsed to
/// canonical orbit representatives and sorted.
///
/// The space is all n seeds, both seed values, and all (n-1)! completion
/// orders.
pub fn local_spread_census(t: &WeightMatrix, max_n: usize) -> Result<Vec<BipolarVector>> {
    let n = t.n();
    if n > max_n {
        return Err(Error::SearchSpaceExceeded { n, cap: max_n });
    }

    let mut classes = BTreeSet::new();
    for seed in 0..n {
        let rest: Vec<usize> = (0..n).filter(|&i| i != seed).collect();
        for completion in permutations_of(&rest) {
            let mut positions = Vec::with_capacity(n);
            positions.push(seed);
            positions.extend(completion);
            let order = UpdateOrder::new(positions, 1)?;
            for value in [Sign::Plus, Sign::Minus] {
                let fragment = Fragment::single(seed, value, n)?;
                let (result, _) = ordered_recall(t, &fragment, &order)?;
                classes.insert(canonicalize(&result));
            }
        }
    }
    Ok(classes.into_iter().collect())
}

/// Sorts vectors by their state encoding, the order the census reports
/// use.
pub fn sort_by_encoding(vectors: &mut [BipolarVector]) {
    vectors.sort_by_key(state_code);
}
