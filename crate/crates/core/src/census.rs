//! Brute-force enumeration of the full bipolar state space.
//!
//! The census pushes every one of the 2^n states through the storage
//! test and classifies the fixed points; at desk scale it is the ground
//! truth for the storage and capacity claims made elsewhere in the
//! crate.

use crate::bipolar::{BipolarVector, MemorySet, Sign};
use crate::error::{Error, Result};
use crate::weights::WeightMatrix;

/// Default ceiling on the census dimension (about a million states).
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

/// Classification of every fixed point of the storage test, plus any
/// trained memories that fail it (an overloaded network).
///
/// The three fixed-point lists are pairwise disjoint and each is sorted
/// by state encoding (see [`state_code`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateCensus {
    /// Trained memories that pass the storage test.
    pub stored: Vec<BipolarVector>,
    /// Fixed points that are complements of trained memories without
    /// being trained themselves.
    pub complements: Vec<BipolarVector>,
    /// Fixed points that are neither trained nor complements of trained.
    pub spurious: Vec<BipolarVector>,
    /// Trained memories that fail the storage test.
    pub nonfixed_trained: Vec<BipolarVector>,
}

impl StateCensus {
    pub fn fixed_point_count(&self) -> usize {
        self.stored.len() + self.complements.len() + self.spurious.len()
    }
}

/// Encodes a state as an integer with +1 -> 1, -1 -> 0, neuron 1 as the
/// most significant bit. The census enumerates codes in ascending order.
pub fn state_code(v: &BipolarVector) -> u64 {
    assert!(v.len() <= 63, "state encoding supports at most 63 neurons");
    v.signs().iter().fold(0u64, |code, s| {
        (code << 1) | u64::from(*s == Sign::Plus)
    })
}

/// Inverse of [`state_code`] for a fixed dimension.
pub fn state_from_code(code: u64, n: usize) -> BipolarVector {
    let values = (0..n)
        .map(|i| {
            if (code >> (n - 1 - i)) & 1 == 1 {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect();
    BipolarVector::new(values).expect("n >= 1")
}

/// Enumerates all 2^n bipolar states, tests each with the storage test,
/// and classifies the fixed points against the trained set.
///
/// Refuses dimensions above `cap` rather than silently grinding through
/// an exponential space.
pub fn fixed_point_census(
    t: &WeightMatrix,
    memories: &MemorySet,
    cap: usize,
) -> Result<StateCensus> {
    let n = t.n();
    if memories.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: memories.n(),
        });
    }
    if n > cap {
        return Err(Error::EnumerationCapExceeded { n, cap });
    }

    let mut census = StateCensus {
        stored: Vec::new(),
        complements: Vec::new(),
        spurious: Vec::new(),
        nonfixed_trained: Vec::new(),
    };
    for code in 0..(1u64 << n) {
        let state = state_from_code(code, n);
        if !t.is_stored(&state)? {
            continue;
        }
        if memories.position_of(&state).is_some() {
            census.stored.push(state);
        } else if memories.position_of(&state.complement()).is_some() {
            census.complements.push(state);
        } else {
            census.spurious.push(state);
        }
    }
    for m in memories {
        if !t.is_stored(m)? {
            census.nonfixed_trained.push(m.clone());
        }
    }
    Ok(census)
}
