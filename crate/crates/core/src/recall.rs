//! Sequential spreading recall.
//!
//! Recall is strictly sequential: an undetermined neuron computes its
//! value only from neurons that already hold one, and each step
//! determines exactly one new neuron. Clamped fragment values are never
//! recomputed. A zero input sum resolves to +1, inheriting the sgn
//! convention of the storage test.
//!
//! Plain [`recall`] drives a prefix fragment through the lower
//! triangular spread matrix in ascending neuron order; because the
//! matrix is strictly lower triangular, one sweep determines every
//! neuron and a second sweep would change nothing. [`ordered_recall`]
//! generalizes to an arbitrary update order, reading weights from the
//! full symmetric matrix; with the identity order and a prefix fragment
//! the two are bit-identical.

use crate::bipolar::{sgn, BipolarVector, Sign};
use crate::error::{Error, Result};
use crate::fragment::{Fragment, UpdateOrder};
use crate::weights::{SpreadMatrix, WeightMatrix};

/// The step-by-step record of one recall.
///
/// `steps[0]` is the clamped starting state; every following step
/// determines exactly one additional neuron and the last step is the
/// fully determined result. `None` marks a neuron that has not fired
/// yet (printed as 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecallTrace {
    pub steps: Vec<Vec<Option<Sign>>>,
    pub result: BipolarVector,
}

impl RecallTrace {
    /// One line per step, undetermined neurons rendered as `0`.
    pub fn render_steps(&self) -> Vec<String> {
        self.steps
            .iter()
            .map(|step| {
                step.iter()
                    .map(|v| match v {
                        Some(s) => s.to_string(),
                        None => "0".to_string(),
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }
}

/// Completes a prefix fragment through the spread matrix: for each
/// neuron j beyond the fragment, in ascending order, the value is the
/// sgn of the weighted sum of all earlier neurons.
///
/// Non-prefix fragments are rejected; route those through
/// [`ordered_recall`] with an explicit order.
pub fn recall(b: &SpreadMatrix, fragment: &Fragment) -> Result<(BipolarVector, RecallTrace)> {
    let n = b.n();
    if fragment.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: fragment.n(),
        });
    }
    if !fragment.is_prefix() {
        return Err(Error::NonPrefixFragment);
    }

    let mut state: Vec<Option<Sign>> = vec![None; n];
    for &(idx, value) in fragment.assignments() {
        state[idx] = Some(value);
    }
    let mut steps = vec![state.clone()];
    for j in fragment.len()..n {
        let input: i64 = (0..j)
            .map(|i| b.get(j, i) * state[i].expect("earlier neuron determined").value())
            .sum();
        state[j] = Some(sgn(input));
        steps.push(state.clone());
    }
    finish(state, steps)
}

/// Completes a seed fragment along an arbitrary update order: each
/// undetermined neuron, taken in order, receives the weighted sum of
/// every already-determined neuron under the full weight matrix.
///
/// The order must begin with exactly the seed neurons, in the order the
/// fragment lists them.
pub fn ordered_recall(
    t: &WeightMatrix,
    seeds: &Fragment,
    order: &UpdateOrder,
) -> Result<(BipolarVector, RecallTrace)> {
    let n = t.n();
    if seeds.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: seeds.n(),
        });
    }
    if order.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: order.n(),
        });
    }
    let k = order.seed_count();
    if seeds.len() != k {
        return Err(Error::SeedsOrderMismatch { seed_count: k });
    }
    for (pos, &(idx, _)) in seeds.assignments().iter().enumerate() {
        if order.position(pos) != idx {
            return Err(Error::SeedsOrderMismatch { seed_count: k });
        }
    }

    let mut state: Vec<Option<Sign>> = vec![None; n];
    for &(idx, value) in seeds.assignments() {
        state[idx] = Some(value);
    }
    let mut steps = vec![state.clone()];
    for p in k..n {
        let j = order.position(p);
        let input: i64 = state
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|s| t.get(j, i) * s.value()))
            .sum();
        state[j] = Some(sgn(input));
        steps.push(state.clone());
    }
    finish(state, steps)
}

fn finish(
    state: Vec<Option<Sign>>,
    steps: Vec<Vec<Option<Sign>>>,
) -> Result<(BipolarVector, RecallTrace)> {
    let result = BipolarVector::new(
        state
            .into_iter()
            .map(|v| v.expect("all neurons determined"))
            .collect(),
    )?;
    Ok((result.clone(), RecallTrace { steps, result }))
}
