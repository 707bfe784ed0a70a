//! Hebbian associative memory with fragment-indexed recall.
//!
//! A network of n bipolar neurons stores memories as the sum of their
//! outer products (diagonal zeroed) and recalls them from partial keys:
//! clamp a fragment of neuron values, then let the remaining neurons
//! fire one at a time, each taking the sign of its weighted input from
//! the neurons already determined. The smallest fragment that
//! reproduces a memory is that memory's generator; with a per-memory
//! update order as side information, a single neuron value can suffice.
//!
//! The crate is organized around that pipeline:
//!
//! * [`bipolar`] — `{+1, -1}` vectors, memory sets, the text format.
//! * [`weights`] — Hebbian training, the storage test, and the
//!   lower-triangular decomposition that drives sequential recall.
//! * [`census`] — brute-force enumeration of all 2^n states, the oracle
//!   for every storage and capacity claim.
//! * [`fragment`] — clamped fragments and update orders, including the
//!   `(4)1325` notation.
//! * [`recall`] — sequential recall, plain and order-parameterized.
//! * [`search`] — exhaustive generator discovery, one-bit capacity, and
//!   the canonical single-seed state census.
//! * [`spread`] — the signed interconnection graph and local spreading
//!   of activity from single neurons.
//!
//! Everything is exact integer arithmetic and every function is pure;
//! values move freely across threads.
//!
//! ```
//! use memgen_core::{Fragment, MemorySet, SpreadMatrix, WeightMatrix, recall};
//!
//! let memories = MemorySet::parse("1 1 1 1 1\n1 -1 -1 -1 1\n1 1 -1 -1 -1\n")?;
//! let t = WeightMatrix::train(&memories);
//! let b = SpreadMatrix::decompose(&t);
//! let fragment = Fragment::parse("1 -1", memories.n())?;
//! let (result, _trace) = recall(&b, &fragment)?;
//! assert_eq!(&result, memories.get(1));
//! # Ok::<(), memgen_core::Error>(())
//! ```

pub mod bipolar;
pub mod census;
pub mod error;
pub mod fragment;
pub mod recall;
pub mod search;
pub mod spread;
pub mod weights;

pub use bipolar::{sgn, BipolarVector, MemorySet, Sign};
pub use census::{
    fixed_point_census, state_code, state_from_code, StateCensus, DEFAULT_ENUMERATION_CAP,
};
pub use error::{Error, Result};
pub use fragment::{Fragment, UpdateOrder};
pub use recall::{ordered_recall, recall, RecallTrace};
pub use search::{
    canonicalize, classify, find_one_bit_generators, local_spread_census,
    minimal_prefix_generator, one_bit_capacity, seed_first_ascending, CapacityEntry,
    CapacityReport, GeneratorRecord, StateClass, DEFAULT_SEARCH_CAP,
};
pub use spread::{
    local_spread, local_spread_with, spread_then_recall, spread_then_recall_with, Coordinates,
    Edge, InterconnectionGraph, SelectionPolicy, SpreadRecall, SpreadResult,
};
pub use weights::{SpreadMatrix, WeightMatrix};
