//! Recall keys: clamped fragments and neuron update orders.
//!
//! Neuron indices are 0-based throughout the API and 1-based in every
//! literal and in all printed notation; the conversion happens here and
//! nowhere else.
//!
//! Fragment literals come in two forms: explicit `index:value` pairs
//! such as `1:+1,2:-1`, and the prefix shorthand `"1 -1"` meaning
//! neurons 1..k take the listed values. Order literals use the
//! parenthesized notation `(4)1325` — seed neurons inside the
//! parentheses, then the remaining neurons in update sequence. Networks
//! with ten or more neurons write indices comma-separated, e.g.
//! `(4)1,3,2,5`; without a comma every character is read as one digit.

use std::fmt;

use crate::bipolar::{parse_sign_token, tokens_with_columns, BipolarVector, Sign};
use crate::error::{Error, Result};

/// A partial assignment of neuron values, clamped during recall.
///
/// The assignment order is significant: an ordered recall expects the
/// update order to begin with exactly these neurons in this sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragment {
    assignments: Vec<(usize, Sign)>,
    n: usize,
}

impl Fragment {
    /// Builds a fragment over a network of `n` neurons. Indices are
    /// 0-based, must be distinct, and must lie below `n`.
    pub fn new(assignments: Vec<(usize, Sign)>, n: usize) -> Result<Fragment> {
        if assignments.is_empty() {
            return Err(Error::EmptyFragment);
        }
        let mut seen = vec![false; n];
        for &(idx, _) in &assignments {
            if idx >= n {
                return Err(Error::NeuronOutOfRange {
                    neuron: idx + 1,
                    n,
                });
            }
            if seen[idx] {
                return Err(Error::DuplicateNeuron { neuron: idx + 1 });
            }
            seen[idx] = true;
        }
        Ok(Fragment { assignments, n })
    }

    /// A prefix fragment clamping neurons 1..k to the given values.
    pub fn prefix(values: &[Sign], n: usize) -> Result<Fragment> {
        Fragment::new(
            values.iter().copied().enumerate().collect(),
            n,
        )
    }

    /// The k-value prefix of a full pattern.
    pub fn prefix_of(target: &BipolarVector, k: usize) -> Result<Fragment> {
        if k == 0 || k > target.len() {
            return Err(Error::InvalidSeedCount {
                seed_count: k,
                n: target.len(),
            });
        }
        Fragment::prefix(&target.signs()[..k], target.len())
    }

    /// A single clamped neuron.
    pub fn single(neuron: usize, value: Sign, n: usize) -> Result<Fragment> {
        Fragment::new(vec![(neuron, value)], n)
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn assignments(&self) -> &[(usize, Sign)] {
        &self.assignments
    }

    /// True when the fragment clamps exactly neurons 1..k, listed in
    /// ascending order — the form plain sequential recall requires.
    pub fn is_prefix(&self) -> bool {
        self.assignments
            .iter()
            .enumerate()
            .all(|(pos, &(idx, _))| idx == pos)
    }

    pub fn value_at(&self, neuron: usize) -> Option<Sign> {
        self.assignments
            .iter()
            .find(|&&(idx, _)| idx == neuron)
            .map(|&(_, v)| v)
    }

    /// Parses either literal form against a network of `n` neurons.
    pub fn parse(literal: &str, n: usize) -> Result<Fragment> {
        if literal.contains(':') {
            let mut assignments = Vec::new();
            for part in literal.split(',') {
                // Byte offset of this piece within the literal, 1-based.
                let col = part.as_ptr() as usize - literal.as_ptr() as usize + 1;
                let piece = part.trim();
                let (idx_str, val_str) = piece
                    .split_once(':')
                    .ok_or_else(|| Error::parse(1, col, format!("expected index:value, got '{piece}'")))?;
                let neuron: usize = idx_str.trim().parse().map_err(|_| {
                    Error::parse(1, col, format!("invalid neuron index '{}'", idx_str.trim()))
                })?;
                if neuron == 0 {
                    return Err(Error::parse(1, col, "neuron indices are 1-based"));
                }
                let value = parse_sign_token(val_str.trim()).ok_or_else(|| {
                    Error::parse(
                        1,
                        col,
                        format!("invalid value '{}'; expected 1, +1, or -1", val_str.trim()),
                    )
                })?;
                assignments.push((neuron - 1, value));
            }
            Fragment::new(assignments, n)
        } else {
            let tokens = tokens_with_columns(literal);
            if tokens.is_empty() {
                return Err(Error::parse(1, 1, "fragment literal is empty"));
            }
            let mut values = Vec::with_capacity(tokens.len());
            for (col, tok) in tokens {
                values.push(parse_sign_token(tok).ok_or_else(|| {
                    Error::parse(1, col, format!("invalid value '{tok}'; expected 1, +1, or -1"))
                })?);
            }
            Fragment::prefix(&values, n)
        }
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(idx, value)) in self.assignments.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let v = match value {
                Sign::Plus => "+1",
                Sign::Minus => "-1",
            };
            write!(f, "{}:{v}", idx + 1)?;
        }
        Ok(())
    }
}

/// A permutation of the neurons, the first `seed_count` of which are
/// clamped seeds. Printed as `(4)1325`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateOrder {
    order: Vec<usize>,
    seed_count: usize,
}

impl UpdateOrder {
    /// Builds an order from a 0-based permutation of 0..n.
    pub fn new(order: Vec<usize>, seed_count: usize) -> Result<UpdateOrder> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &idx in &order {
            if idx >= n || seen[idx] {
                return Err(Error::NotAPermutation { n });
            }
            seen[idx] = true;
        }
        if seed_count == 0 || seed_count > n {
            return Err(Error::InvalidSeedCount { seed_count, n });
        }
        Ok(UpdateOrder { order, seed_count })
    }

    /// The ascending order 1, 2, ..., n with the first `seed_count`
    /// neurons clamped. Equivalent to plain prefix recall.
    pub fn identity(n: usize, seed_count: usize) -> Result<UpdateOrder> {
        UpdateOrder::new((0..n).collect(), seed_count)
    }

    /// The default one-seed policy: the seed first, then every other
    /// neuron in ascending index order.
    ///
    /// Panics if `seed >= n`; policy callers always supply in-range seeds.
    pub fn seed_first(seed: usize, n: usize) -> UpdateOrder {
        assert!(seed < n, "seed {seed} out of range for n={n}");
        let mut order = Vec::with_capacity(n);
        order.push(seed);
        order.extend((0..n).filter(|&i| i != seed));
        UpdateOrder {
            order,
            seed_count: 1,
        }
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn seed_count(&self) -> usize {
        self.seed_count
    }

    pub fn positions(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, p: usize) -> usize {
        self.order[p]
    }

    /// Parses the parenthesized order notation. The network dimension is
    /// the total number of indices listed; they must cover 1..n exactly.
    pub fn parse(literal: &str) -> Result<UpdateOrder> {
        let s = literal.trim();
        if !s.starts_with('(') {
            return Err(Error::parse(1, 1, "order literal must start with '('"));
        }
        let close = s
            .find(')')
            .ok_or_else(|| Error::parse(1, s.len(), "missing ')' in order literal"))?;
        let comma_mode = s.contains(',');
        let seeds = parse_index_list(&s[1..close], 2, comma_mode)?;
        let tail = parse_index_list(&s[close + 1..], close + 2, comma_mode)?;
        if seeds.is_empty() {
            return Err(Error::parse(1, 2, "order literal needs at least one seed"));
        }
        let indices: Vec<usize> = seeds.iter().chain(tail.iter()).copied().collect();
        let n = indices.len();
        let order: Vec<usize> = indices
            .iter()
            .map(|&i| {
                if i >= 1 && i <= n {
                    Ok(i - 1)
                } else {
                    Err(Error::NotAPermutation { n })
                }
            })
            .collect::<Result<_>>()?;
        UpdateOrder::new(order, seeds.len())
    }

    /// The parenthesized notation, 1-based: compact digits up to nine
    /// neurons, comma-separated beyond that.
    pub fn notation(&self) -> String {
        let n = self.order.len();
        let join = |ids: &[usize]| -> String {
            if n <= 9 {
                ids.iter().map(|i| (i + 1).to_string()).collect()
            } else {
                ids.iter()
                    .map(|i| (i + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            }
        };
        format!(
            "({}){}",
            join(&self.order[..self.seed_count]),
            join(&self.order[self.seed_count..])
        )
    }
}

impl fmt::Display for UpdateOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

/// Reads an index list, either one digit per character or comma
/// separated, skipping whitespace. `col0` is the 1-based column of the
/// list's first character, used for error positions.
fn parse_index_list(part: &str, col0: usize, comma_mode: bool) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    if comma_mode {
        let mut col = col0;
        for token in part.split(',') {
            let trimmed = token.trim();
            if trimmed.is_empty() {
                if part.trim().is_empty() && out.is_empty() {
                    break; // an entirely empty list, e.g. no tail
                }
                return Err(Error::parse(1, col, "empty index in order literal"));
            }
            let idx: usize = trimmed
                .parse()
                .map_err(|_| Error::parse(1, col, format!("invalid neuron index '{trimmed}'")))?;
            if idx == 0 {
                return Err(Error::parse(1, col, "neuron indices are 1-based"));
            }
            out.push(idx);
            col += token.len() + 1;
        }
    } else {
        for (pos, ch) in part.char_indices() {
            if ch.is_whitespace() {
                continue;
            }
            let digit = ch.to_digit(10).ok_or_else(|| {
                Error::parse(1, col0 + pos, format!("invalid character '{ch}' in order literal"))
            })?;
            if digit == 0 {
                return Err(Error::parse(1, col0 + pos, "neuron indices are 1-based"));
            }
            out.push(digit as usize);
        }
    }
    Ok(out)
}
