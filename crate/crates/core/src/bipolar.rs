//! Bipolar activation values and memory collections.
//!
//! Every pattern handled by this crate is a vector over {+1, -1}; zero is
//! never a stored value, it only appears in printed traces as the marker
//! for a neuron that has not fired yet.
//!
//! The text format consumed by [`MemorySet::parse`] is line oriented:
//! `#` starts a comment running to the end of the line, blank lines are
//! skipped, and every remaining line is one memory given as
//! whitespace-separated `1`, `+1`, or `-1` tokens. All lines must carry
//! the same number of tokens.

use std::fmt;

use crate::error::{Error, Result};

/// A single activation value.
///
/// `Plus` sorts before `Minus`, so the derived lexicographic order on
/// vectors treats +1 as the smaller token. Canonicalization and sorted
/// report output rely on that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// The numeric value, +1 or -1.
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Reads exactly the tokens `1`, `+1`, and `-1`.
    pub fn from_token(token: &str) -> Option<Sign> {
        parse_sign_token(token)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "1",
            Sign::Minus => "-1",
        })
    }
}

/// The threshold function of the storage test: +1 for any input >= 0,
/// -1 otherwise. The zero case resolving to +1 is what breaks the
/// symmetry between a memory and its complement.
pub fn sgn(x: i64) -> Sign {
    if x >= 0 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// A length-n pattern over {+1, -1}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BipolarVector {
    values: Vec<Sign>,
}

impl BipolarVector {
    pub fn new(values: Vec<Sign>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(BipolarVector { values })
    }

    /// Builds a vector from integer entries, rejecting anything besides
    /// +1 and -1.
    pub fn from_ints(ints: &[i64]) -> Result<Self> {
        let mut values = Vec::with_capacity(ints.len());
        for (i, &x) in ints.iter().enumerate() {
            match x {
                1 => values.push(Sign::Plus),
                -1 => values.push(Sign::Minus),
                other => {
                    return Err(Error::NotBipolar {
                        position: i + 1,
                        value: other,
                    })
                }
            }
        }
        BipolarVector::new(values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, index: usize) -> Sign {
        self.values[index]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.values
    }

    /// Elementwise negation. Not guaranteed to be a fixed point even when
    /// `self` is one.
    pub fn complement(&self) -> BipolarVector {
        BipolarVector {
            values: self.values.iter().map(|s| s.flip()).collect(),
        }
    }

    /// Rotates left by `by` positions: entry i of the result is entry
    /// (i + by) mod n of `self`.
    pub fn cyclic_shift(&self, by: usize) -> BipolarVector {
        let n = self.values.len();
        let by = by % n;
        let mut values = Vec::with_capacity(n);
        values.extend_from_slice(&self.values[by..]);
        values.extend_from_slice(&self.values[..by]);
        BipolarVector { values }
    }
}

impl fmt::Display for BipolarVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// An ordered list of memories of identical length.
///
/// Ordering is significant: reports refer to `memory#1`, `memory#2`, ...
/// by position in this set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemorySet {
    memories: Vec<BipolarVector>,
    n: usize,
}

impl MemorySet {
    pub fn new(memories: Vec<BipolarVector>) -> Result<Self> {
        let first = memories.first().ok_or(Error::EmptyMemorySet)?;
        let n = first.len();
        for m in &memories {
            if m.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.len(),
                });
            }
        }
        Ok(MemorySet { memories, n })
    }

    /// Network dimension shared by every memory.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of memories, the `m` of the capacity discussions.
    pub fn count(&self) -> usize {
        self.memories.len()
    }

    pub fn get(&self, index: usize) -> &BipolarVector {
        &self.memories[index]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BipolarVector> {
        self.memories.iter()
    }

    pub fn memories(&self) -> &[BipolarVector] {
        &self.memories
    }

    /// 0-based position of `v` among the stored memories, if present.
    pub fn position_of(&self, v: &BipolarVector) -> Option<usize> {
        self.memories.iter().position(|m| m == v)
    }

    /// Parses the line-oriented memory format. Errors carry the 1-based
    /// line and byte column of the offending token.
    pub fn parse(text: &str) -> Result<MemorySet> {
        let mut memories: Vec<BipolarVector> = Vec::new();
        let mut width: Option<usize> = None;
        for (line_idx, raw_line) in text.lines().enumerate() {
            let line_no = line_idx + 1;
            let line = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            };
            let tokens = tokens_with_columns(line);
            if tokens.is_empty() {
                continue;
            }
            if let Some(w) = width {
                if tokens.len() != w {
                    return Err(Error::parse(
                        line_no,
                        1,
                        format!("expected {} values, found {}", w, tokens.len()),
                    ));
                }
            } else {
                width = Some(tokens.len());
            }
            let mut values = Vec::with_capacity(tokens.len());
            for (col, tok) in tokens {
                values.push(parse_sign_token(tok).ok_or_else(|| {
                    Error::parse(line_no, col, format!("invalid value '{tok}'; expected 1, +1, or -1"))
                })?);
            }
            memories.push(BipolarVector::new(values)?);
        }
        if memories.is_empty() {
            return Err(Error::parse(1, 1, "no memories found".to_string()));
        }
        MemorySet::new(memories)
    }
}

impl<'a> IntoIterator for &'a MemorySet {
    type Item = &'a BipolarVector;
    type IntoIter = std::slice::Iter<'a, BipolarVector>;

    fn into_iter(self) -> Self::IntoIter {
        self.memories.iter()
    }
}

/// Accepts exactly the tokens `1`, `+1`, and `-1`.
pub(crate) fn parse_sign_token(token: &str) -> Option<Sign> {
    match token {
        "1" | "+1" => Some(Sign::Plus),
        "-1" => Some(Sign::Minus),
        _ => None,
    }
}

/// Splits a line on whitespace, keeping each token's 1-based byte column.
pub(crate) fn tokens_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut offset = 0;
    let mut rest = line;
    loop {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            break;
        }
        let end = trimmed
            .find(char::is_whitespace)
            .unwrap_or(trimmed.len());
        out.push((offset + 1, &trimmed[..end]));
        offset += end;
        rest = &trimmed[end..];
    }
    out
}
