//! The signed interconnection graph and local spreading of activity.
//!
//! Local spreading grows a fragment outward from one seed neuron along
//! nonzero connections. Two rules drive it, both with total tie-breaks
//! so identical inputs always produce identical results:
//!
//! * selection — the next neuron to activate is the inactive neighbor
//!   of the active set with the greatest total absolute connection
//!   strength to it; ties go to the lowest neuron index. With per-neuron
//!   coordinates supplied, nearest Euclidean distance to the active set
//!   replaces strength.
//! * value — the new neuron takes the sign of its single strongest
//!   connection into the active set (strongest by absolute weight, ties
//!   to the lowest source index) times that source's value.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::bipolar::{sgn, tokens_with_columns, BipolarVector, Sign};
use crate::error::{Error, Result};
use crate::fragment::{Fragment, UpdateOrder};
use crate::recall::{ordered_recall, RecallTrace};
use crate::weights::WeightMatrix;

/// An undirected edge between two neurons, present only when the weight
/// is nonzero. `a < b`, both 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub weight: i64,
}

impl Edge {
    pub fn is_positive(&self) -> bool {
        self.weight > 0
    }
}

/// The sign/weight structure of a weight matrix as a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterconnectionGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl InterconnectionGraph {
    /// One edge per nonzero off-diagonal pair, weights preserved exactly.
    pub fn build(t: &WeightMatrix) -> InterconnectionGraph {
        let n = t.n();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                let weight = t.get(a, b);
                if weight != 0 {
                    edges.push(Edge { a, b, weight });
                }
            }
        }
        InterconnectionGraph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges.iter().any(|e| e.a == a && e.b == b)
    }

    /// Graphviz DOT rendering: blue edges for positive correlation, red
    /// for negative, pen width proportional to the weight magnitude.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph interconnections {\n");
        for i in 0..self.n {
            let _ = writeln!(out, "    n{};", i + 1);
        }
        for e in &self.edges {
            let color = if e.is_positive() { "blue" } else { "red" };
            let _ = writeln!(
                out,
                "    n{} -- n{} [color={color}, label=\"{}\", penwidth={}];",
                e.a + 1,
                e.b + 1,
                e.weight,
                e.weight.abs()
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Per-neuron planar coordinates for the proximity selection rule.
/// Parsed from lines of `index x y`, with the same comment and blank
/// line rules as the memory format.
#[derive(Debug, Clone, PartialEq)]
pub struct Coordinates {
    points: HashMap<usize, (f64, f64)>,
}

impl Coordinates {
    pub fn parse(text: &str) -> Result<Coordinates> {
        let mut points = HashMap::new();
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
            if tokens.len() != 3 {
                return Err(Error::parse(
                    line_no,
                    tokens[0].0,
                    "expected 'index x y'".to_string(),
                ));
            }
            let (col, idx_tok) = tokens[0];
            let neuron: usize = idx_tok
                .parse()
                .map_err(|_| Error::parse(line_no, col, format!("invalid neuron index '{idx_tok}'")))?;
            if neuron == 0 {
                return Err(Error::parse(line_no, col, "neuron indices are 1-based"));
            }
            let mut coord = [0f64; 2];
            for (slot, &(col, tok)) in tokens[1..].iter().enumerate() {
                coord[slot] = tok.parse().map_err(|_| {
                    Error::parse(line_no, col, format!("invalid coordinate '{tok}'"))
                })?;
            }
            if points.insert(neuron - 1, (coord[0], coord[1])).is_some() {
                return Err(Error::parse(
                    line_no,
                    col,
                    format!("duplicate coordinates for neuron {neuron}"),
                ));
            }
        }
        Ok(Coordinates { points })
    }

    pub fn get(&self, neuron: usize) -> Option<(f64, f64)> {
        self.points.get(&neuron).copied()
    }

    fn require(&self, neuron: usize) -> Result<(f64, f64)> {
        self.get(neuron)
            .ok_or(Error::MissingCoordinate { neuron: neuron + 1 })
    }
}

/// How the next neuron to activate is chosen among the inactive
/// neighbors of the active set.
#[derive(Debug, Clone, Copy)]
pub enum SelectionPolicy<'a> {
    /// Greatest total absolute connection strength to the active set.
    Strength,
    /// Smallest Euclidean distance to any active neuron.
    Proximity(&'a Coordinates),
}

/// The fragment grown by local spreading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadResult {
    /// Assignments listed in activation order, seed first.
    pub fragment: Fragment,
    /// Activated neurons in order, 0-based; always starts with the seed.
    pub visit_order: Vec<usize>,
    /// True when the spread ran out of reachable neighbors before the
    /// requested size.
    pub stalled: bool,
}

/// Grows a fragment from a single seeded neuron using the strength
/// selection rule.
pub fn local_spread(
    t: &WeightMatrix,
    seed: usize,
    value: Sign,
    size: usize,
) -> Result<SpreadResult> {
    local_spread_with(t, seed, value, size, SelectionPolicy::Strength)
}

/// Grows a fragment from a single seeded neuron under the given
/// selection policy. Values always come from the strongest single
/// active source, whatever policy picks the next neuron.
pub fn local_spread_with(
    t: &WeightMatrix,
    seed: usize,
    value: Sign,
    size: usize,
    policy: SelectionPolicy<'_>,
) -> Result<SpreadResult> {
    let n = t.n();
    if seed >= n {
        return Err(Error::NeuronOutOfRange {
            neuron: seed + 1,
            n,
        });
    }
    if size == 0 || size > n {
        return Err(Error::InvalidSpreadSize { size, n });
    }
    if let SelectionPolicy::Proximity(coords) = policy {
        for neuron in 0..n {
            coords.require(neuron)?;
        }
    }

    let mut values: Vec<Option<Sign>> = vec![None; n];
    values[seed] = Some(value);
    let mut visit_order = vec![seed];
    let mut stalled = false;

    while visit_order.len() < size {
        let next = select_next(t, &values, &visit_order, policy);
        let Some(j) = next else {
            stalled = true;
            break;
        };
        let source = strongest_source(t, &values, j);
        values[j] = Some(sgn(t.get(j, source) * values[source].expect("active").value()));
        visit_order.push(j);
    }

    let assignments = visit_order
        .iter()
        .map(|&i| (i, values[i].expect("activated")))
        .collect();
    Ok(SpreadResult {
        fragment: Fragment::new(assignments, n)?,
        visit_order,
        stalled,
    })
}

/// The inactive neighbor the spread activates next, or None when the
/// active set has no inactive neighbors left.
fn select_next(
    t: &WeightMatrix,
    values: &[Option<Sign>],
    active: &[usize],
    policy: SelectionPolicy<'_>,
) -> Option<usize> {
    let n = t.n();
    let candidates: Vec<usize> = (0..n)
        .filter(|&j| values[j].is_none() && active.iter().any(|&i| t.get(j, i) != 0))
        .collect();
    match policy {
        SelectionPolicy::Strength => candidates
            .into_iter()
            .max_by_key(|&j| {
                let strength: i64 = active.iter().map(|&i| t.get(j, i).abs()).sum();
                // Reverse index ordering so the max on ties lands on the
                // smallest neuron.
                (strength, std::cmp::Reverse(j))
            }),
        SelectionPolicy::Proximity(coords) => candidates.into_iter().min_by(|&x, &y| {
            let dx = nearest_distance_sq(coords, x, active);
            let dy = nearest_distance_sq(coords, y, active);
            dx.partial_cmp(&dy)
                .expect("finite distances")
                .then(x.cmp(&y))
        }),
    }
}

fn nearest_distance_sq(coords: &Coordinates, j: usize, active: &[usize]) -> f64 {
    let (xj, yj) = coords.get(j).expect("validated upfront");
    active
        .iter()
        .map(|&i| {
            let (xi, yi) = coords.get(i).expect("validated upfront");
            (xj - xi).powi(2) + (yj - yi).powi(2)
        })
        .fold(f64::INFINITY, f64::min)
}

/// The active neuron with the strongest absolute connection to `j`,
/// ties to the lowest index. Only called when at least one such
/// connection exists.
fn strongest_source(t: &WeightMatrix, values: &[Option<Sign>], j: usize) -> usize {
    let mut best: Option<(i64, usize)> = None;
    for (i, value) in values.iter().enumerate() {
        if value.is_none() || t.get(j, i) == 0 {
            continue;
        }
        let strength = t.get(j, i).abs();
        if best.is_none_or(|(s, _)| strength > s) {
            best = Some((strength, i));
        }
    }
    best.expect("candidate has an active neighbor").1
}

/// A spread composed with the recall it feeds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadRecall {
    pub spread: SpreadResult,
    pub result: BipolarVector,
    pub trace: RecallTrace,
}

/// End-to-end pipeline: grow a fragment by local spreading, then
/// complete it by ordered recall along the visit order followed by the
/// remaining neurons in ascending index order. The spread fragment stays
/// clamped throughout the recall.
pub fn spread_then_recall(
    t: &WeightMatrix,
    seed: usize,
    value: Sign,
    size: usize,
) -> Result<SpreadRecall> {
    spread_then_recall_with(t, seed, value, size, SelectionPolicy::Strength)
}

/// [`spread_then_recall`] under an explicit selection policy.
pub fn spread_then_recall_with(
    t: &WeightMatrix,
    seed: usize,
    value: Sign,
    size: usize,
    policy: SelectionPolicy<'_>,
) -> Result<SpreadRecall> {
    let spread = local_spread_with(t, seed, value, size, policy)?;
    let n = t.n();
    let mut positions = spread.visit_order.clone();
    positions.extend((0..n).filter(|i| !spread.visit_order.contains(i)));
    let order = UpdateOrder::new(positions, spread.fragment.len())?;
    let (result, trace) = ordered_recall(t, &spread.fragment, &order)?;
    Ok(SpreadRecall {
        spread,
        result,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipolar::MemorySet;

    fn example1() -> (MemorySet, WeightMatrix) {
        let set = MemorySet::parse("1 1 1 1 1\n1 -1 -1 -1 1\n1 1 -1 -1 -1\n").unwrap();
        let t = WeightMatrix::train(&set);
        (set, t)
    }

    fn example2() -> (MemorySet, WeightMatrix) {
        let set = MemorySet::parse("1 1 1 1\n1 -1 -1 1\n-1 1 1 -1\n").unwrap();
        let t = WeightMatrix::train(&set);
        (set, t)
    }

    #[test]
    fn example1_graph_is_complete_with_exact_weights() {
        let (_, t) = example1();
        let graph = InterconnectionGraph::build(&t);
        assert_eq!(graph.edges().len(), 10);
        let edge_34 = graph
            .edges()
            .iter()
            .find(|e| e.a == 2 && e.b == 3)
            .unwrap();
        assert_eq!(edge_34.weight, 3);
        assert!(edge_34.is_positive());
        let edge_13 = graph
            .edges()
            .iter()
            .find(|e| e.a == 0 && e.b == 2)
            .unwrap();
        assert_eq!(edge_13.weight, -1);
        assert!(!edge_13.is_positive());
    }

    #[test]
    fn example2_graph_signs() {
        let (_, t) = example2();
        let graph = InterconnectionGraph::build(&t);
        assert_eq!(graph.edges().len(), 6);
        for e in graph.edges() {
            if (e.a, e.b) == (0, 3) || (e.a, e.b) == (1, 2) {
                assert_eq!(e.weight, 3);
            } else {
                assert_eq!(e.weight, -1);
            }
        }
    }

    #[test]
    fn zero_matrix_graph_is_edgeless() {
        let t = WeightMatrix::from_rows(&[vec![0, 0], vec![0, 0]]).unwrap();
        let graph = InterconnectionGraph::build(&t);
        assert!(graph.edges().is_empty());
    }

    #[test]
    fn graph_reconstructs_off_diagonal() {
        let (_, t) = example1();
        let graph = InterconnectionGraph::build(&t);
        for i in 0..5 {
            for j in (i + 1)..5 {
                let from_edges = graph
                    .edges()
                    .iter()
                    .find(|e| e.a == i && e.b == j)
                    .map_or(0, |e| e.weight);
                assert_eq!(from_edges, t.get(i, j));
            }
        }
    }

    #[test]
    fn dot_export_colors_and_widths() {
        let t = WeightMatrix::from_rows(&[
            vec![0, 2, 0],
            vec![2, 0, -1],
            vec![0, -1, 0],
        ])
        .unwrap();
        let dot = InterconnectionGraph::build(&t).to_dot();
        assert_eq!(
            dot,
            "graph interconnections {\n    n1;\n    n2;\n    n3;\n    n1 -- n2 [color=blue, label=\"2\", penwidth=2];\n    n2 -- n3 [color=red, label=\"-1\", penwidth=1];\n}\n"
        );
    }

    #[test]
    fn spread_sizes_one_two_three_from_first_neuron() {
        let (_, t) = example1();
        let one = local_spread(&t, 0, Sign::Plus, 1).unwrap();
        assert_eq!(one.visit_order, vec![0]);
        assert!(!one.stalled);

        let two = local_spread(&t, 0, Sign::Plus, 2).unwrap();
        assert_eq!(two.visit_order, vec![0, 1]);
        assert_eq!(
            two.fragment.assignments(),
            &[(0, Sign::Plus), (1, Sign::Plus)]
        );

        let three = local_spread(&t, 0, Sign::Plus, 3).unwrap();
        assert_eq!(three.visit_order, vec![0, 1, 2]);
        assert_eq!(
            three.fragment.assignments(),
            &[(0, Sign::Plus), (1, Sign::Plus), (2, Sign::Minus)]
        );
    }

    #[test]
    fn first_neuron_cannot_spread_a_minus_onto_second() {
        let (_, t) = example1();
        // With only neuron 1 active, any neuron's spread value is the
        // sign of its direct connection to neuron 1; for neuron 2 that
        // connection is positive, so 1:+1,2:-1 is not locally generable.
        assert!(t.get(1, 0) > 0);
        let two = local_spread(&t, 0, Sign::Plus, 2).unwrap();
        assert_ne!(
            two.fragment.assignments(),
            &[(0, Sign::Plus), (1, Sign::Minus)]
        );
    }

    #[test]
    fn spread_visits_are_graph_connected() {
        let (_, t) = example2();
        let graph = InterconnectionGraph::build(&t);
        let result = local_spread(&t, 1, Sign::Plus, 4).unwrap();
        for (pos, &j) in result.visit_order.iter().enumerate().skip(1) {
            assert!(result.visit_order[..pos]
                .iter()
                .any(|&i| graph.are_adjacent(i, j)));
        }
    }

    #[test]
    fn spread_stalls_without_neighbors() {
        let t = WeightMatrix::from_rows(&[vec![0, 0], vec![0, 0]]).unwrap();
        let result = local_spread(&t, 0, Sign::Plus, 2).unwrap();
        assert!(result.stalled);
        assert_eq!(result.visit_order, vec![0]);
        assert_eq!(result.fragment.len(), 1);
    }

    #[test]
    fn strongest_edge_wins_selection() {
        let (_, t) = example2();
        // From neuron 2 the strongest tie is neuron 3 (weight 3).
        let result = local_spread(&t, 1, Sign::Plus, 2).unwrap();
        assert_eq!(result.visit_order, vec![1, 2]);
        assert_eq!(result.fragment.value_at(2), Some(Sign::Plus));
    }

    #[test]
    fn proximity_policy_overrides_strength() {
        let (_, t) = example1();
        let coords = Coordinates::parse(
            "1 0 0\n2 10 0\n3 10 10\n4 10 20\n5 1 0\n",
        )
        .unwrap();
        let result =
            local_spread_with(&t, 0, Sign::Plus, 2, SelectionPolicy::Proximity(&coords))
                .unwrap();
        assert_eq!(result.visit_order, vec![0, 4]);
        assert_eq!(result.fragment.value_at(4), Some(Sign::Plus));
    }

    #[test]
    fn proximity_requires_full_coordinates() {
        let (_, t) = example1();
        let coords = Coordinates::parse("1 0 0\n2 1 0\n").unwrap();
        let err = local_spread_with(&t, 0, Sign::Plus, 2, SelectionPolicy::Proximity(&coords))
            .unwrap_err();
        assert_eq!(err, Error::MissingCoordinate { neuron: 3 });
    }

    #[test]
    fn coordinates_parse_errors() {
        assert!(matches!(
            Coordinates::parse("1 0\n").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
        assert!(matches!(
            Coordinates::parse("1 0 0\n1 2 2\n").unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
        assert!(matches!(
            Coordinates::parse("x 0 0\n").unwrap_err(),
            Error::Parse { line: 1, column: 1, .. }
        ));
    }

    #[test]
    fn spread_then_recall_reaches_third_memory() {
        let (set, t) = example1();
        let outcome = spread_then_recall(&t, 0, Sign::Plus, 3).unwrap();
        assert_eq!(&outcome.result, set.get(2));
        assert_eq!(outcome.spread.visit_order, vec![0, 1, 2]);
    }

    #[test]
    fn spread_then_recall_single_seed_reaches_first_memory() {
        let (set, t) = example1();
        let outcome = spread_then_recall(&t, 0, Sign::Plus, 1).unwrap();
        assert_eq!(&outcome.result, set.get(0));
    }

    #[test]
    fn spread_then_recall_negative_seed_reaches_complement() {
        let (set, t) = example2();
        let outcome = spread_then_recall(&t, 0, Sign::Minus, 1).unwrap();
        assert_eq!(&outcome.result, set.get(2));
    }

    #[test]
    fn spread_validates_inputs() {
        let (_, t) = example1();
        assert_eq!(
            local_spread(&t, 9, Sign::Plus, 1).unwrap_err(),
            Error::NeuronOutOfRange { neuron: 10, n: 5 }
        );
        assert_eq!(
            local_spread(&t, 0, Sign::Plus, 0).unwrap_err(),
            Error::InvalidSpreadSize { size: 0, n: 5 }
        );
        assert_eq!(
            local_spread(&t, 0, Sign::Plus, 6).unwrap_err(),
            Error::InvalidSpreadSize { size: 6, n: 5 }
        );
    }
}
