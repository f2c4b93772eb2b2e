//! Legal decomposition moves.
//!
//! From `og` (g > 0):
//!
//! | case | result | condition |
//! |------|--------|-----------|
//! | a | `o(g-1)` | |
//! | b | `(oa, ob)` | a, b > 0, a + b = g |
//!
//! From `ng` (g > 0):
//!
//! | case | result | condition |
//! |------|--------|-----------|
//! | c | `n(g-1)` | |
//! | d | `o((g-1)/2)` | g - 1 even |
//! | e | `n(g-2)` | g >= 2 |
//! | f | `o((g-2)/2)` | g >= 2, g - 2 even |
//! | g | `(na, nb)` | a, b > 0, a + b = g |
//! | h | `(o(a/2), nb)` | a even > 0, b > 0, a + b = g |
//!
//! Instances with the same resulting multiset are merged into one [`Move`]
//! carrying the union of their case labels.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::surface::{Orientability, Position, Surface};
use crate::Genus;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveCase {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
}

impl MoveCase {
    pub fn letter(self) -> char {
        match self {
            MoveCase::A => 'a',
            MoveCase::B => 'b',
            MoveCase::C => 'c',
            MoveCase::D => 'd',
            MoveCase::E => 'e',
            MoveCase::F => 'f',
            MoveCase::G => 'g',
            MoveCase::H => 'h',
        }
    }

    /// Number of surfaces the case produces.
    pub fn arity(self) -> usize {
        match self {
            MoveCase::B | MoveCase::G | MoveCase::H => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for MoveCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// One decomposition of a single surface.
///
/// `results` may contain a sphere (e.g. `n1` decomposes to the sphere);
/// positions built from it drop spheres.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    source: Surface,
    case_labels: Vec<MoveCase>,
    split: Option<(Genus, Genus)>,
    results: Vec<Surface>,
}

impl Move {
    pub fn source(&self) -> Surface {
        self.source
    }

    /// Case labels in alphabetical order; never empty.
    pub fn case_labels(&self) -> &[MoveCase] {
        &self.case_labels
    }

    /// Split parameters `(a, b)` for cases b, g and h.
    pub fn split(&self) -> Option<(Genus, Genus)> {
        self.split
    }

    /// Resulting surfaces in canonical order.
    pub fn results(&self) -> &[Surface] {
        &self.results
    }

    /// Result text in the style `n3` or `(o1, n2)`. A sphere coming from a
    /// nonorientable source is written `n0`.
    pub fn results_label(&self) -> String {
        let name = |s: &Surface| {
            if s.is_sphere() && !self.source.is_orientable() {
                "n0".to_string()
            } else {
                s.to_string()
            }
        };
        match self.results.as_slice() {
            [one] => name(one),
            many => format!("({})", many.iter().map(name).collect::<Vec<_>>().join(", ")),
        }
    }

    fn labels_text(&self) -> String {
        self.case_labels.iter().map(|c| c.letter()).collect()
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {} [{}]",
            self.source,
            self.results_label(),
            self.labels_text()
        )
    }
}

type RawMove = (MoveCase, Option<(Genus, Genus)>, Vec<Surface>);

fn raw_moves(s: Surface) -> Vec<RawMove> {
    let g = s.genus();
    let o = Surface::orientable;
    let n = Surface::nonorientable;
    let mut out = Vec::new();
    if g == 0 {
        return out;
    }
    match s.kind() {
        Orientability::Orientable => {
            out.push((MoveCase::A, None, vec![o(g - 1)]));
            for a in 1..=g / 2 {
                out.push((MoveCase::B, Some((a, g - a)), vec![o(a), o(g - a)]));
            }
        }
        Orientability::Nonorientable => {
            out.push((MoveCase::C, None, vec![n(g - 1)]));
            if g >= 2 {
                out.push((MoveCase::E, None, vec![n(g - 2)]));
            }
            if (g - 1).is_multiple_of(2) {
                out.push((MoveCase::D, None, vec![o((g - 1) / 2)]));
            }
            if g >= 2 && (g - 2).is_multiple_of(2) {
                out.push((MoveCase::F, None, vec![o((g - 2) / 2)]));
            }
            for a in 1..=g / 2 {
                out.push((MoveCase::G, Some((a, g - a)), vec![n(a), n(g - a)]));
            }
            for a in (2..g).step_by(2) {
                out.push((MoveCase::H, Some((a, g - a)), vec![o(a / 2), n(g - a)]));
            }
        }
    }
    out
}

/// All moves from `s`, deduplicated by outcome, in generation order
/// (a, b for orientable; c, e, d, f, g, h for nonorientable; splits by
/// ascending first parameter). The sphere has no moves.
pub fn surface_moves(s: Surface) -> Vec<Move> {
    let mut moves: Vec<Move> = Vec::new();
    for (case, split, mut results) in raw_moves(s) {
        results.sort_unstable();
        if let Some(existing) = moves.iter_mut().find(|m| m.results == results) {
            if !existing.case_labels.contains(&case) {
                existing.case_labels.push(case);
                existing.case_labels.sort_unstable();
            }
            continue;
        }
        moves.push(Move {
            source: s,
            case_labels: vec![case],
            split,
            results,
        });
    }
    moves
}

/// A move made inside a position: `component` is decomposed by `mv`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PositionMove {
    pub component: Surface,
    #[serde(rename = "move")]
    pub mv: Move,
    pub after: Position,
}

impl fmt::Display for PositionMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} => {}", self.mv, self.after)
    }
}

/// All moves from `p`, one per distinct resulting position, ordered by
/// component (canonical order) and then by [`surface_moves`] order.
pub fn position_moves(p: &Position) -> Vec<PositionMove> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (component, _) in p.counts() {
        for mv in surface_moves(component) {
            let after = p
                .replace(component, mv.results())
                .expect("component is in the position");
            if seen.insert(after.clone()) {
                out.push(PositionMove {
                    component,
                    mv,
                    after,
                });
            }
        }
    }
    out
}
