//! Grundy values of the decomposition game: brute force over the move
//! graph, the periodic closed forms, perfect-play move selection, game
//! length bounds, and the table of initial nonorientable values.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::moves::{position_moves, surface_moves, PositionMove};
use crate::sg::{mex, nim_sum, GrundySolver, ImpartialGame};
use crate::surface::{Orientability, Position, Surface};
use crate::{Error, GameValue, Genus};

/// Default genus bound for brute-force evaluation.
pub const DEFAULT_GENUS_CAP: Genus = 512;

/// Total-genus bound for the compound-graph oracle.
pub const ORACLE_GENUS_CAP: Genus = 12;

const NONORIENTABLE_PERIOD: [GameValue; 4] = [4, 6, 0, 3];

/// Closed-form value: `og` runs 0, 1, then 2, 0 repeating; `ng` runs
/// 0, 1, 2, then 4, 6, 0, 3 repeating.
pub fn grundy_surface_closed(s: Surface) -> GameValue {
    let g = s.genus();
    match (s.kind(), g) {
        (_, 0) => 0,
        (_, 1) => 1,
        (Orientability::Orientable, g) => {
            if g % 2 == 0 {
                2
            } else {
                0
            }
        }
        (Orientability::Nonorientable, 2) => 2,
        (Orientability::Nonorientable, g) => NONORIENTABLE_PERIOD[((g - 3) % 4) as usize],
    }
}

/// Value of a position: nim sum of the closed-form component values.
pub fn grundy_position(p: &Position) -> GameValue {
    nim_sum(p.components().iter().map(|&s| grundy_surface_closed(s)))
}

/// The decomposition game on a single surface. Two-surface results are
/// disjunctive sums.
#[derive(Clone, Copy, Debug, Default)]
pub struct SurfaceGame;

impl ImpartialGame for SurfaceGame {
    type State = Surface;

    fn options(&self, s: &Surface) -> Vec<Vec<Surface>> {
        surface_moves(*s)
            .into_iter()
            .map(|m| m.results().to_vec())
            .collect()
    }
}

/// The decomposition game on whole positions, with no nim addition: each
/// move leads to a single new position.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompoundGame;

impl ImpartialGame for CompoundGame {
    type State = Position;

    fn options(&self, p: &Position) -> Vec<Vec<Position>> {
        position_moves(p)
            .into_iter()
            .map(|m| vec![m.after])
            .collect()
    }
}

/// Value of `p` by direct mex recursion over whole positions.
pub fn grundy_position_oracle(p: &Position) -> Result<GameValue, Error> {
    PositionOracle::new().grundy(p)
}

/// Reusable compound-graph oracle; keeps its cache between calls.
pub struct PositionOracle {
    solver: GrundySolver<CompoundGame>,
}

impl Default for PositionOracle {
    fn default() -> Self {
        Self::new()
    }
}

impl PositionOracle {
    pub fn new() -> Self {
        PositionOracle {
            solver: GrundySolver::new(CompoundGame),
        }
    }

    pub fn grundy(&mut self, p: &Position) -> Result<GameValue, Error> {
        let genus = p.total_genus();
        if genus > ORACLE_GENUS_CAP {
            return Err(Error::GenusCapExceeded {
                genus,
                cap: ORACLE_GENUS_CAP,
            });
        }
        self.solver.grundy(p)
    }
}

fn tie_break_key(m: &PositionMove) -> (Genus, usize, String) {
    (m.after.total_genus(), m.after.len(), m.after.to_string())
}

/// A move to a value-0 position, if `p` has positive value. Among several,
/// the one with the smallest resulting total genus wins, then the fewest
/// components, then the least canonical text.
pub fn winning_move(p: &Position) -> Option<PositionMove> {
    if grundy_position(p) == 0 {
        return None;
    }
    position_moves(p)
        .into_iter()
        .filter(|m| grundy_position(&m.after) == 0)
        .min_by_key(tie_break_key)
}

/// The engine's choice: a winning move when one exists, otherwise the
/// first legal move under the same tie-break order. `None` only when `p`
/// is terminal.
pub fn engine_move(p: &Position) -> Option<PositionMove> {
    winning_move(p).or_else(|| position_moves(p).into_iter().min_by_key(tie_break_key))
}

/// Fewest and most moves a game can last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthBounds {
    pub shortest: u64,
    pub longest: u64,
}

/// Brute-force vs closed-form values over a genus range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrundyReport {
    pub kind: Orientability,
    pub max_genus: Genus,
    pub brute: Vec<GameValue>,
    pub closed: Vec<GameValue>,
    pub mismatches: Vec<Genus>,
}

impl GrundyReport {
    pub fn is_consistent(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// One move from `ng` with the value of its result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub results: Vec<Surface>,
    pub label: String,
    pub value: GameValue,
}

/// All moves from `ng` with their values, and the mex of those values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub genus: Genus,
    pub entries: Vec<TableEntry>,
    pub value: GameValue,
}

// Orientable surfaces reachable from `s`, then `s`'s own kind, bottom-up;
// every move result appears before its source.
fn bottom_up(s: Surface) -> Vec<Surface> {
    let g = s.genus();
    match s.kind() {
        Orientability::Orientable => (0..=g).map(Surface::orientable).collect(),
        Orientability::Nonorientable => (0..=g / 2)
            .map(Surface::orientable)
            .chain((1..=g).map(Surface::nonorientable))
            .collect(),
    }
}

/// Brute-force evaluator with caches for values and game lengths.
pub struct Analyzer {
    genus_cap: Genus,
    solver: GrundySolver<SurfaceGame>,
    lengths: HashMap<Surface, LengthBounds>,
}

impl Default for Analyzer {
    fn default() -> Self {
        Self::new()
    }
}

impl Analyzer {
    pub fn new() -> Self {
        Self::with_genus_cap(DEFAULT_GENUS_CAP)
    }

    pub fn with_genus_cap(genus_cap: Genus) -> Self {
        Analyzer {
            genus_cap,
            solver: GrundySolver::new(SurfaceGame),
            lengths: HashMap::new(),
        }
    }

    pub fn genus_cap(&self) -> Genus {
        self.genus_cap
    }

    fn check(&self, genus: Genus) -> Result<(), Error> {
        if genus > self.genus_cap {
            Err(Error::GenusCapExceeded {
                genus,
                cap: self.genus_cap,
            })
        } else {
            Ok(())
        }
    }

    /// Value of `s` by mex recursion over its moves, nim-adding the values
    /// of two-surface results.
    pub fn grundy_surface_brute(&mut self, s: Surface) -> Result<GameValue, Error> {
        self.check(s.genus())?;
        // warming bottom-up keeps the solver's stack shallow
        for t in bottom_up(s) {
            self.solver.grundy(&t)?;
        }
        self.solver.grundy(&s)
    }

    /// Value of a position with each component evaluated by brute force.
    pub fn grundy_position_brute(&mut self, p: &Position) -> Result<GameValue, Error> {
        let values = p
            .components()
            .iter()
            .map(|&s| self.grundy_surface_brute(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(nim_sum(values))
    }

    /// Shortest and longest complete games starting from `s`.
    pub fn length_bounds(&mut self, s: Surface) -> Result<LengthBounds, Error> {
        self.check(s.genus())?;
        for t in bottom_up(s) {
            if self.lengths.contains_key(&t) {
                continue;
            }
            let bounds = surface_moves(t)
                .iter()
                .map(|m| {
                    m.results().iter().fold(
                        LengthBounds {
                            shortest: 1,
                            longest: 1,
                        },
                        |acc, r| {
                            let b = self.lengths[r];
                            LengthBounds {
                                shortest: acc.shortest + b.shortest,
                                longest: acc.longest + b.longest,
                            }
                        },
                    )
                })
                .reduce(|x, y| LengthBounds {
                    shortest: x.shortest.min(y.shortest),
                    longest: x.longest.max(y.longest),
                })
                .unwrap_or(LengthBounds {
                    shortest: 0,
                    longest: 0,
                });
            self.lengths.insert(t, bounds);
        }
        Ok(self.lengths[&s])
    }

    /// Length bounds of a position; components are played independently,
    /// so bounds add.
    pub fn position_length_bounds(&mut self, p: &Position) -> Result<LengthBounds, Error> {
        let mut total = LengthBounds {
            shortest: 0,
            longest: 0,
        };
        for &s in p.components() {
            let b = self.length_bounds(s)?;
            total.shortest += b.shortest;
            total.longest += b.longest;
        }
        Ok(total)
    }

    pub fn verify_series(
        &mut self,
        kind: Orientability,
        max_genus: Genus,
    ) -> Result<GrundyReport, Error> {
        self.check(max_genus)?;
        let surfaces: Vec<Surface> = (0..=max_genus).map(|g| Surface::new(kind, g)).collect();
        let brute = surfaces
            .iter()
            .map(|&s| self.grundy_surface_brute(s))
            .collect::<Result<Vec<_>, _>>()?;
        let closed: Vec<GameValue> = surfaces.iter().map(|&s| grundy_surface_closed(s)).collect();
        let mismatches = (0..=max_genus)
            .filter(|&g| brute[g as usize] != closed[g as usize])
            .collect();
        Ok(GrundyReport {
            kind,
            max_genus,
            brute,
            closed,
            mismatches,
        })
    }

    /// Rows `n0` through `n(max_genus)`: every move with the brute-force
    /// value of its result, and the row's mex.
    pub fn table1(&mut self, max_genus: Genus) -> Result<Vec<Table1Row>, Error> {
        self.check(max_genus)?;
        (0..=max_genus)
            .map(|g| {
                let entries = surface_moves(Surface::nonorientable(g))
                    .into_iter()
                    .map(|m| {
                        let values = m
                            .results()
                            .iter()
                            .map(|&r| self.grundy_surface_brute(r))
                            .collect::<Result<Vec<_>, _>>()?;
                        Ok(TableEntry {
                            label: m.results_label(),
                            results: m.results().to_vec(),
                            value: nim_sum(values),
                        })
                    })
                    .collect::<Result<Vec<_>, Error>>()?;
                let value = mex(entries.iter().map(|e| e.value));
                Ok(Table1Row {
                    genus: g,
                    entries,
                    value,
                })
            })
            .collect()
    }
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

/// Markdown table with one row per genus.
pub fn table_markdown(rows: &[Table1Row]) -> String {
    let mut out = String::from("| g | Moves from ng and G-values | G(ng) |\n|---|---|---|\n");
    for row in rows {
        let entries = if row.entries.is_empty() {
            "∅".to_string()
        } else {
            row.entries
                .iter()
                .map(|e| format!("{}, {}", e.label, e.value))
                .collect::<Vec<_>>()
                .join("; ")
        };
        writeln!(out, "| {} | {} | {} |", row.genus, entries, row.value).unwrap();
    }
    out
}

/// CSV with columns `genus,entry,entry_value,row_value`, one line per
/// entry; a row without moves gets one line with empty entry fields.
pub fn table_csv(rows: &[Table1Row]) -> String {
    let mut out = String::from("genus,entry,entry_value,row_value\n");
    for row in rows {
        if row.entries.is_empty() {
            writeln!(out, "{},,,{}", row.genus, row.value).unwrap();
        }
        for e in &row.entries {
            writeln!(
                out,
                "{},{},{},{}",
                row.genus,
                csv_field(&e.label),
                e.value,
                row.value
            )
            .unwrap();
        }
    }
    out
}

pub fn table_json(rows: &[Table1Row]) -> String {
    serde_json::to_string_pretty(rows).expect("table rows serialize")
}
