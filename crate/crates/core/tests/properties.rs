use std::collections::HashMap;

use proptest::prelude::*;

use surfgame_core::sg::{grundy_eval, ImpartialGame, Nim, NimState};
use surfgame_core::{
    grundy_position, grundy_surface_closed, position_moves, Analyzer, GameValue, Genus,
    LengthBounds, Orientability, Position, Surface,
};

// Game-tree search over whole positions; independent of the per-surface DP.
fn tree_lengths(p: &Position, memo: &mut HashMap<Position, LengthBounds>) -> LengthBounds {
    if let Some(&b) = memo.get(p) {
        return b;
    }
    let moves = position_moves(p);
    let b = if moves.is_empty() {
        LengthBounds {
            shortest: 0,
            longest: 0,
        }
    } else {
        let children: Vec<LengthBounds> =
            moves.iter().map(|m| tree_lengths(&m.after, memo)).collect();
        LengthBounds {
            shortest: 1 + children.iter().map(|c| c.shortest).min().unwrap(),
            longest: 1 + children.iter().map(|c| c.longest).max().unwrap(),
        }
    };
    memo.insert(p.clone(), b);
    b
}

#[test]
fn length_dp_matches_game_tree() {
    let mut analyzer = Analyzer::new();
    let mut memo = HashMap::new();
    for g in 0..=7 {
        for s in [Surface::orientable(g), Surface::nonorientable(g)] {
            let tree = tree_lengths(&Position::new([s]), &mut memo);
            assert_eq!(analyzer.length_bounds(s).unwrap(), tree, "{s}");
        }
    }
    assert_eq!(
        tree_lengths(&Position::new([Surface::orientable(3)]), &mut memo),
        LengthBounds {
            shortest: 3,
            longest: 5
        }
    );
}

#[test]
fn brute_force_matches_closed_form_both_kinds() {
    let mut analyzer = Analyzer::new();
    for g in 0..=200 {
        for s in [Surface::orientable(g), Surface::nonorientable(g)] {
            assert_eq!(
                analyzer.grundy_surface_brute(s).unwrap(),
                grundy_surface_closed(s),
                "{s}"
            );
        }
    }
}

#[test]
fn table_rows_agree_with_closed_form() {
    let rows = Analyzer::new().table1(40).unwrap();
    for row in rows {
        let values: Vec<GameValue> = row.entries.iter().map(|e| e.value).collect();
        assert_eq!(row.value, surfgame_core::mex(values));
        assert_eq!(
            row.value,
            grundy_surface_closed(Surface::nonorientable(row.genus))
        );
    }
}

#[test]
fn brute_position_values_nim_add() {
    let mut analyzer = Analyzer::new();
    let p: Position = "o5+n3+2*n7".parse().unwrap();
    assert_eq!(
        analyzer.grundy_position_brute(&p).unwrap(),
        grundy_position(&p)
    );
}

// Octal 4.3 heaps as a game on multisets, without splitting into sums.
struct OctalMultiset;

impl ImpartialGame for OctalMultiset {
    type State = Vec<u64>;

    fn options(&self, heaps: &Vec<u64>) -> Vec<Vec<Vec<u64>>> {
        let mut out = Vec::new();
        for i in 0..heaps.len() {
            let h = heaps[i];
            let mut rest = heaps.clone();
            rest.remove(i);
            let mut take = rest.clone();
            if h > 1 {
                take.push(h - 1);
            }
            take.sort();
            out.push(vec![take]);
            for a in 1..=h / 2 {
                let mut split = rest.clone();
                split.extend([a, h - a]);
                split.sort();
                out.push(vec![split]);
            }
        }
        out
    }
}

#[test]
fn octal_multisets_combine_by_nim_sum() {
    use surfgame_core::sg::{octal43_state_grundy, OctalHeapState};
    for heaps in [vec![3u64, 4], vec![1, 2, 5], vec![6, 6], vec![2, 3, 7]] {
        let direct = grundy_eval(OctalMultiset, &heaps).unwrap();
        let summed = octal43_state_grundy(&OctalHeapState::new(heaps.clone())).unwrap();
        assert_eq!(direct, summed, "{heaps:?}");
    }
}

proptest! {
    #[test]
    fn closed_form_is_periodic(g in 0u64..1_000_000) {
        if g >= 3 {
            prop_assert_eq!(
                grundy_surface_closed(Surface::nonorientable(g)),
                grundy_surface_closed(Surface::nonorientable(g + 4))
            );
        }
        if g >= 2 {
            prop_assert_eq!(
                grundy_surface_closed(Surface::orientable(g)),
                grundy_surface_closed(Surface::orientable(g + 2))
            );
        }
    }

    #[test]
    fn nim_grundy_is_deterministic(heaps in proptest::collection::vec(0u64..9, 0..4)) {
        let state = NimState::new(heaps);
        let a = grundy_eval(Nim, &state).unwrap();
        let b = grundy_eval(Nim, &state).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn every_play_ends_within_twice_the_genus(
        orientable in any::<bool>(),
        g in 1u64..=12,
        picks in proptest::collection::vec(any::<prop::sample::Index>(), 24),
    ) {
        let kind = if orientable { Orientability::Orientable } else { Orientability::Nonorientable };
        let mut p = Position::new([Surface::new(kind, g)]);
        let mut plies: Genus = 0;
        for pick in picks {
            let moves = position_moves(&p);
            if moves.is_empty() {
                break;
            }
            p = moves[pick.index(moves.len())].after.clone();
            plies += 1;
        }
        prop_assert!(p.is_empty());
        prop_assert!(plies <= 2 * g);
    }
}
