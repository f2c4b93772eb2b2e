//! Sprague-Grundy machinery: mex, nim addition and a memoized evaluator for
//! finite acyclic impartial games, plus Nim and octal 4.3 as reference games.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use num_traits::{PrimInt, Unsigned};

use crate::{Error, GameValue};

/// Default bound on the number of distinct states a solver may visit.
pub const DEFAULT_STATE_CAP: usize = 10_000_000;

/// Least non-negative integer absent from `values`. Duplicates are fine.
pub fn mex<V, I>(values: I) -> V
where
    V: PrimInt + Unsigned,
    I: IntoIterator<Item = V>,
{
    let values: Vec<V> = values.into_iter().collect();
    // the answer is at most values.len(), so larger entries can be ignored
    let mut seen = vec![false; values.len() + 1];
    for v in &values {
        if let Some(i) = v.to_usize() {
            if i < seen.len() {
                seen[i] = true;
            }
        }
    }
    let first = seen.iter().position(|s| !s).unwrap_or(values.len());
    V::from(first).expect("mex fits in the value type")
}

/// Nim addition: exclusive-or of all values, zero for an empty sequence.
pub fn nim_sum<V, I>(values: I) -> V
where
    V: PrimInt + Unsigned,
    I: IntoIterator<Item = V>,
{
    values.into_iter().fold(V::zero(), |acc, v| acc ^ v)
}

/// A finite impartial game under normal play.
///
/// Every option is a disjunctive sum of states: a one-element option is an
/// ordinary move, a longer one means the move splits the state into
/// independent subgames whose values combine by nim addition. The empty
/// option is the empty sum (value 0).
pub trait ImpartialGame {
    type State: Clone + Eq + Hash;

    fn options(&self, state: &Self::State) -> Vec<Vec<Self::State>>;
}

impl<G: ImpartialGame + ?Sized> ImpartialGame for &G {
    type State = G::State;

    fn options(&self, state: &Self::State) -> Vec<Vec<Self::State>> {
        (**self).options(state)
    }
}

/// Memoized Grundy evaluator.
///
/// The memo is owned by the solver, so a solver is confined to one thread;
/// the cache only ever stores final values and never changes a result.
pub struct GrundySolver<G: ImpartialGame> {
    game: G,
    memo: HashMap<G::State, GameValue>,
    cap: usize,
}

struct Frame<S> {
    state: S,
    options: Vec<Vec<S>>,
    // position of the next component to check, flattened over `options`
    option: usize,
    part: usize,
}

impl<G: ImpartialGame> GrundySolver<G> {
    pub fn new(game: G) -> Self {
        Self::with_cap(game, DEFAULT_STATE_CAP)
    }

    pub fn with_cap(game: G, cap: usize) -> Self {
        GrundySolver {
            game,
            memo: HashMap::new(),
            cap,
        }
    }

    pub fn game(&self) -> &G {
        &self.game
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Number of states whose value is cached.
    pub fn cached_states(&self) -> usize {
        self.memo.len()
    }

    /// Grundy value of `state`: the mex over all options of the nim sum of
    /// the option's component values. Terminal states are 0.
    pub fn grundy(&mut self, state: &G::State) -> Result<GameValue, Error> {
        if let Some(&v) = self.memo.get(state) {
            return Ok(v);
        }

        let mut on_stack: HashSet<G::State> = HashSet::new();
        let mut stack: Vec<Frame<G::State>> = Vec::new();
        self.push(&mut stack, &mut on_stack, state.clone())?;

        while let Some(frame) = stack.last_mut() {
            let mut pending = None;
            while frame.option < frame.options.len() {
                let parts = &frame.options[frame.option];
                if frame.part >= parts.len() {
                    frame.option += 1;
                    frame.part = 0;
                    continue;
                }
                let s = &parts[frame.part];
                if self.memo.contains_key(s) {
                    frame.part += 1;
                } else {
                    pending = Some(s.clone());
                    break;
                }
            }

            match pending {
                Some(next) => {
                    if on_stack.contains(&next) {
                        return Err(Error::CyclicGame);
                    }
                    self.push(&mut stack, &mut on_stack, next)?;
                }
                None => {
                    let frame = stack.pop().expect("frame present");
                    let value = mex(frame
                        .options
                        .iter()
                        .map(|parts| nim_sum(parts.iter().map(|s| self.memo[s]))));
                    on_stack.remove(&frame.state);
                    self.memo.insert(frame.state, value);
                }
            }
        }

        Ok(self.memo[state])
    }

    fn push(
        &self,
        stack: &mut Vec<Frame<G::State>>,
        on_stack: &mut HashSet<G::State>,
        state: G::State,
    ) -> Result<(), Error> {
        if self.memo.len() + stack.len() >= self.cap {
            return Err(Error::StateCapExceeded { cap: self.cap });
        }
        let options = self.game.options(&state);
        on_stack.insert(state.clone());
        stack.push(Frame {
            state,
            options,
            option: 0,
            part: 0,
        });
        Ok(())
    }
}

/// One-shot evaluation with a fresh cache and the default state cap.
pub fn grundy_eval<G: ImpartialGame>(game: G, state: &G::State) -> Result<GameValue, Error> {
    GrundySolver::new(game).grundy(state)
}

fn canonical_heaps(heaps: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut heaps: Vec<u64> = heaps.into_iter().filter(|&h| h > 0).collect();
    heaps.sort_unstable();
    heaps
}

/// A Nim position: heap sizes in ascending order, empty heaps dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NimState {
    heaps: Vec<u64>,
}

impl NimState {
    pub fn new(heaps: impl IntoIterator<Item = u64>) -> Self {
        NimState {
            heaps: canonical_heaps(heaps),
        }
    }

    pub fn heaps(&self) -> &[u64] {
        &self.heaps
    }

    pub fn is_terminal(&self) -> bool {
        self.heaps.is_empty()
    }

    fn replace_one(&self, from: u64, to: u64) -> Self {
        let mut heaps = self.heaps.clone();
        let i = heaps.iter().position(|&h| h == from).expect("heap present");
        heaps[i] = to;
        NimState::new(heaps)
    }
}

/// Nim: remove one or more counters from a single heap.
#[derive(Clone, Copy, Debug, Default)]
pub struct Nim;

impl ImpartialGame for Nim {
    type State = NimState;

    fn options(&self, state: &NimState) -> Vec<Vec<NimState>> {
        let mut heaps = state.heaps.clone();
        heaps.dedup();
        heaps
            .iter()
            .flat_map(|&h| (0..h).map(move |to| (h, to)))
            .map(|(h, to)| vec![state.replace_one(h, to)])
            .collect()
    }
}

/// A Nim move: one heap of size `heap` is reduced to `new_size`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NimMove {
    pub heap: u64,
    pub new_size: u64,
}

impl NimMove {
    pub fn apply(&self, state: &NimState) -> NimState {
        state.replace_one(self.heap, self.new_size)
    }
}

/// A move to a zero nim sum, if one exists. The largest reducible heap is
/// preferred; for a fixed heap the reduction is unique.
pub fn nim_winning_move(state: &NimState) -> Option<NimMove> {
    let total: u64 = nim_sum(state.heaps.iter().copied());
    if total == 0 {
        return None;
    }
    state.heaps.iter().rev().find_map(|&heap| {
        let target = heap ^ total;
        (target < heap).then_some(NimMove {
            heap,
            new_size: target,
        })
    })
}

/// Octal game 4.3 on a single heap: take one counter, or split the heap into
/// two nonempty heaps. Empty heaps are dropped from options.
#[derive(Clone, Copy, Debug, Default)]
pub struct Octal43;

impl ImpartialGame for Octal43 {
    type State = u64;

    fn options(&self, &heap: &u64) -> Vec<Vec<u64>> {
        if heap == 0 {
            return Vec::new();
        }
        let take_one = if heap > 1 { vec![heap - 1] } else { Vec::new() };
        std::iter::once(take_one)
            .chain((1..=heap / 2).map(|a| vec![a, heap - a]))
            .collect()
    }
}

/// Multiset of octal 4.3 heaps; stored like [`NimState`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OctalHeapState {
    heaps: Vec<u64>,
}

impl OctalHeapState {
    pub fn new(heaps: impl IntoIterator<Item = u64>) -> Self {
        OctalHeapState {
            heaps: canonical_heaps(heaps),
        }
    }

    pub fn heaps(&self) -> &[u64] {
        &self.heaps
    }
}

/// Grundy value of one octal 4.3 heap.
pub fn octal43_grundy(heap: u64) -> Result<GameValue, Error> {
    grundy_eval(Octal43, &heap)
}

/// Octal 4.3 value of a multiset of heaps, by nim addition over heaps.
pub fn octal43_state_grundy(state: &OctalHeapState) -> Result<GameValue, Error> {
    let mut solver = GrundySolver::new(Octal43);
    let values = state
        .heaps
        .iter()
        .map(|h| solver.grundy(h))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(nim_sum(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mex_examples() {
        assert_eq!(mex([1u64, 3, 5]), 0);
        assert_eq!(mex([0u64, 1, 3, 5]), 2);
        assert_eq!(mex(Vec::<u64>::new()), 0);
        assert_eq!(mex([0u8, 0, 1, 1, 2]), 3);
        assert_eq!(mex([u32::MAX, 0]), 1);
    }

    #[test]
    fn nim_sum_examples() {
        assert_eq!(nim_sum([21u64, 11, 6]), 24);
        assert_eq!(nim_sum([7u64]), 7);
        assert_eq!(nim_sum(Vec::<u64>::new()), 0);
        assert_eq!(nim_sum([9u16, 9]), 0);
    }

    #[test]
    fn terminal_state_is_zero() {
        assert_eq!(grundy_eval(Nim, &NimState::default()).unwrap(), 0);
        assert_eq!(grundy_eval(Octal43, &0).unwrap(), 0);
    }

    #[test]
    fn single_heap_nim_equals_size() {
        assert_eq!(grundy_eval(Nim, &NimState::new([5])).unwrap(), 5);
    }

    #[test]
    fn worked_nim_example() {
        let state = NimState::new([21, 11, 6]);
        assert_eq!(grundy_eval(Nim, &state).unwrap(), 24);
        let mv = nim_winning_move(&state).unwrap();
        assert_eq!(
            mv,
            NimMove {
                heap: 21,
                new_size: 13
            }
        );
        assert_eq!(nim_sum(mv.apply(&state).heaps().iter().copied()), 0u64);
    }

    #[test]
    fn winning_move_three_five() {
        let state = NimState::new([3, 5]);
        // exhaustive: every single-heap reduction reaching nim sum 0
        let mut zero_moves = Vec::new();
        for &h in state.heaps() {
            for to in 0..h {
                let next = state.replace_one(h, to);
                if nim_sum::<u64, _>(next.heaps().iter().copied()) == 0 {
                    zero_moves.push(NimMove {
                        heap: h,
                        new_size: to,
                    });
                }
            }
        }
        assert_eq!(
            zero_moves,
            vec![NimMove {
                heap: 5,
                new_size: 3
            }]
        );
        assert_eq!(nim_winning_move(&state), Some(zero_moves[0]));
        assert_eq!(nim_winning_move(&NimState::default()), None);
        assert_eq!(nim_winning_move(&NimState::new([4, 4])), None);
    }

    #[test]
    fn zero_heaps_are_dropped() {
        assert_eq!(NimState::new([0, 3, 0, 1]).heaps(), &[1, 3]);
        assert!(NimState::new([0]).is_terminal());
        assert_eq!(OctalHeapState::new([2, 0]).heaps(), &[2]);
    }

    #[test]
    fn nim_matches_nim_sum_exhaustively() {
        let mut solver = GrundySolver::new(Nim);
        for a in 0..=12u64 {
            for b in a..=12 {
                for c in b..=12 {
                    for d in c..=12 {
                        let state = NimState::new([a, b, c, d]);
                        assert_eq!(solver.grundy(&state).unwrap(), a ^ b ^ c ^ d);
                    }
                }
            }
        }
    }

    #[test]
    fn octal_small_heaps() {
        assert_eq!(octal43_grundy(0).unwrap(), 0);
        assert_eq!(octal43_grundy(1).unwrap(), 1);
        assert_eq!(octal43_grundy(2).unwrap(), 2);
        assert_eq!(octal43_grundy(7).unwrap(), 0);
        let state = OctalHeapState::new([2, 2, 1]);
        assert_eq!(octal43_state_grundy(&state).unwrap(), 1);
    }

    #[test]
    fn state_cap_is_reported() {
        let mut solver = GrundySolver::with_cap(Nim, 10);
        let err = solver.grundy(&NimState::new([30, 30])).unwrap_err();
        assert_eq!(err, Error::StateCapExceeded { cap: 10 });
    }

    struct Loop;

    impl ImpartialGame for Loop {
        type State = u8;

        fn options(&self, &s: &u8) -> Vec<Vec<u8>> {
            vec![vec![(s + 1) % 3]]
        }
    }

    #[test]
    fn cycles_are_rejected() {
        assert_eq!(grundy_eval(Loop, &0), Err(Error::CyclicGame));
    }

    #[test]
    fn warm_and_cold_caches_agree() {
        let mut warm = GrundySolver::new(Nim);
        warm.grundy(&NimState::new([9, 7, 4])).unwrap();
        for heaps in [[1, 2, 3], [4, 5, 6], [9, 7, 4], [0, 8, 8]] {
            let state = NimState::new(heaps);
            assert_eq!(
                warm.grundy(&state).unwrap(),
                grundy_eval(Nim, &state).unwrap()
            );
        }
    }

    proptest! {
        #[test]
        fn mex_is_least_excluded(values in proptest::collection::vec(0u64..20, 0..30)) {
            let m = mex(values.iter().copied());
            prop_assert!(!values.contains(&m));
            for i in 0..m {
                prop_assert!(values.contains(&i));
            }
        }

        #[test]
        fn nim_sum_laws(x in any::<u64>(), y in any::<u64>(), z in any::<u64>()) {
            prop_assert_eq!(nim_sum([x, y]), nim_sum([y, x]));
            prop_assert_eq!(nim_sum([nim_sum([x, y]), z]), nim_sum([x, nim_sum([y, z])]));
            prop_assert_eq!(nim_sum([x, x]), 0);
            prop_assert_eq!(nim_sum([x, 0]), x);
        }

        #[test]
        fn winning_move_iff_positive(heaps in proptest::collection::vec(0u64..64, 0..6)) {
            let state = NimState::new(heaps);
            let total: u64 = nim_sum(state.heaps().iter().copied());
            match nim_winning_move(&state) {
                Some(mv) => {
                    prop_assert!(total > 0);
                    prop_assert!(mv.new_size < mv.heap);
                    prop_assert_eq!(nim_sum::<u64, _>(mv.apply(&state).heaps().iter().copied()), 0);
                }
                None => prop_assert_eq!(total, 0),
            }
        }
    }
}
