//! Exponential baseline: two-way NFA → one-way DFA (used as a two-way DFA
//! that never moves left) via crossing tables.
//!
//! After reading a prefix up to boundary `i`, the one-way machine is in the
//! table that records, for the two-way machine restricted to the prefix:
//! whether some run already accepted, the states in which runs from the
//! initial configuration cross the boundary to the right, and for every
//! state `q` the states in which a run that enters the prefix from the right
//! in `q` comes back out (plus whether such a run can accept inside).

use std::collections::{HashMap, VecDeque};

use crate::automaton::{is_deterministic, Automaton, Direction, Kind, Move, State, TapeSymbol};
use crate::translations::{check_valid, TranslationError};

pub const DEFAULT_TABLE_CAP: usize = 100_000;
const MAX_STATES: usize = 64;

/// Declared size bound of the baseline transformers for `n` input states:
/// `2^(n²+2n) + 3` (tables plus the start and verdict states), saturating.
pub fn baseline_bound(n: u64) -> u64 {
    let exponent = n.saturating_mul(n).saturating_add(2 * n);
    if exponent >= 64 {
        u64::MAX
    } else {
        (1u64 << exponent).saturating_add(3)
    }
}

pub fn shepherdson_to_one_way(a: &Automaton) -> Result<Automaton, TranslationError> {
    shepherdson_to_one_way_with_cap(a, DEFAULT_TABLE_CAP)
}

pub fn shepherdson_to_one_way_with_cap(
    a: &Automaton,
    cap: usize,
) -> Result<Automaton, TranslationError> {
    Tables::new(a)?.build(cap, false)
}

/// Complement of a two-way DFA through the table construction.
pub fn complement_2dfa_baseline(a: &Automaton) -> Result<Automaton, TranslationError> {
    if !is_deterministic(a) {
        return Err(TranslationError::NotDeterministic);
    }
    Tables::new(a)?.build(DEFAULT_TABLE_CAP, true)
}

/// Complement of a two-way NFA; the result is deterministic.
pub fn complement_2nfa_baseline(a: &Automaton) -> Result<Automaton, TranslationError> {
    Tables::new(a)?.build(DEFAULT_TABLE_CAP, true)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Crossing {
    init: u64,
    exits: Vec<u64>,
    accepts: u64,
}

struct Tables<'a> {
    source: &'a Automaton,
    symbols: Vec<TapeSymbol>,
    accepting: u64,
    initial: usize,
    /// `moves[state][symbol]` lists `(target, direction)`.
    moves: Vec<Vec<Vec<(usize, Direction)>>>,
}

impl<'a> Tables<'a> {
    fn new(a: &'a Automaton) -> Result<Self, TranslationError> {
        check_valid(a)?;
        if a.kind.is_pebble() {
            return Err(TranslationError::WrongKind {
                expected: "classical",
                found: a.kind,
            });
        }
        if a.state_count() > MAX_STATES {
            return Err(TranslationError::BudgetExceeded {
                what: "state limit of the table construction",
                needed: a.state_count(),
                cap: MAX_STATES,
            });
        }
        let states: Vec<&State> = a.states.iter().collect();
        let index: HashMap<&State, usize> =
            states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let symbols = a.alphabet.tape_symbols();
        let sym_index: HashMap<&TapeSymbol, usize> =
            symbols.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut moves = vec![vec![Vec::new(); symbols.len()]; states.len()];
        for (key, (to, mv)) in a.transitions() {
            moves[index[&key.state]][sym_index[&key.read]].push((index[to], mv.direction));
        }
        let accepting = a.accepting.iter().fold(0u64, |m, s| m | 1 << index[s]);
        Ok(Tables {
            source: a,
            symbols,
            accepting,
            initial: index[&a.initial],
            moves,
        })
    }

    /// States reachable inside the prefix ending at a cell holding `sym`,
    /// starting on that cell from `start`: returns the right exits and
    /// whether an accepting state is reachable.
    fn closure(&self, prev: &Crossing, start: u64, sym: usize) -> (u64, bool) {
        let mut seen = start;
        let mut stack: Vec<usize> = bits(start).collect();
        let mut exits = 0u64;
        let mut accepted = false;
        let push = |s: usize, seen: &mut u64, stack: &mut Vec<usize>| {
            if *seen & (1 << s) == 0 {
                *seen |= 1 << s;
                stack.push(s);
            }
        };
        while let Some(s) = stack.pop() {
            if self.accepting & (1 << s) != 0 {
                accepted = true;
            }
            for &(t, dir) in &self.moves[s][sym] {
                match dir {
                    Direction::Stay => push(t, &mut seen, &mut stack),
                    Direction::Right => exits |= 1 << t,
                    Direction::Left => {
                        if prev.accepts & (1 << t) != 0 {
                            accepted = true;
                        }
                        for u in bits(prev.exits[t]) {
                            push(u, &mut seen, &mut stack);
                        }
                    }
                }
            }
        }
        (exits, accepted)
    }

    /// `None` means an accepting configuration was reached.
    fn step(&self, prev: &Crossing, sym: usize) -> Option<Crossing> {
        let (init, accepted) = self.closure(prev, prev.init, sym);
        if accepted {
            return None;
        }
        let n = self.moves.len();
        let mut exits = vec![0u64; n];
        let mut accepts = 0u64;
        for (q, slot) in exits.iter_mut().enumerate() {
            let (e, acc) = self.closure(prev, 1 << q, sym);
            *slot = e;
            if acc {
                accepts |= 1 << q;
            }
        }
        Some(Crossing {
            init,
            exits,
            accepts,
        })
    }

    fn build(&self, cap: usize, complement: bool) -> Result<Automaton, TranslationError> {
        let kind = Kind::Dfa2;
        let alphabet = self.source.alphabet.clone();
        let accept = State::from("accept");
        let reject = State::from("reject");
        let verdict = |ok: bool| if ok { accept.clone() } else { reject.clone() };
        let final_state = if complement { &reject } else { &accept };

        let left = self
            .symbols
            .iter()
            .position(|s| *s == TapeSymbol::LeftEnd)
            .expect("left endmarker");
        let right = self
            .symbols
            .iter()
            .position(|s| *s == TapeSymbol::RightEnd)
            .expect("right endmarker");
        let word: Vec<usize> = (0..self.symbols.len())
            .filter(|&i| i != left && i != right)
            .collect();

        let start = Crossing {
            init: 1 << self.initial,
            exits: vec![0; self.moves.len()],
            accepts: 0,
        };
        if self.accepting & (1 << self.initial) != 0 {
            let mut out = Automaton::new(kind, alphabet, accept.clone());
            self.absorb(&mut out, &accept, &word, true);
            if !complement {
                out.add_accepting(accept);
            }
            return Ok(out);
        }

        let mut out = Automaton::new(kind, alphabet, "start");
        out.add_accepting(final_state.clone());
        let mut ids: HashMap<Crossing, usize> = HashMap::new();
        let mut queue: VecDeque<Crossing> = VecDeque::new();
        let mut accept_used = false;
        let mut intern = |c: Option<Crossing>,
                          queue: &mut VecDeque<Crossing>,
                          accept_used: &mut bool|
         -> Result<State, TranslationError> {
            let Some(c) = c else {
                *accept_used = true;
                return Ok(accept.clone());
            };
            if let Some(&id) = ids.get(&c) {
                return Ok(table_name(id));
            }
            let id = ids.len();
            if id >= cap {
                return Err(TranslationError::BudgetExceeded {
                    what: "table budget",
                    needed: id + 1,
                    cap,
                });
            }
            ids.insert(c.clone(), id);
            queue.push_back(c);
            Ok(table_name(id))
        };

        let first = intern(self.step(&start, left), &mut queue, &mut accept_used)?;
        out.add_transition("start", TapeSymbol::LeftEnd, false, first, Move::RIGHT);
        let mut id = 0;
        while let Some(table) = queue.pop_front() {
            let name = table_name(id);
            id += 1;
            for &sym in &word {
                let next = intern(self.step(&table, sym), &mut queue, &mut accept_used)?;
                out.add_transition(
                    name.clone(),
                    self.symbols[sym].clone(),
                    false,
                    next,
                    Move::RIGHT,
                );
            }
            let (_, ok) = self.closure(&table, table.init, right);
            out.add_transition(name, TapeSymbol::RightEnd, false, verdict(ok), Move::STAY);
        }
        if accept_used || out.states.contains(&accept) {
            self.absorb(&mut out, &accept, &word, false);
        }
        if complement || out.states.contains(&reject) {
            out.add_state(reject);
        }
        Ok(out)
    }

    fn absorb(&self, out: &mut Automaton, state: &State, word: &[usize], from_left_end: bool) {
        out.add_state(state.clone());
        for &sym in word {
            out.add_transition(
                state.clone(),
                self.symbols[sym].clone(),
                false,
                state.clone(),
                Move::RIGHT,
            );
        }
        if from_left_end {
            out.add_transition(
                state.clone(),
                TapeSymbol::LeftEnd,
                false,
                state.clone(),
                Move::RIGHT,
            );
        }
    }
}

fn table_name(id: usize) -> State {
    State::new(format!("t{id}"))
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let b = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(b)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{validate_automaton, Alphabet};
    use crate::simulation::{accepts, bounded_equiv, WordTransform};

    /// Two-way DFA over {a,b} accepting words whose last letter is `a`:
    /// run to `-|`, step back, check.
    fn ends_with_a() -> Automaton {
        let mut m = Automaton::new(Kind::Dfa2, Alphabet::from_tokens(["a", "b"]).unwrap(), "q");
        m.add_transition("q", TapeSymbol::LeftEnd, false, "q", Move::RIGHT);
        m.add_transition("q", TapeSymbol::plain("a"), false, "q", Move::RIGHT);
        m.add_transition("q", TapeSymbol::plain("b"), false, "q", Move::RIGHT);
        m.add_transition("q", TapeSymbol::RightEnd, false, "back", Move::LEFT);
        m.add_transition("back", TapeSymbol::plain("a"), false, "yes", Move::STAY);
        m.add_accepting("yes");
        m
    }

    #[test]
    fn one_way_result_matches_two_way_source() {
        let m = ends_with_a();
        let d = shepherdson_to_one_way(&m).unwrap();
        assert!(validate_automaton(&d).is_empty());
        assert!(is_deterministic(&d));
        assert!(d
            .transitions()
            .all(|(_, (_, mv))| mv.direction != Direction::Left));
        assert_eq!(bounded_equiv(&m, &d, 7, WordTransform::Identity), Ok(None));
        assert!((d.state_count() as u64) <= baseline_bound(m.state_count() as u64));
    }

    #[test]
    fn complement_flips_every_word() {
        let m = ends_with_a();
        let c = complement_2dfa_baseline(&m).unwrap();
        for w in crate::simulation::words_up_to(&m.alphabet.word_symbols(), 6) {
            assert_ne!(accepts(&m, &w).unwrap(), accepts(&c, &w).unwrap(), "{w:?}");
        }
    }

    #[test]
    fn accepting_initial_state_gives_single_state() {
        let mut m = Automaton::new(Kind::Nfa2, Alphabet::from_tokens(["a"]).unwrap(), "q");
        m.add_accepting("q");
        let d = shepherdson_to_one_way(&m).unwrap();
        assert_eq!(d.state_count(), 1);
        assert!(accepts(&d, &[TapeSymbol::plain("a")]).unwrap());
        let c = complement_2nfa_baseline(&m).unwrap();
        assert!(!accepts(&c, &[]).unwrap());
    }

    #[test]
    fn table_cap_is_enforced() {
        let err = shepherdson_to_one_way_with_cap(&ends_with_a(), 1).unwrap_err();
        assert!(matches!(
            err,
            TranslationError::BudgetExceeded { cap: 1, .. }
        ));
    }

    #[test]
    fn bound_saturates() {
        assert_eq!(baseline_bound(1), 11);
        assert_eq!(baseline_bound(7), (1 << 63) + 3);
        assert_eq!(baseline_bound(8), u64::MAX);
    }
}
