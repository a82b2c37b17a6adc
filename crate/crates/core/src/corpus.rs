//! Hand-built fixture machines and seeded random machines for testing.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{Alphabet, Automaton, Direction, Kind, Move, State, TapeSymbol};
use crate::witnesses::witness_pebble_dfa;

/// Pebble 2DFA over {a,b}: the last letter is `a`. Lifts the pebble off
/// `|-` once and never touches it again.
pub fn ends_with_a() -> Automaton {
    let mut m = Automaton::new(Kind::PebbleDfa2, ab(), "q0");
    m.add_transition("q0", TapeSymbol::LeftEnd, true, "q1", Move::RIGHT);
    for t in ["a", "b"] {
        m.add_transition("q1", TapeSymbol::plain(t), false, "q1", Move::RIGHT);
    }
    m.add_transition("q1", TapeSymbol::RightEnd, false, "q2", Move::LEFT);
    m.add_transition("q2", TapeSymbol::plain("a"), false, "acc", Move::STAY);
    m.add_accepting("acc");
    m
}

/// Pebble 2DFA over {a,b}: some letter is `a`. Carries the pebble to `-|`
/// and back, remembering whether it passed an `a` on the way back.
pub fn shuttle() -> Automaton {
    let mut m = Automaton::new(Kind::PebbleDfa2, ab(), "q0");
    m.add_transition("q0", TapeSymbol::LeftEnd, true, "right", Move::CARRY_RIGHT);
    for t in ["a", "b"] {
        m.add_transition(
            "right",
            TapeSymbol::plain(t),
            true,
            "right",
            Move::CARRY_RIGHT,
        );
        m.add_transition("seen", TapeSymbol::plain(t), true, "seen", Move::CARRY_LEFT);
    }
    m.add_transition(
        "right",
        TapeSymbol::RightEnd,
        true,
        "left",
        Move::CARRY_LEFT,
    );
    m.add_transition(
        "left",
        TapeSymbol::plain("a"),
        true,
        "seen",
        Move::CARRY_LEFT,
    );
    m.add_transition(
        "left",
        TapeSymbol::plain("b"),
        true,
        "left",
        Move::CARRY_LEFT,
    );
    m.add_transition("seen", TapeSymbol::LeftEnd, true, "acc", Move::STAY);
    m.add_accepting("acc");
    m
}

/// Two-state pebble 2NFA over {a,b} that never moves the pebble: guesses
/// an occurrence of `a`.
pub fn guess_a() -> Automaton {
    let mut m = Automaton::new(Kind::PebbleNfa2, ab(), "q0");
    m.add_transition("q0", TapeSymbol::LeftEnd, true, "q0", Move::RIGHT);
    m.add_transition("q0", TapeSymbol::plain("a"), false, "q0", Move::RIGHT);
    m.add_transition("q0", TapeSymbol::plain("a"), false, "acc", Move::STAY);
    m.add_transition("q0", TapeSymbol::plain("b"), false, "q0", Move::RIGHT);
    m.add_accepting("acc");
    m
}

/// Pebble 2NFA over {a,b} that drops the pebble on a guessed `a`, walks to
/// `-|` and back, and accepts on finding the pebble again.
pub fn drop_on_a() -> Automaton {
    let mut m = Automaton::new(Kind::PebbleNfa2, ab(), "q0");
    m.add_transition("q0", TapeSymbol::LeftEnd, true, "q0", Move::CARRY_RIGHT);
    m.add_transition("q0", TapeSymbol::plain("a"), true, "q0", Move::CARRY_RIGHT);
    m.add_transition("q0", TapeSymbol::plain("a"), true, "p", Move::RIGHT);
    m.add_transition("q0", TapeSymbol::plain("b"), true, "q0", Move::CARRY_RIGHT);
    for t in ["a", "b"] {
        m.add_transition("p", TapeSymbol::plain(t), false, "p", Move::RIGHT);
        m.add_transition("r", TapeSymbol::plain(t), false, "r", Move::LEFT);
    }
    m.add_transition("p", TapeSymbol::RightEnd, false, "r", Move::LEFT);
    m.add_transition("r", TapeSymbol::plain("a"), true, "acc", Move::STAY);
    m.add_accepting("acc");
    m
}

/// Named fixture machines, including the witnesses for `m = 1, 2, 3`.
pub fn fixture_corpus() -> Vec<(String, Automaton)> {
    let mut corpus = vec![
        ("ends-with-a".to_string(), ends_with_a()),
        ("shuttle".to_string(), shuttle()),
        ("guess-a".to_string(), guess_a()),
        ("drop-on-a".to_string(), drop_on_a()),
    ];
    for m in 1..=3 {
        corpus.push((format!("witness-{m}"), witness_pebble_dfa(m)));
    }
    corpus
}

fn ab() -> Alphabet {
    Alphabet::from_tokens(["a", "b"]).expect("valid letters")
}

const LETTERS: [&str; 3] = ["a", "b", "c"];

/// Seeded source of random machines.
pub struct RandomCorpus {
    rng: ChaCha8Rng,
}

impl RandomCorpus {
    pub fn new(seed: u64) -> Self {
        RandomCorpus {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A random valid pebble machine with `1..=max_states` states over
    /// `1..=max_letters` letters. Deterministic machines have at most one
    /// target per key.
    pub fn pebble(
        &mut self,
        max_states: usize,
        max_letters: usize,
        deterministic: bool,
    ) -> Automaton {
        self.machine(Kind::pebble(deterministic), max_states, max_letters)
    }

    /// A random valid classical machine over a plain alphabet.
    pub fn classical(
        &mut self,
        max_states: usize,
        max_letters: usize,
        deterministic: bool,
    ) -> Automaton {
        self.machine(Kind::classical(deterministic), max_states, max_letters)
    }

    fn machine(&mut self, kind: Kind, max_states: usize, max_letters: usize) -> Automaton {
        let n = self.rng.random_range(1..=max_states);
        let k = self.rng.random_range(1..=max_letters.min(LETTERS.len()));
        let letters = if k == 1 && max_letters == 1 {
            vec!["1"]
        } else {
            LETTERS[..k].to_vec()
        };
        let alphabet = Alphabet::from_tokens(letters.iter().copied()).expect("valid letters");
        let states: Vec<State> = (0..n).map(|i| State::new(format!("s{i}"))).collect();
        let mut a = Automaton::new(kind, alphabet.clone(), states[0].clone());
        for s in &states[1..] {
            a.add_state(s.clone());
            if self.rng.random_bool(0.35) {
                a.add_accepting(s.clone());
            }
        }
        if n == 1 && self.rng.random_bool(0.2) {
            a.add_accepting(states[0].clone());
        }
        let flags: &[bool] = if kind.is_pebble() {
            &[false, true]
        } else {
            &[false]
        };
        let deterministic = kind.is_deterministic();
        for from in &states {
            for read in alphabet.tape_symbols() {
                for &pebble in flags {
                    if !self.rng.random_bool(0.7) {
                        continue;
                    }
                    let count = if deterministic {
                        1
                    } else {
                        self.rng.random_range(1..=2)
                    };
                    for _ in 0..count {
                        let moves = allowed_moves(&read, pebble);
                        let mv = *moves.choose(&mut self.rng).expect("some move is allowed");
                        let to = states.choose(&mut self.rng).expect("nonempty").clone();
                        a.add_transition(from.clone(), read.clone(), pebble, to, mv);
                    }
                }
            }
        }
        a
    }
}

fn allowed_moves(read: &TapeSymbol, pebble: bool) -> Vec<Move> {
    let mut moves = Vec::new();
    for direction in [Direction::Left, Direction::Stay, Direction::Right] {
        let blocked = matches!(
            (read, direction),
            (TapeSymbol::LeftEnd, Direction::Left) | (TapeSymbol::RightEnd, Direction::Right)
        );
        if blocked {
            continue;
        }
        moves.push(Move {
            direction,
            carry: false,
        });
        if pebble && direction != Direction::Stay {
            moves.push(Move {
                direction,
                carry: true,
            });
        }
    }
    moves
}
