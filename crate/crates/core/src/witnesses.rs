//! The unary witness family `L_m = { 1^ℓ : ℓ < p_1·…·p_m }` and the
//! `n → n + n!` pumping check for classical unary machines.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automaton::{Alphabet, Automaton, Kind, Move, State, Symbol, TapeSymbol};
use crate::simulation::{accepts, SimError};

pub const UNARY_LETTER: &str = "1";
pub const DEFAULT_PUMP_CAP: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSpec {
    pub m: usize,
    pub primes: Vec<u64>,
    /// Product of the primes; the language is every length below it.
    pub product: u64,
    pub target_states: usize,
}

impl WitnessSpec {
    pub fn new(m: usize) -> Self {
        let primes = primes(m);
        let product = primes.iter().product();
        let target_states = 2 + primes.iter().sum::<u64>() as usize;
        WitnessSpec {
            m,
            primes,
            product,
            target_states,
        }
    }
}

/// The first `m` primes, by trial division.
pub fn primes(m: usize) -> Vec<u64> {
    let mut found: Vec<u64> = Vec::with_capacity(m);
    let mut candidate = 2u64;
    while found.len() < m {
        if found
            .iter()
            .take_while(|&&p| p * p <= candidate)
            .all(|&p| !candidate.is_multiple_of(p))
        {
            found.push(candidate);
        }
        candidate += 1;
    }
    found
}

pub fn witness_membership(length: u64, m: usize) -> bool {
    length < WitnessSpec::new(m).product
}

pub fn unary_word(length: usize) -> Vec<TapeSymbol> {
    vec![TapeSymbol::plain(UNARY_LETTER); length]
}

fn counter(i: usize, j: u64) -> State {
    State::new(format!("c{i}_{j}"))
}

/// Pebble 2DFA for `L_m` with `2 + Σ p_i` states.
///
/// The pebble marks a candidate `x`, starting at `|-` and advancing one cell
/// per round. Prime `p_i` checks `p_i | x` with the counter `c{i}_*`:
/// odd `i` counts walking left from the pebble to `|-`, even `i` counts
/// walking right from `|-` to the pebble. A nonzero residue sends the machine
/// back to `qI`, which walks to the pebble and advances it. A zero residue
/// for every prime means `x` (> 0) is a common multiple, so the input is at
/// least the product and the machine halts rejecting; a pebble reaching `-|`
/// means accept.
pub fn witness_pebble_dfa(m: usize) -> Automaton {
    assert!(m >= 1, "the witness family starts at m = 1");
    let spec = WitnessSpec::new(m);
    let one = TapeSymbol::plain(UNARY_LETTER);
    let alphabet = Alphabet::plain([Symbol::new(UNARY_LETTER).expect("valid letter")]);
    let mut a = Automaton::new(Kind::PebbleDfa2, alphabet, "qI");
    a.add_accepting("qF");

    let start = counter(1, 0);
    a.add_transition(
        "qI",
        TapeSymbol::LeftEnd,
        true,
        start.clone(),
        Move::CARRY_RIGHT,
    );
    a.add_transition("qI", TapeSymbol::LeftEnd, false, "qI", Move::RIGHT);
    a.add_transition("qI", one.clone(), false, "qI", Move::RIGHT);
    a.add_transition("qI", one.clone(), true, start.clone(), Move::CARRY_RIGHT);
    a.add_transition(start.clone(), TapeSymbol::RightEnd, true, "qF", Move::STAY);

    for (idx, &p) in spec.primes.iter().enumerate() {
        let i = idx + 1;
        let last = i == m;
        let next = |j: u64| counter(i, (j + 1) % p);
        for j in 0..p {
            a.add_state(counter(i, j));
        }
        if i % 2 == 1 {
            if i == 1 {
                a.add_transition(start.clone(), one.clone(), true, next(0), Move::LEFT);
            }
            for j in 0..p {
                a.add_transition(counter(i, j), one.clone(), false, next(j), Move::LEFT);
                if j != 0 {
                    a.add_transition(counter(i, j), TapeSymbol::LeftEnd, false, "qI", Move::STAY);
                } else if !last {
                    let p_next = spec.primes[idx + 1];
                    a.add_transition(
                        counter(i, 0),
                        TapeSymbol::LeftEnd,
                        false,
                        counter(i + 1, 1 % p_next),
                        Move::RIGHT,
                    );
                }
            }
        } else {
            for j in 0..p {
                a.add_transition(counter(i, j), one.clone(), false, next(j), Move::RIGHT);
                if j != 0 {
                    a.add_transition(counter(i, j), one.clone(), true, "qI", Move::STAY);
                } else if !last {
                    let p_next = spec.primes[idx + 1];
                    a.add_transition(
                        counter(i, 0),
                        one.clone(),
                        true,
                        counter(i + 1, 1 % p_next),
                        Move::LEFT,
                    );
                }
            }
        }
    }
    a
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PumpError {
    #[error("pump check needs a classical machine over a one-letter alphabet")]
    NotUnary,
    #[error("length {length} is below the state count {states}")]
    Precondition { states: usize, length: usize },
    #[error("input length L + L! = {needed} exceeds the cap of {cap} cells")]
    BudgetExceeded { needed: String, cap: u64 },
    #[error(transparent)]
    Simulation(#[from] SimError),
}

pub fn pump_check(a: &Automaton, length: usize) -> Result<bool, PumpError> {
    pump_check_with_cap(a, length, DEFAULT_PUMP_CAP)
}

/// `accepts(1^L) ⟹ accepts(1^(L + L!))`, for `L ≥ |Q|`.
pub fn pump_check_with_cap(a: &Automaton, length: usize, cap: u64) -> Result<bool, PumpError> {
    if a.kind.is_pebble() || a.alphabet.is_encoded() || a.alphabet.len() != 1 {
        return Err(PumpError::NotUnary);
    }
    if length < a.state_count() {
        return Err(PumpError::Precondition {
            states: a.state_count(),
            length,
        });
    }
    let pumped = (1..=length as u64)
        .try_fold(1u64, |acc, k| acc.checked_mul(k))
        .and_then(|f| f.checked_add(length as u64))
        .filter(|&n| n <= cap)
        .ok_or_else(|| PumpError::BudgetExceeded {
            needed: format!("{length} + {length}!"),
            cap,
        })?;
    let letter = TapeSymbol::Plain(a.alphabet.letters().next().expect("one letter").clone());
    if !accepts(a, &vec![letter.clone(); length])? {
        return Ok(true);
    }
    Ok(accepts(a, &vec![letter; pumped as usize])?)
}

/// Restricts a classical machine over the encoded unary alphabet to the
/// plain letter and the endmarkers, dropping transitions on boxes and
/// stoppers, and keeps only states reachable from the initial state.
pub fn unary_restriction(a: &Automaton) -> Result<Automaton, PumpError> {
    if a.kind.is_pebble() || a.alphabet.len() != 1 {
        return Err(PumpError::NotUnary);
    }
    let kept = |read: &TapeSymbol| {
        matches!(
            read,
            TapeSymbol::Plain(_) | TapeSymbol::LeftEnd | TapeSymbol::RightEnd
        )
    };
    let mut reachable = BTreeSet::from([a.initial.clone()]);
    let mut queue = VecDeque::from([a.initial.clone()]);
    while let Some(q) = queue.pop_front() {
        for (key, (to, _)) in a.transitions() {
            if key.state == q && kept(&key.read) && reachable.insert(to.clone()) {
                queue.push_back(to.clone());
            }
        }
    }
    let mut out = Automaton::new(a.kind, a.alphabet.base(), a.initial.clone());
    for q in &reachable {
        out.add_state(q.clone());
        if a.accepting.contains(q) {
            out.add_accepting(q.clone());
        }
    }
    for (key, (to, mv)) in a.transitions() {
        if reachable.contains(&key.state) && kept(&key.read) {
            out.add_transition(key.state.clone(), key.read.clone(), false, to.clone(), *mv);
        }
    }
    Ok(out)
}
