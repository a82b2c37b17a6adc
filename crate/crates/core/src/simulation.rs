//! Exact acceptance for classical and one-pebble two-way automata.
//!
//! A machine accepts when some configuration carrying an accepting state is
//! reachable from the initial one. Both machine models have finitely many
//! configurations on a fixed tape (`|Q|·(k+2)` and `|Q|·(k+2)²`), so
//! acceptance is a breadth-first closure and never diverges on looping runs.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;
use thiserror::Error;

use crate::automaton::{is_deterministic, Automaton, Move, State, TapeSymbol};
use crate::encoding::encode_tape;

/// Default cap on the number of words [`bounded_equiv`] may enumerate.
pub const DEFAULT_WORD_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("symbol {0} is not in the machine's alphabet")]
    ForeignSymbol(TapeSymbol),
    #[error("endmarker {0} cannot occur inside a word")]
    EndmarkerInWord(TapeSymbol),
    #[error("configuration is outside the tape or names an unknown state")]
    BadConfiguration,
    #[error("enumeration needs {needed} words, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("word transform failed: {0}")]
    Transform(String),
}

/// An input word framed by endmarkers; position 0 is `|-`, position `k+1` is `-|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tape {
    cells: Vec<TapeSymbol>,
}

impl Tape {
    pub fn new(word: &[TapeSymbol]) -> Result<Self, SimError> {
        if let Some(end) = word.iter().find(|s| s.is_endmarker()) {
            return Err(SimError::EndmarkerInWord(end.clone()));
        }
        let mut cells = Vec::with_capacity(word.len() + 2);
        cells.push(TapeSymbol::LeftEnd);
        cells.extend_from_slice(word);
        cells.push(TapeSymbol::RightEnd);
        Ok(Tape { cells })
    }

    /// Number of cells including both endmarkers.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn word_len(&self) -> usize {
        self.cells.len() - 2
    }

    pub fn get(&self, position: usize) -> Option<&TapeSymbol> {
        self.cells.get(position)
    }

    pub fn word(&self) -> &[TapeSymbol] {
        &self.cells[1..self.cells.len() - 1]
    }
}

/// Instantaneous description. `pebble` is `None` for classical machines.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    pub state: State,
    pub head: usize,
    pub pebble: Option<usize>,
}

impl Configuration {
    pub fn classical(state: impl Into<State>, head: usize) -> Self {
        Configuration {
            state: state.into(),
            head,
            pebble: None,
        }
    }

    pub fn with_pebble(state: impl Into<State>, head: usize, pebble: usize) -> Self {
        Configuration {
            state: state.into(),
            head,
            pebble: Some(pebble),
        }
    }
}

impl std::fmt::Display for Configuration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.pebble {
            Some(p) => write!(f, "({}, head {}, pebble {})", self.state, self.head, p),
            None => write!(f, "({}, head {})", self.state, self.head),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Config {
    state: usize,
    head: usize,
    pebble: usize,
}

/// Outcome of a full reachability sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exploration {
    pub accepted: bool,
    /// Distinct configurations visited.
    pub visited: usize,
    /// `|Q|·(k+2)` for classical machines, `|Q|·(k+2)²` for pebble machines.
    pub configuration_bound: usize,
}

/// A descriptor compiled into dense tables for repeated simulation.
#[derive(Debug)]
pub struct Simulator<'a> {
    automaton: &'a Automaton,
    states: Vec<State>,
    state_index: HashMap<State, usize>,
    symbol_index: HashMap<TapeSymbol, usize>,
    symbol_count: usize,
    table: Vec<Vec<(usize, Move)>>,
    accepting: Vec<bool>,
    initial: usize,
    pebble: bool,
}

impl<'a> Simulator<'a> {
    pub fn new(automaton: &'a Automaton) -> Self {
        let mut states: Vec<State> = automaton.states.iter().cloned().collect();
        // Tolerate undeclared ids; validation reports them separately.
        for (key, targets) in &automaton.delta {
            states.push(key.state.clone());
            states.extend(targets.iter().map(|(to, _)| to.clone()));
        }
        states.push(automaton.initial.clone());
        states.sort();
        states.dedup();
        let state_index: HashMap<State, usize> = states
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();

        let mut symbols = automaton.alphabet.tape_symbols();
        for key in automaton.delta.keys() {
            if !symbols.contains(&key.read) {
                symbols.push(key.read.clone());
            }
        }
        let symbol_index: HashMap<TapeSymbol, usize> = symbols
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let symbol_count = symbols.len();

        let mut table = vec![Vec::new(); states.len() * symbol_count * 2];
        for (key, targets) in &automaton.delta {
            let slot = (state_index[&key.state] * symbol_count + symbol_index[&key.read]) * 2
                + usize::from(key.pebble);
            table[slot] = targets
                .iter()
                .map(|(to, mv)| (state_index[to], *mv))
                .collect();
        }
        let accepting = states
            .iter()
            .map(|s| automaton.accepting.contains(s))
            .collect();
        Simulator {
            automaton,
            initial: state_index[&automaton.initial],
            states,
            state_index,
            symbol_index,
            symbol_count,
            table,
            accepting,
            pebble: automaton.kind.is_pebble(),
        }
    }

    pub fn automaton(&self) -> &Automaton {
        self.automaton
    }

    fn compile_tape(&self, tape: &Tape) -> Result<Vec<usize>, SimError> {
        tape.cells
            .iter()
            .map(|s| {
                if s.is_endmarker() || self.automaton.alphabet.contains(s) {
                    Ok(self.symbol_index[s])
                } else {
                    Err(SimError::ForeignSymbol(s.clone()))
                }
            })
            .collect()
    }

    fn successors(&self, tape: &[usize], c: Config, out: &mut Vec<Config>) {
        let pebble_here = self.pebble && c.head == c.pebble;
        let slot = (c.state * self.symbol_count + tape[c.head]) * 2 + usize::from(pebble_here);
        for &(to, mv) in &self.table[slot] {
            let Some(head) = c.head.checked_add_signed(isize::from(mv.offset())) else {
                continue;
            };
            if head >= tape.len() {
                continue;
            }
            let pebble = if mv.carry && pebble_here {
                head
            } else {
                c.pebble
            };
            out.push(Config {
                state: to,
                head,
                pebble,
            });
        }
    }

    fn start(&self) -> Config {
        Config {
            state: self.initial,
            head: 0,
            pebble: 0,
        }
    }

    fn slot_of(&self, c: Config, len: usize) -> usize {
        if self.pebble {
            (c.state * len + c.head) * len + c.pebble
        } else {
            c.state * len + c.head
        }
    }

    fn configuration_bound(&self, len: usize) -> usize {
        if self.pebble {
            self.states.len() * len * len
        } else {
            self.states.len() * len
        }
    }

    fn closure(&self, tape: &[usize], stop_on_accept: bool) -> Exploration {
        let len = tape.len();
        let mut seen = vec![false; self.configuration_bound(len)];
        let mut queue = VecDeque::new();
        let start = self.start();
        seen[self.slot_of(start, len)] = true;
        queue.push_back(start);
        let mut visited = 1;
        let mut accepted = false;
        let mut next = Vec::new();
        while let Some(c) = queue.pop_front() {
            if self.accepting[c.state] {
                accepted = true;
                if stop_on_accept {
                    break;
                }
            }
            next.clear();
            self.successors(tape, c, &mut next);
            for &n in &next {
                let slot = self.slot_of(n, len);
                if !seen[slot] {
                    seen[slot] = true;
                    visited += 1;
                    queue.push_back(n);
                }
            }
        }
        Exploration {
            accepted,
            visited,
            configuration_bound: self.configuration_bound(len),
        }
    }

    pub fn accepts(&self, word: &[TapeSymbol]) -> Result<bool, SimError> {
        let tape = self.compile_tape(&Tape::new(word)?)?;
        Ok(self.closure(&tape, true).accepted)
    }

    /// Explores every reachable configuration, without stopping at the first accepting one.
    pub fn explore(&self, word: &[TapeSymbol]) -> Result<Exploration, SimError> {
        let tape = self.compile_tape(&Tape::new(word)?)?;
        Ok(self.closure(&tape, false))
    }

    fn to_internal(&self, tape: &Tape, c: &Configuration) -> Result<Config, SimError> {
        let state = *self
            .state_index
            .get(&c.state)
            .ok_or(SimError::BadConfiguration)?;
        let pebble = match (self.pebble, c.pebble) {
            (true, Some(p)) if p < tape.len() => p,
            (false, None) => 0,
            _ => return Err(SimError::BadConfiguration),
        };
        if c.head >= tape.len() {
            return Err(SimError::BadConfiguration);
        }
        Ok(Config {
            state,
            head: c.head,
            pebble,
        })
    }

    fn to_public(&self, c: Config) -> Configuration {
        Configuration {
            state: self.states[c.state].clone(),
            head: c.head,
            pebble: self.pebble.then_some(c.pebble),
        }
    }

    pub fn step(
        &self,
        tape: &Tape,
        c: &Configuration,
    ) -> Result<BTreeSet<Configuration>, SimError> {
        let compiled = self.compile_tape(tape)?;
        let internal = self.to_internal(tape, c)?;
        let mut next = Vec::new();
        self.successors(&compiled, internal, &mut next);
        Ok(next.into_iter().map(|n| self.to_public(n)).collect())
    }

    pub fn initial_configuration(&self) -> Configuration {
        self.to_public(self.start())
    }

    pub fn trace(&self, word: &[TapeSymbol], max_steps: usize) -> Result<Trace, SimError> {
        let tape = self.compile_tape(&Tape::new(word)?)?;
        let len = tape.len();
        let mut next = Vec::new();
        if is_deterministic(self.automaton) {
            let mut run = vec![self.start()];
            let mut first_seen = HashMap::from([(self.slot_of(self.start(), len), 0usize)]);
            let end = loop {
                if run.len() > max_steps {
                    break RunEnd::StepLimit;
                }
                next.clear();
                self.successors(&tape, *run.last().expect("run is never empty"), &mut next);
                let Some(&n) = next.first() else {
                    break RunEnd::Halted;
                };
                if let Some(&earlier) = first_seen.get(&self.slot_of(n, len)) {
                    break RunEnd::Loop { repeats: earlier };
                }
                first_seen.insert(self.slot_of(n, len), run.len());
                run.push(n);
            };
            let accepted = run.iter().any(|c| self.accepting[c.state]);
            Ok(Trace::Run {
                configurations: run.into_iter().map(|c| self.to_public(c)).collect(),
                end,
                accepted,
            })
        } else {
            let mut seen = vec![false; self.configuration_bound(len)];
            seen[self.slot_of(self.start(), len)] = true;
            let mut layers = vec![vec![self.start()]];
            while layers.len() <= max_steps {
                let mut layer = Vec::new();
                for &c in layers.last().expect("layers is never empty") {
                    next.clear();
                    self.successors(&tape, c, &mut next);
                    for &n in &next {
                        let slot = self.slot_of(n, len);
                        if !seen[slot] {
                            seen[slot] = true;
                            layer.push(n);
                        }
                    }
                }
                if layer.is_empty() {
                    break;
                }
                layers.push(layer);
            }
            let accepted = layers.iter().flatten().any(|c| self.accepting[c.state]);
            let mut out: Vec<Vec<Configuration>> = layers
                .into_iter()
                .map(|l| l.into_iter().map(|c| self.to_public(c)).collect())
                .collect();
            out.iter_mut().for_each(|l| l.sort());
            Ok(Trace::Layers {
                layers: out,
                accepted,
            })
        }
    }
}

/// How a deterministic run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunEnd {
    /// No transition applies.
    Halted,
    /// The next configuration equals the one at index `repeats`.
    Loop { repeats: usize },
    /// `max_steps` reached.
    StepLimit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Trace {
    /// The unique run of a deterministic machine.
    Run {
        configurations: Vec<Configuration>,
        end: RunEnd,
        accepted: bool,
    },
    /// Breadth-first layers of newly reached configurations, by step index.
    Layers {
        layers: Vec<Vec<Configuration>>,
        accepted: bool,
    },
}

impl Trace {
    pub fn accepted(&self) -> bool {
        match self {
            Trace::Run { accepted, .. } | Trace::Layers { accepted, .. } => *accepted,
        }
    }
}

pub fn step(
    automaton: &Automaton,
    tape: &Tape,
    configuration: &Configuration,
) -> Result<BTreeSet<Configuration>, SimError> {
    Simulator::new(automaton).step(tape, configuration)
}

pub fn accepts(automaton: &Automaton, word: &[TapeSymbol]) -> Result<bool, SimError> {
    Simulator::new(automaton).accepts(word)
}

pub fn trace(
    automaton: &Automaton,
    word: &[TapeSymbol],
    max_steps: usize,
) -> Result<Trace, SimError> {
    Simulator::new(automaton).trace(word, max_steps)
}

/// Maps a left-hand word to the input given to the right-hand machine.
#[derive(Clone, Copy)]
pub enum WordTransform<'a> {
    Identity,
    /// The pebble-position encoding.
    Encode,
    Custom(&'a (dyn Fn(&[TapeSymbol]) -> Vec<TapeSymbol> + Sync)),
}

impl WordTransform<'_> {
    pub fn apply(&self, word: &[TapeSymbol]) -> Result<Vec<TapeSymbol>, SimError> {
        match self {
            WordTransform::Identity => Ok(word.to_vec()),
            WordTransform::Encode => encode_tape(word)
                .map(|e| e.into_tokens())
                .map_err(|e| SimError::Transform(e.to_string())),
            WordTransform::Custom(f) => Ok(f(word)),
        }
    }
}

/// Number of words of length at most `max_len` over `n` symbols, saturating.
pub fn word_count(n: usize, max_len: usize) -> u128 {
    let mut total: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..=max_len {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(n as u128);
    }
    total
}

/// The `index`-th word of length `len` in lexicographic order over `symbols`.
fn word_at(symbols: &[TapeSymbol], len: usize, mut index: u128) -> Vec<TapeSymbol> {
    let n = symbols.len() as u128;
    let mut word = vec![symbols.first().cloned().unwrap_or(TapeSymbol::LeftEnd); len];
    for slot in word.iter_mut().rev() {
        *slot = symbols[(index % n) as usize].clone();
        index /= n;
    }
    word
}

/// All words of length at most `max_len`, shortest first, lexicographic within a length.
pub fn words_up_to(
    symbols: &[TapeSymbol],
    max_len: usize,
) -> impl Iterator<Item = Vec<TapeSymbol>> + '_ {
    (0..=max_len).flat_map(move |len| {
        let count = if symbols.is_empty() && len > 0 {
            0
        } else {
            (symbols.len() as u128).pow(len as u32)
        };
        (0..count).map(move |i| word_at(symbols, len, i))
    })
}

/// Smallest word (length first, then lexicographic over the left alphabet's
/// canonical symbol order) on which the two machines disagree.
pub fn bounded_equiv(
    left: &Automaton,
    right: &Automaton,
    max_len: usize,
    transform: WordTransform<'_>,
) -> Result<Option<Vec<TapeSymbol>>, SimError> {
    bounded_equiv_with_budget(left, right, max_len, transform, DEFAULT_WORD_BUDGET)
}

pub fn bounded_equiv_with_budget(
    left: &Automaton,
    right: &Automaton,
    max_len: usize,
    transform: WordTransform<'_>,
    budget: u64,
) -> Result<Option<Vec<TapeSymbol>>, SimError> {
    let symbols = left.alphabet.word_symbols();
    let needed = word_count(symbols.len(), max_len);
    if needed > u128::from(budget) {
        return Err(SimError::BudgetExceeded { needed, budget });
    }
    let left_sim = Simulator::new(left);
    let right_sim = Simulator::new(right);
    let disagree = |word: Vec<TapeSymbol>| -> Option<Result<Vec<TapeSymbol>, SimError>> {
        let verdict = (|| {
            let l = left_sim.accepts(&word)?;
            let r = right_sim.accepts(&transform.apply(&word)?)?;
            Ok(l != r)
        })();
        match verdict {
            Ok(false) => None,
            Ok(true) => Some(Ok(word)),
            Err(e) => Some(Err(e)),
        }
    };
    for len in 0..=max_len {
        let count = if symbols.is_empty() && len > 0 {
            0
        } else {
            (symbols.len() as u128).pow(len as u32)
        };
        let found = (0..count as u64)
            .into_par_iter()
            .map(|i| word_at(&symbols, len, u128::from(i)))
            .find_map_first(disagree);
        if let Some(result) = found {
            return result.map(Some);
        }
    }
    Ok(None)
}
