//! Automaton data model shared by classical and one-pebble two-way machines.
//!
//! A descriptor is a plain value: states are opaque string ids, the transition
//! relation maps a [`TransitionKey`] to a set of `(target, move)` pairs, and a
//! missing key means the machine halts. Well-formedness is checked by
//! [`validate_automaton`], which reports every violation instead of failing on
//! the first one.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Reserved tape tokens in the textual format.
pub const LEFT_END_TOKEN: &str = "|-";
pub const RIGHT_END_TOKEN: &str = "-|";
pub const LEFT_STOPPER_TOKEN: &str = ">";
pub const RIGHT_STOPPER_TOKEN: &str = "<";
pub const BOX_SUFFIX: char = '*';

const RESERVED: [&str; 4] = [
    LEFT_END_TOKEN,
    RIGHT_END_TOKEN,
    LEFT_STOPPER_TOKEN,
    RIGHT_STOPPER_TOKEN,
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolError {
    #[error("symbol token is empty")]
    Empty,
    #[error("symbol token {0:?} contains whitespace or non-printable characters")]
    NotPrintable(String),
    #[error("symbol token {0:?} is reserved")]
    Reserved(String),
    #[error("symbol token {0:?} ends in the box suffix `*`")]
    BoxSuffix(String),
}

/// A letter of an input alphabet.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(String);

impl Symbol {
    pub fn new(token: impl Into<String>) -> Result<Self, SymbolError> {
        let token = token.into();
        if token.is_empty() {
            return Err(SymbolError::Empty);
        }
        if token.chars().any(|c| c.is_whitespace() || c.is_control()) {
            return Err(SymbolError::NotPrintable(token));
        }
        if RESERVED.contains(&token.as_str()) {
            return Err(SymbolError::Reserved(token));
        }
        if token.ends_with(BOX_SUFFIX) {
            return Err(SymbolError::BoxSuffix(token));
        }
        Ok(Symbol(token))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Anything that can sit in a tape cell.
///
/// `Boxed` and the two stoppers belong to encoded alphabets only; the two
/// endmarkers frame a tape and never occur inside a word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TapeSymbol {
    Plain(Symbol),
    Boxed(Symbol),
    LeftStopper,
    RightStopper,
    LeftEnd,
    RightEnd,
}

impl TapeSymbol {
    /// Parses a token using the reserved-token conventions (`|-`, `-|`, `>`, `<`, `a*`).
    pub fn from_token(token: &str) -> Result<Self, SymbolError> {
        Ok(match token {
            LEFT_END_TOKEN => TapeSymbol::LeftEnd,
            RIGHT_END_TOKEN => TapeSymbol::RightEnd,
            LEFT_STOPPER_TOKEN => TapeSymbol::LeftStopper,
            RIGHT_STOPPER_TOKEN => TapeSymbol::RightStopper,
            _ => match token.strip_suffix(BOX_SUFFIX) {
                Some(base) => TapeSymbol::Boxed(Symbol::new(base)?),
                None => TapeSymbol::Plain(Symbol::new(token)?),
            },
        })
    }

    pub fn token(&self) -> String {
        match self {
            TapeSymbol::Plain(a) => a.0.clone(),
            TapeSymbol::Boxed(a) => format!("{}{}", a.0, BOX_SUFFIX),
            TapeSymbol::LeftStopper => LEFT_STOPPER_TOKEN.to_string(),
            TapeSymbol::RightStopper => RIGHT_STOPPER_TOKEN.to_string(),
            TapeSymbol::LeftEnd => LEFT_END_TOKEN.to_string(),
            TapeSymbol::RightEnd => RIGHT_END_TOKEN.to_string(),
        }
    }

    pub fn is_endmarker(&self) -> bool {
        matches!(self, TapeSymbol::LeftEnd | TapeSymbol::RightEnd)
    }

    /// True for symbols that only exist in encoded alphabets.
    pub fn is_encoding_only(&self) -> bool {
        matches!(
            self,
            TapeSymbol::Boxed(_) | TapeSymbol::LeftStopper | TapeSymbol::RightStopper
        )
    }

    pub fn plain(token: &str) -> Self {
        TapeSymbol::Plain(Symbol::new(token).expect("valid symbol token"))
    }
}

impl fmt::Display for TapeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

/// Opaque state identifier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct State(String);

impl State {
    pub fn new(id: impl Into<String>) -> Self {
        State(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for State {
    fn from(id: &str) -> Self {
        State(id.to_string())
    }
}

impl From<String> for State {
    fn from(id: String) -> Self {
        State(id)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Left,
    Stay,
    Right,
}

impl Direction {
    pub fn offset(self) -> i8 {
        match self {
            Direction::Left => -1,
            Direction::Stay => 0,
            Direction::Right => 1,
        }
    }

    pub fn from_offset(offset: i64) -> Option<Self> {
        match offset {
            -1 => Some(Direction::Left),
            0 => Some(Direction::Stay),
            1 => Some(Direction::Right),
            _ => None,
        }
    }
}

/// Head movement, optionally dragging the pebble along (`carry`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    pub direction: Direction,
    pub carry: bool,
}

impl Move {
    pub const LEFT: Move = Move {
        direction: Direction::Left,
        carry: false,
    };
    pub const STAY: Move = Move {
        direction: Direction::Stay,
        carry: false,
    };
    pub const RIGHT: Move = Move {
        direction: Direction::Right,
        carry: false,
    };
    pub const CARRY_LEFT: Move = Move {
        direction: Direction::Left,
        carry: true,
    };
    pub const CARRY_RIGHT: Move = Move {
        direction: Direction::Right,
        carry: true,
    };

    pub fn offset(self) -> i8 {
        self.direction.offset()
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.direction {
            Direction::Left => "-1",
            Direction::Stay => "0",
            Direction::Right => "+1",
        };
        if self.carry {
            write!(f, "{d}•")
        } else {
            f.write_str(d)
        }
    }
}

/// Left-hand side of a transition. `pebble` is the "pebble under the head"
/// flag and is always false for classical machines.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransitionKey {
    pub state: State,
    pub read: TapeSymbol,
    pub pebble: bool,
}

impl TransitionKey {
    pub fn new(state: impl Into<State>, read: TapeSymbol, pebble: bool) -> Self {
        TransitionKey {
            state: state.into(),
            read,
            pebble,
        }
    }
}

impl fmt::Display for TransitionKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pebble {
            write!(f, "δ({}, {}•)", self.state, self.read)
        } else {
            write!(f, "δ({}, {})", self.state, self.read)
        }
    }
}

pub type Target = (State, Move);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "2nfa")]
    Nfa2,
    #[serde(rename = "2dfa")]
    Dfa2,
    #[serde(rename = "pebble-2nfa")]
    PebbleNfa2,
    #[serde(rename = "pebble-2dfa")]
    PebbleDfa2,
}

impl Kind {
    pub fn is_pebble(self) -> bool {
        matches!(self, Kind::PebbleNfa2 | Kind::PebbleDfa2)
    }

    /// Whether the kind *declares* determinism.
    pub fn is_deterministic(self) -> bool {
        matches!(self, Kind::Dfa2 | Kind::PebbleDfa2)
    }

    pub fn tag(self) -> &'static str {
        match self {
            Kind::Nfa2 => "2nfa",
            Kind::Dfa2 => "2dfa",
            Kind::PebbleNfa2 => "pebble-2nfa",
            Kind::PebbleDfa2 => "pebble-2dfa",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "2nfa" => Some(Kind::Nfa2),
            "2dfa" => Some(Kind::Dfa2),
            "pebble-2nfa" => Some(Kind::PebbleNfa2),
            "pebble-2dfa" => Some(Kind::PebbleDfa2),
            _ => None,
        }
    }

    pub fn classical(deterministic: bool) -> Self {
        if deterministic {
            Kind::Dfa2
        } else {
            Kind::Nfa2
        }
    }

    pub fn pebble(deterministic: bool) -> Self {
        if deterministic {
            Kind::PebbleDfa2
        } else {
            Kind::PebbleNfa2
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// An input alphabet Σ, optionally extended to the encoded alphabet
/// Σ ∪ {▷, ◁} ∪ Σ^□.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Alphabet {
    letters: BTreeSet<Symbol>,
    encoded: bool,
}

impl Alphabet {
    pub fn plain(letters: impl IntoIterator<Item = Symbol>) -> Self {
        Alphabet {
            letters: letters.into_iter().collect(),
            encoded: false,
        }
    }

    pub fn from_tokens<'a>(tokens: impl IntoIterator<Item = &'a str>) -> Result<Self, SymbolError> {
        let letters = tokens
            .into_iter()
            .map(Symbol::new)
            .collect::<Result<BTreeSet<_>, _>>()?;
        Ok(Alphabet {
            letters,
            encoded: false,
        })
    }

    /// The encoded alphabet over the same base letters.
    pub fn encoded(&self) -> Self {
        Alphabet {
            letters: self.letters.clone(),
            encoded: true,
        }
    }

    /// The base alphabet with the encoding symbols removed.
    pub fn base(&self) -> Self {
        Alphabet {
            letters: self.letters.clone(),
            encoded: false,
        }
    }

    pub fn is_encoded(&self) -> bool {
        self.encoded
    }

    pub fn letters(&self) -> impl Iterator<Item = &Symbol> {
        self.letters.iter()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Every symbol that may appear inside a word, in canonical order:
    /// plain letters, then (for encoded alphabets) boxed letters, `>` and `<`.
    pub fn word_symbols(&self) -> Vec<TapeSymbol> {
        let mut out: Vec<TapeSymbol> = self
            .letters
            .iter()
            .cloned()
            .map(TapeSymbol::Plain)
            .collect();
        if self.encoded {
            out.extend(self.letters.iter().cloned().map(TapeSymbol::Boxed));
            out.push(TapeSymbol::LeftStopper);
            out.push(TapeSymbol::RightStopper);
        }
        out
    }

    /// Word symbols plus both endmarkers.
    pub fn tape_symbols(&self) -> Vec<TapeSymbol> {
        let mut out = self.word_symbols();
        out.push(TapeSymbol::LeftEnd);
        out.push(TapeSymbol::RightEnd);
        out
    }

    pub fn contains(&self, symbol: &TapeSymbol) -> bool {
        match symbol {
            TapeSymbol::Plain(a) => self.letters.contains(a),
            TapeSymbol::Boxed(a) => self.encoded && self.letters.contains(a),
            TapeSymbol::LeftStopper | TapeSymbol::RightStopper => self.encoded,
            TapeSymbol::LeftEnd | TapeSymbol::RightEnd => true,
        }
    }
}

/// A classical or one-pebble two-way automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    pub kind: Kind,
    pub states: BTreeSet<State>,
    pub alphabet: Alphabet,
    pub delta: BTreeMap<TransitionKey, BTreeSet<Target>>,
    pub initial: State,
    pub accepting: BTreeSet<State>,
}

impl Automaton {
    /// A machine with a single initial state and no transitions.
    pub fn new(kind: Kind, alphabet: Alphabet, initial: impl Into<State>) -> Self {
        let initial = initial.into();
        Automaton {
            kind,
            states: BTreeSet::from([initial.clone()]),
            alphabet,
            delta: BTreeMap::new(),
            initial,
            accepting: BTreeSet::new(),
        }
    }

    pub fn add_state(&mut self, state: impl Into<State>) -> &mut Self {
        self.states.insert(state.into());
        self
    }

    pub fn add_accepting(&mut self, state: impl Into<State>) -> &mut Self {
        let state = state.into();
        self.states.insert(state.clone());
        self.accepting.insert(state);
        self
    }

    /// Adds `δ(from, read[•]) ∋ (to, mv)`, declaring both states.
    pub fn add_transition(
        &mut self,
        from: impl Into<State>,
        read: TapeSymbol,
        pebble: bool,
        to: impl Into<State>,
        mv: Move,
    ) -> &mut Self {
        let from = from.into();
        let to = to.into();
        self.states.insert(from.clone());
        self.states.insert(to.clone());
        self.delta
            .entry(TransitionKey {
                state: from,
                read,
                pebble,
            })
            .or_default()
            .insert((to, mv));
        self
    }

    pub fn targets(&self, key: &TransitionKey) -> impl Iterator<Item = &Target> {
        self.delta.get(key).into_iter().flatten()
    }

    /// Iterates over all `(key, target)` pairs in canonical order.
    pub fn transitions(&self) -> impl Iterator<Item = (&TransitionKey, &Target)> {
        self.delta
            .iter()
            .flat_map(|(key, targets)| targets.iter().map(move |t| (key, t)))
    }

    pub fn transition_count(&self) -> usize {
        self.delta.values().map(BTreeSet::len).sum()
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn is_pebble(&self) -> bool {
        self.kind.is_pebble()
    }

    /// Removes a single transition; drops the key if it becomes empty.
    pub fn remove_transition(&mut self, key: &TransitionKey, target: &Target) -> bool {
        let Some(set) = self.delta.get_mut(key) else {
            return false;
        };
        let removed = set.remove(target);
        if set.is_empty() {
            self.delta.remove(key);
        }
        removed
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    RightMoveOnRightEnd,
    LeftMoveOnLeftEnd,
    CarryWithoutPebble,
    StationaryCarry,
    PebbleInClassical,
    NondeterministicKey,
    UndeclaredState,
    ForeignSymbol,
    InitialNotDeclared,
    AcceptingNotDeclared,
}

impl ViolationKind {
    pub fn describe(&self) -> &'static str {
        match self {
            ViolationKind::RightMoveOnRightEnd => "right move on right endmarker",
            ViolationKind::LeftMoveOnLeftEnd => "left move on left endmarker",
            ViolationKind::CarryWithoutPebble => "pebble move without the pebble under the head",
            ViolationKind::StationaryCarry => "stationary pebble move",
            ViolationKind::PebbleInClassical => {
                "pebble-marked reading or pebble move in a classical machine"
            }
            ViolationKind::NondeterministicKey => {
                "more than one target in a machine declared deterministic"
            }
            ViolationKind::UndeclaredState => "transition references an undeclared state",
            ViolationKind::ForeignSymbol => "transition reads a symbol outside the alphabet",
            ViolationKind::InitialNotDeclared => "initial state is not declared",
            ViolationKind::AcceptingNotDeclared => "accepting state is not declared",
        }
    }
}

/// One well-formedness violation, naming the offending transition where there is one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub kind: ViolationKind,
    pub key: Option<TransitionKey>,
    pub target: Option<Target>,
    pub state: Option<State>,
}

impl Violation {
    fn on_transition(kind: ViolationKind, key: &TransitionKey, target: &Target) -> Self {
        Violation {
            kind,
            key: Some(key.clone()),
            target: Some(target.clone()),
            state: None,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.describe())?;
        match (&self.key, &self.target) {
            (Some(key), Some((to, mv))) => write!(f, ": {key} ∋ ({to}, {mv})")?,
            (Some(key), None) => write!(f, ": {key}")?,
            _ => {}
        }
        if let Some(state) = &self.state {
            write!(f, ": {state}")?;
        }
        Ok(())
    }
}

/// Checks every structural invariant of a descriptor. An empty result means
/// the descriptor is well formed.
pub fn validate_automaton(a: &Automaton) -> Vec<Violation> {
    let mut out = Vec::new();
    if !a.states.contains(&a.initial) {
        out.push(Violation {
            kind: ViolationKind::InitialNotDeclared,
            key: None,
            target: None,
            state: Some(a.initial.clone()),
        });
    }
    for q in a.accepting.difference(&a.states) {
        out.push(Violation {
            kind: ViolationKind::AcceptingNotDeclared,
            key: None,
            target: None,
            state: Some(q.clone()),
        });
    }
    let pebble_kind = a.kind.is_pebble();
    for (key, targets) in &a.delta {
        if a.kind.is_deterministic() && targets.len() > 1 {
            out.push(Violation {
                kind: ViolationKind::NondeterministicKey,
                key: Some(key.clone()),
                target: None,
                state: None,
            });
        }
        let key_state_ok = a.states.contains(&key.state);
        let symbol_ok = a.alphabet.contains(&key.read);
        for target in targets {
            let (to, mv) = target;
            if !key_state_ok || !a.states.contains(to) {
                out.push(Violation::on_transition(
                    ViolationKind::UndeclaredState,
                    key,
                    target,
                ));
            }
            if !symbol_ok {
                out.push(Violation::on_transition(
                    ViolationKind::ForeignSymbol,
                    key,
                    target,
                ));
            }
            if key.read == TapeSymbol::RightEnd && mv.direction == Direction::Right {
                out.push(Violation::on_transition(
                    ViolationKind::RightMoveOnRightEnd,
                    key,
                    target,
                ));
            }
            if key.read == TapeSymbol::LeftEnd && mv.direction == Direction::Left {
                out.push(Violation::on_transition(
                    ViolationKind::LeftMoveOnLeftEnd,
                    key,
                    target,
                ));
            }
            if mv.carry && !key.pebble {
                out.push(Violation::on_transition(
                    ViolationKind::CarryWithoutPebble,
                    key,
                    target,
                ));
            }
            if mv.carry && mv.direction == Direction::Stay {
                out.push(Violation::on_transition(
                    ViolationKind::StationaryCarry,
                    key,
                    target,
                ));
            }
            if !pebble_kind && (key.pebble || mv.carry) {
                out.push(Violation::on_transition(
                    ViolationKind::PebbleInClassical,
                    key,
                    target,
                ));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// True iff every key has at most one target. Ignores the declared kind.
pub fn is_deterministic(a: &Automaton) -> bool {
    a.delta.values().all(|targets| targets.len() <= 1)
}
