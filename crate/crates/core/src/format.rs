//! JSON interchange format for automaton descriptors.
//!
//! ```json
//! {
//!   "kind": "pebble-2dfa",
//!   "alphabet": ["1"],
//!   "states": ["qF", "qI"],
//!   "initial": "qI",
//!   "accepting": ["qF"],
//!   "transitions": [
//!     {"from": "qI", "read": "|-", "pebble": true, "to": "qI", "move": 1, "carry": true}
//!   ]
//! }
//! ```
//!
//! Encoded alphabets list the boxed letters (`"a*"`) and both stoppers
//! (`">"`, `"<"`) alongside the plain letters. Serialization sorts every
//! collection, so equal descriptors always produce identical bytes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automaton::{
    validate_automaton, Alphabet, Automaton, Direction, Kind, Move, State, Symbol, TapeSymbol,
    Violation,
};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error("descriptor is not well formed: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

fn field_error(field: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Field {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAutomaton {
    kind: String,
    alphabet: Vec<String>,
    states: Vec<String>,
    initial: String,
    accepting: Vec<String>,
    transitions: Vec<RawTransition>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTransition {
    from: String,
    read: String,
    pebble: bool,
    to: String,
    #[serde(rename = "move")]
    mv: i64,
    carry: bool,
}

/// Parses and validates a descriptor.
pub fn parse_automaton(text: &str) -> Result<Automaton, FormatError> {
    let a = parse_automaton_unchecked(text)?;
    let violations = validate_automaton(&a);
    if violations.is_empty() {
        Ok(a)
    } else {
        Err(FormatError::Invalid(violations))
    }
}

/// Parses a descriptor without running [`validate_automaton`].
pub fn parse_automaton_unchecked(text: &str) -> Result<Automaton, FormatError> {
    let raw: RawAutomaton = serde_json::from_str(text).map_err(|e| FormatError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;

    let kind = Kind::from_tag(&raw.kind)
        .ok_or_else(|| field_error("kind", format!("unknown kind tag {:?}", raw.kind)))?;
    let alphabet = parse_alphabet(&raw.alphabet)?;

    let mut a = Automaton::new(kind, alphabet, raw.initial.as_str());
    a.states = raw.states.iter().map(|s| State::from(s.as_str())).collect();
    if raw.states.len() != a.states.len() {
        return Err(field_error("states", "duplicate state id"));
    }
    a.accepting = raw
        .accepting
        .iter()
        .map(|s| State::from(s.as_str()))
        .collect();

    for (i, t) in raw.transitions.iter().enumerate() {
        let read = TapeSymbol::from_token(&t.read)
            .map_err(|e| field_error(format!("transitions[{i}].read"), e.to_string()))?;
        let direction = Direction::from_offset(t.mv).ok_or_else(|| {
            field_error(
                format!("transitions[{i}].move"),
                format!("expected -1, 0 or 1, got {}", t.mv),
            )
        })?;
        let key = crate::automaton::TransitionKey::new(t.from.as_str(), read, t.pebble);
        a.delta.entry(key).or_default().insert((
            State::from(t.to.as_str()),
            Move {
                direction,
                carry: t.carry,
            },
        ));
    }
    Ok(a)
}

fn parse_alphabet(tokens: &[String]) -> Result<Alphabet, FormatError> {
    let mut plain = Vec::new();
    let mut boxed = Vec::new();
    let mut stoppers = (false, false);
    for (i, token) in tokens.iter().enumerate() {
        let field = || format!("alphabet[{i}]");
        match TapeSymbol::from_token(token).map_err(|e| field_error(field(), e.to_string()))? {
            TapeSymbol::Plain(a) => plain.push(a),
            TapeSymbol::Boxed(a) => boxed.push(a),
            TapeSymbol::LeftStopper => stoppers.0 = true,
            TapeSymbol::RightStopper => stoppers.1 = true,
            TapeSymbol::LeftEnd | TapeSymbol::RightEnd => {
                return Err(field_error(
                    field(),
                    "endmarkers are implicit and cannot be listed",
                ))
            }
        }
    }
    let base = Alphabet::plain(plain.iter().cloned());
    if base.len() != plain.len() {
        return Err(field_error("alphabet", "duplicate letter"));
    }
    if boxed.is_empty() && stoppers == (false, false) {
        return Ok(base);
    }
    let mut boxed_sorted: Vec<Symbol> = boxed;
    boxed_sorted.sort();
    let letters: Vec<Symbol> = base.letters().cloned().collect();
    if boxed_sorted != letters || stoppers != (true, true) {
        return Err(field_error(
            "alphabet",
            "an encoded alphabet must list every letter, its boxed form, `>` and `<`",
        ));
    }
    Ok(base.encoded())
}

/// Serializes a descriptor in canonical form, terminated by a newline.
pub fn serialize_automaton(a: &Automaton) -> String {
    let raw = RawAutomaton {
        kind: a.kind.tag().to_string(),
        alphabet: a
            .alphabet
            .word_symbols()
            .iter()
            .map(TapeSymbol::token)
            .collect(),
        states: a.states.iter().map(|s| s.as_str().to_string()).collect(),
        initial: a.initial.as_str().to_string(),
        accepting: a.accepting.iter().map(|s| s.as_str().to_string()).collect(),
        transitions: a
            .transitions()
            .map(|(key, (to, mv))| RawTransition {
                from: key.state.as_str().to_string(),
                read: key.read.token(),
                pebble: key.pebble,
                to: to.as_str().to_string(),
                mv: i64::from(mv.offset()),
                carry: mv.carry,
            })
            .collect(),
    };
    // One transition per line keeps diffs readable without the bulk of fully pretty output.
    let mut out = String::from("{\n");
    let field = |name: &str, value: String| format!("  \"{name}\": {value},\n");
    out.push_str(&field("kind", json(&raw.kind)));
    out.push_str(&field("alphabet", json(&raw.alphabet)));
    out.push_str(&field("states", json(&raw.states)));
    out.push_str(&field("initial", json(&raw.initial)));
    out.push_str(&field("accepting", json(&raw.accepting)));
    out.push_str("  \"transitions\": [");
    for (i, t) in raw.transitions.iter().enumerate() {
        out.push_str(if i == 0 { "\n    " } else { ",\n    " });
        out.push_str(&json(t));
    }
    if !raw.transitions.is_empty() {
        out.push_str("\n  ");
    }
    out.push_str("]\n}\n");
    out
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("value serializes")
}
