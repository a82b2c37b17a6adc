//! Two-way automata with and without a pebble, the segment encoding that
//! connects them, linear translations in both directions, and the witness
//! family of unary languages.

pub mod automaton;
pub mod corpus;
pub mod encoding;
pub mod format;
pub mod simulation;
pub mod translations;
pub mod witnesses;

pub use automaton::{
    is_deterministic, validate_automaton, Alphabet, Automaton, Direction, Kind, Move, State,
    Symbol, SymbolError, TapeSymbol, Target, TransitionKey, Violation, ViolationKind,
};
pub use encoding::{encode, encode_tape, encoded_len, format_tokens, EncodedWord, EncodingError};
pub use format::{parse_automaton, parse_automaton_unchecked, serialize_automaton, FormatError};
pub use simulation::{
    accepts, bounded_equiv, bounded_equiv_with_budget, trace, SimError, Trace, WordTransform,
};
pub use translations::{
    classical_to_pebble, complement_pebble_dfa, lift_complement, lift_determinization,
    pebble_to_classical, TranslationError, TranslationReport, TwoWayTransformer,
};
pub use witnesses::{
    primes, pump_check, unary_restriction, unary_word, witness_membership, witness_pebble_dfa,
    PumpError, WitnessSpec,
};
