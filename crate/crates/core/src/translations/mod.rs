//! Linear-size translations between pebble and classical two-way automata,
//! the determinization/complementation lifts built on top of them, and the
//! exponential baseline transformers used to exercise the lifts.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automaton::{validate_automaton, Automaton, Kind, State, Violation};

mod baseline;
mod classical_to_pebble;
mod lifts;
mod pebble_to_classical;

pub use baseline::{
    baseline_bound, complement_2dfa_baseline, complement_2nfa_baseline, shepherdson_to_one_way,
    shepherdson_to_one_way_with_cap, DEFAULT_TABLE_CAP,
};
pub use classical_to_pebble::{classical_to_pebble, classical_to_pebble_with, ClassicalRule};
pub use lifts::{complement_pebble_dfa, lift_complement, lift_determinization, TwoWayTransformer};
pub use pebble_to_classical::{pebble_to_classical, pebble_to_classical_with, PebbleRule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslationError {
    #[error("input descriptor is not well formed ({} violations)", .0.len())]
    InvalidInput(Vec<Violation>),
    #[error("expected a {expected} machine, found {found}")]
    WrongKind { expected: &'static str, found: Kind },
    #[error("input alphabet must be plain (not an encoded alphabet)")]
    EncodedInput,
    #[error("input alphabet is not of encoded shape Σ ∪ {{>, <}} ∪ Σ*")]
    NotEncodedAlphabet,
    #[error("input machine is not deterministic")]
    NotDeterministic,
    #[error("transformer `{name}` failed: {message}")]
    Transformer { name: String, message: String },
    #[error("transformer `{name}` returned a machine that is not deterministic")]
    TransformerNotDeterministic { name: String },
    #[error("construction `{0}` lost determinism")]
    DeterminismLost(&'static str),
    #[error("{what} exceeded: {needed} > {cap}")]
    BudgetExceeded {
        what: &'static str,
        needed: usize,
        cap: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    PebbleToClassical,
    ClassicalToPebble,
    LiftDeterminization,
    LiftComplement,
    ComplementPebbleDfa,
}

/// Record of how a transformer behaved inside a lift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformerUse {
    pub name: String,
    pub input_states: usize,
    pub output_states: usize,
    /// The transformer's declared bound evaluated at its actual input size.
    pub declared_bound: u64,
    pub within_declared_bound: bool,
}

/// Size and property audit of one construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationReport {
    pub construction: Construction,
    pub input_states: usize,
    pub output_states: usize,
    /// Saturates at `u64::MAX` for bounds that do not fit.
    pub bound: u64,
    pub bound_satisfied: bool,
    /// Whether `bound` follows from the construction (and the transformer's
    /// declared bound), as opposed to being a target the inputs may miss.
    pub bound_guaranteed: bool,
    pub determinism_in: bool,
    pub determinism_out: bool,
    pub rule_audit: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transformer: Option<TransformerUse>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stages: Vec<TranslationReport>,
}

impl TranslationReport {
    pub(crate) fn new(
        construction: Construction,
        input_states: usize,
        output_states: usize,
        bound: u64,
    ) -> Self {
        TranslationReport {
            construction,
            input_states,
            output_states,
            bound,
            bound_satisfied: output_states as u64 <= bound,
            bound_guaranteed: true,
            determinism_in: false,
            determinism_out: false,
            rule_audit: BTreeMap::new(),
            transformer: None,
            stages: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

pub(crate) fn check_valid(a: &Automaton) -> Result<(), TranslationError> {
    let violations = validate_automaton(a);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(TranslationError::InvalidInput(violations))
    }
}

/// Hands out names for passing-through copies, `q@+1` style. A name that
/// would collide with an existing state is bracketed (`[q]@+1`) until free.
pub(crate) struct CopyNamer {
    taken: BTreeSet<State>,
    assigned: BTreeMap<(State, &'static str), State>,
}

impl CopyNamer {
    pub(crate) fn new(states: &BTreeSet<State>) -> Self {
        CopyNamer {
            taken: states.clone(),
            assigned: BTreeMap::new(),
        }
    }

    /// Returns the copy and whether it was created by this call.
    pub(crate) fn copy(&mut self, base: &State, tag: &'static str) -> (State, bool) {
        if let Some(existing) = self.assigned.get(&(base.clone(), tag)) {
            return (existing.clone(), false);
        }
        let mut stem = base.as_str().to_string();
        let name = loop {
            let candidate = State::new(format!("{stem}@{tag}"));
            if !self.taken.contains(&candidate) {
                break candidate;
            }
            stem = format!("[{stem}]");
        };
        self.taken.insert(name.clone());
        self.assigned.insert((base.clone(), tag), name.clone());
        (name, true)
    }
}

pub(crate) fn bump(audit: &mut BTreeMap<String, usize>, key: &str) {
    *audit.entry(key.to_string()).or_default() += 1;
}
