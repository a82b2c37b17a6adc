//! Pebble machine → classical machine reading the encoded input.
//!
//! While the pebble stays at position `p`, the classical machine works inside
//! segment `p` of the encoding, reading the boxed letter where the pebble
//! machine would see the pebble and the stoppers where it would see the
//! endmarkers (the real endmarkers stand in for the pebble lying on an
//! endmarker). A pebble move becomes a sweep by a passing-through copy
//! `q@+1` / `q@-1` into the neighbouring segment, stopping on its box.

use crate::automaton::{
    is_deterministic, Automaton, Direction, Kind, Move, State, TapeSymbol, TransitionKey,
};
use crate::translations::{
    bump, check_valid, Construction, CopyNamer, TranslationError, TranslationReport,
};

/// Rule families of the construction, one per kind of source transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PebbleRule {
    /// `δ(q,a)` → `δ'(q,a)`
    Letter,
    /// `δ(q,|-)` → `δ'(q,>)`
    LeftEnd,
    /// `δ(q,-|)` → `δ'(q,<)`
    RightEnd,
    /// `δ(q,a•)` → `δ'(q,a*)`
    PebbledLetter,
    /// `δ(q,|-•)` → `δ'(q,|-)`
    PebbledLeftEnd,
    /// `δ(q,-|•)` → `δ'(q,-|)`
    PebbledRightEnd,
    /// `δ(q,a•) ∋ (q',+1•)`: sweep right to the next box.
    CarryRight,
    /// `δ(q,|-•) ∋ (q',+1•)`
    CarryRightFromLeftEnd,
    /// `δ(q,a•) ∋ (q',-1•)`: sweep left to the previous box.
    CarryLeft,
    /// `δ(q,-|•) ∋ (q',-1•)`
    CarryLeftFromRightEnd,
}

impl PebbleRule {
    pub const ALL: [PebbleRule; 10] = [
        PebbleRule::Letter,
        PebbleRule::LeftEnd,
        PebbleRule::RightEnd,
        PebbleRule::PebbledLetter,
        PebbleRule::PebbledLeftEnd,
        PebbleRule::PebbledRightEnd,
        PebbleRule::CarryRight,
        PebbleRule::CarryRightFromLeftEnd,
        PebbleRule::CarryLeft,
        PebbleRule::CarryLeftFromRightEnd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PebbleRule::Letter => "letter",
            PebbleRule::LeftEnd => "left-end",
            PebbleRule::RightEnd => "right-end",
            PebbleRule::PebbledLetter => "pebbled-letter",
            PebbleRule::PebbledLeftEnd => "pebbled-left-end",
            PebbleRule::PebbledRightEnd => "pebbled-right-end",
            PebbleRule::CarryRight => "carry-right",
            PebbleRule::CarryRightFromLeftEnd => "carry-right-from-left-end",
            PebbleRule::CarryLeft => "carry-left",
            PebbleRule::CarryLeftFromRightEnd => "carry-left-from-right-end",
        }
    }

    fn classify(key: &TransitionKey, mv: Move) -> Option<PebbleRule> {
        use TapeSymbol::*;
        let rule = match (&key.read, key.pebble, mv.carry, mv.direction) {
            (Plain(_), false, false, _) => PebbleRule::Letter,
            (LeftEnd, false, false, _) => PebbleRule::LeftEnd,
            (RightEnd, false, false, _) => PebbleRule::RightEnd,
            (Plain(_), true, false, _) => PebbleRule::PebbledLetter,
            (LeftEnd, true, false, _) => PebbleRule::PebbledLeftEnd,
            (RightEnd, true, false, _) => PebbleRule::PebbledRightEnd,
            (Plain(_), true, true, Direction::Right) => PebbleRule::CarryRight,
            (LeftEnd, true, true, Direction::Right) => PebbleRule::CarryRightFromLeftEnd,
            (Plain(_), true, true, Direction::Left) => PebbleRule::CarryLeft,
            (RightEnd, true, true, Direction::Left) => PebbleRule::CarryLeftFromRightEnd,
            _ => return None,
        };
        Some(rule)
    }
}

pub fn pebble_to_classical(
    m: &Automaton,
) -> Result<(Automaton, TranslationReport), TranslationError> {
    pebble_to_classical_with(m, &[])
}

/// The construction with some rule families switched off. Only useful for
/// mutation testing; the result is generally not equivalent.
pub fn pebble_to_classical_with(
    m: &Automaton,
    disabled: &[PebbleRule],
) -> Result<(Automaton, TranslationReport), TranslationError> {
    check_valid(m)?;
    if !m.kind.is_pebble() {
        return Err(TranslationError::WrongKind {
            expected: "pebble",
            found: m.kind,
        });
    }
    if m.alphabet.is_encoded() {
        return Err(TranslationError::EncodedInput);
    }

    let mut out = Automaton::new(
        Kind::classical(m.kind.is_deterministic()),
        m.alphabet.encoded(),
        m.initial.clone(),
    );
    out.states = m.states.clone();
    out.accepting = m.accepting.clone();
    let mut namer = CopyNamer::new(&m.states);
    let mut report = TranslationReport::new(
        Construction::PebbleToClassical,
        m.state_count(),
        0,
        3 * m.state_count() as u64,
    );

    for (key, (to, mv)) in m.transitions() {
        let rule = PebbleRule::classify(key, *mv).expect("validated pebble transition");
        if disabled.contains(&rule) {
            continue;
        }
        bump(&mut report.rule_audit, rule.name());
        let q = key.state.clone();
        let step = Move {
            direction: mv.direction,
            carry: false,
        };
        match rule {
            PebbleRule::Letter => {
                out.add_transition(q, key.read.clone(), false, to.clone(), step);
            }
            PebbleRule::LeftEnd => {
                out.add_transition(q, TapeSymbol::LeftStopper, false, to.clone(), step);
            }
            PebbleRule::RightEnd => {
                out.add_transition(q, TapeSymbol::RightStopper, false, to.clone(), step);
            }
            PebbleRule::PebbledLetter => {
                out.add_transition(q, boxed(&key.read), false, to.clone(), step);
            }
            PebbleRule::PebbledLeftEnd => {
                out.add_transition(q, TapeSymbol::LeftEnd, false, to.clone(), step);
            }
            PebbleRule::PebbledRightEnd => {
                out.add_transition(q, TapeSymbol::RightEnd, false, to.clone(), step);
            }
            PebbleRule::CarryRight | PebbleRule::CarryRightFromLeftEnd => {
                let read = if rule == PebbleRule::CarryRight {
                    boxed(&key.read)
                } else {
                    TapeSymbol::LeftEnd
                };
                let copy = passing_copy(&mut out, &mut namer, &mut report, to, Direction::Right);
                out.add_transition(q, read, false, copy, Move::RIGHT);
            }
            PebbleRule::CarryLeft | PebbleRule::CarryLeftFromRightEnd => {
                let read = if rule == PebbleRule::CarryLeft {
                    boxed(&key.read)
                } else {
                    TapeSymbol::RightEnd
                };
                let copy = passing_copy(&mut out, &mut namer, &mut report, to, Direction::Left);
                out.add_transition(q, read, false, copy, Move::LEFT);
            }
        }
    }

    report.output_states = out.state_count();
    report.bound_satisfied = report.output_states as u64 <= report.bound;
    report.determinism_in = is_deterministic(m);
    report.determinism_out = is_deterministic(&out);
    if report.determinism_in && !report.determinism_out {
        return Err(TranslationError::DeterminismLost("pebble-to-classical"));
    }
    Ok((out, report))
}

fn boxed(read: &TapeSymbol) -> TapeSymbol {
    match read {
        TapeSymbol::Plain(a) => TapeSymbol::Boxed(a.clone()),
        other => unreachable!("only letters are boxed, got {other}"),
    }
}

/// Returns the passing-through copy of `target` sweeping in `direction`,
/// adding its sweep transitions the first time it is requested.
fn passing_copy(
    out: &mut Automaton,
    namer: &mut CopyNamer,
    report: &mut TranslationReport,
    target: &State,
    direction: Direction,
) -> State {
    let (tag, stop_end) = match direction {
        Direction::Right => ("+1", TapeSymbol::RightEnd),
        Direction::Left => ("-1", TapeSymbol::LeftEnd),
        Direction::Stay => unreachable!("pebble moves are never stationary"),
    };
    let (copy, created) = namer.copy(target, tag);
    if !created {
        return copy;
    }
    bump(&mut report.rule_audit, &format!("copies@{tag}"));
    let sweep = Move {
        direction,
        carry: false,
    };
    let letters: Vec<_> = out.alphabet.letters().cloned().collect();
    for a in &letters {
        out.add_transition(
            copy.clone(),
            TapeSymbol::Plain(a.clone()),
            false,
            copy.clone(),
            sweep,
        );
        out.add_transition(
            copy.clone(),
            TapeSymbol::Boxed(a.clone()),
            false,
            target.clone(),
            Move::STAY,
        );
    }
    for stopper in [TapeSymbol::LeftStopper, TapeSymbol::RightStopper] {
        out.add_transition(copy.clone(), stopper, false, copy.clone(), sweep);
    }
    out.add_transition(copy.clone(), stop_end, false, target.clone(), Move::STAY);
    copy
}
