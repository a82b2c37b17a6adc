//! Classical machine over the encoded alphabet → pebble machine over the
//! plain alphabet.
//!
//! The pebble position stands for the segment the classical machine is in.
//! Inside a segment the simulation is direct. Crossing `<` to the right (or
//! `>` to the left) is replaced by a relocation routine: walk to the pebble,
//! drag it one cell, walk on to the far endmarker, and resume there.

use crate::automaton::{
    is_deterministic, Automaton, Direction, Kind, Move, State, TapeSymbol, TransitionKey,
};
use crate::translations::{
    bump, check_valid, Construction, CopyNamer, TranslationError, TranslationReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassicalRule {
    /// `δ(q,a)` → `δ'(q,a)`
    Letter,
    /// `δ(q,>) ∋ (q',d)`, `d ∈ {0,+1}` → `δ'(q,|-)`
    LeftStopper,
    /// `δ(q,<) ∋ (q',d)`, `d ∈ {-1,0}` → `δ'(q,-|)`
    RightStopper,
    /// `δ(q,a*)` → `δ'(q,a•)`
    BoxedLetter,
    /// `δ(q,|-)` → `δ'(q,|-•)`
    LeftEnd,
    /// `δ(q,-|)` → `δ'(q,-|•)`
    RightEnd,
    /// `δ(q,<) ∋ (q',+1)`: move into the next segment.
    CrossRight,
    /// `δ(q,>) ∋ (q',-1)`: move into the previous segment.
    CrossLeft,
}

impl ClassicalRule {
    pub const ALL: [ClassicalRule; 8] = [
        ClassicalRule::Letter,
        ClassicalRule::LeftStopper,
        ClassicalRule::RightStopper,
        ClassicalRule::BoxedLetter,
        ClassicalRule::LeftEnd,
        ClassicalRule::RightEnd,
        ClassicalRule::CrossRight,
        ClassicalRule::CrossLeft,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassicalRule::Letter => "letter",
            ClassicalRule::LeftStopper => "left-stopper",
            ClassicalRule::RightStopper => "right-stopper",
            ClassicalRule::BoxedLetter => "boxed-letter",
            ClassicalRule::LeftEnd => "left-end",
            ClassicalRule::RightEnd => "right-end",
            ClassicalRule::CrossRight => "cross-right",
            ClassicalRule::CrossLeft => "cross-left",
        }
    }

    fn classify(key: &TransitionKey, mv: Move) -> ClassicalRule {
        use TapeSymbol::*;
        match (&key.read, mv.direction) {
            (Plain(_), _) => ClassicalRule::Letter,
            (LeftStopper, Direction::Left) => ClassicalRule::CrossLeft,
            (LeftStopper, _) => ClassicalRule::LeftStopper,
            (RightStopper, Direction::Right) => ClassicalRule::CrossRight,
            (RightStopper, _) => ClassicalRule::RightStopper,
            (Boxed(_), _) => ClassicalRule::BoxedLetter,
            (LeftEnd, _) => ClassicalRule::LeftEnd,
            (RightEnd, _) => ClassicalRule::RightEnd,
        }
    }
}

pub fn classical_to_pebble(
    n: &Automaton,
) -> Result<(Automaton, TranslationReport), TranslationError> {
    classical_to_pebble_with(n, &[])
}

/// The construction with some rule families switched off (mutation testing).
pub fn classical_to_pebble_with(
    n: &Automaton,
    disabled: &[ClassicalRule],
) -> Result<(Automaton, TranslationReport), TranslationError> {
    check_valid(n)?;
    if n.kind.is_pebble() {
        return Err(TranslationError::WrongKind {
            expected: "classical",
            found: n.kind,
        });
    }
    if !n.alphabet.is_encoded() {
        return Err(TranslationError::NotEncodedAlphabet);
    }

    let mut out = Automaton::new(
        Kind::pebble(n.kind.is_deterministic()),
        n.alphabet.base(),
        n.initial.clone(),
    );
    out.states = n.states.clone();
    out.accepting = n.accepting.clone();
    let mut namer = CopyNamer::new(&n.states);
    let mut report = TranslationReport::new(
        Construction::ClassicalToPebble,
        n.state_count(),
        0,
        5 * n.state_count() as u64,
    );

    for (key, (to, mv)) in n.transitions() {
        let rule = ClassicalRule::classify(key, *mv);
        if disabled.contains(&rule) {
            continue;
        }
        bump(&mut report.rule_audit, rule.name());
        let q = key.state.clone();
        match rule {
            ClassicalRule::Letter => {
                out.add_transition(q, key.read.clone(), false, to.clone(), *mv);
            }
            ClassicalRule::LeftStopper => {
                out.add_transition(q, TapeSymbol::LeftEnd, false, to.clone(), *mv);
            }
            ClassicalRule::RightStopper => {
                out.add_transition(q, TapeSymbol::RightEnd, false, to.clone(), *mv);
            }
            ClassicalRule::BoxedLetter => {
                let TapeSymbol::Boxed(a) = &key.read else {
                    unreachable!()
                };
                out.add_transition(q, TapeSymbol::Plain(a.clone()), true, to.clone(), *mv);
            }
            ClassicalRule::LeftEnd => {
                out.add_transition(q, TapeSymbol::LeftEnd, true, to.clone(), *mv);
            }
            ClassicalRule::RightEnd => {
                out.add_transition(q, TapeSymbol::RightEnd, true, to.clone(), *mv);
            }
            ClassicalRule::CrossRight => {
                let seek = relocation(&mut out, &mut namer, &mut report, to, Direction::Right);
                out.add_transition(q, TapeSymbol::RightEnd, false, seek, Move::LEFT);
            }
            ClassicalRule::CrossLeft => {
                let seek = relocation(&mut out, &mut namer, &mut report, to, Direction::Left);
                out.add_transition(q, TapeSymbol::LeftEnd, false, seek, Move::RIGHT);
            }
        }
    }

    report.output_states = out.state_count();
    report.bound_satisfied = report.output_states as u64 <= report.bound;
    report.determinism_in = is_deterministic(n);
    report.determinism_out = is_deterministic(&out);
    if report.determinism_in && !report.determinism_out {
        return Err(TranslationError::DeterminismLost("classical-to-pebble"));
    }
    Ok((out, report))
}

/// Adds the routine that shifts the pebble one cell in `pebble_direction`
/// and resumes in `target` on the endmarker the head started opposite to.
/// Returns the first (pebble-seeking) state.
///
/// For a right shift the head starts at `-|`: `q@-1` walks left to the
/// pebble and drags it right, then `q@-2` walks left to `|-` and resumes.
/// A left shift is the mirror image with `q@+1`, `q@+2`.
fn relocation(
    out: &mut Automaton,
    namer: &mut CopyNamer,
    report: &mut TranslationReport,
    target: &State,
    pebble_direction: Direction,
) -> State {
    let (seek_tag, return_tag, walk, drag, seek_end, return_end, resume_end) =
        match pebble_direction {
            Direction::Right => (
                "-1",
                "-2",
                Move::LEFT,
                Move::CARRY_RIGHT,
                TapeSymbol::LeftEnd,
                TapeSymbol::RightEnd,
                TapeSymbol::LeftEnd,
            ),
            Direction::Left => (
                "+1",
                "+2",
                Move::RIGHT,
                Move::CARRY_LEFT,
                TapeSymbol::RightEnd,
                TapeSymbol::LeftEnd,
                TapeSymbol::RightEnd,
            ),
            Direction::Stay => unreachable!("segments are crossed left or right"),
        };
    let (seek, seek_new) = namer.copy(target, seek_tag);
    let (ret, ret_new) = namer.copy(target, return_tag);
    let letters: Vec<_> = out
        .alphabet
        .letters()
        .cloned()
        .map(TapeSymbol::Plain)
        .collect();
    if seek_new {
        bump(&mut report.rule_audit, &format!("copies@{seek_tag}"));
        for a in &letters {
            out.add_transition(seek.clone(), a.clone(), false, seek.clone(), walk);
            out.add_transition(seek.clone(), a.clone(), true, ret.clone(), drag);
        }
        out.add_transition(seek.clone(), seek_end, true, ret.clone(), drag);
    }
    if ret_new {
        bump(&mut report.rule_audit, &format!("copies@{return_tag}"));
        for a in &letters {
            out.add_transition(ret.clone(), a.clone(), true, ret.clone(), walk);
            out.add_transition(ret.clone(), a.clone(), false, ret.clone(), walk);
        }
        out.add_transition(ret.clone(), return_end, true, ret.clone(), walk);
        out.add_transition(ret.clone(), resume_end, false, target.clone(), Move::STAY);
    }
    seek
}
