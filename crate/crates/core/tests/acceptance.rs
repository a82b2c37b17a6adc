//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use pebblefa::corpus::{fixture_corpus, RandomCorpus};
use pebblefa::encoding::{encode, encoded_len, format_tokens};
use pebblefa::simulation::{words_up_to, Simulator};
use pebblefa::translations::{
    classical_to_pebble, classical_to_pebble_with, complement_pebble_dfa, lift_complement,
    lift_determinization, pebble_to_classical, pebble_to_classical_with, ClassicalRule, PebbleRule,
    TwoWayTransformer,
};
use pebblefa::witnesses::{
    pump_check, unary_restriction, unary_word, witness_membership, witness_pebble_dfa, WitnessSpec,
};
use pebblefa::{
    accepts, bounded_equiv, is_deterministic, parse_automaton, serialize_automaton,
    validate_automaton, Alphabet, Automaton, Kind, Move, Symbol, TapeSymbol, ViolationKind,
    WordTransform,
};

type Outcome = Result<String, String>;
/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("encoding fidelity", 1, encoding_fidelity),
        ("witness family", 5, witness_family),
        ("pebble to classical", 120, pebble_to_classical_corpus),
        ("classical to pebble round trip", 120, round_trip_corpus),
        ("mutation sensitivity", 120, mutation_sensitivity),
        ("determinization lift", 120, determinization_lift),
        ("complement lifts", 120, complement_lifts),
        ("pumping", 60, pumping),
        ("infrastructure", 60, infrastructure),
    ];
    let mut failures = 0;
    for (i, (name, seconds, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| Err(format!("panicked: {}", panic_message(e.as_ref()))));
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(seconds);
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({elapsed:.2?}) {detail}", i + 1),
            Err(reason) => {
                failures += 1;
                println!("criterion {} {name}: FAIL ({elapsed:.2?}) {reason}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", 9 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn panic_message(e: &(dyn std::any::Any + Send)) -> String {
    e.downcast_ref::<String>()
        .cloned()
        .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_default()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn word(tokens: &str) -> Vec<Symbol> {
    tokens
        .split_whitespace()
        .map(|t| Symbol::new(t).unwrap())
        .collect()
}

/// Fixture machines plus 100 seeded random pebble machines (every third
/// one deterministic).
fn translation_corpus() -> Vec<(String, Automaton)> {
    let mut corpus = fixture_corpus();
    let mut random = RandomCorpus::new(2024);
    for i in 0..100 {
        corpus.push((format!("random-{i}"), random.pebble(4, 2, i % 3 == 0)));
    }
    corpus
}

/// Word length for exhaustive sweeps: longer for one-letter alphabets.
fn sweep_len(a: &Automaton, binary: usize, unary: usize) -> usize {
    if a.alphabet.word_symbols().len() == 1 {
        unary
    } else {
        binary
    }
}

fn encoding_fidelity() -> Outcome {
    let abc = format_tokens(encode(&word("a b c")).tokens());
    ensure(
        abc == "a b c < > a* b c < > a b* c < > a b c* < > a b c",
        || format!("abc encodes to {abc}"),
    )?;
    let empty = format_tokens(encode(&[]).tokens());
    ensure(empty == "< >", || format!("empty word encodes to {empty}"))?;
    for k in 0..=10usize {
        let w: Vec<Symbol> = (0..k).map(|_| Symbol::new("a").unwrap()).collect();
        let len = encode(&w).len();
        ensure(len == k * k + 4 * k + 2 && encoded_len(k) == len, || {
            format!("k={k}: {len} tokens")
        })?;
    }
    Ok("abc example, empty word, k=0..10".into())
}

fn witness_family() -> Outcome {
    let mut counts = Vec::new();
    for (m, expected_states, product) in [(1, 4, 2), (2, 7, 6), (3, 12, 30)] {
        let spec = WitnessSpec::new(m);
        ensure(
            spec.product == product && spec.target_states == expected_states,
            || format!("m={m}: {spec:?}"),
        )?;
        let w = witness_pebble_dfa(m);
        ensure(w.state_count() <= expected_states, || {
            format!("m={m}: {} states", w.state_count())
        })?;
        ensure(
            is_deterministic(&w) && validate_automaton(&w).is_empty(),
            || format!("m={m}: not a valid 2DFA"),
        )?;
        let sim = Simulator::new(&w);
        for len in 0..=(product as usize + 5) {
            let got = sim.accepts(&unary_word(len)).map_err(|e| e.to_string())?;
            ensure(got == (len < product as usize), || {
                format!("m={m}, length {len}: accepts = {got}")
            })?;
            ensure(got == witness_membership(len as u64, m), || {
                format!("membership disagrees at {len}")
            })?;
        }
        counts.push(w.state_count());
    }
    Ok(format!("states {counts:?}"))
}

fn pebble_to_classical_corpus() -> Outcome {
    let corpus = translation_corpus();
    for (name, m) in &corpus {
        let (c, report) = pebble_to_classical(m).map_err(|e| format!("{name}: {e}"))?;
        ensure(
            c.state_count() <= 3 * m.state_count() && report.bound_satisfied,
            || {
                format!(
                    "{name}: {} states from {}",
                    c.state_count(),
                    m.state_count()
                )
            },
        )?;
        ensure(!is_deterministic(m) || is_deterministic(&c), || {
            format!("{name}: determinism lost")
        })?;
        let len = sweep_len(m, 8, 10);
        let cex =
            bounded_equiv(m, &c, len, WordTransform::Encode).map_err(|e| format!("{name}: {e}"))?;
        ensure(cex.is_none(), || format!("{name}: counterexample {cex:?}"))?;
    }
    Ok(format!("{} machines", corpus.len()))
}

fn round_trip_corpus() -> Outcome {
    let corpus = translation_corpus();
    for (name, m) in &corpus {
        let (n, _) = pebble_to_classical(m).map_err(|e| format!("{name}: {e}"))?;
        let (p, report) = classical_to_pebble(&n).map_err(|e| format!("{name}: {e}"))?;
        ensure(
            p.state_count() <= 5 * n.state_count() && report.bound_satisfied,
            || {
                format!(
                    "{name}: {} states from {}",
                    p.state_count(),
                    n.state_count()
                )
            },
        )?;
        ensure(p.state_count() <= 15 * m.state_count(), || {
            format!("{name}: round trip has {} states", p.state_count())
        })?;
        ensure(!is_deterministic(&n) || is_deterministic(&p), || {
            format!("{name}: determinism lost")
        })?;
        ensure(!is_deterministic(m) || is_deterministic(&p), || {
            format!("{name}: round trip not deterministic")
        })?;
        let cex =
            bounded_equiv(m, &p, 8, WordTransform::Identity).map_err(|e| format!("{name}: {e}"))?;
        ensure(cex.is_none(), || format!("{name}: counterexample {cex:?}"))?;
    }
    Ok(format!("{} machines", corpus.len()))
}

fn mutation_sensitivity() -> Outcome {
    let corpus = fixture_corpus();
    let mut caught = 0;
    for rule in PebbleRule::ALL {
        let killer = corpus.iter().find(|(_, m)| {
            let (c, _) = pebble_to_classical_with(m, &[rule]).unwrap();
            bounded_equiv(m, &c, sweep_len(m, 6, 12), WordTransform::Encode)
                .unwrap()
                .is_some()
        });
        ensure(killer.is_some(), || {
            format!(
                "pebble-to-classical mutant without `{}` survived",
                rule.name()
            )
        })?;
        caught += 1;
    }
    for rule in ClassicalRule::ALL {
        let killer = corpus.iter().find(|(_, m)| {
            let (n, _) = pebble_to_classical(m).unwrap();
            let (p, _) = classical_to_pebble_with(&n, &[rule]).unwrap();
            bounded_equiv(m, &p, sweep_len(m, 6, 12), WordTransform::Identity)
                .unwrap()
                .is_some()
        });
        ensure(killer.is_some(), || {
            format!(
                "classical-to-pebble mutant without `{}` survived",
                rule.name()
            )
        })?;
        caught += 1;
    }
    Ok(format!(
        "{caught} of {} mutants caught",
        PebbleRule::ALL.len() + ClassicalRule::ALL.len()
    ))
}

fn determinization_lift() -> Outcome {
    let f = TwoWayTransformer::baseline_determinizer();
    let mut largest = 0;
    for (name, m) in fixture_corpus() {
        let (d, report) = lift_determinization(&m, &f).map_err(|e| format!("{name}: {e}"))?;
        ensure(is_deterministic(&d), || {
            format!("{name}: result not deterministic")
        })?;
        let expected = 5u64.saturating_mul(f.declared_bound(3 * m.state_count() as u64));
        ensure(report.bound == expected, || {
            format!("{name}: bound {} != {expected}", report.bound)
        })?;
        let cex = bounded_equiv(&m, &d, sweep_len(&m, 6, 12), WordTransform::Identity)
            .map_err(|e| format!("{name}: {e}"))?;
        ensure(cex.is_none(), || format!("{name}: counterexample {cex:?}"))?;
        largest = largest.max(d.state_count());
    }
    Ok(format!("largest result {largest} states"))
}

fn exactly_one_accepts(name: &str, m: &Automaton, c: &Automaton) -> Result<usize, String> {
    let (sm, sc) = (Simulator::new(m), Simulator::new(c));
    let mut checked = 0;
    for w in words_up_to(&m.alphabet.word_symbols(), sweep_len(m, 6, 12)) {
        let (a, b) = (sm.accepts(&w).unwrap(), sc.accepts(&w).unwrap());
        ensure(a != b, || format!("{name}: both or neither accept {w:?}"))?;
        checked += 1;
    }
    Ok(checked)
}

fn complement_lifts() -> Outcome {
    let comp = TwoWayTransformer::baseline_complementer();
    let comp_dfa = TwoWayTransformer::baseline_dfa_complementer();
    let mut words = 0;
    let mut deterministic = 0;
    for (name, m) in fixture_corpus() {
        let (c, _) = lift_complement(&m, &comp).map_err(|e| format!("{name}: {e}"))?;
        words += exactly_one_accepts(&name, &m, &c)?;
        if is_deterministic(&m) {
            let (c, report) =
                complement_pebble_dfa(&m, &comp_dfa).map_err(|e| format!("{name}: {e}"))?;
            ensure(is_deterministic(&c), || {
                format!("{name}: complement not deterministic")
            })?;
            ensure(report.bound == 60 * m.state_count() as u64, || {
                format!("{name}: bound {}", report.bound)
            })?;
            ensure(!report.bound_guaranteed, || {
                format!("{name}: 60m reported as guaranteed")
            })?;
            words += exactly_one_accepts(&name, &m, &c)?;
            deterministic += 1;
        }
    }
    Ok(format!(
        "{words} word checks, {deterministic} deterministic complements"
    ))
}

fn pumping() -> Outcome {
    let mut random = RandomCorpus::new(77);
    for i in 0..200 {
        let a = random.classical(3, 1, false);
        let verdict = pump_check(&a, 4).map_err(|e| format!("random {i}: {e}"))?;
        ensure(verdict, || {
            format!("random {i}: pumping failed for {}", serialize_automaton(&a))
        })?;
    }
    let mut sizes = Vec::new();
    for m in 1..=3 {
        let (c, _) = pebble_to_classical(&witness_pebble_dfa(m)).map_err(|e| e.to_string())?;
        let u = unary_restriction(&c).map_err(|e| e.to_string())?;
        let verdict = pump_check(&u, u.state_count()).map_err(|e| format!("witness {m}: {e}"))?;
        ensure(verdict, || format!("witness {m}: pumping failed"))?;
        sizes.push(u.state_count());
    }
    Ok(format!(
        "200 random machines, witness restrictions with {sizes:?} states"
    ))
}

fn infrastructure() -> Outcome {
    let mut machines = fixture_corpus();
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut files = 0;
    for entry in std::fs::read_dir(&dir).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let a = parse_automaton(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        ensure(serialize_automaton(&a) == text, || {
            format!("{} is not in canonical form", path.display())
        })?;
        machines.push((path.display().to_string(), a));
        files += 1;
    }
    let translated: Vec<_> = machines
        .iter()
        .map(|(n, m)| {
            (
                format!("{n} (classical)"),
                pebble_to_classical(m).unwrap().0,
            )
        })
        .collect();
    machines.extend(translated);
    for (name, a) in &machines {
        let back = parse_automaton(&serialize_automaton(a)).map_err(|e| format!("{name}: {e}"))?;
        ensure(&back == a, || {
            format!("{name}: round trip changed the machine")
        })?;
    }

    let mut bad = Automaton::new(Kind::PebbleNfa2, Alphabet::from_tokens(["a"]).unwrap(), "q");
    bad.add_transition("q", TapeSymbol::RightEnd, false, "q", Move::RIGHT);
    bad.add_transition("q", TapeSymbol::LeftEnd, false, "q", Move::LEFT);
    bad.add_transition("q", TapeSymbol::plain("a"), false, "q", Move::CARRY_RIGHT);
    let kinds: Vec<ViolationKind> = validate_automaton(&bad)
        .into_iter()
        .map(|v| v.kind)
        .collect();
    for expected in [
        ViolationKind::RightMoveOnRightEnd,
        ViolationKind::LeftMoveOnLeftEnd,
        ViolationKind::CarryWithoutPebble,
    ] {
        ensure(kinds.contains(&expected), || {
            format!("validation missed {expected:?}: {kinds:?}")
        })?;
    }

    let mut runs = 0;
    for (name, a) in &machines {
        let sim = Simulator::new(a);
        for w in words_up_to(&a.alphabet.word_symbols(), sweep_len(a, 5, 10)) {
            let k = w.len();
            let ex = sim.explore(&w).map_err(|e| format!("{name}: {e}"))?;
            let budget = a.state_count() * (k + 2) * (k + 2);
            ensure(ex.visited <= budget, || {
                format!("{name}: {} configurations on length {k}", ex.visited)
            })?;
            ensure(ex.accepted == accepts(a, &w).unwrap(), || {
                format!("{name}: explore and accepts disagree")
            })?;
            runs += 1;
        }
    }
    Ok(format!(
        "{} machines ({files} files) round-trip, 3 violation classes, {runs} bounded runs",
        machines.len()
    ))
}
