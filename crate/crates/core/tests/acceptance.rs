//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use anonlevel::classifier::{classify, self_check, sweep, AnalysisParams, Classification, Level};
use anonlevel::corpus::{self, CorpusEntry};
use anonlevel::dsl::{parse, serialize};
use anonlevel::model::{
    apply_implications, Accountability, Conditionality, DerivedProperties, RecognitionSource, ServiceModel,
};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

type Outcome = Result<String, String>;

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn load(entry: &CorpusEntry) -> ServiceModel {
    parse(entry.text).into_result().expect("corpus parses")
}

fn documented(entry: &CorpusEntry) -> (ServiceModel, AnalysisParams, Classification) {
    let model = load(entry);
    let params = AnalysisParams::new(&model, entry.observee, entry.trusted).expect("documented parameters");
    let c = classify(&model, &params).expect("corpus classifies");
    (model, params, c)
}

/// Every classification reachable by sweeping the trust of each corpus model.
fn corpus_sweeps() -> Vec<(ServiceModel, AnalysisParams, Classification)> {
    let mut all = Vec::new();
    for entry in corpus::ENTRIES {
        let model = load(entry);
        for item in sweep(&model, entry.observee).expect("corpus sweeps") {
            let c = item.outcome.expect("corpus sweep entries classify");
            all.push((model.clone(), item.params, c));
        }
    }
    all
}

fn anonlevel(args: &[&str]) -> Vec<u8> {
    let output = Command::new(env!("CARGO_BIN_EXE_anonlevel")).args(args).output().unwrap();
    output.stdout
}

fn fuzz_pairs(count: usize) -> Vec<(ServiceModel, ServiceModel, AnalysisParams)> {
    let mut runner = TestRunner::deterministic();
    let strategy = (common::blueprint(), common::raw_fact());
    (0..count)
        .map(|_| {
            let (bp, fact) = strategy.new_tree(&mut runner).unwrap().current();
            let model = bp.model();
            let params = bp.params(&model);
            let extended = common::add_fact(model.clone(), &fact);
            (model, extended, params)
        })
        .collect()
}

const TABLE3: [(&str, &str, &str); 8] = [
    ("VA", "none", "void anonymity: usual identification / public pseudonym / no anonymity or semi-anonymity"),
    ("AA", "none", "apparent anonymity: latent identification / initially non-public pseudonyms / no anonymity or semi-anonymity"),
    ("RA", "linkable", "linkable revocable anonymity: latent identification / initially non-public transaction pseudonyms / conditional persistent anonymity"),
    ("RA", "unlinkable", "unlinkable revocable anonymity: latent identification / initially unlinkable pseudonyms / conditional one-time anonymity"),
    ("FA", "linkable", "linkable forfeitable anonymity: X / (initially unlinkable transaction pseudonyms) / X"),
    ("FA", "unlinkable", "unlinkable forfeitable anonymity: X / initially unlinkable pseudonyms / X"),
    ("UA", "linkable", "linkable unconditional anonymity: pen-name or anonymous identification / (initially unlinkable transaction pseudonyms) / unconditional persistent anonymity"),
    ("UA", "unlinkable", "unlinkable unconditional anonymity: no identification / initially unlinkable pseudonyms / unconditional one-time anonymity"),
];

fn table3() -> Outcome {
    let mut rows = BTreeSet::new();
    for entry in corpus::ENTRIES.iter().filter(|e| e.name != "group-signature") {
        let (_, _, c) = documented(entry);
        ensure((c.level, c.variant) == (entry.level, entry.variant), || {
            format!("{} gave {} {}", entry.name, c.level.abbr(), c.variant)
        })?;
        rows.insert((c.level, c.variant));
    }
    ensure(rows.len() == 8, || format!("corpus covers {} of 8 rows", rows.len()))?;
    for (level, variant, expected) in TABLE3 {
        let out = anonlevel(&["map", "--level", level, "--variant", variant]);
        let out = String::from_utf8(out).unwrap();
        ensure(out == format!("{expected}\n"), || format!("map {level} {variant} printed {out:?}"))?;
    }
    Ok("8 corpus rows and 8 map rows match".into())
}

fn table1() -> Outcome {
    use Conditionality::*;
    use RecognitionSource::*;
    let all = corpus_sweeps();
    for (model, params, c) in &all {
        let expected = match c.level {
            Level::Void | Level::Apparent => Unconditional,
            Level::Revocable | Level::Forfeitable => Conditional,
            Level::Unconditional => Void,
        };
        ensure(c.recognisability.conditionality == expected, || {
            format!("{} at {}: recognisability {}", model.name, c.level.abbr(), c.recognisability.conditionality)
        })?;
        let sources = &c.recognisability.sources;
        let sources_ok = match c.level {
            Level::Forfeitable => *sources == BTreeSet::from([Identifiability]),
            Level::Unconditional => sources.is_empty(),
            _ => !sources.is_empty(),
        };
        ensure(sources_ok, || format!("{} at {}: sources {sources:?}", model.name, c.level.abbr()))?;
        let bounds = self_check(model, params, c);
        ensure(!bounds.iter().any(|d| d.code == "INV-001"), || format!("{}: {bounds:?}", model.name))?;
    }
    Ok(format!("{} classifications fit their rows", all.len()))
}

fn table2() -> Outcome {
    use Accountability as A;
    use Conditionality as C;
    let allowed = |level: Level| -> Vec<(C, A)> {
        match level {
            Level::Void => vec![(C::Unconditional, A::Direct)],
            Level::Apparent => vec![(C::Unconditional, A::Direct), (C::Unconditional, A::Indirect)],
            Level::Revocable => vec![(C::Unconditional, A::Indirect), (C::Conditional, A::Indirect)],
            Level::Forfeitable => vec![
                (C::Unconditional, A::Direct),
                (C::Unconditional, A::Indirect),
                (C::Conditional, A::Direct),
                (C::Conditional, A::Indirect),
            ],
            Level::Unconditional => vec![(C::Unconditional, A::Void), (C::Void, A::Void)],
        }
    };
    let mut seen = BTreeSet::new();
    for (model, _, c) in corpus_sweeps() {
        let pair = (c.linkability.conditionality, c.accountability);
        ensure(allowed(c.level).contains(&pair), || {
            format!("{} at {}: {pair:?} not admissible", model.name, c.level.abbr())
        })?;
        seen.insert((c.level, pair));
    }
    let missing: Vec<String> = Level::ALL
        .into_iter()
        .flat_map(|l| allowed(l).into_iter().map(move |p| (l, p)))
        .filter(|x| !seen.contains(x))
        .map(|(l, p)| format!("{} {p:?}", l.abbr()))
        .collect();
    ensure(missing.is_empty(), || format!("uncovered: {}", missing.join(", ")))?;
    Ok(format!("{} admissible combinations covered", seen.len()))
}

fn upgrade_paths() -> Outcome {
    let card = load(corpus::find("credit-card-plain").unwrap());
    let level = |model: &ServiceModel, observee: &str, trusted: &[&str]| {
        let params = AnalysisParams::new(model, observee, trusted).unwrap();
        classify(model, &params).unwrap().level
    };
    ensure(level(&card, "Customer", &[]) == Level::Apparent, || "credit card not AA by default".into())?;
    ensure(level(&card, "Customer", &["IssuerBank"]) == Level::Revocable, || {
        "credit card not RA with IssuerBank trusted".into()
    })?;
    let handle = corpus::find("revocable-handle").unwrap().text;
    let without_exposure: String = handle
        .lines()
        .filter(|l| l.trim() != "observes public handle form=plain")
        .map(|l| format!("{l}\n"))
        .collect();
    ensure(without_exposure.len() < handle.len(), || "exposure line not found".into())?;
    let handle = parse(&without_exposure).into_result().map_err(|e| format!("{e:?}"))?;
    let got = level(&handle, "User", &[]);
    ensure(got == Level::Forfeitable, || format!("handle without exposure gave {}", got.abbr()))?;
    Ok("AA to RA and RA to FA reproduced".into())
}

fn trust_monotonicity() -> Outcome {
    let mut chains = 0;
    for entry in corpus::ENTRIES {
        let model = load(entry);
        let entries = sweep(&model, entry.observee).unwrap();
        ensure(entries.len() <= 1 << 6, || format!("{} has more than 6 optional participants", entry.name))?;
        for a in &entries {
            for b in &entries {
                if a.optional_trusted.iter().all(|n| b.optional_trusted.contains(n)) {
                    let (la, lb) = (a.outcome.as_ref().unwrap().level, b.outcome.as_ref().unwrap().level);
                    ensure(la <= lb, || {
                        format!("{}: {:?} {} vs {:?} {}", entry.name, a.optional_trusted, la.abbr(), b.optional_trusted, lb.abbr())
                    })?;
                    chains += 1;
                }
            }
        }
    }
    Ok(format!("{chains} inclusion pairs non-decreasing"))
}

fn fact_monotonicity() -> Outcome {
    let pairs = fuzz_pairs(200);
    for (model, extended, params) in &pairs {
        let before = classify(model, params).map_err(|e| format!("{e:?}"))?.level;
        let after = classify(extended, params).map_err(|e| format!("{e:?}"))?.level;
        ensure(after <= before, || format!("{} rose to {} after adding a fact:\n{}", before.abbr(), after.abbr(), serialize(extended)))?;
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn group_floor() -> Outcome {
    let entry = corpus::find("group-signature").unwrap();
    let (_, _, c) = documented(entry);
    ensure(c.group_anonymity && c.level == Level::Revocable, || format!("got {} group={}", c.level.abbr(), c.group_anonymity))?;
    let injected = entry.text.replacen("\n}", "\n  observes public enrolment_id form=plain\n}", 1);
    let model = parse(&injected).into_result().map_err(|e| format!("{e:?}"))?;
    let params = AnalysisParams::new(&model, entry.observee, entry.trusted).unwrap();
    let errors = match classify(&model, &params) {
        Ok(c) => return Err(format!("classified as {}", c.level.abbr())),
        Err(errors) => errors,
    };
    let codes: BTreeSet<&str> = errors.iter().map(|d| d.code.as_str()).collect();
    ensure(codes.contains("GS-002") && codes.contains("GS-003"), || format!("codes {codes:?}"))?;
    Ok(format!("injected exposure rejected with {codes:?}"))
}

fn self_consistency() -> Outcome {
    let mut all: Vec<(ServiceModel, AnalysisParams, Classification)> = corpus_sweeps();
    for (model, extended, params) in fuzz_pairs(200) {
        for m in [model, extended] {
            let c = classify(&m, &params).unwrap();
            all.push((m, params.clone(), c));
        }
    }
    for (model, _, c) in &all {
        let found = apply_implications(&DerivedProperties {
            recognisability: c.recognisability.clone(),
            linkability: c.linkability,
            accountability: c.accountability,
        });
        ensure(found.is_empty(), || format!("{}: {found:?}", model.name))?;
    }
    Ok(format!("{} classifications clean", all.len()))
}

fn round_trip_and_determinism() -> Outcome {
    let mut models: Vec<ServiceModel> = corpus::ENTRIES.iter().map(load).collect();
    models.extend(fuzz_pairs(200).into_iter().map(|(_, extended, _)| extended));
    for model in &models {
        let text = serialize(model);
        let again = parse(&text).into_result().map_err(|e| format!("{e:?}\n{text}"))?;
        ensure(&again == model, || format!("round trip changed {}", model.name))?;
    }
    let dir = env!("CARGO_MANIFEST_DIR");
    for entry in corpus::ENTRIES {
        let path = format!("{dir}/corpus/{}.anon", entry.name);
        let mut args = vec!["classify", path.as_str(), "--observee", entry.observee, "--format", "json"];
        let trust = entry.trusted.join(",");
        if !trust.is_empty() {
            args.extend(["--trust", trust.as_str()]);
        }
        let first = anonlevel(&args);
        ensure(!first.is_empty() && first == anonlevel(&args), || format!("{} output differs", entry.name))?;
    }
    Ok(format!("{} models round-trip, 9 reports byte-identical", models.len()))
}

struct Criterion {
    title: &'static str,
    budget: Option<Duration>,
    check: fn() -> Outcome,
}

fn main() {
    let seconds = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { title: "Table 3 reproduction", budget: seconds(1), check: table3 },
        Criterion { title: "Table 1 reproduction", budget: seconds(1), check: table1 },
        Criterion { title: "Table 2 reproduction", budget: seconds(1), check: table2 },
        Criterion { title: "upgrade paths", budget: None, check: upgrade_paths },
        Criterion { title: "trust monotonicity", budget: seconds(5), check: trust_monotonicity },
        Criterion { title: "fact monotonicity fuzz", budget: seconds(10), check: fact_monotonicity },
        Criterion { title: "group-scheme floor", budget: None, check: group_floor },
        Criterion { title: "engine self-consistency", budget: None, check: self_consistency },
        Criterion { title: "round trip and determinism", budget: None, check: round_trip_and_determinism },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, criterion) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(criterion.check))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let elapsed = start.elapsed();
        let outcome = match (outcome, criterion.budget) {
            (Ok(_), Some(budget)) if elapsed > budget => Err(format!("took longer than {budget:?}")),
            (outcome, _) => outcome,
        };
        let (verdict, detail) = match &outcome {
            Ok(detail) => ("PASS", detail),
            Err(detail) => {
                failed += 1;
                ("FAIL", detail)
            }
        };
        println!("criterion {} {verdict}: {} ({} ms): {detail}", i + 1, criterion.title, elapsed.as_millis());
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
