//! Runs every program in `examples/` so they cannot rot.

#[path = "../examples/canonical.rs"]
mod canonical;
#[path = "../examples/codelengths.rs"]
mod codelengths;
#[path = "../examples/ingest.rs"]
mod ingest;
#[path = "../examples/injection.rs"]
mod injection;
#[path = "../examples/matching.rs"]
mod matching;
#[path = "../examples/score.rs"]
mod score;
#[path = "../examples/search.rs"]
mod search;
#[path = "../examples/sweep.rs"]
mod sweep;

#[test]
fn canonical_runs() {
    canonical::main().unwrap();
}

#[test]
fn codelengths_runs() {
    codelengths::main().unwrap();
}

#[test]
fn ingest_runs() {
    ingest::main().unwrap();
}

#[test]
fn injection_runs() {
    injection::main().unwrap();
}

#[test]
fn matching_runs() {
    matching::main().unwrap();
}

#[test]
fn score_runs() {
    score::main().unwrap();
}

#[test]
fn search_runs() {
    search::main().unwrap();
}

#[test]
fn sweep_runs() {
    sweep::main().unwrap();
}
