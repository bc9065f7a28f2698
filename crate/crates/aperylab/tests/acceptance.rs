//! Runs every acceptance criterion and prints one line each. Exits
//! nonzero if any criterion fails, except those listed in
//! `UNATTAINABLE`, which are still run and printed as FAIL.

use std::process::ExitCode;

use aperylab::selftest::CRITERIA;
use aperylab::{Cache, RunConfig};

/// Criteria that fail for a mathematical reason, with that reason.
const UNATTAINABLE: &[(u8, &str)] = &[(
    4,
    "a_n ~ C·α^n·n^(-3/2) with C ≈ 0.22, so a_500^(1/500) sits about 2.1% below α; \
     the 1% bound on the n-th root needs n in the thousands",
)];

fn main() -> ExitCode {
    let dir = tempfile::tempdir().expect("temporary cache directory");
    let cache = Cache::open(dir.path()).expect("cache opens");
    let cfg = RunConfig::default();
    let mut unexpected = 0;
    for c in &CRITERIA {
        let r = c.run(&cfg, Some(&cache));
        let known = UNATTAINABLE.iter().find(|(id, _)| *id == r.id);
        println!(
            "criterion {:>2} {}  {}  [{:.1?} of {:?}]  {}",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.title,
            r.elapsed,
            r.budget,
            r.detail
        );
        if !r.passed {
            match known {
                Some((_, why)) => println!("              unattainable as stated: {why}"),
                None => unexpected += 1,
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed");
        ExitCode::FAILURE
    }
}
