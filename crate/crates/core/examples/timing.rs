use ramify::report::{build_report, builtin_examples, stable_json, ReportOptions};
use std::time::Instant;

fn main() {
    for ex in builtin_examples() {
        let mut opts = ReportOptions::default();
        opts.subextensions = ex.subextensions.clone();
        let t0 = Instant::now();
        let r32 = match build_report(&ex.spec, &opts) {
            Ok(r) => r,
            Err(e) => {
                println!("{}: FAILED at precision 32: {e}", ex.name);
                continue;
            }
        };
        let d32 = t0.elapsed();
        let mut opts64 = opts.clone();
        opts64.precision = 64;
        let t1 = Instant::now();
        let r64 = match build_report(&ex.spec, &opts64) {
            Ok(r) => r,
            Err(e) => {
                println!("{}: FAILED at precision 64: {e}", ex.name);
                continue;
            }
        };
        let d64 = t1.elapsed();
        let stable = stable_json(&r32) == stable_json(&r64);
        let lower = r32
            .pm
            .as_ref()
            .map(|p| format!("{}", p.lower_bound))
            .unwrap_or_else(|| "-".to_string());
        println!(
            "{:10} u={:5} lower={:5} stable={} t32={:?} t64={:?}",
            ex.name,
            format!("{}", r32.breaks.u_max),
            lower,
            stable,
            d32,
            d64
        );
    }
}
