//! One line per acceptance criterion, each backed by exact checks.

use eiscoc::cache::Cache;
use eiscoc::suites::{run_criterion, Config};

fn main() {
    let cfg = Config::default();
    let cache = Cache::memory();
    let results: Vec<(u32, Vec<String>)> = std::thread::scope(|s| {
        let handles: Vec<_> = (1..=9)
            .map(|k| {
                let (cfg, cache) = (&cfg, &cache);
                s.spawn(move || {
                    let out = run_criterion(k, cfg, cache);
                    assert!(!out.checks.is_empty());
                    let failed = out
                        .checks
                        .iter()
                        .filter(|c| !c.pass)
                        .map(|c| format!("{}: expected {} got {}", c.id, c.expected, c.got))
                        .collect();
                    (k, failed)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });
    for (k, failed) in &results {
        println!("criterion {k}: {}", if failed.is_empty() { "PASS" } else { "FAIL" });
        for f in failed {
            println!("    {f}");
        }
    }
    if results.iter().any(|(_, f)| !f.is_empty()) {
        std::process::exit(1);
    }
}
