//! Acceptance battery. Prints one PASS/FAIL line per criterion and fails if
//! any criterion fails. Set XCORR_BIG=1 to include GF(3^15) and GF(2^16).

use std::time::Instant;

use xcorr::battery::{run_criterion, BatteryOptions, CRITERIA};

#[test]
fn acceptance() {
    let big = std::env::var("XCORR_BIG").is_ok_and(|v| v == "1");
    let opts = BatteryOptions { big, ..Default::default() };
    let mut failed = Vec::new();
    for id in 1..=CRITERIA {
        let t = Instant::now();
        match run_criterion(id, &opts) {
            Ok(r) => {
                println!("{}  [{:.1}s]", r.line(), t.elapsed().as_secs_f64());
                for d in &r.details {
                    println!("        {d}");
                }
                if !r.passed() {
                    failed.push(id);
                }
            }
            Err(e) => {
                println!("[FAIL] criterion {id:>2}: error: {e}");
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
