// Verifies the generated theorem corpus and prints one record per script.
//
// ```bash
// cargo run -p paraneg --example verify_corpus
// ```
use std::time::Instant;

use paraneg::calculus::corpus;

fn run() -> Result<(), Box<dyn std::error::Error>> {
    let start = Instant::now();
    let (report, registry) = corpus::verify_builtin();
    for r in &report.records {
        let system = match r.n {
            Some(n) => format!("{}(n={n})", r.system),
            None => r.system.clone(),
        };
        let status = match &r.failure {
            None => "accepted".to_string(),
            Some(f) => format!("rejected ({f})"),
        };
        println!("{:<14} {:<12} {:>4} lines  {status}", r.name, system, r.lines);
    }
    let accepted = report.records.iter().filter(|r| r.accepted()).count();
    println!(
        "{accepted}/{} accepted, {} theorems registered, {:.2?}",
        report.records.len(),
        registry.len(),
        start.elapsed()
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
