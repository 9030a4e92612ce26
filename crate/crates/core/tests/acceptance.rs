//! Runs every reproduction criterion and prints one PASS/FAIL line each.

use ribbon_core::reproduce::run_all;
use ribbon_core::EnumOptions;

fn main() {
    let verbose = std::env::args().any(|a| a == "--nocapture" || a == "--verbose");
    let results = run_all(&EnumOptions::default());
    let mut failed = 0;
    for r in &results {
        let tag = if r.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag} ({:.2?}) {}", r.id, r.elapsed, r.title);
        if !r.pass || verbose {
            for line in &r.details {
                println!("    {line}");
            }
        }
        failed += usize::from(!r.pass);
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
