//! Runs the formula corpus over generated Kripke and sheaf models.

use std::time::Instant;

use topos_lens::cli::corpus::{corpus, run_corpus, CorpusTarget};

fn main() {
    println!("{} corpus entries", corpus().len());
    for (target, n) in [(CorpusTarget::Kripke, 200), (CorpusTarget::Sheaf, 50)] {
        let start = Instant::now();
        let r = run_corpus(target, n, 0);
        println!(
            "{target}: {} checks on {n} models, {} failures, {:.2?}",
            r.theorem_checks,
            r.failures.len(),
            start.elapsed()
        );
        for c in &r.classical {
            println!("  {:<28} refuted by {:?}", c.entry, c.refuted_by);
        }
        for (name, k) in &r.non_theorems {
            println!("  {name:<28} fails somewhere in {k} models");
        }
    }
}
