use skein_core::miner::default_patterns;
use skein_core::selfcheck::{run_all, Config};

#[test]
fn acceptance() {
    let summary = run_all(&Config::new(default_patterns()));
    for r in &summary.results {
        println!("{r}");
    }
    let c = &summary.counts;
    println!(
        "graphs enumerated: {}, accepts: {}, rejects: {}, certificates verified: {}",
        c.graphs, c.accepts, c.rejects, c.verified
    );
    let failed: Vec<usize> = summary.results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
