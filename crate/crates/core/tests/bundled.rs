use skein_core::graph::EnumerationBounds;
use skein_core::miner::{default_patterns, group_dotted, mine, write_patterns, BUNDLED, DEFAULT_BOUNDS};
use skein_core::selfcheck::corpus;

#[test]
fn bundled_file_matches_fresh_mining() {
    let set = mine(&DEFAULT_BOUNDS);
    assert_eq!(write_patterns(&group_dotted(&set), &DEFAULT_BOUNDS), BUNDLED);
}

#[test]
fn bundled_patterns_parse() {
    let patterns = default_patterns();
    assert_eq!(patterns.len(), 7);
    assert!(patterns.iter().all(|p| p.graph.is_connected()));
}

#[test]
fn corpus_size_matches_brute_force_count() {
    // independent count: all edge multisets on labelled vertices, deduplicated
    // by minimum over vertex permutations
    assert_eq!(corpus(&EnumerationBounds::new(4, 7)).len(), 570);
}
