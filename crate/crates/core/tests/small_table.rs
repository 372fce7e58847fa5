mod common;

use codebound::lookup_dmax;
use common::{code_exists, small_table};

#[test]
fn exhaustive_table_matches_known_values() {
    let t = std::time::Instant::now();
    let table = small_table();
    eprintln!("built in {:?}", t.elapsed());
    // Hamming, extended Hamming, simplex and a non-Griesmer case
    assert_eq!(lookup_dmax(table, 7, 4), Some(3));
    assert_eq!(lookup_dmax(table, 8, 4), Some(4));
    assert_eq!(lookup_dmax(table, 7, 3), Some(4));
    assert_eq!(lookup_dmax(table, 8, 5), Some(2));
    assert_eq!(lookup_dmax(table, 14, 6), Some(5));
    for n in 1..=14 {
        assert_eq!(lookup_dmax(table, n, 1), Some(n));
    }
}

#[test]
fn existence_search_is_exact_on_tiny_cases() {
    assert!(code_exists(3, 1, 3));
    assert!(!code_exists(3, 2, 3));
    assert!(code_exists(5, 2, 3));
    assert!(!code_exists(6, 3, 4));
}
