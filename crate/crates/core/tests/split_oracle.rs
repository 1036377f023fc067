#[path = "support/oracle.rs"]
mod oracle;

#[test]
fn best_split_matches_brute_force_on_200_datasets() {
    let found = oracle::check_best_split(200, 4).unwrap();
    // The generator should mostly produce splittable data.
    assert!(found > 150, "only {found} datasets had a split");
}

#[test]
fn grown_trees_match_reference_grower() {
    oracle::check_grow(200, 9).unwrap();
}
