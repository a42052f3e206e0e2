//! Fusion data files: export a builtin algebra to JSON, reload it, and
//! build a custom algebra (the symmetric group S₃ dual) from scratch.
//!
//! Schema: see docs/fusion-file.md.

use qgh::fusion::{
    algebra_to_fusion_file, finite_group_dual, load_fusion_file, validate_axioms, zd_dual,
};
use qgh::length::word_length;

fn main() {
    // Round-trip a lattice dual through the file format.
    let z = zd_dual(1, 4).unwrap();
    let file = algebra_to_fusion_file(&z);
    let json = serde_json::to_string_pretty(&file).unwrap();
    println!("Z dual radius 4 serializes to {} bytes of JSON; excerpt:", json.len());
    for line in json.lines().take(6) {
        println!("  {line}");
    }
    let reloaded = load_fusion_file(&json).unwrap();
    let window: Vec<_> = reloaded.labels().collect();
    assert!(validate_axioms(&reloaded, &window).valid());
    println!("reloaded table passes all axioms on the full window");

    // S₃ as a permutation multiplication table (labels are cycle names).
    let names: Vec<String> =
        ["e", "(12)", "(13)", "(23)", "(123)", "(132)"].map(String::from).into();
    // Row g, column h → g·h, composing left-to-right on {1,2,3}.
    let table = vec![
        vec![0, 1, 2, 3, 4, 5],
        vec![1, 0, 4, 5, 2, 3],
        vec![2, 5, 0, 4, 3, 1],
        vec![3, 4, 5, 0, 1, 2],
        vec![4, 3, 1, 2, 5, 0],
        vec![5, 2, 3, 1, 0, 4],
    ];
    let s3 = finite_group_dual(names, 0, table).unwrap();
    let gens: Vec<_> = ["(12)", "(13)", "(23)"]
        .iter()
        .map(|n| s3.label_by_name(n).unwrap())
        .collect();
    let ell = word_length(&s3, &gens).unwrap();
    println!("\nS₃ dual word lengths over the transpositions:");
    for l in s3.labels() {
        println!("  ℓ({}) = {}", s3.name(l), ell.get(l));
    }

    // Non-associative tables are rejected with the offending triple.
    let bad_names: Vec<String> = ["e", "a", "b"].map(String::from).into();
    let bad = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 1]];
    match finite_group_dual(bad_names, 0, bad) {
        Err(e) => println!("\ncorrupt table rejected: {e}"),
        Ok(_) => unreachable!(),
    }
}
