//! Rapid decay: ‖π(f)‖ ≤ C·‖f‖_{2,s} on random samples, with C computed
//! from the window sums plus a fitted-envelope tail.

use qgh::dirac::{rd_scan, tail_bound_check};
use qgh::fusion::{su2_like, zd_dual, Su2Kind};
use qgh::length::word_length;

fn main() {
    let su2 = su2_like(Su2Kind::Su2, 90).unwrap();
    let ell = word_length(&su2, &[1]).unwrap();
    let r = rd_scan(&su2, &ell, 2.0, 200, 30.0, 7).unwrap();
    println!(
        "SU(2), s = 2: worst ‖π(f)‖/‖f‖_{{2,2}} over {} samples = {:.6}",
        r.samples, r.worst_ratio
    );
    println!(
        "  C_theory = {:.6}  (window sum → π/√6 ≈ {:.6})",
        r.c_theory,
        std::f64::consts::PI / 6f64.sqrt()
    );

    let z = zd_dual(1, 60).unwrap();
    let gens = [z.label_by_name("1").unwrap(), z.label_by_name("-1").unwrap()];
    let ez = word_length(&z, &gens).unwrap();
    let rz = rd_scan(&z, &ez, 1.0, 200, 20.0, 7).unwrap();
    println!(
        "\nZ dual, s = 1: worst ratio = {:.6} ≤ C_theory = {:.6}",
        rz.worst_ratio, rz.c_theory
    );

    // High-shell tails decay like n^{s−k} for k > s.
    let t = tail_bound_check(&su2, &ell, 3, 2.0, 20, 100, 11).unwrap();
    println!(
        "\nSU(2) tail estimate, k = 3 > s = 2, shells ≥ 20: worst slack {:.4} (pass = {})",
        t.worst_slack, t.all_pass
    );
}
