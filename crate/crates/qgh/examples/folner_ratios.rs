//! Følner boundary ratios of the sublevel sets A_Λ.
//!
//! The weighted boundary shrinks relative to the bulk: exactly 4/(2Λ+1) for
//! the Z dual, and asymptotically 6/Λ for SU(2).

use qgh::fusion::{su2_like, zd_dual, Su2Kind};
use qgh::length::{folner_boundary, folner_ratio_curve, word_length};

fn main() {
    let z = zd_dual(1, 110).unwrap();
    let gens = [z.label_by_name("1").unwrap(), z.label_by_name("-1").unwrap()];
    let ell = word_length(&z, &gens).unwrap();
    println!("Z dual, S = {{±1}}:");
    for lam in [1.0, 10.0, 50.0, 100.0] {
        let r = folner_ratio_curve(&z, &ell, &gens, &[lam]).unwrap().remove(0);
        println!(
            "  Λ = {lam:5}: |∂A_Λ| = {:3}, |A_Λ| = {:4}, ratio = {:.6} (= 4/{})",
            r.boundary_weight,
            r.bulk_weight,
            r.ratio,
            2.0 * lam + 1.0
        );
    }

    let su2 = su2_like(Su2Kind::Su2, 110).unwrap();
    let ells = word_length(&su2, &[1]).unwrap();
    println!("\nSU(2), π = fundamental:");
    for lam in [10.0, 50.0, 100.0] {
        let r = folner_boundary(&su2, &ells, lam, 1).unwrap();
        println!(
            "  Λ = {lam:5}: boundary weight = {:8.0}, bulk = {:8.0}, Λ·ratio = {:.4}",
            r.boundary_weight,
            r.bulk_weight,
            lam * r.ratio
        );
    }
    println!("  (Λ·ratio → 6: boundary (Λ+1)² + (Λ+2)² over the cube-sum bulk)");
}
