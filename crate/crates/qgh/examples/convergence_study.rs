//! The full convergence table: Følner ratios, multiplier gaps, the
//! approximation bracket [delta_lower, delta_upper], and Monge–Kantorovich
//! bounds between the counit and χ_Λ — per truncation level Λ.
//!
//! delta_upper is the Cauchy–Schwarz certificate B_Λ; it decays like
//! √(2/Λ) on the Z dual, witnessing convergence of the truncations.

use qgh::fusion::{su2_like, zd_dual, Su2Kind};
use qgh::length::word_length;
use qgh::metrics::{convergence_study, StudyConfig};

fn print_table(rows: &[qgh::metrics::ConvergenceRow]) {
    println!("     Λ   folner    φ-gap   δ_lower   δ_upper  mk_lower  mk_upper");
    for r in rows {
        println!(
            "  {:4} {:8.5} {:8.5} {:9.5} {:9.5} {:9.5} {:9.5}",
            r.lambda, r.folner_ratio, r.phi_min_gap, r.delta_lower, r.delta_upper,
            r.mk_lower, r.mk_upper
        );
    }
}

fn main() {
    let z = zd_dual(1, 180).unwrap();
    let gens = vec![z.label_by_name("1").unwrap(), z.label_by_name("-1").unwrap()];
    let ell = word_length(&z, &gens).unwrap();
    let cfg = StudyConfig {
        k: 1,
        lambdas: vec![5.0, 10.0, 20.0, 40.0, 80.0],
        samples: 8,
        iterations: 2,
        seed: 7,
    };
    let rep = convergence_study(&z, &ell, &gens, &cfg).unwrap();
    println!("Z dual, k = 1:");
    print_table(&rep.rows);
    for r in &rep.rows {
        println!("  Λ = {:3}: B_Λ·√Λ = {:.4}  (→ √2 ≈ 1.4142)", r.lambda, r.delta_upper * r.lambda.sqrt());
    }

    // SU(2) needs k > s = 2 for a summable certificate tail.
    let su2 = su2_like(Su2Kind::Su2, 70).unwrap();
    let es = word_length(&su2, &[1]).unwrap();
    let cfg2 = StudyConfig {
        k: 3,
        lambdas: vec![4.0, 8.0, 16.0, 32.0],
        samples: 4,
        iterations: 1,
        seed: 7,
    };
    let rep2 = convergence_study(&su2, &es, &[1], &cfg2).unwrap();
    println!("\nSU(2), k = 3:");
    print_table(&rep2.rows);
}
