//! The Følner multiplier φ_Λ and its state χ_Λ = ε ∘ T_φ.
//!
//! On the Z dual, φ_Λ is the classical Fejér kernel; on SU(2) it is the
//! analogous pair-counting average. Contraction and positive-definiteness
//! are replayed numerically.

use qgh::element::Element;
use qgh::fusion::{su2_like, zd_dual, Su2Kind};
use qgh::length::word_length;
use qgh::multiplier::{
    contraction_check, folner_multiplier, positive_definite_check, state_eval,
};

fn main() {
    let z = zd_dual(1, 40).unwrap();
    let gens = [z.label_by_name("1").unwrap(), z.label_by_name("-1").unwrap()];
    let ell = word_length(&z, &gens).unwrap();

    let phi = folner_multiplier(&z, &ell, 3.0).unwrap();
    println!("Z dual, Λ = 3 (Fejér kernel (2Λ+1−|k|)⁺/(2Λ+1)):");
    for k in 0..=8i64 {
        let l = z.label_by_name(&k.to_string()).unwrap();
        println!("  φ({k:2}) = {:.6}", phi.phi(l));
    }

    let f = Element::delta(gens[0]);
    println!("  χ_Λ(δ₁) = {:.6}", state_eval(&z, &phi, &f).re);

    let pd = positive_definite_check(&z, &phi, &ell.sublevel(9.0)).unwrap();
    println!("  positive-definite on |k| ≤ 9: {pd}");

    let c = contraction_check(&z, &ell, &phi, 1, 100, 10.0, 5).unwrap();
    println!(
        "  contraction on {} samples: worst L¹(T_φf) − L¹(f) = {:.3e} (pass = {})",
        c.samples, c.worst_slack, c.all_pass
    );

    let su2 = su2_like(Su2Kind::Su2, 40).unwrap();
    let es = word_length(&su2, &[1]).unwrap();
    println!("\nSU(2), φ_Λ(1) → 1 pointwise:");
    for lam in [2.0, 5.0, 10.0, 18.0] {
        let p = folner_multiplier(&su2, &es, lam).unwrap();
        println!("  Λ = {lam:4}: φ(e) = {:.12}, φ(1) = {:.6}", p.phi(0), p.phi(1));
    }
}
