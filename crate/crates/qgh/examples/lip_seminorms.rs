//! Iterated-commutator Lip-seminorms L^k(f) = ‖[D, …, [D, π(f)]]‖ for the
//! diagonal Dirac, their window behavior, and the truncated variant.

use num_complex::Complex64;
use qgh::dirac::{
    banded_upper_bound, lip_seminorm, truncated_kernel_dimension, truncated_seminorm,
};
use qgh::element::Element;
use qgh::fusion::{su2_like, zd_dual, Su2Kind};
use qgh::length::word_length;

fn main() {
    let su2 = su2_like(Su2Kind::Su2, 64).unwrap();
    let ell = word_length(&su2, &[1]).unwrap();
    let chi1 = Element::delta(1);

    println!("SU(2), f = χ₁, k = 1: window value vs banded upper bound");
    for n in [4.0, 8.0, 16.0, 30.0] {
        let v = lip_seminorm(&su2, &ell, &chi1, 1, n).unwrap();
        let cap = banded_upper_bound(&su2, &ell, &chi1, 1, n).unwrap();
        println!(
            "  N = {n:4}: L¹ ≥ {:.8}  (≤ {:.8}), converged = {}",
            v.value, cap, v.converged
        );
    }

    let z = zd_dual(1, 30).unwrap();
    let gens = [z.label_by_name("1").unwrap(), z.label_by_name("-1").unwrap()];
    let ez = word_length(&z, &gens).unwrap();
    let f = Element::from_pairs([
        (gens[0], Complex64::new(1.0, 0.0)),
        (gens[1], Complex64::new(1.0, 0.0)),
    ]);
    println!("\nZ dual, f = δ₁ + δ₋₁:");
    for k in 1..=3u32 {
        let v = lip_seminorm(&z, &ez, &f, k, 10.0).unwrap();
        let t = truncated_seminorm(&z, &ez, &f, k, 5.0).unwrap();
        println!("  k = {k}: L^k = {:.6}, truncated at Λ = 5: {:.6}", v.value, t.value);
    }

    // The kernel of the truncated seminorm is exactly the scalars.
    for lam in [6.0, 9.0, 12.0] {
        let d_su2 = truncated_kernel_dimension(&su2, &ell, 1, lam).unwrap();
        let d_z = truncated_kernel_dimension(&z, &ez, 1, lam).unwrap();
        println!("kernel dim at Λ = {lam}: SU(2) → {d_su2}, Z dual → {d_z}");
    }
}
