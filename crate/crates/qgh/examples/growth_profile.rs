//! Shell sums σ(n) = Σ_{ℓ(α) ∈ (n−1, n]} d(α)² and fitted growth orders.
//!
//! SU(2) grows like n² (σ(n) = (n+1)² on the nose), the Z dual is flat, and
//! Z² grows linearly — each matching its classical dimension count.

use qgh::fusion::{su2_like, zd_dual, Su2Kind};
use qgh::length::{fit_growth_order, shell_profile, word_length};

fn main() {
    let su2 = su2_like(Su2Kind::Su2, 62).unwrap();
    let ell = word_length(&su2, &[1]).unwrap();
    let table = shell_profile(&su2, &ell, 60).unwrap();
    println!("SU(2) shells:  n    σ(n)    Σ_{{ℓ≤n}} d²");
    for &(n, s, c) in table.rows.iter().take(6) {
        println!("             {n:3}  {s:6.0}  {c:8.0}");
    }
    let fit = fit_growth_order(&table, 10, 60).unwrap();
    println!(
        "fit on [10, 60]: s_hat = {:.4}, envelope c2 = {:.3} ≤ σ(n)/n^s ≤ c1 = {:.3}, strong = {}",
        fit.s_hat, fit.c2, fit.c1, fit.strong
    );

    let z2 = zd_dual(2, 40).unwrap();
    let gens: Vec<_> = ["(1,0)", "(-1,0)", "(0,1)", "(0,-1)"]
        .iter()
        .map(|n| z2.label_by_name(n).unwrap())
        .collect();
    let ell2 = word_length(&z2, &gens).unwrap();
    let t2 = shell_profile(&z2, &ell2, 40).unwrap();
    let f2 = fit_growth_order(&t2, 10, 40).unwrap();
    println!("\nZ² dual: σ(n) = 4n; fitted s_hat = {:.4}, strong = {}", f2.s_hat, f2.strong);

    let z = zd_dual(1, 62).unwrap();
    let gz = [z.label_by_name("1").unwrap(), z.label_by_name("-1").unwrap()];
    let ez = word_length(&z, &gz).unwrap();
    let tz = shell_profile(&z, &ez, 60).unwrap();
    let fz = fit_growth_order(&tz, 10, 60).unwrap();
    println!("Z dual: σ ≡ 2; fitted s_hat = {:+.4}, strong = {}", fz.s_hat, fz.strong);
}
