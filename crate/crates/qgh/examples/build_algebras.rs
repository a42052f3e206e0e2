//! Build every builtin fusion-algebra family and validate the axioms on the
//! full enumerated window.
//!
//! ```bash
//! cargo run --release --example build_algebras
//! ```

use qgh::fusion::{build_product, su2_like, validate_axioms, zd_dual, Su2Kind};

fn main() {
    let algebras = vec![
        ("Z dual (radius 10)", zd_dual(1, 10).unwrap()),
        ("Z² dual (radius 8)", zd_dual(2, 8).unwrap()),
        ("SU(2) levels ≤ 40", su2_like(Su2Kind::Su2, 40).unwrap()),
        ("SO(3) levels ≤ 40", su2_like(Su2Kind::So3, 40).unwrap()),
        ("O₃⁺ levels ≤ 20", su2_like(Su2Kind::OnPlus(3), 20).unwrap()),
        (
            "Z dual × Z dual (radius 6)",
            build_product(&zd_dual(1, 6).unwrap(), &zd_dual(1, 6).unwrap()),
        ),
    ];

    for (name, alg) in &algebras {
        let window: Vec<_> = alg.labels().collect();
        let report = validate_axioms(alg, &window);
        println!(
            "{name}: {} labels, {} pairs checked, max dim defect {:.2e}, {}",
            alg.len(),
            report.checked_pairs,
            report.max_dim_defect,
            if report.valid() { "axioms ok" } else { "VIOLATIONS" },
        );
    }

    // Incomplete products are flagged, never silently truncated.
    let su2 = su2_like(Su2Kind::Su2, 10).unwrap();
    let f = su2.fusion(8, 7);
    println!(
        "\nSU(2) cap 10: 8 ⊗ 7 enumerates {} components, complete = {}",
        f.components.len(),
        f.complete
    );

    // O_N⁺ dimensions explode along the Chebyshev recursion while the fusion
    // rules stay those of SU(2).
    let on = su2_like(Su2Kind::OnPlus(4), 20).unwrap();
    println!("O₄⁺ dimensions: d(1) = {}, d(5) = {}, d(20) = {:.3e}",
        on.dim(1), on.dim(5), on.dim(20));
}
