//! Følner/Fejér multipliers φ_Λ, the induced states χ_Λ = ε ∘ T_φ, and the
//! contraction / positivity checks backing the convergence estimates.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dirac::lip_seminorm;
use crate::element::{random_element, Element};
use crate::error::{QghError, Result};
use crate::fusion::{FusionAlgebra, Label};
use crate::length::LengthFunction;
use crate::linalg::sym_min_eig;

const GRAM_TOL: f64 = 1e-10;
const CONTRACTION_TOL: f64 = 1e-9;

/// The multiplier φ_Λ as a dense value table over the enumerated labels.
/// Values outside the enumeration are 0 by convention.
#[derive(Clone, Debug)]
pub struct MultiplierState {
    pub lambda: f64,
    pub phi: Vec<f64>,
    /// Σ_{ξ ∈ A_Λ} d(ξ)².
    pub normalization: f64,
}

impl MultiplierState {
    pub fn phi(&self, l: Label) -> f64 {
        self.phi.get(l).copied().unwrap_or(0.0)
    }

    pub fn support(&self) -> impl Iterator<Item = Label> + '_ {
        (0..self.phi.len()).filter(|&l| self.phi[l] != 0.0)
    }

    /// Wrap an explicit value table (used for custom kernels in tests and
    /// counterexamples).
    pub fn from_phi(lambda: f64, phi: Vec<f64>) -> Self {
        MultiplierState { lambda, phi, normalization: 1.0 }
    }
}

/// φ_Λ(π) = Σ_{α,β ∈ A_Λ} N_{conj(α),β}^π d(α)d(β) / (d(π)·Σ_{ξ∈A_Λ} d(ξ)²).
pub fn folner_multiplier(
    alg: &FusionAlgebra,
    ell: &LengthFunction,
    lambda: f64,
) -> Result<MultiplierState> {
    let window = ell.sublevel(lambda);
    let normalization: f64 = window.iter().map(|&l| alg.dim(l).powi(2)).sum();
    if normalization == 0.0 {
        return Err(QghError::InvalidParameter {
            field: "lambda",
            reason: "empty window A_Λ".into(),
        });
    }
    let mut numerator = vec![0.0f64; alg.len()];
    for &a in &window {
        for &b in &window {
            let weight = alg.dim(a) * alg.dim(b);
            for (pi, n) in alg.fuse_complete(alg.conj(a), b)? {
                numerator[pi] += n as f64 * weight;
            }
        }
    }
    let phi = (0..alg.len())
        .map(|l| numerator[l] / (alg.dim(l) * normalization))
        .collect();
    Ok(MultiplierState { lambda, phi, normalization })
}

/// T_φ f: pointwise scaling of coefficients by phi.
pub fn apply_multiplier(phi: &MultiplierState, f: &Element) -> Element {
    Element::from_pairs(
        f.coeffs
            .iter()
            .map(|(&l, &c)| (l, c * phi.phi(l))),
    )
}

/// χ_Λ(f) = ε(T_φ f) = Σ_α f(α)·phi(α)·d(α).
pub fn state_eval(alg: &FusionAlgebra, phi: &MultiplierState, f: &Element) -> Complex64 {
    f.coeffs
        .iter()
        .map(|(&l, &c)| c * phi.phi(l) * alg.dim(l))
        .sum()
}

/// The counit ε(f) = Σ_α f(α)·d(α).
pub fn counit(alg: &FusionAlgebra, f: &Element) -> Complex64 {
    f.coeffs.iter().map(|(&l, &c)| c * alg.dim(l)).sum()
}

#[derive(Clone, Copy, Debug)]
pub struct ContractionReport {
    /// max over samples of L^k(T_φ f) − L^k(f); ≤ 0 when φ contracts.
    pub worst_slack: f64,
    pub all_pass: bool,
    pub samples: usize,
}

/// Replay L^k(T_φ f) ≤ L^k(f) on matched windows for random self-adjoint f
/// supported on {ℓ ≤ Λ_window}. Violations are findings, not errors.
pub fn contraction_check(
    alg: &FusionAlgebra,
    ell: &LengthFunction,
    phi: &MultiplierState,
    k: u32,
    samples: usize,
    lambda_window: f64,
    seed: u64,
) -> Result<ContractionReport> {
    let support = ell.sublevel(lambda_window);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_slack = f64::NEG_INFINITY;
    for _ in 0..samples {
        let f = random_element(&support, &mut rng).symmetrize(alg);
        let lhs = lip_seminorm(alg, ell, &apply_multiplier(phi, &f), k, lambda_window)?.value;
        let rhs = lip_seminorm(alg, ell, &f, k, lambda_window)?.value;
        worst_slack = worst_slack.max(lhs - rhs);
    }
    Ok(ContractionReport {
        worst_slack,
        all_pass: worst_slack <= CONTRACTION_TOL,
        samples,
    })
}

/// Positive-definiteness of phi as a function on a discrete group, via the
/// Gram matrix [phi(g⁻¹h)] on the window. Group duals only — the general
/// ucp question is out of scope.
pub fn positive_definite_check(
    alg: &FusionAlgebra,
    phi: &MultiplierState,
    window: &[Label],
) -> Result<bool> {
    if !alg.is_group_dual() {
        return Err(QghError::InvalidParameter {
            field: "algebra",
            reason: "positive-definiteness check needs a group dual (d ≡ 1)".into(),
        });
    }
    let n = window.len();
    let mut gram = vec![0.0f64; n * n];
    for (i, &g) in window.iter().enumerate() {
        for (j, &h) in window.iter().enumerate() {
            let prod = alg.fusion(alg.conj(g), h);
            // g⁻¹h outside the enumeration means phi = 0 there.
            let v = prod.components.first().map(|&(l, _)| phi.phi(l)).unwrap_or(0.0);
            gram[i * n + j] = v;
        }
    }
    Ok(sym_min_eig(n, &gram) >= -GRAM_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{su2_like, zd_dual, Su2Kind};
    use crate::length::word_length;

    fn z_setup(r: i64) -> (FusionAlgebra, LengthFunction) {
        let z = zd_dual(1, r).unwrap();
        let gens = [z.label_by_name("1").unwrap(), z.label_by_name("-1").unwrap()];
        let ell = word_length(&z, &gens).unwrap();
        (z, ell)
    }

    #[test]
    fn fejer_kernel_on_z_dual() {
        let (z, ell) = z_setup(8);
        let phi = folner_multiplier(&z, &ell, 1.0).unwrap();
        let at = |k: i64| phi.phi(z.label_by_name(&k.to_string()).unwrap());
        assert_eq!(at(0), 1.0);
        assert_eq!(at(1), 2.0 / 3.0);
        assert_eq!(at(2), 1.0 / 3.0);
        assert_eq!(at(3), 0.0);
        assert_eq!(phi.normalization, 3.0);
    }

    #[test]
    fn fejer_identity_all_lambda() {
        let (z, ell) = z_setup(110);
        for lam in 1..=50u32 {
            let phi = folner_multiplier(&z, &ell, f64::from(lam)).unwrap();
            let width = 2.0 * f64::from(lam) + 1.0;
            for l in z.labels() {
                let k = z.lattice_coords(l).unwrap()[0].abs() as f64;
                let expect = ((width - k).max(0.0)) / width;
                if ell.get(l) + f64::from(lam) <= ell.max_finite() {
                    assert_eq!(phi.phi(l), expect, "Λ = {lam}, k = {k}");
                }
            }
        }
    }

    #[test]
    fn su2_phi_matches_formula_and_unit() {
        let su2 = su2_like(Su2Kind::Su2, 12).unwrap();
        let ell = word_length(&su2, &[1]).unwrap();
        let phi = folner_multiplier(&su2, &ell, 2.0).unwrap();
        assert!((phi.phi(0) - 1.0).abs() < 1e-15);
        // numerator 1·2 + 2·1 + 2·3 + 3·2 = 16, over d(1)·(1+4+9).
        assert!((phi.phi(1) - 16.0 / (2.0 * 14.0)).abs() < 1e-15);
        // Conjugation symmetry and 0 ≤ phi ≤ 1 across the window.
        for l in su2.labels() {
            assert_eq!(phi.phi(l), phi.phi(su2.conj(l)));
            assert!((-1e-15..=1.0 + 1e-15).contains(&phi.phi(l)));
        }
    }

    #[test]
    fn phi_pointwise_convergence() {
        let (z, ell) = z_setup(410);
        let k1 = z.label_by_name("1").unwrap();
        let mut prev = 0.0;
        for lam in [10.0, 50.0, 200.0] {
            let phi = folner_multiplier(&z, &ell, lam).unwrap();
            assert!(phi.phi(k1) >= prev);
            prev = phi.phi(k1);
        }
        assert!((prev - 1.0).abs() < 3e-3); // 1/401 at Λ = 200
    }

    #[test]
    fn apply_and_state_eval() {
        let (z, ell) = z_setup(8);
        let phi = folner_multiplier(&z, &ell, 1.0).unwrap();
        let e = Element::delta(z.unit());
        assert_eq!(apply_multiplier(&phi, &e), e);
        assert_eq!(state_eval(&z, &phi, &e), Complex64::new(1.0, 0.0));

        let d1 = z.label_by_name("1").unwrap();
        let d3 = z.label_by_name("3").unwrap();
        let f = Element::from_pairs([
            (d1, Complex64::new(1.0, 0.0)),
            (d3, Complex64::new(1.0, 0.0)),
        ]);
        let g = apply_multiplier(&phi, &f);
        assert_eq!(g, Element::from_pairs([(d1, Complex64::new(2.0 / 3.0, 0.0))]));
        // Twice scales by phi².
        let gg = apply_multiplier(&phi, &g);
        assert_eq!(gg.get(d1), Complex64::new(4.0 / 9.0, 0.0));
        assert_eq!(state_eval(&z, &phi, &f), Complex64::new(2.0 / 3.0, 0.0));

        // Support confinement: χ vanishes off the support of phi.
        let far = Element::delta(z.label_by_name("5").unwrap());
        assert_eq!(state_eval(&z, &phi, &far), Complex64::new(0.0, 0.0));

        let su2 = su2_like(Su2Kind::Su2, 12).unwrap();
        let ells = word_length(&su2, &[1]).unwrap();
        let phis = folner_multiplier(&su2, &ells, 2.0).unwrap();
        let v = state_eval(&su2, &phis, &Element::delta(1));
        assert!((v.re - (16.0 / 28.0) * 2.0).abs() < 1e-15 && v.im == 0.0);
        assert_eq!(counit(&su2, &Element::delta(1)), Complex64::new(2.0, 0.0));
    }

    #[test]
    fn contraction_on_z_dual_and_su2() {
        let (z, ell) = z_setup(42);
        let phi = folner_multiplier(&z, &ell, 10.0).unwrap();
        let r = contraction_check(&z, &ell, &phi, 1, 60, 10.0, 3).unwrap();
        assert!(r.all_pass, "worst slack {}", r.worst_slack);

        let su2 = su2_like(Su2Kind::Su2, 34).unwrap();
        let ells = word_length(&su2, &[1]).unwrap();
        let phis = folner_multiplier(&su2, &ells, 8.0).unwrap();
        let rs = contraction_check(&su2, &ells, &phis, 1, 25, 8.0, 3).unwrap();
        assert!(rs.all_pass, "worst slack {}", rs.worst_slack);
    }

    #[test]
    fn positive_definiteness() {
        let (z, ell) = z_setup(40);
        for lam in [2.0, 5.0, 10.0] {
            let phi = folner_multiplier(&z, &ell, lam).unwrap();
            let window = ell.sublevel(3.0 * lam);
            assert!(positive_definite_check(&z, &phi, &window).unwrap(), "Λ = {lam}");
        }

        // Truncated constant is not positive-definite on ℤ.
        let ind: Vec<f64> = z
            .labels()
            .map(|l| if ell.get(l) <= 4.0 { 1.0 } else { 0.0 })
            .collect();
        let boxy = MultiplierState::from_phi(4.0, ind);
        let window = ell.sublevel(12.0);
        assert!(!positive_definite_check(&z, &boxy, &window).unwrap());

        // The delta at e is positive-definite.
        let mut delta = vec![0.0; z.len()];
        delta[z.unit()] = 1.0;
        assert!(positive_definite_check(&z, &MultiplierState::from_phi(0.0, delta), &window)
            .unwrap());

        // Refused off group duals.
        let su2 = su2_like(Su2Kind::Su2, 6).unwrap();
        let phi = MultiplierState::from_phi(1.0, vec![1.0; su2.len()]);
        assert!(positive_definite_check(&su2, &phi, &[0, 1, 2]).is_err());
    }
}
