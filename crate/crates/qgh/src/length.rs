//! Proper length functions, shell/growth profiles, and Følner boundaries.

use std::collections::VecDeque;

use crate::error::{QghError, Result};
use crate::fusion::{FusionAlgebra, Label};

const LENGTH_TOL: f64 = 1e-12;

/// A length function on the enumerated basis. Unreachable labels carry
/// `f64::INFINITY`.
#[derive(Clone, Debug)]
pub struct LengthFunction {
    pub values: Vec<f64>,
    pub proper: bool,
    pub integer_valued: bool,
}

impl LengthFunction {
    pub fn get(&self, l: Label) -> f64 {
        self.values[l]
    }

    pub fn from_values(alg: &FusionAlgebra, values: Vec<f64>) -> Self {
        let integer_valued =
            values.iter().all(|&v| v.is_finite() && v >= 0.0 && v.fract() == 0.0);
        let proper = values.iter().enumerate().all(|(l, &v)| {
            v.is_finite() && (v > 0.0 || l == alg.unit())
        });
        LengthFunction { values, proper, integer_valued }
    }

    /// Labels with ℓ ≤ bound, the sublevel set A_Λ.
    pub fn sublevel(&self, bound: f64) -> Vec<Label> {
        (0..self.values.len()).filter(|&l| self.values[l] <= bound).collect()
    }

    /// Largest Λ for which {ℓ ≤ Λ + r} is certainly fully enumerated, i.e.
    /// the maximum finite value present minus r. Conservative for windows cut
    /// by an enumeration cap.
    pub fn max_finite(&self) -> f64 {
        self.values.iter().copied().filter(|v| v.is_finite()).fold(0.0, f64::max)
    }
}

/// Word length induced by a conjugation-closed generator set: breadth-first
/// search over the fusion graph, ℓ(γ) = min k with γ in a k-fold product of
/// generators. The unit gets 0 even when listed among the generators.
pub fn word_length(alg: &FusionAlgebra, generators: &[Label]) -> Result<LengthFunction> {
    for &g in generators {
        if !generators.contains(&alg.conj(g)) {
            return Err(QghError::GeneratorsNotConjClosed { label: alg.name(g).into() });
        }
    }
    let mut values = vec![f64::INFINITY; alg.len()];
    values[alg.unit()] = 0.0;
    let mut queue: VecDeque<Label> = VecDeque::new();
    queue.push_back(alg.unit());
    while let Some(b) = queue.pop_front() {
        for &g in generators {
            // Any γ reached in k steps appears in g ⊗ β for some β at k−1:
            // expanding one g at a time explores exactly the k-fold products.
            for &(c, _) in &alg.fusion(g, b).components {
                if values[c].is_infinite() {
                    values[c] = values[b] + 1.0;
                    queue.push_back(c);
                }
            }
        }
    }
    let proper = values.iter().enumerate().all(|(l, &v)| {
        v.is_finite() && (v > 0.0 || l == alg.unit())
    });
    Ok(LengthFunction { values, proper, integer_valued: proper })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LengthAxiom {
    /// ℓ(e) = 0.
    UnitZero,
    /// ℓ(conj α) = ℓ(α).
    ConjSymmetric,
    /// ℓ(γ) ≤ ℓ(α) + ℓ(β) whenever N_{α,β}^γ > 0.
    Subadditive,
    /// ℓ finite on the window and zero only at the unit.
    Proper,
}

#[derive(Clone, Debug)]
pub struct LengthViolation {
    pub axiom: LengthAxiom,
    pub labels: Vec<String>,
    pub lhs: f64,
    pub rhs: f64,
}

/// Exhaustive check of the length axioms over all in-window fusion triples.
/// Exact comparisons when ℓ is integer-valued, tolerance 1e−12 otherwise.
pub fn validate_length(
    alg: &FusionAlgebra,
    ell: &LengthFunction,
    window: &[Label],
) -> Vec<LengthViolation> {
    let tol = if ell.integer_valued { 0.0 } else { LENGTH_TOL };
    let mut out = Vec::new();
    if ell.get(alg.unit()) != 0.0 {
        out.push(LengthViolation {
            axiom: LengthAxiom::UnitZero,
            labels: vec![alg.name(alg.unit()).into()],
            lhs: ell.get(alg.unit()),
            rhs: 0.0,
        });
    }
    for &l in window {
        let v = ell.get(l);
        let vc = ell.get(alg.conj(l));
        if (v - vc).abs() > tol {
            out.push(LengthViolation {
                axiom: LengthAxiom::ConjSymmetric,
                labels: vec![alg.name(l).into()],
                lhs: v,
                rhs: vc,
            });
        }
        if !v.is_finite() || (v == 0.0 && l != alg.unit()) || v < 0.0 {
            out.push(LengthViolation {
                axiom: LengthAxiom::Proper,
                labels: vec![alg.name(l).into()],
                lhs: v,
                rhs: 0.0,
            });
        }
    }
    for &a in window {
        for &b in window {
            let bound = ell.get(a) + ell.get(b);
            for &(c, _) in &alg.fusion(a, b).components {
                if ell.get(c) > bound + tol {
                    out.push(LengthViolation {
                        axiom: LengthAxiom::Subadditive,
                        labels: vec![alg.name(a).into(), alg.name(b).into(), alg.name(c).into()],
                        lhs: ell.get(c),
                        rhs: bound,
                    });
                }
            }
        }
    }
    out
}

/// Shell sums σ(n) = Σ_{ℓ(α) ∈ (n−1, n]} d(α)² for n = 1..=n_max, with the
/// unit shell σ(0) = 1 reported separately.
#[derive(Clone, Debug)]
pub struct GrowthTable {
    pub unit_shell: f64,
    /// (n, σ(n), cumulative Σ_{ℓ ≤ n} d²) for n = 1..=n_max.
    pub rows: Vec<(u32, f64, f64)>,
}

pub fn shell_profile(
    alg: &FusionAlgebra,
    ell: &LengthFunction,
    n_max: u32,
) -> Result<GrowthTable> {
    // The sublevel {ℓ ≤ n_max} must be fully enumerated: anything that could
    // carry a length ≤ n_max but escaped the window would be missing here.
    // For word lengths the window is complete up to the largest finite value.
    let max_seen = ell.max_finite();
    if f64::from(n_max) > max_seen {
        return Err(QghError::InvalidParameter {
            field: "n_max",
            reason: format!(
                "window only certifies sublevels up to {max_seen}; asked for {n_max}"
            ),
        });
    }
    let unit_shell = alg.dim(alg.unit()).powi(2);
    let mut shells = vec![0.0f64; n_max as usize + 1];
    for l in alg.labels() {
        let v = ell.get(l);
        if l == alg.unit() || !v.is_finite() || v > f64::from(n_max) {
            continue;
        }
        let n = v.ceil().max(1.0) as usize;
        shells[n] += alg.dim(l).powi(2);
    }
    let mut cumulative = unit_shell;
    let rows = (1..=n_max)
        .map(|n| {
            cumulative += shells[n as usize];
            (n, shells[n as usize], cumulative)
        })
        .collect();
    Ok(GrowthTable { unit_shell, rows })
}

#[derive(Clone, Copy, Debug)]
pub struct GrowthFit {
    pub s_hat: f64,
    pub c1: f64,
    pub c2: f64,
    pub strong: bool,
}

/// Least-squares slope of log σ(n) against log n over n ∈ [n_min, n_max],
/// with the envelope constants c1 = max σ/n^s, c2 = min σ/n^s.
pub fn fit_growth_order(table: &GrowthTable, n_min: u32, n_max: u32) -> Result<GrowthFit> {
    if n_min < 2 {
        return Err(QghError::InvalidParameter { field: "n_min", reason: "must be ≥ 2".into() });
    }
    let range: Vec<(u32, f64)> = table
        .rows
        .iter()
        .filter(|&&(n, _, _)| n >= n_min && n <= n_max)
        .map(|&(n, s, _)| (n, s))
        .collect();
    let nonempty: Vec<(f64, f64)> =
        range.iter().filter(|&&(_, s)| s > 0.0).map(|&(n, s)| (f64::from(n).ln(), s.ln())).collect();
    if nonempty.len() < 3 {
        return Err(QghError::FitRefused { available: nonempty.len() });
    }
    let m = nonempty.len() as f64;
    let sx: f64 = nonempty.iter().map(|p| p.0).sum();
    let sy: f64 = nonempty.iter().map(|p| p.1).sum();
    let sxx: f64 = nonempty.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = nonempty.iter().map(|p| p.0 * p.1).sum();
    let s_hat = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    let mut c1 = f64::NEG_INFINITY;
    let mut c2 = f64::INFINITY;
    let all_nonempty = range.iter().all(|&(_, s)| s > 0.0);
    for &(n, s) in &range {
        if s > 0.0 {
            let q = s / f64::from(n).powf(s_hat);
            c1 = c1.max(q);
            c2 = c2.min(q);
        }
    }
    Ok(GrowthFit { s_hat, c1, c2, strong: all_nonempty && c2 > 0.0 })
}

#[derive(Clone, Debug)]
pub struct FolnerReport {
    pub lambda: f64,
    pub boundary: Vec<Label>,
    pub boundary_weight: f64,
    pub bulk_weight: f64,
    pub ratio: f64,
}

/// π-boundary of the sublevel set A_Λ: elements of A_Λ with a component of
/// α ⊗ π escaping, together with elements outside A_Λ with a component
/// entering. Weights are d² sums.
pub fn folner_boundary(
    alg: &FusionAlgebra,
    ell: &LengthFunction,
    lambda: f64,
    pi: Label,
) -> Result<FolnerReport> {
    // Need everything that can exchange with A_Λ through ⊗ π, i.e. the
    // window must cover {ℓ ≤ Λ + ℓ(π)} with complete products on A_Λ ∪ rim.
    let rim = lambda + ell.get(pi);
    if rim > ell.max_finite() {
        return Err(QghError::InvalidParameter {
            field: "lambda",
            reason: format!(
                "window covers lengths up to {}, need {rim} for the π-boundary",
                ell.max_finite()
            ),
        });
    }
    let mut boundary = Vec::new();
    for l in alg.labels() {
        let v = ell.get(l);
        if !v.is_finite() || v > rim {
            continue;
        }
        let f = alg.fusion(l, pi);
        if !f.complete {
            return Err(QghError::IncompleteWindow {
                a: alg.name(l).into(),
                b: alg.name(pi).into(),
            });
        }
        let inside = v <= lambda;
        let crosses = f
            .components
            .iter()
            .any(|&(c, _)| (ell.get(c) <= lambda) != inside);
        if crosses {
            boundary.push(l);
        }
    }
    let boundary_weight: f64 = boundary.iter().map(|&l| alg.dim(l).powi(2)).sum();
    let bulk_weight: f64 = alg
        .labels()
        .filter(|&l| ell.get(l) <= lambda)
        .map(|l| alg.dim(l).powi(2))
        .sum();
    if bulk_weight == 0.0 {
        return Err(QghError::InvalidParameter {
            field: "lambda",
            reason: "empty bulk: no labels with ℓ ≤ Λ".into(),
        });
    }
    Ok(FolnerReport {
        lambda,
        boundary_weight,
        bulk_weight,
        ratio: boundary_weight / bulk_weight,
        boundary,
    })
}

/// Boundary relative to a generator set: the union of the per-π boundaries.
pub fn folner_boundary_set(
    alg: &FusionAlgebra,
    ell: &LengthFunction,
    lambda: f64,
    generators: &[Label],
) -> Result<FolnerReport> {
    let mut in_boundary = vec![false; alg.len()];
    for &pi in generators {
        for l in folner_boundary(alg, ell, lambda, pi)?.boundary {
            in_boundary[l] = true;
        }
    }
    let boundary: Vec<Label> = (0..alg.len()).filter(|&l| in_boundary[l]).collect();
    let boundary_weight: f64 = boundary.iter().map(|&l| alg.dim(l).powi(2)).sum();
    let bulk_weight: f64 = alg
        .labels()
        .filter(|&l| ell.get(l) <= lambda)
        .map(|l| alg.dim(l).powi(2))
        .sum();
    Ok(FolnerReport {
        lambda,
        boundary_weight,
        bulk_weight,
        ratio: boundary_weight / bulk_weight,
        boundary,
    })
}

pub fn folner_ratio_curve(
    alg: &FusionAlgebra,
    ell: &LengthFunction,
    generators: &[Label],
    lambdas: &[f64],
) -> Result<Vec<FolnerReport>> {
    lambdas
        .iter()
        .map(|&l| folner_boundary_set(alg, ell, l, generators))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{su2_like, zd_dual, Su2Kind};

    #[test]
    fn z_dual_word_length_is_abs() {
        let alg = zd_dual(1, 20).unwrap();
        let gens = [
            alg.label_by_name("1").unwrap(),
            alg.label_by_name("-1").unwrap(),
        ];
        let ell = word_length(&alg, &gens).unwrap();
        assert!(ell.proper && ell.integer_valued);
        for k in -20i64..=20 {
            let l = alg.label_by_name(&k.to_string()).unwrap();
            assert_eq!(ell.get(l), k.abs() as f64);
        }
    }

    #[test]
    fn su2_so3_word_length_is_level() {
        for kind in [Su2Kind::Su2, Su2Kind::So3] {
            let alg = su2_like(kind, 30).unwrap();
            let ell = word_length(&alg, &[1]).unwrap();
            assert!(ell.proper);
            for m in 0..=30usize {
                assert_eq!(ell.get(m), m as f64, "{kind:?} level {m}");
            }
        }
    }

    #[test]
    fn word_length_rejects_open_generator_set() {
        let alg = zd_dual(1, 5).unwrap();
        let g = alg.label_by_name("1").unwrap();
        assert!(matches!(
            word_length(&alg, &[g]),
            Err(QghError::GeneratorsNotConjClosed { .. })
        ));
    }

    #[test]
    fn word_length_passes_validate() {
        let alg = su2_like(Su2Kind::OnPlus(3), 16).unwrap();
        let ell = word_length(&alg, &[1]).unwrap();
        let window: Vec<_> = alg.labels().collect();
        assert!(validate_length(&alg, &ell, &window).is_empty());
    }

    #[test]
    fn degenerate_lengths_flagged() {
        let alg = zd_dual(1, 5).unwrap();
        let zeros = LengthFunction::from_values(&alg, vec![0.0; alg.len()]);
        let window: Vec<_> = alg.labels().collect();
        let v = validate_length(&alg, &zeros, &window);
        assert!(v.iter().any(|x| x.axiom == LengthAxiom::Proper));

        // ℓ(k) = k² breaks subadditivity at (1, 1, 2): 4 > 1 + 1.
        let sq: Vec<f64> = alg
            .labels()
            .map(|l| {
                let k = alg.lattice_coords(l).unwrap()[0] as f64;
                k * k
            })
            .collect();
        let sq = LengthFunction::from_values(&alg, sq);
        let v = validate_length(&alg, &sq, &window);
        assert!(v.iter().any(|x| x.axiom == LengthAxiom::Subadditive
            && x.labels == ["1", "1", "2"]
            && x.lhs == 4.0
            && x.rhs == 2.0));
    }

    #[test]
    fn shell_profiles_match_closed_forms() {
        let su2 = su2_like(Su2Kind::Su2, 62).unwrap();
        let ell = word_length(&su2, &[1]).unwrap();
        let t = shell_profile(&su2, &ell, 60).unwrap();
        assert_eq!(t.unit_shell, 1.0);
        for &(n, s, _) in &t.rows {
            assert_eq!(s, ((n + 1) as f64).powi(2));
        }

        let z = zd_dual(1, 40).unwrap();
        let gens = [z.label_by_name("1").unwrap(), z.label_by_name("-1").unwrap()];
        let ellz = word_length(&z, &gens).unwrap();
        let tz = shell_profile(&z, &ellz, 40).unwrap();
        for &(_, s, _) in &tz.rows {
            assert_eq!(s, 2.0);
        }

        let z2 = zd_dual(2, 25).unwrap();
        let gens2: Vec<_> = ["(1,0)", "(-1,0)", "(0,1)", "(0,-1)"]
            .iter()
            .map(|n| z2.label_by_name(n).unwrap())
            .collect();
        let ell2 = word_length(&z2, &gens2).unwrap();
        let t2 = shell_profile(&z2, &ell2, 25).unwrap();
        for &(n, s, _) in &t2.rows {
            assert_eq!(s, 4.0 * f64::from(n));
        }
    }

    #[test]
    fn growth_fits() {
        let su2 = su2_like(Su2Kind::Su2, 62).unwrap();
        let ell = word_length(&su2, &[1]).unwrap();
        let t = shell_profile(&su2, &ell, 60).unwrap();
        let fit = fit_growth_order(&t, 10, 60).unwrap();
        assert!((1.9..=2.1).contains(&fit.s_hat), "s_hat = {}", fit.s_hat);
        assert!(fit.strong);
        assert!(fit.c2 > 0.0 && fit.c1 >= fit.c2);

        let z = zd_dual(1, 62).unwrap();
        let gens = [z.label_by_name("1").unwrap(), z.label_by_name("-1").unwrap()];
        let ellz = word_length(&z, &gens).unwrap();
        let tz = shell_profile(&z, &ellz, 60).unwrap();
        let fz = fit_growth_order(&tz, 10, 60).unwrap();
        assert!(fz.s_hat.abs() <= 0.05, "s_hat = {}", fz.s_hat);
        assert!(fz.strong);
    }

    #[test]
    fn fit_refused_without_enough_shells() {
        let su2 = su2_like(Su2Kind::Su2, 6).unwrap();
        let ell = word_length(&su2, &[1]).unwrap();
        let t = shell_profile(&su2, &ell, 3).unwrap();
        assert!(matches!(
            fit_growth_order(&t, 2, 3),
            Err(QghError::FitRefused { available: 2 })
        ));
    }

    #[test]
    fn folner_z_dual_exact() {
        let z = zd_dual(1, 30).unwrap();
        let gens = [z.label_by_name("1").unwrap(), z.label_by_name("-1").unwrap()];
        let ell = word_length(&z, &gens).unwrap();
        let r = folner_boundary_set(&z, &ell, 10.0, &gens).unwrap();
        // Boundary is {±10, ±11}: ±10 can leave, ±11 can enter.
        let mut names: Vec<&str> = r.boundary.iter().map(|&l| z.name(l)).collect();
        names.sort_unstable();
        assert_eq!(names, ["-10", "-11", "10", "11"]);
        assert_eq!(r.boundary_weight, 4.0);
        assert_eq!(r.bulk_weight, 21.0);
        assert_eq!(r.ratio, 4.0 / 21.0);
        for lam in 1..=25u32 {
            let r = folner_boundary_set(&z, &ell, f64::from(lam), &gens).unwrap();
            assert_eq!(r.ratio, 4.0 / (2.0 * f64::from(lam) + 1.0));
        }
    }

    #[test]
    fn folner_su2_frozen_values() {
        let su2 = su2_like(Su2Kind::Su2, 110).unwrap();
        let ell = word_length(&su2, &[1]).unwrap();
        let r10 = folner_boundary(&su2, &ell, 10.0, 1).unwrap();
        assert_eq!(r10.boundary_weight, 265.0); // 11² + 12²
        assert_eq!(r10.bulk_weight, 506.0);
        assert!((r10.ratio - 0.5237).abs() < 5e-4);
        let r100 = folner_boundary(&su2, &ell, 100.0, 1).unwrap();
        assert_eq!(r100.boundary_weight, 101.0 * 101.0 + 102.0 * 102.0);
        assert_eq!(r100.bulk_weight, 348551.0);
        assert!((r100.ratio - 0.0591).abs() < 5e-4);
    }

    #[test]
    fn folner_su2_ratio_decay() {
        let su2 = su2_like(Su2Kind::Su2, 110).unwrap();
        let ell = word_length(&su2, &[1]).unwrap();
        let lambdas: Vec<f64> = (20..=100).step_by(10).map(f64::from).collect();
        let reports = folner_ratio_curve(&su2, &ell, &[1], &lambdas).unwrap();
        for r in &reports {
            assert!(r.ratio <= 7.0 / r.lambda, "Λ = {}: {}", r.lambda, r.ratio);
            if r.lambda >= 50.0 {
                assert!((r.lambda * r.ratio - 6.0).abs() <= 0.5);
            }
        }
    }

    #[test]
    fn folner_window_too_small() {
        let su2 = su2_like(Su2Kind::Su2, 10).unwrap();
        let ell = word_length(&su2, &[1]).unwrap();
        assert!(folner_boundary(&su2, &ell, 10.0, 1).is_err());
    }
}
