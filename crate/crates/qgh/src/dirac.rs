//! Left-regular matrices on the weighted ℓ²(Irred) model, the diagonal Dirac
//! commutators in closed form, Lip-seminorms and their truncations, banded
//! upper bounds, and rapid-decay diagnostics.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::element::{random_element, weighted_norm, Element};
use crate::error::{QghError, Result};
use crate::fusion::{FusionAlgebra, Label};
use crate::length::{fit_growth_order, shell_profile, LengthFunction};
use crate::linalg::CMat;

const CONVERGENCE_TOL: f64 = 1e-8;
const NULLSPACE_TOL: f64 = 1e-10;

/// A finite matrix of an operator between sublevel windows, in the
/// orthonormalized basis ê_α = α/d(α).
#[derive(Clone, Debug)]
pub struct OperatorWindow {
    pub rows: Vec<Label>,
    pub cols: Vec<Label>,
    pub matrix: CMat,
    /// Domain window level N.
    pub level: f64,
    /// Commutator order k; 0 for the plain left-regular matrix.
    pub order: u32,
}

fn fill_left_regular(
    alg: &FusionAlgebra,
    f: &Element,
    rows: &[Label],
    cols: &[Label],
    allow_escape: bool,
) -> Result<CMat> {
    let mut row_of = vec![usize::MAX; alg.len()];
    for (i, &r) in rows.iter().enumerate() {
        row_of[r] = i;
    }
    let mut m = CMat::zeros(rows.len(), cols.len());
    for (j, &b) in cols.iter().enumerate() {
        for (&a, &fa) in &f.coeffs {
            let prod = alg.fusion(a, b);
            if !prod.complete && !allow_escape {
                return Err(QghError::IncompleteWindow {
                    a: alg.name(a).into(),
                    b: alg.name(b).into(),
                });
            }
            for (c, mult) in prod.components {
                let i = row_of[c];
                if i == usize::MAX {
                    continue; // compression drops rows outside the window
                }
                m.add_to(i, j, fa * (mult as f64));
            }
        }
    }
    Ok(m)
}

/// Matrix of left multiplication by `f` from the window {ℓ ≤ N} into
/// {ℓ ≤ N + support_radius(f)}. Entry (γ, β) = Σ_α f(α) N_{α,β}^γ; with
/// this pairing Frobenius reciprocity makes π a *-representation, so the
/// commutators below satisfy δ^k(f)* = (−1)^k δ^k(f*) exactly.
pub fn left_regular_matrix(
    alg: &FusionAlgebra,
    ell: &LengthFunction,
    f: &Element,
    n: f64,
) -> Result<OperatorWindow> {
    let radius = f.support_radius(ell);
    let cols = ell.sublevel(n);
    let rows = ell.sublevel(n + radius);
    let matrix = fill_left_regular(alg, f, &rows, &cols, false)?;
    Ok(OperatorWindow { rows, cols, matrix, level: n, order: 0 })
}

/// Square compression P_Λ π(f) P_Λ on the window A_Λ. Coefficients of `f`
/// outside the window still act; only rows/columns are compressed.
pub fn compressed_matrix(
    alg: &FusionAlgebra,
    ell: &LengthFunction,
    f: &Element,
    lambda: f64,
) -> Result<OperatorWindow> {
    if lambda > ell.max_finite() {
        return Err(QghError::InvalidParameter {
            field: "lambda",
            reason: format!("exceeds the enumerated window ({})", ell.max_finite()),
        });
    }
    let window = ell.sublevel(lambda);
    // Products escaping the enumeration have ℓ beyond the cap ≥ Λ, so the
    // compression discards them regardless; tolerate the incompleteness.
    let matrix = fill_left_regular(alg, f, &window, &window, true)?;
    Ok(OperatorWindow { rows: window.clone(), cols: window, matrix, level: lambda, order: 0 })
}

fn apply_dirac_factors(w: &mut OperatorWindow, ell: &LengthFunction, k: u32) {
    for (i, &r) in w.rows.clone().iter().enumerate() {
        for (j, &c) in w.cols.clone().iter().enumerate() {
            let factor = (ell.get(r) - ell.get(c)).powi(k as i32);
            let v = w.matrix.get(i, j);
            w.matrix.set(i, j, v * factor);
        }
    }
    w.order = k;
}

/// δ^k(f) = [D, [D, … [D, π(f)]]] on the window {ℓ ≤ N}: the (γ, β) entry of
/// π(f) times (ℓ(γ) − ℓ(β))^k, since the Dirac is diagonal.
pub fn dirac_commutator(
    alg: &FusionAlgebra,
    ell: &LengthFunction,
    f: &Element,
    k: u32,
    n: f64,
) -> Result<OperatorWindow> {
    let mut w = left_regular_matrix(alg, ell, f, n)?;
    apply_dirac_factors(&mut w, ell, k);
    Ok(w)
}

/// δ_Λ^k(f): the compressed commutator [D_Λ, … [D_Λ, P_Λ π(f) P_Λ]] on A_Λ.
pub fn compressed_commutator(
    alg: &FusionAlgebra,
    ell: &LengthFunction,
    f: &Element,
    k: u32,
    lambda: f64,
) -> Result<OperatorWindow> {
    let mut w = compressed_matrix(alg, ell, f, lambda)?;
    apply_dirac_factors(&mut w, ell, k);
    Ok(w)
}

/// Largest singular value of the window matrix.
pub fn operator_norm(w: &OperatorWindow) -> f64 {
    w.matrix.spectral_norm()
}

#[derive(Clone, Copy, Debug)]
pub struct SeminormValue {
    pub value: f64,
    pub window_n: f64,
    /// Doubling the window changed the value by < 1e−8 relatively.
    pub converged: bool,
}

/// L_k(f) approximated from below on the window {ℓ ≤ N}: ‖δ^k(f)‖. The
/// converged flag compares against the doubled window when it fits inside
/// the enumerated data; otherwise it stays false.
pub fn lip_seminorm(
    alg: &FusionAlgebra,
    ell: &LengthFunction,
    f: &Element,
    k: u32,
    n: f64,
) -> Result<SeminormValue> {
    let value = operator_norm(&dirac_commutator(alg, ell, f, k, n)?);
    let radius = f.support_radius(ell);
    let doubled = 2.0 * n;
    let converged = if doubled + radius <= ell.max_finite() {
        let v2 = operator_norm(&dirac_commutator(alg, ell, f, k, doubled)?);
        (v2 - value).abs() <= CONVERGENCE_TOL * value.abs().max(1.0)
    } else {
        false
    };
    Ok(SeminormValue { value, window_n: n, converged })
}

/// Truncated seminorm L_{ℓ,Λ}^k: exact norm of the compressed commutator.
pub fn truncated_seminorm(
    alg: &FusionAlgebra,
    ell: &LengthFunction,
    f: &Element,
    k: u32,
    lambda: f64,
) -> Result<SeminormValue> {
    if lambda > ell.max_finite() {
        return Err(QghError::InvalidParameter {
            field: "lambda",
            reason: format!("exceeds the enumerated window ({})", ell.max_finite()),
        });
    }
    let value = operator_norm(&compressed_commutator(alg, ell, f, k, lambda)?);
    // Finite exact computation: no window-growth question.
    Ok(SeminormValue { value, window_n: lambda, converged: true })
}

/// Upper bound Σ_{|j| ≤ p} |j|^k · max_m ‖Q_m π(f) Q_{m−j}‖ from the banded
/// decomposition over integer shells; requires an integer-valued length.
pub fn banded_upper_bound(
    alg: &FusionAlgebra,
    ell: &LengthFunction,
    f: &Element,
    k: u32,
    n: f64,
) -> Result<f64> {
    if !ell.integer_valued {
        return Err(QghError::InvalidParameter {
            field: "ell",
            reason: "banded bound needs an integer-valued length".into(),
        });
    }
    let w = left_regular_matrix(alg, ell, f, n)?;
    let p = f.support_radius(ell) as i64;
    let row_shell: Vec<i64> = w.rows.iter().map(|&l| ell.get(l) as i64).collect();
    let col_shell: Vec<i64> = w.cols.iter().map(|&l| ell.get(l) as i64).collect();
    let max_shell = row_shell.iter().copied().max().unwrap_or(0);
    let mut total = 0.0;
    for j in -p..=p {
        if j == 0 {
            continue; // |0|^k = 0 for k ≥ 1
        }
        let mut best = 0.0f64;
        for m in 0..=max_shell {
            let ri: Vec<usize> =
                (0..w.rows.len()).filter(|&i| row_shell[i] == m).collect();
            let ci: Vec<usize> =
                (0..w.cols.len()).filter(|&i| col_shell[i] == m - j).collect();
            if ri.is_empty() || ci.is_empty() {
                continue;
            }
            let mut block = CMat::zeros(ri.len(), ci.len());
            for (bi, &i) in ri.iter().enumerate() {
                for (bj, &jj) in ci.iter().enumerate() {
                    block.set(bi, bj, w.matrix.get(i, jj));
                }
            }
            best = best.max(block.spectral_norm());
        }
        total += (j.abs() as f64).powi(k as i32) * best;
    }
    Ok(total)
}

/// Dimension of the kernel of f ↦ δ_Λ^k(f) over coefficients supported on
/// A_Λ. Expected to be exactly 1 (the scalars) for proper lengths.
pub fn truncated_kernel_dimension(
    alg: &FusionAlgebra,
    ell: &LengthFunction,
    k: u32,
    lambda: f64,
) -> Result<usize> {
    let window = ell.sublevel(lambda);
    let nw = window.len();
    let mut big = CMat::zeros(nw * nw, nw);
    for (col, &a) in window.iter().enumerate() {
        let w = compressed_commutator(alg, ell, &Element::delta(a), k, lambda)?;
        for i in 0..nw {
            for j in 0..nw {
                big.set(i * nw + j, col, w.matrix.get(i, j));
            }
        }
    }
    Ok(big.nullspace_dim(NULLSPACE_TOL))
}

// ---------------------------------------------------------------------------
// Rapid decay
// ---------------------------------------------------------------------------

/// Rapid-decay constant over the enumerated window plus a fitted-envelope
/// tail: C² = Σ_window d(α)²/(1+ℓ(α))^{2s} + c1·Σ_{n > n_max} n^{s_hat−2s}.
/// Errors when the tail exponent makes the series divergent.
pub fn rd_constant(alg: &FusionAlgebra, ell: &LengthFunction, s: f64) -> Result<f64> {
    if s <= 0.0 {
        return Err(QghError::InvalidParameter { field: "s", reason: "must be > 0".into() });
    }
    let window_sum: f64 = alg
        .labels()
        .filter(|&l| ell.get(l).is_finite())
        .map(|l| alg.dim(l).powi(2) / (1.0 + ell.get(l)).powf(2.0 * s))
        .sum();
    let n_max = ell.max_finite().floor() as u32;
    let table = shell_profile(alg, ell, n_max)?;
    let fit = fit_growth_order(&table, (n_max / 2).max(2), n_max)?;
    let exponent = fit.s_hat - 2.0 * s;
    if exponent >= -1.0 {
        return Err(QghError::DivergentTail { s_hat: fit.s_hat, exponent });
    }
    // Σ_{n > n_max} n^exponent ≤ ∫_{n_max}^∞ x^exponent dx for exponent < −1.
    let tail = fit.c1 * f64::from(n_max).powf(exponent + 1.0) / (-exponent - 1.0);
    Ok((window_sum + tail).sqrt())
}

#[derive(Clone, Copy, Debug)]
pub struct RdReport {
    pub worst_ratio: f64,
    pub c_theory: f64,
    pub samples: usize,
}

/// Sample random elements supported on {ℓ ≤ support_cap} and compare the
/// window operator norm against the rapid-decay bound C·‖f‖_{2,s}. Window
/// norms approximate ‖π(f)‖ from below, so `worst_ratio ≤ c_theory` is a
/// sound check.
pub fn rd_scan(
    alg: &FusionAlgebra,
    ell: &LengthFunction,
    s: f64,
    sample_count: usize,
    support_cap: f64,
    seed: u64,
) -> Result<RdReport> {
    let c_theory = rd_constant(alg, ell, s)?;
    let domain_n = ell.max_finite() - support_cap;
    if domain_n < 1.0 {
        return Err(QghError::InvalidParameter {
            field: "support_cap",
            reason: "leaves no room for a domain window".into(),
        });
    }
    let support = ell.sublevel(support_cap);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Draw all samples first so the rng stream is independent of the thread
    // schedule; the norm computations then parallelize freely.
    let elems: Vec<Element> =
        (0..sample_count).map(|_| random_element(&support, &mut rng)).collect();
    let worst_ratio = elems
        .par_iter()
        .map(|f| -> Result<f64> {
            let norm = operator_norm(&left_regular_matrix(alg, ell, f, domain_n)?);
            let sobolev = weighted_norm(alg, ell, f, s)?;
            Ok(if sobolev > 0.0 { norm / sobolev } else { 0.0 })
        })
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))?;
    Ok(RdReport { worst_ratio, c_theory, samples: sample_count })
}

#[derive(Clone, Copy, Debug)]
pub struct TailReport {
    /// max over samples of ‖π(f)‖ / (C·2^s·n^{s−k}·(Σ|f|²d²ℓ^{2k})^{1/2}).
    pub worst_slack: f64,
    pub all_pass: bool,
    pub samples: usize,
}

/// For random f supported on shells ℓ ≥ n, replay the tail estimate
/// ‖π(f)‖ ≤ C·2^s·n^{s−k}·(Σ |f(α)|² d(α)² ℓ(α)^{2k})^{1/2}.
pub fn tail_bound_check(
    alg: &FusionAlgebra,
    ell: &LengthFunction,
    k: u32,
    s: f64,
    n: u32,
    samples: usize,
    seed: u64,
) -> Result<TailReport> {
    if f64::from(k) <= s {
        return Err(QghError::InvalidParameter {
            field: "k",
            reason: format!("need k > s for a decaying tail (k = {k}, s = {s})"),
        });
    }
    let c = rd_constant(alg, ell, s)?;
    // Keep the support a few shells wide so a domain window still fits.
    let span = ((ell.max_finite() - f64::from(n)) / 2.0).floor().max(0.0);
    let support: Vec<Label> = alg
        .labels()
        .filter(|&l| {
            let v = ell.get(l);
            v >= f64::from(n) && v <= f64::from(n) + span
        })
        .collect();
    if support.is_empty() {
        return Err(QghError::InvalidParameter {
            field: "n",
            reason: "no labels at or beyond shell n in the window".into(),
        });
    }
    let radius = support.iter().map(|&l| ell.get(l)).fold(0.0, f64::max);
    let domain_n = (ell.max_finite() - radius).max(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_slack = 0.0f64;
    for _ in 0..samples {
        let f = random_element(&support, &mut rng);
        let lhs = operator_norm(&left_regular_matrix(alg, ell, &f, domain_n)?);
        let sob: f64 = f
            .coeffs
            .iter()
            .map(|(&l, cf)| cf.norm_sqr() * alg.dim(l).powi(2) * ell.get(l).powf(2.0 * f64::from(k)))
            .sum::<f64>()
            .sqrt();
        let rhs = c * 2f64.powf(s) * f64::from(n).powf(s - f64::from(k)) * sob;
        if rhs > 0.0 {
            worst_slack = worst_slack.max(lhs / rhs);
        }
    }
    Ok(TailReport { worst_slack, all_pass: worst_slack <= 1.0 + 1e-9, samples })
}
