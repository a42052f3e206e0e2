//! Finitely supported elements of the fusion algebra and their weighted norms.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{QghError, Result};
use crate::fusion::{FusionAlgebra, Label};
use crate::length::LengthFunction;

/// Finitely supported coefficient vector. BTreeMap keeps iteration order
/// deterministic across runs.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Element {
    pub coeffs: BTreeMap<Label, Complex64>,
}

impl Element {
    pub fn delta(l: Label) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(l, Complex64::new(1.0, 0.0));
        Element { coeffs }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Label, Complex64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (l, c) in pairs {
            if c != Complex64::new(0.0, 0.0) {
                coeffs.insert(l, c);
            }
        }
        Element { coeffs }
    }

    pub fn get(&self, l: Label) -> Complex64 {
        self.coeffs.get(&l).copied().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = Label> + '_ {
        self.coeffs.keys().copied()
    }

    /// f*(α) = conjugate of f at conj(α).
    pub fn adjoint(&self, alg: &FusionAlgebra) -> Element {
        Element::from_pairs(self.coeffs.iter().map(|(&l, &c)| (alg.conj(l), c.conj())))
    }

    pub fn is_self_adjoint(&self, alg: &FusionAlgebra) -> bool {
        self.adjoint(alg) == *self
    }

    /// (f + f*)/2.
    pub fn symmetrize(&self, alg: &FusionAlgebra) -> Element {
        let adj = self.adjoint(alg);
        let mut coeffs = self.coeffs.clone();
        for (&l, &c) in &adj.coeffs {
            *coeffs.entry(l).or_default() += c;
        }
        for c in coeffs.values_mut() {
            *c *= 0.5;
        }
        coeffs.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Element { coeffs }
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut coeffs = self.coeffs.clone();
        for (&l, &c) in &other.coeffs {
            *coeffs.entry(l).or_default() -= c;
        }
        coeffs.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Element { coeffs }
    }

    pub fn scale(&self, s: f64) -> Element {
        Element::from_pairs(self.coeffs.iter().map(|(&l, &c)| (l, c * s)))
    }

    /// Largest ℓ over the support; 0 for the zero element.
    pub fn support_radius(&self, ell: &LengthFunction) -> f64 {
        self.support().map(|l| ell.get(l)).fold(0.0, f64::max)
    }

    /// Restrict to the sublevel set {ℓ ≤ Λ}.
    pub fn truncate(&self, ell: &LengthFunction, lambda: f64) -> Element {
        Element {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&l, _)| ell.get(l) <= lambda)
                .map(|(&l, &c)| (l, c))
                .collect(),
        }
    }

    /// ‖f‖₂ in the weighted ℓ² norm, (Σ |f(α)|² d(α)²)^{1/2}.
    pub fn l2_norm(&self, alg: &FusionAlgebra) -> f64 {
        self.coeffs
            .iter()
            .map(|(&l, c)| c.norm_sqr() * alg.dim(l).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// Sobolev-type norm ‖f‖_{2,s} = (Σ |f(α)|² d(α)² (1+ℓ(α))^{2s})^{1/2}.
pub fn weighted_norm(
    alg: &FusionAlgebra,
    ell: &LengthFunction,
    f: &Element,
    s: f64,
) -> Result<f64> {
    if s <= 0.0 {
        return Err(QghError::InvalidParameter { field: "s", reason: "must be > 0".into() });
    }
    Ok(f
        .coeffs
        .iter()
        .map(|(&l, c)| c.norm_sqr() * alg.dim(l).powi(2) * (1.0 + ell.get(l)).powf(2.0 * s))
        .sum::<f64>()
        .sqrt())
}

/// Random complex element supported on the given labels, coefficients
/// uniform in the complex unit square. Deterministic given the rng state.
pub fn random_element(support: &[Label], rng: &mut impl Rng) -> Element {
    Element::from_pairs(support.iter().map(|&l| {
        let re = rng.gen_range(-1.0..=1.0);
        let im = rng.gen_range(-1.0..=1.0);
        (l, Complex64::new(re, im))
    }))
}
