//! Fusion algebras with a finitely enumerated basis: lattice group duals,
//! finite group duals, SU(2)-type representation rings, products, and
//! user-supplied tables, plus axiom validation on a window.
//!
//! Products that reach outside the enumerated window are flagged as
//! incomplete, never silently truncated; downstream norms need to tell
//! "zero" from "unknown".

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{QghError, Result};

/// Index of a basis element within one algebra.
pub type Label = usize;

pub const DIM_IDENTITY_TOL: f64 = 1e-9;

/// One fusion product α ⊗ β: the enumerated components with multiplicities,
/// and whether the decomposition is guaranteed complete within the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionProduct {
    pub components: Vec<(Label, u32)>,
    pub complete: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Su2Kind {
    Su2,
    So3,
    /// Free orthogonal O_N⁺ with N ≥ 2: SU(2) fusion rules, Chebyshev dimensions.
    OnPlus(u32),
}

#[derive(Clone, Debug)]
enum FusionRule {
    Lattice {
        rank: usize,
        radius: i64,
        coords: Vec<Vec<i64>>,
        index: HashMap<Vec<i64>, Label>,
    },
    FiniteGroup {
        table: Vec<Vec<Label>>,
    },
    Su2Like {
        kind: Su2Kind,
        cap: u32,
    },
    Product {
        left: Arc<FusionAlgebra>,
        right: Arc<FusionAlgebra>,
    },
    Table {
        products: HashMap<(Label, Label), Vec<(Label, u32)>>,
    },
}

/// A fusion algebra enumerated up to a cap: ordered basis labels, unit,
/// conjugation, dimension function, and sparse structure constants.
#[derive(Clone, Debug)]
pub struct FusionAlgebra {
    names: Vec<String>,
    unit: Label,
    conj: Vec<Label>,
    dim: Vec<f64>,
    rule: FusionRule,
}

impl FusionAlgebra {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> {
        0..self.len()
    }

    pub fn unit(&self) -> Label {
        self.unit
    }

    pub fn conj(&self, l: Label) -> Label {
        self.conj[l]
    }

    pub fn dim(&self, l: Label) -> f64 {
        self.dim[l]
    }

    pub fn name(&self, l: Label) -> &str {
        &self.names[l]
    }

    pub fn label_by_name(&self, name: &str) -> Option<Label> {
        self.names.iter().position(|n| n == name)
    }

    /// True when every basis element has dimension exactly 1 (group duals).
    pub fn is_group_dual(&self) -> bool {
        self.dim.iter().all(|&d| d == 1.0)
    }

    /// Lattice rank, for lattice group duals.
    pub fn lattice_rank(&self) -> Option<usize> {
        match &self.rule {
            FusionRule::Lattice { rank, .. } => Some(*rank),
            _ => None,
        }
    }

    /// Lattice coordinates of a label, for lattice group duals.
    pub fn lattice_coords(&self, l: Label) -> Option<&[i64]> {
        match &self.rule {
            FusionRule::Lattice { coords, .. } => Some(&coords[l]),
            _ => None,
        }
    }

    /// Level of a label, for SU(2)-type rings.
    pub fn level(&self, l: Label) -> Option<u32> {
        match &self.rule {
            FusionRule::Su2Like { .. } => Some(l as u32),
            _ => None,
        }
    }

    /// Factor labels of a product-algebra label.
    pub fn pair(&self, l: Label) -> Option<(Label, Label)> {
        match &self.rule {
            FusionRule::Product { right, .. } => Some((l / right.len(), l % right.len())),
            _ => None,
        }
    }

    /// All enumerated components of α ⊗ β with the completeness flag.
    pub fn fusion(&self, a: Label, b: Label) -> FusionProduct {
        match &self.rule {
            FusionRule::Lattice { radius, coords, index, .. } => {
                let sum: Vec<i64> =
                    coords[a].iter().zip(&coords[b]).map(|(x, y)| x + y).collect();
                let l1: i64 = sum.iter().map(|x| x.abs()).sum();
                if l1 <= *radius {
                    FusionProduct { components: vec![(index[&sum], 1)], complete: true }
                } else {
                    FusionProduct { components: vec![], complete: false }
                }
            }
            FusionRule::FiniteGroup { table } => {
                FusionProduct { components: vec![(table[a][b], 1)], complete: true }
            }
            FusionRule::Su2Like { kind, cap } => {
                let (m, n) = (a as u32, b as u32);
                let lo = m.abs_diff(n);
                let hi = m + n;
                let step = match kind {
                    Su2Kind::So3 => 1,
                    _ => 2,
                };
                let mut components = Vec::new();
                let mut k = lo;
                while k <= hi.min(*cap) {
                    components.push((k as Label, 1));
                    k += step;
                }
                FusionProduct { components, complete: hi <= *cap }
            }
            FusionRule::Product { left, right } => {
                let (la, ra) = (a / right.len(), a % right.len());
                let (lb, rb) = (b / right.len(), b % right.len());
                let fl = left.fusion(la, lb);
                let fr = right.fusion(ra, rb);
                let mut components = Vec::with_capacity(fl.components.len() * fr.components.len());
                for &(cl, ml) in &fl.components {
                    for &(cr, mr) in &fr.components {
                        components.push((cl * right.len() + cr, ml * mr));
                    }
                }
                FusionProduct { components, complete: fl.complete && fr.complete }
            }
            // A genuine fusion product always has at least one component
            // (the dimension identity forces Σ N·d = d(a)d(b) ≥ 1), so a
            // pair with no recorded components is out-of-window, not zero.
            FusionRule::Table { products } => match products.get(&(a, b)) {
                Some(c) => FusionProduct { components: c.clone(), complete: true },
                None => FusionProduct { components: vec![], complete: false },
            },
        }
    }

    /// Components of α ⊗ β, erroring when the decomposition is incomplete.
    pub fn fuse_complete(&self, a: Label, b: Label) -> Result<Vec<(Label, u32)>> {
        let f = self.fusion(a, b);
        if f.complete {
            Ok(f.components)
        } else {
            Err(QghError::IncompleteWindow {
                a: self.names[a].clone(),
                b: self.names[b].clone(),
            })
        }
    }

    /// N_{a,b}^c restricted to the enumerated window. `None` when the product
    /// is incomplete and c was not among the known components.
    pub fn multiplicity(&self, a: Label, b: Label, c: Label) -> Option<u32> {
        let f = self.fusion(a, b);
        let m = f.components.iter().find(|(l, _)| *l == c).map(|(_, m)| *m);
        match (m, f.complete) {
            (Some(m), _) => Some(m),
            (None, true) => Some(0),
            (None, false) => None,
        }
    }

    /// Materialize the structure constants of the current window into a
    /// mutable table algebra (used for fault-injection tests and export).
    pub fn to_table(&self) -> FusionAlgebra {
        let mut products = HashMap::new();
        for a in self.labels() {
            for b in self.labels() {
                let f = self.fusion(a, b);
                if f.complete && !f.components.is_empty() {
                    products.insert((a, b), f.components);
                }
            }
        }
        FusionAlgebra {
            names: self.names.clone(),
            unit: self.unit,
            conj: self.conj.clone(),
            dim: self.dim.clone(),
            rule: FusionRule::Table { products },
        }
    }

    /// Overwrite one structure constant of a table algebra. Panics when the
    /// algebra is not table-backed.
    pub fn set_table_entry(&mut self, a: Label, b: Label, c: Label, n: u32) {
        match &mut self.rule {
            FusionRule::Table { products } => {
                let entry = products.entry((a, b)).or_default();
                if let Some(slot) = entry.iter_mut().find(|(l, _)| *l == c) {
                    slot.1 = n;
                } else if n > 0 {
                    entry.push((c, n));
                }
                entry.retain(|&(_, m)| m > 0);
            }
            _ => panic!("set_table_entry requires a table-backed algebra"),
        }
    }
}

fn format_coords(c: &[i64]) -> String {
    if c.len() == 1 {
        return c[0].to_string();
    }
    let mut s = String::from("(");
    for (i, x) in c.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "{x}");
    }
    s.push(')');
    s
}

/// Dual of ℤ^rank, enumerated on the ℓ¹ ball of the given radius.
/// Labels are lattice points, N_{g,h}^k = δ_{k,g+h}, d ≡ 1, conj = negation.
pub fn zd_dual(rank: usize, radius: i64) -> Result<FusionAlgebra> {
    if rank == 0 {
        return Err(QghError::InvalidParameter { field: "rank", reason: "must be ≥ 1".into() });
    }
    if radius < 1 {
        return Err(QghError::InvalidParameter { field: "radius", reason: "must be ≥ 1".into() });
    }
    let mut coords: Vec<Vec<i64>> = Vec::new();
    let mut cur = vec![0i64; rank];
    enumerate_ball(&mut coords, &mut cur, 0, radius);
    coords.sort_by_key(|c| (c.iter().map(|x| x.abs()).sum::<i64>(), c.clone()));
    let index: HashMap<Vec<i64>, Label> =
        coords.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    let conj: Vec<Label> = coords
        .iter()
        .map(|c| index[&c.iter().map(|x| -x).collect::<Vec<_>>()])
        .collect();
    let names = coords.iter().map(|c| format_coords(c)).collect();
    Ok(FusionAlgebra {
        names,
        unit: index[&vec![0i64; rank]],
        conj,
        dim: vec![1.0; coords.len()],
        rule: FusionRule::Lattice { rank, radius, coords, index },
    })
}

fn enumerate_ball(out: &mut Vec<Vec<i64>>, cur: &mut Vec<i64>, pos: usize, budget: i64) {
    if pos == cur.len() {
        out.push(cur.clone());
        return;
    }
    for x in -budget..=budget {
        cur[pos] = x;
        enumerate_ball(out, cur, pos + 1, budget - x.abs());
    }
    cur[pos] = 0;
}

/// Group dual from an explicit finite multiplication table. Rejects
/// non-associative or non-invertible tables with the offending triple.
pub fn finite_group_dual(
    names: Vec<String>,
    unit: usize,
    table: Vec<Vec<usize>>,
) -> Result<FusionAlgebra> {
    let n = names.len();
    if unit >= n || table.len() != n || table.iter().any(|r| r.len() != n) {
        return Err(QghError::InvalidParameter {
            field: "table",
            reason: format!("expected a {n}×{n} table with unit index < {n}"),
        });
    }
    for row in &table {
        if row.iter().any(|&v| v >= n) {
            return Err(QghError::InvalidParameter {
                field: "table",
                reason: "entry out of range".into(),
            });
        }
    }
    for g in 0..n {
        if table[unit][g] != g || table[g][unit] != g {
            return Err(QghError::InvalidParameter {
                field: "unit",
                reason: format!("{} is not a two-sided identity", names[unit]),
            });
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(QghError::NonAssociative {
                        a: names[a].clone(),
                        b: names[b].clone(),
                        c: names[c].clone(),
                    });
                }
            }
        }
    }
    let mut conj = vec![usize::MAX; n];
    for g in 0..n {
        match (0..n).find(|&h| table[g][h] == unit && table[h][g] == unit) {
            Some(h) => conj[g] = h,
            None => return Err(QghError::NonInvertible { a: names[g].clone() }),
        }
    }
    Ok(FusionAlgebra {
        unit,
        conj,
        dim: vec![1.0; n],
        rule: FusionRule::FiniteGroup { table },
        names,
    })
}

/// Group dual from a user-supplied multiplication oracle over `n` elements.
pub fn group_dual_from_oracle(
    names: Vec<String>,
    unit: usize,
    mul: impl Fn(usize, usize) -> usize,
) -> Result<FusionAlgebra> {
    let n = names.len();
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
    finite_group_dual(names, unit, table)
}

/// SU(2)-type representation ring with levels 0..=level_cap.
///
/// Fusion: N_{m,n}^k = 1 iff |m−n| ≤ k ≤ m+n, with k ≡ m+n (mod 2) for SU2
/// and O_N⁺, and no parity restriction for SO3. Dimensions: m+1 (SU2),
/// 2m+1 (SO3), the Chebyshev recursion d_{m+1} = N·d_m − d_{m−1} (O_N⁺).
pub fn su2_like(kind: Su2Kind, level_cap: u32) -> Result<FusionAlgebra> {
    if level_cap < 1 {
        return Err(QghError::InvalidParameter {
            field: "level_cap",
            reason: "must be ≥ 1".into(),
        });
    }
    if let Su2Kind::OnPlus(n) = kind {
        if n < 2 {
            return Err(QghError::InvalidParameter { field: "N", reason: "must be ≥ 2".into() });
        }
    }
    let n = level_cap as usize + 1;
    let dim: Vec<f64> = match kind {
        Su2Kind::Su2 => (0..n).map(|m| (m + 1) as f64).collect(),
        Su2Kind::So3 => (0..n).map(|m| (2 * m + 1) as f64).collect(),
        Su2Kind::OnPlus(nn) => {
            let mut d = vec![1.0, nn as f64];
            while d.len() < n {
                let m = d.len();
                d.push(nn as f64 * d[m - 1] - d[m - 2]);
            }
            d.truncate(n);
            d
        }
    };
    Ok(FusionAlgebra {
        names: (0..n).map(|m| m.to_string()).collect(),
        unit: 0,
        conj: (0..n).collect(),
        dim,
        rule: FusionRule::Su2Like { kind, cap: level_cap },
    })
}

/// Product fusion algebra: labels are pairs, structure constants factorize,
/// dimensions multiply, conjugation acts componentwise.
pub fn build_product(a: &FusionAlgebra, b: &FusionAlgebra) -> FusionAlgebra {
    let (left, right) = (Arc::new(a.clone()), Arc::new(b.clone()));
    let nb = right.len();
    let total = left.len() * nb;
    let mut names = Vec::with_capacity(total);
    let mut conj = Vec::with_capacity(total);
    let mut dim = Vec::with_capacity(total);
    for la in left.labels() {
        for lb in right.labels() {
            names.push(format!("({},{})", left.name(la), right.name(lb)));
            conj.push(left.conj(la) * nb + right.conj(lb));
            dim.push(left.dim(la) * right.dim(lb));
        }
    }
    FusionAlgebra {
        names,
        unit: left.unit() * nb + right.unit(),
        conj,
        dim,
        rule: FusionRule::Product { left, right },
    }
}

// ---------------------------------------------------------------------------
// Axiom validation
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomId {
    /// conj is an involution fixing the unit, with d(α) = d(conj α) and d ≥ 1.
    Conjugation,
    /// N_{α,β}^γ = N_{conj α, γ}^β = N_{γ, conj β}^α on in-window triples.
    Frobenius,
    /// d(α)d(β) = Σ_γ N_{α,β}^γ d(γ) for fully in-window products.
    DimensionIdentity,
    /// N_{conj α, β}^unit = δ_{α,β}.
    UnitPairing,
}

#[derive(Clone, Debug)]
pub struct AxiomViolation {
    pub axiom: AxiomId,
    pub labels: Vec<String>,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub checked_pairs: usize,
    pub violations: Vec<AxiomViolation>,
    /// Largest relative defect seen in the dimension identity.
    pub max_dim_defect: f64,
}

impl AxiomReport {
    pub fn valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the fusion axioms on all in-window triples of `window`.
/// Integer comparisons are exact; the dimension identity uses a relative
/// tolerance of 1e-9. Violations are data, not failures.
pub fn validate_axioms(alg: &FusionAlgebra, window: &[Label]) -> AxiomReport {
    let mut report = AxiomReport::default();
    let in_window: Vec<bool> = {
        let mut v = vec![false; alg.len()];
        for &l in window {
            v[l] = true;
        }
        v
    };
    for &l in window {
        let c = alg.conj(l);
        if alg.conj(c) != l || alg.dim(l) < 1.0 || (alg.dim(l) - alg.dim(c)).abs() > DIM_IDENTITY_TOL {
            report.violations.push(AxiomViolation {
                axiom: AxiomId::Conjugation,
                labels: vec![alg.name(l).into()],
                lhs: alg.dim(l),
                rhs: alg.dim(c),
            });
        }
    }
    if alg.conj(alg.unit()) != alg.unit() {
        report.violations.push(AxiomViolation {
            axiom: AxiomId::Conjugation,
            labels: vec![alg.name(alg.unit()).into()],
            lhs: 0.0,
            rhs: 0.0,
        });
    }
    for &a in window {
        for &b in window {
            let f = alg.fusion(a, b);
            report.checked_pairs += 1;
            if f.complete {
                let lhs = alg.dim(a) * alg.dim(b);
                let rhs: f64 = f.components.iter().map(|&(c, m)| m as f64 * alg.dim(c)).sum();
                let defect = (lhs - rhs).abs() / lhs.abs().max(1.0);
                report.max_dim_defect = report.max_dim_defect.max(defect);
                if defect > DIM_IDENTITY_TOL {
                    report.violations.push(AxiomViolation {
                        axiom: AxiomId::DimensionIdentity,
                        labels: vec![alg.name(a).into(), alg.name(b).into()],
                        lhs,
                        rhs,
                    });
                }
                // Unit pairing collapses to a Kronecker delta.
                let ca = alg.conj(a);
                if let Some(n) = alg.multiplicity(ca, b, alg.unit()) {
                    let expect = u32::from(a == b);
                    if n != expect {
                        report.violations.push(AxiomViolation {
                            axiom: AxiomId::UnitPairing,
                            labels: vec![alg.name(a).into(), alg.name(b).into()],
                            lhs: n as f64,
                            rhs: expect as f64,
                        });
                    }
                }
            }
            for &(g, n) in &f.components {
                if !in_window[g] {
                    continue;
                }
                let n1 = alg.multiplicity(alg.conj(a), g, b);
                let n2 = alg.multiplicity(g, alg.conj(b), a);
                for (tag, other) in [(1, n1), (2, n2)] {
                    if let Some(m) = other {
                        if m != n {
                            report.violations.push(AxiomViolation {
                                axiom: AxiomId::Frobenius,
                                labels: vec![
                                    alg.name(a).into(),
                                    alg.name(b).into(),
                                    alg.name(g).into(),
                                    tag.to_string(),
                                ],
                                lhs: n as f64,
                                rhs: m as f64,
                            });
                        }
                    }
                }
            }
        }
    }
    report
}

// ---------------------------------------------------------------------------
// Fusion data files
// ---------------------------------------------------------------------------

/// On-disk fusion description. Labels are referenced by name; absent
/// (a, b, c) triples mean N_{a,b}^c = 0.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FusionFile {
    pub labels: Vec<String>,
    pub unit: String,
    pub conj: Vec<String>,
    pub dim: Vec<f64>,
    pub fusion: Vec<FusionEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FusionEntry {
    pub a: String,
    pub b: String,
    pub c: String,
    pub n: u32,
}

/// Parse a fusion data file (JSON, schema in `docs/fusion-file.md`).
pub fn load_fusion_file(text: &str) -> Result<FusionAlgebra> {
    let file: FusionFile =
        serde_json::from_str(text).map_err(|e| QghError::FusionFile(e.to_string()))?;
    fusion_file_to_algebra(&file)
}

pub fn fusion_file_to_algebra(file: &FusionFile) -> Result<FusionAlgebra> {
    let n = file.labels.len();
    if n == 0 {
        return Err(QghError::FusionFile("empty label set".into()));
    }
    if file.conj.len() != n || file.dim.len() != n {
        return Err(QghError::FusionFile(format!(
            "conj and dim must both have {n} entries"
        )));
    }
    let index: HashMap<&str, Label> =
        file.labels.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    if index.len() != n {
        return Err(QghError::FusionFile("duplicate label names".into()));
    }
    let resolve = |name: &str| -> Result<Label> {
        index
            .get(name)
            .copied()
            .ok_or_else(|| QghError::FusionFile(format!("unknown label `{name}`")))
    };
    let unit = resolve(&file.unit)?;
    let conj = file.conj.iter().map(|s| resolve(s)).collect::<Result<Vec<_>>>()?;
    let mut products: HashMap<(Label, Label), Vec<(Label, u32)>> = HashMap::new();
    for e in &file.fusion {
        if e.n == 0 {
            continue;
        }
        let (a, b, c) = (resolve(&e.a)?, resolve(&e.b)?, resolve(&e.c)?);
        products.entry((a, b)).or_default().push((c, e.n));
    }
    Ok(FusionAlgebra {
        names: file.labels.clone(),
        unit,
        conj,
        dim: file.dim.clone(),
        rule: FusionRule::Table { products },
    })
}

/// Serialize the enumerated window of an algebra into the file schema.
pub fn algebra_to_fusion_file(alg: &FusionAlgebra) -> FusionFile {
    let mut fusion = Vec::new();
    for a in alg.labels() {
        for b in alg.labels() {
            let f = alg.fusion(a, b);
            if !f.complete {
                continue;
            }
            for (c, m) in f.components {
                fusion.push(FusionEntry {
                    a: alg.name(a).into(),
                    b: alg.name(b).into(),
                    c: alg.name(c).into(),
                    n: m,
                });
            }
        }
    }
    FusionFile {
        labels: alg.names.clone(),
        unit: alg.name(alg.unit()).into(),
        conj: alg.conj.iter().map(|&c| alg.names[c].clone()).collect(),
        dim: alg.dim.clone(),
        fusion,
    }
}
