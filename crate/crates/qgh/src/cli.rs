//! Batch front-end. Every subcommand echoes its full config into the output
//! header, so a report is reproducible from its own first lines.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::dirac::{lip_seminorm, rd_scan, truncated_seminorm};
use crate::element::Element;
use crate::error::{QghError, Result};
use crate::fusion::{
    build_product, finite_group_dual, load_fusion_file, su2_like, validate_axioms, zd_dual,
    FusionAlgebra, Label, Su2Kind,
};
use crate::length::{folner_ratio_curve, shell_profile, word_length};
use crate::metrics::{convergence_study, StudyConfig};
use crate::multiplier::folner_multiplier;
use crate::report;

#[derive(Parser)]
#[command(name = "qgh", version, about = "fusion-algebra truncation laboratory")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a fusion algebra and validate its axioms on the full window.
    Algebra(AlgebraArgs),
    /// Shell/growth profile σ(n) with cumulative sums.
    Growth(GrowthArgs),
    /// Følner boundary ratios over a Λ list.
    Folner(FolnerArgs),
    /// Rapid-decay scan: sampled norm ratios against the theoretical constant.
    Rd(RdArgs),
    /// Lip-seminorm sweep over window levels.
    Lip(LipArgs),
    /// The multiplier φ_Λ as a label table.
    Multiplier(MultiplierArgs),
    /// Per-Λ convergence study (Følner ratio, brackets, MK bounds).
    Converge(ConvergeArgs),
}

#[derive(Args, Clone)]
struct AlgebraSpec {
    /// Builtin family: zdual | su2 | so3 | onplus | product-zdual, or `file`.
    #[arg(long)]
    algebra: String,
    /// Lattice rank for zdual.
    #[arg(long, default_value_t = 1)]
    rank: usize,
    /// ℓ¹ enumeration radius for zdual.
    #[arg(long, default_value_t = 60)]
    radius: i64,
    /// Level cap for su2 / so3 / onplus.
    #[arg(long, default_value_t = 40)]
    cap: u32,
    /// N parameter for onplus.
    #[arg(long, default_value_t = 3)]
    n_param: u32,
    /// Fusion data file (JSON) when --algebra file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Comma-free generator list (`;`-separated label names). Defaults to the
    /// standard generators of the builtin family.
    #[arg(long)]
    generators: Option<String>,
}

impl AlgebraSpec {
    fn build(&self) -> Result<(FusionAlgebra, Vec<Label>)> {
        let alg = match self.algebra.as_str() {
            "zdual" => zd_dual(self.rank, self.radius)?,
            "su2" => su2_like(Su2Kind::Su2, self.cap)?,
            "so3" => su2_like(Su2Kind::So3, self.cap)?,
            "onplus" => su2_like(Su2Kind::OnPlus(self.n_param), self.cap)?,
            "product-zdual" => {
                let z = zd_dual(1, self.radius)?;
                build_product(&z, &z)
            }
            "file" => {
                let path = self.file.as_ref().ok_or(QghError::InvalidParameter {
                    field: "file",
                    reason: "required with --algebra file".into(),
                })?;
                let text = std::fs::read_to_string(path)?;
                load_fusion_file(&text)?
            }
            other => {
                return Err(QghError::InvalidParameter {
                    field: "algebra",
                    reason: format!("unknown family `{other}`"),
                })
            }
        };
        let generators = match &self.generators {
            Some(list) => list
                .split(';')
                .map(|name| {
                    alg.label_by_name(name).ok_or_else(|| QghError::InvalidParameter {
                        field: "generators",
                        reason: format!("unknown label `{name}`"),
                    })
                })
                .collect::<Result<Vec<_>>>()?,
            None => default_generators(&alg)?,
        };
        Ok((alg, generators))
    }

    fn echo(&self) -> Vec<(&'static str, String)> {
        let mut v = vec![("algebra", self.algebra.clone())];
        match self.algebra.as_str() {
            "zdual" | "product-zdual" => {
                v.push(("rank", self.rank.to_string()));
                v.push(("radius", self.radius.to_string()));
            }
            "onplus" => {
                v.push(("n_param", self.n_param.to_string()));
                v.push(("cap", self.cap.to_string()));
            }
            "file" => {
                if let Some(f) = &self.file {
                    v.push(("file", f.display().to_string()));
                }
            }
            _ => v.push(("cap", self.cap.to_string())),
        }
        if let Some(g) = &self.generators {
            v.push(("generators", g.clone()));
        }
        v
    }
}

fn default_generators(alg: &FusionAlgebra) -> Result<Vec<Label>> {
    if let Some(rank) = alg.lattice_rank() {
        let mut gens = Vec::new();
        for axis in 0..rank {
            for sign in [1i64, -1] {
                let mut c = vec![0i64; rank];
                c[axis] = sign;
                let l = alg
                    .labels()
                    .find(|&l| alg.lattice_coords(l) == Some(c.as_slice()))
                    .expect("unit vectors lie inside any radius ≥ 1 ball");
                gens.push(l);
            }
        }
        return Ok(gens);
    }
    if alg.level(0).is_some() {
        return Ok(vec![1]);
    }
    Err(QghError::InvalidParameter {
        field: "generators",
        reason: "no default generators for this algebra; pass --generators".into(),
    })
}

#[derive(Args)]
struct AlgebraArgs {
    #[command(flatten)]
    spec: AlgebraSpec,
}

#[derive(Args)]
struct GrowthArgs {
    #[command(flatten)]
    spec: AlgebraSpec,
    #[arg(long, default_value_t = 40)]
    nmax: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FolnerArgs {
    #[command(flatten)]
    spec: AlgebraSpec,
    /// Comma-separated Λ list, ascending.
    #[arg(long, value_delimiter = ',')]
    lambda: Vec<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RdArgs {
    #[command(flatten)]
    spec: AlgebraSpec,
    #[arg(long)]
    s: f64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 10.0)]
    support_cap: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LipArgs {
    #[command(flatten)]
    spec: AlgebraSpec,
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Window levels to sweep.
    #[arg(long, value_delimiter = ',')]
    windows: Vec<f64>,
    /// Sparse element `name:re:im;name:re:im`. Defaults to Σ δ_g over the
    /// generators.
    #[arg(long)]
    element: Option<String>,
    /// Use the compressed truncation seminorm instead of the window value.
    #[arg(long, default_value_t = false)]
    truncated: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MultiplierArgs {
    #[command(flatten)]
    spec: AlgebraSpec,
    #[arg(long)]
    lambda: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergeArgs {
    #[command(flatten)]
    spec: AlgebraSpec,
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long, value_delimiter = ',')]
    lambda: Vec<f64>,
    #[arg(long, default_value_t = 10)]
    samples: usize,
    #[arg(long, default_value_t = 3)]
    iterations: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_element(alg: &FusionAlgebra, text: &str) -> Result<Element> {
    let mut pairs = Vec::new();
    for item in text.split(';').filter(|s| !s.is_empty()) {
        let bad = || QghError::InvalidParameter {
            field: "element",
            reason: format!("expected `name:re:im`, got `{item}`"),
        };
        let mut parts = item.rsplitn(3, ':');
        let im: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let re: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let name = parts.next().ok_or_else(bad)?;
        let l = alg.label_by_name(name).ok_or_else(|| QghError::InvalidParameter {
            field: "element",
            reason: format!("unknown label `{name}`"),
        })?;
        pairs.push((l, Complex64::new(re, im)));
    }
    Ok(Element::from_pairs(pairs))
}

fn emit(out: &Option<PathBuf>, name: &str, text: &str) -> Result<()> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(name), text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn ascending(lambdas: &[f64]) -> Result<()> {
    if lambdas.is_empty() {
        return Err(QghError::InvalidParameter {
            field: "lambda",
            reason: "empty Λ list".into(),
        });
    }
    if lambdas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(QghError::InvalidParameter {
            field: "lambda",
            reason: "Λ list must be strictly ascending".into(),
        });
    }
    Ok(())
}

fn list_echo(l: &[f64]) -> String {
    l.iter().map(|v| report::fmt_f64(*v)).collect::<Vec<_>>().join(",")
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Algebra(a) => {
            let (alg, _) = a.spec.build()?;
            // A file-provided group table gets the stricter group checks:
            // associativity and invertibility, with the offending triple.
            if a.spec.algebra == "file" && alg.is_group_dual() {
                let names: Vec<String> =
                    alg.labels().map(|l| alg.name(l).to_string()).collect();
                let mut table = vec![vec![0usize; alg.len()]; alg.len()];
                let mut is_group = true;
                'outer: for x in alg.labels() {
                    for y in alg.labels() {
                        let f = alg.fusion(x, y);
                        if f.complete && f.components.len() == 1 && f.components[0].1 == 1 {
                            table[x][y] = f.components[0].0;
                        } else {
                            is_group = false;
                            break 'outer;
                        }
                    }
                }
                if is_group {
                    finite_group_dual(names, alg.unit(), table)?;
                }
            }
            let window: Vec<Label> = alg.labels().collect();
            let rep = validate_axioms(&alg, &window);
            println!(
                "labels = {}, checked pairs = {}, max dimension defect = {:e}",
                alg.len(),
                rep.checked_pairs,
                rep.max_dim_defect
            );
            if rep.valid() {
                println!("axioms: ok");
                Ok(())
            } else {
                for v in rep.violations.iter().take(20) {
                    println!(
                        "violation {:?} at [{}]: {} vs {}",
                        v.axiom,
                        v.labels.join(", "),
                        v.lhs,
                        v.rhs
                    );
                }
                Err(QghError::InvalidParameter {
                    field: "algebra",
                    reason: format!("{} axiom violations", rep.violations.len()),
                })
            }
        }
        Cmd::Growth(a) => {
            let (alg, gens) = a.spec.build()?;
            let ell = word_length(&alg, &gens)?;
            let table = shell_profile(&alg, &ell, a.nmax)?;
            let mut cfg = a.spec.echo();
            cfg.push(("nmax", a.nmax.to_string()));
            emit(&a.out, "growth.csv", &report::growth_csv(&cfg, &table))
        }
        Cmd::Folner(a) => {
            ascending(&a.lambda)?;
            let (alg, gens) = a.spec.build()?;
            let ell = word_length(&alg, &gens)?;
            let reports = folner_ratio_curve(&alg, &ell, &gens, &a.lambda)?;
            let mut cfg = a.spec.echo();
            cfg.push(("lambda", list_echo(&a.lambda)));
            emit(&a.out, "folner.csv", &report::folner_csv(&cfg, &reports))
        }
        Cmd::Rd(a) => {
            let (alg, gens) = a.spec.build()?;
            let ell = word_length(&alg, &gens)?;
            let r = rd_scan(&alg, &ell, a.s, a.samples, a.support_cap, a.seed)?;
            let mut cfg = a.spec.echo();
            cfg.push(("s", report::fmt_f64(a.s)));
            cfg.push(("samples", a.samples.to_string()));
            cfg.push(("support_cap", report::fmt_f64(a.support_cap)));
            cfg.push(("seed", a.seed.to_string()));
            let mut doc = report::CsvDoc::new(&cfg, &["worst_ratio", "c_theory", "pass"]);
            doc.row(&[
                report::fmt_f64(r.worst_ratio),
                report::fmt_f64(r.c_theory),
                (r.worst_ratio <= r.c_theory).to_string(),
            ]);
            emit(&a.out, "rd.csv", &doc.finish())
        }
        Cmd::Lip(a) => {
            ascending(&a.windows)?;
            let (alg, gens) = a.spec.build()?;
            let ell = word_length(&alg, &gens)?;
            let f = match &a.element {
                Some(text) => parse_element(&alg, text)?,
                None => Element::from_pairs(
                    gens.iter().map(|&g| (g, Complex64::new(1.0, 0.0))),
                ),
            };
            let mut rows = Vec::new();
            for &n in &a.windows {
                let v = if a.truncated {
                    truncated_seminorm(&alg, &ell, &f, a.k, n)?
                } else {
                    lip_seminorm(&alg, &ell, &f, a.k, n)?
                };
                rows.push((n, a.k, v.value, v.converged));
            }
            let mut cfg = a.spec.echo();
            cfg.push(("k", a.k.to_string()));
            cfg.push(("windows", list_echo(&a.windows)));
            cfg.push(("truncated", a.truncated.to_string()));
            if let Some(e) = &a.element {
                cfg.push(("element", e.clone()));
            }
            emit(&a.out, "lip.csv", &report::seminorm_csv(&cfg, &rows))
        }
        Cmd::Multiplier(a) => {
            let (alg, gens) = a.spec.build()?;
            let ell = word_length(&alg, &gens)?;
            let phi = folner_multiplier(&alg, &ell, a.lambda)?;
            let mut cfg = a.spec.echo();
            cfg.push(("lambda", report::fmt_f64(a.lambda)));
            emit(&a.out, "multiplier.csv", &report::multiplier_csv(&cfg, &alg, &phi))
        }
        Cmd::Converge(a) => {
            ascending(&a.lambda)?;
            let (alg, gens) = a.spec.build()?;
            let ell = word_length(&alg, &gens)?;
            let study = StudyConfig {
                k: a.k,
                lambdas: a.lambda.clone(),
                samples: a.samples,
                iterations: a.iterations,
                seed: a.seed,
            };
            let rep = convergence_study(&alg, &ell, &gens, &study)?;
            let mut cfg = a.spec.echo();
            cfg.push(("k", a.k.to_string()));
            cfg.push(("lambda", list_echo(&a.lambda)));
            cfg.push(("samples", a.samples.to_string()));
            cfg.push(("iterations", a.iterations.to_string()));
            cfg.push(("seed", a.seed.to_string()));
            emit(&a.out, "converge.csv", &report::convergence_csv(&cfg, &rep))
        }
    }
}

/// Parse and run; returns the process exit code (0 ok, 2 config, 1 numeric).
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return 2;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
