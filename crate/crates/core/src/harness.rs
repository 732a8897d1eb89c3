//! Configuration, suite orchestration, and machine-readable reports.
//!
//! A run configuration declares one system `(G, d, action)` plus the suites
//! to execute, and a run produces one JSON report with a pass/fail status,
//! worst residual, and witness per suite. Reports are deterministic for a
//! fixed config and seed list, up to the wall-time fields.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::Action;
use crate::crossed::{green_left_inner, pi_full, CrossedElem, TakaiChain};
use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::hilbert::{HModule, ModuleOperator};
use crate::linalg::{self, CMat};
use crate::reduction::{extend_operator, reduce, restrict_operator, RankOneProj};
use crate::rng::{random_cmat, rng_from_seed};
use crate::svn::{decompose, inequivalence_witness, random_heisenberg};
use crate::weyl::{fourier, fourier_inv, random_vector, schrodinger, validate_heisenberg};

pub const SUITE_NAMES: [&str; 7] = [
    "axioms",
    "fourier",
    "green",
    "bakic_guljas",
    "decompose",
    "takai",
    "inequivalence",
];

/// Action field of the configuration: `"trivial"` or one generator unitary
/// per cyclic factor, each a row-major list of `[re, im]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionSpec {
    Named(String),
    Generators { generators: Vec<Vec<[f64; 2]>> },
}

impl Default for ActionSpec {
    fn default() -> Self {
        ActionSpec::Named("trivial".into())
    }
}

/// Declarative run configuration (JSON).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    /// Cyclic orders `[n_1, ..., n_k]`.
    pub group: Vec<usize>,
    pub dim: usize,
    #[serde(default)]
    pub action: ActionSpec,
    #[serde(default = "default_suites")]
    pub suites: Vec<String>,
    #[serde(default = "default_multiplicities")]
    pub multiplicities: Vec<usize>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<String>,
}

fn default_suites() -> Vec<String> {
    SUITE_NAMES.iter().map(|s| s.to_string()).collect()
}

fn default_multiplicities() -> Vec<usize> {
    vec![1, 2]
}

fn default_seeds() -> Vec<u64> {
    vec![1, 2, 3]
}

fn default_tolerance() -> f64 {
    1e-10
}

impl RunConfig {
    pub fn trivial(group: Vec<usize>, dim: usize) -> Self {
        Self {
            group,
            dim,
            action: ActionSpec::default(),
            suites: default_suites(),
            multiplicities: default_multiplicities(),
            seeds: default_seeds(),
            tolerance: default_tolerance(),
            report: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("parse error: {e}")))?;
        Ok(cfg)
    }

    /// Validate the configuration and build the action.
    pub fn resolve(&self) -> Result<Resolved> {
        if self.group.is_empty() {
            return Err(Error::Config("group factor list is empty".into()));
        }
        if self.group.contains(&0) {
            return Err(Error::Config("cyclic orders must be >= 1".into()));
        }
        if self.dim == 0 {
            return Err(Error::Config("dim must be >= 1".into()));
        }
        if !(self.tolerance > 0.0 && self.tolerance <= 1e-2) {
            return Err(Error::Config(format!(
                "tolerance {} outside (0, 1e-2]",
                self.tolerance
            )));
        }
        for name in &self.suites {
            if !SUITE_NAMES.contains(&name.as_str()) {
                return Err(Error::Config(format!("unknown suite name {name:?}")));
            }
        }
        if self.multiplicities.is_empty() || self.multiplicities.contains(&0) {
            return Err(Error::Config("multiplicities must be positive".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::Config("at least one seed is required".into()));
        }
        let group = FiniteAbelianGroup::new(&self.group)
            .map_err(|e| Error::Config(format!("invalid group: {e}")))?;
        let action = match &self.action {
            ActionSpec::Named(name) if name == "trivial" => Action::trivial(group, self.dim),
            ActionSpec::Named(name) => {
                return Err(Error::Config(format!("unknown action name {name:?}")))
            }
            ActionSpec::Generators { generators } => {
                if generators.len() != self.group.len() {
                    return Err(Error::Config(format!(
                        "need {} generator unitaries, got {}",
                        self.group.len(),
                        generators.len()
                    )));
                }
                let d = self.dim;
                let mut mats = Vec::with_capacity(generators.len());
                for (gi, flat) in generators.iter().enumerate() {
                    if flat.len() != d * d {
                        return Err(Error::Config(format!(
                            "generator {gi} has {} entries, expected {} for a {d}x{d} matrix",
                            flat.len(),
                            d * d
                        )));
                    }
                    let mut m = CMat::zeros(d, d);
                    for (pos, [re, im]) in flat.iter().enumerate() {
                        m[(pos / d, pos % d)] = num_complex::Complex64::new(*re, *im);
                    }
                    mats.push(m);
                }
                Action::from_generators(group, &mats).map_err(|e| {
                    Error::Config(format!("action generators failed validation: {e}"))
                })?
            }
        };
        Ok(Resolved {
            action,
            suites: self.suites.clone(),
            multiplicities: self.multiplicities.clone(),
            seeds: self.seeds.clone(),
            tolerance: self.tolerance,
        })
    }
}

/// A validated configuration with its constructed action.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub action: Action,
    pub suites: Vec<String>,
    pub multiplicities: Vec<usize>,
    pub seeds: Vec<u64>,
    pub tolerance: f64,
}

/// One named residual check inside a suite.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckReport {
    fn new(name: &str, residual: f64, tolerance: f64, witness: Option<String>) -> Self {
        Self {
            name: name.into(),
            residual,
            tolerance,
            pass: residual <= tolerance,
            witness,
        }
    }
}

/// Per-suite report entry. `worst_residual` and `tolerance` come from the
/// check with the largest residual-to-gate ratio, so
/// `status == "pass"` iff `worst_residual <= tolerance`.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub property: String,
    pub status: String,
    pub worst_residual: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub checks: Vec<CheckReport>,
    pub wall_time_ms: u64,
}

impl SuiteReport {
    fn assemble(name: &str, property: &str, checks: Vec<CheckReport>, started: Instant) -> Self {
        let dominating = checks
            .iter()
            .max_by(|a, b| {
                let ra = a.residual / a.tolerance;
                let rb = b.residual / b.tolerance;
                ra.partial_cmp(&rb).unwrap()
            })
            .expect("suite has checks");
        let status = if checks.iter().all(|c| c.pass) {
            "pass"
        } else {
            "fail"
        };
        Self {
            name: name.into(),
            property: property.into(),
            status: status.into(),
            worst_residual: dominating.residual,
            tolerance: dominating.tolerance,
            witness: dominating.witness.clone(),
            checks,
            wall_time_ms: started.elapsed().as_millis() as u64,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// Full verification report for one configuration.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: String,
    pub status: String,
    pub config: RunConfig,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Write atomically: temp file in the target directory, then rename.
    pub fn write(&self, path: &std::path::Path) -> Result<()> {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, self.to_json())?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// Execute the configured suites. Suites run in parallel when the
/// environment allows it (`MODWEYL_THREADS` caps the worker count); the
/// report order is the configured suite order regardless.
pub fn run(config: &RunConfig) -> Result<Report> {
    let resolved = config.resolve()?;
    let jobs: Vec<String> = resolved.suites.clone();
    let execute = |name: &String| -> SuiteReport { run_suite(name, &resolved) };
    let suites: Vec<SuiteReport> = match thread_cap() {
        Some(1) => jobs.iter().map(execute).collect(),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            pool.install(|| {
                use rayon::prelude::*;
                jobs.par_iter().map(execute).collect()
            })
        }
        None => {
            use rayon::prelude::*;
            jobs.par_iter().map(execute).collect()
        }
    };
    let status = if suites.iter().all(|s| s.passed()) {
        "pass"
    } else {
        "fail"
    };
    let report = Report {
        version: env!("CARGO_PKG_VERSION").into(),
        status: status.into(),
        config: config.clone(),
        suites,
    };
    if let Some(path) = &config.report {
        report.write(std::path::Path::new(path))?;
    }
    Ok(report)
}

fn thread_cap() -> Option<usize> {
    std::env::var("MODWEYL_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|k| *k >= 1)
}

fn run_suite(name: &str, resolved: &Resolved) -> SuiteReport {
    let started = Instant::now();
    let outcome = match name {
        "axioms" => suite_axioms(resolved),
        "fourier" => suite_fourier(resolved),
        "green" => suite_green(resolved),
        "bakic_guljas" => suite_bakic_guljas(resolved),
        "decompose" => suite_decompose(resolved),
        "takai" => suite_takai(resolved),
        "inequivalence" => suite_inequivalence(resolved),
        other => unreachable!("unknown suite {other} survived validation"),
    };
    match outcome {
        Ok((property, checks)) => SuiteReport::assemble(name, property, checks, started),
        Err(e) => SuiteReport::assemble(
            name,
            "suite execution",
            vec![CheckReport::new(
                "execution",
                f64::INFINITY,
                resolved.tolerance,
                Some(format!("error: {e}")),
            )],
            started,
        ),
    }
}

type SuiteOutcome = Result<(&'static str, Vec<CheckReport>)>;

/// The canonical quadruple passes the seven defining axioms.
fn suite_axioms(resolved: &Resolved) -> SuiteOutcome {
    let tol = resolved.tolerance;
    let rep = schrodinger(&resolved.action)?;
    let report = validate_heisenberg(&rep, tol)?;
    let checks = report
        .checks
        .iter()
        .map(|c| CheckReport::new(c.axiom, c.residual, tol, Some(c.witness.clone())))
        .collect();
    Ok((
        "canonical quadruple satisfies the covariant Weyl axioms",
        checks,
    ))
}

/// The generalized Fourier transform is a *-isomorphism onto the pointwise
/// algebra, with exact inversion.
fn suite_fourier(resolved: &Resolved) -> SuiteOutcome {
    let tol = resolved.tolerance;
    let action = &resolved.action;
    let group = action.group().clone();
    let d = action.dim();
    let iota = Action::trivial(group.clone(), d);
    let mut rng = rng_from_seed(resolved.seeds[0] ^ 0xF0F0);
    let mut conv_res = 0.0f64;
    let mut inv_res = 0.0f64;
    let mut round_res = 0.0f64;
    for _ in 0..50 {
        let f = CrossedElem::random_matrix_kind(&iota, &mut rng);
        let h = CrossedElem::random_matrix_kind(&iota, &mut rng);
        let conv = fourier(&group, &f.convolve(&h)?.matrix_values())?;
        let ff = fourier(&group, &f.matrix_values())?;
        let fh = fourier(&group, &h.matrix_values())?;
        for (i, m) in conv.iter().enumerate() {
            conv_res = conv_res.max(linalg::op_norm(&(m - &ff[i] * &fh[i])));
        }
        let inv = fourier(&group, &f.involute()?.matrix_values())?;
        for (i, m) in inv.iter().enumerate() {
            inv_res = inv_res.max(linalg::op_norm(&(m - ff[i].adjoint())));
        }
        let back = fourier_inv(&group, &ff)?;
        for (i, m) in back.iter().enumerate() {
            round_res = round_res.max(linalg::op_norm(&(m - f.matrix_value(i))));
        }
    }
    Ok((
        "generalized Fourier transform is a *-isomorphism with exact inversion",
        vec![
            CheckReport::new("convolution to product", conv_res, tol, None),
            CheckReport::new("involution to adjoint", inv_res, tol, None),
            CheckReport::new("inverse round trip", round_res, tol, None),
        ],
    ))
}

/// Imprimitivity structure: the integrated form of the bimodule inner
/// product acts as the compact generator it names, with positive diagonal.
fn suite_green(resolved: &Resolved) -> SuiteOutcome {
    let tol = resolved.tolerance;
    let action = &resolved.action;
    let home = HModule::l2(action.clone());
    let mut rng = rng_from_seed(resolved.seeds[0] ^ 0x9E3779);
    let mut compat_res = 0.0f64;
    for _ in 0..50 {
        let phi = random_vector(&home, &mut rng);
        let psi = random_vector(&home, &mut rng);
        let theta_vec = random_vector(&home, &mut rng);
        let op = pi_full(&green_left_inner(&phi, &psi)?)?;
        let lhs = op.apply(&theta_vec)?;
        let rhs = phi.right_act(&psi.inner(&theta_vec)?)?;
        compat_res = compat_res.max(linalg::op_norm(&(lhs.stacked() - rhs.stacked())));
    }
    let mut pos_res = 0.0f64;
    for _ in 0..10 {
        let phi = random_vector(&home, &mut rng);
        let op = pi_full(&green_left_inner(&phi, &phi)?)?;
        let herm = (op.matrix() + op.matrix().adjoint()).scale(0.5);
        let min_eig = linalg::hermitian_eigenvalues(&herm)
            .first()
            .copied()
            .unwrap_or(0.0);
        pos_res = pos_res.max((-min_eig).max(0.0));
        pos_res = pos_res.max(linalg::op_norm(&(op.matrix() - op.matrix().adjoint())));
    }
    let n = action.group().order();
    let d = action.dim();
    let mut coords = Vec::new();
    for _ in 0..(2 * n * n * d * d) {
        let phi = random_vector(&home, &mut rng);
        let psi = random_vector(&home, &mut rng);
        coords.push(green_left_inner(&phi, &psi)?.coordinates());
    }
    let mut stacked = CMat::zeros(coords[0].len(), coords.len());
    for (j, v) in coords.iter().enumerate() {
        stacked.set_column(j, v);
    }
    let rank = linalg::numerical_rank(&stacked);
    let full = n * n * d * d;
    Ok((
        "bimodule inner products integrate to compact generators and fill the crossed algebra",
        vec![
            CheckReport::new("imprimitivity compatibility", compat_res, tol, None),
            CheckReport::new("left inner positivity", pos_res, tol, None),
            CheckReport::new(
                "left fullness",
                if rank == full { 0.0 } else { 1.0 },
                tol,
                Some(format!("span rank {rank} of {full}")),
            ),
        ],
    ))
}

/// Rank-one compression restricts operators isometrically and
/// multiplicatively onto the reduced Hilbert space, with exact extension.
fn suite_bakic_guljas(resolved: &Resolved) -> SuiteOutcome {
    let tol = resolved.tolerance;
    let action = &resolved.action;
    let home = HModule::l2(action.clone());
    let p = RankOneProj::standard(action.dim())?;
    let red = reduce(&home, &p)?;
    let nd = home.stacked_dim();
    let mut rng = rng_from_seed(resolved.seeds[0] ^ 0xBA41C);
    let mut mult_res = 0.0f64;
    let mut adj_res = 0.0f64;
    let mut iso_res = 0.0f64;
    let mut ext_res = 0.0f64;
    for _ in 0..50 {
        let s = ModuleOperator::from_matrix(&home, random_cmat(nd, nd, &mut rng))?;
        let t = ModuleOperator::from_matrix(&home, random_cmat(nd, nd, &mut rng))?;
        let rs = restrict_operator(&s, &red)?;
        let rt = restrict_operator(&t, &red)?;
        let prod = restrict_operator(&s.compose(&t)?, &red)?;
        mult_res = mult_res.max(linalg::op_norm(&(prod - &rs * &rt)));
        let adj = restrict_operator(&s.adjoint(), &red)?;
        adj_res = adj_res.max(linalg::op_norm(&(adj - rs.adjoint())));
        iso_res = iso_res.max((s.norm() - linalg::op_norm(&rs)).abs());
        let l = random_cmat(nd, nd, &mut rng);
        let back = restrict_operator(&extend_operator(&l, &red)?, &red)?;
        ext_res = ext_res.max(linalg::op_norm(&(back - l)));
    }
    Ok((
        "rank-one compression is a C*-isomorphism onto the reduced Hilbert space",
        vec![
            CheckReport::new("multiplicative", mult_res, tol, None),
            CheckReport::new("adjoint-preserving", adj_res, tol, None),
            CheckReport::new("isometric", iso_res, 100.0 * tol, None),
            CheckReport::new("extend then restrict", ext_res, tol, None),
        ],
    ))
}

/// Oracle round trip: seeded multiples of the canonical quadruple are
/// decomposed back to their exact multiplicity with small residuals.
fn suite_decompose(resolved: &Resolved) -> SuiteOutcome {
    let tol = resolved.tolerance;
    let action = &resolved.action;
    let mut mismatches = 0usize;
    let mut worst_intertwine = 0.0f64;
    let mut worst_unitary = 0.0f64;
    let mut witness = None;
    for &m in &resolved.multiplicities {
        for &seed in &resolved.seeds {
            let rep = random_heisenberg(action, m, seed)?;
            let dec = decompose(&rep, tol)?;
            if dec.multiplicity != m || dec.projection_rank != m {
                mismatches += 1;
                witness = Some(format!(
                    "m={m} seed={seed}: got multiplicity {} rank {}",
                    dec.multiplicity, dec.projection_rank
                ));
            }
            if dec.worst_residual() > worst_intertwine {
                worst_intertwine = dec.worst_residual();
            }
            let wu = dec
                .w
                .compose(&dec.w.adjoint())?
                .distance(&ModuleOperator::identity(dec.w.codomain()))?;
            worst_unitary = worst_unitary.max(wu);
        }
    }
    Ok((
        "every seeded oracle decomposes to its exact multiplicity",
        vec![
            CheckReport::new("multiplicity recovery", mismatches as f64, tol, witness),
            CheckReport::new("intertwining residual", worst_intertwine, 100.0 * tol, None),
            CheckReport::new("intertwiner unitarity", worst_unitary, 100.0 * tol, None),
        ],
    ))
}

/// The duality chain is a unital *-isomorphism onto the matrix tensor
/// square, dimensions agreeing exactly.
fn suite_takai(resolved: &Resolved) -> SuiteOutcome {
    let tol = resolved.tolerance;
    let action = &resolved.action;
    let chain = TakaiChain::new(action)?;
    let mut rng = rng_from_seed(resolved.seeds[0] ^ 0x7A4A);
    let report = chain.verify(10, &mut rng)?;
    let dims_ok = report.crossed_dim == report.target_dim && report.rank == report.target_dim;
    Ok((
        "crossed algebra is *-isomorphic to the matrix tensor square",
        vec![
            CheckReport::new(
                "dimension and rank",
                if dims_ok { 0.0 } else { 1.0 },
                tol,
                Some(format!(
                    "crossed {} target {} rank {}",
                    report.crossed_dim, report.target_dim, report.rank
                )),
            ),
            CheckReport::new("unit preserved", report.unit_residual, tol, None),
            CheckReport::new("multiplicative", report.mult_residual, tol, None),
            CheckReport::new("adjoint-preserving", report.adjoint_residual, tol, None),
        ],
    ))
}

/// Distinct actions admit a witness pair obstructing unitary equivalence;
/// equal actions admit none.
fn suite_inequivalence(resolved: &Resolved) -> SuiteOutcome {
    let tol = resolved.tolerance;
    let action = &resolved.action;
    let group = action.group().clone();
    let d = action.dim();
    let mut checks = Vec::new();
    // self comparison must return absence
    let self_witness = inequivalence_witness(action, action, tol)?;
    checks.push(CheckReport::new(
        "equal actions yield absence",
        self_witness.as_ref().map(|w| w.gap).unwrap_or(0.0),
        tol,
        self_witness.map(|w| format!("unexpected witness at {}", w.x)),
    ));
    if d >= 2 && group.order() >= 2 {
        let iota = Action::trivial(group.clone(), d);
        let other = if action.is_trivial() {
            canonical_nontrivial_action(&group, d)?
        } else {
            action.clone()
        };
        let witness = inequivalence_witness(&iota, &other, tol)?;
        let (residual, note) = match &witness {
            Some(w) => (
                0.0,
                format!(
                    "witness x={} e_{}{} gap {:.3e}",
                    w.x, w.unit_row, w.unit_col, w.gap
                ),
            ),
            None => (1.0, "no witness found for distinct actions".into()),
        };
        checks.push(CheckReport::new(
            "distinct actions yield a witness",
            residual,
            tol,
            Some(note),
        ));
    }
    Ok((
        "action mismatch witnesses obstruct unitary equivalence",
        checks,
    ))
}

/// A canonical nontrivial inner action for `d >= 2`: each cyclic generator
/// maps to `diag(1, omega_{n_j}, 1, ...)`.
pub fn canonical_nontrivial_action(group: &FiniteAbelianGroup, d: usize) -> Result<Action> {
    if d < 2 {
        return Err(Error::Config(
            "a nontrivial inner action needs d >= 2".into(),
        ));
    }
    let mut gens = Vec::with_capacity(group.factors().len());
    for &n in group.factors() {
        let mut m = linalg::identity(d);
        m[(1, 1)] = num_complex::Complex64::from_polar(1.0, std::f64::consts::TAU / n as f64);
        gens.push(m);
    }
    Action::from_generators(group.clone(), &gens)
}

/// The default verification grid: groups `Z_2, Z_3, Z_4, Z_2 x Z_2` with
/// `d in {1, 2}`, trivial action everywhere plus the canonical nontrivial
/// action for `d = 2`.
pub fn default_grid() -> Vec<RunConfig> {
    let groups: [&[usize]; 4] = [&[2], &[3], &[4], &[2, 2]];
    let mut out = Vec::new();
    for factors in groups {
        for d in [1usize, 2] {
            out.push(RunConfig::trivial(factors.to_vec(), d));
            if d == 2 {
                let group = FiniteAbelianGroup::new(factors).expect("grid group");
                let action = canonical_nontrivial_action(&group, d).expect("grid action");
                let generators = group
                    .factors()
                    .iter()
                    .enumerate()
                    .map(|(j, _)| {
                        let mut gen = Vec::with_capacity(d * d);
                        let mat = action_generator(&action, j);
                        for r in 0..d {
                            for c in 0..d {
                                gen.push([mat[(r, c)].re, mat[(r, c)].im]);
                            }
                        }
                        gen
                    })
                    .collect();
                let mut cfg = RunConfig::trivial(factors.to_vec(), d);
                cfg.action = ActionSpec::Generators { generators };
                out.push(cfg);
            }
        }
    }
    out
}

/// Unitary assigned to the `j`-th cyclic generator of the action's group.
fn action_generator(action: &Action, j: usize) -> CMat {
    let group = action.group();
    let coords: Vec<i64> = (0..group.factors().len())
        .map(|i| if i == j { 1 } else { 0 })
        .collect();
    let x = group.element(&coords).expect("generator coordinates");
    action.unitary(&x).expect("generator unitary").clone()
}

/// Serialized outcome of a single decomposition (CLI `decompose` output).
#[derive(Debug, Clone, Serialize)]
pub struct DecomposeRecord {
    pub m: usize,
    pub residuals: ResidualTriple,
    #[serde(rename = "W_checksum")]
    pub w_checksum: String,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualTriple {
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "S")]
    pub s: f64,
    pub rho: f64,
}

/// Run one seeded oracle decomposition for the configured system.
pub fn decompose_record(config: &RunConfig, m: usize, seed: u64) -> Result<DecomposeRecord> {
    if m == 0 {
        return Err(Error::Config("multiplicity must be >= 1".into()));
    }
    let resolved = config.resolve()?;
    let rep = random_heisenberg(&resolved.action, m, seed)?;
    let dec = decompose(&rep, resolved.tolerance)?;
    Ok(DecomposeRecord {
        m: dec.multiplicity,
        residuals: ResidualTriple {
            r: dec.residual_r,
            s: dec.residual_s,
            rho: dec.residual_rho,
        },
        w_checksum: dec.w_checksum(),
        seed,
    })
}

/// Printable walkthrough: the order-two Weyl matrices, the Fourier table,
/// and a seeded multiplicity-two decomposition. Deterministic per version.
pub fn demo() -> Result<String> {
    use std::fmt::Write as _;
    let mut out = String::new();
    let group = FiniteAbelianGroup::cyclic(2)?;
    let action = Action::trivial(group.clone(), 1);
    let rep = schrodinger(&action)?;
    let x1 = group.element(&[1])?;
    let chi1 = group.character(&[1])?;
    let u1 = rep.r(&x1)?.clone();
    let v1 = rep.s(&chi1)?.clone();
    writeln!(out, "system: G = Z_2, coefficients M_1(C), trivial action").unwrap();
    writeln!(out, "translation unitary R(1):").unwrap();
    write_matrix(&mut out, u1.matrix());
    writeln!(out, "modulation unitary S(chi_1):").unwrap();
    write_matrix(&mut out, v1.matrix());
    let lhs = v1.compose(&u1)?;
    let rhs = u1
        .compose(&v1)?
        .scale(num_complex::Complex64::new(-1.0, 0.0));
    writeln!(out, "S(chi_1) R(1):").unwrap();
    write_matrix(&mut out, lhs.matrix());
    writeln!(out, "-R(1) S(chi_1):").unwrap();
    write_matrix(&mut out, rhs.matrix());
    writeln!(out, "commutation residual: {:.1e}\n", lhs.distance(&rhs)?).unwrap();

    writeln!(
        out,
        "Fourier table on Z_2 (rows: point masses on characters):"
    )
    .unwrap();
    for ci in 0..2usize {
        let mut f = vec![CMat::zeros(1, 1); 2];
        f[ci][(0, 0)] = num_complex::Complex64::new(1.0, 0.0);
        let table = fourier(&group, &f)?;
        writeln!(
            out,
            "  delta_chi{ci} -> ({:+.0}, {:+.0})",
            table[0][(0, 0)].re,
            table[1][(0, 0)].re
        )
        .unwrap();
    }
    writeln!(out).unwrap();

    let seed = 7u64;
    writeln!(
        out,
        "decomposition of a seeded multiplicity-2 oracle (seed {seed}):"
    )
    .unwrap();
    let rep2 = random_heisenberg(&action, 2, seed)?;
    let dec = decompose(&rep2, 1e-10)?;
    writeln!(out, "  recovered multiplicity: {}", dec.multiplicity).unwrap();
    writeln!(
        out,
        "  intertwining residuals: R {:.1e}, S {:.1e}, rho {:.1e}",
        dec.residual_r, dec.residual_s, dec.residual_rho
    )
    .unwrap();
    writeln!(out, "  intertwiner checksum: {}", dec.w_checksum()).unwrap();
    let ok = dec.multiplicity == 2 && dec.worst_residual() < 1e-8;
    writeln!(
        out,
        "{}",
        if ok {
            "all demo checks passed"
        } else {
            "demo checks FAILED"
        }
    )
    .unwrap();
    if !ok {
        return Err(Error::Validation {
            axiom: "demo decomposition".into(),
            worst: dec.worst_residual(),
        });
    }
    Ok(out)
}

fn write_matrix(out: &mut String, m: &CMat) {
    use std::fmt::Write as _;
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|c| {
                let z = m[(r, c)];
                let re = if z.re == 0.0 { 0.0 } else { z.re };
                let im = if z.im == 0.0 { 0.0 } else { z.im };
                if im.abs() < 1e-12 {
                    format!("{re:+.0}")
                } else {
                    format!("{re:+.0}{im:+.0}i")
                }
            })
            .collect();
        writeln!(out, "  [{}]", row.join(", ")).unwrap();
    }
}
