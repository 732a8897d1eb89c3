//! Representation quadruples `(X, rho, R, S)` for a system `(G, M_d, alpha)`:
//! the canonical Schrodinger quadruple on `L2(G, M_d, alpha)` built from
//! multiplication, twisted translation, and modulation; a residual-reporting
//! validator for the seven defining axioms; integrated forms; the generalized
//! Fourier transform; and the induced covariant triple.

use num_complex::Complex64;

use crate::algebra::{matrix_units, Action};
use crate::error::{Error, Result};
use crate::group::{Character, FiniteAbelianGroup, GroupElement};
use crate::hilbert::{
    direct_sum_copies, direct_sum_modules, HModule, ModuleOperator, ModuleVector,
};
use crate::linalg::{self, CMat};
use crate::rng::{random_cmat, rng_from_seed};

/// Multiplication operator `phi -> a phi` on `L2(G, M_d, alpha)`.
/// In untwisted coordinates this is block-diagonal with blocks
/// `alpha_{x^{-1}}(a) = u_x^* a u_x`.
pub fn mult_op(action: &Action, a: &CMat) -> Result<ModuleOperator> {
    let d = action.dim();
    if a.nrows() != d || a.ncols() != d {
        return Err(Error::Dim {
            expected: d,
            got: a.nrows(),
        });
    }
    let g_values = vec![a.clone(); action.group().order()];
    pointwise_mult_op(action, &g_values)
}

/// Multiplication operator `phi -> g phi` for a function `g: G -> M_d`
/// (table indexed by the group enumeration).
pub fn pointwise_mult_op(action: &Action, g_values: &[CMat]) -> Result<ModuleOperator> {
    let group = action.group();
    let d = action.dim();
    let n = group.order();
    if g_values.len() != n {
        return Err(Error::Shape(format!(
            "function table has {} entries for a group of order {n}",
            g_values.len()
        )));
    }
    let home = HModule::l2(action.clone());
    let mut m = CMat::zeros(n * d, n * d);
    for (i, value) in g_values.iter().enumerate() {
        let u = action.unitary_at(i);
        let block = u.adjoint() * value * u;
        m.view_mut((i * d, i * d), (d, d)).copy_from(&block);
    }
    ModuleOperator::from_matrix(&home, m)
}

/// Twisted translation `phi -> (y -> alpha_z(phi(z^{-1} y)))`.
/// In untwisted coordinates this is the plain block permutation `y <- y - z`.
pub fn translation_op(action: &Action, z: &GroupElement) -> Result<ModuleOperator> {
    let group = action.group();
    let d = action.dim();
    let n = group.order();
    let home = HModule::l2(action.clone());
    let mut m = CMat::zeros(n * d, n * d);
    for (yi, y) in group.elements().iter().enumerate() {
        let src = group.index_of(&group.difference(y, z)?)?;
        m.view_mut((yi * d, src * d), (d, d))
            .copy_from(&linalg::identity(d));
    }
    ModuleOperator::from_matrix(&home, m)
}

/// Modulation `phi -> chi . phi`: block-diagonal with scalar blocks `chi(x) I`.
pub fn modulation_op(action: &Action, chi: &Character) -> Result<ModuleOperator> {
    let group = action.group();
    let d = action.dim();
    let n = group.order();
    let home = HModule::l2(action.clone());
    let mut m = CMat::zeros(n * d, n * d);
    for (xi, x) in group.elements().iter().enumerate() {
        let phase = group.pair(chi, x)?;
        m.view_mut((xi * d, xi * d), (d, d))
            .copy_from(&(linalg::identity(d) * phase));
    }
    ModuleOperator::from_matrix(&home, m)
}

/// A representation quadruple `(X, rho, R, S)`: a coefficient representation
/// `rho` of `M_d` given by its values on matrix units, a unitary table `R`
/// over the group, and a unitary table `S` over the characters, all acting on
/// a free Hilbert `M_d`-module.
#[derive(Debug, Clone)]
pub struct HeisenbergRep {
    module: HModule,
    action: Action,
    rho_units: Vec<ModuleOperator>, // d^2 entries, row-major e_ij
    r_table: Vec<ModuleOperator>,   // |G| entries by element index
    s_table: Vec<ModuleOperator>,   // |G| entries by character index
}

impl HeisenbergRep {
    pub fn new(
        module: HModule,
        action: Action,
        rho_units: Vec<ModuleOperator>,
        r_table: Vec<ModuleOperator>,
        s_table: Vec<ModuleOperator>,
    ) -> Result<Self> {
        let d = action.dim();
        let n = action.group().order();
        if module.dim() != d {
            return Err(Error::Dim {
                expected: d,
                got: module.dim(),
            });
        }
        if rho_units.len() != d * d || r_table.len() != n || s_table.len() != n {
            return Err(Error::Shape(format!(
                "expected {} rho values, {n} R entries, {n} S entries; got {}, {}, {}",
                d * d,
                rho_units.len(),
                r_table.len(),
                s_table.len()
            )));
        }
        for t in rho_units.iter().chain(&r_table).chain(&s_table) {
            if t.domain() != &module || t.codomain() != &module {
                return Err(Error::HomeMismatch);
            }
        }
        Ok(Self {
            module,
            action,
            rho_units,
            r_table,
            s_table,
        })
    }

    pub fn module(&self) -> &HModule {
        &self.module
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        self.action.group()
    }

    pub fn dim(&self) -> usize {
        self.action.dim()
    }

    /// `rho(a)` by linear extension from the matrix units.
    pub fn rho(&self, a: &CMat) -> Result<ModuleOperator> {
        let d = self.dim();
        if a.nrows() != d || a.ncols() != d {
            return Err(Error::Dim {
                expected: d,
                got: a.nrows(),
            });
        }
        let mut m = CMat::zeros(self.module.stacked_dim(), self.module.stacked_dim());
        for i in 0..d {
            for j in 0..d {
                m += self.rho_units[i * d + j].matrix() * a[(i, j)];
            }
        }
        ModuleOperator::from_matrix(&self.module, m)
    }

    pub fn rho_unit(&self, i: usize, j: usize) -> &ModuleOperator {
        &self.rho_units[i * self.dim() + j]
    }

    pub fn r(&self, x: &GroupElement) -> Result<&ModuleOperator> {
        Ok(&self.r_table[self.group().index_of(x)?])
    }

    pub fn s(&self, chi: &Character) -> Result<&ModuleOperator> {
        Ok(&self.s_table[self.group().index_of_character(chi)?])
    }

    pub fn r_at(&self, idx: usize) -> &ModuleOperator {
        &self.r_table[idx]
    }

    pub fn s_at(&self, idx: usize) -> &ModuleOperator {
        &self.s_table[idx]
    }

    /// Conjugate every operator by a unitary matrix: `T -> w^* T w`.
    pub fn conjugated(&self, w: &CMat) -> Result<Self> {
        let nd = self.module.stacked_dim();
        if w.nrows() != nd || w.ncols() != nd {
            return Err(Error::Shape(format!(
                "conjugator is {}x{}, expected {nd}x{nd}",
                w.nrows(),
                w.ncols()
            )));
        }
        let conj = |t: &ModuleOperator| -> Result<ModuleOperator> {
            ModuleOperator::from_matrix(&self.module, w.adjoint() * t.matrix() * w)
        };
        Ok(Self {
            module: self.module.clone(),
            action: self.action.clone(),
            rho_units: self.rho_units.iter().map(&conj).collect::<Result<_>>()?,
            r_table: self.r_table.iter().map(&conj).collect::<Result<_>>()?,
            s_table: self.s_table.iter().map(&conj).collect::<Result<_>>()?,
        })
    }

    /// Integrated form over the group: `Pi(f) = sum_x rho(f(x)) R(x)`.
    pub fn integrated_r(&self, f: &[CMat]) -> Result<ModuleOperator> {
        self.integrated(f, &self.r_table)
    }

    /// Integrated form over the characters: `Pi(f) = sum_chi rho(f(chi)) S(chi)`.
    pub fn integrated_s(&self, f: &[CMat]) -> Result<ModuleOperator> {
        self.integrated(f, &self.s_table)
    }

    fn integrated(&self, f: &[CMat], table: &[ModuleOperator]) -> Result<ModuleOperator> {
        let n = self.group().order();
        if f.len() != n {
            return Err(Error::Shape(format!(
                "function table has {} entries for a group of order {n}",
                f.len()
            )));
        }
        let mut acc = ModuleOperator::zero(&self.module);
        for (value, op) in f.iter().zip(table) {
            acc = acc.add(&self.rho(value)?.compose(op)?)?;
        }
        Ok(acc)
    }

    /// `pi(g) = Pi_{rho,S}(F^{-1}(g))`, a representation of the pointwise
    /// algebra `C(G, M_d)`. For the Schrodinger quadruple this coincides with
    /// pointwise multiplication.
    pub fn pi(&self, g: &[CMat]) -> Result<ModuleOperator> {
        self.integrated_s(&fourier_inv(self.group(), g)?)
    }
}

/// Wire format of a representation quadruple: module rank, coefficient
/// dimension, and the three operator tables as row-major `[re, im]` entries.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct QuadrupleData {
    pub rank: usize,
    pub dim: usize,
    pub rho_units: Vec<Vec<[f64; 2]>>,
    pub r_table: Vec<Vec<[f64; 2]>>,
    pub s_table: Vec<Vec<[f64; 2]>>,
}

impl HeisenbergRep {
    pub fn to_data(&self) -> QuadrupleData {
        let flat = |ops: &[ModuleOperator]| {
            ops.iter()
                .map(|t| linalg::mat_to_flat(t.matrix()))
                .collect()
        };
        QuadrupleData {
            rank: self.module.rank(),
            dim: self.dim(),
            rho_units: flat(&self.rho_units),
            r_table: flat(&self.r_table),
            s_table: flat(&self.s_table),
        }
    }

    /// Rebuild a quadruple over `action` on the free module of the recorded
    /// rank. Shapes are checked; axioms are the caller's to validate.
    pub fn from_data(action: &Action, data: &QuadrupleData) -> Result<Self> {
        if data.dim != action.dim() {
            return Err(Error::Dim {
                expected: action.dim(),
                got: data.dim,
            });
        }
        let module = HModule::free(data.rank, data.dim)?;
        let side = module.stacked_dim();
        let parse = |tables: &[Vec<[f64; 2]>]| -> Result<Vec<ModuleOperator>> {
            tables
                .iter()
                .map(|flat| {
                    let m = linalg::mat_from_flat(side, flat).ok_or(Error::Dim {
                        expected: side * side,
                        got: flat.len(),
                    })?;
                    ModuleOperator::from_matrix(&module, m)
                })
                .collect()
        };
        HeisenbergRep::new(
            module.clone(),
            action.clone(),
            parse(&data.rho_units)?,
            parse(&data.r_table)?,
            parse(&data.s_table)?,
        )
    }
}

/// The Schrodinger quadruple `(L2(G, M_d, alpha), mult, translation, modulation)`.
pub fn schrodinger(action: &Action) -> Result<HeisenbergRep> {
    let group = action.group().clone();
    let d = action.dim();
    let module = HModule::l2(action.clone());
    let mut rho_units = Vec::with_capacity(d * d);
    for unit in matrix_units(d) {
        rho_units.push(mult_op(action, &unit)?);
    }
    let mut r_table = Vec::with_capacity(group.order());
    for x in group.elements() {
        r_table.push(translation_op(action, &x)?);
    }
    let mut s_table = Vec::with_capacity(group.order());
    for chi in group.characters() {
        s_table.push(modulation_op(action, &chi)?);
    }
    HeisenbergRep::new(module, action.clone(), rho_units, r_table, s_table)
}

/// `m`-fold direct sum of the Schrodinger quadruple.
pub fn schrodinger_sum(action: &Action, m: usize) -> Result<HeisenbergRep> {
    if m == 0 {
        return Err(Error::EmptySum);
    }
    let base = schrodinger(action)?;
    let module = direct_sum_modules(&vec![base.module().clone(); m])?;
    let lift = |t: &ModuleOperator| -> Result<ModuleOperator> {
        ModuleOperator::from_matrix(&module, direct_sum_copies(t, m)?.matrix().clone())
    };
    Ok(HeisenbergRep {
        module: module.clone(),
        action: base.action.clone(),
        rho_units: base.rho_units.iter().map(&lift).collect::<Result<_>>()?,
        r_table: base.r_table.iter().map(&lift).collect::<Result<_>>()?,
        s_table: base.s_table.iter().map(&lift).collect::<Result<_>>()?,
    })
}

/// One axiom check: worst residual and the witness producing it.
#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub residual: f64,
    pub witness: String,
}

/// Residual report for the seven defining axioms, exhaustive over all
/// `(x, chi)` pairs and matrix units.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub tolerance: f64,
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.residual <= self.tolerance)
    }

    pub fn worst(&self) -> &AxiomCheck {
        self.checks
            .iter()
            .max_by(|a, b| a.residual.partial_cmp(&b.residual).unwrap())
            .expect("report has checks")
    }

    pub fn worst_residual(&self) -> f64 {
        self.worst().residual
    }
}

/// Validate the seven axioms of a representation quadruple. Failures are
/// report entries, never faults. Strong continuity is vacuous for finite
/// groups, so the unitary-table checks are homomorphism plus unitarity.
pub fn validate_heisenberg(rep: &HeisenbergRep, tol: f64) -> Result<ValidationReport> {
    let group = rep.group().clone();
    let d = rep.dim();
    let elements = group.elements();
    let characters = group.characters();
    let id = ModuleOperator::identity(rep.module());
    let mut checks = Vec::new();

    // Axiom 1: fullness of the module. Rank test on the span of inner
    // products of deterministic pseudo-random pairs.
    {
        let mut rng = rng_from_seed(0x5EED);
        let mut inners = Vec::new();
        for _ in 0..(2 * d * d * rep.module().rank()) {
            let v = random_vector(rep.module(), &mut rng);
            let w = random_vector(rep.module(), &mut rng);
            inners.push(v.inner(&w)?);
        }
        let rank = linalg::span_dimension(&inners);
        checks.push(AxiomCheck {
            axiom: "fullness",
            residual: if rank == d * d { 0.0 } else { 1.0 },
            witness: format!("span dimension {rank} of {}", d * d),
        });
    }

    // Axiom 2: rho is a unital *-homomorphism (unitality is non-degeneracy
    // at finite scale).
    {
        let mut worst = AxiomCheck {
            axiom: "coefficient representation",
            residual: 0.0,
            witness: "none".into(),
        };
        let mut sum_diag = ModuleOperator::zero(rep.module());
        for i in 0..d {
            sum_diag = sum_diag.add(rep.rho_unit(i, i))?;
        }
        let r = sum_diag.distance(&id)?;
        if r > worst.residual {
            worst.residual = r;
            worst.witness = "sum of diagonal units vs identity".into();
        }
        for i in 0..d {
            for j in 0..d {
                let r = rep.rho_unit(i, j).adjoint().distance(rep.rho_unit(j, i))?;
                if r > worst.residual {
                    worst.residual = r;
                    worst.witness = format!("adjoint of e_{i}{j}");
                }
                for k in 0..d {
                    for l in 0..d {
                        let prod = rep.rho_unit(i, j).compose(rep.rho_unit(k, l))?;
                        let expected = if j == k {
                            rep.rho_unit(i, l).clone()
                        } else {
                            ModuleOperator::zero(rep.module())
                        };
                        let r = prod.distance(&expected)?;
                        if r > worst.residual {
                            worst.residual = r;
                            worst.witness = format!("e_{i}{j} * e_{k}{l}");
                        }
                    }
                }
            }
        }
        checks.push(worst);
    }

    // Axioms 3-4: R and S are unitary homomorphisms.
    for (axiom, table, is_r) in [
        ("group unitaries", &rep.r_table, true),
        ("character unitaries", &rep.s_table, false),
    ] {
        let mut worst = AxiomCheck {
            axiom,
            residual: 0.0,
            witness: "none".into(),
        };
        for (i, x) in elements.iter().enumerate() {
            let u = &table[i];
            let r = u.compose(&u.adjoint())?.distance(&id)?;
            if r > worst.residual {
                worst.residual = r;
                worst.witness = format!("unitarity at {}", display_label(x, is_r));
            }
            for (j, y) in elements.iter().enumerate() {
                let k = group.index_of(&group.compose(x, y)?)?;
                let r = table[i].compose(&table[j])?.distance(&table[k])?;
                if r > worst.residual {
                    worst.residual = r;
                    worst.witness = format!(
                        "homomorphism at ({}, {})",
                        display_label(x, is_r),
                        display_label(y, is_r)
                    );
                }
            }
        }
        let r = table[0].distance(&id)?;
        if r > worst.residual {
            worst.residual = r;
            worst.witness = "value at the identity".into();
        }
        checks.push(worst);
    }

    // Axiom 5: the Weyl relation S(chi) R(x) = chi(x) R(x) S(chi).
    {
        let mut worst = AxiomCheck {
            axiom: "weyl relation",
            residual: 0.0,
            witness: "none".into(),
        };
        for (ci, chi) in characters.iter().enumerate() {
            for (xi, x) in elements.iter().enumerate() {
                let lhs = rep.s_table[ci].compose(&rep.r_table[xi])?;
                let rhs = rep.r_table[xi]
                    .compose(&rep.s_table[ci])?
                    .scale(group.pair(chi, x)?);
                let r = lhs.distance(&rhs)?;
                if r > worst.residual {
                    worst.residual = r;
                    worst.witness = format!("({chi}, {x})");
                }
            }
        }
        checks.push(worst);
    }

    // Axiom 6: covariance R(x) rho(a) = rho(alpha_x(a)) R(x).
    {
        let mut worst = AxiomCheck {
            axiom: "covariance",
            residual: 0.0,
            witness: "none".into(),
        };
        for (xi, x) in elements.iter().enumerate() {
            for (ui, unit) in matrix_units(d).iter().enumerate() {
                let lhs = rep.r_table[xi].compose(&rep.rho(unit)?)?;
                let rhs = rep
                    .rho(&rep.action.act(x, unit)?)?
                    .compose(&rep.r_table[xi])?;
                let r = lhs.distance(&rhs)?;
                if r > worst.residual {
                    worst.residual = r;
                    worst.witness = format!("({x}, e_{}{})", ui / d, ui % d);
                }
            }
        }
        checks.push(worst);
    }

    // Axiom 7: S(chi) commutes with rho.
    {
        let mut worst = AxiomCheck {
            axiom: "character commutation",
            residual: 0.0,
            witness: "none".into(),
        };
        for (ci, chi) in characters.iter().enumerate() {
            for (ui, unit) in matrix_units(d).iter().enumerate() {
                let rho_a = rep.rho(unit)?;
                let lhs = rep.s_table[ci].compose(&rho_a)?;
                let rhs = rho_a.compose(&rep.s_table[ci])?;
                let r = lhs.distance(&rhs)?;
                if r > worst.residual {
                    worst.residual = r;
                    worst.witness = format!("({chi}, e_{}{})", ui / d, ui % d);
                }
            }
        }
        checks.push(worst);
    }

    Ok(ValidationReport {
        tolerance: tol,
        checks,
    })
}

fn display_label(x: &GroupElement, as_element: bool) -> String {
    if as_element {
        x.to_string()
    } else {
        format!("chi{x}")
    }
}

pub(crate) fn random_vector<R: rand::Rng>(home: &HModule, rng: &mut R) -> ModuleVector {
    let d = home.dim();
    let blocks: Vec<CMat> = (0..home.rank()).map(|_| random_cmat(d, d, rng)).collect();
    ModuleVector::from_function_blocks(home, &blocks).expect("well-shaped blocks")
}

/// Generalized Fourier transform `F(f)(x) = sum_chi chi(x) f(chi)` from
/// functions on the character group to functions on the group.
pub fn fourier(group: &FiniteAbelianGroup, f: &[CMat]) -> Result<Vec<CMat>> {
    let n = group.order();
    if f.len() != n {
        return Err(Error::Shape(format!(
            "function table has {} entries for a group of order {n}",
            f.len()
        )));
    }
    let d = f[0].nrows();
    let characters = group.characters();
    let mut out = Vec::with_capacity(n);
    for x in group.elements() {
        let mut acc = CMat::zeros(d, d);
        for (ci, chi) in characters.iter().enumerate() {
            acc += &f[ci] * group.pair(chi, &x)?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Inverse transform `F^{-1}(g)(chi) = (1/|G|) sum_x conj(chi(x)) g(x)`.
/// The `1/|G|` is the inversion weight for counting measure of weight 1.
pub fn fourier_inv(group: &FiniteAbelianGroup, g: &[CMat]) -> Result<Vec<CMat>> {
    let n = group.order();
    if g.len() != n {
        return Err(Error::Shape(format!(
            "function table has {} entries for a group of order {n}",
            g.len()
        )));
    }
    let d = g[0].nrows();
    let elements = group.elements();
    let scale = Complex64::new(1.0 / n as f64, 0.0);
    let mut out = Vec::with_capacity(n);
    for chi in group.characters() {
        let mut acc = CMat::zeros(d, d);
        for (xi, x) in elements.iter().enumerate() {
            acc += &g[xi] * group.pair(&chi, x)?.conj();
        }
        out.push(acc * scale);
    }
    Ok(out)
}

/// The covariant triple `(X, pi, R)` induced by a representation quadruple:
/// `pi` is stored by its values on the point-mass basis of `C(G, M_d)`.
#[derive(Debug, Clone)]
pub struct CovariantTriple {
    module: HModule,
    action: Action,
    /// `pi(delta_y (x) e_ij)` indexed by `(y_index * d + i) * d + j`.
    pi_deltas: Vec<ModuleOperator>,
    r_table: Vec<ModuleOperator>,
}

impl CovariantTriple {
    pub fn module(&self) -> &HModule {
        &self.module
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn r_at(&self, idx: usize) -> &ModuleOperator {
        &self.r_table[idx]
    }

    /// `pi(g)` by linear extension over the point-mass basis.
    pub fn pi(&self, g: &[CMat]) -> Result<ModuleOperator> {
        let d = self.action.dim();
        let n = self.action.group().order();
        if g.len() != n {
            return Err(Error::Shape(format!(
                "function table has {} entries for a group of order {n}",
                g.len()
            )));
        }
        let mut m = CMat::zeros(self.module.stacked_dim(), self.module.stacked_dim());
        for (yi, value) in g.iter().enumerate() {
            for i in 0..d {
                for j in 0..d {
                    m += self.pi_deltas[(yi * d + i) * d + j].matrix() * value[(i, j)];
                }
            }
        }
        ModuleOperator::from_matrix(&self.module, m)
    }

    /// Recover `rho(a)` as `pi` of the constant function `a` (exact for
    /// point masses at finite scale).
    pub fn recover_rho(&self, a: &CMat) -> Result<ModuleOperator> {
        let n = self.action.group().order();
        self.pi(&vec![a.clone(); n])
    }

    /// Recover `S(chi)` as `pi` of the scalar function `x -> chi(x) I`.
    pub fn recover_s(&self, chi: &Character) -> Result<ModuleOperator> {
        let group = self.action.group();
        let d = self.action.dim();
        let mut g = Vec::with_capacity(group.order());
        for x in group.elements() {
            g.push(linalg::identity(d) * group.pair(chi, &x)?);
        }
        self.pi(&g)
    }
}

/// Map a validated quadruple to its covariant triple `(X, pi, R)` for the
/// translation-twisted system on `C(G, M_d)`. The map is injective: `rho`
/// and `S` are recovered exactly from `pi`.
pub fn to_covariant(rep: &HeisenbergRep, tol: f64) -> Result<CovariantTriple> {
    let report = validate_heisenberg(rep, tol)?;
    if !report.passed() {
        let worst = report.worst();
        return Err(Error::Validation {
            axiom: worst.axiom.to_string(),
            worst: worst.residual,
        });
    }
    let group = rep.group();
    let d = rep.dim();
    let n = group.order();
    let mut pi_deltas = Vec::with_capacity(n * d * d);
    for y in 0..n {
        for unit in matrix_units(d) {
            let mut g = vec![CMat::zeros(d, d); n];
            g[y] = unit;
            pi_deltas.push(rep.pi(&g)?);
        }
    }
    Ok(CovariantTriple {
        module: rep.module().clone(),
        action: rep.action().clone(),
        pi_deltas,
        r_table: rep.r_table.clone(),
    })
}
