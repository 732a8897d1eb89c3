//! Finite crossed-product convolution algebras for the two coefficient kinds
//! the theory needs: `M_d` with a (possibly trivial) inner action, and the
//! function algebra `C(G, M_d)` carrying the translation-twisted action. On
//! top of these sit the bimodule inner product, the integrated representation
//! on `L2(G, M_d, alpha)` with its explicit inverse, and the duality chain
//! onto `M_{|G|} (x) M_d`.
//!
//! Universal norms are never computed as suprema: the faithful realizations
//! (the Fourier transform for the trivially-twisted dual algebra, the
//! integrated representation for the function algebra) pin the norms exactly
//! at finite scale.

use nalgebra::linalg::LU;
use nalgebra::Dyn;
use num_complex::Complex64;
use rand::Rng;

use crate::algebra::Action;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::hilbert::{HModule, ModuleOperator, ModuleVector};
use crate::linalg::{self, CMat, CVec};
use crate::rng::random_cmat;
use crate::weyl::{pointwise_mult_op, translation_op};

/// Coefficient payload of a crossed-product element.
#[derive(Debug, Clone, PartialEq)]
enum Coeff {
    /// One `d x d` matrix per group element.
    Matrix(CMat),
    /// One function table `G -> M_d` per group element.
    Function(Vec<CMat>),
}

/// Which coefficient algebra a crossed element lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffKind {
    /// `B = M_d`, twisted by the stored action.
    Matrix,
    /// `B = C(G, M_d)`, twisted by the translation-twisted lift of the
    /// stored action.
    Function,
}

/// An element of a finite crossed-product convolution algebra. The `action`
/// field is the inner action on `M_d`; for [`CoeffKind::Matrix`] it twists
/// the convolution directly, for [`CoeffKind::Function`] the twist is its
/// translation-twisted lift on `C(G, M_d)`. Elements over the character
/// group are represented over the group itself through the self-dual
/// identification, with the trivial action.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossedElem {
    action: Action,
    values: Vec<Coeff>, // indexed by the group enumeration
}

impl CrossedElem {
    fn dims_of(action: &Action) -> (usize, usize) {
        (action.group().order(), action.dim())
    }

    pub fn zero(action: &Action, kind: CoeffKind) -> Self {
        let (n, d) = Self::dims_of(action);
        let blank = match kind {
            CoeffKind::Matrix => Coeff::Matrix(CMat::zeros(d, d)),
            CoeffKind::Function => Coeff::Function(vec![CMat::zeros(d, d); n]),
        };
        Self {
            action: action.clone(),
            values: vec![blank; n],
        }
    }

    /// The convolution unit `delta_e (x) 1_B`.
    pub fn unit(action: &Action, kind: CoeffKind) -> Self {
        let (n, d) = Self::dims_of(action);
        let mut out = Self::zero(action, kind);
        out.values[0] = match kind {
            CoeffKind::Matrix => Coeff::Matrix(linalg::identity(d)),
            CoeffKind::Function => Coeff::Function(vec![linalg::identity(d); n]),
        };
        out
    }

    /// `delta_x (x) a` with matrix coefficients.
    pub fn delta_matrix(action: &Action, x: &GroupElement, a: &CMat) -> Result<Self> {
        let (_, d) = Self::dims_of(action);
        if a.nrows() != d || a.ncols() != d {
            return Err(Error::Dim {
                expected: d,
                got: a.nrows(),
            });
        }
        let idx = action.group().index_of(x)?;
        let mut out = Self::zero(action, CoeffKind::Matrix);
        out.values[idx] = Coeff::Matrix(a.clone());
        Ok(out)
    }

    /// `delta_x (x) g` with a function coefficient `g: G -> M_d`.
    pub fn delta_function(action: &Action, x: &GroupElement, g: &[CMat]) -> Result<Self> {
        let (n, d) = Self::dims_of(action);
        if g.len() != n {
            return Err(Error::Shape(format!(
                "function table has {} entries for a group of order {n}",
                g.len()
            )));
        }
        if g.iter().any(|m| m.nrows() != d || m.ncols() != d) {
            return Err(Error::Dim {
                expected: d,
                got: 0,
            });
        }
        let idx = action.group().index_of(x)?;
        let mut out = Self::zero(action, CoeffKind::Function);
        out.values[idx] = Coeff::Function(g.to_vec());
        Ok(out)
    }

    pub fn from_matrix_values(action: &Action, values: Vec<CMat>) -> Result<Self> {
        let (n, d) = Self::dims_of(action);
        if values.len() != n {
            return Err(Error::Shape(format!(
                "table has {} entries for a group of order {n}",
                values.len()
            )));
        }
        if values.iter().any(|m| m.nrows() != d || m.ncols() != d) {
            return Err(Error::Dim {
                expected: d,
                got: 0,
            });
        }
        Ok(Self {
            action: action.clone(),
            values: values.into_iter().map(Coeff::Matrix).collect(),
        })
    }

    pub fn from_function_values(action: &Action, values: Vec<Vec<CMat>>) -> Result<Self> {
        let (n, d) = Self::dims_of(action);
        if values.len() != n || values.iter().any(|g| g.len() != n) {
            return Err(Error::Shape(
                "outer or inner table has the wrong length".into(),
            ));
        }
        if values
            .iter()
            .flatten()
            .any(|m| m.nrows() != d || m.ncols() != d)
        {
            return Err(Error::Dim {
                expected: d,
                got: 0,
            });
        }
        Ok(Self {
            action: action.clone(),
            values: values.into_iter().map(Coeff::Function).collect(),
        })
    }

    pub fn random_matrix_kind<R: Rng>(action: &Action, rng: &mut R) -> Self {
        let (n, d) = Self::dims_of(action);
        Self {
            action: action.clone(),
            values: (0..n)
                .map(|_| Coeff::Matrix(random_cmat(d, d, rng)))
                .collect(),
        }
    }

    pub fn random_function_kind<R: Rng>(action: &Action, rng: &mut R) -> Self {
        let (n, d) = Self::dims_of(action);
        Self {
            action: action.clone(),
            values: (0..n)
                .map(|_| Coeff::Function((0..n).map(|_| random_cmat(d, d, rng)).collect()))
                .collect(),
        }
    }

    pub fn kind(&self) -> CoeffKind {
        match self.values[0] {
            Coeff::Matrix(_) => CoeffKind::Matrix,
            Coeff::Function(_) => CoeffKind::Function,
        }
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    /// Matrix coefficient table; panics when called on function-kind elements.
    pub fn matrix_values(&self) -> Vec<CMat> {
        self.values
            .iter()
            .map(|v| match v {
                Coeff::Matrix(m) => m.clone(),
                _ => panic!("matrix_values on a function-kind crossed element"),
            })
            .collect()
    }

    /// Function coefficient at outer index `i`; panics on matrix-kind elements.
    pub fn function_value(&self, i: usize) -> &[CMat] {
        match &self.values[i] {
            Coeff::Function(g) => g,
            _ => panic!("function_value on a matrix-kind crossed element"),
        }
    }

    pub fn matrix_value(&self, i: usize) -> &CMat {
        match &self.values[i] {
            Coeff::Matrix(m) => m,
            _ => panic!("matrix_value on a function-kind crossed element"),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.action != other.action || self.kind() != other.kind() {
            return Err(Error::SystemMismatch);
        }
        Ok(())
    }

    fn coeff_mul(a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b) {
            (Coeff::Matrix(x), Coeff::Matrix(y)) => Coeff::Matrix(x * y),
            (Coeff::Function(x), Coeff::Function(y)) => {
                Coeff::Function(x.iter().zip(y).map(|(p, q)| p * q).collect())
            }
            _ => unreachable!("mixed coefficient kinds"),
        }
    }

    fn coeff_adjoint(a: &Coeff) -> Coeff {
        match a {
            Coeff::Matrix(x) => Coeff::Matrix(x.adjoint()),
            Coeff::Function(x) => Coeff::Function(x.iter().map(|m| m.adjoint()).collect()),
        }
    }

    /// Apply the twisting action `beta_y` to a coefficient: `Ad(u_y)` for
    /// matrix coefficients, the translation-twisted lift for function ones.
    fn coeff_act(&self, y: &GroupElement, a: &Coeff) -> Result<Coeff> {
        Ok(match a {
            Coeff::Matrix(x) => Coeff::Matrix(self.action.act(y, x)?),
            Coeff::Function(x) => Coeff::Function(lt_alpha(&self.action, y, x)?),
        })
    }

    fn coeff_add(acc: &mut Coeff, inc: &Coeff) {
        match (acc, inc) {
            (Coeff::Matrix(x), Coeff::Matrix(y)) => *x += y,
            (Coeff::Function(x), Coeff::Function(y)) => {
                for (p, q) in x.iter_mut().zip(y) {
                    *p += q;
                }
            }
            _ => unreachable!("mixed coefficient kinds"),
        }
    }

    /// Convolution `(f * g)(x) = sum_y f(y) beta_y(g(y^{-1} x))`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let group = self.action.group().clone();
        let elements = group.elements();
        let mut out = Self::zero(&self.action, self.kind());
        for (xi, x) in elements.iter().enumerate() {
            let mut acc = out.values[xi].clone();
            for (yi, y) in elements.iter().enumerate() {
                let zi = group.index_of(&group.difference(x, y)?)?;
                let moved = self.coeff_act(y, &other.values[zi])?;
                let term = Self::coeff_mul(&self.values[yi], &moved);
                Self::coeff_add(&mut acc, &term);
            }
            out.values[xi] = acc;
        }
        Ok(out)
    }

    /// Involution `f^*(x) = beta_x(f(x^{-1})^*)` (the modular function is 1).
    pub fn involute(&self) -> Result<Self> {
        let group = self.action.group().clone();
        let mut out = Self::zero(&self.action, self.kind());
        for (xi, x) in group.elements().iter().enumerate() {
            let ni = group.index_of(&group.inverse(x)?)?;
            out.values[xi] = self.coeff_act(x, &Self::coeff_adjoint(&self.values[ni]))?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (acc, inc) in out.values.iter_mut().zip(&other.values) {
            Self::coeff_add(acc, inc);
        }
        Ok(out)
    }

    pub fn scale(&self, z: Complex64) -> Self {
        let mut out = self.clone();
        for v in out.values.iter_mut() {
            match v {
                Coeff::Matrix(m) => *m *= z,
                Coeff::Function(g) => {
                    for m in g.iter_mut() {
                        *m *= z;
                    }
                }
            }
        }
        out
    }

    /// Flatten to a coordinate vector (used for span and rank tests).
    pub fn coordinates(&self) -> CVec {
        let mut data = Vec::new();
        for v in &self.values {
            match v {
                Coeff::Matrix(m) => data.extend_from_slice(m.as_slice()),
                Coeff::Function(g) => {
                    for m in g {
                        data.extend_from_slice(m.as_slice());
                    }
                }
            }
        }
        CVec::from_vec(data)
    }

    /// C*-norm through the faithful finite realizations: the integrated
    /// representation on the function module for function coefficients, and
    /// the multiplication-translation pair on `L2(G, M_d, beta)` for matrix
    /// coefficients. At finite scale both maps are injective, so these are
    /// genuine C*-norms and no supremum over representations is needed.
    pub fn cstar_norm(&self) -> Result<f64> {
        match self.kind() {
            CoeffKind::Function => Ok(pi_full(self)?.norm()),
            CoeffKind::Matrix => {
                let action = &self.action;
                let group = action.group().clone();
                let home = HModule::l2(action.clone());
                let mut acc = ModuleOperator::zero(&home);
                for (xi, x) in group.elements().iter().enumerate() {
                    let m_op = crate::weyl::mult_op(action, self.matrix_value(xi))?;
                    acc = acc.add(&m_op.compose(&translation_op(action, x)?)?)?;
                }
                Ok(acc.norm())
            }
        }
    }

    pub fn sup_norm_diff(&self, other: &Self) -> Result<f64> {
        self.check_compatible(other)?;
        let mut worst = 0.0f64;
        for (a, b) in self.values.iter().zip(&other.values) {
            match (a, b) {
                (Coeff::Matrix(x), Coeff::Matrix(y)) => {
                    worst = worst.max(linalg::op_norm(&(x - y)));
                }
                (Coeff::Function(x), Coeff::Function(y)) => {
                    for (p, q) in x.iter().zip(y) {
                        worst = worst.max(linalg::op_norm(&(p - q)));
                    }
                }
                _ => unreachable!(),
            }
        }
        Ok(worst)
    }
}

/// Wire format of a crossed element: coefficient payloads keyed by group
/// coordinates. Matrix payloads are flat `d x d` tables; function payloads
/// hold one flat table per group element in enumeration order.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct CrossedData {
    pub entries: Vec<CrossedEntry>,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct CrossedEntry {
    pub coords: Vec<usize>,
    pub payload: PayloadData,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub enum PayloadData {
    Matrix(Vec<[f64; 2]>),
    Function(Vec<Vec<[f64; 2]>>),
}

impl CrossedElem {
    pub fn to_data(&self) -> CrossedData {
        let elements = self.action.group().elements();
        let entries = elements
            .iter()
            .enumerate()
            .map(|(i, x)| CrossedEntry {
                coords: x.coords().to_vec(),
                payload: match &self.values[i] {
                    Coeff::Matrix(m) => PayloadData::Matrix(linalg::mat_to_flat(m)),
                    Coeff::Function(g) => {
                        PayloadData::Function(g.iter().map(linalg::mat_to_flat).collect())
                    }
                },
            })
            .collect();
        CrossedData { entries }
    }

    pub fn from_data(action: &Action, kind: CoeffKind, data: &CrossedData) -> Result<Self> {
        let group = action.group().clone();
        let (n, d) = Self::dims_of(action);
        let mut out = Self::zero(action, kind);
        let mut seen = vec![false; n];
        let parse_mat = |flat: &[[f64; 2]]| {
            linalg::mat_from_flat(d, flat).ok_or(Error::Dim {
                expected: d * d,
                got: flat.len(),
            })
        };
        for entry in &data.entries {
            let coords: Vec<i64> = entry.coords.iter().map(|c| *c as i64).collect();
            let idx = group.index_of(&group.element(&coords)?)?;
            if seen[idx] {
                return Err(Error::Shape(format!(
                    "duplicate entry at coordinates {:?}",
                    entry.coords
                )));
            }
            seen[idx] = true;
            out.values[idx] = match (&entry.payload, kind) {
                (PayloadData::Matrix(flat), CoeffKind::Matrix) => Coeff::Matrix(parse_mat(flat)?),
                (PayloadData::Function(tables), CoeffKind::Function) => {
                    if tables.len() != n {
                        return Err(Error::Shape(format!(
                            "function payload has {} tables for a group of order {n}",
                            tables.len()
                        )));
                    }
                    Coeff::Function(
                        tables
                            .iter()
                            .map(|flat| parse_mat(flat))
                            .collect::<Result<_>>()?,
                    )
                }
                _ => return Err(Error::Shape("payload kind mismatch".into())),
            };
        }
        Ok(out)
    }
}

/// The translation-twisted action on function tables:
/// `(lt (x) alpha)_x(g) = y -> alpha_x(g(x^{-1} y))`.
pub fn lt_alpha(action: &Action, x: &GroupElement, g: &[CMat]) -> Result<Vec<CMat>> {
    let group = action.group();
    let n = group.order();
    if g.len() != n {
        return Err(Error::Shape(format!(
            "function table has {} entries for a group of order {n}",
            g.len()
        )));
    }
    let mut out = Vec::with_capacity(n);
    for y in group.elements() {
        let src = group.index_of(&group.difference(&y, x)?)?;
        out.push(action.act(x, &g[src])?);
    }
    Ok(out)
}

/// The bimodule-side inner product of two vectors of `L2(G, M_d, alpha)`:
/// a function-kind crossed element with
/// `<phi, psi>_L(x)(y) = phi(y) alpha_x(psi(x^{-1} y)^*)`.
pub fn green_left_inner(phi: &ModuleVector, psi: &ModuleVector) -> Result<CrossedElem> {
    if phi.home() != psi.home() {
        return Err(Error::HomeMismatch);
    }
    let action = phi
        .home()
        .twist()
        .ok_or_else(|| Error::Shape("bimodule inner product needs function-module vectors".into()))?
        .clone();
    let group = action.group().clone();
    let elements = group.elements();
    let n = group.order();
    let mut values = Vec::with_capacity(n);
    for x in &elements {
        let mut table = Vec::with_capacity(n);
        for (yi, y) in elements.iter().enumerate() {
            let src = group.index_of(&group.difference(y, x)?)?;
            let psi_block = psi.function_block(src);
            table.push(phi.function_block(yi) * action.act(x, &psi_block.adjoint())?);
        }
        values.push(table);
    }
    CrossedElem::from_function_values(&action, values)
}

/// Integrated representation of the function-kind crossed algebra on
/// `L2(G, M_d, alpha)`: `Pi(F) = sum_x Xi(F(x)) U(x)` with `Xi` pointwise
/// multiplication and `U` twisted translation.
pub fn pi_full(f: &CrossedElem) -> Result<ModuleOperator> {
    if f.kind() != CoeffKind::Function {
        return Err(Error::Shape(
            "integrated representation needs function-kind coefficients".into(),
        ));
    }
    let action = f.action().clone();
    let group = action.group().clone();
    let home = HModule::l2(action.clone());
    let mut acc = ModuleOperator::zero(&home);
    for (xi, x) in group.elements().iter().enumerate() {
        let xi_op = pointwise_mult_op(&action, f.function_value(xi))?;
        acc = acc.add(&xi_op.compose(&translation_op(&action, x)?)?)?;
    }
    Ok(acc)
}

/// The integrated representation as an explicit linear map from the
/// function-kind crossed algebra onto the operator matrices, with its
/// factorization cached for rank checks and inversion.
pub struct PiFullMap {
    action: Action,
    home: HModule,
    matrix: CMat, // (nd)^2 x n^2 d^2, columns indexed by ((x n + y) d + i) d + j
    lu: LU<Complex64, Dyn, Dyn>,
}

impl PiFullMap {
    pub fn new(action: &Action) -> Result<Self> {
        let group = action.group().clone();
        let n = group.order();
        let d = action.dim();
        let home = HModule::l2(action.clone());
        let nd = n * d;
        let mut matrix = CMat::zeros(nd * nd, n * n * d * d);
        let elements = group.elements();
        for (xi, x) in elements.iter().enumerate() {
            let u_x = translation_op(action, x)?;
            for yi in 0..n {
                for i in 0..d {
                    for j in 0..d {
                        let mut g = vec![CMat::zeros(d, d); n];
                        g[yi][(i, j)] = Complex64::new(1.0, 0.0);
                        let op = pointwise_mult_op(action, &g)?.compose(&u_x)?;
                        let col = ((xi * n + yi) * d + i) * d + j;
                        matrix.set_column(col, &linalg::vectorize(op.matrix()));
                    }
                }
            }
        }
        let lu = matrix.clone().lu();
        Ok(Self {
            action: action.clone(),
            home,
            matrix,
            lu,
        })
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn home(&self) -> &HModule {
        &self.home
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    /// Numerical rank of the linear map; full rank `(|G| d)^2` certifies
    /// injectivity and surjectivity onto the compacts at finite scale.
    pub fn rank(&self) -> usize {
        linalg::numerical_rank(&self.matrix)
    }

    pub fn apply(&self, f: &CrossedElem) -> Result<ModuleOperator> {
        pi_full(f)
    }

    /// Solve `pi_full(F) = op` for the unique function-kind preimage.
    pub fn invert(&self, op: &ModuleOperator) -> Result<CrossedElem> {
        if op.domain() != &self.home || op.codomain() != &self.home {
            return Err(Error::HomeMismatch);
        }
        let group = self.action.group();
        let n = group.order();
        let d = self.action.dim();
        let rhs = linalg::vectorize(op.matrix());
        let sol = self
            .lu
            .solve(&rhs)
            .ok_or_else(|| Error::Shape("integrated representation is singular".into()))?;
        let mut values = Vec::with_capacity(n);
        for xi in 0..n {
            let mut table = Vec::with_capacity(n);
            for yi in 0..n {
                let mut m = CMat::zeros(d, d);
                for i in 0..d {
                    for j in 0..d {
                        m[(i, j)] = sol[((xi * n + yi) * d + i) * d + j];
                    }
                }
                table.push(m);
            }
            values.push(table);
        }
        CrossedElem::from_function_values(&self.action, values)
    }
}

/// Residual report for the duality chain: the composite of the integrated
/// representation with the untwisting conjugation and the index reshuffle,
/// from the function-kind crossed algebra onto `M_{|G|} (x) M_d`.
#[derive(Debug, Clone)]
pub struct TakaiReport {
    pub crossed_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub unit_residual: f64,
    pub mult_residual: f64,
    pub adjoint_residual: f64,
}

impl TakaiReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.crossed_dim == self.target_dim
            && self.rank == self.target_dim
            && self.unit_residual <= tol
            && self.mult_residual <= tol
            && self.adjoint_residual <= tol
    }

    pub fn worst_residual(&self) -> f64 {
        self.unit_residual
            .max(self.mult_residual)
            .max(self.adjoint_residual)
    }
}

/// The duality chain. Operator matrices are stored on untwisted coordinates
/// (the untwisting conjugation is performed by the storage convention), and
/// the stacked index `(x, i)` realizes the splitting `M_{|G|} (x) M_d`; the
/// chain therefore maps a crossed element through [`pi_full`] and reads the
/// result as an element of the tensor square.
pub struct TakaiChain {
    map: PiFullMap,
}

impl TakaiChain {
    pub fn new(action: &Action) -> Result<Self> {
        Ok(Self {
            map: PiFullMap::new(action)?,
        })
    }

    pub fn pi(&self) -> &PiFullMap {
        &self.map
    }

    /// Image of a crossed element in `M_{|G|} (x) M_d`.
    pub fn map_crossed(&self, f: &CrossedElem) -> Result<CMat> {
        Ok(self.map.apply(f)?.matrix().clone())
    }

    /// Image of an operator on the function module in `M_{|G|} (x) M_d`.
    pub fn map_operator(&self, op: &ModuleOperator) -> Result<CMat> {
        if op.domain() != self.map.home() || op.codomain() != self.map.home() {
            return Err(Error::HomeMismatch);
        }
        Ok(op.matrix().clone())
    }

    /// The `(x, y)` block of a tensor-square element, i.e. its `M_d`
    /// component at the matrix unit `E_{xy}` of `M_{|G|}`.
    pub fn tensor_block(&self, m: &CMat, x: usize, y: usize) -> CMat {
        let d = self.map.action().dim();
        m.view((x * d, y * d), (d, d)).into_owned()
    }

    /// Verify the chain is a *-isomorphism: unital, multiplicative over
    /// convolution, adjoint-preserving over involution, with full rank and
    /// equal dimensions on both sides.
    pub fn verify<R: Rng>(&self, samples: usize, rng: &mut R) -> Result<TakaiReport> {
        let action = self.map.action().clone();
        let n = action.group().order();
        let d = action.dim();
        let nd = n * d;
        let unit = CrossedElem::unit(&action, CoeffKind::Function);
        let unit_residual = linalg::op_norm(&(self.map_crossed(&unit)? - linalg::identity(nd)));
        let mut mult_residual = 0.0f64;
        let mut adjoint_residual = 0.0f64;
        for _ in 0..samples {
            let f = CrossedElem::random_function_kind(&action, rng);
            let g = CrossedElem::random_function_kind(&action, rng);
            let lhs = self.map_crossed(&f.convolve(&g)?)?;
            let rhs = self.map_crossed(&f)? * self.map_crossed(&g)?;
            mult_residual = mult_residual.max(linalg::op_norm(&(lhs - rhs)));
            let lhs = self.map_crossed(&f.involute()?)?;
            let rhs = self.map_crossed(&f)?.adjoint();
            adjoint_residual = adjoint_residual.max(linalg::op_norm(&(lhs - rhs)));
        }
        Ok(TakaiReport {
            crossed_dim: n * n * d * d,
            target_dim: nd * nd,
            rank: self.map.rank(),
            unit_residual,
            mult_residual,
            adjoint_residual,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix_unit;
    use crate::group::FiniteAbelianGroup;
    use crate::linalg::{c, cr, identity, op_norm};
    use crate::rng::rng_from_seed;
    use crate::weyl::random_vector;

    fn z2_scalar() -> Action {
        Action::trivial(FiniteAbelianGroup::cyclic(2).unwrap(), 1)
    }

    fn z2_sign_action() -> Action {
        let g = FiniteAbelianGroup::cyclic(2).unwrap();
        let gen = CMat::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(-1.0)]);
        Action::from_generators(g, &[gen]).unwrap()
    }

    fn z4_diag_action() -> Action {
        let g = FiniteAbelianGroup::cyclic(4).unwrap();
        let gen = CMat::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), c(0.0, 1.0)]);
        Action::from_generators(g, &[gen]).unwrap()
    }

    #[test]
    fn unit_is_two_sided() {
        let mut rng = rng_from_seed(2);
        for action in [z2_scalar(), z4_diag_action()] {
            for kind in [CoeffKind::Matrix, CoeffKind::Function] {
                let e = CrossedElem::unit(&action, kind);
                let f = match kind {
                    CoeffKind::Matrix => CrossedElem::random_matrix_kind(&action, &mut rng),
                    CoeffKind::Function => CrossedElem::random_function_kind(&action, &mut rng),
                };
                assert!(e.convolve(&f).unwrap().sup_norm_diff(&f).unwrap() < 1e-12);
                assert!(f.convolve(&e).unwrap().sup_norm_diff(&f).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn group_algebra_relation() {
        // Z_2 with scalar coefficients: delta_1 * delta_1 = delta_0
        let action = z2_scalar();
        let g = action.group().clone();
        let x1 = g.element(&[1]).unwrap();
        let d1 = CrossedElem::delta_matrix(&action, &x1, &identity(1)).unwrap();
        let unit = CrossedElem::unit(&action, CoeffKind::Matrix);
        assert!(d1.convolve(&d1).unwrap().sup_norm_diff(&unit).unwrap() < 1e-14);
    }

    #[test]
    fn point_mass_convolution_formula() {
        // (delta_x (x) a) * (delta_y (x) b) = delta_{x+y} (x) a beta_x(b)
        let action = z4_diag_action();
        let g = action.group().clone();
        let mut rng = rng_from_seed(5);
        for x in g.elements() {
            for y in g.elements() {
                let a = random_cmat(2, 2, &mut rng);
                let b = random_cmat(2, 2, &mut rng);
                let fa = CrossedElem::delta_matrix(&action, &x, &a).unwrap();
                let fb = CrossedElem::delta_matrix(&action, &y, &b).unwrap();
                let got = fa.convolve(&fb).unwrap();
                let expected = CrossedElem::delta_matrix(
                    &action,
                    &g.compose(&x, &y).unwrap(),
                    &(&a * action.act(&x, &b).unwrap()),
                )
                .unwrap();
                assert!(got.sup_norm_diff(&expected).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn involution_formulas() {
        let action = z4_diag_action();
        let g = action.group().clone();
        let mut rng = rng_from_seed(6);
        // delta_e (x) a involutes to delta_e (x) a^*
        let a = random_cmat(2, 2, &mut rng);
        let f = CrossedElem::delta_matrix(&action, &g.identity(), &a).unwrap();
        let expected = CrossedElem::delta_matrix(&action, &g.identity(), &a.adjoint()).unwrap();
        assert!(f.involute().unwrap().sup_norm_diff(&expected).unwrap() < 1e-13);
        // delta_x (x) a involutes to delta_{-x} (x) beta_{-x}(a^*)
        let x = g.element(&[1]).unwrap();
        let f = CrossedElem::delta_matrix(&action, &x, &a).unwrap();
        let minus_x = g.inverse(&x).unwrap();
        let expected = CrossedElem::delta_matrix(
            &action,
            &minus_x,
            &action.act(&minus_x, &a.adjoint()).unwrap(),
        )
        .unwrap();
        assert!(f.involute().unwrap().sup_norm_diff(&expected).unwrap() < 1e-13);
        // scalar trivial case: f^*(x) = conj(f(-x))
        let action = z2_scalar();
        let f = CrossedElem::random_matrix_kind(&action, &mut rng);
        let inv = f.involute().unwrap();
        for (xi, x) in action.group().elements().iter().enumerate() {
            let ni = action
                .group()
                .index_of(&action.group().inverse(x).unwrap())
                .unwrap();
            let got = inv.matrix_value(xi)[(0, 0)];
            let expected = f.matrix_value(ni)[(0, 0)].conj();
            assert!((got - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn star_algebra_laws_on_random_triples() {
        let mut rng = rng_from_seed(8);
        for action in [z2_scalar(), z4_diag_action()] {
            for kind in [CoeffKind::Matrix, CoeffKind::Function] {
                for _ in 0..5 {
                    let (f, g, h) = match kind {
                        CoeffKind::Matrix => (
                            CrossedElem::random_matrix_kind(&action, &mut rng),
                            CrossedElem::random_matrix_kind(&action, &mut rng),
                            CrossedElem::random_matrix_kind(&action, &mut rng),
                        ),
                        CoeffKind::Function => (
                            CrossedElem::random_function_kind(&action, &mut rng),
                            CrossedElem::random_function_kind(&action, &mut rng),
                            CrossedElem::random_function_kind(&action, &mut rng),
                        ),
                    };
                    // associativity
                    let lhs = f.convolve(&g).unwrap().convolve(&h).unwrap();
                    let rhs = f.convolve(&g.convolve(&h).unwrap()).unwrap();
                    assert!(lhs.sup_norm_diff(&rhs).unwrap() < 1e-10);
                    // involution is involutive and anti-multiplicative
                    let back = f.involute().unwrap().involute().unwrap();
                    assert!(back.sup_norm_diff(&f).unwrap() < 1e-12);
                    let lhs = f.convolve(&g).unwrap().involute().unwrap();
                    let rhs = g
                        .involute()
                        .unwrap()
                        .convolve(&f.involute().unwrap())
                        .unwrap();
                    assert!(lhs.sup_norm_diff(&rhs).unwrap() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn translation_twisted_action() {
        let action = z2_sign_action();
        let g = action.group().clone();
        let d = action.dim();
        let mut rng = rng_from_seed(9);
        let table: Vec<CMat> = (0..g.order())
            .map(|_| random_cmat(d, d, &mut rng))
            .collect();
        // identity element acts trivially
        let same = lt_alpha(&action, &g.identity(), &table).unwrap();
        for (a, b) in table.iter().zip(&same) {
            assert!(op_norm(&(a - b)) < 1e-14);
        }
        // delta_0 (x) e_01 moves to delta_1 (x) (-e_01)
        let mut delta = vec![CMat::zeros(2, 2); 2];
        delta[0] = matrix_unit(2, 0, 1);
        let x1 = g.element(&[1]).unwrap();
        let moved = lt_alpha(&action, &x1, &delta).unwrap();
        assert!(op_norm(&moved[0]) < 1e-14);
        assert!(op_norm(&(&moved[1] + matrix_unit(2, 0, 1))) < 1e-14);
        // scalar trivial case is plain left translation
        let iota = z2_scalar();
        let table = vec![identity(1) * cr(3.0), identity(1) * cr(7.0)];
        let moved = lt_alpha(&iota, &iota.group().element(&[1]).unwrap(), &table).unwrap();
        assert!((moved[0][(0, 0)].re - 7.0).abs() < 1e-14);
        assert!((moved[1][(0, 0)].re - 3.0).abs() < 1e-14);
        // action axioms
        let table: Vec<CMat> = (0..g.order())
            .map(|_| random_cmat(d, d, &mut rng))
            .collect();
        for x in g.elements() {
            for y in g.elements() {
                let lhs = lt_alpha(&action, &g.compose(&x, &y).unwrap(), &table).unwrap();
                let rhs = lt_alpha(&action, &x, &lt_alpha(&action, &y, &table).unwrap()).unwrap();
                for (a, b) in lhs.iter().zip(&rhs) {
                    assert!(op_norm(&(a - b)) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn constants_fixed_by_translation_action_are_invariant_constants() {
        // among constant functions, the fixed points of every lt_alpha(x)
        // are exactly the constants with alpha-invariant value
        let action = z2_sign_action();
        let g = action.group().clone();
        let d = action.dim();
        let is_fixed = |value: &CMat| -> bool {
            let table = vec![value.clone(); g.order()];
            g.elements().iter().all(|x| {
                let moved = lt_alpha(&action, x, &table).unwrap();
                moved
                    .iter()
                    .zip(&table)
                    .all(|(a, b)| op_norm(&(a - b)) < 1e-12)
            })
        };
        // diagonal matrices are Ad(diag(1,-1))-invariant
        assert!(is_fixed(&matrix_unit(d, 0, 0)));
        assert!(is_fixed(&matrix_unit(d, 1, 1)));
        // off-diagonal units flip sign, so they are not fixed
        assert!(!is_fixed(&matrix_unit(d, 0, 1)));
        assert!(!is_fixed(&matrix_unit(d, 1, 0)));
    }

    #[test]
    fn bimodule_inner_product_point_masses() {
        let action = z4_diag_action();
        let g = action.group().clone();
        let home = HModule::l2(action.clone());
        let mut rng = rng_from_seed(11);
        let a0 = random_cmat(2, 2, &mut rng);
        let b0 = random_cmat(2, 2, &mut rng);
        let xa = g.element(&[3]).unwrap();
        let xb = g.element(&[1]).unwrap();
        let phi = ModuleVector::delta(&home, &xa, &a0).unwrap();
        let psi = ModuleVector::delta(&home, &xb, &b0).unwrap();
        let inner = green_left_inner(&phi, &psi).unwrap();
        let diff = g.difference(&xa, &xb).unwrap();
        for (xi, x) in g.elements().iter().enumerate() {
            for (yi, y) in g.elements().iter().enumerate() {
                let block = &inner.function_value(xi)[yi];
                if *x == diff && *y == xa {
                    let expected = &a0 * action.act(&diff, &b0.adjoint()).unwrap();
                    assert!(op_norm(&(block - expected)) < 1e-12);
                } else {
                    assert!(op_norm(block) < 1e-13);
                }
            }
        }
        // zero argument gives the zero element
        let zero = ModuleVector::zero(&home);
        let inner = green_left_inner(&phi, &zero).unwrap();
        assert!(
            inner
                .sup_norm_diff(&CrossedElem::zero(&action, CoeffKind::Function))
                .unwrap()
                < 1e-15
        );
    }

    #[test]
    fn bimodule_inner_product_scalar_case() {
        // d = 1, trivial action: the kernel function phi(y) conj(psi(y - x))
        let action = z2_scalar();
        let g = action.group().clone();
        let home = HModule::l2(action.clone());
        let mut rng = rng_from_seed(13);
        let phi = random_vector(&home, &mut rng);
        let psi = random_vector(&home, &mut rng);
        let inner = green_left_inner(&phi, &psi).unwrap();
        for (xi, x) in g.elements().iter().enumerate() {
            for (yi, y) in g.elements().iter().enumerate() {
                let src = g.index_of(&g.difference(y, x).unwrap()).unwrap();
                let expected =
                    phi.function_block(yi)[(0, 0)] * psi.function_block(src)[(0, 0)].conj();
                let got = inner.function_value(xi)[yi][(0, 0)];
                assert!((got - expected).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn integrated_representation_unit_and_rank() {
        for action in [z2_scalar(), z4_diag_action()] {
            let n = action.group().order();
            let d = action.dim();
            let map = PiFullMap::new(&action).unwrap();
            // the unit maps to the identity operator
            let unit = CrossedElem::unit(&action, CoeffKind::Function);
            let op = map.apply(&unit).unwrap();
            let home = HModule::l2(action.clone());
            assert!(op.distance(&ModuleOperator::identity(&home)).unwrap() < 1e-13);
            // exact numerical rank (|G| d)^2
            assert_eq!(map.rank(), (n * d) * (n * d));
        }
    }

    #[test]
    fn integrated_representation_is_homomorphism() {
        let action = z4_diag_action();
        let mut rng = rng_from_seed(17);
        for _ in 0..10 {
            let f = CrossedElem::random_function_kind(&action, &mut rng);
            let g = CrossedElem::random_function_kind(&action, &mut rng);
            let lhs = pi_full(&f.convolve(&g).unwrap()).unwrap();
            let rhs = pi_full(&f).unwrap().compose(&pi_full(&g).unwrap()).unwrap();
            assert!(lhs.distance(&rhs).unwrap() < 1e-10);
            let lhs = pi_full(&f.involute().unwrap()).unwrap();
            let rhs = pi_full(&f).unwrap().adjoint();
            assert!(lhs.distance(&rhs).unwrap() < 1e-10);
        }
    }

    #[test]
    fn integrated_representation_inverts() {
        let action = z2_sign_action();
        let map = PiFullMap::new(&action).unwrap();
        let mut rng = rng_from_seed(19);
        for _ in 0..5 {
            let f = CrossedElem::random_function_kind(&action, &mut rng);
            let op = map.apply(&f).unwrap();
            let back = map.invert(&op).unwrap();
            assert!(back.sup_norm_diff(&f).unwrap() < 1e-10);
        }
    }

    #[test]
    fn imprimitivity_compatibility() {
        // pi_full(<phi, psi>_L) theta = phi . <psi, theta>_A
        let mut rng = rng_from_seed(23);
        for action in [z2_scalar(), z2_sign_action(), z4_diag_action()] {
            let home = HModule::l2(action.clone());
            for _ in 0..50 {
                let phi = random_vector(&home, &mut rng);
                let psi = random_vector(&home, &mut rng);
                let theta_vec = random_vector(&home, &mut rng);
                let op = pi_full(&green_left_inner(&phi, &psi).unwrap()).unwrap();
                let lhs = op.apply(&theta_vec).unwrap();
                let rhs = phi.right_act(&psi.inner(&theta_vec).unwrap()).unwrap();
                assert!(op_norm(&(lhs.stacked() - rhs.stacked())) < 1e-10);
            }
        }
    }

    #[test]
    fn left_inner_positivity() {
        let mut rng = rng_from_seed(29);
        for action in [z2_scalar(), z4_diag_action()] {
            let home = HModule::l2(action.clone());
            for _ in 0..10 {
                let phi = random_vector(&home, &mut rng);
                let op = pi_full(&green_left_inner(&phi, &phi).unwrap()).unwrap();
                assert!(linalg::is_positive_semidefinite(op.matrix(), 1e-10));
            }
        }
    }

    #[test]
    fn left_inner_products_fill_the_crossed_algebra() {
        let action = z2_sign_action();
        let n = action.group().order();
        let d = action.dim();
        let home = HModule::l2(action.clone());
        let mut rng = rng_from_seed(31);
        let mut coords = Vec::new();
        for _ in 0..(2 * n * n * d * d) {
            let phi = random_vector(&home, &mut rng);
            let psi = random_vector(&home, &mut rng);
            coords.push(green_left_inner(&phi, &psi).unwrap().coordinates());
        }
        let mut stacked = CMat::zeros(coords[0].len(), coords.len());
        for (j, v) in coords.iter().enumerate() {
            stacked.set_column(j, v);
        }
        assert_eq!(linalg::numerical_rank(&stacked), n * n * d * d);
    }

    #[test]
    fn involution_is_isometric_under_the_faithful_realization() {
        let mut rng = rng_from_seed(41);
        for action in [z2_scalar(), z4_diag_action()] {
            for _ in 0..5 {
                let f = CrossedElem::random_matrix_kind(&action, &mut rng);
                assert!(
                    (f.cstar_norm().unwrap() - f.involute().unwrap().cstar_norm().unwrap()).abs()
                        < 1e-10
                );
                let g = CrossedElem::random_function_kind(&action, &mut rng);
                assert!(
                    (g.cstar_norm().unwrap() - g.involute().unwrap().cstar_norm().unwrap()).abs()
                        < 1e-10
                );
                // C* identity ||f* f|| = ||f||^2
                let ff = f.involute().unwrap().convolve(&f).unwrap();
                assert!((ff.cstar_norm().unwrap() - f.cstar_norm().unwrap().powi(2)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn trivially_twisted_norm_agrees_with_fourier_sup_norm() {
        // two routes to the same C*-norm: the integrated realization and the
        // sup of operator norms of the Fourier image
        let g = FiniteAbelianGroup::cyclic(4).unwrap();
        let iota = Action::trivial(g.clone(), 2);
        let mut rng = rng_from_seed(43);
        for _ in 0..10 {
            let f = CrossedElem::random_matrix_kind(&iota, &mut rng);
            let realized = f.cstar_norm().unwrap();
            let table = crate::weyl::fourier(&g, &f.matrix_values()).unwrap();
            let sup = table.iter().map(linalg::op_norm).fold(0.0f64, f64::max);
            assert!(
                (realized - sup).abs() < 1e-10,
                "realized {realized} vs sup {sup}"
            );
        }
    }

    #[test]
    fn crossed_wire_format_round_trips() {
        let action = z4_diag_action();
        let mut rng = rng_from_seed(77);
        for kind in [CoeffKind::Matrix, CoeffKind::Function] {
            let f = match kind {
                CoeffKind::Matrix => CrossedElem::random_matrix_kind(&action, &mut rng),
                CoeffKind::Function => CrossedElem::random_function_kind(&action, &mut rng),
            };
            let json = serde_json::to_string(&f.to_data()).unwrap();
            let parsed: CrossedData = serde_json::from_str(&json).unwrap();
            let back = CrossedElem::from_data(&action, kind, &parsed).unwrap();
            assert!(back.sup_norm_diff(&f).unwrap() < 1e-14);
        }
        // kind mismatch is rejected
        let f = CrossedElem::random_matrix_kind(&action, &mut rng);
        assert!(CrossedElem::from_data(&action, CoeffKind::Function, &f.to_data()).is_err());
    }

    #[test]
    fn duality_chain_is_star_isomorphism() {
        for action in [z2_scalar(), z2_sign_action(), z4_diag_action()] {
            let chain = TakaiChain::new(&action).unwrap();
            let mut rng = rng_from_seed(37);
            let report = chain.verify(10, &mut rng).unwrap();
            assert!(report.passed(1e-10), "{report:?}");
            let n = action.group().order();
            let d = action.dim();
            assert_eq!(report.crossed_dim, n * n * d * d);
            assert_eq!(report.target_dim, n * n * d * d);
        }
    }

    #[test]
    fn duality_chain_dimension_example() {
        // |G| = 4, d = 2: both sides are 64-dimensional
        let chain = TakaiChain::new(&z4_diag_action()).unwrap();
        let report = chain.verify(2, &mut rng_from_seed(1)).unwrap();
        assert_eq!(report.crossed_dim, 64);
        assert_eq!(report.target_dim, 64);
        assert_eq!(report.rank, 64);
    }

    #[test]
    fn duality_chain_on_trivial_action_is_pure_reshuffle() {
        // for the trivial action the image of a point mass
        // delta_x (x) (delta_y (x) e_ij) is exactly E_{y, y-x} (x) e_ij
        let action = Action::trivial(FiniteAbelianGroup::cyclic(3).unwrap(), 2);
        let g = action.group().clone();
        let n = g.order();
        let d = action.dim();
        let chain = TakaiChain::new(&action).unwrap();
        for (xi, x) in g.elements().iter().enumerate() {
            for yi in 0..n {
                for i in 0..d {
                    for j in 0..d {
                        let mut table = vec![CMat::zeros(d, d); n];
                        table[yi][(i, j)] = cr(1.0);
                        let f = CrossedElem::delta_function(&action, x, &table).unwrap();
                        let got = chain.map_crossed(&f).unwrap();
                        let src = g
                            .index_of(&g.difference(&g.elements()[yi], x).unwrap())
                            .unwrap();
                        let mut big = CMat::zeros(n, n);
                        big[(yi, src)] = cr(1.0);
                        let expected = linalg::kron(&big, &matrix_unit(d, i, j));
                        assert!(op_norm(&(&got - expected)) < 1e-13, "x={xi} y={yi}");
                        // the tensor factors are readable blockwise
                        let block = chain.tensor_block(&got, yi, src);
                        assert!(op_norm(&(block - matrix_unit(d, i, j))) < 1e-13);
                    }
                }
            }
        }
    }

    #[test]
    fn duality_chain_maps_identity_to_identity() {
        for action in [z2_sign_action(), z4_diag_action()] {
            let n = action.group().order();
            let d = action.dim();
            let chain = TakaiChain::new(&action).unwrap();
            let home = HModule::l2(action.clone());
            let image = chain
                .map_operator(&ModuleOperator::identity(&home))
                .unwrap();
            assert!(op_norm(&(image - linalg::kron(&identity(n), &identity(d)))) < 1e-14);
        }
    }
}
