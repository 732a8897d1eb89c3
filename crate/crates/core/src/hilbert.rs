//! Free Hilbert `M_d`-modules, including the function module `L2(G, M_d, alpha)`
//! with its twisted inner product, and adjointable operators on them.
//!
//! Internal coordinates are untwisted: a vector of the function module is
//! stored as its image under the module isomorphism
//! `Omega(phi)(x) = alpha_{x^{-1}}(phi(x))` onto `L2(G, M_d, iota)`, stacked
//! into an `(n*d) x d` matrix (one `d x d` block per group element). In these
//! coordinates the right action is plain right multiplication, the inner
//! product is `stacked(phi)^* stacked(psi)`, and every adjointable operator is
//! left multiplication by an `(n*d) x (n*d)` matrix whose module adjoint is
//! the conjugate transpose.

use num_complex::Complex64;

use crate::algebra::Action;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::{self, CMat};

/// A free Hilbert `M_d`-module of rank `n`. When `twist` is present the
/// module is `L2(G, M_d, alpha)` for `alpha` the twisting action (possibly
/// trivial) and `n = |G|`; blocks are then indexed by group elements.
#[derive(Debug, Clone, PartialEq)]
pub struct HModule {
    rank: usize,
    dim: usize,
    twist: Option<Action>,
}

impl HModule {
    /// Plain free module `M_d^n`.
    pub fn free(rank: usize, dim: usize) -> Result<Self> {
        if rank == 0 || dim == 0 {
            return Err(Error::TrivialModule);
        }
        Ok(Self {
            rank,
            dim,
            twist: None,
        })
    }

    /// The function module `L2(G, M_d, alpha)` of the action's system.
    pub fn l2(action: Action) -> Self {
        Self {
            rank: action.group().order(),
            dim: action.dim(),
            twist: Some(action),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn twist(&self) -> Option<&Action> {
        self.twist.as_ref()
    }

    /// Total complex dimension of the underlying vector space (`n * d^2`).
    pub fn complex_dim(&self) -> usize {
        self.rank * self.dim * self.dim
    }

    /// Side length of operator matrices on this module.
    pub fn stacked_dim(&self) -> usize {
        self.rank * self.dim
    }

    fn block_index(&self, x: &GroupElement) -> Result<usize> {
        match &self.twist {
            Some(action) => action.group().index_of(x),
            None => Err(Error::Shape(
                "module blocks are not indexed by a group".into(),
            )),
        }
    }
}

/// Element of a free Hilbert `M_d`-module, stored in untwisted stacked
/// coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleVector {
    home: HModule,
    stacked: CMat, // (rank*dim) x dim
}

impl ModuleVector {
    pub fn zero(home: &HModule) -> Self {
        let stacked = CMat::zeros(home.stacked_dim(), home.dim());
        Self {
            home: home.clone(),
            stacked,
        }
    }

    /// Build a vector from function blocks `phi(x)` (for twisted homes the
    /// blocks are the function values; untwisting is applied on entry).
    pub fn from_function_blocks(home: &HModule, blocks: &[CMat]) -> Result<Self> {
        if blocks.len() != home.rank() {
            return Err(Error::Shape(format!(
                "expected {} blocks, got {}",
                home.rank(),
                blocks.len()
            )));
        }
        let d = home.dim();
        let mut stacked = CMat::zeros(home.stacked_dim(), d);
        for (i, b) in blocks.iter().enumerate() {
            if b.nrows() != d || b.ncols() != d {
                return Err(Error::Dim {
                    expected: d,
                    got: b.nrows(),
                });
            }
            let stored = match home.twist() {
                Some(action) => {
                    let u = action.unitary_at(i);
                    u.adjoint() * b * u
                }
                None => b.clone(),
            };
            stacked.view_mut((i * d, 0), (d, d)).copy_from(&stored);
        }
        Ok(Self {
            home: home.clone(),
            stacked,
        })
    }

    /// `delta_x (x) a`: the point-mass function supported at `x` with value `a`.
    pub fn delta(home: &HModule, x: &GroupElement, a: &CMat) -> Result<Self> {
        let idx = home.block_index(x)?;
        let d = home.dim();
        if a.nrows() != d || a.ncols() != d {
            return Err(Error::Dim {
                expected: d,
                got: a.nrows(),
            });
        }
        let mut blocks = vec![CMat::zeros(d, d); home.rank()];
        blocks[idx] = a.clone();
        Self::from_function_blocks(home, &blocks)
    }

    pub(crate) fn from_stacked(home: &HModule, stacked: CMat) -> Self {
        debug_assert_eq!(stacked.nrows(), home.stacked_dim());
        debug_assert_eq!(stacked.ncols(), home.dim());
        Self {
            home: home.clone(),
            stacked,
        }
    }

    pub fn home(&self) -> &HModule {
        &self.home
    }

    pub(crate) fn stacked(&self) -> &CMat {
        &self.stacked
    }

    /// Function value `phi(x)` at the block with enumeration index `i`
    /// (re-twisting the stored coordinates).
    pub fn function_block(&self, i: usize) -> CMat {
        let d = self.home.dim();
        let stored = self.stacked.view((i * d, 0), (d, d)).into_owned();
        match self.home.twist() {
            Some(action) => {
                let u = action.unitary_at(i);
                u * stored * u.adjoint()
            }
            None => stored,
        }
    }

    pub fn function_block_at(&self, x: &GroupElement) -> Result<CMat> {
        Ok(self.function_block(self.home.block_index(x)?))
    }

    fn check_home(&self, other: &ModuleVector) -> Result<()> {
        if self.home != other.home {
            return Err(Error::HomeMismatch);
        }
        Ok(())
    }

    /// The `M_d`-valued inner product. For twisted homes this computes
    /// `sum_x alpha_{x^{-1}}(phi(x)^* psi(x))`; in stored coordinates both
    /// cases are `stacked(self)^* stacked(other)`.
    pub fn inner(&self, other: &ModuleVector) -> Result<CMat> {
        self.check_home(other)?;
        Ok(self.stacked.adjoint() * &other.stacked)
    }

    /// Right action `phi . a`; on function blocks `(phi . a)(x) = phi(x) alpha_x(a)`.
    pub fn right_act(&self, a: &CMat) -> Result<ModuleVector> {
        let d = self.home.dim();
        if a.nrows() != d || a.ncols() != d {
            return Err(Error::Dim {
                expected: d,
                got: a.nrows(),
            });
        }
        Ok(Self {
            home: self.home.clone(),
            stacked: &self.stacked * a,
        })
    }

    /// Module norm `sqrt(||<phi, phi>||)`.
    pub fn norm(&self) -> f64 {
        linalg::op_norm(&(self.stacked.adjoint() * &self.stacked)).sqrt()
    }

    pub fn add(&self, other: &ModuleVector) -> Result<ModuleVector> {
        self.check_home(other)?;
        Ok(Self {
            home: self.home.clone(),
            stacked: &self.stacked + &other.stacked,
        })
    }

    pub fn scale(&self, z: Complex64) -> ModuleVector {
        Self {
            home: self.home.clone(),
            stacked: &self.stacked * z,
        }
    }

    /// The untwisting isomorphism `Omega`: re-homes a vector of
    /// `L2(G, M_d, alpha)` to `L2(G, M_d, iota)`, sending `phi` to
    /// `x -> alpha_{x^{-1}}(phi(x))`. Bijective, inner-product preserving,
    /// and intertwines the right actions.
    pub fn untwist(&self) -> Result<ModuleVector> {
        let action = self
            .home
            .twist()
            .ok_or_else(|| Error::Shape("untwist needs a twisted module".into()))?;
        let trivial = Action::trivial(action.group().clone(), action.dim());
        Ok(ModuleVector {
            home: HModule::l2(trivial),
            stacked: self.stacked.clone(),
        })
    }

    /// Inverse of [`untwist`](Self::untwist) for a given target action.
    pub fn retwist(&self, action: &Action) -> Result<ModuleVector> {
        match self.home.twist() {
            Some(t) if t.is_trivial() => {}
            _ => {
                return Err(Error::Shape(
                    "retwist starts from the untwisted module".into(),
                ))
            }
        }
        if action.group() != self.home.twist().unwrap().group() || action.dim() != self.home.dim() {
            return Err(Error::SystemMismatch);
        }
        Ok(ModuleVector {
            home: HModule::l2(action.clone()),
            stacked: self.stacked.clone(),
        })
    }
}

/// Wire format of a function-module vector: `d x d` function blocks keyed
/// by group-element coordinates (row-major `[re, im]` entries).
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct VectorData {
    pub blocks: Vec<VectorBlock>,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct VectorBlock {
    pub coords: Vec<usize>,
    pub value: Vec<[f64; 2]>,
}

impl ModuleVector {
    /// Serialize the function blocks; requires a group-indexed home.
    pub fn to_data(&self) -> Result<VectorData> {
        let action = self
            .home
            .twist()
            .ok_or_else(|| Error::Shape("serialization needs a group-indexed module".into()))?;
        let elements = action.group().elements();
        let blocks = elements
            .iter()
            .enumerate()
            .map(|(i, x)| VectorBlock {
                coords: x.coords().to_vec(),
                value: linalg::mat_to_flat(&self.function_block(i)),
            })
            .collect();
        Ok(VectorData { blocks })
    }

    /// Rebuild a vector from its wire format; missing coordinates default to
    /// zero blocks, duplicates and foreign coordinates are rejected.
    pub fn from_data(home: &HModule, data: &VectorData) -> Result<ModuleVector> {
        let action = home
            .twist()
            .ok_or_else(|| Error::Shape("deserialization needs a group-indexed module".into()))?;
        let group = action.group().clone();
        let d = home.dim();
        let mut blocks = vec![CMat::zeros(d, d); home.rank()];
        let mut seen = vec![false; home.rank()];
        for entry in &data.blocks {
            let coords: Vec<i64> = entry.coords.iter().map(|c| *c as i64).collect();
            let idx = group.index_of(&group.element(&coords)?)?;
            if seen[idx] {
                return Err(Error::Shape(format!(
                    "duplicate block at coordinates {:?}",
                    entry.coords
                )));
            }
            seen[idx] = true;
            blocks[idx] = linalg::mat_from_flat(d, &entry.value).ok_or(Error::Dim {
                expected: d * d,
                got: entry.value.len(),
            })?;
        }
        Self::from_function_blocks(home, &blocks)
    }
}

/// Adjointable operator between free Hilbert `M_d`-modules, stored as its
/// matrix on untwisted stacked coordinates. The module adjoint is the
/// conjugate transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleOperator {
    domain: HModule,
    codomain: HModule,
    matrix: CMat, // (codomain.rank*d) x (domain.rank*d)
}

impl ModuleOperator {
    pub fn identity(home: &HModule) -> Self {
        Self {
            domain: home.clone(),
            codomain: home.clone(),
            matrix: linalg::identity(home.stacked_dim()),
        }
    }

    pub fn zero(home: &HModule) -> Self {
        Self {
            domain: home.clone(),
            codomain: home.clone(),
            matrix: CMat::zeros(home.stacked_dim(), home.stacked_dim()),
        }
    }

    /// Endomorphism from its matrix.
    pub fn from_matrix(home: &HModule, matrix: CMat) -> Result<Self> {
        Self::between(home, home, matrix)
    }

    pub fn between(domain: &HModule, codomain: &HModule, matrix: CMat) -> Result<Self> {
        if domain.dim() != codomain.dim() {
            return Err(Error::Dim {
                expected: domain.dim(),
                got: codomain.dim(),
            });
        }
        if matrix.nrows() != codomain.stacked_dim() || matrix.ncols() != domain.stacked_dim() {
            return Err(Error::Shape(format!(
                "operator matrix is {}x{}, expected {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                codomain.stacked_dim(),
                domain.stacked_dim()
            )));
        }
        Ok(Self {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix,
        })
    }

    pub fn domain(&self) -> &HModule {
        &self.domain
    }

    pub fn codomain(&self) -> &HModule {
        &self.codomain
    }

    /// Home of an endomorphism.
    pub fn home(&self) -> &HModule {
        debug_assert_eq!(self.domain, self.codomain);
        &self.domain
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn apply(&self, v: &ModuleVector) -> Result<ModuleVector> {
        if *v.home() != self.domain {
            return Err(Error::HomeMismatch);
        }
        Ok(ModuleVector {
            home: self.codomain.clone(),
            stacked: &self.matrix * v.stacked(),
        })
    }

    pub fn adjoint(&self) -> ModuleOperator {
        Self {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    /// Composition `self . other`.
    pub fn compose(&self, other: &ModuleOperator) -> Result<ModuleOperator> {
        if other.codomain != self.domain {
            return Err(Error::HomeMismatch);
        }
        Ok(Self {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: &self.matrix * &other.matrix,
        })
    }

    pub fn add(&self, other: &ModuleOperator) -> Result<ModuleOperator> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::HomeMismatch);
        }
        Ok(Self {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: &self.matrix + &other.matrix,
        })
    }

    pub fn sub(&self, other: &ModuleOperator) -> Result<ModuleOperator> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, z: Complex64) -> ModuleOperator {
        Self {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: &self.matrix * z,
        }
    }

    pub fn norm(&self) -> f64 {
        linalg::op_norm(&self.matrix)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let left = &self.matrix * self.matrix.adjoint();
        let right = self.matrix.adjoint() * &self.matrix;
        linalg::op_norm(&(left - linalg::identity(self.codomain.stacked_dim()))) <= tol
            && linalg::op_norm(&(right - linalg::identity(self.domain.stacked_dim()))) <= tol
    }

    /// `||self - other||`, requiring matching homes.
    pub fn distance(&self, other: &ModuleOperator) -> Result<f64> {
        Ok(self.sub(other)?.norm())
    }
}

/// The compact generator `Theta_{zeta,eta}: xi -> zeta . <eta, xi>`, a
/// module operator of matrix `stacked(zeta) stacked(eta)^*` (rank <= d).
pub fn theta(zeta: &ModuleVector, eta: &ModuleVector) -> Result<ModuleOperator> {
    if zeta.home().dim() != eta.home().dim() {
        return Err(Error::HomeMismatch);
    }
    ModuleOperator::between(
        eta.home(),
        zeta.home(),
        zeta.stacked() * eta.stacked().adjoint(),
    )
}

/// Direct sum of modules (over the same coefficient algebra). Ranks add;
/// the result is a plain free module.
pub fn direct_sum_modules(parts: &[HModule]) -> Result<HModule> {
    if parts.is_empty() {
        return Err(Error::EmptySum);
    }
    let dim = parts[0].dim();
    if parts.iter().any(|m| m.dim() != dim) {
        return Err(Error::Dim {
            expected: dim,
            got: parts.iter().find(|m| m.dim() != dim).unwrap().dim(),
        });
    }
    HModule::free(parts.iter().map(|m| m.rank()).sum(), dim)
}

pub fn direct_sum_vectors(parts: &[ModuleVector]) -> Result<ModuleVector> {
    let homes: Vec<HModule> = parts.iter().map(|v| v.home().clone()).collect();
    let sum_home = direct_sum_modules(&homes)?;
    let d = sum_home.dim();
    let mut stacked = CMat::zeros(sum_home.stacked_dim(), d);
    let mut offset = 0usize;
    for v in parts {
        let rows = v.home().stacked_dim();
        stacked
            .view_mut((offset, 0), (rows, d))
            .copy_from(v.stacked());
        offset += rows;
    }
    Ok(ModuleVector::from_stacked(&sum_home, stacked))
}

/// Block-diagonal direct sum of operators.
pub fn direct_sum_operators(parts: &[ModuleOperator]) -> Result<ModuleOperator> {
    let domains: Vec<HModule> = parts.iter().map(|t| t.domain().clone()).collect();
    let codomains: Vec<HModule> = parts.iter().map(|t| t.codomain().clone()).collect();
    let sum_domain = direct_sum_modules(&domains)?;
    let sum_codomain = direct_sum_modules(&codomains)?;
    let mut matrix = CMat::zeros(sum_codomain.stacked_dim(), sum_domain.stacked_dim());
    let (mut ro, mut co) = (0usize, 0usize);
    for t in parts {
        let (r, c) = (t.codomain().stacked_dim(), t.domain().stacked_dim());
        matrix.view_mut((ro, co), (r, c)).copy_from(t.matrix());
        ro += r;
        co += c;
    }
    ModuleOperator::between(&sum_domain, &sum_codomain, matrix)
}

/// `m`-fold direct sum of one operator.
pub fn direct_sum_copies(t: &ModuleOperator, m: usize) -> Result<ModuleOperator> {
    direct_sum_operators(&vec![t.clone(); m])
}
