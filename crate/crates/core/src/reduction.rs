//! Rank-one reduction: compressing a free Hilbert `M_d`-module `X` by a
//! rank-one projection `P = |v><v|` to the Hilbert space `X.P`, the
//! restriction isomorphism between adjointable operators on `X` and bounded
//! operators on `X.P`, its inverse by compact generators, complements of
//! submodules, and vectors whose self inner product is `P`.
//!
//! In stacked coordinates `X.P = { w v^* : w in C^{n d} }`, so the reduced
//! space is coordinatized by the `w`-vectors; the reduced inner product
//! `f_P(<zeta, eta>)` is then the plain Hermitian product of the `w`'s.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{HModule, ModuleOperator, ModuleVector};
use crate::linalg::{self, CMat, CVec};

/// Drop tolerance for the pivoted orthonormalization of reduced bases.
pub const GS_DROP_TOL: f64 = 1e-9;

/// A rank-one projection `P = |v><v|` on `C^d`, stored by its unit vector.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneProj {
    v: CVec,
}

impl RankOneProj {
    pub fn new(v: &CVec) -> Result<Self> {
        let norm = v.norm();
        if norm == 0.0 {
            return Err(Error::Shape("projection vector must be nonzero".into()));
        }
        Ok(Self {
            v: v / Complex64::new(norm, 0.0),
        })
    }

    /// The standard choice `v = e_1`.
    pub fn standard(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::TrivialModule);
        }
        let mut v = CVec::zeros(dim);
        v[0] = Complex64::new(1.0, 0.0);
        Ok(Self { v })
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    pub fn vector(&self) -> &CVec {
        &self.v
    }

    pub fn matrix(&self) -> CMat {
        &self.v * self.v.adjoint()
    }
}

/// The unique linear functional with `P S P = f_P(S) P`, namely
/// `f_P(S) = <v, S v>`.
pub fn f_p(p: &RankOneProj, s: &CMat) -> Result<Complex64> {
    if s.nrows() != p.dim() || s.ncols() != p.dim() {
        return Err(Error::Dim {
            expected: p.dim(),
            got: s.nrows(),
        });
    }
    Ok((p.vector().adjoint() * s * p.vector())[(0, 0)])
}

/// The Hilbert space `X.P = { zeta : zeta . P = zeta }` with an orthonormal
/// basis under the reduced inner product `f_P(<., .>)`.
#[derive(Debug, Clone)]
pub struct ReducedSpace {
    parent: HModule,
    proj: RankOneProj,
    /// Columns are the `w`-coordinates of the orthonormal basis vectors.
    basis: CMat,
}

impl ReducedSpace {
    pub fn parent(&self) -> &HModule {
        &self.parent
    }

    pub fn proj(&self) -> &RankOneProj {
        &self.proj
    }

    /// Complex dimension of the reduced space (`n * d` for a free parent).
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis_w(&self) -> &CMat {
        &self.basis
    }

    /// The `k`-th basis vector as a module element `w_k v^*`.
    pub fn basis_vector(&self, k: usize) -> ModuleVector {
        let w = CVec::from(self.basis.column(k).into_owned());
        ModuleVector::from_stacked(&self.parent, &w * self.proj.vector().adjoint())
    }

    /// `w`-coordinates of a vector in `X.P` (its stacked form times `v`).
    pub fn coordinates(&self, zeta: &ModuleVector) -> Result<CVec> {
        if zeta.home() != &self.parent {
            return Err(Error::HomeMismatch);
        }
        Ok(CVec::from(zeta.stacked() * self.proj.vector()))
    }

    /// Reduced inner product `f_P(<zeta, eta>)`.
    pub fn inner(&self, zeta: &ModuleVector, eta: &ModuleVector) -> Result<Complex64> {
        f_p(&self.proj, &zeta.inner(eta)?)
    }
}

/// Reduce a module by a rank-one projection: an orthonormal basis of `X.P`.
/// The canonical spanning family `e_k v^*` is passed through the pivoted
/// orthonormalization to fix the basis deterministically.
pub fn reduce(x: &HModule, p: &RankOneProj) -> Result<ReducedSpace> {
    if p.dim() != x.dim() {
        return Err(Error::Dim {
            expected: x.dim(),
            got: p.dim(),
        });
    }
    let nd = x.stacked_dim();
    let candidates: Vec<CVec> = (0..nd)
        .map(|k| {
            let mut w = CVec::zeros(nd);
            w[k] = Complex64::new(1.0, 0.0);
            w
        })
        .collect();
    let basis_vecs = linalg::pivoted_gram_schmidt(&candidates, GS_DROP_TOL);
    let mut basis = CMat::zeros(nd, basis_vecs.len());
    for (k, w) in basis_vecs.iter().enumerate() {
        basis.set_column(k, w);
    }
    Ok(ReducedSpace {
        parent: x.clone(),
        proj: p.clone(),
        basis,
    })
}

/// Matrix of `T` restricted to `X.P` in the reduced basis:
/// `L_ij = <zeta_i, T zeta_j>_{X.P}`. The restriction map is a C*-isomorphism
/// onto the bounded operators of the reduced space.
pub fn restrict_operator(t: &ModuleOperator, red: &ReducedSpace) -> Result<CMat> {
    if t.domain() != &red.parent || t.codomain() != &red.parent {
        return Err(Error::HomeMismatch);
    }
    Ok(red.basis.adjoint() * t.matrix() * &red.basis)
}

/// Inverse of [`restrict_operator`]: assemble `sum_ij L_ij Theta_{zeta_i, zeta_j}`,
/// which is exact at finite scale.
pub fn extend_operator(l: &CMat, red: &ReducedSpace) -> Result<ModuleOperator> {
    extend_between(l, red, red)
}

/// Extension for maps between two reduced spaces (over the same projection
/// dimension): `sum_ij L_ij Theta_{eta_i, zeta_j}` from `domain` to `codomain`.
pub fn extend_between(
    l: &CMat,
    domain: &ReducedSpace,
    codomain: &ReducedSpace,
) -> Result<ModuleOperator> {
    if l.nrows() != codomain.dim() || l.ncols() != domain.dim() {
        return Err(Error::Shape(format!(
            "reduced matrix is {}x{}, expected {}x{}",
            l.nrows(),
            l.ncols(),
            codomain.dim(),
            domain.dim()
        )));
    }
    if domain.proj.dim() != codomain.proj.dim() {
        return Err(Error::Dim {
            expected: domain.proj.dim(),
            got: codomain.proj.dim(),
        });
    }
    // Theta_{eta_i, zeta_j} has stacked matrix w^cod_i (w^dom_j)^*
    let matrix = &codomain.basis * l * domain.basis.adjoint();
    ModuleOperator::between(&domain.parent, &codomain.parent, matrix)
}

/// Orthogonal projection onto the closed submodule generated by `span`,
/// built by reducing to `X.P`, projecting there, and extending back.
pub fn complement_projection(span: &[ModuleVector], x: &HModule) -> Result<ModuleOperator> {
    if span.is_empty() {
        return Err(Error::TrivialSpan);
    }
    for zeta in span {
        if zeta.home() != x {
            return Err(Error::HomeMismatch);
        }
    }
    // w-space of the reduced submodule = column space of the stacked vectors
    let mut candidates = Vec::new();
    for zeta in span {
        let stacked = zeta.stacked();
        for j in 0..stacked.ncols() {
            candidates.push(CVec::from(stacked.column(j).into_owned()));
        }
    }
    let basis = linalg::pivoted_gram_schmidt(&candidates, GS_DROP_TOL);
    if basis.is_empty() {
        return Err(Error::TrivialSpan);
    }
    let nd = x.stacked_dim();
    let mut q = CMat::zeros(nd, nd);
    for w in &basis {
        q += w * w.adjoint();
    }
    ModuleOperator::from_matrix(x, q)
}

/// A vector with `<zeta, zeta> = P`: the first reduced basis vector, whose
/// self inner product is exactly the projection.
pub fn unit_vector_for(x: &HModule, p: &RankOneProj) -> Result<ModuleVector> {
    let red = reduce(x, p)?;
    if red.dim() == 0 {
        return Err(Error::TrivialModule);
    }
    Ok(red.basis_vector(0))
}
