//! The coefficient algebra `M_d(C)` with its C*-operations, and actions of a
//! finite abelian group on it by inner automorphisms `alpha_x = Ad(u_x)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::linalg::{self, CMat, CVec};

/// Default residual tolerance for algebraic identities.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Operator norm of a matrix (largest singular value).
pub fn op_norm(t: &CMat) -> f64 {
    linalg::op_norm(t)
}

/// Matrix unit `e_ij` in `M_d`.
pub fn matrix_unit(d: usize, i: usize, j: usize) -> CMat {
    let mut m = CMat::zeros(d, d);
    m[(i, j)] = Complex64::new(1.0, 0.0);
    m
}

/// All `d^2` matrix units in row-major order `e_00, e_01, ...`.
pub fn matrix_units(d: usize) -> Vec<CMat> {
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            out.push(matrix_unit(d, i, j));
        }
    }
    out
}

/// The rank-one operator sending `x` to `<w, x> v`, i.e. `v w^*` as a matrix.
pub fn rank_one(v: &CVec, w: &CVec) -> Result<CMat> {
    if v.len() != w.len() {
        return Err(Error::Dim {
            expected: v.len(),
            got: w.len(),
        });
    }
    Ok(v * w.adjoint())
}

/// Positivity test: Hermitian within `tol` and spectrum >= -tol.
pub fn is_positive(t: &CMat, tol: f64) -> bool {
    linalg::is_positive_semidefinite(t, tol)
}

/// An action of a finite abelian group on `M_d` by inner automorphisms
/// `alpha_x = Ad(u_x)`, given by a genuine (non-projective) unitary
/// representation `x -> u_x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Action {
    group: FiniteAbelianGroup,
    dim: usize,
    unitaries: Vec<CMat>, // indexed by the group enumeration
}

impl Action {
    /// Validate a full unitary table: `u_e = I`, each `u_x` unitary, and
    /// `u_{x+y} = u_x u_y`, all within `tol`. On failure reports the kind of
    /// violation, the worst witness, and its residual.
    pub fn validated(group: FiniteAbelianGroup, unitaries: Vec<CMat>, tol: f64) -> Result<Self> {
        let order = group.order();
        if unitaries.len() != order {
            return Err(Error::Shape(format!(
                "action table has {} entries for a group of order {}",
                unitaries.len(),
                order
            )));
        }
        let dim = unitaries[0].nrows();
        if dim == 0 {
            return Err(Error::Shape("action dimension must be >= 1".into()));
        }
        for (i, u) in unitaries.iter().enumerate() {
            if u.nrows() != dim || u.ncols() != dim {
                return Err(Error::Shape(format!(
                    "entry {i} is {}x{}, expected {dim}x{dim}",
                    u.nrows(),
                    u.ncols()
                )));
            }
        }
        let elements = group.elements();
        let eye = linalg::identity(dim);

        let id_residual = op_norm(&(&unitaries[0] - &eye));
        if id_residual > tol {
            return Err(Error::InvalidAction {
                kind: "u_e differs from the identity",
                witness: elements[0].to_string(),
                residual: id_residual,
            });
        }
        let mut worst_unitary = (0usize, 0.0f64);
        for (i, u) in unitaries.iter().enumerate() {
            let r = op_norm(&(u * u.adjoint() - &eye));
            if r > worst_unitary.1 {
                worst_unitary = (i, r);
            }
        }
        if worst_unitary.1 > tol {
            return Err(Error::InvalidAction {
                kind: "non-unitary entry",
                witness: elements[worst_unitary.0].to_string(),
                residual: worst_unitary.1,
            });
        }
        let mut worst_hom = ((0usize, 0usize), 0.0f64);
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                let k = group.index_of(&group.compose(x, y)?)?;
                let r = op_norm(&(&unitaries[k] - &unitaries[i] * &unitaries[j]));
                if r > worst_hom.1 {
                    worst_hom = ((i, j), r);
                }
            }
        }
        if worst_hom.1 > tol {
            return Err(Error::InvalidAction {
                kind: "homomorphism failure",
                witness: format!(
                    "({}, {})",
                    elements[worst_hom.0 .0], elements[worst_hom.0 .1]
                ),
                residual: worst_hom.1,
            });
        }
        Ok(Self {
            group,
            dim,
            unitaries,
        })
    }

    pub fn new(group: FiniteAbelianGroup, unitaries: Vec<CMat>) -> Result<Self> {
        Self::validated(group, unitaries, DEFAULT_TOL)
    }

    /// The trivial action `iota` (every `u_x = I`).
    pub fn trivial(group: FiniteAbelianGroup, dim: usize) -> Self {
        let unitaries = vec![linalg::identity(dim); group.order()];
        Self {
            group,
            dim,
            unitaries,
        }
    }

    /// Complete a table from one unitary per cyclic generator via the
    /// homomorphism property, then validate. Order violations
    /// (`gen_j^{n_j} != I`) surface as homomorphism failures.
    pub fn from_generators(group: FiniteAbelianGroup, generators: &[CMat]) -> Result<Self> {
        if generators.len() != group.factors().len() {
            return Err(Error::Shape(format!(
                "need {} generator unitaries, got {}",
                group.factors().len(),
                generators.len()
            )));
        }
        let dim = generators.first().map(|g| g.nrows()).unwrap_or(0);
        let mut unitaries = Vec::with_capacity(group.order());
        for el in group.elements() {
            let mut u = linalg::identity(dim);
            for (gen, power) in generators.iter().zip(el.coords()) {
                for _ in 0..*power {
                    u = &u * gen;
                }
            }
            unitaries.push(u);
        }
        Self::validated(group, unitaries, DEFAULT_TOL)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unitary(&self, x: &GroupElement) -> Result<&CMat> {
        Ok(&self.unitaries[self.group.index_of(x)?])
    }

    pub fn unitary_at(&self, idx: usize) -> &CMat {
        &self.unitaries[idx]
    }

    pub fn is_trivial(&self) -> bool {
        let eye = linalg::identity(self.dim);
        self.unitaries
            .iter()
            .all(|u| op_norm(&(u - &eye)) <= DEFAULT_TOL)
    }

    /// `alpha_x(t) = u_x t u_x^*`.
    pub fn act(&self, x: &GroupElement, t: &CMat) -> Result<CMat> {
        if t.nrows() != self.dim || t.ncols() != self.dim {
            return Err(Error::Dim {
                expected: self.dim,
                got: t.nrows(),
            });
        }
        let u = self.unitary(x)?;
        Ok(u * t * u.adjoint())
    }

    /// `alpha_{x^{-1}}(t) = u_x^* t u_x`.
    pub fn act_inv(&self, x: &GroupElement, t: &CMat) -> Result<CMat> {
        if t.nrows() != self.dim || t.ncols() != self.dim {
            return Err(Error::Dim {
                expected: self.dim,
                got: t.nrows(),
            });
        }
        let u = self.unitary(x)?;
        Ok(u.adjoint() * t * u)
    }

    /// Worst deviation `max_{x, e_ij} ||alpha_x(e_ij) - beta_x(e_ij)||`
    /// between two actions on the same system.
    pub fn distance(&self, other: &Action) -> Result<f64> {
        if self.group != other.group || self.dim != other.dim {
            return Err(Error::SystemMismatch);
        }
        let mut worst = 0.0f64;
        for x in self.group.elements() {
            for unit in matrix_units(self.dim) {
                let r = op_norm(&(self.act(&x, &unit)? - other.act(&x, &unit)?));
                worst = worst.max(r);
            }
        }
        Ok(worst)
    }
}

/// Validate a candidate unitary table into an [`Action`].
pub fn validate_action(
    group: FiniteAbelianGroup,
    unitaries: Vec<CMat>,
    tol: f64,
) -> Result<Action> {
    Action::validated(group, unitaries, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, cr, identity};
    use crate::rng::{random_cmat, rng_from_seed};

    fn pauli_x() -> CMat {
        CMat::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)])
    }

    fn diag(entries: &[Complex64]) -> CMat {
        let d = entries.len();
        let mut m = CMat::zeros(d, d);
        for (i, z) in entries.iter().enumerate() {
            m[(i, i)] = *z;
        }
        m
    }

    #[test]
    fn rank_one_matches_definition() {
        let e1 = CVec::from_column_slice(&[cr(1.0), cr(0.0)]);
        let e2 = CVec::from_column_slice(&[cr(0.0), cr(1.0)]);
        assert_eq!(rank_one(&e1, &e1).unwrap(), matrix_unit(2, 0, 0));
        assert_eq!(rank_one(&e1, &e2).unwrap(), matrix_unit(2, 0, 1));
        let zero = CVec::from_column_slice(&[cr(0.0), cr(0.0)]);
        assert_eq!(op_norm(&rank_one(&zero, &e2).unwrap()), 0.0);
        let e3 = CVec::from_column_slice(&[cr(1.0), cr(0.0), cr(0.0)]);
        assert!(rank_one(&e1, &e3).is_err());
        assert!(linalg::numerical_rank(&rank_one(&e1, &e2).unwrap()) <= 1);
    }

    #[test]
    fn trivial_action_fixes_everything() {
        let g = FiniteAbelianGroup::cyclic(3).unwrap();
        let iota = Action::trivial(g.clone(), 2);
        let t = random_cmat(2, 2, &mut rng_from_seed(5));
        for x in g.elements() {
            assert!(op_norm(&(iota.act(&x, &t).unwrap() - &t)) < 1e-14);
        }
        assert!(iota.is_trivial());
    }

    #[test]
    fn diagonal_action_on_z4() {
        let g = FiniteAbelianGroup::cyclic(4).unwrap();
        let alpha = Action::from_generators(g.clone(), &[diag(&[cr(1.0), c(0.0, 1.0)])]).unwrap();
        let x1 = g.element(&[1]).unwrap();
        // diag(1,i) e_01 diag(1,-i) = -i e_01
        let got = alpha.act(&x1, &matrix_unit(2, 0, 1)).unwrap();
        let expected = matrix_unit(2, 0, 1) * c(0.0, -1.0);
        assert!(op_norm(&(got - expected)) < 1e-12);
        // the identity of the algebra is fixed
        assert!(op_norm(&(alpha.act(&x1, &identity(2)).unwrap() - identity(2))) < 1e-12);
    }

    #[test]
    fn action_axioms_hold() {
        let g = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        let alpha = Action::from_generators(
            g.clone(),
            &[diag(&[cr(1.0), cr(-1.0)]), diag(&[cr(-1.0), cr(1.0)])],
        )
        .unwrap();
        let t = random_cmat(2, 2, &mut rng_from_seed(9));
        for x in g.elements() {
            for y in g.elements() {
                let xy = g.compose(&x, &y).unwrap();
                let lhs = alpha.act(&xy, &t).unwrap();
                let rhs = alpha.act(&x, &alpha.act(&y, &t).unwrap()).unwrap();
                assert!(op_norm(&(lhs - rhs)) < 1e-12);
            }
        }
        assert!(op_norm(&(alpha.act(&g.identity(), &t).unwrap() - &t)) < 1e-14);
        // automorphisms are multiplicative, adjoint-preserving, isometric
        let s = random_cmat(2, 2, &mut rng_from_seed(10));
        for x in g.elements() {
            let lhs = alpha.act(&x, &(&t * &s)).unwrap();
            let rhs = alpha.act(&x, &t).unwrap() * alpha.act(&x, &s).unwrap();
            assert!(op_norm(&(lhs - rhs)) < 1e-12);
            let lhs = alpha.act(&x, &t.adjoint()).unwrap();
            let rhs = alpha.act(&x, &t).unwrap().adjoint();
            assert!(op_norm(&(lhs - rhs)) < 1e-12);
            assert!((op_norm(&alpha.act(&x, &t).unwrap()) - op_norm(&t)).abs() < 1e-10);
        }
    }

    #[test]
    fn validation_rejects_non_unitary_generator() {
        let g = FiniteAbelianGroup::cyclic(2).unwrap();
        let bad = CMat::from_row_slice(2, 2, &[cr(1.0), cr(1.0), cr(0.0), cr(1.0)]);
        let err = Action::from_generators(g, &[bad]).unwrap_err();
        match err {
            Error::InvalidAction { kind, .. } => assert_eq!(kind, "non-unitary entry"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn validation_accepts_involutive_generator() {
        let g = FiniteAbelianGroup::cyclic(2).unwrap();
        let alpha = Action::from_generators(g, &[diag(&[cr(1.0), cr(-1.0)])]).unwrap();
        assert!(!alpha.is_trivial());
    }

    #[test]
    fn validation_rejects_wrong_order_generator() {
        // Pauli X has order 2, so it cannot generate an action of Z_3
        let g = FiniteAbelianGroup::cyclic(3).unwrap();
        let err = Action::from_generators(g, &[pauli_x()]).unwrap_err();
        match err {
            Error::InvalidAction { kind, .. } => assert_eq!(kind, "homomorphism failure"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn validation_rejects_non_commuting_generators() {
        // diag(1,-1) and Pauli X anticommute, so no genuine representation
        // of Z_2 x Z_2 completes from them
        let g = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        let err = Action::from_generators(g, &[diag(&[cr(1.0), cr(-1.0)]), pauli_x()]).unwrap_err();
        match err {
            Error::InvalidAction { kind, .. } => assert_eq!(kind, "homomorphism failure"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn positivity_accepts_exactly_squares() {
        let mut rng = rng_from_seed(42);
        for d in 1..=4usize {
            for _ in 0..25 {
                let s = random_cmat(d, d, &mut rng);
                let p = s.adjoint() * &s;
                assert!(is_positive(&p, 1e-10));
                // a generic non-Hermitian matrix must be rejected
                let q = random_cmat(d, d, &mut rng);
                if op_norm(&(&q - q.adjoint())) > 1e-6 {
                    assert!(!is_positive(&q, 1e-10));
                }
            }
        }
    }

    #[test]
    fn ideal_generated_by_nonzero_element_is_everything() {
        // simplicity proxy: span{ e_i0 T e_0j style products } has rank d^2
        let mut rng = rng_from_seed(3);
        for d in [2usize, 3] {
            let t = random_cmat(d, d, &mut rng);
            let mut products = Vec::new();
            for a in matrix_units(d) {
                for b in matrix_units(d) {
                    products.push(&a * &t * &b);
                }
            }
            assert_eq!(linalg::span_dimension(&products), d * d);
        }
    }
}
