//! Dense complex matrix kernels shared by every module: operator norms,
//! numerical rank, range bases, and Hermitian spectra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Singular-value cutoff factor for rank decisions: a singular value counts
/// as nonzero when it exceeds `max(nrows, ncols) * RANK_EPS * sigma_max`.
pub const RANK_EPS: f64 = 1e-10;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(d: usize) -> CMat {
    CMat::identity(d, d)
}

pub fn zeros(rows: usize, cols: usize) -> CMat {
    CMat::zeros(rows, cols)
}

/// Cyclic complex Jacobi eigendecomposition of a Hermitian matrix. Returns
/// eigenvalues ascending with matching eigenvector columns. The input is
/// symmetrized first; plane rotations carry the off-diagonal phase, so the
/// kernel is exact for complex entries (the stock decompositions of the
/// linear-algebra backend mishandle some complex inputs, which is why this
/// is hand-rolled).
pub fn hermitian_eigen(a: &CMat) -> (Vec<f64>, CMat) {
    let n = a.nrows();
    debug_assert_eq!(n, a.ncols());
    let mut m = (a + a.adjoint()).scale(0.5);
    let mut v = CMat::identity(n, n);
    if n <= 1 {
        let eigs = if n == 1 {
            vec![m[(0, 0)].re]
        } else {
            Vec::new()
        };
        return (eigs, v);
    }
    let scale = m.norm();
    if scale > 0.0 {
        let stop = 1e-15 * scale;
        for _sweep in 0..60 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += m[(p, q)].norm_sqr();
                }
            }
            if off.sqrt() <= stop {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let alpha = m[(p, q)];
                    let beta = alpha.norm();
                    if beta <= stop * 1e-2 {
                        continue;
                    }
                    // rotate in the (p, q) plane: u carries the phase of the
                    // pivot, the angle zeroes it
                    let u = alpha / beta;
                    let tau = (m[(p, p)].re - m[(q, q)].re) / (2.0 * beta);
                    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let u_conj = u.conj();
                    for i in 0..n {
                        let aip = m[(i, p)];
                        let aiq = m[(i, q)];
                        m[(i, p)] = aip * c + aiq * u_conj * s;
                        m[(i, q)] = aiq * c - aip * u * s;
                    }
                    for j in 0..n {
                        let apj = m[(p, j)];
                        let aqj = m[(q, j)];
                        m[(p, j)] = apj * c + aqj * u * s;
                        m[(q, j)] = aqj * c - apj * u_conj * s;
                    }
                    for i in 0..n {
                        let vip = v[(i, p)];
                        let viq = v[(i, q)];
                        v[(i, p)] = vip * c + viq * u_conj * s;
                        v[(i, q)] = viq * c - vip * u * s;
                    }
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.partial_cmp(&m[(j, j)].re).unwrap());
    let eigs: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut sorted_v = CMat::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        sorted_v.set_column(k, &v.column(i).into_owned());
    }
    (eigs, sorted_v)
}

/// Operator norm (largest singular value), via the largest eigenvalue of
/// the Gram matrix of the smaller side.
pub fn op_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    if m.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
        return 0.0;
    }
    let gram = if m.nrows() >= m.ncols() {
        m.adjoint() * m
    } else {
        m * m.adjoint()
    };
    let (eigs, _) = hermitian_eigen(&gram);
    eigs.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// The Hermitian embedding `[[0, A], [A^*, 0]]`, whose spectrum is the
/// signed singular values of `A`. Avoids squaring, so tiny singular values
/// stay resolvable for rank decisions.
fn block_embedding(m: &CMat) -> CMat {
    let (r, c) = (m.nrows(), m.ncols());
    let mut block = CMat::zeros(r + c, r + c);
    block.view_mut((0, r), (r, c)).copy_from(m);
    block.view_mut((r, 0), (c, r)).copy_from(&m.adjoint());
    block
}

/// A `min(r,c)`-square matrix with the same singular values: the triangular
/// factor of the taller orientation. Keeps the Jacobi work bounded for
/// tall stacked matrices.
fn compact_square(m: &CMat) -> CMat {
    let work = if m.nrows() >= m.ncols() {
        m.clone()
    } else {
        m.adjoint()
    };
    if work.nrows() == work.ncols() {
        return work;
    }
    work.qr().r()
}

/// Singular values, descending.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let (eigs, _) = hermitian_eigen(&block_embedding(&compact_square(m)));
    eigs.iter()
        .rev()
        .take(m.nrows().min(m.ncols()))
        .map(|e| e.max(0.0))
        .collect()
}

/// Numerical rank with the standard cutoff `max(dim) * RANK_EPS * sigma_max`.
pub fn numerical_rank(m: &CMat) -> usize {
    let sv = singular_values(m);
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0;
    }
    let cutoff = m.nrows().max(m.ncols()) as f64 * RANK_EPS * smax;
    sv.iter().filter(|s| **s > cutoff).count()
}

/// Rotate a vector so that its largest-magnitude entry is real positive.
/// Ties resolve to the earliest index, which keeps the choice deterministic.
pub fn phase_fix(v: &CVec) -> CVec {
    let mut best = 0usize;
    let mut best_mod = 0.0f64;
    for (i, z) in v.iter().enumerate() {
        if z.norm() > best_mod + 1e-14 {
            best_mod = z.norm();
            best = i;
        }
    }
    if best_mod == 0.0 {
        return v.clone();
    }
    let phase = v[best] / v[best].norm();
    v * phase.conj()
}

/// Orthonormal basis of the range: left singular vectors above the rank
/// cutoff, largest singular value first, phase-fixed for reproducibility.
/// Eigenvectors of the block embedding at `+sigma` are `(u; v)/sqrt(2)`,
/// so the left vectors are the rescaled top components.
pub fn range_basis(m: &CMat) -> Vec<CVec> {
    if m.is_empty() {
        return Vec::new();
    }
    let r = m.nrows();
    let (eigs, vecs) = hermitian_eigen(&block_embedding(m));
    let smax = eigs.iter().map(|e| e.abs()).fold(0.0f64, f64::max);
    if smax == 0.0 {
        return Vec::new();
    }
    let cutoff = m.nrows().max(m.ncols()) as f64 * RANK_EPS * smax;
    let mut basis = Vec::new();
    for k in (0..eigs.len()).rev() {
        if eigs[k] > cutoff {
            let mut u = CVec::from_fn(r, |i, _| vecs[(i, k)]);
            let norm = u.norm();
            if norm > 0.0 {
                u /= Complex64::new(norm, 0.0);
            }
            basis.push(phase_fix(&u));
        } else {
            break;
        }
    }
    basis
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    hermitian_eigen(m).0
}

/// Hermitian within `tol` and all eigenvalues of the Hermitian part >= -tol.
pub fn is_positive_semidefinite(m: &CMat, tol: f64) -> bool {
    if op_norm(&(m - m.adjoint())) > tol {
        return false;
    }
    let herm = (m + m.adjoint()).scale(0.5);
    hermitian_eigenvalues(&herm).iter().all(|ev| *ev >= -tol)
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Column-major vectorization.
pub fn vectorize(m: &CMat) -> CVec {
    CVec::from_column_slice(m.as_slice())
}

/// Pivoted modified Gram-Schmidt: orthonormalize `candidates`, at each step
/// picking the largest remaining vector and dropping anything whose residual
/// norm falls to `drop_tol` or below. Deterministic (ties break to the
/// earliest index).
pub fn pivoted_gram_schmidt(candidates: &[CVec], drop_tol: f64) -> Vec<CVec> {
    let mut work: Vec<CVec> = candidates.to_vec();
    let mut basis: Vec<CVec> = Vec::new();
    let mut alive: Vec<bool> = vec![true; work.len()];
    loop {
        let mut best: Option<(usize, f64)> = None;
        for (i, v) in work.iter().enumerate() {
            if !alive[i] {
                continue;
            }
            let nv = v.norm();
            if best.map(|(_, bn)| nv > bn + 1e-15).unwrap_or(nv > drop_tol) {
                best = Some((i, nv));
            }
        }
        let Some((pivot, norm)) = best else { break };
        if norm <= drop_tol {
            break;
        }
        let q = &work[pivot] / Complex64::new(norm, 0.0);
        alive[pivot] = false;
        for (i, v) in work.iter_mut().enumerate() {
            if alive[i] {
                let coeff = q.dotc(v);
                *v -= &q * coeff;
                if v.norm() <= drop_tol {
                    alive[i] = false;
                }
            }
        }
        basis.push(q);
    }
    basis
}

/// Row-major `[re, im]` flattening used by every wire format.
pub fn mat_to_flat(m: &CMat) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(m.len());
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let z = m[(r, c)];
            out.push([z.re, z.im]);
        }
    }
    out
}

/// Inverse of [`mat_to_flat`] for square matrices of side `d`.
pub fn mat_from_flat(d: usize, flat: &[[f64; 2]]) -> Option<CMat> {
    if flat.len() != d * d {
        return None;
    }
    let mut m = CMat::zeros(d, d);
    for (pos, [re, im]) in flat.iter().enumerate() {
        m[(pos / d, pos % d)] = Complex64::new(*re, *im);
    }
    Some(m)
}

/// Dimension of the complex span of a family of equally-shaped matrices.
pub fn span_dimension(mats: &[CMat]) -> usize {
    if mats.is_empty() {
        return 0;
    }
    let len = mats[0].len();
    let mut stacked = CMat::zeros(len, mats.len());
    for (j, m) in mats.iter().enumerate() {
        stacked.set_column(j, &vectorize(m));
    }
    numerical_rank(&stacked)
}
