//! Seeded randomness: complex Gaussian matrices and Haar-distributed
//! unitaries, deterministic per seed.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{CMat, CVec};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian sample (Box-Muller).
fn standard_complex<R: Rng>(rng: &mut R) -> Complex64 {
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random();
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = std::f64::consts::TAU * u2;
    Complex64::new(r * theta.cos(), r * theta.sin()) / std::f64::consts::SQRT_2
}

pub fn random_cmat<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> CMat {
    DMatrix::from_fn(rows, cols, |_, _| standard_complex(rng))
}

pub fn random_cvec<R: Rng>(len: usize, rng: &mut R) -> CVec {
    CVec::from_fn(len, |_, _| standard_complex(rng))
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// diagonal-of-R phase correction.
pub fn haar_unitary<R: Rng>(n: usize, rng: &mut R) -> CMat {
    let g = random_cmat(n, n, rng);
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let mut u = q;
    for j in 0..n {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 {
            rjj / rjj.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            u[(i, j)] *= phase;
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, op_norm};

    #[test]
    fn haar_unitary_is_unitary_and_deterministic() {
        let mut rng = rng_from_seed(11);
        let u = haar_unitary(5, &mut rng);
        assert!(op_norm(&(&u * u.adjoint() - identity(5))) < 1e-12);
        let mut rng2 = rng_from_seed(11);
        let v = haar_unitary(5, &mut rng2);
        assert_eq!(u, v);
        let w = haar_unitary(5, &mut rng);
        assert!(op_norm(&(&u - &w)) > 1e-3);
    }
}
