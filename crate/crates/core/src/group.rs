//! Finite abelian groups `Z_{n_1} x ... x Z_{n_k}`, their self-dual character
//! groups, and the exponential pairing.
//!
//! Haar measure on both the group and its dual is counting measure with
//! weight 1, so convolution and Fourier sums are plain sums and Fourier
//! inversion carries an explicit `1/|G|`. The modular function is identically
//! 1 (abelian, discrete) and never appears as data.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// `Z_{n_1} x ... x Z_{n_k}` given by its list of cyclic orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    factors: Vec<usize>,
}

/// Element of a finite abelian group: one reduced residue per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    coords: Vec<usize>,
}

/// Character of the group under the self-dual identification: a character is
/// stored by the same residue coordinates as a group element, and evaluates
/// through [`FiniteAbelianGroup::pair`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    coords: Vec<usize>,
}

impl GroupElement {
    pub fn coords(&self) -> &[usize] {
        &self.coords
    }
}

impl Character {
    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    /// Reinterpret the character as the group element with the same
    /// coordinates (the self-dual identification).
    pub fn as_element(&self) -> GroupElement {
        GroupElement {
            coords: self.coords.clone(),
        }
    }
}

impl FiniteAbelianGroup {
    pub fn new(factors: &[usize]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Shape(
                "group needs at least one cyclic factor".into(),
            ));
        }
        if factors.contains(&0) {
            return Err(Error::Shape("cyclic orders must be >= 1".into()));
        }
        Ok(Self {
            factors: factors.to_vec(),
        })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(&[n])
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.factors.len()],
        }
    }

    pub fn trivial_character(&self) -> Character {
        Character {
            coords: vec![0; self.factors.len()],
        }
    }

    fn reduce(&self, coords: &[i64]) -> Result<Vec<usize>> {
        if coords.len() != self.factors.len() {
            return Err(Error::Shape(format!(
                "expected {} coordinates, got {}",
                self.factors.len(),
                coords.len()
            )));
        }
        Ok(coords
            .iter()
            .zip(&self.factors)
            .map(|(c, n)| (c.rem_euclid(*n as i64)) as usize)
            .collect())
    }

    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        Ok(GroupElement {
            coords: self.reduce(coords)?,
        })
    }

    pub fn character(&self, coords: &[i64]) -> Result<Character> {
        Ok(Character {
            coords: self.reduce(coords)?,
        })
    }

    fn check_member(&self, coords: &[usize]) -> Result<()> {
        if coords.len() != self.factors.len()
            || coords.iter().zip(&self.factors).any(|(c, n)| c >= n)
        {
            return Err(Error::Shape(format!(
                "coordinates {coords:?} do not belong to Z_{:?}",
                self.factors
            )));
        }
        Ok(())
    }

    /// Componentwise sum mod `n_j`.
    pub fn compose(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check_member(&g.coords)?;
        self.check_member(&h.coords)?;
        let coords = g
            .coords
            .iter()
            .zip(&h.coords)
            .zip(&self.factors)
            .map(|((a, b), n)| (a + b) % n)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check_member(&g.coords)?;
        let coords = g
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(a, n)| (n - a) % n)
            .collect();
        Ok(GroupElement { coords })
    }

    /// `g - h` in additive notation.
    pub fn difference(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        let h_inv = self.inverse(h)?;
        self.compose(g, &h_inv)
    }

    pub fn compose_characters(&self, a: &Character, b: &Character) -> Result<Character> {
        let g = self.compose(&a.as_element(), &b.as_element())?;
        Ok(Character { coords: g.coords })
    }

    pub fn inverse_character(&self, a: &Character) -> Result<Character> {
        let g = self.inverse(&a.as_element())?;
        Ok(Character { coords: g.coords })
    }

    /// All group elements in mixed-radix order (last factor fastest).
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.order());
        let mut coords = vec![0usize; self.factors.len()];
        loop {
            out.push(GroupElement {
                coords: coords.clone(),
            });
            let mut j = self.factors.len();
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                coords[j] += 1;
                if coords[j] < self.factors[j] {
                    break;
                }
                coords[j] = 0;
            }
        }
    }

    /// All characters, in the same mixed-radix order as [`elements`](Self::elements).
    pub fn characters(&self) -> Vec<Character> {
        self.elements()
            .into_iter()
            .map(|g| Character { coords: g.coords })
            .collect()
    }

    /// Position of `g` in the [`elements`](Self::elements) enumeration.
    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        self.check_member(&g.coords)?;
        let mut idx = 0usize;
        for (c, n) in g.coords.iter().zip(&self.factors) {
            idx = idx * n + c;
        }
        Ok(idx)
    }

    pub fn index_of_character(&self, chi: &Character) -> Result<usize> {
        self.index_of(&chi.as_element())
    }

    /// The pairing `chi(x) = exp(2 pi i sum_j x_j y_j / n_j)` between a
    /// character with coordinates `y` and an element with coordinates `x`.
    /// Bimultiplicative with unit modulus.
    pub fn pair(&self, chi: &Character, x: &GroupElement) -> Result<Complex64> {
        self.check_member(&chi.coords)?;
        self.check_member(&x.coords)?;
        let mut angle = 0.0f64;
        for ((y, xc), n) in chi.coords.iter().zip(&x.coords).zip(&self.factors) {
            angle += ((y * xc) % n) as f64 / *n as f64;
        }
        Ok(Complex64::from_polar(1.0, TAU * angle))
    }
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl std::fmt::Display for Character {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "chi{}", self.as_element())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_addition() {
        let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
        let g = z4.element(&[3]).unwrap();
        let h = z4.element(&[2]).unwrap();
        assert_eq!(z4.compose(&g, &h).unwrap(), z4.element(&[1]).unwrap());
        // identity and inverses
        assert_eq!(z4.compose(&g, &z4.identity()).unwrap(), g);
        assert_eq!(
            z4.compose(&g, &z4.inverse(&g).unwrap()).unwrap(),
            z4.identity()
        );
    }

    #[test]
    fn componentwise_addition() {
        let g6 = FiniteAbelianGroup::new(&[2, 3]).unwrap();
        let a = g6.element(&[1, 2]).unwrap();
        let b = g6.element(&[1, 1]).unwrap();
        assert_eq!(g6.compose(&a, &b).unwrap(), g6.identity());
    }

    #[test]
    fn shape_mismatch_is_structural_error() {
        let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
        let g6 = FiniteAbelianGroup::new(&[2, 3]).unwrap();
        let a = g6.element(&[1, 1]).unwrap();
        assert!(z4.compose(&a, &a).is_err());
        assert!(z4.element(&[1, 2]).is_err());
    }

    #[test]
    fn pairing_values() {
        let z2 = FiniteAbelianGroup::cyclic(2).unwrap();
        let chi = z2.character(&[1]).unwrap();
        let x = z2.element(&[1]).unwrap();
        let v = z2.pair(&chi, &x).unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-12);

        let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
        let chi = z4.character(&[1]).unwrap();
        let x = z4.element(&[1]).unwrap();
        let v = z4.pair(&chi, &x).unwrap();
        assert!((v - Complex64::new(0.0, 1.0)).norm() < 1e-12);

        // trivial character pairs to 1 everywhere
        for x in z4.elements() {
            let v = z4.pair(&z4.trivial_character(), &x).unwrap();
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn pairing_is_bimultiplicative_and_unimodular() {
        for factors in [
            vec![2usize],
            vec![3],
            vec![4],
            vec![2, 2],
            vec![2, 3],
            vec![12],
        ] {
            let g = FiniteAbelianGroup::new(&factors).unwrap();
            for chi in g.characters() {
                for psi in g.characters() {
                    for x in g.elements() {
                        let lhs = g
                            .pair(&g.compose_characters(&chi, &psi).unwrap(), &x)
                            .unwrap();
                        let rhs = g.pair(&chi, &x).unwrap() * g.pair(&psi, &x).unwrap();
                        assert!((lhs - rhs).norm() < 1e-10);
                        assert!((g.pair(&chi, &x).unwrap().norm() - 1.0).abs() < 1e-12);
                    }
                }
                for x in g.elements() {
                    for y in g.elements() {
                        let lhs = g.pair(&chi, &g.compose(&x, &y).unwrap()).unwrap();
                        let rhs = g.pair(&chi, &x).unwrap() * g.pair(&chi, &y).unwrap();
                        assert!((lhs - rhs).norm() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn character_orthogonality() {
        for factors in [vec![2usize], vec![4], vec![2, 3], vec![2, 2, 2]] {
            let g = FiniteAbelianGroup::new(&factors).unwrap();
            let order = g.order() as f64;
            for chi in g.characters() {
                let sum: Complex64 = g.elements().iter().map(|x| g.pair(&chi, x).unwrap()).sum();
                let expected = if chi == g.trivial_character() {
                    order
                } else {
                    0.0
                };
                assert!((sum - Complex64::new(expected, 0.0)).norm() < 1e-10);
            }
            // dual orthogonality
            for x in g.elements() {
                let sum: Complex64 = g
                    .characters()
                    .iter()
                    .map(|chi| g.pair(chi, &x).unwrap())
                    .sum();
                let expected = if x == g.identity() { order } else { 0.0 };
                assert!((sum - Complex64::new(expected, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn character_tables_are_distinct() {
        let g = FiniteAbelianGroup::new(&[2, 3]).unwrap();
        let tables: Vec<Vec<Complex64>> = g
            .characters()
            .iter()
            .map(|chi| {
                g.elements()
                    .iter()
                    .map(|x| g.pair(chi, x).unwrap())
                    .collect()
            })
            .collect();
        assert_eq!(tables.len(), g.order());
        for i in 0..tables.len() {
            for j in (i + 1)..tables.len() {
                let far = tables[i]
                    .iter()
                    .zip(&tables[j])
                    .any(|(a, b)| (a - b).norm() > 1e-6);
                assert!(far, "characters {i} and {j} coincide");
            }
        }
    }

    #[test]
    fn enumeration_and_indexing_agree() {
        let g = FiniteAbelianGroup::new(&[3, 1, 4]).unwrap();
        let els = g.elements();
        assert_eq!(els.len(), 12);
        for (i, el) in els.iter().enumerate() {
            assert_eq!(g.index_of(el).unwrap(), i);
        }
    }
}
