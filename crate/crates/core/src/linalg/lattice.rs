use num_traits::Zero;

use super::matrix::RationalMatrix;
use super::normal_form::{hermite_normal_form, left_kernel};
use super::rational::{Rational, RationalVector};
use super::subspace::Subspace;

/// A finitely generated subgroup of Q^m, kept as an echelon Z-basis.
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    basis: Vec<RationalVector>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn generated_by(dim: usize, gens: &[RationalVector]) -> Self {
        let gens: Vec<&RationalVector> = gens.iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Lattice { dim, basis: Vec::new(), pivots: Vec::new() };
        }
        let m = RationalMatrix::from_rows(dim, gens.into_iter().cloned().collect());
        let (den, im) = m.clear_denominators();
        let h = hermite_normal_form(&im);
        let d = Rational::from_integer(den);
        let basis = (0..h.rank())
            .map(|i| {
                RationalVector::new(
                    h.h.row(i)
                        .iter()
                        .map(|x| Rational::from_integer(x.clone()) / &d)
                        .collect(),
                )
            })
            .collect();
        Lattice { dim, basis, pivots: h.pivots }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RationalVector] {
        &self.basis
    }

    /// Rational coordinates of `x` in the Z-basis, if `x` is in its Q-span.
    pub fn coordinates(&self, x: &RationalVector) -> Option<Vec<Rational>> {
        let mut coords: Vec<Rational> = Vec::with_capacity(self.basis.len());
        for (k, &p) in self.pivots.iter().enumerate() {
            let mut acc = x[p].clone();
            for (j, c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    acc -= c * &self.basis[j][p];
                }
            }
            coords.push(acc / &self.basis[k][p]);
        }
        let mut rebuilt = RationalVector::zeros(self.dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                rebuilt = &rebuilt + &b.scale(c);
            }
        }
        (&rebuilt == x).then_some(coords)
    }

    pub fn combine(&self, coords: &[Rational]) -> RationalVector {
        let mut out = RationalVector::zeros(self.dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = &out + &b.scale(c);
            }
        }
        out
    }

    /// Z-basis of the lattice points lying in the subspace `w`.
    pub fn intersect_subspace(&self, w: &Subspace) -> Vec<RationalVector> {
        if self.basis.is_empty() || w.dim() == 0 {
            return Vec::new();
        }
        let ann = w.annihilator();
        if ann.dim() == 0 {
            return self.basis.clone();
        }
        // z·B lies in w iff (z·B)·ann^T = 0
        let c = RationalMatrix::from_rows(self.dim, self.basis.clone()).mul(&ann.basis_matrix().transpose());
        let (_, ic) = c.clear_denominators();
        left_kernel(&ic)
            .into_iter()
            .map(|z| {
                let z: Vec<Rational> = z.into_iter().map(Rational::from_integer).collect();
                self.combine(&z)
            })
            .filter(|v| !v.is_zero())
            .collect()
    }
}

/// Elementary divisors of the lattice `sub` relative to `sup` (both of full
/// rank in the same space): rationals `d_k` with `sub = ⊕ d_k·f_k` for some
/// Z-basis `f_k` of `sup`.
pub fn relative_elementary_divisors(sup: &Lattice, sub: &Lattice) -> Option<Vec<Rational>> {
    if sup.rank() != sub.rank() {
        return None;
    }
    let rows: Option<Vec<RationalVector>> = sub
        .basis()
        .iter()
        .map(|b| sup.coordinates(b).map(RationalVector::new))
        .collect();
    let c = RationalMatrix::from_rows(sup.rank(), rows?);
    let (den, ic) = c.clear_denominators();
    let s = super::normal_form::smith_normal_form(&ic);
    let den = Rational::from_integer(den);
    Some(
        s.invariant_factors
            .into_iter()
            .map(|d| Rational::from_integer(d) / &den)
            .collect(),
    )
}

pub fn is_integral(coords: &[Rational]) -> bool {
    coords.iter().all(|c| c.is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::rat;

    #[test]
    fn coordinates_in_hnf_basis() {
        let l = Lattice::generated_by(
            2,
            &[
                RationalVector::from_ints(&[1, 0]),
                RationalVector::from_ints(&[0, 1]),
                RationalVector::from_pairs(&[(1, 2), (1, 2)]),
            ],
        );
        assert_eq!(l.rank(), 2);
        let c = l.coordinates(&RationalVector::from_ints(&[1, 0])).unwrap();
        assert!(is_integral(&c));
        let c = l.coordinates(&RationalVector::from_pairs(&[(1, 2), (0, 1)])).unwrap();
        assert!(!is_integral(&c));
    }

    #[test]
    fn intersect_with_line() {
        let l = Lattice::generated_by(
            2,
            &[RationalVector::from_ints(&[1, 0]), RationalVector::from_pairs(&[(1, 2), (1, 2)])],
        );
        let w = Subspace::span(2, &[RationalVector::from_ints(&[1, 0])]);
        let b = l.intersect_subspace(&w);
        assert_eq!(b.len(), 1);
        let (c, u) = b[0].primitive_decomposition();
        assert_eq!(u, RationalVector::from_ints(&[1, 0]));
        assert!(c == rat(1, 1) || c == rat(-1, 1));
    }

    #[test]
    fn relative_divisors() {
        let sup = Lattice::generated_by(2, &[RationalVector::from_ints(&[1, 0]), RationalVector::from_ints(&[0, 1])]);
        let sub = Lattice::generated_by(2, &[RationalVector::from_ints(&[2, 0]), RationalVector::from_ints(&[0, 1])]);
        assert_eq!(relative_elementary_divisors(&sup, &sub).unwrap(), vec![rat(1, 1), rat(2, 1)]);
    }
}
