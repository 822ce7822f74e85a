use num_traits::{One, Zero};

use super::matrix::RationalMatrix;
use super::rational::{Rational, RationalVector};
use crate::error::{Error, Result};

/// Reduced row-echelon form of the span of `rows`: returns the nonzero rows
/// and their pivot columns.
pub fn rref(rows: &[RationalVector], n: usize) -> (Vec<RationalVector>, Vec<usize>) {
    let mut a: Vec<Vec<Rational>> = rows.iter().map(|r| r.entries().to_vec()).collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..n {
        if pr == a.len() {
            break;
        }
        let Some(p) = (pr..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, pr);
        let piv = a[pr][c].clone();
        if !piv.is_one() {
            for x in a[pr].iter_mut() {
                *x /= &piv;
            }
        }
        for i in 0..a.len() {
            if i == pr || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..n {
                let t = &f * &a[pr][j];
                a[i][j] -= t;
            }
        }
        pivots.push(c);
        pr += 1;
    }
    a.truncate(pr);
    (a.into_iter().map(RationalVector::new).collect(), pivots)
}

/// A subspace of Q^n held in reduced row-echelon form, so equality of
/// subspaces is equality of the canonical rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<RationalVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[RationalVector]) -> Self {
        let (basis, pivots) = rref(vectors, ambient);
        Subspace { ambient, basis, pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, &(0..ambient).map(|i| RationalVector::unit(ambient, i)).collect::<Vec<_>>())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RationalVector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_rows(self.ambient, self.basis.clone())
    }

    /// Coordinates of `x` in the echelon basis, if `x` lies in the subspace.
    pub fn coordinates(&self, x: &RationalVector) -> Option<Vec<Rational>> {
        let coords: Vec<Rational> = self.pivots.iter().map(|&c| x[c].clone()).collect();
        let mut rebuilt = RationalVector::zeros(self.ambient);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                rebuilt = &rebuilt + &b.scale(c);
            }
        }
        (&rebuilt == x).then_some(coords)
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        self.coordinates(x).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Ok(Subspace::span(self.ambient, &v))
    }

    /// `{x : x·b = 0 for every basis row b}`.
    pub fn annihilator(&self) -> Subspace {
        let n = self.ambient;
        let free: Vec<usize> = (0..n).filter(|c| !self.pivots.contains(c)).collect();
        let vectors: Vec<RationalVector> = free
            .iter()
            .map(|&f| {
                let mut x = RationalVector::unit(n, f).into_entries();
                for (b, &p) in self.basis.iter().zip(&self.pivots) {
                    x[p] = -b[f].clone();
                }
                RationalVector::new(x)
            })
            .collect();
        Subspace::span(n, &vectors)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    pub fn span_and_intersect(&self, other: &Subspace) -> Result<(Subspace, Subspace)> {
        Ok((self.sum(other)?, self.intersect(other)?))
    }

    pub fn image(&self, m: &RationalMatrix) -> Subspace {
        Subspace::span(m.shape().1, &self.basis.iter().map(|b| m.apply(b)).collect::<Vec<_>>())
    }
}

/// The quotient map Q^n → Q^n / D, realised by eliminating the pivot
/// coordinates of D's echelon basis.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    kernel: Subspace,
    free: Vec<usize>,
}

impl QuotientMap {
    pub fn new(kernel: Subspace) -> Self {
        let free = (0..kernel.ambient).filter(|c| !kernel.pivots.contains(c)).collect();
        QuotientMap { kernel, free }
    }

    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    pub fn target_dim(&self) -> usize {
        self.free.len()
    }

    pub fn apply(&self, x: &RationalVector) -> RationalVector {
        let mut y = x.clone();
        for (b, &p) in self.kernel.basis.iter().zip(&self.kernel.pivots) {
            let c = x[p].clone();
            if !c.is_zero() {
                y = &y - &b.scale(&c);
            }
        }
        RationalVector::new(self.free.iter().map(|&f| y[f].clone()).collect())
    }

    /// A preimage with zero pivot coordinates.
    pub fn section(&self, y: &RationalVector) -> RationalVector {
        let mut x = RationalVector::zeros(self.kernel.ambient).into_entries();
        for (v, &f) in y.entries().iter().zip(&self.free) {
            x[f] = v.clone();
        }
        RationalVector::new(x)
    }
}

/// Some `a` with `a·rows = y`, or `None` when `y` is outside the row span.
pub fn solve_left(rows: &[RationalVector], y: &RationalVector) -> Option<Vec<Rational>> {
    let n = y.dim();
    let k = rows.len();
    // augment each row with an identity tag to recover the combination
    let aug: Vec<RationalVector> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut e = r.entries().to_vec();
            e.extend(RationalVector::unit(k, i).into_entries());
            RationalVector::new(e)
        })
        .collect();
    let (red, pivots) = rref(&aug, n + k);
    let mut combo = vec![Rational::zero(); k];
    let mut rest = y.entries().to_vec();
    for (r, &p) in red.iter().zip(&pivots) {
        if p >= n {
            break;
        }
        let c = rest[p].clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..n {
            rest[j] -= &c * &r[j];
        }
        for j in 0..k {
            combo[j] += &c * &r[n + j];
        }
    }
    rest.iter().all(Zero::is_zero).then_some(combo)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(xs: &[i64]) -> RationalVector {
        RationalVector::from_ints(xs)
    }

    #[test]
    fn span_and_intersect_examples() {
        let a = Subspace::span(2, &[e(&[1, 0])]);
        let b = Subspace::span(2, &[e(&[0, 1])]);
        let (s, i) = a.span_and_intersect(&b).unwrap();
        assert_eq!(s, Subspace::full(2));
        assert_eq!(i, Subspace::zero(2));

        let c = Subspace::span(2, &[e(&[1, 1])]);
        assert_eq!(c.intersect(&a).unwrap(), Subspace::zero(2));

        let full = Subspace::span(2, &[e(&[1, 0]), e(&[0, 1])]);
        assert_eq!(full.intersect(&c).unwrap(), c);
    }

    #[test]
    fn ambient_mismatch() {
        assert!(Subspace::zero(2).sum(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn quotient_map_kills_kernel() {
        let d = Subspace::span(3, &[e(&[1, 1, 0])]);
        let q = QuotientMap::new(d);
        assert!(q.apply(&e(&[2, 2, 0])).is_zero());
        let y = q.apply(&e(&[1, 3, 5]));
        assert_eq!(q.apply(&q.section(&y)), y);
    }

    #[test]
    fn solve_left_dependent() {
        let rows = [e(&[1, 0]), e(&[2, 0]), e(&[0, 3])];
        let a = solve_left(&rows, &e(&[4, 6])).unwrap();
        let mut s = RationalVector::zeros(2);
        for (c, r) in a.iter().zip(&rows) {
            s = &s + &r.scale(c);
        }
        assert_eq!(s, e(&[4, 6]));
        assert!(solve_left(&rows[..2], &e(&[0, 1])).is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn subspace(n: usize) -> impl Strategy<Value = Subspace> {
            proptest::collection::vec(proptest::collection::vec(-3i64..4, n), 0..=n)
                .prop_map(move |rows| Subspace::span(n, &rows.iter().map(|r| e(r)).collect::<Vec<_>>()))
        }

        proptest! {
            #[test]
            fn dimension_formula(a in subspace(4), b in subspace(4)) {
                let (s, i) = a.span_and_intersect(&b).unwrap();
                prop_assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
                prop_assert!(a.contains_subspace(&i) && b.contains_subspace(&i));
                prop_assert!(s.contains_subspace(&a) && s.contains_subspace(&b));
            }
        }
    }
}
