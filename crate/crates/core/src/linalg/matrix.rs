use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{lcm_denominators, Rational, RationalVector};

/// Dense integer matrix stored by rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Vec<BigInt>>) -> Self {
        assert_eq!(data.len(), rows);
        assert!(data.iter().all(|r| r.len() == cols));
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64(data: &[&[i64]]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        Self::new(
            rows,
            cols,
            data.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &Vec<BigInt>> {
        self.data.iter()
    }

    pub(crate) fn data_mut(&mut self) -> &mut Vec<Vec<BigInt>> {
        &mut self.data
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += a * &other.data[k][j];
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j][i] = self.data[i][j].clone();
            }
        }
        out
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix::from_rows(
            self.cols,
            self.data
                .iter()
                .map(|r| RationalVector::new(r.iter().cloned().map(Rational::from_integer).collect()))
                .collect(),
        )
    }

    pub fn determinant(&self) -> BigInt {
        self.to_rational().determinant().to_integer()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Dense rational matrix stored by rows. Matrices act on row vectors from the
/// right: `x ↦ x·M`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    cols: usize,
    rows: Vec<RationalVector>,
}

impl serde::Serialize for RationalMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(&self.rows)
    }
}

impl RationalMatrix {
    pub fn from_rows(cols: usize, rows: Vec<RationalVector>) -> Self {
        assert!(rows.iter().all(|r| r.dim() == cols));
        RationalMatrix { cols, rows }
    }

    pub fn from_i64(data: &[&[i64]]) -> Self {
        let cols = data.first().map_or(0, |r| r.len());
        Self::from_rows(cols, data.iter().map(|r| RationalVector::from_ints(r)).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_rows(n, (0..n).map(|i| RationalVector::unit(n, i)).collect())
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        Self::from_rows(
            n,
            (0..n)
                .map(|i| RationalVector::unit(n, i).scale(&entries[i]))
                .collect(),
        )
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols)
    }

    pub fn row_vectors(&self) -> &[RationalVector] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// `x·M`
    pub fn apply(&self, x: &RationalVector) -> RationalVector {
        assert_eq!(x.dim(), self.rows.len());
        let mut out = vec![Rational::zero(); self.cols];
        for (xi, row) in x.entries().iter().zip(&self.rows) {
            if xi.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row.entries()) {
                *o += xi * r;
            }
        }
        RationalVector::new(out)
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        RationalMatrix::from_rows(other.cols, self.rows.iter().map(|r| other.apply(r)).collect())
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.shape(), other.shape());
        RationalMatrix::from_rows(
            self.cols,
            self.rows.iter().zip(&other.rows).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn scale(&self, r: &Rational) -> RationalMatrix {
        RationalMatrix::from_rows(self.cols, self.rows.iter().map(|v| v.scale(r)).collect())
    }

    pub fn transpose(&self) -> RationalMatrix {
        let n = self.rows.len();
        RationalMatrix::from_rows(
            n,
            (0..self.cols)
                .map(|j| RationalVector::new(self.rows.iter().map(|r| r[j].clone()).collect()))
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        super::subspace::rref(&self.rows, self.cols).0.len()
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square());
        let n = self.cols;
        let mut a: Vec<Vec<Rational>> = self.rows.iter().map(|r| r.entries().to_vec()).collect();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let piv = a[c][c].clone();
            det *= &piv;
            for i in c + 1..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = &a[i][c] / &piv;
                for j in c..n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<RationalMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.cols;
        let mut a: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.entries().to_vec();
                row.extend(RationalVector::unit(n, i).into_entries());
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&i| !a[i][c].is_zero())?;
            a.swap(p, c);
            let piv = a[c][c].clone();
            for x in a[c].iter_mut() {
                *x /= &piv;
            }
            for i in 0..n {
                if i == c || a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in 0..2 * n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
        Some(RationalMatrix::from_rows(
            n,
            a.into_iter().map(|r| RationalVector::new(r[n..].to_vec())).collect(),
        ))
    }

    /// Scales every row to clear denominators (same factor for the whole matrix).
    pub fn clear_denominators(&self) -> (BigInt, IntMatrix) {
        let den = lcm_denominators(self.rows.iter().flat_map(|r| r.entries()));
        let d = Rational::from_integer(den.clone());
        let data = self
            .rows
            .iter()
            .map(|r| r.entries().iter().map(|x| (x * &d).to_integer()).collect())
            .collect();
        (den, IntMatrix::new(self.rows.len(), self.cols, data))
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::rat;

    #[test]
    fn inverse_roundtrip() {
        let m = RationalMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RationalMatrix::identity(2));
        assert_eq!(m.determinant(), rat(1, 1));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = RationalMatrix::from_i64(&[&[2, 4], &[1, 2]]);
        assert!(m.inverse().is_none());
        assert_eq!(m.rank(), 1);
    }
}
