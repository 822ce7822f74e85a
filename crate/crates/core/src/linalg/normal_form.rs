//! Hermite and Smith normal forms of integer matrices.
//!
//! Both routines track the unimodular transforms. Row operations are applied
//! through 2x2 determinant-one combinations built from the extended gcd, so the
//! transforms stay unimodular by construction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Row-style Hermite normal form: `H = U·M` with `U` unimodular, pivots
/// positive, entries above a pivot reduced into `[0, pivot)` and zero rows last.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Column of each nonzero row's pivot.
    pub pivots: Vec<usize>,
}

impl Hermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Smith normal form: `P·M·Q = D` with `P`, `Q` unimodular and `D` diagonal
/// with `d_1 | d_2 | ... | d_r` positive followed by zeros.
#[derive(Clone, Debug)]
pub struct Smith {
    pub invariant_factors: Vec<BigInt>,
    pub p: IntMatrix,
    pub q: IntMatrix,
}

fn combine_rows(rows: &mut [Vec<BigInt>], a: usize, b: usize, coeffs: [&BigInt; 4]) {
    // row_a' = c0 row_a + c1 row_b ; row_b' = c2 row_a + c3 row_b
    let ra = std::mem::take(&mut rows[a]);
    let rb = std::mem::take(&mut rows[b]);
    let na = ra.iter().zip(&rb).map(|(x, y)| coeffs[0] * x + coeffs[1] * y).collect();
    let nb = ra.iter().zip(&rb).map(|(x, y)| coeffs[2] * x + coeffs[3] * y).collect();
    rows[a] = na;
    rows[b] = nb;
}

fn combine_cols(rows: &mut [Vec<BigInt>], a: usize, b: usize, coeffs: [&BigInt; 4]) {
    for r in rows.iter_mut() {
        let x = r[a].clone();
        let y = r[b].clone();
        r[a] = coeffs[0] * &x + coeffs[1] * &y;
        r[b] = coeffs[2] * &x + coeffs[3] * &y;
    }
}

/// Coefficients `[x, y, -b/g, a/g]` of a determinant-one map sending `(a, b)` to `(g, 0)`.
fn gcd_step(a: &BigInt, b: &BigInt) -> [BigInt; 4] {
    let e = a.extended_gcd(b);
    let g = e.gcd;
    [e.x, e.y, -(b / &g), a / &g]
}

fn sub_row_multiple(rows: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let s = rows[src].clone();
    for (t, x) in rows[target].iter_mut().zip(&s) {
        *t -= q * x;
    }
}

pub fn hermite_normal_form(m: &IntMatrix) -> Hermite {
    let (r, c) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..c {
        if pr == r {
            break;
        }
        for i in pr + 1..r {
            if h.get(i, col).is_zero() {
                continue;
            }
            let k = gcd_step(h.get(pr, col), h.get(i, col));
            let k = [&k[0], &k[1], &k[2], &k[3]];
            combine_rows(h.data_mut(), pr, i, k);
            combine_rows(u.data_mut(), pr, i, k);
        }
        if h.get(pr, col).is_zero() {
            continue;
        }
        if h.get(pr, col).is_negative() {
            for x in h.data_mut()[pr].iter_mut() {
                *x = -&*x;
            }
            for x in u.data_mut()[pr].iter_mut() {
                *x = -&*x;
            }
        }
        let piv = h.get(pr, col).clone();
        for i in 0..pr {
            let q = h.get(i, col).div_floor(&piv);
            sub_row_multiple(h.data_mut(), i, pr, &q);
            sub_row_multiple(u.data_mut(), i, pr, &q);
        }
        pivots.push(col);
        pr += 1;
    }
    Hermite { h, u, pivots }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut p = IntMatrix::identity(r);
    let mut q = IntMatrix::identity(c);
    let mut t = 0;
    while t < r.min(c) {
        // smallest nonzero entry of the trailing block goes to (t, t)
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = a.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.data_mut().swap(t, bi);
        p.data_mut().swap(t, bi);
        for row in a.data_mut().iter_mut() {
            row.swap(t, bj);
        }
        for row in q.data_mut().iter_mut() {
            row.swap(t, bj);
        }
        loop {
            for i in t + 1..r {
                if a.get(i, t).is_zero() {
                    continue;
                }
                if a.get(i, t).is_multiple_of(a.get(t, t)) {
                    let f = a.get(i, t) / a.get(t, t);
                    sub_row_multiple(a.data_mut(), i, t, &f);
                    sub_row_multiple(p.data_mut(), i, t, &f);
                    continue;
                }
                let k = gcd_step(a.get(t, t), a.get(i, t));
                let k = [&k[0], &k[1], &k[2], &k[3]];
                combine_rows(a.data_mut(), t, i, k);
                combine_rows(p.data_mut(), t, i, k);
            }
            for j in t + 1..c {
                if a.get(t, j).is_zero() {
                    continue;
                }
                if a.get(t, j).is_multiple_of(a.get(t, t)) {
                    let f = a.get(t, j) / a.get(t, t);
                    let one = BigInt::one();
                    let zero = BigInt::zero();
                    let nf = -f;
                    combine_cols(a.data_mut(), t, j, [&one, &zero, &nf, &one]);
                    combine_cols(q.data_mut(), t, j, [&one, &zero, &nf, &one]);
                    continue;
                }
                let k = gcd_step(a.get(t, t), a.get(t, j));
                let k = [&k[0], &k[1], &k[2], &k[3]];
                combine_cols(a.data_mut(), t, j, k);
                combine_cols(q.data_mut(), t, j, k);
            }
            let col_clear = (t + 1..r).all(|i| a.get(i, t).is_zero());
            if !col_clear {
                continue;
            }
            let piv = a.get(t, t).clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.get(i, j).is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    // row_t += row_i brings a non-multiple into row t
                    let one = BigInt::one();
                    let zero = BigInt::zero();
                    combine_rows(a.data_mut(), t, i, [&one, &one, &zero, &one]);
                    combine_rows(p.data_mut(), t, i, [&one, &one, &zero, &one]);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            for x in a.data_mut()[t].iter_mut() {
                *x = -&*x;
            }
            for x in p.data_mut()[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }
    let invariant_factors = (0..r.min(c))
        .map(|i| a.get(i, i).clone())
        .filter(|x| !x.is_zero())
        .collect();
    Smith { invariant_factors, p, q }
}

/// Z-basis of the left integer kernel `{x ∈ Z^r : x·M = 0}`.
pub fn left_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let h = hermite_normal_form(m);
    (h.rank()..m.rows()).map(|i| h.u.row(i).to_vec()).collect()
}
