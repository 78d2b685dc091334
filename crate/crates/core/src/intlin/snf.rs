use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{IntMatrix, SparseIntMatrix};

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal, `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries, including trailing zeros up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(a: &SparseIntMatrix) -> SmithForm {
    dense_smith(a.to_dense())
}

/// Position of the least nonzero absolute value among `cells`.
fn least<'a>(a: &IntMatrix, cells: impl Iterator<Item = (usize, usize)> + 'a) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for (i, j) in cells {
        let x = a.get(i, j);
        if x.is_zero() {
            continue;
        }
        let ax = x.abs();
        if best.as_ref().is_none_or(|(_, b)| &ax < b) {
            best = Some(((i, j), ax));
        }
    }
    best.map(|(p, _)| p)
}

pub(crate) fn dense_smith(mut a: IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        let Some((pi, pj)) = least(&a, (t..m).flat_map(|i| (t..n).map(move |j| (i, j)))) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let p = a.get(t, t).clone();
            for i in t + 1..m {
                if !a.get(i, t).is_zero() {
                    let q = -a.get(i, t).div_floor(&p);
                    a.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                }
            }
            for j in t + 1..n {
                if !a.get(t, j).is_zero() {
                    let q = -a.get(t, j).div_floor(&p);
                    a.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                }
            }
            // Remainders are smaller than the pivot; bring the least one in and repeat.
            let cross = (t + 1..m).map(|i| (i, t)).chain((t + 1..n).map(|j| (t, j)));
            if let Some((ri, rj)) = least(&a, cross) {
                a.swap_rows(t, ri);
                u.swap_rows(t, ri);
                a.swap_cols(t, rj);
                v.swap_cols(t, rj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let p = a.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d: a, v }
}
