//! Invariant factors and ranks of large sparse matrices.
//!
//! Unit pivots are eliminated first (Markowitz order, exact in machine
//! integers with a big-integer restart on overflow); whatever survives is
//! reduced to an echelon basis of its lattice and finished by a dense Smith form.

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::snf::dense_smith;
use super::{IntMatrix, SparseIntMatrix};

trait Coef: Clone + Eq + Hash + Debug {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_nil(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    /// `self - k * x`
    fn sub_mul(&self, k: &Self, x: &Self) -> Option<Self>;
    fn mul(&self, x: &Self) -> Option<Self>;
}

impl Coef for i64 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn sub_mul(&self, k: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(k.checked_mul(*x)?)
    }
    fn mul(&self, x: &Self) -> Option<Self> {
        self.checked_mul(*x)
    }
}

impl Coef for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn sub_mul(&self, k: &Self, x: &Self) -> Option<Self> {
        Some(self - k * x)
    }
    fn mul(&self, x: &Self) -> Option<Self> {
        Some(self * x)
    }
}

type SparseVec<T> = Vec<(u32, T)>;

/// `w - k * v`, both sorted by coordinate.
fn axpy<T: Coef>(w: &SparseVec<T>, k: &T, v: &SparseVec<T>) -> Option<SparseVec<T>> {
    let mut out = Vec::with_capacity(w.len() + v.len());
    let (mut i, mut j) = (0, 0);
    while i < w.len() || j < v.len() {
        let wi = w.get(i).map(|e| e.0);
        let vj = v.get(j).map(|e| e.0);
        match (wi, vj) {
            (Some(a), Some(b)) if a == b => {
                let x = w[i].1.sub_mul(k, &v[j].1)?;
                if !x.is_nil() {
                    out.push((a, x));
                }
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a < b => {
                out.push(w[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(w[i].clone());
                i += 1;
            }
            _ => {
                let x = v[j].1.mul(k)?.neg()?;
                out.push((v[j].0, x));
                j += 1;
            }
        }
    }
    Some(out)
}

fn coord<T>(v: &SparseVec<T>, r: u32) -> Option<&T> {
    v.binary_search_by_key(&r, |e| e.0).ok().map(|i| &v[i].1)
}

/// Sign-normalised, deduplicated nonzero vectors.
fn normalise<T: Coef>(vectors: Vec<SparseVec<T>>) -> Option<Vec<SparseVec<T>>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mut v in vectors {
        if v.is_empty() {
            continue;
        }
        if v[0].1.is_negative() {
            for e in &mut v {
                e.1 = e.1.neg()?;
            }
        }
        if seen.insert(v.clone()) {
            out.push(v);
        }
    }
    Some(out)
}

/// Eliminates unit pivots; returns their number and the surviving vectors.
fn unit_eliminate<T: Coef>(vectors: Vec<SparseVec<T>>, dim: usize) -> Option<(usize, Vec<SparseVec<T>>)> {
    let mut vecs = normalise(vectors)?;
    let mut units = 0;
    loop {
        let mut count = vec![0usize; dim];
        for v in &vecs {
            for e in v {
                count[e.0 as usize] += 1;
            }
        }
        let mut best: Option<(usize, usize, u32)> = None;
        for (vi, v) in vecs.iter().enumerate() {
            for e in v {
                if e.1.is_unit() {
                    let cost = (v.len() - 1) * (count[e.0 as usize] - 1);
                    if best.is_none_or(|b| cost < b.0) {
                        best = Some((cost, vi, e.0));
                    }
                }
            }
            if best.is_some_and(|b| b.0 == 0) {
                break;
            }
        }
        let Some((_, vi, r)) = best else {
            return Some((units, vecs));
        };
        let pivot = vecs.swap_remove(vi);
        let inv = coord(&pivot, r).expect("pivot coordinate").clone();
        units += 1;
        let mut next = Vec::with_capacity(vecs.len());
        for w in vecs {
            match coord(&w, r) {
                Some(x) => {
                    let k = x.mul(&inv)?;
                    let reduced = axpy(&w, &k, &pivot)?;
                    if !reduced.is_empty() {
                        next.push(reduced);
                    }
                }
                None => next.push(w),
            }
        }
        vecs = next;
    }
}

/// Echelon basis of the lattice spanned by `vectors` (dense, length `dim`).
fn echelon(vectors: &[SparseVec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    // basis[p] holds the row whose leading coordinate is p
    let mut basis: Vec<Option<Vec<BigInt>>> = vec![None; dim];
    for sv in vectors {
        let mut v = vec![BigInt::zero(); dim];
        for (c, x) in sv {
            v[*c as usize] = x.clone();
        }
        let mut p = 0;
        loop {
            while p < dim && v[p].is_nil() {
                p += 1;
            }
            if p == dim {
                break;
            }
            match &mut basis[p] {
                slot @ None => {
                    *slot = Some(v);
                    break;
                }
                Some(b) => {
                    let eg = b[p].extended_gcd(&v[p]);
                    let (bp, vp) = (&b[p] / &eg.gcd, &v[p] / &eg.gcd);
                    let new_b: Vec<BigInt> = (0..dim).map(|i| &eg.x * &b[i] + &eg.y * &v[i]).collect();
                    let rest: Vec<BigInt> = (0..dim).map(|i| &vp * &b[i] - &bp * &v[i]).collect();
                    *b = new_b;
                    v = rest;
                }
            }
        }
    }
    let mut rows: Vec<Vec<BigInt>> = basis.into_iter().flatten().collect();
    // keep entries small: reduce each row's later coordinates by the rows below
    let n = rows.len();
    for i in (0..n).rev() {
        let lead = rows[i].iter().position(|x| !x.is_nil()).expect("nonzero row");
        for k in 0..i {
            let q = rows[k][lead].div_floor(&rows[i][lead]);
            if !q.is_nil() {
                let sub: Vec<BigInt> = rows[i].iter().map(|x| x * &q).collect();
                for (a, s) in rows[k].iter_mut().zip(sub) {
                    *a -= s;
                }
            }
        }
    }
    rows
}

fn to_vectors<T: Coef>(m: &SparseIntMatrix) -> Option<(Vec<SparseVec<T>>, usize)> {
    // Vectors run along the shorter side; invariant factors ignore transposition.
    let by_columns = m.rows() <= m.cols();
    let (count, dim) = if by_columns { (m.cols(), m.rows()) } else { (m.rows(), m.cols()) };
    let mut vecs: Vec<SparseVec<T>> = vec![Vec::new(); count];
    for (i, j, v) in m.entries() {
        let (which, c) = if by_columns { (j, i) } else { (i, j) };
        vecs[which].push((c as u32, T::from_big(v)?));
    }
    for v in &mut vecs {
        v.sort_by_key(|e| e.0);
    }
    Some((vecs, dim))
}

fn factors_with<T: Coef>(m: &SparseIntMatrix) -> Option<Vec<BigInt>> {
    let (vecs, dim) = to_vectors::<T>(m)?;
    let (units, rest) = unit_eliminate(vecs, dim)?;
    let rest: Vec<SparseVec<BigInt>> =
        rest.into_iter().map(|v| v.into_iter().map(|(c, x)| (c, x.to_big())).collect()).collect();
    let rows = echelon(&rest, dim);
    let mut factors = vec![BigInt::one(); units];
    if !rows.is_empty() {
        let mut dense = IntMatrix::zeros(rows.len(), dim);
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                dense.set(i, j, x.clone());
            }
        }
        let f = dense_smith(dense);
        factors.extend(f.diagonal().into_iter().filter(|d| !d.is_nil()));
    }
    factors.sort();
    Some(factors)
}

/// Nonzero diagonal entries of the Smith form of `m`, ascending (units included).
pub fn invariant_factors(m: &SparseIntMatrix) -> Vec<BigInt> {
    factors_with::<i64>(m).unwrap_or_else(|| factors_with::<BigInt>(m).expect("big integers cannot overflow"))
}

/// Rank over the rationals.
pub fn rank(m: &SparseIntMatrix) -> usize {
    invariant_factors(m).len()
}

/// Rank over the field with `p` elements; `p` must be prime.
pub fn rank_mod_p(m: &SparseIntMatrix, p: u64) -> usize {
    assert!(p >= 2, "modulus must be prime");
    let reduce = |x: &BigInt| {
        let r = x.mod_floor(&BigInt::from(p));
        r.to_u64().expect("residue fits")
    };
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let inverse = |a: u64| {
        // Fermat: a^(p-2)
        let (mut base, mut e, mut acc) = (a, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            e >>= 1;
        }
        acc
    };
    let by_columns = m.rows() <= m.cols();
    let count = if by_columns { m.cols() } else { m.rows() };
    let dim = if by_columns { m.rows() } else { m.cols() };
    let mut vecs: Vec<Vec<(u32, u64)>> = vec![Vec::new(); count];
    for (i, j, v) in m.entries() {
        let x = reduce(v);
        if x != 0 {
            let (which, c) = if by_columns { (j, i) } else { (i, j) };
            vecs[which].push((c as u32, x));
        }
    }
    for v in &mut vecs {
        v.sort_by_key(|e| e.0);
    }
    vecs.retain(|v| !v.is_empty());
    let mut rank = 0;
    while !vecs.is_empty() {
        let mut count = vec![0usize; dim];
        for v in &vecs {
            for e in v {
                count[e.0 as usize] += 1;
            }
        }
        let count = &count;
        let (vi, r) = vecs
            .iter()
            .enumerate()
            .flat_map(|(vi, v)| v.iter().map(move |e| ((v.len() - 1) * (count[e.0 as usize] - 1), vi, e.0)))
            .min()
            .map(|(_, vi, r)| (vi, r))
            .expect("nonempty vectors");
        let pivot = vecs.swap_remove(vi);
        let pv = pivot.iter().find(|e| e.0 == r).expect("pivot").1;
        let inv = inverse(pv);
        rank += 1;
        let mut next = Vec::with_capacity(vecs.len());
        for w in vecs {
            let Some(wx) = w.iter().find(|e| e.0 == r).map(|e| e.1) else {
                next.push(w);
                continue;
            };
            let k = mulmod(wx, inv);
            let mut out = Vec::with_capacity(w.len() + pivot.len());
            let (mut i, mut j) = (0, 0);
            while i < w.len() || j < pivot.len() {
                let a = w.get(i).map_or(u32::MAX, |e| e.0);
                let b = pivot.get(j).map_or(u32::MAX, |e| e.0);
                if a == b {
                    let x = (w[i].1 + p - mulmod(k, pivot[j].1)) % p;
                    if x != 0 {
                        out.push((a, x));
                    }
                    i += 1;
                    j += 1;
                } else if a < b {
                    out.push(w[i]);
                    i += 1;
                } else {
                    out.push((b, (p - mulmod(k, pivot[j].1)) % p));
                    j += 1;
                }
            }
            if !out.is_empty() {
                next.push(out);
            }
        }
        vecs = next;
    }
    rank
}
