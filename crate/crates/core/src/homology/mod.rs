//! Entropic homology: chains of `2^n`-tuples, the permutation differentials
//! built from binary-tree addresses, and the homology groups they define.

mod chain;
mod groups;

pub use chain::TupleChain;
pub use groups::{
    boundary_matrix, class_order_in_homology, hat_homology, homology, mu_matrix, BoundaryKind, Coefficients,
    NuSequence, MAX_BASIS,
};

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::magma::{FiniteMagma, MagmaFamily};

/// Number of ones in the `n`-bit address of position `i` (1-based).
pub fn address_ones(n: usize, i: usize) -> Result<usize> {
    let len = chain::tuple_len(n)?;
    if i == 0 || i > len {
        return Err(Error::IndexOutOfRange { index: i, len });
    }
    Ok((i - 1).count_ones() as usize)
}

/// Positions (1-based) whose address has `k` ones.
pub fn positions_with_ones(n: usize, k: usize) -> Result<Vec<usize>> {
    let len = chain::tuple_len(n)?;
    Ok((1..=len).filter(|&i| (i - 1).count_ones() as usize == k).collect())
}

/// Largest number of positions whose permutations are enumerated.
const MAX_PERMUTED_POSITIONS: usize = 8;

/// A permutation of positions `1..=len`, stored 0-based in one-line form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(len: usize) -> Self {
        Permutation((0..len).collect())
    }

    /// The transposition of two 1-based positions.
    pub fn transposition(len: usize, a: usize, b: usize) -> Self {
        let mut p = Permutation::identity(len);
        p.0.swap(a - 1, b - 1);
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Image of 1-based position `i`.
    pub fn image(&self, i: usize) -> usize {
        self.0[i - 1] + 1
    }

    /// `self` after `other`: `i -> self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn sign(&self) -> i64 {
        let mut seen = vec![false; self.0.len()];
        let mut sign = 1;
        for start in 0..self.0.len() {
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j];
                len += 1;
            }
            if len > 0 && len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// `σw` with `(σw)[σ(i)] = w[i]`.
    pub fn apply<T: Copy>(&self, w: &[T]) -> Vec<T> {
        let mut out = w.to_vec();
        for (i, &j) in self.0.iter().enumerate() {
            out[j] = w[i];
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points, each cycle from its least point: `(2,3,5)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            any = true;
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push((j + 1).to_string());
                j = self.0[j];
            }
            write!(f, "({})", cycle.join(","))?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// `S^k_{2^n}`: permutations moving only positions whose address has `k` ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermSet {
    pub n: usize,
    pub k: usize,
    /// The permuted positions, 1-based and ascending.
    pub positions: Vec<usize>,
    pub perms: Vec<(Permutation, i64)>,
}

pub fn perm_set(n: usize, k: usize) -> Result<SignedPermSet> {
    if k > n {
        return Err(Error::InvalidLevel { level: n, reason: format!("weight {k} exceeds the level") });
    }
    let positions = positions_with_ones(n, k)?;
    if positions.len() > MAX_PERMUTED_POSITIONS {
        return Err(Error::SizeGuard(format!(
            "{}! permutations of the weight-{k} positions at level {n}",
            positions.len()
        )));
    }
    let len = 1 << n;
    let perms = positions
        .iter()
        .permutations(positions.len())
        .map(|images| {
            let mut p = Permutation::identity(len);
            for (&from, &&to) in positions.iter().zip(&images) {
                p.0[from - 1] = to - 1;
            }
            let s = p.sign();
            (p, s)
        })
        .collect();
    Ok(SignedPermSet { n, k, positions, perms })
}

/// A formal integer combination of permutations of the `2^n` positions,
/// acting linearly on chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermOperator {
    n: usize,
    terms: BTreeMap<Permutation, i64>,
}

impl PermOperator {
    pub fn zero(n: usize) -> Self {
        PermOperator { n, terms: BTreeMap::new() }
    }

    fn add(&mut self, p: Permutation, k: i64) {
        let e = self.terms.entry(p.clone()).or_default();
        *e += k;
        if *e == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, i64)> {
        self.terms.iter().map(|(p, &k)| (p, k))
    }

    /// `other` first, then `self`.
    pub fn compose(&self, other: &PermOperator) -> PermOperator {
        let mut out = PermOperator::zero(self.n);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.add(p.compose(q), a * b);
            }
        }
        out
    }

    pub fn apply(&self, c: &TupleChain) -> Result<TupleChain> {
        if c.level() != self.n {
            return Err(Error::LevelMismatch { expected: self.n, found: c.level() });
        }
        Ok(c.map_terms(self.n, |t, k, out| {
            for (p, &a) in &self.terms {
                out.add_unchecked(p.apply(t), &(k * BigInt::from(a)));
            }
        }))
    }

    /// Applies the operator to one tuple, with machine-integer coefficients.
    pub(crate) fn apply_tuple(&self, t: &[usize], mut emit: impl FnMut(Vec<usize>, i64)) {
        for (p, &a) in &self.terms {
            emit(p.apply(t), a);
        }
    }
}

impl fmt::Display for PermOperator {
    /// Terms in the style `3() + 2(2,3,5) - (6,7)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, &k)) in self.terms.iter().enumerate() {
            let sign = if k < 0 { "-" } else { "+" };
            let mag = k.unsigned_abs();
            let coeff = if mag == 1 { String::new() } else { mag.to_string() };
            match (i, k < 0) {
                (0, false) => write!(f, "{coeff}{p}")?,
                (0, true) => write!(f, "-{coeff}{p}")?,
                _ => write!(f, " {sign} {coeff}{p}")?,
            }
        }
        Ok(())
    }
}

fn check_nu(n: usize, nu: &[i64]) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidLevel { level: n, reason: "permutation differentials start at level 2".into() });
    }
    if nu.len() != n - 1 {
        return Err(Error::NuLengthMismatch { expected: n - 1, found: nu.len() });
    }
    Ok(())
}

/// `δ_n^ν = Σ ν_k δ_n^k`, with `δ_n^k = Σ sgn(σ) σ` over `S^k_{2^n}`.
pub fn delta_operator(n: usize, nu: &[i64]) -> Result<PermOperator> {
    check_nu(n, nu)?;
    let mut out = PermOperator::zero(n);
    for (k, &a) in (1..n).zip(nu) {
        if a == 0 {
            continue;
        }
        for (p, s) in perm_set(n, k)?.perms {
            out.add(p, a * s);
        }
    }
    Ok(out)
}

/// `ζ_n`: swaps positions `4i+2` and `4i+3` in every block of four.
pub fn zeta_permutation(n: usize) -> Result<Permutation> {
    if n < 2 {
        return Err(Error::InvalidLevel { level: n, reason: "ζ needs blocks of four".into() });
    }
    let mut p = Permutation::identity(1 << n);
    for b in (0..1 << n).step_by(4) {
        p.0.swap(b + 1, b + 2);
    }
    Ok(p)
}

/// `hat-δ_n^ν = (1 - ζ_n) δ_n^ν`.
pub fn hat_delta_operator(n: usize, nu: &[i64]) -> Result<PermOperator> {
    let d = delta_operator(n, nu)?;
    let z = zeta_permutation(n)?;
    let mut out = d.clone();
    for (p, &k) in &d.terms {
        out.add(z.compose(p), -k);
    }
    Ok(out)
}

/// The first position `s = 4i + 2` with `s` and `s + 1` of weight `k`.
pub fn xi_position(n: usize, k: usize) -> Result<usize> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::NoQualifyingFour { n, k });
    }
    (0..1usize << (n - 2))
        .find(|i| i.count_ones() as usize == k - 1)
        .map(|i| 4 * i + 2)
        .ok_or(Error::NoQualifyingFour { n, k })
}

/// `ξ_n^k = (s, s+1) + 1`.
pub fn xi_operator(n: usize, k: usize) -> Result<PermOperator> {
    let s = xi_position(n, k)?;
    let mut out = PermOperator::zero(n);
    out.add(Permutation::identity(1 << n), 1);
    out.add(Permutation::transposition(1 << n, s, s + 1), 1);
    Ok(out)
}

pub fn delta(nu: &[i64], c: &TupleChain) -> Result<TupleChain> {
    delta_operator(c.level(), nu)?.apply(c)
}

pub fn hat_delta(nu: &[i64], c: &TupleChain) -> Result<TupleChain> {
    hat_delta_operator(c.level(), nu)?.apply(c)
}

pub fn zeta(c: &TupleChain) -> Result<TupleChain> {
    let z = zeta_permutation(c.level())?;
    Ok(c.map_terms(c.level(), |t, k, out| out.add_unchecked(z.apply(t), k)))
}

pub fn xi(k: usize, c: &TupleChain) -> Result<TupleChain> {
    xi_operator(c.level(), k)?.apply(c)
}

/// Applies `ξ_n^k` for every `k` with `ν_k ≠ 0`; the result is a cycle of `∂_n^ν`.
pub fn make_cycle(nu: &[i64], c: &TupleChain) -> Result<TupleChain> {
    check_nu(c.level(), nu)?;
    let mut out = c.clone();
    for (k, &a) in (1..c.level()).zip(nu) {
        if a != 0 {
            out = xi(k, &out)?;
        }
    }
    Ok(out)
}

fn check_entries(order: usize, c: &TupleChain) -> Result<()> {
    match c.max_entry() {
        e if e > order => Err(Error::ElementOutOfRange { element: e, order }),
        _ => Ok(()),
    }
}

/// `μ_n^τ = Σ τ_i μ_n^{*_i}`: pairwise products, signed over the family.
pub fn mu_family(f: &MagmaFamily, c: &TupleChain) -> Result<TupleChain> {
    let n = c.level();
    if n == 0 {
        return Err(Error::InvalidLevel { level: 0, reason: "μ is defined from level 1".into() });
    }
    check_entries(f.order(), c)?;
    let members: Vec<(&FiniteMagma, BigInt)> =
        f.members().iter().zip(f.signs()).map(|(m, s)| (m, BigInt::from(s.value()))).collect();
    Ok(c.map_terms(n - 1, |t, k, out| {
        for (m, s) in &members {
            let pairs: Vec<usize> = t.chunks(2).map(|p| m.op(p[0], p[1])).collect();
            out.add_unchecked(pairs, &(k * s));
        }
    }))
}

pub fn mu(m: &FiniteMagma, c: &TupleChain) -> Result<TupleChain> {
    mu_family(&MagmaFamily::singleton(m.clone()), c)
}

/// `∂_n^ν = μ_n δ_n^ν`.
pub fn partial(m: &FiniteMagma, nu: &[i64], c: &TupleChain) -> Result<TupleChain> {
    mu(m, &delta(nu, c)?)
}

/// `∂_n^{ν,τ} = μ_n^τ δ_n^ν`.
pub fn partial_family(f: &MagmaFamily, nu: &[i64], c: &TupleChain) -> Result<TupleChain> {
    mu_family(f, &delta(nu, c)?)
}

/// `hat-∂_n^{ν,τ} = μ_n^τ hat-δ_n^ν`.
pub fn hat_partial(f: &MagmaFamily, nu: &[i64], c: &TupleChain) -> Result<TupleChain> {
    mu_family(f, &hat_delta(nu, c)?)
}
