use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{delta_operator, hat_delta_operator, PermOperator, TupleChain};
use crate::error::{Error, Result};
use crate::intlin::{invariant_factors, order_modulo, rank, rank_mod_p, ClassOrder, HomologyResult, SparseIntMatrix};
use crate::magma::{FiniteMagma, MagmaFamily};

/// Largest basis (`|X|^(2^n)` tuples) built without an explicit override.
pub const MAX_BASIS: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryKind {
    /// `μ_n^τ δ_n^ν`
    Plain,
    /// `μ_n^τ hat-δ_n^ν`
    Hat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Integers,
    /// The field with `p` elements.
    Prime(u64),
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => f.write_str("Z"),
            Coefficients::Prime(p) => write!(f, "Z_{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    /// `z` or `zp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        if lower == "z" {
            return Ok(Coefficients::Integers);
        }
        let p = lower
            .strip_prefix("zp:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::InvalidArgument(format!("coefficients must be z or zp:<prime>, got {s:?}")))?;
        let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if !prime {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(Coefficients::Prime(p))
    }
}

/// The choice of `ν` at each level; unset levels use the first unit vector.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NuSequence {
    overrides: BTreeMap<usize, Vec<i64>>,
}

impl NuSequence {
    pub fn new() -> Self {
        NuSequence::default()
    }

    pub fn with(mut self, level: usize, nu: Vec<i64>) -> Self {
        self.overrides.insert(level, nu);
        self
    }

    pub fn get(&self, level: usize) -> Vec<i64> {
        if let Some(nu) = self.overrides.get(&level) {
            return nu.clone();
        }
        let mut nu = vec![0; level.saturating_sub(1)];
        if let Some(first) = nu.first_mut() {
            *first = 1;
        }
        nu
    }
}

fn basis_size(q: usize, level: usize, force: bool) -> Result<usize> {
    let len = super::chain::tuple_len(level)?;
    let size = u32::try_from(len)
        .ok()
        .and_then(|len| q.checked_pow(len))
        .filter(|&s| s <= 1 << 40)
        .ok_or_else(|| Error::SizeGuard(format!("{q}^{len} tuples at level {level} cannot be enumerated")))?;
    if size > MAX_BASIS && !force {
        return Err(Error::SizeGuard(format!(
            "{q}^{len} = {size} tuples at level {level} exceed {MAX_BASIS}; pass force to build anyway"
        )));
    }
    Ok(size)
}

/// Tuple number `j` (0-based) in lexicographic order.
fn tuple_at(q: usize, len: usize, mut j: usize) -> Vec<usize> {
    let mut t = vec![1; len];
    for slot in t.iter_mut().rev() {
        *slot = j % q + 1;
        j /= q;
    }
    t
}

fn index_of(q: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &x| acc * q + (x - 1))
}

fn signed_members(f: &MagmaFamily) -> Vec<(&FiniteMagma, i64)> {
    f.members().iter().zip(f.signs()).map(|(m, s)| (m, s.value())).collect()
}

/// Assembles `C_n -> C_{n-1}` from `μ^τ` after an optional permutation operator.
fn assemble(f: &MagmaFamily, n: usize, op: Option<&PermOperator>, force: bool) -> Result<SparseIntMatrix> {
    let q = f.order();
    let cols = basis_size(q, n, force)?;
    let rows = basis_size(q, n - 1, true)?;
    let members = signed_members(f);
    let len = 1 << n;
    let mut out = SparseIntMatrix::new(rows, cols);
    let mut acc: HashMap<usize, i64> = HashMap::new();
    for j in 0..cols {
        let t = tuple_at(q, len, j);
        acc.clear();
        let mut push = |u: Vec<usize>, a: i64| {
            for &(m, s) in &members {
                let row = u.chunks(2).fold(0, |r, p| r * q + (m.op(p[0], p[1]) - 1));
                *acc.entry(row).or_default() += a * s;
            }
        };
        match op {
            Some(op) => op.apply_tuple(&t, &mut push),
            None => push(t, 1),
        }
        for (&row, &v) in &acc {
            if v != 0 {
                out.set(row, j, BigInt::from(v));
            }
        }
    }
    Ok(out)
}

/// Matrix of `μ_n^τ: C_n -> C_{n-1}` over the lexicographic tuple bases.
pub fn mu_matrix(f: &MagmaFamily, n: usize, force: bool) -> Result<SparseIntMatrix> {
    if n == 0 {
        return Err(Error::InvalidLevel { level: 0, reason: "μ is defined from level 1".into() });
    }
    assemble(f, n, None, force)
}

/// Matrix of `μ_n^τ δ_n^ν` (or its hat version); at level 1 this is `μ_1^τ`.
pub fn boundary_matrix(
    f: &MagmaFamily,
    n: usize,
    nu: &[i64],
    kind: BoundaryKind,
    force: bool,
) -> Result<SparseIntMatrix> {
    if n <= 1 {
        return mu_matrix(f, n, force);
    }
    let op = match kind {
        BoundaryKind::Plain => delta_operator(n, nu)?,
        BoundaryKind::Hat => hat_delta_operator(n, nu)?,
    };
    assemble(f, n, Some(&op), force)
}

/// `d_n`: zero at level 0, `μ_1` at level 1, `∂_n^ν` above.
fn differential(m: &FiniteMagma, n: usize, nus: &NuSequence, force: bool) -> Result<SparseIntMatrix> {
    if n == 0 {
        return Ok(SparseIntMatrix::new(0, m.order()));
    }
    boundary_matrix(&MagmaFamily::singleton(m.clone()), n, &nus.get(n), BoundaryKind::Plain, force)
}

/// First column `j` of `b` with `a * b[:, j] != 0`.
fn composite_witness(a: &SparseIntMatrix, b: &SparseIntMatrix) -> Option<usize> {
    let a_cols = a.columns();
    b.columns().iter().position(|col| {
        let mut acc: HashMap<usize, BigInt> = HashMap::new();
        for (r, x) in col {
            for (i, y) in &a_cols[*r] {
                *acc.entry(*i).or_default() += x * y;
            }
        }
        acc.values().any(|v| !v.is_zero())
    })
}

fn describe_tuple(q: usize, level: usize, j: usize) -> String {
    let t: Vec<String> = tuple_at(q, 1 << level, j).iter().map(usize::to_string).collect();
    format!("({})", t.join(","))
}

fn group_from(dim: usize, kernel_defect: usize, image: &SparseIntMatrix, coeff: Coefficients) -> HomologyResult {
    match coeff {
        Coefficients::Integers => {
            let factors = invariant_factors(image);
            let betti = dim - kernel_defect - factors.len();
            HomologyResult::from_factors(betti, factors.into_iter().filter(|d| !d.is_one()))
        }
        Coefficients::Prime(p) => HomologyResult::free(dim - kernel_defect - rank_mod_p(image, p)),
    }
}

/// `H_n = Ker d_n / Im d_{n+1}` with `d_1 = μ_1` and `d_n = ∂_n^ν`.
///
/// Over `Z_p` only the dimension is reported. Fails with a witness tuple if
/// `d_n d_{n+1} ≠ 0`.
pub fn homology(
    m: &FiniteMagma,
    n: usize,
    nus: &NuSequence,
    coeff: Coefficients,
    force: bool,
) -> Result<HomologyResult> {
    let q = m.order();
    basis_size(q, n + 1, force)?;
    let d_n = differential(m, n, nus, force)?;
    let d_up = differential(m, n + 1, nus, force)?;
    if let Some(j) = composite_witness(&d_n, &d_up) {
        return Err(Error::NotAChainComplex(format!(
            "d_{n} d_{} is nonzero on {}",
            n + 1,
            describe_tuple(q, n + 1, j)
        )));
    }
    let dim = d_n.cols();
    let r_n = match coeff {
        Coefficients::Integers => rank(&d_n),
        Coefficients::Prime(p) => rank_mod_p(&d_n, p),
    };
    Ok(group_from(dim, r_n, &d_up, coeff))
}

fn chain_vector(q: usize, c: &TupleChain, force: bool) -> Result<Vec<BigInt>> {
    let dim = basis_size(q, c.level(), force)?;
    if c.max_entry() > q {
        return Err(Error::ElementOutOfRange { element: c.max_entry(), order: q });
    }
    let mut v = vec![BigInt::zero(); dim];
    for (t, k) in c.terms() {
        v[index_of(q, t)] = k.clone();
    }
    Ok(v)
}

/// Order of the class of the cycle `c` in `H_n` over the integers.
pub fn class_order_in_homology(m: &FiniteMagma, c: &TupleChain, nus: &NuSequence, force: bool) -> Result<ClassOrder> {
    let n = c.level();
    let q = m.order();
    let v = chain_vector(q, c, force)?;
    let d_n = differential(m, n, nus, force)?;
    let mut image_of_v = vec![BigInt::zero(); d_n.rows()];
    for (i, j, x) in d_n.entries() {
        image_of_v[i] += x * &v[j];
    }
    if image_of_v.iter().any(|x| !x.is_zero()) {
        return Err(Error::InvalidArgument(format!("the chain is not a cycle of d_{n}")));
    }
    let d_up = differential(m, n + 1, nus, force)?;
    order_modulo(&v, &d_up)
}

fn negated(a: SparseIntMatrix) -> SparseIntMatrix {
    let mut out = SparseIntMatrix::new(a.rows(), a.cols());
    for (i, j, v) in a.entries() {
        out.set(i, j, -v);
    }
    out
}

/// `Ĥ_0 = C_0 / Im μ_1^τ` and `Ĥ_n = Ker μ_n^τ / Im(μ_{n+1}^τ hat-δ_{n+1}^ν)`.
///
/// With `alternate_signs` the level-`j` maps use `(-1)^j τ`.
pub fn hat_homology(
    f: &MagmaFamily,
    n: usize,
    nus: &NuSequence,
    alternate_signs: bool,
    force: bool,
) -> Result<HomologyResult> {
    if let Some(w) = f.compatibility_witness() {
        return Err(Error::IncompatibleFamily(format!(
            "members {} and {} fail on ({},{},{},{})",
            w.i, w.j, w.a, w.b, w.c, w.d
        )));
    }
    let q = f.order();
    basis_size(q, n + 1, force)?;
    let flip = |level: usize, a: SparseIntMatrix| if alternate_signs && level % 2 == 1 { negated(a) } else { a };
    if n == 0 {
        let image = flip(1, mu_matrix(f, 1, force)?);
        return Ok(group_from(q, 0, &image, Coefficients::Integers));
    }
    let kernel_of = flip(n, mu_matrix(f, n, force)?);
    let image = flip(n + 1, boundary_matrix(f, n + 1, &nus.get(n + 1), BoundaryKind::Hat, force)?);
    if let Some(j) = composite_witness(&kernel_of, &image) {
        return Err(Error::ImageNotInKernel(format!(
            "μ_{n} applied to the boundary of {} is nonzero",
            describe_tuple(q, n + 1, j)
        )));
    }
    Ok(group_from(kernel_of.cols(), rank(&kernel_of), &image, Coefficients::Integers))
}
