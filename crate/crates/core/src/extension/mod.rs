//! Extensions `A x X -> X` of an entropic magma by an affine magma on `Z_m`,
//! their 2-cocycles and coboundaries, and general dynamical cocycles.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::intlin::{quotient_structure, solve_integer_system, HomologyResult, SparseIntMatrix};
use crate::magma::{affine_magma, FiniteMagma};

/// Largest `m |X|` for which an extension table is built.
pub const MAX_EXTENSION_ORDER: usize = 64;
/// Largest `|X|` accepted by [`second_cohomology`].
pub const MAX_COHOMOLOGY_ORDER: usize = 8;

/// `a * b = t a + s b + a0` on `Z_m`; `m = 0` stands for `Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffineAction {
    pub modulus: u64,
    pub t: i64,
    pub s: i64,
    pub a0: i64,
}

impl AffineAction {
    pub fn new(modulus: u64, t: i64, s: i64, a0: i64) -> Self {
        let mut act = AffineAction { modulus, t, s, a0 };
        act.t = act.reduce(t);
        act.s = act.reduce(s);
        act.a0 = act.reduce(a0);
        act
    }

    /// The canonical representative in `0..m` (identity over `Z`).
    pub fn reduce(&self, x: i64) -> i64 {
        if self.modulus == 0 {
            x
        } else {
            x.rem_euclid(self.modulus as i64)
        }
    }

    pub fn apply(&self, a1: i64, a2: i64) -> i64 {
        self.reduce(self.t * a1 + self.s * a2 + self.a0)
    }

    /// The action as a magma on `Z_m`, residue `r` labelled `r + 1`.
    pub fn magma(&self) -> Result<FiniteMagma> {
        if self.modulus == 0 {
            return Err(Error::Unsupported("the action on Z has no finite table".into()));
        }
        affine_magma(self.modulus as usize, self.t, self.s, self.a0)
    }
}

impl fmt::Display for AffineAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let group = if self.modulus == 0 { "Z".to_string() } else { format!("Z_{}", self.modulus) };
        write!(f, "a*b = {}a + {}b + {} on {group}", self.t, self.s, self.a0)
    }
}

/// `c: X -> Z_m`, stored by element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain1 {
    values: Vec<i64>,
}

impl Cochain1 {
    pub fn new(values: Vec<i64>) -> Self {
        Cochain1 { values }
    }

    pub fn zero(order: usize) -> Self {
        Cochain1 { values: vec![0; order] }
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, x: usize) -> i64 {
        self.values[x - 1]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    fn check(&self, m: &FiniteMagma) -> Result<()> {
        if self.order() != m.order() {
            return Err(Error::DimensionMismatch(format!(
                "cochain on {} elements for a magma of order {}",
                self.order(),
                m.order()
            )));
        }
        Ok(())
    }
}

/// `f: X x X -> Z_m`, row-major in the first argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain2 {
    order: usize,
    values: Vec<i64>,
}

impl Cochain2 {
    pub fn new(order: usize, values: Vec<i64>) -> Result<Self> {
        if values.len() != order * order {
            return Err(Error::DimensionMismatch(format!("{} values for {order}^2 pairs", values.len())));
        }
        Ok(Cochain2 { order, values })
    }

    pub fn zero(order: usize) -> Self {
        Cochain2 { order, values: vec![0; order * order] }
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let values = (1..=order).flat_map(|a| (1..=order).map(move |b| (a, b))).map(|(a, b)| f(a, b)).collect();
        Cochain2 { order, values }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self, x1: usize, x2: usize) -> i64 {
        self.values[(x1 - 1) * self.order + (x2 - 1)]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `self - other`, reduced for `act`.
    pub fn sub(&self, other: &Cochain2, act: &AffineAction) -> Result<Cochain2> {
        self.combine(other, act, -1)
    }

    /// `self + other`, reduced for `act`.
    pub fn add(&self, other: &Cochain2, act: &AffineAction) -> Result<Cochain2> {
        self.combine(other, act, 1)
    }

    fn combine(&self, other: &Cochain2, act: &AffineAction, sign: i64) -> Result<Cochain2> {
        if self.order != other.order {
            return Err(Error::DimensionMismatch("cochains on different sets".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| act.reduce(a + sign * b)).collect();
        Ok(Cochain2 { order: self.order, values })
    }

    fn check(&self, m: &FiniteMagma) -> Result<()> {
        if self.order != m.order() {
            return Err(Error::DimensionMismatch(format!(
                "cochain on {} elements for a magma of order {}",
                self.order,
                m.order()
            )));
        }
        Ok(())
    }
}

/// `(∂c)(x1, x2) = t c(x1) + s c(x2) - c(x1 * x2)`.
pub fn coboundary(c: &Cochain1, act: &AffineAction, m: &FiniteMagma) -> Result<Cochain2> {
    c.check(m)?;
    Ok(Cochain2::from_fn(m.order(), |x1, x2| {
        act.reduce(act.t * c.value(x1) + act.s * c.value(x2) - c.value(m.op(x1, x2)))
    }))
}

/// Left-hand side of the entropic cocycle condition at `(x1, x2, x3, x4)`:
/// `t f(x1,x2) - t f(x1,x3) + s f(x3,x4) - s f(x2,x4) + f(x1*x2, x3*x4) - f(x1*x3, x2*x4)`.
fn cocycle_defect(f: &Cochain2, act: &AffineAction, m: &FiniteMagma, x: [usize; 4]) -> i64 {
    let [x1, x2, x3, x4] = x;
    act.reduce(
        act.t * (f.value(x1, x2) - f.value(x1, x3))
            + act.s * (f.value(x3, x4) - f.value(x2, x4))
            + f.value(m.op(x1, x2), m.op(x3, x4))
            - f.value(m.op(x1, x3), m.op(x2, x4)),
    )
}

fn quadruples(q: usize) -> impl Iterator<Item = [usize; 4]> {
    (0..q.pow(4)).map(move |i| [i / (q * q * q) + 1, i / (q * q) % q + 1, i / q % q + 1, i % q + 1])
}

/// Least `(x1, x2, x3, x4)` on which the entropic cocycle condition fails.
pub fn cocycle_witness(f: &Cochain2, act: &AffineAction, m: &FiniteMagma) -> Result<Option<[usize; 4]>> {
    m.require_entropic()?;
    f.check(m)?;
    Ok(quadruples(m.order()).find(|&x| cocycle_defect(f, act, m, x) != 0))
}

pub fn is_entropic_cocycle(f: &Cochain2, act: &AffineAction, m: &FiniteMagma) -> Result<bool> {
    Ok(cocycle_witness(f, act, m)?.is_none())
}

/// Label of `(a, x)` in an extension: `a |X| + x` for the residue `a`.
pub fn extension_label(a: i64, x: usize, order: usize) -> usize {
    a as usize * order + x
}

/// `(a1, x1) * (a2, x2) = (a1 * a2 + f(x1, x2), x1 * x2)` on `Z_m x X`.
pub fn build_extension(m: &FiniteMagma, act: &AffineAction, f: &Cochain2) -> Result<FiniteMagma> {
    f.check(m)?;
    if act.modulus == 0 {
        return Err(Error::Unsupported("extensions by Z are infinite".into()));
    }
    let q = m.order();
    let size = act.modulus as usize * q;
    if size > MAX_EXTENSION_ORDER {
        return Err(Error::SizeGuard(format!("extension of order {size} exceeds {MAX_EXTENSION_ORDER}")));
    }
    let split = |label: usize| (((label - 1) / q) as i64, (label - 1) % q + 1);
    FiniteMagma::from_fn(size, |l1, l2| {
        let ((a1, x1), (a2, x2)) = (split(l1), split(l2));
        let a = act.reduce(act.apply(a1, a2) + f.value(x1, x2));
        extension_label(a, m.op(x1, x2), q)
    })
}

/// Rows `(x1, x2)`, columns `x`: the matrix of `c -> ∂c` over the integers.
fn coboundary_matrix(act: &AffineAction, m: &FiniteMagma) -> SparseIntMatrix {
    let q = m.order();
    let mut d = SparseIntMatrix::new(q * q, q);
    for x1 in 1..=q {
        for x2 in 1..=q {
            let row = (x1 - 1) * q + (x2 - 1);
            d.add_to(row, x1 - 1, &BigInt::from(act.t));
            d.add_to(row, x2 - 1, &BigInt::from(act.s));
            d.add_to(row, m.op(x1, x2) - 1, &BigInt::from(-1));
        }
    }
    d
}

/// Some `c` with `∂c = f1 - f2`, or `None` when the extensions are inequivalent.
///
/// Over `Z_m` the lexicographically least `c` (values in `0..m`) is returned.
pub fn extensions_equivalent(
    f1: &Cochain2,
    f2: &Cochain2,
    act: &AffineAction,
    m: &FiniteMagma,
) -> Result<Option<Cochain1>> {
    f1.check(m)?;
    f2.check(m)?;
    let q = m.order();
    let target: Vec<BigInt> = f1.sub(f2, act)?.values().iter().map(|&v| BigInt::from(v)).collect();
    let d = coboundary_matrix(act, m);
    if act.modulus == 0 {
        let x = solve_integer_system(&d, &target)?;
        return Ok(x.map(|x| Cochain1::new(x.iter().map(to_i64).collect())));
    }
    let modulus = act.modulus as i64;
    // [D_rest | m I] y = b - D_fixed c_fixed
    let solvable = |fixed: &[i64]| -> Result<bool> {
        let k = fixed.len();
        let mut a = SparseIntMatrix::new(q * q, q - k + q * q);
        let mut rhs = target.clone();
        for (i, j, v) in d.entries() {
            if j < k {
                rhs[i] -= v * fixed[j];
            } else {
                a.set(i, j - k, v.clone());
            }
        }
        for i in 0..q * q {
            a.set(i, q - k + i, BigInt::from(modulus));
        }
        Ok(solve_integer_system(&a, &rhs)?.is_some())
    };
    if !solvable(&[])? {
        return Ok(None);
    }
    let mut c = Vec::with_capacity(q);
    for _ in 0..q {
        let mut chosen = None;
        for v in 0..modulus {
            c.push(v);
            if solvable(&c)? {
                chosen = Some(v);
                break;
            }
            c.pop();
        }
        if chosen.is_none() {
            return Err(Error::Internal("a solvable system lost its solution".into()));
        }
    }
    Ok(Some(Cochain1::new(c)))
}

fn to_i64(x: &BigInt) -> i64 {
    i64::try_from(x).unwrap_or(i64::MAX)
}

/// The cocycle condition as integer rows over the pairs, without duplicates.
fn cocycle_rows(act: &AffineAction, m: &FiniteMagma) -> BTreeSet<Vec<(usize, i64)>> {
    let q = m.order();
    let idx = |a: usize, b: usize| (a - 1) * q + (b - 1);
    let mut rows = BTreeSet::new();
    for [x1, x2, x3, x4] in quadruples(q) {
        let mut row = vec![0i64; q * q];
        row[idx(x1, x2)] += act.t;
        row[idx(x1, x3)] -= act.t;
        row[idx(x3, x4)] += act.s;
        row[idx(x2, x4)] -= act.s;
        row[idx(m.op(x1, x2), m.op(x3, x4))] += 1;
        row[idx(m.op(x1, x3), m.op(x2, x4))] -= 1;
        let sparse: Vec<(usize, i64)> =
            row.iter().enumerate().map(|(i, &v)| (i, act.reduce(v))).filter(|&(_, v)| v != 0).collect();
        if !sparse.is_empty() {
            rows.insert(sparse);
        }
    }
    rows
}

/// Upper-triangular basis of `span(rows) + m Z^dim`, pivots on the diagonal.
fn echelon_with_modulus(dim: usize, modulus: i64, rows: &BTreeSet<Vec<(usize, i64)>>) -> Result<Vec<Vec<i128>>> {
    let m = modulus as i128;
    let mut basis: Vec<Vec<i128>> = (0..dim)
        .map(|i| {
            let mut r = vec![0; dim];
            r[i] = m;
            r
        })
        .collect();
    let overflow = || Error::Internal("integer overflow in the cocycle lattice".into());
    for sparse in rows {
        let mut v = vec![0i128; dim];
        for &(i, x) in sparse {
            v[i] = x as i128;
        }
        for j in 0..dim {
            v[j] = v[j].rem_euclid(m);
            if v[j] == 0 {
                continue;
            }
            let p = basis[j][j];
            let a = v[j];
            if a % p == 0 {
                let k = a / p;
                for (vi, bi) in v.iter_mut().zip(&basis[j]) {
                    *vi = vi.checked_sub(k.checked_mul(*bi).ok_or_else(overflow)?).ok_or_else(overflow)?;
                }
            } else {
                let e = a.extended_gcd(&p);
                let (g, y, x) = (e.gcd, e.x, e.y);
                let (pg, ag) = (p / g, a / g);
                let row = basis[j].clone();
                for i in j..dim {
                    let new_pivot =
                        x.checked_mul(row[i]).and_then(|l| y.checked_mul(v[i]).and_then(|r| l.checked_add(r)));
                    let new_v =
                        pg.checked_mul(v[i]).and_then(|l| ag.checked_mul(row[i]).and_then(|r| l.checked_sub(r)));
                    basis[j][i] = new_pivot.ok_or_else(overflow)?;
                    v[i] = new_v.ok_or_else(overflow)?;
                }
            }
            for x in v.iter_mut().skip(j + 1) {
                *x = x.rem_euclid(m);
            }
        }
    }
    for (j, row) in basis.iter_mut().enumerate() {
        if row[j] < 0 {
            row.iter_mut().for_each(|x| *x = -*x);
        }
    }
    Ok(basis)
}

/// `H^2 = {f : entropic cocycle condition} / {∂c}` with coefficients in `Z_m`.
pub fn second_cohomology(m: &FiniteMagma, act: &AffineAction) -> Result<HomologyResult> {
    m.require_entropic()?;
    if act.modulus == 0 {
        return Err(Error::Unsupported("second cohomology is computed over Z_m with m >= 1".into()));
    }
    let q = m.order();
    if q > MAX_COHOMOLOGY_ORDER {
        return Err(Error::SizeGuard(format!("|X| = {q} exceeds {MAX_COHOMOLOGY_ORDER}")));
    }
    let n = q * q;
    let modulus = act.modulus as i64;
    let h = echelon_with_modulus(n, modulus, &cocycle_rows(act, m))?;
    // Cocycles lift to {f : H f in m Z^n}, spanned by the columns of m H^{-1}.
    let mut lambda = vec![vec![BigInt::zero(); n]; n];
    for r in 0..n {
        for j in 0..n {
            let mut acc = if r == j { BigInt::from(modulus) } else { BigInt::zero() };
            for i in 0..j {
                acc -= &lambda[r][i] * BigInt::from(h[i][j]);
            }
            let (quot, rem) = acc.div_rem(&BigInt::from(h[j][j]));
            if !rem.is_zero() {
                return Err(Error::Internal("cocycle lattice is not integral".into()));
            }
            lambda[r][j] = quot;
        }
    }
    let cocycles: Vec<Vec<BigInt>> = (0..n).map(|j| (0..n).map(|r| lambda[r][j].clone()).collect()).collect();
    let d = coboundary_matrix(act, m);
    let mut image: Vec<Vec<BigInt>> = (0..q).map(|j| d.column(j)).collect();
    image.extend((0..n).map(|i| {
        let mut e = vec![BigInt::zero(); n];
        e[i] = BigInt::from(modulus);
        e
    }));
    quotient_structure(&cocycles, &image)
}

/// `φ(a1, a2, x1, x2)` with values in `A = {1..=a}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicalCocycle {
    a: usize,
    x: usize,
    table: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleMode {
    Associative,
    Entropic,
}

/// Arguments on which a dynamical cocycle condition fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicalWitness {
    pub a: Vec<usize>,
    pub x: Vec<usize>,
}

impl fmt::Display for DynamicalWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(f, "a = ({}), x = ({})", list(&self.a), list(&self.x))
    }
}

impl DynamicalCocycle {
    pub fn new(a: usize, x: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != a * a * x * x {
            return Err(Error::DimensionMismatch(format!("{} values for {a}^2 {x}^2 arguments", table.len())));
        }
        if let Some(&bad) = table.iter().find(|&&v| v == 0 || v > a) {
            return Err(Error::ElementOutOfRange { element: bad, order: a });
        }
        Ok(DynamicalCocycle { a, x, table })
    }

    pub fn from_fn(a: usize, x: usize, f: impl Fn(usize, usize, usize, usize) -> usize) -> Result<Self> {
        let mut table = Vec::with_capacity(a * a * x * x);
        for a1 in 1..=a {
            for a2 in 1..=a {
                for x1 in 1..=x {
                    for x2 in 1..=x {
                        table.push(f(a1, a2, x1, x2));
                    }
                }
            }
        }
        DynamicalCocycle::new(a, x, table)
    }

    /// `φ(a1, a2, x1, x2) = a1 * a2 + f(x1, x2)`, residue `r` labelled `r + 1`.
    pub fn from_affine(act: &AffineAction, f: &Cochain2) -> Result<Self> {
        if act.modulus == 0 {
            return Err(Error::Unsupported("dynamical cocycles need a finite A".into()));
        }
        let a = act.modulus as usize;
        DynamicalCocycle::from_fn(a, f.order(), |a1, a2, x1, x2| {
            act.reduce(act.apply(a1 as i64 - 1, a2 as i64 - 1) + f.value(x1, x2)) as usize + 1
        })
    }

    pub fn a_size(&self) -> usize {
        self.a
    }

    pub fn x_size(&self) -> usize {
        self.x
    }

    pub fn value(&self, a1: usize, a2: usize, x1: usize, x2: usize) -> usize {
        self.table[(((a1 - 1) * self.a + (a2 - 1)) * self.x + (x1 - 1)) * self.x + (x2 - 1)]
    }

    /// `(a1, x1) * (a2, x2) = (φ(a1, a2, x1, x2), x1 * x2)`, with `(a, x)` labelled `(a - 1)|X| + x`.
    pub fn product_magma(&self, m: &FiniteMagma) -> Result<FiniteMagma> {
        self.check(m)?;
        let q = self.x;
        let size = self.a * q;
        if size > MAX_EXTENSION_ORDER {
            return Err(Error::SizeGuard(format!("product of order {size} exceeds {MAX_EXTENSION_ORDER}")));
        }
        let split = |l: usize| ((l - 1) / q + 1, (l - 1) % q + 1);
        FiniteMagma::from_fn(size, |l1, l2| {
            let ((a1, x1), (a2, x2)) = (split(l1), split(l2));
            (self.value(a1, a2, x1, x2) - 1) * q + m.op(x1, x2)
        })
    }

    fn check(&self, m: &FiniteMagma) -> Result<()> {
        if m.order() != self.x {
            return Err(Error::DimensionMismatch(format!(
                "cocycle over {} elements for a magma of order {}",
                self.x,
                m.order()
            )));
        }
        Ok(())
    }

    /// First arguments (lexicographically) violating the condition for `mode`.
    pub fn witness(&self, m: &FiniteMagma, mode: CocycleMode) -> Result<Option<DynamicalWitness>> {
        self.check(m)?;
        match mode {
            CocycleMode::Associative => {
                if let Some((a, b, c)) = m.associativity_witness() {
                    return Err(Error::NotAssociative { a, b, c });
                }
                Ok(self.associative_witness(m))
            }
            CocycleMode::Entropic => {
                m.require_entropic()?;
                Ok(self.entropic_witness(m))
            }
        }
    }

    pub fn is_cocycle(&self, m: &FiniteMagma, mode: CocycleMode) -> Result<bool> {
        Ok(self.witness(m, mode)?.is_none())
    }

    fn associative_witness(&self, m: &FiniteMagma) -> Option<DynamicalWitness> {
        let phi = |a1, a2, x1, x2| self.value(a1, a2, x1, x2);
        let (na, nx) = (self.a, self.x);
        for a in itertools::iproduct!(1..=na, 1..=na, 1..=na) {
            for x in itertools::iproduct!(1..=nx, 1..=nx, 1..=nx) {
                let (a1, a2, a3) = a;
                let (x1, x2, x3) = x;
                let lhs = phi(phi(a1, a2, x1, x2), a3, m.op(x1, x2), x3);
                let rhs = phi(a1, phi(a2, a3, x2, x3), x1, m.op(x2, x3));
                if lhs != rhs {
                    return Some(DynamicalWitness { a: vec![a1, a2, a3], x: vec![x1, x2, x3] });
                }
            }
        }
        None
    }

    fn entropic_witness(&self, m: &FiniteMagma) -> Option<DynamicalWitness> {
        let phi = |a1, a2, x1, x2| self.value(a1, a2, x1, x2);
        let (na, nx) = (self.a, self.x);
        for (a1, a2, a3, a4) in itertools::iproduct!(1..=na, 1..=na, 1..=na, 1..=na) {
            for [x1, x2, x3, x4] in quadruples(nx) {
                let lhs = phi(phi(a1, a2, x1, x2), phi(a3, a4, x3, x4), m.op(x1, x2), m.op(x3, x4));
                let rhs = phi(phi(a1, a3, x1, x3), phi(a2, a4, x2, x4), m.op(x1, x3), m.op(x2, x4));
                if lhs != rhs {
                    return Some(DynamicalWitness { a: vec![a1, a2, a3, a4], x: vec![x1, x2, x3, x4] });
                }
            }
        }
        None
    }
}
