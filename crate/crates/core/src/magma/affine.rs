use super::FiniteMagma;
use crate::error::{Error, Result};

/// `a*b = t*a + s*b + a0 (mod m)` on `Z_m`, residue `r` labelled `r + 1`.
pub fn affine_magma(m: usize, t: i64, s: i64, a0: i64) -> Result<FiniteMagma> {
    if m == 0 {
        return Err(Error::InvalidArgument("modulus must be at least 1".into()));
    }
    let mi = m as i64;
    FiniteMagma::from_fn(m, |a, b| {
        let (ra, rb) = ((a - 1) as i64, (b - 1) as i64);
        ((t * ra + s * rb + a0).rem_euclid(mi)) as usize + 1
    })
}

/// `a*b = f(a) + g(b) + c` over an abelian group on the same carrier.
///
/// All maps use the magma's 1-based labels; `add[(x-1)*n + (y-1)]` is `x + y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToyodaDecomposition {
    pub order: usize,
    pub add: Vec<usize>,
    pub zero: usize,
    pub f: Vec<usize>,
    pub g: Vec<usize>,
    pub c: usize,
    /// The basepoint `e` the addition was built from.
    pub basepoint: usize,
}

impl ToyodaDecomposition {
    pub fn sum(&self, x: usize, y: usize) -> usize {
        self.add[(x - 1) * self.order + (y - 1)]
    }

    pub fn apply_f(&self, x: usize) -> usize {
        self.f[x - 1]
    }

    pub fn apply_g(&self, x: usize) -> usize {
        self.g[x - 1]
    }

    /// `f(a) + g(b) + c`
    pub fn recompose(&self, a: usize, b: usize) -> usize {
        self.sum(self.sum(self.apply_f(a), self.apply_g(b)), self.c)
    }

    pub fn negate(&self, x: usize) -> usize {
        (1..=self.order).find(|&y| self.sum(x, y) == self.zero).expect("group has inverses")
    }

    /// Checks every claim of the decomposition against `m`.
    pub fn verify(&self, m: &FiniteMagma) -> std::result::Result<(), String> {
        let n = self.order;
        if n != m.order() {
            return Err("order mismatch".into());
        }
        let els = 1..=n;
        for x in els.clone() {
            if self.sum(x, self.zero) != x || self.sum(self.zero, x) != x {
                return Err(format!("{} is not neutral for {x}", self.zero));
            }
            if !els.clone().any(|y| self.sum(x, y) == self.zero) {
                return Err(format!("{x} has no inverse"));
            }
            for y in els.clone() {
                if self.sum(x, y) != self.sum(y, x) {
                    return Err(format!("{x}+{y} is not commutative"));
                }
                for z in els.clone() {
                    if self.sum(self.sum(x, y), z) != self.sum(x, self.sum(y, z)) {
                        return Err(format!("({x}+{y})+{z} is not associative"));
                    }
                }
            }
        }
        for (name, map) in [("f", &self.f), ("g", &self.g)] {
            let mut seen = vec![false; n + 1];
            for &v in map.iter() {
                if seen[v] {
                    return Err(format!("{name} is not a bijection"));
                }
                seen[v] = true;
            }
            for x in els.clone() {
                for y in els.clone() {
                    if map[self.sum(x, y) - 1] != self.sum(map[x - 1], map[y - 1]) {
                        return Err(format!("{name} is not additive at ({x},{y})"));
                    }
                }
            }
        }
        for x in els.clone() {
            if self.apply_f(self.apply_g(x)) != self.apply_g(self.apply_f(x)) {
                return Err(format!("f and g do not commute at {x}"));
            }
            for y in els.clone() {
                if self.recompose(x, y) != m.op(x, y) {
                    return Err(format!("f({x})+g({y})+c differs from {x}*{y}"));
                }
            }
        }
        Ok(())
    }
}

/// Recovers the affine form of an entropic quasigroup.
pub fn toyoda_decompose(m: &FiniteMagma) -> Result<ToyodaDecomposition> {
    if let Some(why) = m.quasigroup_defect() {
        return Err(Error::NotAQuasigroup(why));
    }
    m.require_entropic()?;
    let n = m.order();
    for e in m.elements() {
        // R_e(x) = x*e and L_e(x) = e*x are bijections; invert them by table scan.
        let mut r_inv = vec![0; n + 1];
        let mut l_inv = vec![0; n + 1];
        for x in m.elements() {
            r_inv[m.op(x, e)] = x;
            l_inv[m.op(e, x)] = x;
        }
        let mut add = Vec::with_capacity(n * n);
        for x in m.elements() {
            for y in m.elements() {
                add.push(m.op(r_inv[x], l_inv[y]));
            }
        }
        let sum = |x: usize, y: usize| add[(x - 1) * n + (y - 1)];
        let Some(zero) = m.elements().find(|&z| m.elements().all(|x| sum(z, x) == x && sum(x, z) == x)) else {
            continue;
        };
        let Some(neg) = (1..=n).map(|x| (1..=n).find(|&y| sum(x, y) == zero)).collect::<Option<Vec<usize>>>() else {
            continue;
        };
        let sub = |x: usize, y: usize| sum(x, neg[y - 1]);
        // x*y = (x*e) + (e*y), so f(x) = x*e - 0*e, g(y) = e*y - e*0, c = 0*e + e*0.
        let f: Vec<usize> = m.elements().map(|x| sub(m.op(x, e), m.op(zero, e))).collect();
        let g: Vec<usize> = m.elements().map(|y| sub(m.op(e, y), m.op(e, zero))).collect();
        let c = sum(m.op(zero, e), m.op(e, zero));
        let d = ToyodaDecomposition { order: n, add, zero, f, g, c, basepoint: e };
        if d.verify(m).is_ok() {
            return Ok(d);
        }
    }
    Err(Error::DecompositionNotFound)
}
