use std::fmt;

use super::FiniteMagma;
use crate::error::{Error, Result};

/// An equivalence relation on `1..=n`, stored as least representatives.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    rep: Vec<usize>,
}

impl Partition {
    pub fn discrete(n: usize) -> Self {
        Partition { rep: (1..=n).collect() }
    }

    pub fn single(n: usize) -> Self {
        Partition { rep: vec![1; n] }
    }

    /// Builds a partition from explicit classes covering `1..=n` exactly once.
    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Self> {
        let mut rep = vec![0; n];
        for class in classes {
            let least = *class.iter().min().ok_or_else(|| Error::InvalidArgument("empty class".into()))?;
            for &x in class {
                if x == 0 || x > n {
                    return Err(Error::ElementOutOfRange { element: x, order: n });
                }
                if rep[x - 1] != 0 {
                    return Err(Error::InvalidArgument(format!("element {x} appears twice")));
                }
                rep[x - 1] = least;
            }
        }
        if let Some(i) = rep.iter().position(|&r| r == 0) {
            return Err(Error::InvalidArgument(format!("element {} is in no class", i + 1)));
        }
        Ok(Partition { rep })
    }

    pub fn size(&self) -> usize {
        self.rep.len()
    }

    pub fn representative(&self, x: usize) -> usize {
        self.rep[x - 1]
    }

    pub fn same_class(&self, x: usize, y: usize) -> bool {
        self.rep[x - 1] == self.rep[y - 1]
    }

    /// Least representatives, ascending.
    pub fn representatives(&self) -> Vec<usize> {
        (1..=self.rep.len()).filter(|&x| self.rep[x - 1] == x).collect()
    }

    /// Classes ordered by least representative, members ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        self.representatives()
            .into_iter()
            .map(|r| (1..=self.rep.len()).filter(|&x| self.rep[x - 1] == r).collect())
            .collect()
    }

    /// 1-based index of the class of `x` in [`Partition::classes`] order.
    pub fn class_index(&self, x: usize) -> usize {
        let r = self.rep[x - 1];
        (1..=r).filter(|&y| self.rep[y - 1] == y).count()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let classes: Vec<String> = self
            .classes()
            .iter()
            .map(|c| format!("{{{}}}", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{{{}}}", classes.join(","))
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Keeps the smaller root so roots are least elements.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (a, b) = (self.find(x), self.find(y));
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi] = lo;
        true
    }
}

/// The least congruence of `m` containing every pair.
pub fn congruence_closure(m: &FiniteMagma, pairs: &[(usize, usize)]) -> Result<Partition> {
    let n = m.order();
    for &(x, y) in pairs {
        m.check_element(x)?;
        m.check_element(y)?;
    }
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = pairs.to_vec();
    while let Some((x, y)) = work.pop() {
        if !uf.union(x - 1, y - 1) {
            continue;
        }
        // Compatibility with the new identification implies it for the whole
        // merged class, since every other pair inside it was already pushed.
        for c in 1..=n {
            work.push((m.op(x, c), m.op(y, c)));
            work.push((m.op(c, x), m.op(c, y)));
        }
    }
    let rep = (0..n).map(|i| uf.find(i) + 1).collect();
    Ok(Partition { rep })
}

/// The magma on the classes of `p`, classes ordered by least representative.
pub fn quotient_magma(m: &FiniteMagma, p: &Partition) -> Result<FiniteMagma> {
    if p.size() != m.order() {
        return Err(Error::DimensionMismatch(format!(
            "partition of {} elements for a magma of order {}",
            p.size(),
            m.order()
        )));
    }
    for a in m.elements() {
        for b in m.elements() {
            let (ra, rb) = (p.representative(a), p.representative(b));
            if !p.same_class(m.op(a, b), m.op(ra, rb)) {
                return Err(Error::NotACongruence(format!(
                    "{a} ~ {ra} and {b} ~ {rb} but {a}*{b} = {} is not ~ {ra}*{rb} = {}",
                    m.op(a, b),
                    m.op(ra, rb)
                )));
            }
        }
    }
    let reps = p.representatives();
    let k = reps.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(p.class_index(m.op(a, b)));
        }
    }
    FiniteMagma::new(k, table)
}

/// Largest order accepted by [`find_isomorphism`].
pub const MAX_ISOMORPHISM_ORDER: usize = 8;

/// A bijection `phi` (as `phi[x-1]`) with `phi(a*b) = phi(a)*'phi(b)`, by brute force.
pub fn find_isomorphism(m1: &FiniteMagma, m2: &FiniteMagma) -> Result<Option<Vec<usize>>> {
    let n = m1.order();
    if n > MAX_ISOMORPHISM_ORDER {
        return Err(Error::OrderBoundExceeded { requested: n, limit: MAX_ISOMORPHISM_ORDER });
    }
    if m2.order() != n {
        return Ok(None);
    }
    let mut phi = vec![0usize; n];
    let mut used = vec![false; n + 1];
    Ok(extend_iso(m1, m2, &mut phi, &mut used, 0).then_some(phi))
}

fn extend_iso(m1: &FiniteMagma, m2: &FiniteMagma, phi: &mut [usize], used: &mut [bool], k: usize) -> bool {
    let n = m1.order();
    if k == n {
        return is_homomorphism(m1, m2, phi);
    }
    for image in 1..=n {
        if used[image] {
            continue;
        }
        phi[k] = image;
        used[image] = true;
        // Check all products among the first k+1 elements that involve element k+1.
        let ok = (1..=k + 1).all(|a| {
            [(a, k + 1), (k + 1, a)].iter().all(|&(x, y)| {
                let xy = m1.op(x, y);
                xy > k + 1 || phi[xy - 1] == m2.op(phi[x - 1], phi[y - 1])
            })
        });
        // Products landing beyond the prefix are settled by the final check.
        if ok && extend_iso(m1, m2, phi, used, k + 1) {
            return true;
        }
        used[image] = false;
    }
    phi[k] = 0;
    false
}

fn is_homomorphism(m1: &FiniteMagma, m2: &FiniteMagma, phi: &[usize]) -> bool {
    m1.elements().all(|a| m1.elements().all(|b| phi[m1.op(a, b) - 1] == m2.op(phi[a - 1], phi[b - 1])))
}
