//! Unoriented link diagrams described by their smoothings, and the bracket
//! value obtained by folding the resolving tree through a magma.

mod moves;

pub use moves::{example_two_crossing_diagram, make_move_fixture, MoveKind};

use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::magma::{EventualSequence, FiniteMagma};

/// Four arc labels in cyclic order around a crossing.
///
/// The 0-smoothing joins slots 1–2 and 3–4; the ∞-smoothing joins 2–3 and 4–1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing(pub [usize; 4]);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Smoothing {
    Zero,
    Infinity,
}

impl Crossing {
    pub fn pairs(&self, which: Smoothing) -> [(usize, usize); 2] {
        let [a, b, c, d] = self.0;
        match which {
            Smoothing::Zero => [(a, b), (c, d)],
            Smoothing::Infinity => [(b, c), (d, a)],
        }
    }

    /// The same crossing with its two smoothings exchanged.
    pub fn rotated(&self) -> Crossing {
        let [a, b, c, d] = self.0;
        Crossing([b, c, d, a])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    free_circles: usize,
}

/// Circle counts at the leaves of a resolving tree, left to right.
pub type LeafTuple = Vec<usize>;

/// Largest crossing count the resolving tree is expanded for.
pub const MAX_CROSSINGS: usize = 24;

impl LinkDiagram {
    pub fn new(crossings: Vec<Crossing>, free_circles: usize) -> Result<Self> {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        for c in &crossings {
            for &l in &c.0 {
                *seen.entry(l).or_default() += 1;
            }
        }
        let mut bad: Vec<_> = seen.iter().filter(|(_, &k)| k != 2).map(|(&l, &k)| (l, k)).collect();
        bad.sort();
        if let Some((l, k)) = bad.first() {
            return Err(Error::InvalidDiagram(format!("arc {l} occurs {k} times, expected 2")));
        }
        Ok(LinkDiagram { crossings, free_circles })
    }

    /// `T_n`: `n` disjoint circles, no crossings.
    pub fn trivial(n: usize) -> Self {
        LinkDiagram { crossings: Vec::new(), free_circles: n }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_circles(&self) -> usize {
        self.free_circles
    }

    /// Arc labels in order of first appearance.
    pub fn arcs(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for c in &self.crossings {
            for &l in &c.0 {
                if !out.contains(&l) {
                    out.push(l);
                }
            }
        }
        out
    }

    pub(crate) fn fresh_label(&self) -> usize {
        self.crossings.iter().flat_map(|c| c.0).max().unwrap_or(0) + 1
    }

    /// The diagram with every crossing's smoothings exchanged.
    pub fn mirror(&self) -> Self {
        LinkDiagram {
            crossings: self.crossings.iter().map(Crossing::rotated).collect(),
            free_circles: self.free_circles,
        }
    }

    /// Disjoint union with one more trivial circle.
    pub fn add_circle(&self) -> Self {
        LinkDiagram { crossings: self.crossings.clone(), free_circles: self.free_circles + 1 }
    }

    /// Relabels arcs `1..=k` in order of first appearance.
    pub fn canonical(&self) -> Self {
        let arcs = self.arcs();
        let idx: HashMap<usize, usize> = arcs.iter().enumerate().map(|(i, &l)| (l, i + 1)).collect();
        LinkDiagram {
            crossings: self.crossings.iter().map(|c| Crossing(c.0.map(|l| idx[&l]))).collect(),
            free_circles: self.free_circles,
        }
    }

    /// Removes crossing `index` (0-based), joining its arcs per the smoothing.
    pub fn smooth(&self, index: usize, which: Smoothing) -> Result<Self> {
        if index >= self.crossings.len() {
            return Err(Error::IndexOutOfRange { index, len: self.crossings.len() });
        }
        let mut rest = self.crossings.clone();
        let removed = rest.remove(index);
        let mut pairs = removed.pairs(which);
        let mut free = self.free_circles;
        for k in 0..2 {
            let (x, y) = pairs[k];
            if x == y {
                free += 1;
                continue;
            }
            let rename = |l: &mut usize| {
                if *l == y {
                    *l = x;
                }
            };
            for c in &mut rest {
                c.0.iter_mut().for_each(rename);
            }
            for p in pairs.iter_mut().skip(k + 1) {
                rename(&mut p.0);
                rename(&mut p.1);
            }
        }
        Ok(LinkDiagram { crossings: rest, free_circles: free })
    }

    /// Cuts one strand open. Returns the diagram with the two loose ends,
    /// which a gadget must consume exactly once each (twice if they coincide).
    pub(crate) fn open_strand(&self) -> Result<(LinkDiagram, usize, usize)> {
        if let Some(&x) = self.crossings.first().map(|c| &c.0[0]) {
            let y = self.fresh_label();
            let mut crossings = self.crossings.clone();
            let mut seen = false;
            'outer: for c in &mut crossings {
                for l in c.0.iter_mut() {
                    if *l == x {
                        if seen {
                            *l = y;
                            break 'outer;
                        }
                        seen = true;
                    }
                }
            }
            Ok((LinkDiagram { crossings, free_circles: self.free_circles }, x, y))
        } else if self.free_circles > 0 {
            let x = self.fresh_label();
            Ok((LinkDiagram { crossings: Vec::new(), free_circles: self.free_circles - 1 }, x, x))
        } else {
            Err(Error::EmptyDiagram)
        }
    }

    /// Adds a curl on the first strand: `+` smooths to `(τD, D)`, `-` to `(D, τD)`.
    pub fn add_kink(&self, positive: bool) -> Result<Self> {
        let (mut d, x, y) = self.open_strand()?;
        let l = d.fresh_label().max(x.max(y) + 1);
        d.crossings.push(Crossing(if positive { [x, y, l, l] } else { [l, x, y, l] }));
        Ok(d)
    }

    fn check_order(&self, order: &[usize]) -> Result<()> {
        let c = self.crossings.len();
        let mut seen = vec![false; c];
        if order.len() != c {
            return Err(Error::InvalidOrder(format!("{} entries for {c} crossings", order.len())));
        }
        for &i in order {
            if i >= c || seen[i] {
                return Err(Error::InvalidOrder(format!("{} is repeated or out of range", i + 1)));
            }
            seen[i] = true;
        }
        Ok(())
    }

    /// Circle count of the full smoothing given by one choice per crossing.
    pub fn state_circles(&self, state: &[Smoothing]) -> usize {
        let labels = self.arcs();
        let idx: HashMap<usize, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut parent: Vec<usize> = (0..labels.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut components = labels.len();
        for (c, &s) in self.crossings.iter().zip(state) {
            for (a, b) in c.pairs(s) {
                let (ra, rb) = (find(&mut parent, idx[&a]), find(&mut parent, idx[&b]));
                if ra != rb {
                    parent[ra] = rb;
                    components -= 1;
                }
            }
        }
        components + self.free_circles
    }

    /// Leaf circle counts of the resolving tree that smooths crossings in
    /// `order` (0-based indices), 0-branch first.
    pub fn resolve_leaves(&self, order: &[usize]) -> Result<LeafTuple> {
        self.check_order(order)?;
        let c = self.crossings.len();
        if c > MAX_CROSSINGS {
            return Err(Error::SizeGuard(format!("{c} crossings exceed the limit of {MAX_CROSSINGS}")));
        }
        let mut state = vec![Smoothing::Zero; c];
        Ok((0..1usize << c)
            .map(|leaf| {
                for (depth, &crossing) in order.iter().enumerate() {
                    let bit = (leaf >> (c - 1 - depth)) & 1;
                    state[crossing] = if bit == 0 { Smoothing::Zero } else { Smoothing::Infinity };
                }
                self.state_circles(&state)
            })
            .collect())
    }

    pub fn identity_order(&self) -> Vec<usize> {
        (0..self.crossings.len()).collect()
    }
}

/// Folds leaf values pairwise, `(0-child) * (∞-child)`, up to the root.
pub fn fold_leaves(m: &FiniteMagma, mut values: Vec<usize>) -> usize {
    while values.len() > 1 {
        values = values.chunks(2).map(|p| m.op(p[0], p[1])).collect();
    }
    values[0]
}

/// The bracket value with crossings resolved in the given order.
pub fn bracket_with_order(m: &FiniteMagma, s: &EventualSequence, d: &LinkDiagram, order: &[usize]) -> Result<usize> {
    if d.crossing_count() == 0 && d.free_circles() == 0 {
        return Err(Error::EmptyDiagram);
    }
    s.check_order(m.order())?;
    let leaves = d.resolve_leaves(order)?;
    Ok(fold_leaves(m, leaves.into_iter().map(|k| s.get(k)).collect()))
}

/// The bracket value in file order. For entropic magmas any order gives the same value.
pub fn bracket(m: &FiniteMagma, s: &EventualSequence, d: &LinkDiagram) -> Result<usize> {
    bracket_with_order(m, s, d, &d.identity_order())
}

/// Whether `trials` random crossing orders all give the file-order value.
pub fn order_invariance_check(
    m: &FiniteMagma,
    s: &EventualSequence,
    d: &LinkDiagram,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<bool> {
    let reference = bracket(m, s, d)?;
    let mut order = d.identity_order();
    for _ in 0..trials {
        order.shuffle(rng);
        if bracket_with_order(m, s, d, &order)? != reference {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A random 4-valent diagram: slots matched into arcs uniformly at random.
///
/// Such diagrams need not be planar; the skein recursion does not care.
pub fn random_diagram(rng: &mut impl Rng, crossings: usize, free_circles: usize) -> LinkDiagram {
    let mut slots: Vec<usize> = (0..4 * crossings).collect();
    slots.shuffle(rng);
    let mut labels = vec![0; 4 * crossings];
    for (k, pair) in slots.chunks(2).enumerate() {
        labels[pair[0]] = k + 1;
        labels[pair[1]] = k + 1;
    }
    let cs = labels.chunks(4).map(|c| Crossing([c[0], c[1], c[2], c[3]])).collect();
    LinkDiagram { crossings: cs, free_circles }.canonical()
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "link")?;
        writeln!(f, "circles {}", self.free_circles)?;
        for c in &self.crossings {
            let [a, b, cc, d] = c.0;
            writeln!(f, "x {a} {b} {cc} {d}")?;
        }
        Ok(())
    }
}
