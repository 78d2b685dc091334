//! Signed multigraphs and the Tutte-style magma value obtained by deleting and
//! contracting edges one at a time.

mod fixtures;

pub use fixtures::{make_graph_fixture, GraphFixture};

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::magma::{congruence_closure, quotient_magma, EventualSequence, FiniteMagma, MagmaExpr, Partition, Sign};

/// An edge with its original (0-based) index, which survives reductions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub index: usize,
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedGraph {
    vertices: usize,
    edges: Vec<Edge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReduceMode {
    Delete,
    Contract,
    /// Removes a loop and adds an isolated vertex (`G//e`).
    ContractLoopIsolated,
}

/// Largest edge count the computation tree is expanded for.
pub const MAX_EDGES: usize = 24;

/// Edge counts up to this bound have `X_G` computed over every ordering.
pub const EXACT_ORDERING_LIMIT: usize = 6;

impl SignedGraph {
    /// Vertices are `1..=vertices`; edges get indices in list order.
    pub fn new(vertices: usize, edges: &[(usize, usize, Sign)]) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for (index, &(u, v, sign)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x == 0 || x > vertices {
                    return Err(Error::InvalidGraph(format!(
                        "edge {} has endpoint {x} outside 1..={vertices}",
                        index + 1
                    )));
                }
            }
            out.push(Edge { index, u, v, sign });
        }
        Ok(SignedGraph { vertices, edges: out })
    }

    /// `T_n`: `n` vertices, no edges.
    pub fn edgeless(n: usize) -> Self {
        SignedGraph { vertices: n, edges: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| e.index == index)
    }

    pub fn add_isolated(&self, k: usize) -> Self {
        SignedGraph { vertices: self.vertices + k, edges: self.edges.clone() }
    }

    /// The same graph with vertex `v` renamed `perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.vertices];
        if perm.len() != self.vertices {
            return Err(Error::InvalidArgument("relabeling has the wrong length".into()));
        }
        for &p in perm {
            if p == 0 || p > self.vertices || seen[p - 1] {
                return Err(Error::InvalidArgument("relabeling is not a permutation".into()));
            }
            seen[p - 1] = true;
        }
        let edges = self.edges.iter().map(|e| Edge { u: perm[e.u - 1], v: perm[e.v - 1], ..*e }).collect();
        Ok(SignedGraph { vertices: self.vertices, edges })
    }

    pub fn reduce(&self, index: usize, mode: ReduceMode) -> Result<Self> {
        let pos = self
            .edges
            .iter()
            .position(|e| e.index == index)
            .ok_or_else(|| Error::InvalidGraph(format!("no edge with index {}", index + 1)))?;
        let e = self.edges[pos];
        let mut rest = self.edges.clone();
        rest.remove(pos);
        match mode {
            ReduceMode::Delete => Ok(SignedGraph { vertices: self.vertices, edges: rest }),
            ReduceMode::Contract => {
                if e.is_loop() {
                    return Err(Error::InvalidGraph(format!("edge {} is a loop and cannot be contracted", index + 1)));
                }
                let (keep, gone) = (e.u.min(e.v), e.u.max(e.v));
                let rename = |x: usize| match x.cmp(&gone) {
                    std::cmp::Ordering::Less => x,
                    std::cmp::Ordering::Equal => keep,
                    std::cmp::Ordering::Greater => x - 1,
                };
                let edges = rest.into_iter().map(|f| Edge { u: rename(f.u), v: rename(f.v), ..f }).collect();
                Ok(SignedGraph { vertices: self.vertices - 1, edges })
            }
            ReduceMode::ContractLoopIsolated => {
                if !e.is_loop() {
                    return Err(Error::InvalidGraph(format!("edge {} is not a loop", index + 1)));
                }
                Ok(SignedGraph { vertices: self.vertices + 1, edges: rest })
            }
        }
    }

    fn check_order(&self, order: &[usize]) -> Result<()> {
        let mut want: Vec<usize> = self.edges.iter().map(|e| e.index).collect();
        let mut got = order.to_vec();
        want.sort_unstable();
        got.sort_unstable();
        if want != got {
            return Err(Error::InvalidOrder("the order must list every edge index exactly once".into()));
        }
        Ok(())
    }

    pub fn identity_order(&self) -> Vec<usize> {
        self.edges.iter().map(|e| e.index).collect()
    }

    /// Folds the computation tree, processing edges in `order`, with `leaf(n)`
    /// at each edgeless graph on `n` vertices.
    pub fn fold<T>(&self, order: &[usize], leaf: &impl Fn(usize) -> T, op: &impl Fn(T, T) -> T) -> Result<T> {
        self.check_order(order)?;
        if self.edges.len() > MAX_EDGES {
            return Err(Error::SizeGuard(format!("{} edges exceed the limit of {MAX_EDGES}", self.edges.len())));
        }
        Ok(self.fold_from(order, leaf, op))
    }

    fn fold_from<T>(&self, order: &[usize], leaf: &impl Fn(usize) -> T, op: &impl Fn(T, T) -> T) -> T {
        let Some((&next, later)) = order.split_first() else {
            return leaf(self.vertices);
        };
        let e = *self.edge(next).expect("order checked");
        let contract_mode = if e.is_loop() { ReduceMode::ContractLoopIsolated } else { ReduceMode::Contract };
        let contracted = self.reduce(next, contract_mode).expect("edge present").fold_from(later, leaf, op);
        let deleted = self.reduce(next, ReduceMode::Delete).expect("edge present").fold_from(later, leaf, op);
        match e.sign {
            Sign::Plus => op(contracted, deleted),
            Sign::Minus => op(deleted, contracted),
        }
    }

    /// Leaf vertex counts of the computation tree, left to right.
    pub fn leaves(&self, order: &[usize]) -> Result<Vec<usize>> {
        self.fold(order, &|n| vec![n], &|mut a, b| {
            a.extend(b);
            a
        })
    }

    /// The value as a closed-form expression in the sequence symbols.
    pub fn expression(&self, order: &[usize]) -> Result<MagmaExpr> {
        self.fold(order, &MagmaExpr::leaf, &MagmaExpr::op)
    }
}

impl fmt::Display for SignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph {}", self.vertices)?;
        let mut edges = self.edges.clone();
        edges.sort_by_key(|e| e.index);
        for e in edges {
            writeln!(f, "e {} {} {}", e.u, e.v, e.sign)?;
        }
        Ok(())
    }
}

/// The value of `G` with edges processed in `order` (original indices, 0-based).
pub fn tutte_value_with_order(
    m: &FiniteMagma,
    s: &EventualSequence,
    g: &SignedGraph,
    order: &[usize],
) -> Result<usize> {
    s.check_order(m.order())?;
    if g.vertex_count() == 0 {
        return Err(Error::InvalidGraph("the graph has no vertices".into()));
    }
    g.fold(order, &|n| s.get(n), &|a, b| m.op(a, b))
}

/// The value of `G` with edges processed in their original order.
pub fn tutte_value(m: &FiniteMagma, s: &EventualSequence, g: &SignedGraph) -> Result<usize> {
    tutte_value_with_order(m, s, g, &g.identity_order())
}

/// The set `X_G` of values over edge orderings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderingValues {
    pub values: BTreeSet<usize>,
    /// Whether every ordering was tried (otherwise a random sample was).
    pub exact: bool,
    pub orders_tried: usize,
}

/// `X_G`: exact over all orderings for at most [`EXACT_ORDERING_LIMIT`] edges,
/// otherwise over `limit` orderings drawn with a seeded generator.
pub fn all_ordering_values(
    m: &FiniteMagma,
    s: &EventualSequence,
    g: &SignedGraph,
    limit: usize,
    seed: u64,
) -> Result<OrderingValues> {
    let base = g.identity_order();
    let mut values = BTreeSet::new();
    if g.edge_count() <= EXACT_ORDERING_LIMIT {
        let mut tried = 0;
        for order in itertools::Itertools::permutations(base.iter().copied(), base.len()) {
            values.insert(tutte_value_with_order(m, s, g, &order)?);
            tried += 1;
        }
        return Ok(OrderingValues { values, exact: true, orders_tried: tried });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order = base;
    values.insert(tutte_value_with_order(m, s, g, &order)?);
    for _ in 1..limit.max(1) {
        order.shuffle(&mut rng);
        values.insert(tutte_value_with_order(m, s, g, &order)?);
    }
    Ok(OrderingValues { values, exact: false, orders_tried: limit.max(1) })
}

/// The quotient of `M` by the least congruence identifying all of `X_G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientInvariant {
    pub values: OrderingValues,
    pub partition: Partition,
    pub quotient: FiniteMagma,
    /// The class (1-based, in quotient order) holding every value of `X_G`.
    pub class: usize,
}

/// `A_G`. Refuses sampled `X_G` unless `force` is set.
pub fn quotient_invariant(
    m: &FiniteMagma,
    s: &EventualSequence,
    g: &SignedGraph,
    limit: usize,
    seed: u64,
    force: bool,
) -> Result<QuotientInvariant> {
    let values = all_ordering_values(m, s, g, limit, seed)?;
    if !values.exact && !force {
        let total: num_bigint::BigUint = (1..=g.edge_count() as u64).product();
        return Err(Error::SamplingRefused { sampled: values.orders_tried, total: total.to_string() });
    }
    let xs: Vec<usize> = values.values.iter().copied().collect();
    let pairs: Vec<(usize, usize)> = xs.windows(2).map(|w| (w[0], w[1])).collect();
    let partition = congruence_closure(m, &pairs)?;
    let quotient = quotient_magma(m, &partition)?;
    let class = partition.class_index(xs[0]);
    Ok(QuotientInvariant { values, partition, quotient, class })
}

/// A random signed multigraph; loops and parallel edges occur.
pub fn random_graph(rng: &mut impl Rng, vertices: usize, edges: usize) -> SignedGraph {
    let list: Vec<(usize, usize, Sign)> = (0..edges)
        .map(|_| {
            let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
            (rng.gen_range(1..=vertices), rng.gen_range(1..=vertices), sign)
        })
        .collect();
    SignedGraph::new(vertices, &list).expect("endpoints in range")
}
