//! Signed plane graphs given by rotation systems, and their medial link
//! diagrams.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{random_graph, tutte_value, SignedGraph};
use crate::link::{bracket, Crossing, LinkDiagram};
use crate::magma::{EventualSequence, FiniteMagma, Sign};

/// Which endpoint of its edge a half-edge sits at: `A` is the endpoint listed first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    /// 0-based edge index.
    pub edge: usize,
    pub end: End,
}

impl fmt::Display for HalfEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = match self.end {
            End::A => 'a',
            End::B => 'b',
        };
        write!(f, "{}{end}", self.edge + 1)
    }
}

/// A signed graph with a counterclockwise cyclic order of half-edges at each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    graph: SignedGraph,
    rotation: Vec<Vec<HalfEdge>>,
    /// Position of each half-edge: `(vertex - 1, slot)`, indexed by `2 * edge + end`.
    place: Vec<(usize, usize)>,
}

fn slot(h: HalfEdge) -> usize {
    2 * h.edge + if h.end == End::A { 0 } else { 1 }
}

impl PlaneGraph {
    /// `rotation[v - 1]` lists the half-edges at vertex `v`.
    pub fn new(graph: SignedGraph, rotation: Vec<Vec<HalfEdge>>) -> Result<Self> {
        let n = graph.vertex_count();
        if rotation.len() != n {
            return Err(Error::MalformedRotation(format!("{} rotations for {n} vertices", rotation.len())));
        }
        if graph.edges().iter().enumerate().any(|(i, e)| e.index != i) {
            return Err(Error::MalformedRotation("edges must be indexed 1..m in order".into()));
        }
        let mut place = vec![None; 2 * graph.edge_count()];
        for (v, list) in rotation.iter().enumerate() {
            for (i, &h) in list.iter().enumerate() {
                let e = graph
                    .edge(h.edge)
                    .ok_or_else(|| Error::MalformedRotation(format!("half-edge {h} names a missing edge")))?;
                let home = if h.end == End::A { e.u } else { e.v };
                if home != v + 1 {
                    return Err(Error::MalformedRotation(format!(
                        "half-edge {h} belongs to vertex {home}, not {}",
                        v + 1
                    )));
                }
                if place[slot(h)].replace((v, i)).is_some() {
                    return Err(Error::MalformedRotation(format!("half-edge {h} listed twice")));
                }
            }
        }
        let place = place
            .into_iter()
            .enumerate()
            .map(|(k, p)| {
                p.ok_or_else(|| {
                    let end = if k % 2 == 0 { 'a' } else { 'b' };
                    Error::MalformedRotation(format!("half-edge {}{end} is missing", k / 2 + 1))
                })
            })
            .collect::<Result<_>>()?;
        Ok(PlaneGraph { graph, rotation, place })
    }

    /// Each vertex lists its half-edges in edge order; right for trees,
    /// cycles and other graphs where every vertex has degree at most 2.
    pub fn with_edge_order_rotation(graph: SignedGraph) -> Result<Self> {
        let mut rotation = vec![Vec::new(); graph.vertex_count()];
        for e in graph.edges() {
            rotation[e.u - 1].push(HalfEdge { edge: e.index, end: End::A });
            rotation[e.v - 1].push(HalfEdge { edge: e.index, end: End::B });
        }
        PlaneGraph::new(graph, rotation)
    }

    pub fn graph(&self) -> &SignedGraph {
        &self.graph
    }

    pub fn rotation(&self) -> &[Vec<HalfEdge>] {
        &self.rotation
    }

    fn at(&self, h: HalfEdge) -> (usize, usize) {
        self.place[slot(h)]
    }

    fn next(&self, h: HalfEdge) -> HalfEdge {
        let (v, i) = self.at(h);
        let list = &self.rotation[v];
        list[(i + 1) % list.len()]
    }

    /// Number of faces, counted by tracing boundary walks; isolated vertices
    /// count one face each.
    pub fn face_count(&self) -> usize {
        let m = self.graph.edge_count();
        let mut seen = vec![false; 2 * m];
        let mut faces = self.rotation.iter().filter(|r| r.is_empty()).count();
        for k in 0..2 * m {
            if seen[k] {
                continue;
            }
            faces += 1;
            let mut h = HalfEdge { edge: k / 2, end: if k % 2 == 0 { End::A } else { End::B } };
            while !seen[slot(h)] {
                seen[slot(h)] = true;
                let across = HalfEdge { edge: h.edge, end: if h.end == End::A { End::B } else { End::A } };
                h = self.next(across);
            }
        }
        faces
    }

    fn components(&self) -> usize {
        let n = self.graph.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut count = n;
        for e in self.graph.edges() {
            let (a, b) = (find(&mut parent, e.u - 1), find(&mut parent, e.v - 1));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    /// Whether `V - E + F = 2C`, i.e. the rotation system is a plane embedding.
    pub fn is_plane(&self) -> bool {
        let (v, e, f) = (self.graph.vertex_count(), self.graph.edge_count(), self.face_count());
        v + f == e + 2 * self.components()
    }

    /// A warning when the rotation system is not a plane embedding.
    pub fn euler_warning(&self) -> Option<String> {
        if self.is_plane() {
            return None;
        }
        Some(format!(
            "rotation system is not planar: V - E + F = {} - {} + {} but there are {} components",
            self.graph.vertex_count(),
            self.graph.edge_count(),
            self.face_count(),
            self.components()
        ))
    }
}

impl fmt::Display for PlaneGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.graph)?;
        for (v, list) in self.rotation.iter().enumerate() {
            write!(f, "rot {} :", v + 1)?;
            for h in list {
                write!(f, " {h}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The medial diagram: one crossing per edge, in edge order, with arcs named
/// by the corners of the embedding.
///
/// For a positive edge the 0-smoothing joins the corners on either side of the
/// edge across it (contraction) and the ∞-smoothing joins corners at the same
/// vertex (deletion); negative edges swap the two.
pub fn medial_link(pg: &PlaneGraph) -> Result<LinkDiagram> {
    // corner label of slot i at vertex v: the corner between slots i and i+1
    let mut base = vec![0; pg.rotation.len()];
    let mut next_label = 1;
    for (v, list) in pg.rotation.iter().enumerate() {
        base[v] = next_label;
        next_label += list.len();
    }
    let after = |h: HalfEdge| {
        let (v, i) = pg.at(h);
        base[v] + i
    };
    let before = |h: HalfEdge| {
        let (v, i) = pg.at(h);
        let d = pg.rotation[v].len();
        base[v] + (i + d - 1) % d
    };
    let crossings = pg
        .graph
        .edges()
        .iter()
        .map(|e| {
            let ha = HalfEdge { edge: e.index, end: End::A };
            let hb = HalfEdge { edge: e.index, end: End::B };
            let (lu, ru, lv, rv) = (after(ha), before(ha), before(hb), after(hb));
            match e.sign {
                Sign::Plus => Crossing([lu, lv, rv, ru]),
                Sign::Minus => Crossing([ru, lu, lv, rv]),
            }
        })
        .collect();
    let isolated = pg.rotation.iter().filter(|r| r.is_empty()).count();
    LinkDiagram::new(crossings, isolated).map(|d| d.canonical())
}

/// The first full state where the graph and its medial diagram disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateMismatch {
    /// For each edge in order: `true` if contracted.
    pub contracted: Vec<bool>,
    pub vertices: usize,
    pub circles: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub tutte: usize,
    pub bracket: usize,
    pub mismatch: Option<StateMismatch>,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.tutte == self.bracket && self.mismatch.is_none()
    }
}

/// Compares the graph value with the bracket value of the medial diagram,
/// and the residual vertex count with the circle count at every leaf.
pub fn cross_check(m: &FiniteMagma, s: &EventualSequence, pg: &PlaneGraph) -> Result<CrossCheck> {
    let d = medial_link(pg)?;
    let g = &pg.graph;
    let tutte = tutte_value(m, s, g)?;
    let bracket = bracket(m, s, &d)?;
    let vertices = g.leaves(&g.identity_order())?;
    let circles = d.resolve_leaves(&d.identity_order())?;
    let k = g.edge_count();
    let mismatch = vertices.iter().zip(&circles).position(|(a, b)| a != b).map(|leaf| {
        let contracted = g
            .edges()
            .iter()
            .enumerate()
            .map(|(depth, e)| ((leaf >> (k - 1 - depth)) & 1 == 0) == (e.sign == Sign::Plus))
            .collect();
        StateMismatch { contracted, vertices: vertices[leaf], circles: circles[leaf] }
    });
    Ok(CrossCheck { tutte, bracket, mismatch })
}

/// A random signed plane graph: random multigraphs with random rotations,
/// kept once the rotation passes the Euler check.
pub fn random_plane_graph(rng: &mut impl Rng, vertices: usize, edges: usize) -> PlaneGraph {
    loop {
        let g = random_graph(rng, vertices, edges);
        let mut rotation = vec![Vec::new(); vertices];
        for e in g.edges() {
            rotation[e.u - 1].push(HalfEdge { edge: e.index, end: End::A });
            rotation[e.v - 1].push(HalfEdge { edge: e.index, end: End::B });
        }
        for r in &mut rotation {
            r.shuffle(rng);
        }
        let pg = PlaneGraph::new(g, rotation).expect("rotation built from the edges");
        if pg.is_plane() {
            return pg;
        }
    }
}
