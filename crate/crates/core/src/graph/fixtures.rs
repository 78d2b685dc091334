use std::fmt;
use std::str::FromStr;

use super::SignedGraph;
use crate::error::{Error, Result};
use crate::magma::Sign;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphFixture {
    /// `L_n`: a path with `n` positive edges.
    Line,
    /// `C_n`: an `n`-cycle; `C_1` is a loop and `C_2` a doubled edge.
    Cycle,
    /// `C'_n`: `C_n` with one edge doubled. The doubled pair comes first.
    CycleDoubled,
    /// A path whose edges carry the given signs, in order.
    Path(Vec<Sign>),
    /// Two parallel edges followed by a pendant edge, all with one sign.
    DoubleThenEdge(Sign),
}

impl FromStr for GraphFixture {
    type Err = Error;

    /// `line`, `cycle`, `cycle-doubled`, `path:++-`, `double-pos`, `double-neg`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "line" => Ok(GraphFixture::Line),
            "cycle" => Ok(GraphFixture::Cycle),
            "cycle-doubled" => Ok(GraphFixture::CycleDoubled),
            "double-pos" => Ok(GraphFixture::DoubleThenEdge(Sign::Plus)),
            "double-neg" => Ok(GraphFixture::DoubleThenEdge(Sign::Minus)),
            _ => match s.strip_prefix("path:") {
                Some(signs) if !signs.is_empty() => {
                    signs.chars().map(|c| c.to_string().parse()).collect::<Result<Vec<Sign>>>().map(GraphFixture::Path)
                }
                _ => Err(Error::InvalidArgument(format!("unknown graph fixture {s:?}"))),
            },
        }
    }
}

impl fmt::Display for GraphFixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFixture::Line => f.write_str("line"),
            GraphFixture::Cycle => f.write_str("cycle"),
            GraphFixture::CycleDoubled => f.write_str("cycle-doubled"),
            GraphFixture::Path(signs) => {
                f.write_str("path:")?;
                signs.iter().try_for_each(|s| write!(f, "{s}"))
            }
            GraphFixture::DoubleThenEdge(Sign::Plus) => f.write_str("double-pos"),
            GraphFixture::DoubleThenEdge(Sign::Minus) => f.write_str("double-neg"),
        }
    }
}

/// Builds the named graph. `n` is the size parameter of `line`, `cycle` and
/// `cycle-doubled` and is ignored by the others.
pub fn make_graph_fixture(kind: &GraphFixture, n: usize) -> Result<SignedGraph> {
    use Sign::Plus;
    match kind {
        GraphFixture::Line => {
            let edges: Vec<_> = (1..=n).map(|i| (i, i + 1, Plus)).collect();
            SignedGraph::new(n + 1, &edges)
        }
        GraphFixture::Cycle => {
            if n == 0 {
                return Err(Error::InvalidArgument("a cycle needs at least one edge".into()));
            }
            let edges: Vec<_> = (1..=n).map(|i| (i, i % n + 1, Plus)).collect();
            SignedGraph::new(n, &edges)
        }
        GraphFixture::CycleDoubled => {
            if n < 2 {
                return Err(Error::InvalidArgument("a doubled cycle needs n >= 2".into()));
            }
            let mut edges = vec![(1, 2, Plus), (1, 2, Plus)];
            edges.extend((2..=n).map(|i| (i, i % n + 1, Plus)));
            SignedGraph::new(n, &edges)
        }
        GraphFixture::Path(signs) => {
            let edges: Vec<_> = signs.iter().enumerate().map(|(i, &s)| (i + 1, i + 2, s)).collect();
            SignedGraph::new(signs.len() + 1, &edges)
        }
        GraphFixture::DoubleThenEdge(sign) => SignedGraph::new(3, &[(1, 2, *sign), (1, 2, *sign), (2, 3, *sign)]),
    }
}
