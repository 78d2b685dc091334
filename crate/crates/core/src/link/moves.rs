//! Pairs of diagrams related by a Reidemeister move or a 4-move.
//!
//! Each gadget is spliced into a strand of the base diagram and appended after
//! the base crossings, so with file order it is resolved last.

use std::fmt;
use std::str::FromStr;

use super::{Crossing, LinkDiagram};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// Second move, closed so that the resolving tree reads `(a_{n+1}*a_n)*(a_{n+2}*a_{n+1})`.
    R2Denominator,
    /// Second move, closed so that the resolving tree reads `(a_n*a_{n+1})*(a_{n+1}*a_n)`.
    R2Numerator,
    R3,
    /// A two-crossing twist against the opposite twist; they differ by a 4-move.
    FourMove,
}

impl MoveKind {
    pub const ALL: [MoveKind; 4] = [MoveKind::R2Denominator, MoveKind::R2Numerator, MoveKind::R3, MoveKind::FourMove];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::R2Denominator => "r2-denominator",
            MoveKind::R2Numerator => "r2-numerator",
            MoveKind::R3 => "r3",
            MoveKind::FourMove => "fourmove",
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MoveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MoveKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown move {s:?}")))
    }
}

fn splice(
    base: &LinkDiagram,
    gadget: impl FnOnce(usize, usize, &mut dyn FnMut() -> usize) -> Vec<Crossing>,
) -> Result<LinkDiagram> {
    let (mut d, x, y) = base.open_strand()?;
    let mut next = d.fresh_label().max(x.max(y) + 1);
    let mut fresh = move || {
        next += 1;
        next - 1
    };
    let extra = gadget(x, y, &mut fresh);
    d.crossings.extend(extra);
    LinkDiagram::new(d.crossings, d.free_circles)
}

/// Returns `(before, after)`: two diagrams related by the move, applied on
/// the first strand of `base` (or on one of its circles if it has no crossings).
pub fn make_move_fixture(kind: MoveKind, base: &LinkDiagram) -> Result<(LinkDiagram, LinkDiagram)> {
    if base.crossing_count() == 0 && base.free_circles() == 0 {
        return Err(Error::Unsupported(format!("{kind} needs a strand to act on")));
    }
    match kind {
        MoveKind::R2Denominator => {
            let after = splice(base, |x, y, fresh| {
                let (p, q, b) = (fresh(), fresh(), fresh());
                vec![Crossing([y, p, q, x]), Crossing([q, p, b, b])]
            })?;
            Ok((base.clone(), after))
        }
        MoveKind::R2Numerator => {
            let after = splice(base, |x, y, fresh| {
                let (p, q, r) = (fresh(), fresh(), fresh());
                vec![Crossing([r, p, q, x]), Crossing([q, p, r, y])]
            })?;
            Ok((base.add_circle(), after))
        }
        MoveKind::FourMove => {
            let before = splice(base, |x, y, fresh| {
                let (r, l, b) = (fresh(), fresh(), fresh());
                vec![Crossing([y, r, l, x]), Crossing([r, b, b, l])]
            })?;
            let after = splice(base, |x, y, fresh| {
                let (r, l, b) = (fresh(), fresh(), fresh());
                vec![Crossing([x, y, r, l]), Crossing([l, r, b, b])]
            })?;
            Ok((before, after))
        }
        MoveKind::R3 => {
            // Three strands: one passing over the other two, the middle one over
            // the bottom one. The top strand is moved across the bottom crossing;
            // two of its ends are closed by short arcs w and s.
            let before = splice(base, |x, y, fresh| {
                let (w, s, m1, m2, m3) = (fresh(), fresh(), fresh(), fresh(), fresh());
                vec![Crossing([w, w, m3, m1]), Crossing([y, m1, m2, x]), Crossing([m3, s, s, m2])]
            })?;
            let after = splice(base, |x, y, fresh| {
                let (w, s, m, p, q) = (fresh(), fresh(), fresh(), fresh(), fresh());
                vec![Crossing([p, w, s, m]), Crossing([q, m, s, x]), Crossing([w, p, q, y])]
            })?;
            Ok((before, after))
        }
    }
}

/// A two-crossing diagram plus a free circle whose resolving tree, first
/// crossing first, has leaves `(3, 4, 2, 3)`.
///
/// Only the leaf list of this diagram is known, so it is rebuilt from that:
/// the mirror of the denominator gadget on one circle, next to a second circle.
pub fn example_two_crossing_diagram() -> LinkDiagram {
    let (_, after) = make_move_fixture(MoveKind::R2Denominator, &LinkDiagram::trivial(1)).expect("valid base");
    after.mirror().add_circle()
}
