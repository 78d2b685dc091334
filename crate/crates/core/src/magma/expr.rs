use std::fmt;
use std::str::FromStr;

use super::{EventualSequence, FiniteMagma};
use crate::error::{Error, Result};

/// A product of sequence symbols `a_i`, e.g. `((a1*a2)*(a2*a3))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum MagmaExpr {
    Leaf(usize),
    Op(Box<MagmaExpr>, Box<MagmaExpr>),
}

impl MagmaExpr {
    pub fn leaf(i: usize) -> Self {
        assert!(i >= 1, "symbols are a_1, a_2, ...");
        MagmaExpr::Leaf(i)
    }

    pub fn op(left: MagmaExpr, right: MagmaExpr) -> Self {
        MagmaExpr::Op(Box::new(left), Box::new(right))
    }

    /// Replace every `a_i` by `a_{i+1}`.
    pub fn shift(&self) -> Self {
        self.shift_by(1)
    }

    pub fn shift_by(&self, k: usize) -> Self {
        match self {
            MagmaExpr::Leaf(i) => MagmaExpr::Leaf(i + k),
            MagmaExpr::Op(l, r) => MagmaExpr::op(l.shift_by(k), r.shift_by(k)),
        }
    }

    pub fn eval(&self, m: &FiniteMagma, s: &EventualSequence) -> usize {
        match self {
            MagmaExpr::Leaf(i) => s.get(*i),
            MagmaExpr::Op(l, r) => m.op(l.eval(m, s), r.eval(m, s)),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            MagmaExpr::Leaf(_) => 0,
            MagmaExpr::Op(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Closed form for the path with `n` edges: `L_0 = a_1`, `L_n = L_{n-1} * shift(L_{n-1})`.
    pub fn line(n: usize) -> Self {
        let mut e = MagmaExpr::leaf(1);
        for _ in 0..n {
            let shifted = e.shift();
            e = MagmaExpr::op(e, shifted);
        }
        e
    }

    /// Closed form for the `n`-cycle: `C_1 = a_2 * a_1`, `C_n = C_{n-1} * L_{n-1}`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("cycle length must be at least 1".into()));
        }
        let mut e = MagmaExpr::op(MagmaExpr::leaf(2), MagmaExpr::leaf(1));
        for k in 2..=n {
            e = MagmaExpr::op(e, MagmaExpr::line(k - 1));
        }
        Ok(e)
    }

    /// Closed form for the `n`-cycle with one edge doubled:
    /// `C'_n = (shift(C_{n-1}) * C_{n-1}) * C_n`.
    pub fn cycle_doubled(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("doubled cycle needs n >= 2".into()));
        }
        let prev = MagmaExpr::cycle(n - 1)?;
        Ok(MagmaExpr::op(MagmaExpr::op(prev.shift(), prev), MagmaExpr::cycle(n)?))
    }
}

impl fmt::Display for MagmaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MagmaExpr::Leaf(i) => write!(f, "a{i}"),
            MagmaExpr::Op(l, r) => write!(f, "({l}*{r})"),
        }
    }
}

impl FromStr for MagmaExpr {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let tokens: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let e = parse_product(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::parse(1, format!("trailing input at offset {pos}")));
        }
        Ok(e)
    }
}

// product := atom ('*' atom)*   (left associative)
fn parse_product(t: &[char], pos: &mut usize) -> Result<MagmaExpr> {
    let mut e = parse_atom(t, pos)?;
    while t.get(*pos) == Some(&'*') {
        *pos += 1;
        let rhs = parse_atom(t, pos)?;
        e = MagmaExpr::op(e, rhs);
    }
    Ok(e)
}

fn parse_atom(t: &[char], pos: &mut usize) -> Result<MagmaExpr> {
    match t.get(*pos) {
        Some('(') => {
            *pos += 1;
            let e = parse_product(t, pos)?;
            if t.get(*pos) != Some(&')') {
                return Err(Error::parse(1, format!("expected ')' at offset {pos}")));
            }
            *pos += 1;
            Ok(e)
        }
        Some('a') => {
            *pos += 1;
            if t.get(*pos) == Some(&'_') {
                *pos += 1;
            }
            let start = *pos;
            while t.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
                *pos += 1;
            }
            let digits: String = t[start..*pos].iter().collect();
            match digits.parse::<usize>() {
                Ok(i) if i >= 1 => Ok(MagmaExpr::Leaf(i)),
                _ => Err(Error::parse(1, format!("bad symbol index at offset {start}"))),
            }
        }
        _ => Err(Error::parse(1, format!("unexpected input at offset {pos}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::tests::{example_magma, example_sequence};

    fn p(s: &str) -> MagmaExpr {
        s.parse().unwrap()
    }

    #[test]
    fn shift_moves_every_index() {
        assert_eq!(MagmaExpr::leaf(1).shift(), MagmaExpr::leaf(2));
        assert_eq!(p("a1*a2").shift(), p("a2*a3"));
        assert_eq!(MagmaExpr::cycle(1).unwrap().shift(), p("a3*a2"));
    }

    #[test]
    fn closed_forms_match_the_displayed_expansions() {
        assert_eq!(MagmaExpr::line(1), p("a1*a2"));
        assert_eq!(MagmaExpr::line(2), p("(a1*a2)*(a2*a3)"));
        assert_eq!(MagmaExpr::cycle(2).unwrap(), p("(a2*a1)*(a1*a2)"));
        assert_eq!(MagmaExpr::cycle(3).unwrap(), p("((a2*a1)*(a1*a2))*((a1*a2)*(a2*a3))"));
        assert_eq!(MagmaExpr::cycle_doubled(2).unwrap(), p("((a3*a2)*(a2*a1))*((a2*a1)*(a1*a2))"));
    }

    #[test]
    fn evaluation_in_the_example_magma() {
        let (m, s) = (example_magma(), example_sequence());
        assert_eq!(p("a1*a2").eval(&m, &s), 1);
        assert_eq!(MagmaExpr::cycle(2).unwrap().eval(&m, &s), 2);
        assert_eq!(MagmaExpr::leaf(3).eval(&m, &s), 4);
    }

    #[test]
    fn display_and_parse_round_trip() {
        for e in [MagmaExpr::line(3), MagmaExpr::cycle_doubled(3).unwrap()] {
            assert_eq!(e.to_string().parse::<MagmaExpr>().unwrap(), e);
        }
        assert_eq!(p("a_1 * a_2 * a_3"), p("(a1*a2)*a3"));
        assert!("a0".parse::<MagmaExpr>().is_err());
        assert!("(a1*a2".parse::<MagmaExpr>().is_err());
    }
}
