//! Finite magmas and the identities the invariants depend on.
//!
//! Elements are the integers `1..=n`. Tables are stored row-major with the
//! row indexed by the left operand.

mod affine;
mod congruence;
mod enumerate;
mod expr;
mod family;
mod sequence;

pub use affine::{affine_magma, toyoda_decompose, ToyodaDecomposition};
pub use congruence::{congruence_closure, find_isomorphism, quotient_magma, Partition, MAX_ISOMORPHISM_ORDER};
pub use enumerate::{count_magmas, enumerate_magmas, for_each_magma, EnumerationFilter, MAX_ENUMERATION_ORDER};
pub use expr::MagmaExpr;
pub use family::{FamilyWitness, MagmaFamily, Sign};
pub use sequence::EventualSequence;

use std::fmt;

use crate::error::{Error, Result};

/// A finite magma given by its full operation table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteMagma {
    order: usize,
    table: Vec<usize>,
}

impl fmt::Debug for FiniteMagma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteMagma({}: ", self.order)?;
        for (i, row) in self.table.chunks(self.order).enumerate() {
            if i > 0 {
                write!(f, " / ")?;
            }
            for v in row {
                write!(f, "{v}")?;
            }
        }
        write!(f, ")")
    }
}

/// A quadruple `(a, b, c, d)` on which the entropic law fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EntropicWitness {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    /// `(a*b)*(c*d)`
    pub lhs: usize,
    /// `(a*c)*(b*d)`
    pub rhs: usize,
}

/// Which of the two second-Reidemeister-move conditions to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BracketVariant {
    /// `(a_{n+1}*a_n)*(a_{n+2}*a_{n+1}) = (a_{n+1}*a_{n+2})*(a_n*a_{n+1}) = a_n`
    Denominator,
    /// `(a_n*a_{n+1})*(a_{n+1}*a_n) = a_{n+1}`
    Numerator,
}

/// First index `n` at which a sequence identity fails, with the instantiated identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceViolation {
    pub n: usize,
    pub identity: String,
}

impl fmt::Display for SequenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n = {}: {}", self.n, self.identity)
    }
}

impl FiniteMagma {
    /// Builds a magma from a row-major table of 1-based values.
    pub fn new(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidMagma("order must be positive".into()));
        }
        if table.len() != order * order {
            return Err(Error::InvalidMagma(format!("table has {} entries, expected {}", table.len(), order * order)));
        }
        if let Some(&bad) = table.iter().find(|&&v| v == 0 || v > order) {
            return Err(Error::ElementOutOfRange { element: bad, order });
        }
        Ok(FiniteMagma { order, table })
    }

    pub fn from_rows(rows: &[&[usize]]) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::InvalidMagma("table is not square".into()));
        }
        Self::new(order, rows.concat())
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut table = Vec::with_capacity(order * order);
        for a in 1..=order {
            for b in 1..=order {
                table.push(f(a, b));
            }
        }
        Self::new(order, table)
    }

    /// `a * b = a`
    pub fn left_projection(order: usize) -> Self {
        Self::from_fn(order, |a, _| a).expect("projection is closed")
    }

    /// `a * b = b`
    pub fn right_projection(order: usize) -> Self {
        Self::from_fn(order, |_, b| b).expect("projection is closed")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[(a - 1) * self.order..a * self.order]
    }

    /// `a * b`. Panics if either operand is outside `1..=order`.
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        debug_assert!((1..=self.order).contains(&a) && (1..=self.order).contains(&b));
        self.table[(a - 1) * self.order + (b - 1)]
    }

    pub fn elements(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.order
    }

    pub fn check_element(&self, x: usize) -> Result<()> {
        if (1..=self.order).contains(&x) {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { element: x, order: self.order })
        }
    }

    /// Least quadruple (lexicographically) violating `(a*b)*(c*d) = (a*c)*(b*d)`.
    pub fn entropic_witness(&self) -> Option<EntropicWitness> {
        let n = self.order;
        for a in 1..=n {
            for b in 1..=n {
                let ab = self.op(a, b);
                for c in 1..=n {
                    let ac = self.op(a, c);
                    for d in 1..=n {
                        let lhs = self.op(ab, self.op(c, d));
                        let rhs = self.op(ac, self.op(b, d));
                        if lhs != rhs {
                            return Some(EntropicWitness { a, b, c, d, lhs, rhs });
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_entropic(&self) -> bool {
        self.entropic_witness().is_none()
    }

    pub fn require_entropic(&self) -> Result<()> {
        match self.entropic_witness() {
            None => Ok(()),
            Some(w) => Err(Error::NotEntropic { a: w.a, b: w.b, c: w.c, d: w.d }),
        }
    }

    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    if self.op(self.op(a, b), c) != self.op(a, self.op(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    /// Every row and every column of the table is a permutation.
    pub fn is_quasigroup(&self) -> bool {
        self.quasigroup_defect().is_none()
    }

    pub(crate) fn quasigroup_defect(&self) -> Option<String> {
        let n = self.order;
        for a in 1..=n {
            let mut seen = vec![false; n + 1];
            for b in 1..=n {
                let v = self.op(a, b);
                if seen[v] {
                    return Some(format!("row {a} is not a permutation"));
                }
                seen[v] = true;
            }
        }
        for b in 1..=n {
            let mut seen = vec![false; n + 1];
            for a in 1..=n {
                let v = self.op(a, b);
                if seen[v] {
                    return Some(format!("column {b} is not a permutation"));
                }
                seen[v] = true;
            }
        }
        None
    }

    /// First `n` where the chosen bracket condition fails.
    ///
    /// The identities read only `a_n..a_{n+2}`; past the preperiod those
    /// windows repeat with the period, so a finite range of `n` decides all.
    pub fn bracket_condition_violation(
        &self,
        seq: &EventualSequence,
        variant: BracketVariant,
    ) -> Option<SequenceViolation> {
        let op = |a, b| self.op(a, b);
        for n in 1..=seq.decisive_window(2) {
            let (x0, x1, x2) = (seq.get(n), seq.get(n + 1), seq.get(n + 2));
            match variant {
                BracketVariant::Denominator => {
                    let left = op(op(x1, x0), op(x2, x1));
                    let middle = op(op(x1, x2), op(x0, x1));
                    if left != middle || middle != x0 {
                        return Some(SequenceViolation {
                            n,
                            identity: format!(
                                "({x1}*{x0})*({x2}*{x1}) = {left}, ({x1}*{x2})*({x0}*{x1}) = {middle}, a_n = {x0}"
                            ),
                        });
                    }
                }
                BracketVariant::Numerator => {
                    let left = op(op(x0, x1), op(x1, x0));
                    if left != x1 {
                        return Some(SequenceViolation {
                            n,
                            identity: format!("({x0}*{x1})*({x1}*{x0}) = {left}, a_(n+1) = {x1}"),
                        });
                    }
                }
            }
        }
        None
    }

    pub fn check_bracket_conditions(&self, seq: &EventualSequence, variant: BracketVariant) -> bool {
        self.bracket_condition_violation(seq, variant).is_none()
    }

    /// Both R2 conditions hold: the magma with this sequence is a bracket magma.
    pub fn is_bracket_magma(&self, seq: &EventualSequence) -> bool {
        self.is_entropic()
            && self.check_bracket_conditions(seq, BracketVariant::Denominator)
            && self.check_bracket_conditions(seq, BracketVariant::Numerator)
    }

    /// First `n` where `(a_n*a_{n+1})*(a_{n+1}*a_{n+2}) = (a_{n+2}*a_{n+1})*(a_{n+1}*a_n)` fails.
    pub fn fourmove_violation(&self, seq: &EventualSequence) -> Option<SequenceViolation> {
        let op = |a, b| self.op(a, b);
        for n in 1..=seq.decisive_window(2) {
            let (x0, x1, x2) = (seq.get(n), seq.get(n + 1), seq.get(n + 2));
            let left = op(op(x0, x1), op(x1, x2));
            let right = op(op(x2, x1), op(x1, x0));
            if left != right {
                return Some(SequenceViolation {
                    n,
                    identity: format!("({x0}*{x1})*({x1}*{x2}) = {left} != ({x2}*{x1})*({x1}*{x0}) = {right}"),
                });
            }
        }
        None
    }

    pub fn check_fourmove_condition(&self, seq: &EventualSequence) -> bool {
        self.fourmove_violation(seq).is_none()
    }

    /// The opposite magma `a *' b = b * a`.
    pub fn opposite(&self) -> Self {
        Self::from_fn(self.order, |a, b| self.op(b, a)).expect("same carrier")
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn example_magma() -> FiniteMagma {
        FiniteMagma::from_rows(&[&[2, 1, 3, 4], &[1, 4, 3, 2], &[3, 3, 3, 3], &[4, 2, 3, 1]]).unwrap()
    }

    pub(crate) fn example_sequence() -> EventualSequence {
        EventualSequence::periodic(vec![1, 2, 4]).unwrap()
    }

    pub(crate) fn broken_order_two() -> FiniteMagma {
        FiniteMagma::from_rows(&[&[1, 2], &[1, 1]]).unwrap()
    }

    /// Independent oracle: evaluate each identity literally for n = 1..=50.
    fn naive_conditions(m: &FiniteMagma, s: &EventualSequence) -> (bool, bool, bool) {
        let op = |a, b| m.op(a, b);
        let a = |k: usize| s.get(k);
        let mut den = true;
        let mut num = true;
        let mut four = true;
        for n in 1..=50 {
            let l = op(op(a(n + 1), a(n)), op(a(n + 2), a(n + 1)));
            let r = op(op(a(n + 1), a(n + 2)), op(a(n), a(n + 1)));
            den &= l == r && r == a(n);
            num &= op(op(a(n), a(n + 1)), op(a(n + 1), a(n))) == a(n + 1);
            four &= op(op(a(n), a(n + 1)), op(a(n + 1), a(n + 2))) == op(op(a(n + 2), a(n + 1)), op(a(n + 1), a(n)));
        }
        (den, num, four)
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteMagma::new(0, vec![]).is_err());
        assert!(FiniteMagma::new(2, vec![1, 2, 3]).is_err());
        assert_eq!(FiniteMagma::new(2, vec![1, 2, 3, 1]), Err(Error::ElementOutOfRange { element: 3, order: 2 }));
        assert!(FiniteMagma::new(2, vec![0, 1, 1, 1]).is_err());
    }

    #[test]
    fn example_table_is_entropic() {
        assert!(example_magma().is_entropic());
    }

    #[test]
    fn projections_are_entropic() {
        for n in 1..=4 {
            assert!(FiniteMagma::left_projection(n).is_entropic());
            assert!(FiniteMagma::right_projection(n).is_entropic());
        }
    }

    #[test]
    fn broken_order_two_has_least_witness() {
        // Oracle: exhaustive scan of the 16 quadruples in lexicographic order.
        let m = broken_order_two();
        let mut first = None;
        for a in 1..=2 {
            for b in 1..=2 {
                for c in 1..=2 {
                    for d in 1..=2 {
                        let l = m.op(m.op(a, b), m.op(c, d));
                        let r = m.op(m.op(a, c), m.op(b, d));
                        if l != r && first.is_none() {
                            first = Some((a, b, c, d));
                        }
                    }
                }
            }
        }
        assert_eq!(first, Some((2, 1, 2, 2)));
        let w = m.entropic_witness().unwrap();
        assert_eq!((w.a, w.b, w.c, w.d), (2, 1, 2, 2));
        assert_ne!(w.lhs, w.rhs);
    }

    #[test]
    fn example_sequence_satisfies_both_bracket_conditions() {
        let m = example_magma();
        let s = example_sequence();
        // n = 1, denominator: (2*1)*(4*2) = 1*2 = 1 = a_1
        assert_eq!(m.op(m.op(2, 1), m.op(4, 2)), 1);
        // n = 1, numerator: (1*2)*(2*1) = 1*1 = 2 = a_2
        assert_eq!(m.op(m.op(1, 2), m.op(2, 1)), 2);
        assert!(m.check_bracket_conditions(&s, BracketVariant::Denominator));
        assert!(m.check_bracket_conditions(&s, BracketVariant::Numerator));
        assert!(m.is_bracket_magma(&s));
    }

    #[test]
    fn example_sequence_satisfies_fourmove() {
        let m = example_magma();
        assert_eq!(m.op(m.op(1, 2), m.op(2, 4)), 1);
        assert_eq!(m.op(m.op(4, 2), m.op(2, 1)), 1);
        assert!(m.check_fourmove_condition(&example_sequence()));
    }

    #[test]
    fn constant_sequences() {
        for c in 1..=3 {
            let s = EventualSequence::periodic(vec![c]).unwrap();
            let m = FiniteMagma::left_projection(3);
            assert!(m.check_bracket_conditions(&s, BracketVariant::Denominator));
            assert!(m.check_bracket_conditions(&s, BracketVariant::Numerator));
            assert!(example_magma().check_fourmove_condition(&s));
        }
    }

    #[test]
    fn broken_order_two_fourmove() {
        let m = broken_order_two();
        // With period (1,2) we have a_n = a_{n+2}, so both sides are the same expression.
        let alternating = EventualSequence::periodic(vec![1, 2]).unwrap();
        assert!(m.check_fourmove_condition(&alternating));
        // n = 1 on (1,1,2): (1*1)*(1*2) = 2 but (2*1)*(1*1) = 1.
        let s = EventualSequence::periodic(vec![1, 1, 2]).unwrap();
        let (_, _, naive_four) = naive_conditions(&m, &s);
        assert!(!naive_four);
        let v = m.fourmove_violation(&s).unwrap();
        assert_eq!(v.n, 1);
    }

    #[test]
    fn window_reduction_matches_naive_checker_on_all_order_two_magmas() {
        let seqs = [
            EventualSequence::periodic(vec![1]).unwrap(),
            EventualSequence::periodic(vec![1, 2]).unwrap(),
            EventualSequence::new(vec![2, 2, 1], vec![1, 2]).unwrap(),
            EventualSequence::new(vec![1], vec![2, 2, 1]).unwrap(),
        ];
        for code in 0..16usize {
            let table: Vec<usize> = (0..4).map(|i| ((code >> i) & 1) + 1).collect();
            let m = FiniteMagma::new(2, table).unwrap();
            for s in &seqs {
                let (den, num, four) = naive_conditions(&m, s);
                assert_eq!(m.check_bracket_conditions(s, BracketVariant::Denominator), den);
                assert_eq!(m.check_bracket_conditions(s, BracketVariant::Numerator), num);
                assert_eq!(m.check_fourmove_condition(s), four);
            }
        }
    }

    #[test]
    fn quasigroup_detection() {
        assert!(!example_magma().is_quasigroup());
        assert!(affine_magma(5, 2, 3, 0).unwrap().is_quasigroup());
    }
}
