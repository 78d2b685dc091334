use std::ops::ControlFlow;

use super::{BracketVariant, EventualSequence, FiniteMagma};
use crate::error::{Error, Result};

pub const MAX_ENUMERATION_ORDER: usize = 4;

/// Which entropic magmas to keep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumerationFilter {
    Entropic,
    /// Entropic and satisfying the denominator-closure condition for the sequence.
    Denominator(EventualSequence),
    /// Entropic and satisfying the numerator-closure condition for the sequence.
    Numerator(EventualSequence),
    /// Entropic and satisfying both conditions.
    Bracket(EventualSequence),
}

impl EnumerationFilter {
    fn accepts(&self, m: &FiniteMagma) -> bool {
        match self {
            EnumerationFilter::Entropic => true,
            EnumerationFilter::Denominator(s) => m.check_bracket_conditions(s, BracketVariant::Denominator),
            EnumerationFilter::Numerator(s) => m.check_bracket_conditions(s, BracketVariant::Numerator),
            EnumerationFilter::Bracket(s) => {
                m.check_bracket_conditions(s, BracketVariant::Denominator)
                    && m.check_bracket_conditions(s, BracketVariant::Numerator)
            }
        }
    }

    fn sequence(&self) -> Option<&EventualSequence> {
        match self {
            EnumerationFilter::Entropic => None,
            EnumerationFilter::Denominator(s) | EnumerationFilter::Numerator(s) | EnumerationFilter::Bracket(s) => {
                Some(s)
            }
        }
    }
}

/// Streams every entropic table of the given order passing `filter`, in
/// lexicographic order of the row-major table. Stop early by returning `Break`.
pub fn for_each_magma(
    order: usize,
    filter: &EnumerationFilter,
    mut visit: impl FnMut(&FiniteMagma) -> ControlFlow<()>,
) -> Result<()> {
    if order == 0 {
        return Err(Error::InvalidArgument("order must be positive".into()));
    }
    if order > MAX_ENUMERATION_ORDER {
        return Err(Error::OrderBoundExceeded { requested: order, limit: MAX_ENUMERATION_ORDER });
    }
    if let Some(s) = filter.sequence() {
        s.check_order(order)?;
    }
    let mut search = Search { n: order, table: vec![0; order * order] };
    let _ = search.fill(0, &mut |table| {
        let m = FiniteMagma::new(order, table.to_vec()).expect("complete table");
        if filter.accepts(&m) {
            visit(&m)
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(())
}

pub fn enumerate_magmas(order: usize, filter: &EnumerationFilter) -> Result<Vec<FiniteMagma>> {
    let mut out = Vec::new();
    for_each_magma(order, filter, |m| {
        out.push(m.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn count_magmas(order: usize, filter: &EnumerationFilter) -> Result<usize> {
    let mut count = 0;
    for_each_magma(order, filter, |_| {
        count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(count)
}

struct Search {
    n: usize,
    /// 0 marks an unassigned cell.
    table: Vec<usize>,
}

impl Search {
    fn get(&self, a: usize, b: usize) -> usize {
        self.table[(a - 1) * self.n + (b - 1)]
    }

    /// Every fully evaluable quadruple satisfies the law. The table was
    /// consistent before the last assignment, so only new failures can show up.
    fn consistent(&self) -> bool {
        let n = self.n;
        for a in 1..=n {
            for b in 1..=n {
                let ab = self.get(a, b);
                if ab == 0 {
                    continue;
                }
                for c in 1..=n {
                    let ac = self.get(a, c);
                    if ac == 0 {
                        continue;
                    }
                    for d in 1..=n {
                        let (cd, bd) = (self.get(c, d), self.get(b, d));
                        if cd == 0 || bd == 0 {
                            continue;
                        }
                        let (lhs, rhs) = (self.get(ab, cd), self.get(ac, bd));
                        if lhs != 0 && rhs != 0 && lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn fill(&mut self, cell: usize, visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>) -> ControlFlow<()> {
        if cell == self.table.len() {
            return visit(&self.table);
        }
        for v in 1..=self.n {
            self.table[cell] = v;
            if self.consistent() {
                self.fill(cell + 1, visit)?;
            }
        }
        self.table[cell] = 0;
        ControlFlow::Continue(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::tests::{example_magma, example_sequence};

    /// Oracle: every table of the order, filtered by the plain checker.
    fn brute_force(order: usize) -> Vec<FiniteMagma> {
        let cells = order * order;
        let total = order.pow(cells as u32);
        (0..total)
            .map(|mut code| {
                let mut t = vec![0; cells];
                for slot in t.iter_mut().rev() {
                    *slot = code % order + 1;
                    code /= order;
                }
                FiniteMagma::new(order, t).unwrap()
            })
            .filter(|m| m.is_entropic())
            .collect()
    }

    #[test]
    fn order_one_has_one_magma() {
        let all = enumerate_magmas(1, &EnumerationFilter::Entropic).unwrap();
        assert_eq!(all, vec![FiniteMagma::left_projection(1)]);
    }

    #[test]
    fn orders_two_and_three_match_brute_force() {
        for n in 2..=3 {
            assert_eq!(enumerate_magmas(n, &EnumerationFilter::Entropic).unwrap(), brute_force(n));
        }
    }

    #[test]
    fn order_bound_is_enforced() {
        assert_eq!(
            count_magmas(5, &EnumerationFilter::Entropic),
            Err(Error::OrderBoundExceeded { requested: 5, limit: 4 })
        );
    }

    #[test]
    fn sequence_filters_are_subsets() {
        let s = EventualSequence::periodic(vec![1, 2]).unwrap();
        let all = enumerate_magmas(2, &EnumerationFilter::Entropic).unwrap();
        let both = enumerate_magmas(2, &EnumerationFilter::Bracket(s.clone())).unwrap();
        let expected: Vec<_> = all.iter().filter(|m| m.is_bracket_magma(&s)).cloned().collect();
        assert_eq!(both, expected);
    }

    #[test]
    fn order_four_bracket_search_contains_the_example() {
        let mut found = false;
        for_each_magma(4, &EnumerationFilter::Bracket(example_sequence()), |m| {
            if *m == example_magma() {
                found = true;
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .unwrap();
        assert!(found);
    }
}
