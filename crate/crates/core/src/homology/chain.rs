use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A formal integer combination of `2^n`-tuples (an element of `C_n`).
///
/// Zero coefficients are dropped and terms are kept in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleChain {
    level: usize,
    terms: BTreeMap<Vec<usize>, BigInt>,
}

pub(crate) fn tuple_len(level: usize) -> Result<usize> {
    if level > 20 {
        return Err(Error::InvalidLevel { level, reason: "tuples of length 2^level are too long".into() });
    }
    Ok(1 << level)
}

impl TupleChain {
    pub fn zero(level: usize) -> Self {
        TupleChain { level, terms: BTreeMap::new() }
    }

    /// The chain `1 * tuple`; the length must be a power of two.
    pub fn from_tuple(tuple: &[usize]) -> Result<Self> {
        let len = tuple.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::InvalidArgument(format!("tuple length {len} is not a power of two")));
        }
        if tuple.contains(&0) {
            return Err(Error::InvalidArgument("tuple entries are 1-based".into()));
        }
        let mut c = TupleChain::zero(len.trailing_zeros() as usize);
        c.add_term(tuple.to_vec(), BigInt::one())?;
        Ok(c)
    }

    pub fn from_terms(level: usize, terms: impl IntoIterator<Item = (Vec<usize>, i64)>) -> Result<Self> {
        let mut c = TupleChain::zero(level);
        for (t, k) in terms {
            c.add_term(t, BigInt::from(k))?;
        }
        Ok(c)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &BigInt)> {
        self.terms.iter().map(|(t, k)| (t.as_slice(), k))
    }

    /// Number of tuples with a nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, tuple: &[usize]) -> BigInt {
        self.terms.get(tuple).cloned().unwrap_or_default()
    }

    /// Largest entry of any tuple, or 0 for the zero chain.
    pub fn max_entry(&self) -> usize {
        self.terms.keys().flatten().copied().max().unwrap_or(0)
    }

    pub fn add_term(&mut self, tuple: Vec<usize>, k: BigInt) -> Result<()> {
        let len = tuple_len(self.level)?;
        if tuple.len() != len {
            return Err(Error::LevelMismatch { expected: self.level, found: tuple.len().trailing_zeros() as usize });
        }
        self.add_unchecked(tuple, &k);
        Ok(())
    }

    pub(crate) fn add_unchecked(&mut self, tuple: Vec<usize>, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        let e = self.terms.entry(tuple.clone()).or_default();
        *e += k;
        if e.is_zero() {
            self.terms.remove(&tuple);
        }
    }

    pub fn add(&self, other: &TupleChain) -> Result<TupleChain> {
        if other.level != self.level {
            return Err(Error::LevelMismatch { expected: self.level, found: other.level });
        }
        let mut out = self.clone();
        for (t, k) in &other.terms {
            out.add_unchecked(t.clone(), k);
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> TupleChain {
        if k.is_zero() {
            return TupleChain::zero(self.level);
        }
        TupleChain { level: self.level, terms: self.terms.iter().map(|(t, v)| (t.clone(), v * k)).collect() }
    }

    pub fn neg(&self) -> TupleChain {
        self.scale(&-BigInt::one())
    }

    /// Applies a map on basis tuples and extends it linearly.
    pub fn map_terms(&self, level: usize, mut f: impl FnMut(&[usize], &BigInt, &mut TupleChain)) -> TupleChain {
        let mut out = TupleChain::zero(level);
        for (t, k) in &self.terms {
            f(t, k, &mut out);
        }
        out
    }
}

impl fmt::Display for TupleChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (t, k)) in self.terms.iter().enumerate() {
            let body: Vec<String> = t.iter().map(usize::to_string).collect();
            let body = body.join(",");
            match (i, k.is_negative()) {
                (0, _) => write!(f, "{k} ({body})")?,
                (_, false) => write!(f, " + {k} ({body})")?,
                (_, true) => write!(f, " - {} ({body})", k.abs())?,
            }
        }
        Ok(())
    }
}

impl FromStr for TupleChain {
    type Err = Error;

    /// Terms `<coeff> (t1,...,t2^n)` joined by `+`/`-` or whitespace; a missing
    /// coefficient means 1. `0` is the zero chain, at level 0.
    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text == "0" {
            return Ok(TupleChain::zero(0));
        }
        let bad = |msg: String| Error::parse(1, msg);
        let mut chain: Option<TupleChain> = None;
        let mut rest = text.as_str();
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| bad(format!("expected a tuple in {rest:?}")))?;
            let close = rest.find(')').ok_or_else(|| bad("unclosed tuple".into()))?;
            if close < open {
                return Err(bad("unbalanced parentheses".into()));
            }
            let coeff = match &rest[..open] {
                "" | "+" => BigInt::one(),
                "-" => -BigInt::one(),
                c => c
                    .strip_prefix('+')
                    .unwrap_or(c)
                    .parse::<BigInt>()
                    .map_err(|_| bad(format!("bad coefficient {c:?}")))?,
            };
            let tuple = rest[open + 1..close]
                .split(',')
                .map(|x| x.parse::<usize>().map_err(|_| bad(format!("bad tuple entry {x:?}"))))
                .collect::<Result<Vec<usize>>>()?;
            let mut term = TupleChain::from_tuple(&tuple)?;
            term = term.scale(&coeff);
            chain = Some(match chain {
                None => term,
                Some(c) => c.add(&term)?,
            });
            rest = &rest[close + 1..];
        }
        chain.ok_or_else(|| bad("empty chain".into()))
    }
}
