use std::fmt;

use crate::error::{Error, Result};

/// An eventually periodic sequence `a_1, a_2, ...` of magma elements.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EventualSequence {
    preperiod: Vec<usize>,
    period: Vec<usize>,
}

impl EventualSequence {
    pub fn new(preperiod: Vec<usize>, period: Vec<usize>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidSequence("period must be nonempty".into()));
        }
        if preperiod.iter().chain(&period).any(|&v| v == 0) {
            return Err(Error::InvalidSequence("elements are numbered from 1".into()));
        }
        Ok(EventualSequence { preperiod, period })
    }

    pub fn periodic(period: Vec<usize>) -> Result<Self> {
        Self::new(Vec::new(), period)
    }

    /// `a_n = n`, truncated to a constant tail at `last`; handy for free-looking tests.
    pub fn identity_up_to(last: usize) -> Result<Self> {
        if last == 0 {
            return Err(Error::InvalidSequence("elements are numbered from 1".into()));
        }
        Self::new((1..last).collect(), vec![last])
    }

    pub fn preperiod(&self) -> &[usize] {
        &self.preperiod
    }

    pub fn period(&self) -> &[usize] {
        &self.period
    }

    /// `a_k` for `k >= 1`.
    pub fn get(&self, k: usize) -> usize {
        assert!(k >= 1, "sequence indices start at 1");
        let p = self.preperiod.len();
        if k <= p {
            self.preperiod[k - 1]
        } else {
            self.period[(k - p - 1) % self.period.len()]
        }
    }

    /// Largest value appearing anywhere in the sequence.
    pub fn max_value(&self) -> usize {
        self.preperiod.iter().chain(&self.period).copied().max().unwrap_or(0)
    }

    pub fn check_order(&self, order: usize) -> Result<()> {
        match self.preperiod.iter().chain(&self.period).find(|&&v| v > order) {
            Some(&v) => Err(Error::ElementOutOfRange { element: v, order }),
            None => Ok(()),
        }
    }

    /// The sequence `a'_k = a_{k+1}`.
    pub fn shifted(&self) -> Self {
        if self.preperiod.is_empty() {
            let mut period = self.period.clone();
            period.rotate_left(1);
            EventualSequence { preperiod: Vec::new(), period }
        } else {
            EventualSequence { preperiod: self.preperiod[1..].to_vec(), period: self.period.clone() }
        }
    }

    /// Number of starting indices that must be tried for an identity reading
    /// `a_n..=a_{n+span}` before windows start repeating.
    pub(crate) fn decisive_window(&self, span: usize) -> usize {
        self.preperiod.len() + self.period.len() + span
    }
}

impl fmt::Display for EventualSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "seq")?;
        for v in &self.preperiod {
            write!(f, " {v}")?;
        }
        write!(f, " repeat")?;
        for v in &self.period {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}
