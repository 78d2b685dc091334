use std::fmt;
use std::str::FromStr;

use super::FiniteMagma;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "+1" | "1" => Ok(Sign::Plus),
            "-" | "-1" => Ok(Sign::Minus),
            _ => Err(Error::InvalidArgument(format!("sign must be + or -, got {s:?}"))),
        }
    }
}

/// Magmas on one carrier together with a sign for each member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagmaFamily {
    members: Vec<FiniteMagma>,
    signs: Vec<Sign>,
}

/// A failure of `(a *_i b) *_j (c *_i d) = (a *_j c) *_i (b *_j d)`; `i`, `j` are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyWitness {
    pub i: usize,
    pub j: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl MagmaFamily {
    pub fn new(members: Vec<FiniteMagma>, signs: Vec<Sign>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::InvalidArgument("family must have at least one member".into()));
        };
        if members.iter().any(|m| m.order() != first.order()) {
            return Err(Error::InvalidArgument("family members must share one order".into()));
        }
        if signs.len() != members.len() {
            return Err(Error::InvalidArgument(format!("{} signs for {} members", signs.len(), members.len())));
        }
        Ok(MagmaFamily { members, signs })
    }

    pub fn singleton(m: FiniteMagma) -> Self {
        MagmaFamily { members: vec![m], signs: vec![Sign::Plus] }
    }

    /// `{*, left projection, right projection}` with signs `(+, -, -)`.
    pub fn with_projections(m: FiniteMagma) -> Self {
        let n = m.order();
        MagmaFamily {
            members: vec![m, FiniteMagma::left_projection(n), FiniteMagma::right_projection(n)],
            signs: vec![Sign::Plus, Sign::Minus, Sign::Minus],
        }
    }

    pub fn order(&self) -> usize {
        self.members[0].order()
    }

    pub fn members(&self) -> &[FiniteMagma] {
        &self.members
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn with_signs(&self, signs: Vec<Sign>) -> Result<Self> {
        Self::new(self.members.clone(), signs)
    }

    pub fn compatibility_witness(&self) -> Option<FamilyWitness> {
        let n = self.order();
        for (i, mi) in self.members.iter().enumerate() {
            for (j, mj) in self.members.iter().enumerate() {
                for a in 1..=n {
                    for b in 1..=n {
                        for c in 1..=n {
                            for d in 1..=n {
                                let lhs = mj.op(mi.op(a, b), mi.op(c, d));
                                let rhs = mi.op(mj.op(a, c), mj.op(b, d));
                                if lhs != rhs {
                                    return Some(FamilyWitness { i: i + 1, j: j + 1, a, b, c, d });
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_compatible(&self) -> bool {
        self.compatibility_witness().is_none()
    }
}
