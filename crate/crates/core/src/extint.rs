//! Saturating extended integers used for objective values.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// An integer extended with `+∞` and `-∞`.
///
/// Arithmetic saturates: any finite amount added to an infinity leaves it unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtInt {
    NegInf,
    Finite(i64),
    PosInf,
}

impl ExtInt {
    pub const ZERO: ExtInt = ExtInt::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Finite(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Extended sum; when opposite infinities meet the left operand wins.
    pub fn saturating_add(self, other: ExtInt) -> ExtInt {
        match (self, other) {
            (ExtInt::Finite(a), ExtInt::Finite(b)) => ExtInt::Finite(a.saturating_add(b)),
            (ExtInt::Finite(_), inf) => inf,
            (inf, _) => inf,
        }
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Finite(v)
    }
}

impl From<u64> for ExtInt {
    fn from(v: u64) -> Self {
        ExtInt::Finite(i64::try_from(v).unwrap_or(i64::MAX))
    }
}

impl Add for ExtInt {
    type Output = ExtInt;
    fn add(self, other: ExtInt) -> ExtInt {
        self.saturating_add(other)
    }
}

impl Add<i64> for ExtInt {
    type Output = ExtInt;
    fn add(self, other: i64) -> ExtInt {
        self.saturating_add(ExtInt::Finite(other))
    }
}

impl Sub<i64> for ExtInt {
    type Output = ExtInt;
    fn sub(self, other: i64) -> ExtInt {
        self.saturating_add(ExtInt::Finite(other.saturating_neg()))
    }
}

impl Neg for ExtInt {
    type Output = ExtInt;
    fn neg(self) -> ExtInt {
        match self {
            ExtInt::NegInf => ExtInt::PosInf,
            ExtInt::PosInf => ExtInt::NegInf,
            ExtInt::Finite(v) => ExtInt::Finite(v.saturating_neg()),
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Finite(v) => write!(f, "{v}"),
            ExtInt::PosInf => write!(f, "inf"),
        }
    }
}

/// Optimization direction of a problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Min,
    Max,
}

impl Direction {
    /// Value of an infeasible instance: `+∞` when minimizing, `-∞` when maximizing.
    pub fn infeasible(self) -> ExtInt {
        match self {
            Direction::Min => ExtInt::PosInf,
            Direction::Max => ExtInt::NegInf,
        }
    }

    /// Whether `candidate` is strictly better than `incumbent`.
    pub fn improves(self, candidate: ExtInt, incumbent: ExtInt) -> bool {
        match self {
            Direction::Min => candidate.cmp(&incumbent) == Ordering::Less,
            Direction::Max => candidate.cmp(&incumbent) == Ordering::Greater,
        }
    }

    pub fn best(self, a: ExtInt, b: ExtInt) -> ExtInt {
        if self.improves(b, a) {
            b
        } else {
            a
        }
    }
}
