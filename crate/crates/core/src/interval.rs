//! Rational intervals with independently open or closed endpoints.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{serde_rational, Rational};

/// Error constructing an interval.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("interval endpoints out of order")]
    Inverted,
    #[error("degenerate interval must be closed on both ends")]
    OpenPoint,
}

/// An interval over the rationals. Invariants: lo <= hi, and a degenerate
/// interval (lo == hi) is closed on both ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "serde_rational")]
    lo: Rational,
    #[serde(with = "serde_rational")]
    hi: Rational,
    lo_open: bool,
    hi_open: bool,
}

impl Interval {
    pub fn new(
        lo: Rational,
        hi: Rational,
        lo_open: bool,
        hi_open: bool,
    ) -> Result<Self, IntervalError> {
        if lo > hi {
            return Err(IntervalError::Inverted);
        }
        if lo == hi && (lo_open || hi_open) {
            return Err(IntervalError::OpenPoint);
        }
        Ok(Self {
            lo,
            hi,
            lo_open,
            hi_open,
        })
    }

    /// [lo, hi]
    pub fn closed(lo: Rational, hi: Rational) -> Result<Self, IntervalError> {
        Self::new(lo, hi, false, false)
    }

    /// (lo, hi); requires lo < hi.
    pub fn open(lo: Rational, hi: Rational) -> Result<Self, IntervalError> {
        if lo == hi {
            return Err(IntervalError::OpenPoint);
        }
        Self::new(lo, hi, true, true)
    }

    /// The single point [x, x].
    pub fn point(x: Rational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
            lo_open: false,
            hi_open: false,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn lo_open(&self) -> bool {
        self.lo_open
    }

    pub fn hi_open(&self) -> bool {
        self.hi_open
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_open { x > &self.lo } else { x >= &self.lo };
        let below = if self.hi_open { x < &self.hi } else { x <= &self.hi };
        above && below
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / crate::rational::rat_int(2)
    }
}
