//! Monotone chains of ideals and their stabilization.

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::ideal::Ideal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Ascending,
    Descending,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Ascending => write!(f, "ascending"),
            Direction::Descending => write!(f, "descending"),
        }
    }
}

/// A finite stretch of a monotone chain `I_k, I_{k+1}, ..`, with every
/// adjacent containment checked by ideal membership.
#[derive(Debug, Clone)]
pub struct ChainReport {
    pub direction: Direction,
    /// Index of `ideals[0]` (e for test ideal chains, s for HSL chains).
    pub first_index: usize,
    pub ideals: Vec<Ideal>,
    /// Least index `s` with `I_s = I_{s+1}`, confirmed by `I_{s+1} = I_{s+2}`.
    pub stabilization_index: Option<usize>,
    /// Equal steps recorded past `I_{s+1}`.
    pub overshoot: usize,
}

/// Steps that must agree past the first repetition.
pub const CONFIRMATION_STEPS: usize = 1;

impl ChainReport {
    pub fn new(direction: Direction, first_index: usize) -> Self {
        ChainReport { direction, first_index, ideals: Vec::new(), stabilization_index: None, overshoot: 0 }
    }

    pub fn last(&self) -> Option<&Ideal> {
        self.ideals.last()
    }

    pub fn is_stable(&self) -> bool {
        self.stabilization_index.is_some()
    }

    /// The stable value, once detected.
    pub fn stable_value(&self) -> Option<&Ideal> {
        self.stabilization_index.map(|s| &self.ideals[s - self.first_index])
    }

    /// Appends the next ideal after verifying the containment against the
    /// previous one, and updates stabilization. Returns whether the chain
    /// is now stable.
    pub fn push(&mut self, next: Ideal) -> Result<bool> {
        if let Some(prev) = self.ideals.last() {
            let ok = match self.direction {
                Direction::Ascending => next.contains_ideal(prev)?,
                Direction::Descending => prev.contains_ideal(&next)?,
            };
            if !ok {
                return Err(AlgebraError::ChainViolation {
                    step: self.first_index + self.ideals.len(),
                    direction: self.direction.to_string(),
                });
            }
        }
        self.ideals.push(next);
        self.update_stabilization()?;
        Ok(self.is_stable())
    }

    fn update_stabilization(&mut self) -> Result<()> {
        let n = self.ideals.len();
        // With the containment already verified, equality at each step is a
        // basis comparison.
        let mut run = 1;
        let mut start = n - 1;
        for k in (1..n).rev() {
            if self.ideals[k].equals(&self.ideals[k - 1])? {
                run += 1;
                start = k - 1;
            } else {
                break;
            }
        }
        if run >= 2 + CONFIRMATION_STEPS {
            self.stabilization_index = Some(self.first_index + start);
            self.overshoot = run - 2;
        } else {
            self.stabilization_index = None;
            self.overshoot = 0;
        }
        Ok(())
    }

    /// Re-checks every adjacent containment and the equalities implied by
    /// the recorded stabilization.
    pub fn verify(&self) -> Result<bool> {
        for w in self.ideals.windows(2) {
            let ok = match self.direction {
                Direction::Ascending => w[1].contains_ideal(&w[0])?,
                Direction::Descending => w[0].contains_ideal(&w[1])?,
            };
            if !ok {
                return Ok(false);
            }
        }
        if let Some(s) = self.stabilization_index {
            let from = s - self.first_index;
            for k in from + 1..self.ideals.len() {
                if !self.ideals[k].equals(&self.ideals[from])? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::ring::RingContext;

    #[test]
    fn detects_after_confirmation() {
        let r = RingContext::grevlex(2, &["x"]).unwrap();
        let x = |s: &str| Ideal::principal(&parse_poly(s, &r).unwrap());
        let mut c = ChainReport::new(Direction::Descending, 0);
        assert!(!c.push(Ideal::unit(&r)).unwrap());
        assert!(!c.push(x("x")).unwrap());
        assert!(!c.push(x("x")).unwrap());
        assert!(c.push(x("x")).unwrap());
        assert_eq!(c.stabilization_index, Some(1));
        assert_eq!(c.overshoot, 1);
        assert!(c.verify().unwrap());
        assert_eq!(c.stable_value().unwrap().gens()[0], parse_poly("x", &r).unwrap());
    }

    #[test]
    fn rejects_wrong_direction() {
        let r = RingContext::grevlex(2, &["x"]).unwrap();
        let mut c = ChainReport::new(Direction::Ascending, 1);
        c.push(Ideal::unit(&r)).unwrap();
        let err = c.push(Ideal::principal(&parse_poly("x", &r).unwrap())).unwrap_err();
        assert!(matches!(err, AlgebraError::ChainViolation { step: 2, .. }));
    }
}
