//! Node and wall-clock limits for a single certification.

use std::time::{Duration, Instant};

use grrforge_core::budget::Budget;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Limits {
    pub nodes: Option<u64>,
    pub wall: Option<Duration>,
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits::default()
    }

    /// Start the clock.
    pub fn start(self) -> Deadline {
        Deadline {
            used: 0,
            nodes: self.nodes.unwrap_or(u64::MAX),
            deadline: self.wall.map(|w| Instant::now() + w),
        }
    }
}

/// A running budget; exhausted once either limit is hit.
#[derive(Debug, Clone)]
pub struct Deadline {
    used: u64,
    nodes: u64,
    deadline: Option<Instant>,
}

impl Deadline {
    pub fn used(&self) -> u64 {
        self.used
    }
}

impl Budget for Deadline {
    fn charge(&mut self, units: u64) -> bool {
        self.used = self.used.saturating_add(units);
        if self.used > self.nodes {
            return false;
        }
        self.deadline.map_or(true, |d| Instant::now() < d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_limit() {
        let mut b = Limits {
            nodes: Some(3),
            wall: None,
        }
        .start();
        assert!(b.charge(2));
        assert!(b.charge(1));
        assert!(!b.charge(1));
        assert_eq!(b.used(), 4);
    }

    #[test]
    fn wall_limit() {
        let mut b = Limits {
            nodes: None,
            wall: Some(Duration::ZERO),
        }
        .start();
        assert!(!b.charge(1));
        assert!(Limits::unlimited().start().charge(u64::MAX - 1));
    }
}
