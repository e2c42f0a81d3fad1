//! Work budgets for long-running searches.
//!
//! The core has no clock; callers that need a wall-clock limit implement
//! [`Budget`] themselves (the `grrforge` crate does).

/// Something that can be charged for work and may refuse further work.
pub trait Budget {
    /// Charge `units` of work. Returns `false` once the budget is exhausted.
    fn charge(&mut self, units: u64) -> bool;
}

/// Counts work units against a fixed limit.
#[derive(Debug, Clone)]
pub struct NodeBudget {
    limit: u64,
    used: u64,
}

impl NodeBudget {
    pub fn new(limit: u64) -> Self {
        NodeBudget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        NodeBudget::new(u64::MAX)
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

impl Budget for NodeBudget {
    fn charge(&mut self, units: u64) -> bool {
        self.used = self.used.saturating_add(units);
        self.used <= self.limit
    }
}

impl<B: Budget + ?Sized> Budget for &mut B {
    fn charge(&mut self, units: u64) -> bool {
        (**self).charge(units)
    }
}
