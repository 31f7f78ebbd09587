//! Pass/fail bookkeeping shared by the exhaustive checks.

use alloc::vec::Vec;

/// How many counterexamples a check keeps.
pub const MAX_COUNTEREXAMPLES: usize = 8;

/// Outcome of an exhaustive check: how many cases were examined, how many
/// failed, the worst numeric residual seen (0 for purely combinatorial
/// checks) and the first few failures.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport<T> {
    pub checked: u64,
    pub violations: u64,
    pub worst_residual: f64,
    pub counterexamples: Vec<T>,
}

impl<T> Default for CheckReport<T> {
    fn default() -> Self {
        Self {
            checked: 0,
            violations: 0,
            worst_residual: 0.0,
            counterexamples: Vec::new(),
        }
    }
}

impl<T> CheckReport<T> {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub(crate) fn pass(&mut self) {
        self.checked += 1;
    }

    pub(crate) fn fail(&mut self, item: T) {
        self.checked += 1;
        self.violations += 1;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(item);
        }
    }

    /// Records one case with a residual against `tolerance`.
    pub(crate) fn residual(&mut self, value: f64, tolerance: f64, item: impl FnOnce() -> T) {
        if value > self.worst_residual || value.is_nan() {
            self.worst_residual = value;
        }
        if value < tolerance {
            self.pass();
        } else {
            self.fail(item());
        }
    }

    pub(crate) fn record(&mut self, ok: bool, item: impl FnOnce() -> T) {
        if ok {
            self.pass();
        } else {
            self.fail(item());
        }
    }
}
