use serde::{Deserialize, Serialize};

use crate::polyalg::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    DiagA,
    Partition,
    ParPosX,
    PosPol,
    PosY,
}

/// Operation counters for one recovery run. An equality check is one
/// comparison of two numbers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub diag_a: u64,
    pub partition: u64,
    pub par_pos_x: u64,
    pub pos_pol: u64,
    pub pos_y: u64,
    pub coefficient_list_calls: u64,
    pub linear_solve_ops: u64,
}

impl Stats {
    pub fn equality_checks(&self) -> u64 {
        self.diag_a + self.partition + self.par_pos_x + self.pos_pol + self.pos_y
    }

    pub fn add(&mut self, phase: Phase, n: u64) {
        *self.counter(phase) += n;
    }

    /// Compares two coefficients and counts the comparison.
    pub fn same(&mut self, phase: Phase, a: &Rat, b: &Rat) -> bool {
        self.add(phase, 1);
        a == b
    }

    fn counter(&mut self, phase: Phase) -> &mut u64 {
        match phase {
            Phase::DiagA => &mut self.diag_a,
            Phase::Partition => &mut self.partition,
            Phase::ParPosX => &mut self.par_pos_x,
            Phase::PosPol => &mut self.pos_pol,
            Phase::PosY => &mut self.pos_y,
        }
    }
}

/// The equality-check bound 10(k⁷ + (2d+1)k⁵ + dk⁴ + d³k³) for the
/// positioning pipeline.
pub fn cost_bound(k: u64, d: u64) -> u64 {
    10 * (k.pow(7) + (2 * d + 1) * k.pow(5) + d * k.pow(4) + d.pow(3) * k.pow(3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat;

    #[test]
    fn counts_accumulate() {
        let mut s = Stats::default();
        assert!(s.same(Phase::DiagA, &rat::int(2), &rat::int(2)));
        assert!(!s.same(Phase::PosY, &rat::int(2), &rat::int(3)));
        s.add(Phase::Partition, 5);
        assert_eq!(s.equality_checks(), 7);
        assert_eq!(cost_bound(2, 3), 10 * (128 + 7 * 32 + 3 * 16 + 27 * 8));
    }
}
