//! Benefit schedules and the two distance-based utility functions.
//!
//! A schedule pairs the nonincreasing benefit table `b(1..)` with the per-edge
//! cost `c`. Benefit of an unreachable pair is zero; that rule lives here, not
//! in the distance code. All arithmetic is exact rational because the cost
//! regime boundaries (`c = b(1)`, `c = b(1) - b(2)`, the decision threshold)
//! are equality-sensitive.

use crate::error::Error;
use crate::graph::{Distance, Graph};
use crate::rational::{rat, Rational};

/// Position of the edge cost relative to the benefit table.
///
/// Boundary costs land in `Medium`: the medium range is the closed interval
/// `b(1) - b(2) <= c <= b(1)`.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum CostClass {
    /// `c < b(1) - b(2)`: copying the reference is uniquely optimal.
    Low,
    /// `b(1) - b(2) <= c <= b(1)`.
    Medium,
    /// `c > b(1)`: building any single edge for its own sake loses money.
    High,
}

/// Nonincreasing benefit table plus a positive per-edge cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenefitSchedule {
    values: Vec<Rational>,
    cost: Rational,
}

impl BenefitSchedule {
    pub fn new(values: Vec<Rational>, cost: Rational) -> Result<Self, Error> {
        for (i, v) in values.iter().enumerate() {
            if *v < rat(0) {
                return Err(Error::NegativeBenefit { index: i + 1 });
            }
            if i > 0 && values[i - 1] < *v {
                return Err(Error::BenefitNotNonincreasing { index: i + 1 });
            }
        }
        if cost <= rat(0) {
            return Err(Error::NonPositiveCost);
        }
        Ok(BenefitSchedule { values, cost })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn cost(&self) -> Rational {
        self.cost
    }

    /// `b(k)` for `k >= 1`; an out-of-table distance is an error, not zero.
    pub fn b(&self, k: usize) -> Result<Rational, Error> {
        if k == 0 {
            return Err(Error::NonPositiveParameter { name: "distance" });
        }
        self.values
            .get(k - 1)
            .copied()
            .ok_or(Error::ScheduleTooShort {
                covered: self.values.len(),
                needed: k,
            })
    }

    /// Benefit of a pair at the given distance; unreachable pairs earn zero.
    pub fn benefit(&self, d: Distance) -> Result<Rational, Error> {
        match d {
            Distance::Hops(k) => self.b(k),
            Distance::Unreachable => Ok(rat(0)),
        }
    }

    /// The table must reach `n - 1`, the largest finite distance on `n` nodes.
    pub fn ensure_covers(&self, n: usize) -> Result<(), Error> {
        let needed = n.saturating_sub(1);
        if self.values.len() < needed {
            return Err(Error::ScheduleTooShort {
                covered: self.values.len(),
                needed,
            });
        }
        Ok(())
    }

    pub fn classify(&self) -> Result<CostClass, Error> {
        let b1 = self.b(1)?;
        let b2 = self.b(2)?;
        Ok(if b1 - b2 > self.cost {
            CostClass::Low
        } else if self.cost > b1 {
            CostClass::High
        } else {
            CostClass::Medium
        })
    }

    /// Total benefit over unordered distinct pairs minus the edge bill.
    ///
    /// Pair counting is unordered throughout this crate; the complete-reference
    /// thresholds are only consistent with that reading.
    pub fn single_layer_utility(&self, g: &Graph) -> Result<Rational, Error> {
        self.ensure_covers(g.n())?;
        let dist = g.all_pairs_distances();
        let mut total = rat(0);
        for i in 0..g.n() {
            for j in i + 1..g.n() {
                total += self.benefit(dist.get(i, j))?;
            }
        }
        Ok(total - self.cost * rat(g.edge_count() as i64))
    }

    /// Benefit summed over the reference's edges only, at distances measured
    /// in `g`, minus the cost of `g`'s edges. Generalizes
    /// [`Self::single_layer_utility`], which is the complete-reference case.
    pub fn conditional_utility(&self, g: &Graph, reference: &Graph) -> Result<Rational, Error> {
        if g.n() != reference.n() {
            return Err(Error::NodeCountMismatch {
                left: g.n(),
                right: reference.n(),
            });
        }
        self.ensure_covers(g.n())?;
        let mut total = rat(0);
        for src in 0..g.n() {
            let targets: Vec<usize> = reference
                .neighbors(src)
                .iter()
                .filter(|&t| t > src)
                .collect();
            if targets.is_empty() {
                continue;
            }
            let row = g.bfs_row(src);
            for dst in targets {
                let d = if row[dst] == u8::MAX {
                    Distance::Unreachable
                } else {
                    Distance::Hops(row[dst] as usize)
                };
                total += self.benefit(d)?;
            }
        }
        Ok(total - self.cost * rat(g.edge_count() as i64))
    }

    /// Certified lower and upper bounds on the optimal conditional utility
    /// against a connected reference, valid in the medium cost regime.
    ///
    /// Lower: the copy response. Upper: a spanning tree that 2-spans the
    /// reference would achieve it, whether or not one exists.
    pub fn br_utility_bounds(&self, reference: &Graph) -> Result<(Rational, Rational), Error> {
        if !reference.is_connected() {
            return Err(Error::DisconnectedReference);
        }
        let b1 = self.b(1)?;
        let b2 = self.b(2)?;
        if !(b1 - b2 <= self.cost && self.cost <= b1) {
            return Err(Error::CostRegime);
        }
        let n = rat(reference.n() as i64);
        let e1 = rat(reference.edge_count() as i64);
        let lower = e1 * (b1 - self.cost);
        let upper = (n - rat(1)) * (b1 - self.cost) + (e1 - n + rat(1)) * b2;
        Ok((lower, upper))
    }

    /// Smallest clique size at which a high-cost schedule prefers a hub over
    /// staying out: the least `t <= n` with `c < b(1) + (t-2)/2 * b(2)`, or
    /// `None` when no such `t` exists (the empty response then dominates at
    /// every size up to `n`). Always at least 3 for a high-cost schedule.
    pub fn star_break_even_index(&self, n: usize) -> Result<Option<usize>, Error> {
        if self.classify()? != CostClass::High {
            return Err(Error::NotHighCost);
        }
        let b1 = self.b(1)?;
        let b2 = self.b(2)?;
        for t in 1..=n {
            if self.cost < b1 + Rational::new(t as i128 - 2, 2) * b2 {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }
}
