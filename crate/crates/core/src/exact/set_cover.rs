use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::Weight;

/// Limit on the family size for [`solve_set_cover_exact`].
pub const SET_COVER_EXACT_MAX_SETS: usize = 22;

/// Weighted set cover over the universe `0..universe`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCoverInstance {
    pub universe: usize,
    pub sets: Vec<Vec<usize>>,
    pub weights: Vec<Weight>,
}

impl SetCoverInstance {
    pub fn new(universe: usize, sets: Vec<Vec<usize>>, weights: Vec<Weight>) -> Result<Self> {
        if sets.len() != weights.len() {
            return Err(Error::invalid(format!(
                "{} sets but {} weights",
                sets.len(),
                weights.len()
            )));
        }
        let mut sets = sets;
        for s in &mut sets {
            s.sort_unstable();
            s.dedup();
            if let Some(&e) = s.iter().find(|&&e| e >= universe) {
                return Err(Error::invalid(format!(
                    "element {e} outside universe of size {universe}"
                )));
            }
        }
        Ok(SetCoverInstance {
            universe,
            sets,
            weights,
        })
    }

    /// Unit weight on every set.
    pub fn unweighted(universe: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let k = sets.len();
        SetCoverInstance::new(universe, sets, vec![Weight::ONE; k])
    }

    /// First element no finite-weight set contains.
    pub fn uncoverable(&self) -> Option<usize> {
        let mut covered = vec![false; self.universe];
        for (s, w) in self.sets.iter().zip(&self.weights) {
            if w.is_finite() {
                for &e in s {
                    covered[e] = true;
                }
            }
        }
        covered.iter().position(|&c| !c)
    }

    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        let mut covered = vec![false; self.universe];
        for &i in chosen {
            for &e in &self.sets[i] {
                covered[e] = true;
            }
        }
        covered.iter().all(|&c| c)
    }

    pub fn weight_of(&self, chosen: &[usize]) -> Weight {
        chosen.iter().map(|&i| self.weights[i]).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCoverSolution {
    pub chosen: Vec<usize>,
    pub weight: Weight,
}

struct Search<'a> {
    sets: &'a [u128],
    weights: &'a [i64],
    covering: Vec<Vec<usize>>,
    full: u128,
    best: i64,
    best_sets: Option<Vec<usize>>,
    stack: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, covered: u128, cost: i64) {
        if covered == self.full {
            if cost < self.best {
                self.best = cost;
                let mut s = self.stack.clone();
                s.sort_unstable();
                self.best_sets = Some(s);
            }
            return;
        }
        // Every uncovered element still needs one of its sets.
        let mut bound = 0;
        let mut pivot = None;
        for e in super::bits(self.full & !covered) {
            let cheapest = self.covering[e]
                .iter()
                .map(|&i| self.weights[i])
                .min()
                .unwrap_or(i64::MAX);
            bound = bound.max(cheapest);
            let branches = self.covering[e].len();
            if pivot.is_none_or(|(_, b)| branches < b) {
                pivot = Some((e, branches));
            }
        }
        if cost.saturating_add(bound) >= self.best {
            return;
        }
        let (e, _) = pivot.expect("uncovered element exists");
        for i in self.covering[e].clone() {
            self.stack.push(i);
            self.run(covered | self.sets[i], cost + self.weights[i]);
            self.stack.pop();
        }
    }
}

/// Minimum-weight cover by branch and bound on the least-covered element.
pub fn solve_set_cover_exact(inst: &SetCoverInstance) -> Result<SetCoverSolution> {
    if inst.sets.len() > SET_COVER_EXACT_MAX_SETS {
        return Err(Error::TooLarge(format!(
            "{} sets (limit {SET_COVER_EXACT_MAX_SETS})",
            inst.sets.len()
        )));
    }
    if inst.universe > 128 {
        return Err(Error::TooLarge(format!(
            "universe of {} elements (limit 128)",
            inst.universe
        )));
    }
    if let Some(e) = inst.uncoverable() {
        return Err(Error::infeasible(format!(
            "element {e} is in no finite-weight set"
        )));
    }
    let sets: Vec<u128> = inst
        .sets
        .iter()
        .map(|s| s.iter().fold(0u128, |m, &e| m | 1 << e))
        .collect();
    let weights: Vec<i64> = inst
        .weights
        .iter()
        .map(|w| w.micros().unwrap_or(i64::MAX / 4))
        .collect();
    let mut covering = vec![Vec::new(); inst.universe];
    for (i, s) in inst.sets.iter().enumerate() {
        if inst.weights[i].is_finite() {
            for &e in s {
                covering[e].push(i);
            }
        }
    }
    for list in &mut covering {
        list.sort_by_key(|&i| (weights[i], i));
    }
    let full = if inst.universe == 128 {
        u128::MAX
    } else {
        (1u128 << inst.universe) - 1
    };
    let mut search = Search {
        sets: &sets,
        weights: &weights,
        covering,
        full,
        best: i64::MAX,
        best_sets: None,
        stack: Vec::new(),
    };
    search.run(0, 0);
    let chosen = search.best_sets.expect("a cover exists");
    let weight = inst.weight_of(&chosen);
    Ok(SetCoverSolution { chosen, weight })
}
