use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{solve_set_cover_exact, SetCoverInstance, SetCoverSolution};

/// `Auto` uses the exact backend up to this many graph vertices.
pub const AUTO_EXACT_MAX_VERTICES: usize = 18;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetCoverBackend {
    Exact,
    Greedy,
    #[default]
    Auto,
}

impl SetCoverBackend {
    /// Concrete backend for a graph on `n` vertices.
    pub fn resolve(self, n: usize) -> SetCoverBackend {
        match self {
            SetCoverBackend::Auto if n <= AUTO_EXACT_MAX_VERTICES => SetCoverBackend::Exact,
            SetCoverBackend::Auto => SetCoverBackend::Greedy,
            b => b,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SetCoverBackend::Exact => "exact",
            SetCoverBackend::Greedy => "greedy",
            SetCoverBackend::Auto => "auto",
        }
    }
}

impl FromStr for SetCoverBackend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(SetCoverBackend::Exact),
            "greedy" => Ok(SetCoverBackend::Greedy),
            "auto" => Ok(SetCoverBackend::Auto),
            _ => Err(Error::Parse(format!("unknown set-cover backend {s:?}"))),
        }
    }
}

/// Runs the backend; `Auto` must be resolved by the caller.
pub fn solve_set_cover(
    inst: &SetCoverInstance,
    backend: SetCoverBackend,
) -> Result<SetCoverSolution> {
    match backend {
        SetCoverBackend::Exact => solve_set_cover_exact(inst),
        SetCoverBackend::Greedy | SetCoverBackend::Auto => solve_set_cover_greedy(inst),
    }
}

/// Weighted greedy: repeatedly takes the set of least weight per newly
/// covered element, lowest index on ties. Infinite-weight sets are unusable.
pub fn solve_set_cover_greedy(inst: &SetCoverInstance) -> Result<SetCoverSolution> {
    let mut covered = vec![false; inst.universe];
    let mut left = inst.universe;
    let mut chosen = Vec::new();
    while left > 0 {
        let mut best: Option<(usize, i64, usize)> = None;
        for (i, set) in inst.sets.iter().enumerate() {
            let Some(w) = inst.weights[i].micros() else {
                continue;
            };
            let gain = set.iter().filter(|&&e| !covered[e]).count();
            if gain == 0 {
                continue;
            }
            // w / gain < bw / bgain, compared without division.
            let better = best.is_none_or(|(_, bw, bg)| {
                (w as i128) * (bg as i128) < (bw as i128) * (gain as i128)
            });
            if better {
                best = Some((i, w, gain));
            }
        }
        let (i, _, _) =
            best.ok_or_else(|| Error::infeasible("some element lies in no usable set"))?;
        for &e in &inst.sets[i] {
            if !covered[e] {
                covered[e] = true;
                left -= 1;
            }
        }
        chosen.push(i);
    }
    chosen.sort_unstable();
    let weight = inst.weight_of(&chosen);
    Ok(SetCoverSolution { chosen, weight })
}
