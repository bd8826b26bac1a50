use crate::error::{Error, Result};
use crate::reductions::{ActivationInstance, ActivationSolution};

/// Limit on `|W|^|V|` for [`solve_activation_exact`].
pub const ACTIVATION_EXACT_MAX_VECTORS: u64 = 1 << 24;

/// Optimal level vector by enumerating all of `W^V`.
///
/// Vectors are scanned in lexicographic order of level indices (vertex 0
/// most significant); the first minimum wins.
pub fn solve_activation_exact(inst: &ActivationInstance) -> Result<ActivationSolution> {
    let n = inst.graph().n();
    let l = inst.levels().len() as u64;
    let count = (0..n).try_fold(1u64, |acc, _| {
        acc.checked_mul(l)
            .filter(|&c| c <= ACTIVATION_EXACT_MAX_VECTORS)
    });
    let Some(count) = count else {
        return Err(Error::TooLarge(format!(
            "|W|^|V| = {l}^{n} exceeds {ACTIVATION_EXACT_MAX_VECTORS}"
        )));
    };
    let levels: Vec<i64> = inst.levels().iter().map(|f| f.micros()).collect();
    let mut x = vec![0usize; n];
    let mut best: Option<(i64, Vec<usize>)> = None;
    for _ in 0..count {
        let cost: i64 = x.iter().map(|&i| levels[i]).sum();
        if best.as_ref().is_none_or(|(b, _)| cost < *b) && inst.is_feasible(&x) {
            best = Some((cost, x.clone()));
        }
        for v in (0..n).rev() {
            x[v] += 1;
            if (x[v] as u64) < l {
                break;
            }
            x[v] = 0;
        }
    }
    match best {
        Some((_, x)) => ActivationSolution::new(inst, x),
        None => Err(Error::infeasible(
            "no level vector activates a terminal-spanning subgraph",
        )),
    }
}
