use super::{solve_nws_pd, PdResult};
use crate::error::Result;
use crate::reductions::{
    lift_nws_to_activation, reduce_activation_to_nws, ActivationInstance, ActivationSolution,
    ReducedActivation,
};

#[derive(Clone, Debug)]
pub struct MinorFreeRun {
    pub solution: ActivationSolution,
    pub reduced: ReducedActivation,
    pub pd: PdResult,
    /// Set when the lifted objective is not the weight of the vertex set.
    pub warning: Option<String>,
}

/// Reduces to node-weighted Steiner tree, runs the primal-dual algorithm and
/// lifts the vertex set back to levels.
pub fn solve_activation_minor_free(inst: &ActivationInstance) -> Result<MinorFreeRun> {
    let reduced = reduce_activation_to_nws(inst)?;
    let pd = solve_nws_pd(&reduced.nws)?;
    let lifted = lift_nws_to_activation(&reduced, &pd.set)?;
    Ok(MinorFreeRun {
        solution: lifted.solution,
        reduced,
        pd,
        warning: lifted.warning,
    })
}
