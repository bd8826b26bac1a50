use minilp::{ComparisonOp, OptimizationDirection, Problem};

use super::model::{Cmp, LpModel};
use crate::error::{Error, Result};

/// Largest accepted row violation of a reported optimum.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Largest accepted relative gap between primal and dual optima.
pub const OPTIMALITY_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub values: Vec<f64>,
    pub objective: f64,
    pub max_residual: f64,
    /// `|primal - dual|` when the dual was solved.
    pub duality_gap: Option<f64>,
}

impl LpSolution {
    fn without_point(status: LpStatus, n: usize) -> Self {
        LpSolution {
            status,
            values: vec![0.0; n],
            objective: f64::NAN,
            max_residual: f64::NAN,
            duality_gap: None,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

fn op(c: Cmp) -> ComparisonOp {
    match c {
        Cmp::Le => ComparisonOp::Le,
        Cmp::Eq => ComparisonOp::Eq,
        Cmp::Ge => ComparisonOp::Ge,
    }
}

fn check_finite(model: &LpModel) -> Result<()> {
    let coeffs = model
        .objective()
        .iter()
        .chain(model.constraints().iter().flat_map(|c| {
            c.terms
                .iter()
                .map(|(_, a)| a)
                .chain(std::iter::once(&c.rhs))
        }));
    for &a in coeffs {
        if !a.is_finite() {
            return Err(Error::Lp(format!("non-finite coefficient {a}")));
        }
    }
    Ok(())
}

fn primal(model: &LpModel) -> Result<LpSolution> {
    check_finite(model)?;
    let mut p = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<_> = model
        .objective()
        .iter()
        .map(|&c| p.add_var(c, (0.0, f64::INFINITY)))
        .collect();
    for c in model.constraints() {
        p.add_constraint(
            c.terms
                .iter()
                .map(|&(v, a)| (vars[v], a))
                .collect::<Vec<_>>(),
            op(c.cmp),
            c.rhs,
        );
    }
    let n = model.num_vars();
    match p.solve() {
        Err(minilp::Error::Infeasible) => Ok(LpSolution::without_point(LpStatus::Infeasible, n)),
        Err(minilp::Error::Unbounded) => Ok(LpSolution::without_point(LpStatus::Unbounded, n)),
        // An unbounded ray can surface as an infinite optimum.
        Ok(sol) if sol.objective() == f64::NEG_INFINITY => {
            Ok(LpSolution::without_point(LpStatus::Unbounded, n))
        }
        Ok(sol) => {
            // Bound noise below the tolerance is clipped; anything larger is kept and rejected.
            let values: Vec<f64> = vars
                .iter()
                .map(|&v| {
                    let x = *sol.var_value(v);
                    if x < 0.0 && x > -FEASIBILITY_TOL {
                        0.0
                    } else {
                        x
                    }
                })
                .collect();
            let objective = model.objective_value(&values);
            let max_residual = model.max_residual(&values);
            if !(max_residual <= FEASIBILITY_TOL) {
                return Err(Error::Lp(format!(
                    "solution violates constraints by {max_residual:e}"
                )));
            }
            if (objective - sol.objective()).abs() > OPTIMALITY_TOL * objective.abs().max(1.0) {
                return Err(Error::Lp(format!(
                    "reported objective {} differs from recomputed {objective}",
                    sol.objective()
                )));
            }
            Ok(LpSolution {
                status: LpStatus::Optimal,
                values,
                objective,
                max_residual,
                duality_gap: None,
            })
        }
    }
}

/// Solves `model`; an optimum is returned only after its residuals and
/// objective have been re-checked from the assignment.
pub fn solve_lp(model: &LpModel) -> Result<LpSolution> {
    primal(model)
}

/// [`solve_lp`] plus an independent solve of the dual; the optimum is
/// rejected unless the two objectives agree.
pub fn solve_lp_certified(model: &LpModel) -> Result<LpSolution> {
    let mut sol = primal(model)?;
    if !sol.is_optimal() {
        return Ok(sol);
    }
    let mut d = Problem::new(OptimizationDirection::Maximize);
    let duals: Vec<_> = model
        .constraints()
        .iter()
        .map(|c| {
            let bounds = match c.cmp {
                Cmp::Ge => (0.0, f64::INFINITY),
                Cmp::Le => (f64::NEG_INFINITY, 0.0),
                Cmp::Eq => (f64::NEG_INFINITY, f64::INFINITY),
            };
            d.add_var(c.rhs, bounds)
        })
        .collect();
    let mut columns: Vec<Vec<(usize, f64)>> = vec![Vec::new(); model.num_vars()];
    for (i, c) in model.constraints().iter().enumerate() {
        for &(v, a) in &c.terms {
            columns[v].push((i, a));
        }
    }
    for (j, col) in columns.iter().enumerate() {
        d.add_constraint(
            col.iter().map(|&(i, a)| (duals[i], a)).collect::<Vec<_>>(),
            ComparisonOp::Le,
            model.objective()[j],
        );
    }
    let dual = d
        .solve()
        .map_err(|e| Error::Lp(format!("dual solve failed: {e}")))?;
    let gap = (sol.objective - dual.objective()).abs();
    if !(gap <= OPTIMALITY_TOL * sol.objective.abs().max(1.0)) {
        return Err(Error::Lp(format!("duality gap {gap:e} exceeds tolerance")));
    }
    sol.duality_gap = Some(gap);
    Ok(sol)
}
