use std::collections::HashMap;
use std::fmt::Write as _;

use crate::graph::{EdgeId, Vertex};

pub type VarId = usize;

/// Role of an LP variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarTag {
    /// Vertex selection `x(v)`.
    X(Vertex),
    /// Edge capacity `y(e)`.
    Y(EdgeId),
    /// Flow of `commodity` on the arc `from -> to`.
    Flow {
        commodity: Vertex,
        from: Vertex,
        to: Vertex,
    },
}

impl VarTag {
    /// Identifier usable in LP text files.
    pub fn name(&self) -> String {
        match *self {
            VarTag::X(v) => format!("x_{v}"),
            VarTag::Y(e) => format!("y_{e}"),
            VarTag::Flow {
                commodity,
                from,
                to,
            } => format!("f_{commodity}_{from}_{to}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub terms: Vec<(VarId, f64)>,
    pub cmp: Cmp,
    pub rhs: f64,
}

impl Constraint {
    pub fn lhs(&self, values: &[f64]) -> f64 {
        self.terms.iter().map(|&(v, c)| c * values[v]).sum()
    }

    /// Amount by which `values` violate the row (0 when satisfied).
    pub fn violation(&self, values: &[f64]) -> f64 {
        let lhs = self.lhs(values);
        match self.cmp {
            Cmp::Le => (lhs - self.rhs).max(0.0),
            Cmp::Ge => (self.rhs - lhs).max(0.0),
            Cmp::Eq => (lhs - self.rhs).abs(),
        }
    }
}

/// Minimization LP over nonnegative variables.
#[derive(Clone, Debug, Default)]
pub struct LpModel {
    tags: Vec<VarTag>,
    objective: Vec<f64>,
    constraints: Vec<Constraint>,
    index: HashMap<VarTag, VarId>,
}

impl LpModel {
    pub fn new() -> Self {
        LpModel::default()
    }

    /// Declares a variable; a tag declared twice keeps its first cost.
    pub fn add_var(&mut self, tag: VarTag, cost: f64) -> VarId {
        if let Some(&id) = self.index.get(&tag) {
            return id;
        }
        let id = self.tags.len();
        self.tags.push(tag);
        self.objective.push(cost);
        self.index.insert(tag, id);
        id
    }

    /// Adds a row; repeated variables are merged and zero terms dropped.
    pub fn add_constraint(
        &mut self,
        terms: impl IntoIterator<Item = (VarId, f64)>,
        cmp: Cmp,
        rhs: f64,
    ) {
        let mut merged: Vec<(VarId, f64)> = Vec::new();
        for (v, c) in terms {
            assert!(
                v < self.tags.len(),
                "constraint references undeclared variable {v}"
            );
            match merged.iter_mut().find(|(u, _)| *u == v) {
                Some(slot) => slot.1 += c,
                None => merged.push((v, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0.0);
        self.constraints.push(Constraint {
            terms: merged,
            cmp,
            rhs,
        });
    }

    pub fn var(&self, tag: VarTag) -> Option<VarId> {
        self.index.get(&tag).copied()
    }

    pub fn tag(&self, id: VarId) -> VarTag {
        self.tags[id]
    }

    pub fn num_vars(&self) -> usize {
        self.tags.len()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn nonzeros(&self) -> usize {
        self.constraints.iter().map(|c| c.terms.len()).sum()
    }

    pub fn objective_value(&self, values: &[f64]) -> f64 {
        self.objective.iter().zip(values).map(|(c, x)| c * x).sum()
    }

    /// Largest row violation or negative value.
    pub fn max_residual(&self, values: &[f64]) -> f64 {
        let rows = self
            .constraints
            .iter()
            .map(|c| c.violation(values))
            .fold(0.0, f64::max);
        let bounds = values.iter().map(|&x| (-x).max(0.0)).fold(0.0, f64::max);
        rows.max(bounds)
    }

    pub fn count_tagged(&self, pred: impl Fn(&VarTag) -> bool) -> usize {
        self.tags.iter().filter(|t| pred(t)).count()
    }

    /// CPLEX LP text format.
    pub fn to_lp_format(&self) -> String {
        fn terms(out: &mut String, terms: &[(VarId, f64)], tags: &[VarTag]) {
            if terms.is_empty() {
                out.push_str(" 0 x_dummy");
            }
            for (k, &(v, c)) in terms.iter().enumerate() {
                if k > 0 && k % 8 == 0 {
                    out.push_str("\n   ");
                }
                let sign = if c < 0.0 { '-' } else { '+' };
                let _ = write!(out, " {sign} {} {}", c.abs(), tags[v].name());
            }
        }
        let mut out = String::from("\\ generated by vcst\nMinimize\n obj:");
        let obj: Vec<(VarId, f64)> = self
            .objective
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0.0)
            .map(|(v, &c)| (v, c))
            .collect();
        terms(&mut out, &obj, &self.tags);
        out.push_str("\nSubject To\n");
        for (i, c) in self.constraints.iter().enumerate() {
            let _ = write!(out, " c{i}:");
            terms(&mut out, &c.terms, &self.tags);
            let op = match c.cmp {
                Cmp::Le => "<=",
                Cmp::Eq => "=",
                Cmp::Ge => ">=",
            };
            let _ = writeln!(out, " {op} {}", c.rhs);
        }
        out.push_str("Bounds\n");
        for t in &self.tags {
            let _ = writeln!(out, " {} >= 0", t.name());
        }
        out.push_str("End\n");
        out
    }
}
