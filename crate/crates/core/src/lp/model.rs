use serde::Serialize;

use crate::error::{EccError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Constraint {
    pub name: String,
    /// Sparse coefficients `(variable, value)`.
    pub coeffs: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

/// A linear program with bounded variables. Infinite bounds are allowed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub constant: f64,
    pub constraints: Vec<Constraint>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub names: Vec<String>,
}

impl LinearProgram {
    pub fn new(sense: Sense) -> Self {
        LinearProgram {
            sense,
            objective: Vec::new(),
            constant: 0.0,
            constraints: Vec::new(),
            lower: Vec::new(),
            upper: Vec::new(),
            names: Vec::new(),
        }
    }

    pub fn add_variable(
        &mut self,
        name: impl Into<String>,
        lower: f64,
        upper: f64,
        cost: f64,
    ) -> usize {
        self.names.push(name.into());
        self.lower.push(lower);
        self.upper.push(upper);
        self.objective.push(cost);
        self.names.len() - 1
    }

    pub fn add_constraint(
        &mut self,
        name: impl Into<String>,
        coeffs: Vec<(usize, f64)>,
        relation: Relation,
        rhs: f64,
    ) -> usize {
        self.constraints.push(Constraint {
            name: name.into(),
            coeffs,
            relation,
            rhs,
        });
        self.constraints.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Checks index ranges, bound order and finiteness of coefficients.
    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.objective.len() != n || self.lower.len() != n || self.upper.len() != n {
            return Err(EccError::DimensionMismatch(
                "objective, bounds and names must have equal length".into(),
            ));
        }
        for j in 0..n {
            if !(self.lower[j] <= self.upper[j])
                || self.lower[j] == f64::INFINITY
                || self.upper[j] == f64::NEG_INFINITY
            {
                return Err(EccError::InvalidArgument(format!(
                    "variable {} has bounds [{}, {}]",
                    self.names[j], self.lower[j], self.upper[j]
                )));
            }
            if !self.objective[j].is_finite() {
                return Err(EccError::InvalidArgument(format!(
                    "variable {} has non-finite cost",
                    self.names[j]
                )));
            }
        }
        for c in &self.constraints {
            if !c.rhs.is_finite() {
                return Err(EccError::InvalidArgument(format!(
                    "constraint {} has non-finite rhs",
                    c.name
                )));
            }
            for &(j, a) in &c.coeffs {
                if j >= n {
                    return Err(EccError::InvalidArgument(format!(
                        "constraint {} references variable {j} of {n}",
                        c.name
                    )));
                }
                if !a.is_finite() {
                    return Err(EccError::InvalidArgument(format!(
                        "constraint {} has a non-finite coefficient",
                        c.name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.constant
            + self
                .objective
                .iter()
                .zip(x)
                .map(|(c, v)| c * v)
                .sum::<f64>()
    }

    /// Largest violation of any bound or constraint at `x`, scaled by
    /// `1 + |rhs|` for rows and `1 + |bound|` for bounds.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..self.num_vars() {
            let (l, u) = (self.lower[j], self.upper[j]);
            if x[j] < l {
                worst = worst.max((l - x[j]) / (1.0 + l.abs()));
            }
            if x[j] > u {
                worst = worst.max((x[j] - u) / (1.0 + u.abs()));
            }
        }
        for c in &self.constraints {
            let lhs: f64 = c.coeffs.iter().map(|&(j, a)| a * x[j]).sum();
            let gap = match c.relation {
                Relation::Le => lhs - c.rhs,
                Relation::Ge => c.rhs - lhs,
                Relation::Eq => (lhs - c.rhs).abs(),
            };
            worst = worst.max(gap / (1.0 + c.rhs.abs()));
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
    /// Accumulated rounding error left the solver without a trustworthy
    /// answer.
    NumericalFailure,
}

impl std::fmt::Display for LpStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            LpStatus::Optimal => "optimal",
            LpStatus::Infeasible => "infeasible",
            LpStatus::Unbounded => "unbounded",
            LpStatus::IterationLimit => "iteration-limit",
            LpStatus::NumericalFailure => "numerical-failure",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LpResult {
    pub status: LpStatus,
    /// Objective value in the sense of the program; NaN unless optimal.
    pub value: f64,
    pub primal: Vec<f64>,
    /// Per original variable, whether it ended in the basis.
    pub basic: Vec<bool>,
    pub iterations: usize,
}

impl LpResult {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}
