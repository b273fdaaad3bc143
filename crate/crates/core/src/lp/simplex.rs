//! Dense two-phase primal simplex with bounded variables.
//!
//! Every variable of the input program is mapped to nonnegative tableau
//! columns with an optional finite upper bound. Nonbasic columns always sit at
//! zero: a column that should rest at its upper bound is *complemented*
//! (replaced by `u - x`), so the textbook ratio test and entering rule apply
//! unchanged.

use super::model::{LinearProgram, LpResult, LpStatus, Relation, Sense};

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-9;
const FEAS_TOL: f64 = 1e-7;
const ZERO_TOL: f64 = 1e-12;
/// Reduced costs are recomputed from scratch this often.
const REPRICE_EVERY: usize = 100;
/// Largest scaled row violation accepted in the returned primal.
const ACCEPT_TOL: f64 = 1e-6;

/// Entering-column rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// Smallest eligible index; never cycles.
    #[default]
    Bland,
    /// Most negative reduced cost, falling back to Bland after a run of
    /// degenerate pivots.
    Dantzig,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub iteration_limit: usize,
    pub pivot_rule: PivotRule,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            iteration_limit: 200_000,
            pivot_rule: PivotRule::Bland,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum VarMap {
    Fixed(f64),
    /// `x = offset + sign * col`
    Col {
        col: usize,
        offset: f64,
        sign: f64,
    },
    /// `x = pos - neg`
    Split {
        pos: usize,
        neg: usize,
    },
}

struct Tableau {
    m: usize,
    n: usize,
    a: Vec<f64>,
    beta: Vec<f64>,
    basis: Vec<usize>,
    row_of: Vec<Option<usize>>,
    upper: Vec<f64>,
    flipped: Vec<bool>,
    d: Vec<f64>,
    cost: Vec<f64>,
    priced_at: usize,
    allowed: Vec<bool>,
    iterations: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
    Limit,
}

impl Tableau {
    fn entry(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    /// Reduced costs for `cost` given the current basis and complement state.
    fn price(&mut self, cost: &[f64]) {
        self.cost = cost.to_vec();
        self.reprice();
    }

    fn reprice(&mut self) {
        let n = self.n;
        let cost = &self.cost;
        let eff = |j: usize, flipped: &[bool]| if flipped[j] { -cost[j] } else { cost[j] };
        let mut d: Vec<f64> = (0..n).map(|j| eff(j, &self.flipped)).collect();
        for i in 0..self.m {
            let cb = eff(self.basis[i], &self.flipped);
            if cb != 0.0 {
                let row = &self.a[i * n..(i + 1) * n];
                for (dj, &aij) in d.iter_mut().zip(row) {
                    if aij != 0.0 {
                        *dj -= cb * aij;
                    }
                }
            }
        }
        for i in 0..self.m {
            d[self.basis[i]] = 0.0;
        }
        self.d = d;
        self.priced_at = self.iterations;
    }

    fn complement_nonbasic(&mut self, q: usize) {
        let u = self.upper[q];
        let n = self.n;
        for i in 0..self.m {
            let t = self.a[i * n + q];
            if t != 0.0 {
                self.beta[i] -= t * u;
                self.a[i * n + q] = -t;
            }
        }
        self.d[q] = -self.d[q];
        self.flipped[q] = !self.flipped[q];
    }

    fn complement_basic(&mut self, r: usize) {
        let b = self.basis[r];
        let n = self.n;
        for j in 0..n {
            if j != b {
                let v = &mut self.a[r * n + j];
                if *v != 0.0 {
                    *v = -*v;
                }
            }
        }
        self.beta[r] = self.upper[b] - self.beta[r];
        self.flipped[b] = !self.flipped[b];
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let n = self.n;
        let piv = self.a[r * n + q];
        let mut nz: Vec<(usize, f64)> = Vec::new();
        for j in 0..n {
            let v = self.a[r * n + j];
            if v != 0.0 {
                let s = if j == q { 1.0 } else { v / piv };
                self.a[r * n + j] = s;
                nz.push((j, s));
            }
        }
        self.beta[r] /= piv;
        let br = self.beta[r];
        for i in 0..self.m {
            if i == r {
                continue;
            }
            let f = self.a[i * n + q];
            if f == 0.0 {
                continue;
            }
            let row = &mut self.a[i * n..(i + 1) * n];
            for &(j, s) in &nz {
                let v = row[j] - f * s;
                row[j] = if v.abs() < ZERO_TOL { 0.0 } else { v };
            }
            row[q] = 0.0;
            self.beta[i] -= f * br;
        }
        let f = self.d[q];
        if f != 0.0 {
            for &(j, s) in &nz {
                self.d[j] -= f * s;
            }
            self.d[q] = 0.0;
        }
        let old = self.basis[r];
        self.row_of[old] = None;
        self.basis[r] = q;
        self.row_of[q] = Some(r);
    }

    fn choose_entering(&self, rule: PivotRule) -> Option<usize> {
        let eligible =
            |j: usize| self.allowed[j] && self.row_of[j].is_none() && self.d[j] < -COST_TOL;
        match rule {
            PivotRule::Bland => (0..self.n).find(|&j| eligible(j)),
            PivotRule::Dantzig => {
                let mut best: Option<usize> = None;
                for j in 0..self.n {
                    if eligible(j) && best.map_or(true, |b| self.d[j] < self.d[b]) {
                        best = Some(j);
                    }
                }
                best
            }
        }
    }

    fn run(&mut self, limit: usize, rule: PivotRule) -> Outcome {
        let mut degenerate_run = 0usize;
        loop {
            if self.iterations >= limit {
                return Outcome::Limit;
            }
            let active = if rule == PivotRule::Dantzig && degenerate_run > 50 {
                PivotRule::Bland
            } else {
                rule
            };
            if self.iterations - self.priced_at >= REPRICE_EVERY {
                self.reprice();
            }
            let q = match self.choose_entering(active) {
                Some(q) => q,
                None if self.priced_at == self.iterations => return Outcome::Optimal,
                None => {
                    self.reprice();
                    continue;
                }
            };

            let mut best_ratio = f64::INFINITY;
            let mut best_row: Option<usize> = None;
            let mut to_upper = false;
            for i in 0..self.m {
                let t = self.entry(i, q);
                let (ratio, up) = if t > PIVOT_TOL {
                    (self.beta[i].max(0.0) / t, false)
                } else if t < -PIVOT_TOL && self.upper[self.basis[i]].is_finite() {
                    let room = (self.upper[self.basis[i]] - self.beta[i]).max(0.0);
                    (room / -t, true)
                } else {
                    continue;
                };
                let better = match best_row {
                    None => true,
                    Some(br) => {
                        ratio < best_ratio - ZERO_TOL
                            || (ratio <= best_ratio + ZERO_TOL && self.basis[i] < self.basis[br])
                    }
                };
                if better {
                    best_ratio = ratio;
                    best_row = Some(i);
                    to_upper = up;
                }
            }

            if self.upper[q].is_finite() && self.upper[q] <= best_ratio {
                self.iterations += 1;
                self.complement_nonbasic(q);
                degenerate_run = 0;
                continue;
            }
            let r = match best_row {
                Some(r) => r,
                None if self.priced_at == self.iterations => return Outcome::Unbounded,
                None => {
                    // the entering cost may be stale
                    self.reprice();
                    continue;
                }
            };
            if best_ratio <= ZERO_TOL {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
            self.iterations += 1;
            if to_upper {
                self.complement_basic(r);
            }
            self.pivot(r, q);
        }
    }

    fn column_values(&self) -> Vec<f64> {
        let mut x = vec![0.0; self.n];
        for (i, &b) in self.basis.iter().enumerate() {
            x[b] = self.beta[i];
        }
        for j in 0..self.n {
            if self.flipped[j] {
                x[j] = self.upper[j] - x[j];
            }
        }
        x
    }
}

/// Solves `lp` with Bland's rule and the given iteration limit.
pub fn solve(lp: &LinearProgram, iteration_limit: usize) -> LpResult {
    solve_with(
        lp,
        &SolverOptions {
            iteration_limit,
            ..SolverOptions::default()
        },
    )
}

pub fn solve_with(lp: &LinearProgram, opts: &SolverOptions) -> LpResult {
    let nv = lp.num_vars();
    let fail = |status: LpStatus, iterations: usize| LpResult {
        status,
        value: f64::NAN,
        primal: vec![f64::NAN; nv],
        basic: vec![false; nv],
        iterations,
    };
    if lp.validate().is_err() {
        return fail(LpStatus::Infeasible, 0);
    }

    // variable substitution
    let mut maps = Vec::with_capacity(nv);
    let mut col_upper: Vec<f64> = Vec::new();
    let mut col_cost: Vec<f64> = Vec::new();
    let dir = if lp.sense == Sense::Maximize {
        -1.0
    } else {
        1.0
    };
    for j in 0..nv {
        let (l, u) = (lp.lower[j], lp.upper[j]);
        let c = dir * lp.objective[j];
        if l == u {
            maps.push(VarMap::Fixed(l));
        } else if l.is_finite() {
            maps.push(VarMap::Col {
                col: col_upper.len(),
                offset: l,
                sign: 1.0,
            });
            col_upper.push(u - l);
            col_cost.push(c);
        } else if u.is_finite() {
            maps.push(VarMap::Col {
                col: col_upper.len(),
                offset: u,
                sign: -1.0,
            });
            col_upper.push(f64::INFINITY);
            col_cost.push(-c);
        } else {
            let pos = col_upper.len();
            maps.push(VarMap::Split { pos, neg: pos + 1 });
            col_upper.extend([f64::INFINITY, f64::INFINITY]);
            col_cost.extend([c, -c]);
        }
    }
    let ns = col_upper.len();

    // rows over structural columns
    let m = lp.num_constraints();
    let mut rows: Vec<(Vec<(usize, f64)>, Relation, f64)> = Vec::with_capacity(m);
    let mut dense = vec![0.0; ns];
    let mut touched: Vec<usize> = Vec::new();
    for c in &lp.constraints {
        let mut rhs = c.rhs;
        for &(j, a) in &c.coeffs {
            match maps[j] {
                VarMap::Fixed(v) => rhs -= a * v,
                VarMap::Col { col, offset, sign } => {
                    rhs -= a * offset;
                    if dense[col] == 0.0 {
                        touched.push(col);
                    }
                    dense[col] += a * sign;
                }
                VarMap::Split { pos, neg } => {
                    for (col, s) in [(pos, a), (neg, -a)] {
                        if dense[col] == 0.0 {
                            touched.push(col);
                        }
                        dense[col] += s;
                    }
                }
            }
        }
        touched.sort_unstable();
        touched.dedup();
        let mut coeffs: Vec<(usize, f64)> = touched
            .iter()
            .map(|&col| (col, dense[col]))
            .filter(|&(_, v)| v != 0.0)
            .collect();
        for &col in &touched {
            dense[col] = 0.0;
        }
        touched.clear();
        let mut rel = c.relation;
        if rhs < 0.0 {
            rhs = -rhs;
            for e in &mut coeffs {
                e.1 = -e.1;
            }
            rel = match rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
        rows.push((coeffs, rel, rhs));
    }

    let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let n_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let n = ns + n_slack + n_art;
    let first_art = ns + n_slack;

    let mut t = Tableau {
        m,
        n,
        a: vec![0.0; m * n],
        beta: vec![0.0; m],
        basis: vec![0; m],
        row_of: vec![None; n],
        upper: vec![f64::INFINITY; n],
        flipped: vec![false; n],
        d: vec![0.0; n],
        cost: vec![0.0; n],
        priced_at: 0,
        allowed: vec![true; n],
        iterations: 0,
    };
    t.upper[..ns].copy_from_slice(&col_upper);
    let mut next_slack = ns;
    let mut next_art = first_art;
    for (i, (coeffs, rel, rhs)) in rows.iter().enumerate() {
        for &(j, v) in coeffs {
            t.a[i * n + j] = v;
        }
        t.beta[i] = *rhs;
        match rel {
            Relation::Le => {
                t.a[i * n + next_slack] = 1.0;
                t.basis[i] = next_slack;
                next_slack += 1;
            }
            Relation::Ge => {
                t.a[i * n + next_slack] = -1.0;
                next_slack += 1;
                t.a[i * n + next_art] = 1.0;
                t.basis[i] = next_art;
                next_art += 1;
            }
            Relation::Eq => {
                t.a[i * n + next_art] = 1.0;
                t.basis[i] = next_art;
                next_art += 1;
            }
        }
    }
    for i in 0..m {
        t.row_of[t.basis[i]] = Some(i);
    }

    // phase 1
    if n_art > 0 {
        let mut cost1 = vec![0.0; n];
        for c in cost1.iter_mut().skip(first_art) {
            *c = 1.0;
        }
        t.price(&cost1);
        match t.run(opts.iteration_limit, opts.pivot_rule) {
            Outcome::Limit => return fail(LpStatus::IterationLimit, t.iterations),
            // the phase 1 objective is bounded below
            Outcome::Unbounded => return fail(LpStatus::NumericalFailure, t.iterations),
            Outcome::Optimal => {}
        }
        let scale = 1.0 + rows.iter().map(|r| r.2).fold(0.0, f64::max);
        let infeas: f64 = (0..m)
            .filter(|&i| t.basis[i] >= first_art)
            .map(|i| t.beta[i])
            .sum();
        if infeas > FEAS_TOL * scale {
            return fail(LpStatus::Infeasible, t.iterations);
        }
        // drive zero-valued artificials out of the basis
        for i in 0..m {
            if t.basis[i] < first_art {
                continue;
            }
            let q =
                (0..first_art).find(|&j| t.row_of[j].is_none() && t.entry(i, j).abs() > PIVOT_TOL);
            match q {
                Some(q) => {
                    if t.beta[i].abs() > 0.0 {
                        t.beta[i] = 0.0;
                    }
                    t.pivot(i, q);
                }
                None => {
                    // redundant row
                    for j in 0..first_art {
                        t.a[i * n + j] = 0.0;
                    }
                    t.beta[i] = 0.0;
                }
            }
        }
        for j in first_art..n {
            t.allowed[j] = false;
        }
    }

    // phase 2
    let mut cost2 = vec![0.0; n];
    cost2[..ns].copy_from_slice(&col_cost);
    t.price(&cost2);
    match t.run(opts.iteration_limit, opts.pivot_rule) {
        Outcome::Limit => return fail(LpStatus::IterationLimit, t.iterations),
        Outcome::Unbounded => return fail(LpStatus::Unbounded, t.iterations),
        Outcome::Optimal => {}
    }

    let cols = t.column_values();
    let mut primal = Vec::with_capacity(nv);
    let mut basic = Vec::with_capacity(nv);
    for map in &maps {
        match *map {
            VarMap::Fixed(v) => {
                primal.push(v);
                basic.push(false);
            }
            VarMap::Col { col, offset, sign } => {
                primal.push(offset + sign * cols[col]);
                basic.push(t.row_of[col].is_some());
            }
            VarMap::Split { pos, neg } => {
                primal.push(cols[pos] - cols[neg]);
                basic.push(t.row_of[pos].is_some() || t.row_of[neg].is_some());
            }
        }
    }
    if lp.max_violation(&primal) > ACCEPT_TOL {
        return fail(LpStatus::NumericalFailure, t.iterations);
    }
    let value = lp.objective_value(&primal);
    LpResult {
        status: LpStatus::Optimal,
        value,
        primal,
        basic,
        iterations: t.iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn lower_bounded_minimum() {
        let mut lp = LinearProgram::new(Sense::Minimize);
        let x = lp.add_variable("x", 0.0, 10.0, 1.0);
        lp.add_constraint("c", vec![(x, 1.0)], Relation::Ge, 2.0);
        let r = solve(&lp, 1000);
        assert_eq!(r.status, LpStatus::Optimal);
        assert!(close(r.value, 2.0));
    }

    #[test]
    fn unbounded_maximum() {
        let mut lp = LinearProgram::new(Sense::Maximize);
        let x = lp.add_variable("x", 0.0, f64::INFINITY, 1.0);
        lp.add_constraint("c", vec![(x, 1.0)], Relation::Ge, 0.0);
        assert_eq!(solve(&lp, 1000).status, LpStatus::Unbounded);
    }

    #[test]
    fn infeasible_system() {
        let mut lp = LinearProgram::new(Sense::Minimize);
        let x = lp.add_variable("x", 0.0, 1.0, 1.0);
        lp.add_constraint("c", vec![(x, 1.0)], Relation::Ge, 2.0);
        assert_eq!(solve(&lp, 1000).status, LpStatus::Infeasible);
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18
        let mut lp = LinearProgram::new(Sense::Maximize);
        let x = lp.add_variable("x", 0.0, f64::INFINITY, 3.0);
        let y = lp.add_variable("y", 0.0, f64::INFINITY, 5.0);
        lp.add_constraint("a", vec![(x, 1.0)], Relation::Le, 4.0);
        lp.add_constraint("b", vec![(y, 2.0)], Relation::Le, 12.0);
        lp.add_constraint("c", vec![(x, 3.0), (y, 2.0)], Relation::Le, 18.0);
        let r = solve(&lp, 1000);
        assert!(close(r.value, 36.0));
        assert!(close(r.primal[x], 2.0) && close(r.primal[y], 6.0));
    }

    #[test]
    fn upper_bounds_and_free_variables() {
        // min -x - y + z, x in [0,1], y in [-2, 3], z free, z >= x + y - 10
        let mut lp = LinearProgram::new(Sense::Minimize);
        let x = lp.add_variable("x", 0.0, 1.0, -1.0);
        let y = lp.add_variable("y", -2.0, 3.0, -1.0);
        let z = lp.add_variable("z", f64::NEG_INFINITY, f64::INFINITY, 1.0);
        lp.add_constraint(
            "c",
            vec![(z, 1.0), (x, -1.0), (y, -1.0)],
            Relation::Ge,
            -10.0,
        );
        let r = solve(&lp, 1000);
        assert_eq!(r.status, LpStatus::Optimal);
        assert!(close(r.value, -4.0 + -6.0), "{}", r.value);
        assert!(lp.max_violation(&r.primal) < 1e-9);
    }

    #[test]
    fn equality_with_redundant_row() {
        let mut lp = LinearProgram::new(Sense::Minimize);
        let x = lp.add_variable("x", 0.0, 5.0, 1.0);
        let y = lp.add_variable("y", 0.0, 5.0, 2.0);
        lp.add_constraint("a", vec![(x, 1.0), (y, 1.0)], Relation::Eq, 3.0);
        lp.add_constraint("b", vec![(x, 2.0), (y, 2.0)], Relation::Eq, 6.0);
        let r = solve(&lp, 1000);
        assert_eq!(r.status, LpStatus::Optimal);
        assert!(close(r.value, 3.0));
    }

    #[test]
    fn upper_bounded_variable_without_finite_lower() {
        // max x with x <= 7 and no lower bound
        let mut lp = LinearProgram::new(Sense::Maximize);
        lp.add_variable("x", f64::NEG_INFINITY, 7.0, 1.0);
        let r = solve(&lp, 100);
        assert!(close(r.value, 7.0));
    }

    #[test]
    fn fixed_variables_are_substituted() {
        let mut lp = LinearProgram::new(Sense::Minimize);
        let x = lp.add_variable("x", 2.0, 2.0, 1.0);
        let y = lp.add_variable("y", 0.0, 10.0, 1.0);
        lp.add_constraint("c", vec![(x, 1.0), (y, 1.0)], Relation::Ge, 5.0);
        let r = solve(&lp, 100);
        assert!(close(r.value, 5.0));
        assert!(close(r.primal[x], 2.0));
    }

    #[test]
    fn iteration_limit_is_reported() {
        let mut lp = LinearProgram::new(Sense::Maximize);
        let x = lp.add_variable("x", 0.0, f64::INFINITY, 3.0);
        let y = lp.add_variable("y", 0.0, f64::INFINITY, 5.0);
        lp.add_constraint("c", vec![(x, 3.0), (y, 2.0)], Relation::Le, 18.0);
        lp.add_constraint("d", vec![(x, 1.0)], Relation::Le, 4.0);
        assert_eq!(solve(&lp, 0).status, LpStatus::IterationLimit);
    }

    #[test]
    fn dantzig_agrees_with_bland() {
        let mut lp = LinearProgram::new(Sense::Maximize);
        let x = lp.add_variable("x", 0.0, 3.0, 2.0);
        let y = lp.add_variable("y", 0.0, 3.0, 3.0);
        let z = lp.add_variable("z", 0.0, 3.0, 1.0);
        lp.add_constraint("a", vec![(x, 1.0), (y, 1.0), (z, 1.0)], Relation::Le, 4.0);
        lp.add_constraint("b", vec![(x, 1.0), (y, -1.0)], Relation::Ge, -1.0);
        let bland = solve(&lp, 1000);
        let dantzig = solve_with(
            &lp,
            &SolverOptions {
                iteration_limit: 1000,
                pivot_rule: PivotRule::Dantzig,
            },
        );
        assert!(close(bland.value, dantzig.value));
    }
}
