//! Threshold rounding of the MinECC relaxation.
//!
//! A threshold `rho` is drawn from an open interval and a random priority
//! order over colors. Color `i` *wants* node `v` when `x_v^i < rho`; each node
//! takes the wanting color that comes last in the order, or color 1 when no
//! color wants it.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{EccError, Result};
use crate::hypergraph::{Edge, EdgeColoredHypergraph, NodeColoring};
use crate::lp::EccLpSolution;

/// Tolerance used when checking a fractional solution before rounding.
const FEAS_TOL: f64 = 1e-6;

/// Open interval `(lo, hi)` inside `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(0.0 <= lo && lo < hi && hi <= 1.0) {
            return Err(EccError::InvalidArgument(format!(
                "interval ({lo}, {hi}) must satisfy 0 <= lo < hi <= 1"
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Parses `lo:hi`.
    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| EccError::InvalidArgument(format!("interval '{s}' is not lo:hi")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| EccError::InvalidArgument(format!("bad interval endpoint '{t}'")))
        };
        Interval::new(parse(a)?, parse(b)?)
    }
}

/// Interval with its proven approximation factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntervalChoice {
    pub interval: Interval,
    pub factor: f64,
}

/// The interval with the best proven factor for `k` colors and rank `r`.
/// The factor is 1 for `k <= 2`, where every basic optimum is integral.
pub fn best_interval(k: u32, r: usize) -> Result<IntervalChoice> {
    if r < 2 {
        return Err(EccError::InvalidArgument(format!(
            "rank must be >= 2, got {r}"
        )));
    }
    if k == 0 {
        return Err(EccError::InvalidArgument("need at least one color".into()));
    }
    let interval = if r == 2 {
        Interval { lo: 0.5, hi: 0.875 }
    } else if k as usize <= r + 1 {
        Interval { lo: 0.5, hi: 0.75 }
    } else {
        Interval {
            lo: 0.5,
            hi: 2.0 / 3.0,
        }
    };
    let factor = if k <= 2 {
        1.0
    } else {
        let by_k = 2.0 - 2.0 / k as f64;
        let by_r = 2.0 - 2.0 / (r as f64 + 1.0);
        by_k.min(by_r)
    };
    Ok(IntervalChoice { interval, factor })
}

/// One random draw of the rounding: a threshold and a color order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundingDraw {
    pub rho: f64,
    /// `priority[c - 1]` is the position of color `c`; higher wins.
    pub priority: Vec<u32>,
}

impl RoundingDraw {
    pub fn sample<R: Rng>(k: u32, interval: Interval, rng: &mut R) -> Self {
        let mut u: f64 = rng.gen();
        while u == 0.0 {
            u = rng.gen();
        }
        let rho = interval.lo + interval.width() * u;
        let mut perm: Vec<u32> = (1..=k).collect();
        perm.shuffle(rng);
        let mut priority = vec![0u32; k as usize];
        for (pos, &c) in perm.iter().enumerate() {
            priority[c as usize - 1] = pos as u32;
        }
        RoundingDraw { rho, priority }
    }

    pub fn from_seed(k: u32, interval: Interval, seed: u64) -> Self {
        Self::sample(k, interval, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// Color of `v` under this draw.
    pub fn color_of(&self, x: &EccLpSolution, v: usize) -> u32 {
        let mut best: Option<(u32, u32)> = None;
        for (i, &d) in x.node_row(v).iter().enumerate() {
            if d < self.rho {
                let p = self.priority[i];
                if best.map_or(true, |(bp, _)| p > bp) {
                    best = Some((p, i as u32 + 1));
                }
            }
        }
        best.map_or(1, |(_, c)| c)
    }

    /// Whether this draw makes a mistake at `e`.
    pub fn mistake_at(&self, x: &EccLpSolution, e: &Edge) -> bool {
        e.members()
            .iter()
            .any(|&v| self.color_of(x, v) != e.color())
    }
}

fn check_dims(h: &EdgeColoredHypergraph, x: &EccLpSolution) -> Result<()> {
    x.check_feasible(h, FEAS_TOL)
}

/// Applies one fixed draw to every node.
pub fn round_with_draw(x: &EccLpSolution, draw: &RoundingDraw) -> NodeColoring {
    let y = (0..x.num_nodes()).map(|v| draw.color_of(x, v)).collect();
    NodeColoring::from_vec_unchecked(y)
}

/// The generic rounding with a seeded draw.
pub fn gen_color_round(
    h: &EdgeColoredHypergraph,
    x: &EccLpSolution,
    interval: Interval,
    seed: u64,
) -> Result<NodeColoring> {
    check_dims(h, x)?;
    let draw = RoundingDraw::from_seed(h.num_colors(), interval, seed);
    Ok(round_with_draw(x, &draw))
}

/// Each node takes its nearest color, ties to the lowest.
pub fn simple_round(x: &EccLpSolution) -> NodeColoring {
    let y = (0..x.num_nodes())
        .map(|v| {
            let row = x.node_row(v);
            let mut best = 0;
            for i in 1..row.len() {
                if row[i] < row[best] {
                    best = i;
                }
            }
            best as u32 + 1
        })
        .collect();
    NodeColoring::from_vec_unchecked(y)
}

/// Sorted values `min_{v in e} x_v^j` over colors `j != l(e)`: entry `i - 1`
/// is the threshold above which at least `i` other colors want a node of `e`.
pub fn color_thresholds(
    h: &EdgeColoredHypergraph,
    x: &EccLpSolution,
    j: usize,
) -> Result<Vec<f64>> {
    if j >= h.num_edges() {
        return Err(EccError::InvalidArgument(format!(
            "edge {j} outside [0, {})",
            h.num_edges()
        )));
    }
    let e = h.edge(j);
    let mut z: Vec<f64> = (1..=h.num_colors())
        .filter(|&c| c != e.color())
        .map(|c| {
            e.members()
                .iter()
                .map(|&v| x.node(v, c))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    z.sort_by(f64::total_cmp);
    Ok(z)
}

/// Monte Carlo estimate of the probability of a mistake at edge `j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub p: f64,
    pub stderr: f64,
    pub trials: usize,
}

/// Trial `t` uses its own generator seeded with `seed + t`, so the result
/// does not depend on thread scheduling.
pub fn estimate_mistake_prob(
    h: &EdgeColoredHypergraph,
    x: &EccLpSolution,
    interval: Interval,
    j: usize,
    trials: usize,
    seed: u64,
) -> Result<Estimate> {
    check_dims(h, x)?;
    if j >= h.num_edges() {
        return Err(EccError::InvalidArgument(format!("edge {j} out of range")));
    }
    if trials == 0 {
        return Err(EccError::InvalidArgument("need at least one trial".into()));
    }
    let e = h.edge(j);
    let k = h.num_colors();
    let hits: usize = (0..trials as u64)
        .into_par_iter()
        .filter(|&t| RoundingDraw::from_seed(k, interval, seed.wrapping_add(t)).mistake_at(x, e))
        .count();
    let p = hits as f64 / trials as f64;
    Ok(Estimate {
        p,
        stderr: (p * (1.0 - p) / trials as f64).sqrt(),
        trials,
    })
}

/// Counterexample families for interval lower endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SyntheticFamily {
    /// Edge `(0, 1)` of color 1 with `x_e = (1 - eps) / 2`; color 2 sits at
    /// `(1 + eps) / 2` from node 0 and color 3 at the same distance from
    /// node 1. Needs `k >= 3`.
    A { epsilon: f64, num_colors: u32 },
    /// Edge `(0, 1)` of color 1 with `x_e = 2/3`; node 0 is at 2/3 from
    /// colors 1, 2, 3 and node 1 from colors 1, 4, 5. Needs `k >= 5`.
    B { num_colors: u32 },
}

/// Single-edge instance with a hand-built feasible fractional solution;
/// every unnamed distance is 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticInstance {
    pub hypergraph: EdgeColoredHypergraph,
    pub solution: EccLpSolution,
}

pub fn make_synthetic_solution(family: SyntheticFamily) -> Result<SyntheticInstance> {
    let (k, near, far) = match family {
        SyntheticFamily::A {
            epsilon,
            num_colors,
        } => {
            if !(epsilon > 0.0 && epsilon < 1.0) {
                return Err(EccError::InvalidArgument(format!(
                    "epsilon must be in (0, 1), got {epsilon}"
                )));
            }
            if num_colors < 3 {
                return Err(EccError::InvalidArgument("family A needs k >= 3".into()));
            }
            let a = (1.0 - epsilon) / 2.0;
            let b = (1.0 + epsilon) / 2.0;
            (
                num_colors,
                vec![(0, 1, a), (1, 1, a), (0, 2, b), (1, 3, b)],
                a,
            )
        }
        SyntheticFamily::B { num_colors } => {
            if num_colors < 5 {
                return Err(EccError::InvalidArgument("family B needs k >= 5".into()));
            }
            let t = 2.0 / 3.0;
            let cells = vec![
                (0, 1, t),
                (0, 2, t),
                (0, 3, t),
                (1, 1, t),
                (1, 4, t),
                (1, 5, t),
            ];
            (num_colors, cells, t)
        }
    };
    let hypergraph = EdgeColoredHypergraph::new(2, k, vec![Edge::unit(vec![0, 1], 1)])?;
    let mut x_node = vec![1.0; 2 * k as usize];
    for (v, c, val) in near {
        x_node[v * k as usize + c as usize - 1] = val;
    }
    let solution = EccLpSolution::from_parts(&hypergraph, x_node, vec![far])?;
    solution.check_feasible(&hypergraph, 1e-12)?;
    Ok(SyntheticInstance {
        hypergraph,
        solution,
    })
}

/// One failed numeric check on a fractional solution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantViolation {
    pub edge: usize,
    pub check: String,
    pub lhs: f64,
    pub rhs: f64,
}

/// `1 - z_1 <= x_e` on every edge.
pub fn check_threshold_bound(
    h: &EdgeColoredHypergraph,
    x: &EccLpSolution,
    tol: f64,
) -> Result<Vec<InvariantViolation>> {
    let mut out = Vec::new();
    if h.num_colors() < 2 {
        return Ok(out);
    }
    for j in 0..h.num_edges() {
        let z = color_thresholds(h, x, j)?;
        let lhs = 1.0 - z[0];
        if lhs > x.edge(j) + tol {
            out.push(InvariantViolation {
                edge: j,
                check: "1 - z_1 <= x_e".into(),
                lhs,
                rhs: x.edge(j),
            });
        }
    }
    Ok(out)
}

/// `t <= x_e + z_t + ... + z_{2t-1}` for every integer `t <= k/2`, on edges
/// with at most two members.
pub fn check_threshold_sums(
    h: &EdgeColoredHypergraph,
    x: &EccLpSolution,
    tol: f64,
) -> Result<Vec<InvariantViolation>> {
    let mut out = Vec::new();
    let k = h.num_colors() as usize;
    for j in 0..h.num_edges() {
        if h.edge(j).len() > 2 {
            continue;
        }
        let z = color_thresholds(h, x, j)?;
        for t in 1..=k / 2 {
            // z_i is z[i - 1]
            let rhs = x.edge(j) + z[t - 1..2 * t - 1].iter().sum::<f64>();
            if (t as f64) > rhs + tol {
                out.push(InvariantViolation {
                    edge: j,
                    check: format!("t={t}: t <= x_e + z_t + ... + z_(2t-1)"),
                    lhs: t as f64,
                    rhs,
                });
            }
        }
    }
    Ok(out)
}
