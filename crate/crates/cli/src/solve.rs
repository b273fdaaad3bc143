use std::fs;
use std::time::Instant;

use anyhow::{Context, Result};
use ecc_core::combinatorial::{
    a_posteriori_ratio, hybrid_ordered, majority_vote, match_coloring, match_coloring_ordered,
    mv_lower_bound, pitt_coloring_ordered, LowerBoundBundle, VisitOrder,
};
use ecc_core::io::{parse_coloring, write_coloring};
use ecc_core::lp::EccLpSolution;
use ecc_core::oracle::{bruteforce_ecc, oracle_cap_from_env};
use ecc_core::rounding::{best_interval, gen_color_round, simple_round, Interval};
use ecc_core::{accuracy, objective_cost, EdgeColoredHypergraph, NodeColoring};
use rayon::prelude::*;

use crate::commands::{ecc_lp_solution, load_instance};
use crate::record::{RunRecord, CSV_HEADER};
use crate::{Algo, Format, SolveArgs};

/// Per-run settings shared by every trial.
struct Plan<'a> {
    algo: Algo,
    lp: Option<&'a EccLpSolution>,
    interval: Option<Interval>,
    shuffle: bool,
}

fn run_once(h: &EdgeColoredHypergraph, plan: &Plan, seed: u64) -> Result<NodeColoring> {
    let order = if plan.shuffle {
        VisitOrder::Shuffled(seed)
    } else {
        VisitOrder::Ascending
    };
    Ok(match plan.algo {
        Algo::Lp => {
            let x = plan.lp.expect("lp algo has a solution");
            gen_color_round(h, x, plan.interval.expect("lp algo has an interval"), seed)?
        }
        Algo::LpSimple => simple_round(plan.lp.expect("lp algo has a solution")),
        Algo::Pitt => pitt_coloring_ordered(h, seed, order).coloring,
        Algo::Match => match_coloring_ordered(h, order).coloring,
        Algo::Hybrid => hybrid_ordered(h, order).coloring,
        Algo::Mv => majority_vote(h),
        Algo::Exact => bruteforce_ecc(h, oracle_cap_from_env())?
            .coloring()
            .expect("ecc oracle returns a coloring")
            .clone(),
    })
}

/// Best of `runs` trials with seeds `seed + i`: lowest cost, ties to the
/// lowest seed.
fn best_of(
    h: &EdgeColoredHypergraph,
    plan: &Plan,
    seed: u64,
    runs: u64,
) -> Result<(u64, NodeColoring, f64)> {
    let trials: Vec<(u64, NodeColoring, f64)> = (0..runs)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_add(i);
            let y = run_once(h, plan, s)?;
            let c = objective_cost(h, &y)?.total_cost;
            Ok((s, y, c))
        })
        .collect::<Result<_>>()?;
    Ok(trials
        .into_iter()
        .min_by(|a, b| a.2.total_cmp(&b.2).then(a.0.cmp(&b.0)))
        .expect("runs >= 1"))
}

pub fn cmd_solve(args: &SolveArgs) -> Result<()> {
    anyhow::ensure!(args.runs >= 1, "--runs must be at least 1");
    let inst = load_instance(&args.input)?;
    let h = &inst.hypergraph;
    let truth = match &args.truth {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Some(
                parse_coloring(&text, h.num_colors())
                    .with_context(|| format!("parsing {}", p.display()))?,
            )
        }
        None => inst.truth.clone(),
    };
    let interval = match &args.interval {
        Some(s) => Some(Interval::parse(s)?),
        None if args.algo == Algo::Lp => {
            Some(best_interval(h.num_colors(), h.rank().max(2))?.interval)
        }
        None => None,
    };
    let lp_algo = matches!(args.algo, Algo::Lp | Algo::LpSimple);
    let wants_lp = lp_algo || args.with_lp_bound || args.lp_solution.is_some();
    let external = match &args.lp_solution {
        Some(p) => Some(ecc_lp_solution(h, Some(p))?),
        None => None,
    };
    // the LP solve counts toward the running time only for the LP algorithm
    let mut lp_outside = None;
    if wants_lp && external.is_none() && !lp_algo {
        lp_outside = Some(ecc_lp_solution(h, None)?);
    }

    let start = Instant::now();
    let lp_inside = if lp_algo && external.is_none() {
        Some(ecc_lp_solution(h, None)?)
    } else {
        None
    };
    let lp = external
        .as_ref()
        .or(lp_inside.as_ref())
        .or(lp_outside.as_ref());
    let plan = Plan {
        algo: args.algo,
        lp,
        interval,
        shuffle: args.shuffle || args.runs > 1,
    };
    let runs = if matches!(args.algo, Algo::Exact | Algo::LpSimple) {
        1
    } else {
        args.runs
    };
    let (seed, y, _) = best_of(h, &plan, args.seed, runs)?;
    let seconds = start.elapsed().as_secs_f64();

    let report = objective_cost(h, &y)?;
    let bounds = LowerBoundBundle {
        lp_bound: lp.map(|x| x.value),
        matching_bound: Some(match_coloring(h).matching_bound),
        mv_bound: Some(mv_lower_bound(h, &majority_vote(h))),
    };
    let record = RunRecord {
        dataset: args.dataset.clone().unwrap_or(inst.name.clone()),
        algo: args.algo.name().to_string(),
        seed,
        runs,
        mistakes: report.total_cost,
        satisfaction: report.edge_satisfaction,
        lp_bound: bounds.lp_bound,
        match_bound: bounds.matching_bound,
        mv_bound: bounds.mv_bound,
        ratio: a_posteriori_ratio(report.total_cost, &bounds),
        accuracy: truth.as_ref().map(|t| accuracy(&y, t)).transpose()?,
        seconds,
    };
    if let Some(p) = &args.coloring_out {
        fs::write(p, write_coloring(&y)).with_context(|| format!("writing {}", p.display()))?;
    }
    match args.format {
        Format::Csv => {
            if !args.no_header {
                println!("{CSV_HEADER}");
            }
            println!("{}", record.csv_row());
        }
        Format::Json => println!("{}", serde_json::to_string(&record)?),
        Format::Text => print!("{}", record.text()),
    }
    Ok(())
}
