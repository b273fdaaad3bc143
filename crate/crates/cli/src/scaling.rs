use std::hint::black_box;
use std::time::Instant;

use anyhow::Result;
use ecc_core::combinatorial::{hybrid, majority_vote, match_coloring, pitt_coloring};
use ecc_core::generate::gen_uniform;
use serde::Serialize;

use crate::exit;
use crate::{Format, ScalingAlgo, ScalingArgs};

const MAX_EDGE_SIZE: usize = 4;
const COLORS: u32 = 8;

#[derive(Debug, Serialize)]
struct Row {
    incidences: usize,
    edges: usize,
    seconds: f64,
}

#[derive(Debug, Serialize)]
struct Report {
    algo: &'static str,
    rows: Vec<Row>,
    slope: f64,
}

/// Least-squares slope of `ln y` against `ln x`.
fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

pub fn cmd_bench_scaling(args: &ScalingArgs) -> Result<()> {
    anyhow::ensure!(
        args.sizes.len() >= 2,
        "need at least two sizes to fit a slope"
    );
    anyhow::ensure!(args.reps >= 1, "--reps must be at least 1");
    let name = match args.algo {
        ScalingAlgo::Pitt => "pitt",
        ScalingAlgo::Match => "match",
        ScalingAlgo::Hybrid => "hybrid",
        ScalingAlgo::Mv => "mv",
    };
    let mean_size = (2 + MAX_EDGE_SIZE) as f64 / 2.0;
    let mut rows = Vec::new();
    for (i, &target) in args.sizes.iter().enumerate() {
        let m = ((target as f64 / mean_size).round() as usize).max(1);
        let n = if args.nodes == 0 { m / 2 } else { args.nodes };
        let h = gen_uniform(
            n.max(MAX_EDGE_SIZE),
            m,
            MAX_EDGE_SIZE,
            COLORS,
            args.seed + i as u64,
        )?;
        let mut best = f64::INFINITY;
        for _ in 0..args.reps {
            let start = Instant::now();
            match args.algo {
                ScalingAlgo::Pitt => drop(black_box(pitt_coloring(&h, args.seed))),
                ScalingAlgo::Match => drop(black_box(match_coloring(&h))),
                ScalingAlgo::Hybrid => drop(black_box(hybrid(&h))),
                ScalingAlgo::Mv => drop(black_box(majority_vote(&h))),
            }
            best = best.min(start.elapsed().as_secs_f64());
        }
        rows.push(Row {
            incidences: h.total_incidence(),
            edges: h.num_edges(),
            seconds: best,
        });
    }
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (r.incidences as f64, r.seconds.max(1e-9)))
        .collect();
    let report = Report {
        algo: name,
        slope: loglog_slope(&points),
        rows,
    };
    match args.format {
        Format::Json => println!("{}", serde_json::to_string(&report)?),
        Format::Csv => {
            println!("algo,incidences,edges,seconds");
            for r in &report.rows {
                println!("{},{},{},{:.6}", name, r.incidences, r.edges, r.seconds);
            }
        }
        Format::Text => {
            println!("{:>12} {:>10} {:>12}", "incidences", "edges", "seconds");
            for r in &report.rows {
                println!("{:>12} {:>10} {:>12.6}", r.incidences, r.edges, r.seconds);
            }
            println!("{name}: log-log slope {:.3}", report.slope);
        }
    }
    if let Some(max) = args.max_slope {
        if report.slope > max {
            return Err(exit::verification(format!(
                "slope {:.3} exceeds {max}",
                report.slope
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_laws() {
        let lin: Vec<(f64, f64)> = (1..6).map(|i| (i as f64 * 10.0, i as f64 * 3.0)).collect();
        assert!((loglog_slope(&lin) - 1.0).abs() < 1e-12);
        let quad: Vec<(f64, f64)> = (1..6).map(|i| (i as f64, (i * i) as f64)).collect();
        assert!((loglog_slope(&quad) - 2.0).abs() < 1e-12);
    }
}
