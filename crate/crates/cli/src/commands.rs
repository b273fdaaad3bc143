use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use ecc_core::certs::{all_cases, to_linear_program, verify_all};
use ecc_core::generate::{gen_integrality_gap, gen_random, gen_star, gen_uniform};
use ecc_core::io::{parse_benchmark, parse_canonical, write_canonical, write_coloring};
use ecc_core::lp::{
    build_ecc_lp, build_nodemc_lp, ecc_solution_from_primal, export_lp_text, import_primal,
    solve_ecc_lp, solve_with, EccLpSolution, LinearProgram, SolverOptions,
};
use ecc_core::reductions::{
    ecc_to_hyper_mc, ecc_to_node_mc, ecc_to_vertex_cover, vertex_cover_to_ecc, WeightedGraph,
};
use ecc_core::rounding::{check_threshold_bound, check_threshold_sums};
use ecc_core::{EdgeColoredHypergraph, NodeColoring};
use serde::Serialize;

use crate::exit;
use crate::{
    CompareArgs, ExportArgs, ExportWhat, Format, GenArgs, GenKind, InstanceArgs, ReduceArgs,
    Target, VerifyArgs,
};

pub struct Loaded {
    pub name: String,
    pub hypergraph: EdgeColoredHypergraph,
    pub truth: Option<NodeColoring>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn load_instance(args: &InstanceArgs) -> Result<Loaded> {
    let name = args
        .instance
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into());
    let edges = read(&args.instance)?;
    let ctx = || format!("parsing {}", args.instance.display());
    let (hypergraph, truth) = match &args.labels {
        Some(lp) => {
            let labels = read(lp)?;
            let node_labels = args.node_labels.as_deref().map(read).transpose()?;
            let b = parse_benchmark(&edges, &labels, node_labels.as_deref()).with_context(ctx)?;
            (b.hypergraph, b.truth)
        }
        None => {
            anyhow::ensure!(args.node_labels.is_none(), "--node-labels needs --labels");
            (parse_canonical(&edges).with_context(ctx)?, None)
        }
    };
    Ok(Loaded {
        name,
        hypergraph,
        truth,
    })
}

/// The ECC LP optimum, or the primal in `path` after snapping and
/// tightening.
pub fn ecc_lp_solution(h: &EdgeColoredHypergraph, path: Option<&Path>) -> Result<EccLpSolution> {
    match path {
        Some(p) => {
            let lp = build_ecc_lp(h);
            let x = import_primal(&lp, &read(p)?)
                .with_context(|| format!("parsing {}", p.display()))?;
            Ok(ecc_solution_from_primal(h, &x)?)
        }
        None => Ok(solve_ecc_lp(h)?),
    }
}

pub fn gen(args: &GenArgs) -> Result<()> {
    let (h, truth) = match args.kind {
        GenKind::Planted => {
            let p = gen_random(
                args.nodes,
                args.edges,
                args.max_size,
                args.colors,
                args.noise,
                args.seed,
            )?;
            (p.hypergraph, Some(p.truth))
        }
        GenKind::Uniform => (
            gen_uniform(
                args.nodes,
                args.edges,
                args.max_size,
                args.colors,
                args.seed,
            )?,
            None,
        ),
        GenKind::Gap => (gen_integrality_gap(args.colors)?, None),
        GenKind::Star => (gen_star(), None),
    };
    emit(args.output.as_deref(), &write_canonical(&h))?;
    if let Some(p) = &args.truth_out {
        let truth = truth.context("only planted instances have a truth coloring")?;
        emit(Some(p), &write_coloring(&truth))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct Comparison {
    ecc_lp: f64,
    nodemc_lp: f64,
    gap: f64,
}

fn solve_capped(lp: &LinearProgram, what: &str, max_vars: usize, instance: &Path) -> Result<f64> {
    if lp.num_vars() > max_vars {
        return Err(exit::capacity(format!(
            "the {what} LP has {} variables, above --max-vars {max_vars}; write it with `ecc export {} --what {}` and use an external solver",
            lp.num_vars(),
            instance.display(),
            if what == "MinECC" { "ecc-lp" } else { "nodemc-lp" },
        )));
    }
    let r = solve_with(lp, &SolverOptions::default());
    anyhow::ensure!(r.is_optimal(), "{what} LP: solver returned {}", r.status);
    Ok(r.value)
}

pub fn compare_lp(args: &CompareArgs) -> Result<()> {
    let inst = load_instance(&args.input)?;
    let h = &inst.hypergraph;
    let path = &args.input.instance;
    let ecc_lp = solve_capped(&build_ecc_lp(h), "MinECC", args.max_vars, path)?;
    let nodemc_lp = solve_capped(
        &build_nodemc_lp(h),
        "node multiway cut",
        args.max_vars,
        path,
    )?;
    let c = Comparison {
        ecc_lp,
        nodemc_lp,
        gap: ecc_lp - nodemc_lp,
    };
    match args.format {
        Format::Json => println!("{}", serde_json::to_string(&c)?),
        Format::Csv => println!(
            "ecc_lp,nodemc_lp,gap\n{},{},{}",
            c.ecc_lp, c.nodemc_lp, c.gap
        ),
        Format::Text => println!(
            "ecc_lp={} nodemc_lp={} gap={}",
            c.ecc_lp, c.nodemc_lp, c.gap
        ),
    }
    if nodemc_lp > ecc_lp + 1e-6 {
        return Err(exit::verification(format!(
            "node multiway cut LP {nodemc_lp} exceeds MinECC LP {ecc_lp}"
        )));
    }
    Ok(())
}

fn case_file_name(id: &str) -> String {
    format!("{}.lp", id.replace(' ', "_").replace('=', ""))
}

fn verify_certs(args: &VerifyArgs) -> Result<()> {
    if let Some(dir) = &args.emit_lp {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for case in all_cases() {
            let p = dir.join(case_file_name(&case.id.to_string()));
            fs::write(&p, export_lp_text(&to_linear_program(&case)))
                .with_context(|| format!("writing {}", p.display()))?;
        }
    }
    let report = verify_all()?;
    for c in &report.cases {
        println!(
            "{} bound={} {}",
            c.id,
            c.bound,
            if c.ok { "OK" } else { "FAILED" }
        );
    }
    println!(
        "{}/{} certificates verified, max bound {}",
        report.verified(),
        report.cases.len(),
        report.max_bound
    );
    if report.verified() != report.cases.len() {
        return Err(exit::verification("certificate check failed"));
    }
    Ok(())
}

/// Reads a primal exactly as written, without snapping or tightening.
fn raw_solution(h: &EdgeColoredHypergraph, path: &Path) -> Result<EccLpSolution> {
    let lp = build_ecc_lp(h);
    let x =
        import_primal(&lp, &read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let nk = h.num_nodes() * h.num_colors() as usize;
    Ok(EccLpSolution::from_parts(
        h,
        x[..nk].to_vec(),
        x[nk..].to_vec(),
    )?)
}

fn verify_invariants(path: &Path, args: &VerifyArgs) -> Result<()> {
    let h = parse_canonical(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let x = match &args.solution {
        Some(p) => raw_solution(&h, p)?,
        None => solve_ecc_lp(&h)?,
    };
    let mut failures = 0;
    if let Err(e) = x.check_feasible(&h, 1e-6) {
        println!("feasibility: {e}");
        failures += 1;
    }
    for (name, found) in [
        ("threshold bound", check_threshold_bound(&h, &x, args.tol)?),
        ("threshold sums", check_threshold_sums(&h, &x, args.tol)?),
    ] {
        if found.is_empty() {
            println!("{name}: ok on {} edges", h.num_edges());
        }
        for v in &found {
            println!(
                "{name}: edge {} violates {} ({} > {})",
                v.edge, v.check, v.lhs, v.rhs
            );
        }
        failures += found.len();
    }
    if failures > 0 {
        return Err(exit::verification(format!(
            "{failures} invariant violations"
        )));
    }
    Ok(())
}

pub fn verify(args: &VerifyArgs) -> Result<()> {
    if args.certs {
        verify_certs(args)?;
    }
    if let Some(path) = &args.invariants {
        verify_invariants(path, args)?;
    }
    Ok(())
}

pub fn reduce(args: &ReduceArgs) -> Result<()> {
    let text = read(&args.input)?;
    let ctx = || format!("parsing {}", args.input.display());
    let out = if args.to == Target::Ecc {
        let g = WeightedGraph::from_text(&text).with_context(ctx)?;
        write_canonical(&vertex_cover_to_ecc(&g)?.hypergraph)
    } else {
        let h = parse_canonical(&text).with_context(ctx)?;
        match args.to {
            Target::Vc => ecc_to_vertex_cover(&h).graph.to_text(),
            Target::NodeMc => ecc_to_node_mc(&h).graph.to_text(),
            Target::HyperMc => {
                let m = ecc_to_hyper_mc(&h);
                let mut s = format!(
                    "hmc {} {} {}\n",
                    m.num_nodes,
                    m.edges.len(),
                    m.terminals.len()
                );
                let ids =
                    |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
                let _ = writeln!(s, "t {}", ids(&m.terminals));
                for (e, w) in m.edges.iter().zip(&m.weights) {
                    let _ = writeln!(s, "{w} {}", ids(e));
                }
                s
            }
            Target::Ecc => unreachable!(),
        }
    };
    emit(args.output.as_deref(), &out)
}

pub fn export(args: &ExportArgs) -> Result<()> {
    let inst = load_instance(&args.input)?;
    let h = &inst.hypergraph;
    let out = match args.what {
        ExportWhat::EccLp => export_lp_text(&build_ecc_lp(h)),
        ExportWhat::NodemcLp => export_lp_text(&build_nodemc_lp(h)),
        ExportWhat::EccSolution => {
            let lp = build_ecc_lp(h);
            let x = solve_ecc_lp(h)?;
            let k = h.num_colors();
            let mut s = format!("# value {}\n", x.value);
            for v in 0..h.num_nodes() {
                for i in 1..=k {
                    let _ = writeln!(
                        s,
                        "{} {}",
                        lp.names[ecc_core::lp::ecc_node_var(k, v, i)],
                        x.node(v, i)
                    );
                }
            }
            for j in 0..h.num_edges() {
                let _ = writeln!(
                    s,
                    "{} {}",
                    lp.names[ecc_core::lp::ecc_edge_var(h, j)],
                    x.edge(j)
                );
            }
            s
        }
    };
    emit(args.output.as_deref(), &out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_files_are_path_safe() {
        assert_eq!(case_file_name("A q=1"), "A_q1.lp");
        assert_eq!(case_file_name("B p=5 q=10"), "B_p5_q10.lp");
    }
}
