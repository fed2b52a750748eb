use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde_json::json;

use mdp_gpi::bench::{
    generate_random_mdp, run_async_comparison, run_grid, updates_to_reach, write_bench_csv, ExperimentGrid,
};
use mdp_gpi::geometry::{
    add_boundary_family, build_arrangement, export_lp, line_theorem_check, sample_polytope, sample_polytope_with_cap,
    sample_stochastic_policy, verify_boundary_membership_with, vertex_check, Alpha, BoundaryOptions,
    BOUNDARY_FAMILY_PER_SEGMENT, DEFAULT_DETERMINISTIC_CAP,
};
use mdp_gpi::io::{load_mdp, mdp_to_json};
use mdp_gpi::{run_solver, DeterministicPolicy, Mdp, RunConfig, SolverOptions};

use crate::{BenchArgs, Command, GenerateArgs, GeometryCommand, SolveArgs, Status};

pub fn run(command: Command) -> Result<Status> {
    match command {
        Command::Solve(args) => solve(args),
        Command::Bench(args) => bench(args),
        Command::Geometry { action } => geometry(action),
        Command::Validate { input } => validate(&input),
        Command::Generate(args) => generate(args),
    }
}

fn load(path: &Path) -> Result<Mdp<f64>> {
    load_mdp(path).with_context(|| format!("cannot load model {}", path.display()))
}

/// Fails early if `path` cannot be created.
fn check_output(path: &Path) -> Result<()> {
    if path.is_dir() {
        bail!("output path {} is a directory", path.display());
    }
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() && !parent.is_dir() {
            bail!("output directory {} does not exist", parent.display());
        }
    }
    Ok(())
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn solve(args: SolveArgs) -> Result<Status> {
    if let Some(p) = &args.out {
        check_output(p)?;
    }
    let mut mdp = load(&args.input)?;
    if let Some(g) = args.gamma {
        mdp = Mdp::from_flat(
            mdp.n_states(),
            mdp.n_actions(),
            g,
            mdp.rewards_flat().to_vec(),
            mdp.transitions_flat().to_vec(),
        )?;
    }
    let mut config = RunConfig {
        options: SolverOptions {
            refresh_every: args.refresh_every,
            max_iterations: args.max_iters,
            ..SolverOptions::default()
        },
        sequence_seed: args.seed,
        sequence_length: args.sequence_length,
        ..RunConfig::default()
    };
    if let Some(t) = args.tol {
        if !(t > 0.0) {
            bail!("--tol must be positive");
        }
        config.vi_tol = t;
    }
    let initial = DeterministicPolicy::constant(mdp.n_states(), 0);
    let report = run_solver(args.solver, &mdp, &initial, &config)?;
    let json = report.to_json();
    if args.quiet {
        if let Some(p) = &args.out {
            emit(Some(p), &json)?;
        }
    } else {
        emit(args.out.as_ref(), &format!("{json}\n"))?;
    }
    eprintln!(
        "{}: {} iterations, {} switches, mean value {:.10}, converged {}",
        report.solver,
        report.iterations,
        report.action_switches,
        report.mean_final_value(),
        report.converged
    );
    Ok(if report.converged { Status::Ok } else { Status::Numerical })
}

fn bench(args: BenchArgs) -> Result<Status> {
    check_output(&args.out)?;
    let seeds: Vec<u64> = (args.seed..args.seed + args.seeds).collect();
    if args.async_mode {
        return bench_async(&args, &seeds);
    }
    let mut grid = ExperimentGrid {
        state_sizes: args.states.clone(),
        action_sizes: args.actions.clone(),
        gamma: args.gamma,
        seeds,
        async_sequence_length: args.sequence_length,
        spi_max_states: Some(args.spi_max_states),
        random_initial: args.random_initial,
        ..ExperimentGrid::standard()
    };
    if let Some(s) = &args.solvers {
        grid.solvers = s.clone();
    }
    let records = run_grid(&grid, None)?;
    let file = fs::File::create(&args.out).with_context(|| format!("cannot write {}", args.out.display()))?;
    write_bench_csv(&records, file)?;
    let unconverged = records.iter().filter(|r| !r.converged).count();
    eprintln!("{} records written to {}, {unconverged} not converged", records.len(), args.out.display());
    Ok(if unconverged == 0 { Status::Ok } else { Status::Numerical })
}

fn bench_async(args: &BenchArgs, seeds: &[u64]) -> Result<Status> {
    let mut jobs = Vec::new();
    for &n in &args.states {
        for &m in &args.actions {
            for &seed in seeds {
                jobs.push((n, m, seed));
            }
        }
    }
    let single = jobs.len() == 1;
    let mut all_converged = true;
    println!("n_states,n_actions,seed,async_gpi_updates,async_vi_updates,trace_file");
    for (n, m, seed) in jobs {
        let len = args.sequence_length.unwrap_or(2000 * n);
        let c = run_async_comparison(n, m, args.gamma, seed, len)?;
        all_converged &= c.gpi.converged && c.vi.converged;
        let path = if single { args.out.clone() } else { suffixed(&args.out, n, m, seed) };
        let file = fs::File::create(&path).with_context(|| format!("cannot write {}", path.display()))?;
        c.write_csv(file)?;
        println!(
            "{n},{m},{seed},{},{},{}",
            updates_to_reach(&c.gpi.value_trace, 1e-4),
            updates_to_reach(&c.vi.value_trace, 1e-4),
            path.display()
        );
    }
    Ok(if all_converged { Status::Ok } else { Status::Numerical })
}

fn suffixed(path: &Path, n: usize, m: usize, seed: u64) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("async");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    path.with_file_name(format!("{stem}_s{n}_a{m}_seed{seed}.{ext}"))
}

fn generate(args: GenerateArgs) -> Result<Status> {
    if let Some(p) = &args.out {
        check_output(p)?;
    }
    if args.states == 0 || args.actions == 0 {
        bail!("--states and --actions must be positive");
    }
    let mdp = generate_random_mdp::<f64>(args.states, args.actions, args.gamma, args.seed)?;
    emit(args.out.as_ref(), &format!("{}\n", mdp_to_json(&mdp)))?;
    Ok(Status::Ok)
}

fn validate(input: &Path) -> Result<Status> {
    let mdp = load(input)?;
    let (lo, hi) = mdp.value_bounds();
    println!(
        "valid: {} states, {} actions, gamma {}, value range [{lo}, {hi}]",
        mdp.n_states(),
        mdp.n_actions(),
        mdp.gamma()
    );
    Ok(Status::Ok)
}

fn geometry(action: GeometryCommand) -> Result<Status> {
    match action {
        GeometryCommand::Sample {
            input,
            n,
            seed,
            deterministic,
            boundary_family,
            out,
        } => {
            if let Some(p) = &out {
                check_output(p)?;
            }
            let mdp = load(&input)?;
            let mut sample = sample_polytope(&mdp, n, seed, deterministic)?;
            if boundary_family {
                add_boundary_family(&mdp, &mut sample, BOUNDARY_FAMILY_PER_SEGMENT)?;
            }
            emit(out.as_ref(), &sample.to_csv())?;
            Ok(Status::Ok)
        }
        GeometryCommand::Arrangement { input, out } => {
            if let Some(p) = &out {
                check_output(p)?;
            }
            let mdp = load(&input)?;
            emit(out.as_ref(), &build_arrangement(&mdp).to_csv())?;
            Ok(Status::Ok)
        }
        GeometryCommand::Lp { input, alpha, out } => {
            if let Some(p) = &out {
                check_output(p)?;
            }
            let mdp = load(&input)?;
            let alpha = alpha.map_or(Alpha::Uniform, Alpha::Weights);
            emit(out.as_ref(), &export_lp(&mdp, alpha)?.to_cplex_lp())?;
            Ok(Status::Ok)
        }
        GeometryCommand::Check {
            input,
            mut line,
            boundary,
            mut vertex,
            n,
            k,
            seed,
            tol,
            out,
        } => {
            if let Some(p) = &out {
                check_output(p)?;
            }
            let mdp = load(&input)?;
            if boundary && mdp.n_states() != 2 {
                bail!(
                    "unsupported dimension: the boundary check needs a 2-state model, got {} states",
                    mdp.n_states()
                );
            }
            if !line && !boundary && !vertex {
                line = true;
                vertex = true;
            }
            let mut report = serde_json::Map::new();
            let mut passed = true;
            if line {
                let pi = sample_stochastic_policy::<f64>(mdp.n_states(), mdp.n_actions(), seed);
                let reports = (0..mdp.n_states())
                    .map(|s| line_theorem_check(&mdp, &pi, s, k, seed))
                    .collect::<mdp_gpi::Result<Vec<_>>>()?;
                passed &= reports.iter().all(|r| r.passed);
                let max = reports.iter().map(|r| r.max_distance).fold(0.0, f64::max);
                report.insert("line".into(), json!({ "max_distance": max, "states": reports }));
            }
            if boundary {
                let mut sample = sample_polytope_with_cap(&mdp, n, seed, true, DEFAULT_DETERMINISTIC_CAP)?;
                add_boundary_family(&mdp, &mut sample, BOUNDARY_FAMILY_PER_SEGMENT)?;
                let opts = BoundaryOptions {
                    tolerance: tol,
                    ..BoundaryOptions::default()
                };
                let rep = verify_boundary_membership_with(&sample, &build_arrangement(&mdp), &opts)?;
                passed &= rep.passed;
                report.insert("boundary".into(), serde_json::to_value(&rep)?);
            }
            if vertex {
                let rep = vertex_check(&mdp, DEFAULT_DETERMINISTIC_CAP)?;
                passed &= rep.passed;
                report.insert("vertex".into(), serde_json::to_value(&rep)?);
            }
            report.insert("passed".into(), json!(passed));
            emit(out.as_ref(), &format!("{}\n", serde_json::to_string_pretty(&report)?))?;
            Ok(if passed { Status::Ok } else { Status::Numerical })
        }
    }
}
