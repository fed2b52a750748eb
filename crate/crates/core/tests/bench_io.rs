use mdp_gpi::bench::{
    generate_random_mdp, read_bench_csv, run_async_comparison, run_grid, ExperimentGrid,
};
use mdp_gpi::io::{load_mdp, mdp_from_json, mdp_to_json, save_mdp};
use mdp_gpi::{MdpError, SolverKind};

fn small_grid(solvers: Vec<SolverKind>) -> ExperimentGrid {
    ExperimentGrid {
        state_sizes: vec![8],
        action_sizes: vec![3],
        seeds: vec![5],
        solvers,
        ..ExperimentGrid::standard()
    }
}

#[test]
fn one_cell_grid_agrees_across_solvers_and_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bench.csv");
    let records = run_grid(&small_grid(vec![SolverKind::Pi, SolverKind::Gpi]), Some(&path)).unwrap();
    assert_eq!(records.len(), 2);
    assert!((records[0].mean_final_value - records[1].mean_final_value).abs() < 1e-7);
    assert!(records.iter().all(|r| r.converged));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with(
        "n_states,n_actions,seed,solver,iterations,action_switches,wall_time_ms,mean_final_value,converged\n"
    ));
    assert_eq!(read_bench_csv(&path).unwrap(), records);
}

#[test]
fn grid_is_reproducible_apart_from_wall_time() {
    let grid = ExperimentGrid {
        state_sizes: vec![5, 120],
        action_sizes: vec![2, 4],
        seeds: vec![0, 1, 2],
        solvers: SolverKind::ALL.to_vec(),
        ..ExperimentGrid::standard()
    };
    let strip = |mut rs: Vec<mdp_gpi::bench::BenchRecord>| {
        rs.iter_mut().for_each(|r| r.wall_time_ms = 0.0);
        rs
    };
    let a = strip(run_grid(&grid, None).unwrap());
    let b = strip(run_grid(&ExperimentGrid { parallel: false, ..grid.clone() }, None).unwrap());
    assert_eq!(a, b);
    // SPI is dropped above 100 states
    assert!(!a.iter().any(|r| r.solver == SolverKind::Spi && r.n_states == 120));
    assert!(a.iter().any(|r| r.solver == SolverKind::Spi && r.n_states == 5));
    for chunk in a.chunk_by(|x, y| (x.n_states, x.n_actions, x.seed) == (y.n_states, y.n_actions, y.seed)) {
        let m = chunk[0].mean_final_value;
        assert!(chunk.iter().filter(|r| r.converged).all(|r| (r.mean_final_value - m).abs() < 1e-6));
    }
}

#[test]
fn async_comparison_traces_end_together() {
    let c = run_async_comparison(30, 5, 0.9, 4, 60_000).unwrap();
    assert!(c.gpi.converged && c.vi.converged);
    assert!((c.gpi.mean_final_value() - c.vi.mean_final_value()).abs() < 1e-6);
    assert!(c.gpi.value_trace.windows(2).all(|w| w[1].mean >= w[0].mean - 1e-9));
    let mut buf = Vec::new();
    c.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("solver,update_index,mean_value"));
    assert!(lines.clone().any(|l| l.starts_with("async_gpi,")));
    assert!(lines.any(|l| l.starts_with("async_vi,")));
}

#[test]
fn json_round_trip_is_bit_exact() {
    let mdp = generate_random_mdp::<f64>(4, 3, 0.9, 1).unwrap();
    let back = mdp_from_json::<f64>(&mdp_to_json(&mdp)).unwrap();
    assert_eq!(back, mdp);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    save_mdp(&mdp, &path).unwrap();
    assert_eq!(load_mdp::<f64>(&path).unwrap(), mdp);
}

#[test]
fn invalid_models_name_the_broken_invariant() {
    let good = r#"{"n_states":1,"n_actions":2,"gamma":0.9,"rewards":[[1,0]],"transitions":[[[1.0],[1.0]]]}"#;
    assert!(mdp_from_json::<f64>(good).is_ok());
    let cases = [
        (good.replace("0.9", "1.0"), "discount"),
        (good.replace("[[[1.0],[1.0]]]", "[[[0.7],[1.0]]]"), "stochasticity"),
        (good.replace("[[[1.0],[1.0]]]", "[[[-1.0],[2.0]]]"), "nonnegativity"),
        (good.replace("\"n_actions\":2", "\"n_actions\":3"), "mismatch"),
    ];
    for (text, needle) in cases {
        let err = mdp_from_json::<f64>(&text).unwrap_err();
        assert!(err.to_string().contains(needle), "{err} should mention {needle}");
    }
    assert!(matches!(mdp_from_json::<f64>("{"), Err(MdpError::Json(_))));
}
