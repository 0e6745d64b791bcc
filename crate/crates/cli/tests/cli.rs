use std::path::Path;
use std::process::Command;

fn run(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_phlandmarks")).args(args).output().unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn fails(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_phlandmarks")).args(args).output().unwrap();
    assert!(!out.status.success(), "{args:?} unexpectedly succeeded");
    String::from_utf8(out.stderr).unwrap()
}

const SWEEP: &[&str] = &[
    "sweep", "--dataset", "sphere-laplace", "--n", "400", "--p", "0.6", "--method", "ph", "--mode", "dim1",
    "--delta", "0.3", "--densities", "0.1,0.5,1.0", "--reps", "3", "--seed", "17",
];

#[test]
fn sweep_is_identical_across_runs_and_threads() {
    let one = run(&[SWEEP, &["--threads", "1"]].concat());
    let again = run(&[SWEEP, &["--threads", "1"]].concat());
    let four = run(&[SWEEP, &["--threads", "4"]].concat());
    assert_eq!(one, again);
    assert_eq!(one, four);
    let lines: Vec<&str> = one.lines().collect();
    assert_eq!(lines[0], "dataset,n,p,seed,selector,realizations,density,m,mean_fraction,std_population");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("sphere-laplace,400,"));
}

#[test]
fn gen_then_select_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("cube.csv");
    let data_s = data.to_str().unwrap();
    run(&["gen", "--dataset", "sphere-cube", "--n", "200", "--seed", "3", "--out", data_s]);
    let text = std::fs::read_to_string(&data).unwrap();
    assert!(text.starts_with("# kind=sphere-cube n=200 "));
    assert_eq!(text.lines().count(), 202);

    let sel = run(&["select", "--input", data_s, "--method", "maxmin", "--m", "10", "--seed", "1"]);
    let rows: Vec<&str> = sel.lines().collect();
    assert_eq!(rows[0], "rank,index,label,score");
    assert_eq!(rows.len(), 11);
    assert!(rows[1..].iter().all(|r| r.ends_with(",signal,") || r.ends_with(",noise,")));
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "dataset = \"torus\"\nn = 150\nmethod = \"random\"\ndensities = [0.2, 0.4]\nreps = 2\n").unwrap();
    let cfg_s = cfg.to_str().unwrap();
    let from_file = run(&["sweep", "--config", cfg_s]);
    assert!(from_file.lines().nth(1).unwrap().starts_with("torus,150,"));
    let overridden = run(&["sweep", "--config", cfg_s, "--n", "120"]);
    assert!(overridden.lines().nth(1).unwrap().starts_with("torus,120,"));

    std::fs::write(&cfg, "colour = \"red\"\n").unwrap();
    fails(&["sweep", "--config", cfg_s]);
}

#[test]
fn delta_sweep_hist_and_barcode() {
    let d = run(&["delta-sweep", "--dataset", "sphere-cube", "--n", "300", "--deltas", "0.05,0.1,0.2,0.4"]);
    let counts: Vec<usize> = d.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(counts.len(), 4);
    assert!(counts.windows(2).all(|w| w[1] <= w[0]));

    let h = run(&["hist", "--dataset", "sphere-cube", "--n", "300", "--delta", "0.2", "--bin-width", "0.05"]);
    let rows: Vec<&str> = h.lines().collect();
    assert_eq!(rows[0], "bin,bin_lo,bin_hi,signal,noise");
    assert!(rows.last().unwrap().starts_with("super-outlier,,,"));
    let total: usize = rows[1..]
        .iter()
        .map(|r| r.split(',').skip(3).map(|c| c.parse::<usize>().unwrap()).sum::<usize>())
        .sum();
    assert_eq!(total, 300);

    let b = run(&[
        "barcode", "--dataset", "torus", "--n", "300", "--method", "maxmin", "--m", "60", "--eps-max", "1.5",
        "--dims", "0,1",
    ]);
    let rows: Vec<&str> = b.lines().collect();
    assert_eq!(rows[0], "dim,birth,death");
    assert!(rows.iter().any(|r| r.starts_with("0,") && r.ends_with(",inf")));
}

#[test]
fn barcode_guard_and_bad_input() {
    let err = fails(&["barcode", "--n", "1000", "--method", "random", "--m", "500"]);
    assert!(err.contains("cap"), "{err}");
    fails(&["sweep", "--dataset", "moebius"]);
    fails(&["select", "--method", "ph", "--mode", "dim3"]);
    fails(&["select", "--input", Path::new("/nonexistent/x.csv").to_str().unwrap()]);
}
