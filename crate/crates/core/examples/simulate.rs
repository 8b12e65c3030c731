// Generate one benchmark dataset, write it as CSV and its ground truth as
// JSON, and read the CSV back.

use hdlingam::io::{read_dataset_path, write_dataset_path, write_json_path, GroundTruthOutput};
use hdlingam::{synthesize, trial_rng, GeneratorConfig};

pub fn run_example() -> hdlingam::Result<usize> {
    let cfg = GeneratorConfig { p: 50, n: 30, seed: 11, ..GeneratorConfig::default() };
    let trial = 0;
    let (data, truth) = synthesize(&cfg, &mut trial_rng(cfg.seed, 2 * trial as u64))?;
    let edges = hdlingam::effects::count_nonzero(&truth.b_true);
    println!(
        "p = {}, n = {}, expected degree {}, {edges} edges",
        data.n_vars(),
        data.n_samples(),
        truth.expected_degree
    );

    let dir = std::env::temp_dir().join(format!("hdlingam-simulate-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let csv = dir.join("data.csv");
    write_dataset_path(&csv, &data, None)?;
    write_json_path(&dir.join("truth.json"), &GroundTruthOutput::new(&cfg, trial, &data, &truth))?;
    let back = read_dataset_path(&csv, false)?;
    assert_eq!(back, data);
    println!("wrote {}", dir.display());
    std::fs::remove_dir_all(&dir)?;
    Ok(edges)
}

#[allow(dead_code)]
fn main() -> hdlingam::Result<()> {
    run_example().map(|_| ())
}
