// A reduced benchmark: four methods on a handful of small trials.
//
// The full-size run is `hdlingam bench --seed 7 --csv r.csv --summary s.json`.

use hdlingam::{run_trials, BenchConfig, BenchReport, DegreeChoice, GeneratorConfig, Target};

pub fn run_example() -> hdlingam::Result<BenchReport> {
    let cfg = BenchConfig {
        generator: GeneratorConfig {
            p: 20,
            n: 15,
            expected_degree: DegreeChoice::Fixed { degree: 2.0 },
            seed: 7,
            ..GeneratorConfig::default()
        },
        trials: 5,
        ..BenchConfig::default()
    };
    let report = run_trials(&cfg)?;
    println!("{:<13} {:<7} {:>9} {:>9}", "method", "target", "accuracy", "coverage");
    for s in report.summary.iter().filter(|s| s.target == Target::Direct) {
        let med = |m: Option<f64>| m.map_or("n/a".into(), |v| format!("{v:.3}"));
        println!(
            "{:<13} {:<7} {:>9} {:>9}",
            s.method.name(),
            s.target.name(),
            med(s.accuracy.median()),
            med(s.coverage.median())
        );
    }
    Ok(report)
}

#[allow(dead_code)]
fn main() -> hdlingam::Result<()> {
    run_example().map(|_| ())
}
