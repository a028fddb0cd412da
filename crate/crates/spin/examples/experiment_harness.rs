//! Drives the CSV-producing experiment harness directly from code (the same
//! entry point the `spin` binary uses) and shows that reruns with the same
//! configuration are byte-identical.

use spin_recovery::experiments::{run, ExperimentSpec, Scenario};

fn main() -> spin_recovery::Result<()> {
    let base = std::env::temp_dir().join("spin_experiment_harness");

    let mut spec = ExperimentSpec::defaults(Scenario::PulseImpulse);
    spec.n = 1000;
    spec.m = 80;
    spec.kprime = 5;
    spec.trials = 4;
    spec.master_seed = 7;

    for run_dir in ["first", "second"] {
        spec.out_dir = base.join(run_dir);
        run(&spec)?;
    }

    let a = std::fs::read(base.join("first/trials.csv"))?;
    let b = std::fs::read(base.join("second/trials.csv"))?;
    println!("reruns byte-identical: {}", a == b);

    let text = String::from_utf8_lossy(&a);
    for line in text.lines().take(3) {
        println!("{line}");
    }
    println!("... artifacts in {}", base.display());
    Ok(())
}
