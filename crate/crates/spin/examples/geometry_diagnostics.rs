//! Samples the geometric quantities that govern recovery — manifold
//! incoherence, restricted isometry of the operator over the sum family, and
//! mutual coherence of a basis pair — then plugs them into the closed-form
//! convergence constants and measurement budget.

use spin_recovery::{
    convergence_constants, estimate_incoherence, estimate_rip_sum, iteration_bound,
    mutual_coherence, recovery_condition, suggest_measurements, ManifoldModel,
    MeasurementOperator, OrthonormalBasis,
};

fn main() -> spin_recovery::Result<()> {
    let n = 64;
    let manifold_a = ManifoldModel::sparse(n, 2)?;
    let manifold_b = ManifoldModel::sparse_in_basis(OrthonormalBasis::walsh_hadamard(n)?, 2)?;

    let eps = estimate_incoherence(&manifold_a, &manifold_b, 200, 0)?;
    println!("sampled incoherence  epsilon >= {:.4} ({} pairs)", eps.value, eps.sample_count);

    let phi = MeasurementOperator::gaussian(32, n, 1);
    let rip = estimate_rip_sum(&phi, &manifold_a, &manifold_b, 200, 2)?;
    println!("sampled isometry     delta   >= {:.4} ({} secants)", rip.value, rip.sample_count);

    let mu = mutual_coherence(
        &OrthonormalBasis::canonical(n),
        &OrthonormalBasis::walsh_hadamard(n)?,
    )?;
    println!("mutual coherence     mu = {mu:.4} (= 1/sqrt(N))");

    // The sufficient condition and constants use the true supremum values;
    // the sampled estimates above are lower bounds on those.
    for (delta, epsilon) in [(0.2, 0.02), (0.1, 0.05), (0.4, 0.05)] {
        let ok = recovery_condition(delta, epsilon);
        print!("delta={delta}, epsilon={epsilon}: condition holds = {ok}");
        match convergence_constants(delta, epsilon) {
            Ok(c) => {
                let iters = iteration_bound(100.0, 1e-6, c.alpha);
                println!(
                    ", alpha={:.3}, beta={:.3}, <= {iters} iterations to psi <= 1e-6",
                    c.alpha, c.beta
                );
            }
            Err(e) => println!(" ({e})"),
        }
    }

    let budget = suggest_measurements(2, 2, n, 1.0);
    println!("suggested measurement count for this pair: {budget}");
    Ok(())
}
