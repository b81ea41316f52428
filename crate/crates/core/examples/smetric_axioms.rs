//! Verifies the S-metric axioms for catalog metrics and shows the shrunk
//! counterexample for a rule that is not an S-metric.
use vsmetric::prelude::*;

fn main() -> Result<()> {
    let sampling = Sampling::new(10_000, 42);
    let unit = CarrierSpace::unit_interval();

    let sum_abs = VectorSMetric::sum_abs(unit.clone());
    let r2_max = max_construction(&VectorSMetric::sum_abs_in(
        CarrierSpace::interval(-1.0, 1.0)?,
        LatticeSpace::vector(2)?,
    ));

    for s in [&sum_abs, &r2_max] {
        let report = verify_axioms(s, &sampling)?;
        println!(
            "{}: all passed = {}, symmetric = {}",
            report.metric,
            report.all_passed(),
            symmetry_check(s, &sampling)?
        );
    }

    let constant = VectorSMetric::scalar("constant_one", unit.clone(), |_, _, _| 1.0);
    let report = verify_axioms(&constant, &sampling)?;
    println!(
        "{}: identity axiom counterexample {:?}",
        report.metric, report.identity.counterexample
    );

    let squared = VectorSMetric::scalar("squared", unit, |x, _, z| (x - z).powi(2));
    let report = verify_axioms(&squared, &sampling)?;
    println!(
        "{}: tetrahedral counterexample (x, y, z, a) = {:?}",
        report.metric, report.tetrahedral.counterexample
    );
    Ok(())
}
