//! Coefficient feasibility, the derived rate, and the sampled contraction
//! inequality for the x/12, x/3 system.
use vsmetric::maps::example_4_2_system;
use vsmetric::prelude::*;

fn main() -> Result<()> {
    let s = VectorSMetric::sum_abs(CarrierSpace::unit_interval());
    let m = example_4_2_system();
    let sampling = Sampling::new(10_000, 1);

    for h1 in [0.25, 0.2] {
        let c = ContractionCoefficients::new(h1, 0.0, 0.0, 0.0, 0.0)?;
        let report = check_inequality(&s, &m, &c, &sampling)?;
        println!(
            "h1 = {h1}: weighted sum {}, rate {}, inequality holds on {} samples: {}",
            c.weighted_sum(),
            c.rate()?,
            report.checked,
            report.passed
        );
        if let Some(w) = report.witness {
            println!(
                "  witness xi = {}, gamma = {}, lhs {:?} > rhs {:?}",
                w.xi, w.gamma, w.lhs, w.rhs
            );
        }
    }

    let bad = ContractionCoefficients::new(0.5, 0.0, 0.0, 0.0, 0.0)?;
    println!("h1 = 0.5: {}", bad.require_feasible().unwrap_err());
    Ok(())
}
