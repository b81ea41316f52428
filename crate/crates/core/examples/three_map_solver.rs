//! Alternating iteration for p = x/10, q = x/8, k = x/2, the coincidence
//! point it finds, and a multi-start uniqueness check.
use vsmetric::prelude::*;

fn main() -> Result<()> {
    let unit = CarrierSpace::unit_interval();
    let s = VectorSMetric::sum_abs(unit.clone());
    let m = MapSystem::new(
        unit,
        SelfMap::divide_by(10.0),
        SelfMap::divide_by(8.0),
        SelfMap::divide_by(2.0),
    )?;
    let c = ContractionCoefficients::new(0.3, 0.1, 0.0, 0.0, 0.0)?;
    let cfg = IterationConfig::default();

    let trace = iterate(&s, &m, &c, 0.9, &cfg)?;
    println!(
        "verdict {} after {} steps, rate {}",
        trace.verdict.as_str(),
        trace.iterations(),
        trace.rate
    );
    for (b, (r, d)) in trace
        .residuals
        .iter()
        .zip(&trace.bounds)
        .enumerate()
        .take(6)
    {
        println!("  b = {b}: residual {r:.3e} <= bound {d:.3e}");
    }
    let pc = point_of_coincidence(&s, &m, &trace, cfg.tol)?;
    println!(
        "coincidence at omega = {:.3e} (confirmed {})",
        pc.omega, pc.confirmed
    );

    let sampling = Sampling::new(1_000, 3);
    for pair in [MapPair::PK, MapPair::QK] {
        println!(
            "{pair:?} weakly compatible: {}",
            weak_compatibility_check(&m, pair, &sampling, cfg.tol)?
        );
    }

    let report = uniqueness_probe(&s, &m, &c, &cfg, &[0.0, 0.3, 0.6, 1.0])?;
    println!("uniqueness: {:?}", report.verdict);

    let mut csv = Vec::new();
    trace.write_csv(&mut csv)?;
    print!(
        "{}",
        String::from_utf8_lossy(&csv)
            .lines()
            .take(3)
            .collect::<Vec<_>>()
            .join("\n")
    );
    println!();
    Ok(())
}
