//! Integral-gauge contraction: quadrature accuracy per density and the
//! gauged iteration for the x/12, x/3 system.
use vsmetric::maps::example_4_2_system;
use vsmetric::prelude::*;

fn main() -> Result<()> {
    for density in [Density::One, Density::Linear, Density::ExpDecay] {
        let g = IntegralGauge::new(density);
        let t = 1.5;
        println!("F_{}({t}) = {:.12}", density.name(), F(&g, t)?);
    }

    let s = VectorSMetric::sum_abs(CarrierSpace::unit_interval());
    let m = example_4_2_system();
    let c = ContractionCoefficients::new(1.0 / 3.0, 0.0, 0.0, 0.0, 0.0)?;
    println!("theta = {}", IntegralRate::from_coefficients(&c)?.theta);

    let sampling = Sampling::new(10_000, 5);
    for density in [Density::One, Density::Linear] {
        let g = IntegralGauge::new(density);
        let report = check_integral_inequality(&s, &m.p, &m.k, &c, &g, &sampling)?;
        let trace = iterate_integral(&s, &m, &c, &g, 1.0, &IterationConfig::default())?;
        let ratios = trace.residual_ratios();
        println!(
            "{}: inequality {}, {} after {} steps, first ratio {:.6}",
            density.name(),
            report.passed,
            trace.verdict.as_str(),
            trace.iterations(),
            ratios[0]
        );
    }
    Ok(())
}
