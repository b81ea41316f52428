//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vsmetric::maps::example_4_2_system;
use vsmetric::prelude::*;
use vsmetric::smetric::symmetry_witness;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn unit() -> CarrierSpace {
    CarrierSpace::unit_interval()
}

fn sum_abs() -> VectorSMetric {
    VectorSMetric::sum_abs(unit())
}

fn h1_only(h1: f64) -> ContractionCoefficients {
    ContractionCoefficients::new(h1, 0.0, 0.0, 0.0, 0.0).unwrap()
}

fn random_starts(seed: u64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(0.0..=1.0)).collect()
}

fn system_3() -> MapSystem {
    MapSystem::new(
        unit(),
        SelfMap::divide_by(10.0),
        SelfMap::divide_by(8.0),
        SelfMap::divide_by(2.0),
    )
    .unwrap()
}

fn criterion_1() -> Check {
    let s = sum_abs();
    let m = example_4_2_system();
    let c = h1_only(1.0 / 3.0);
    let g = IntegralGauge::new(Density::One);
    let theta = IntegralRate::from_coefficients(&c).map_err(err)?.theta;
    let cfg = IterationConfig::default();
    let started = Instant::now();
    let mut worst_ratio_err = 0.0f64;
    let mut max_iters = 0;
    for x0 in random_starts(2024, 10) {
        let trace = iterate_integral(&s, &m, &c, &g, x0, &cfg).map_err(err)?;
        ensure(
            trace.converged(),
            format!("x0 = {x0}: {}", trace.verdict.as_str()),
        )?;
        let limit = trace.limit.unwrap();
        ensure(limit.abs() < 1e-9, format!("x0 = {x0}: limit {limit:e}"))?;
        ensure(
            trace.iterations() < 50,
            format!("x0 = {x0}: {} iterations", trace.iterations()),
        )?;
        for r in trace.residual_ratios() {
            worst_ratio_err = worst_ratio_err.max((r - 0.25).abs());
            ensure(r <= theta, format!("ratio {r} above theta {theta}"))?;
        }
        max_iters = max_iters.max(trace.iterations());
    }
    let elapsed = started.elapsed();
    ensure(
        worst_ratio_err <= 1e-12,
        format!("ratio deviates from 1/4 by {worst_ratio_err:e}"),
    )?;
    ensure(elapsed.as_secs_f64() < 1.0, format!("took {elapsed:?}"))?;
    Ok(format!(
        "10 starts, max {max_iters} iterations, ratio 1/4 within {worst_ratio_err:.1e} <= theta = {theta:.6}, {elapsed:.2?}"
    ))
}

fn criterion_2() -> Check {
    let s = sum_abs();
    let m = example_4_2_system();
    let g = IntegralGauge::new(Density::One);
    let sampling = Sampling::new(10_000, 17);
    let started = Instant::now();
    let tight =
        check_integral_inequality(&s, &m.p, &m.k, &h1_only(0.25), &g, &sampling).map_err(err)?;
    let t_tight = started.elapsed();
    ensure(tight.passed, format!("c = 1/4 failed: {:?}", tight.witness))?;
    ensure(
        tight.checked == 10_000,
        format!("checked {}", tight.checked),
    )?;
    let mid = Instant::now();
    let loose =
        check_integral_inequality(&s, &m.p, &m.k, &h1_only(0.2), &g, &sampling).map_err(err)?;
    let t_loose = mid.elapsed();
    let w = loose.witness.ok_or("c = 0.2 passed without a witness")?;
    ensure(
        w.lhs[0] > w.rhs[0],
        "witness does not violate the inequality",
    )?;
    ensure(
        t_tight.as_secs_f64() < 1.0,
        format!("c = 1/4 run took {t_tight:?}"),
    )?;
    ensure(
        t_loose.as_secs_f64() < 1.0,
        format!("c = 0.2 run took {t_loose:?}"),
    )?;
    Ok(format!(
        "c = 1/4 holds on 10^4 pairs ({t_tight:.2?}); c = 0.2 witness (xi, gamma) = ({:.4}, {:.4}) ({t_loose:.2?})",
        w.xi, w.gamma
    ))
}

fn criterion_3() -> Check {
    let s = sum_abs();
    let m = system_3();
    let c = h1_only(0.3);
    let alpha = c.rate().map_err(err)?;
    ensure((alpha - 0.3).abs() < 1e-15, format!("rate {alpha}"))?;
    ensure((c.weighted_sum() - 0.6).abs() < 1e-15, "weighted sum")?;
    let cfg = IterationConfig::default();
    let mut worst_slack = f64::INFINITY;
    for x0 in random_starts(3, 10) {
        let trace = iterate(&s, &m, &c, x0, &cfg).map_err(err)?;
        let r0 = trace.residuals[0];
        for (b, r) in trace.residuals.iter().enumerate() {
            let bound = alpha.powi(b as i32) * r0 + 1e-12;
            ensure(
                *r <= bound,
                format!("x0 = {x0}, b = {b}: {r:e} > {bound:e}"),
            )?;
            worst_slack = worst_slack.min(bound - r);
        }
        ensure(
            trace.converged(),
            format!("x0 = {x0}: {}", trace.verdict.as_str()),
        )?;
        let limit = trace.limit.unwrap();
        ensure(limit.abs() < 1e-9, format!("x0 = {x0}: limit {limit:e}"))?;
    }
    Ok(format!(
        "r_b <= 0.3^b r_0 + 1e-12 at every step (min slack {worst_slack:.1e}), 10 starts converge to 0"
    ))
}

/// The contraction inequality itself for the criterion-3 maps. Reported
/// separately: with only h1 set it fails near the diagonal `ξ = γ`, where the
/// h1 term vanishes but `S(pξ, pξ, qξ) = ξ/20` does not.
fn criterion_3_sampler() -> (Check, Check) {
    let s = sum_abs();
    let m = system_3();
    let sampling = Sampling::new(10_000, 3);
    let stated = match check_inequality(&s, &m, &h1_only(0.3), &sampling) {
        Ok(r) => match r.witness {
            Some(w) => Err(format!(
                "c = (0.3, 0, 0, 0, 0) violated at (xi, gamma) = ({:.4}, {:.4}): lhs {:.3e} > rhs {:.3e}",
                w.xi, w.gamma, w.lhs[0], w.rhs[0]
            )),
            None => Ok("c = (0.3, 0, 0, 0, 0) holds on 10^4 pairs".into()),
        },
        Err(e) => Err(err(e)),
    };
    let c = ContractionCoefficients::new(0.3, 0.1, 0.0, 0.0, 0.0).unwrap();
    let corrected = match check_inequality(&s, &m, &c, &sampling) {
        Ok(r) if r.passed => Ok(format!(
            "c = (0.3, 0.1, 0, 0, 0) holds on 10^4 pairs (weighted sum {:.1}, rate {:.1})",
            c.weighted_sum(),
            c.rate().unwrap()
        )),
        Ok(r) => Err(format!("corrected c violated: {:?}", r.witness)),
        Err(e) => Err(err(e)),
    };
    (stated, corrected)
}

fn criterion_4() -> Check {
    let started = Instant::now();
    let sampling = Sampling::new(10_000, 4);
    let base = sum_abs();
    for s in [base.clone(), max_construction(&base)] {
        let r = verify_axioms(&s, &sampling).map_err(err)?;
        ensure(r.all_passed(), format!("{} failed: {r:?}", s.name()))?;
        let asym = symmetry_witness(&s, &sampling).map_err(err)?;
        ensure(
            asym.is_none(),
            format!("{} asymmetric at {asym:?}", s.name()),
        )?;
    }
    let broken = [
        VectorSMetric::scalar("constant_one", unit(), |_, _, _| 1.0),
        VectorSMetric::scalar("squared_xy", unit(), |x, y, _| (x - y).powi(2)),
        VectorSMetric::scalar("negated_perimeter", unit(), |x, y, z| {
            -((x - y).abs() + (y - z).abs() + (z - x).abs())
        }),
    ];
    let mut found = Vec::new();
    for s in &broken {
        let r = verify_axioms(s, &sampling).map_err(err)?;
        let which = [
            ("a", &r.nonnegativity),
            ("b", &r.identity),
            ("c", &r.tetrahedral),
        ]
        .into_iter()
        .find(|(_, o)| o.counterexample.is_some());
        let (axiom, outcome) = which.ok_or(format!("{} passed every axiom", s.name()))?;
        found.push(format!(
            "{} fails ({axiom}) at {:?}",
            s.name(),
            outcome.counterexample.as_ref().unwrap()
        ));
    }
    let elapsed = started.elapsed();
    ensure(elapsed.as_secs_f64() < 2.0, format!("took {elapsed:?}"))?;
    Ok(format!(
        "sum_abs and max_of(sum_abs) pass, symmetric on 10^4 pairs; {}; {elapsed:.2?}",
        found.join("; ")
    ))
}

fn criterion_5() -> Check {
    let s = sum_abs();
    let g = IntegralGauge::new(Density::One);
    let cfg = IterationConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut steps = Vec::new();
    for _ in 0..5 {
        let b: f64 = rng.gen_range(0.2..1.0);
        let a = b * rng.gen_range(0.05..0.4);
        let h1 = a / b + rng.gen_range(0.0..0.05);
        let rest = (0.999 - 2.0 * h1) / 2.0;
        let h = [
            h1,
            rest * rng.gen_range(0.0..0.3),
            rest * rng.gen_range(0.0..0.3),
            rest * rng.gen_range(0.0..0.1),
            rest * rng.gen_range(0.0..0.1),
        ];
        let c = ContractionCoefficients::from_array(h).map_err(err)?;
        ensure(
            c.is_feasible().map_err(err)?,
            format!("infeasible draw {h:?}"),
        )?;
        let m = MapSystem::two_map(unit(), SelfMap::affine(a, 0.0), SelfMap::affine(b, 0.0))
            .map_err(err)?;
        let x0 = rng.gen_range(0.0..=1.0);
        let integral = iterate_integral(&s, &m, &c, &g, x0, &cfg).map_err(err)?;
        let plain = iterate(&s, &m, &c, x0, &cfg).map_err(err)?;
        ensure(
            integral.xi == plain.xi && integral.gamma == plain.gamma,
            format!("sequences differ for p = {a}x, k = {b}x, x0 = {x0}"),
        )?;
        steps.push(plain.xi.len());
    }
    Ok(format!(
        "5 random systems, identical sequences of lengths {steps:?}"
    ))
}

fn criterion_6() -> Check {
    let linear = IntegralGauge::new(Density::Linear);
    let exp = IntegralGauge::new(Density::ExpDecay);
    ensure(
        linear.panels == 10_000 && exp.panels == 10_000,
        "default n_q is not 10^4",
    )?;
    let (mut lin_err, mut exp_err) = (0.0f64, 0.0f64);
    for i in 1..=20 {
        let t = i as f64 / 10.0;
        // The trapezoid rule has no truncation error on a linear integrand,
        // so "exact" means rounding only: at most 4 ulps of t².
        let e = (F(&linear, t).map_err(err)? - t * t).abs();
        ensure(
            e <= 4.0 * f64::EPSILON * t * t,
            format!("linear error {e:e} at t = {t}"),
        )?;
        lin_err = lin_err.max(e);
        exp_err = exp_err.max((F(&exp, t).map_err(err)? - (1.0 - (-t).exp())).abs());
    }
    ensure(exp_err <= 1e-8, format!("exp_decay error {exp_err:e}"))?;
    Ok(format!(
        "max error linear {lin_err:.1e} (rounding only), exp_decay {exp_err:.1e}"
    ))
}

fn criterion_7() -> Check {
    let s = sum_abs();
    let cfg = IterationConfig::default();
    let sampling = Sampling::new(10_000, 7);
    let starts = random_starts(7, 10);
    let systems = [
        ("x/12, x/3", example_4_2_system(), h1_only(1.0 / 3.0)),
        ("x/10, x/8, x/2", system_3(), h1_only(0.3)),
    ];
    for (name, m, c) in &systems {
        let report = uniqueness_probe(&s, m, c, &cfg, &starts).map_err(err)?;
        ensure(report.unique(), format!("{name}: {:?}", report.verdict))?;
        for pair in [MapPair::PK, MapPair::QK] {
            let wc = weak_compatibility_check(m, pair, &sampling, cfg.tol).map_err(err)?;
            ensure(wc, format!("{name}: {pair:?} not weakly compatible"))?;
        }
    }
    Ok("both systems unique from 10 starts; (p, k) and (q, k) weakly compatible".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 two-map integral example", criterion_1),
        ("2 inequality threshold", criterion_2),
        ("3 geometric domination", criterion_3),
        ("4 axiom suite", criterion_4),
        ("5 oracle equivalence", criterion_5),
        ("6 quadrature oracle", criterion_6),
        ("7 uniqueness and weak compatibility", criterion_7),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    // Not a criterion: the sampler result on the criterion-3 maps.
    let (stated, corrected) = criterion_3_sampler();
    match stated {
        Ok(d) => println!("note criterion 3 sampler: {d}"),
        Err(d) => println!("note criterion 3 sampler: {d}"),
    }
    match corrected {
        Ok(d) => println!("note criterion 3 sampler: {d}"),
        Err(d) => {
            failed += 1;
            println!("FAIL criterion 3 sampler: {d}");
        }
    }
    println!("acceptance: {} of 7 criteria passed", 7 - failed.min(7));
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
