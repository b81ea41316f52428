//! Componentwise order in R^2, joins and meets, and the Archimedean probe.
use vsmetric::lattice::lemma_2_6_check;
use vsmetric::prelude::*;

fn main() -> Result<()> {
    let r2 = LatticeSpace::vector(2)?;
    let x = r2.element(vec![1.0, 0.0])?;
    let y = r2.element(vec![0.0, 1.0])?;

    println!("x = {:?}, y = {:?}", x.coords(), y.coords());
    println!("x <= y: {}, y <= x: {}", x.leq(&y)?, y.leq(&x)?);
    println!("x v y = {:?}", x.join(&y)?.coords());
    println!("x ^ y = {:?}", x.meet(&y)?.coords());

    let probe = archimedean_probe(&r2.element(vec![3.0, 1.0])?, 1000)?;
    println!(
        "(1/n)(3, 1): {} terms, decreasing = {}, final gauge = {:.3e}",
        probe.terms.len(),
        probe.decreasing,
        probe.final_gauge
    );

    let grid = LatticeSpace::grid(5)?;
    let f = grid.sample_function(|t| t * t);
    println!("t^2 on {grid}: {:?}", f.coords());

    for gamma in [0.0, 0.5, 0.99] {
        println!(
            "x <= {gamma}x forces x = 0: {}",
            lemma_2_6_check(&x, gamma)?
        );
    }
    Ok(())
}
