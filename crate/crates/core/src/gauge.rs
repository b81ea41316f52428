use serde::{Deserialize, Serialize};

use crate::lattice::LatticeElement;

/// Scalar size of a lattice value.
///
/// Both rules are monotone on the positive cone (`0 ⪯ x ⪯ y` implies
/// `gauge(x) <= gauge(y)`), vanish only at zero, and are the finite stand-in
/// for order convergence: a gauge below `tol` certifies that the value is
/// order-small in these finite lattices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gauge {
    #[default]
    MaxAbs,
    SumAbs,
}

impl Gauge {
    pub fn measure(&self, x: &LatticeElement) -> f64 {
        let abs = x.coords().iter().map(|c| c.abs());
        match self {
            Gauge::MaxAbs => abs.fold(0.0, f64::max),
            Gauge::SumAbs => abs.sum(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeSpace;

    #[test]
    fn gauges_on_positive_cone() {
        let s = LatticeSpace::vector(3).unwrap();
        let x = s.element(vec![0.5, 0.0, 2.0]).unwrap();
        let y = s.element(vec![1.0, 0.25, 2.0]).unwrap();
        for g in [Gauge::MaxAbs, Gauge::SumAbs] {
            assert_eq!(g.measure(&s.zero()), 0.0);
            assert!(g.measure(&x) <= g.measure(&y));
        }
        assert_eq!(Gauge::MaxAbs.measure(&x), 2.0);
        assert_eq!(Gauge::SumAbs.measure(&y), 3.25);
    }
}
