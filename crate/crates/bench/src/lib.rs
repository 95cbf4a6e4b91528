//! Fixed inputs shared by the benchmarks.

use miquel_core::{CartesianConfig, ExactRational, SingularConfig, TriangleMetric};

fn q(s: &str) -> ExactRational {
    s.parse().expect("fixture literals are valid rationals")
}

/// a² = 9, b² = 16, c² = 25, n = 1/5.
pub fn instance_one() -> SingularConfig<ExactRational> {
    let metric = TriangleMetric::new(q("9"), q("16"), q("25")).expect("right triangle");
    SingularConfig::new(metric, q("1/5")).expect("nondegenerate")
}

/// v = 0, w = 1, u = 1/2, h = 1, k = 1.
pub fn instance_two() -> CartesianConfig<ExactRational> {
    CartesianConfig::new(q("0"), q("1"), q("1/2"), q("1"), q("1")).expect("nondegenerate")
}
