#![allow(dead_code)]

use flagcert::certificate::{slack_multipliers, Certificate, Problem, SlackTerm, LEVEL};
use flagcert::field::{rat, Matrix, QSqrt2, SymMatrixQ};
use flagcert::graph::{graphs_with_keys, ColoredGraph};
use rand::{rngs::StdRng, Rng, SeedableRng};

/// A certificate that is valid by construction: blocks are sums of a few
/// squared linear forms, slack coefficients are positive, and the target is
/// the resulting expansion plus a positive multiple of every level-6 graph.
pub fn synthetic_certificate(problem: Problem, seed: u64) -> Certificate {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut cert = Certificate::empty(problem).unwrap();
    for (b, block) in cert.blocks.iter_mut().enumerate() {
        let dim = block.matrix.dim();
        let r = 3;
        let mut outer = Matrix::zeros(r, dim);
        for i in 0..r {
            for j in 0..dim {
                if rng.gen_bool(0.3) {
                    outer.set(i, j, QSqrt2::from_rational(rat(rng.gen_range(-3..=3), rng.gen_range(1..=4))));
                }
            }
        }
        let mut core = Matrix::zeros(r, r);
        core.set(0, 0, QSqrt2::one());
        core.set(1, 1, QSqrt2::ratio(1, 2));
        core.set(2, 2, QSqrt2::one() + QSqrt2::sqrt2());
        let m = SymMatrixQ::factored(outer, core).unwrap();
        // Keep one block factored; the others carry only their dense value.
        block.matrix = if b == 1 { m } else { m.factored_value() };
    }
    let multipliers = slack_multipliers(problem).unwrap();
    for k in 0..2 {
        let g = multipliers[rng.gen_range(0..multipliers.len())].clone();
        cert.slacks.push(SlackTerm { coeff: QSqrt2::ratio(k + 1, 5), g1: g, g2: ColoredGraph::empty(0) });
    }
    let mut target = cert.expansion().unwrap();
    for (key, _) in graphs_with_keys(LEVEL, problem.family()).unwrap().iter() {
        target.add_term(key.clone(), QSqrt2::from_rational(rat(rng.gen_range(1..=9), 1000)));
    }
    cert.target = target;
    cert.fill_c_from_target().unwrap();
    cert
}
