//! Two small optimization problems from the stability analysis, solved
//! exactly.

use num_traits::{One, Zero};

use crate::field::{rat, BigRational, QSqrt2};

/// `a² + (1 − a)²/2`, the edge density bound for a clique on a fraction
/// `a` next to a bipartite graph on the rest.
pub fn bipartite_objective(a: &BigRational) -> BigRational {
    let rest = BigRational::one() - a;
    a * a + &rest * &rest / rat(2, 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteOptimum {
    pub lower: BigRational,
    pub argmax: BigRational,
    pub value: BigRational,
    /// Value at the other end of the interval, strictly smaller.
    pub runner_up: BigRational,
}

/// Maximum of [`bipartite_objective`] on `[lower, 2/3]` for
/// `0 < lower < 2/3`. The objective is convex, so the maximum sits at an
/// endpoint.
pub fn bipartite_optimum(lower: &BigRational) -> BipartiteOptimum {
    let upper = rat(2, 3);
    assert!(*lower > BigRational::zero() && *lower < upper, "lower end must lie in (0, 2/3)");
    let at_lower = bipartite_objective(lower);
    let at_upper = bipartite_objective(&upper);
    assert!(at_lower != at_upper, "maximum is not unique");
    if at_upper > at_lower {
        BipartiteOptimum { lower: lower.clone(), argmax: upper, value: at_upper, runner_up: at_lower }
    } else {
        BipartiteOptimum { lower: lower.clone(), argmax: lower.clone(), value: at_lower, runner_up: at_upper }
    }
}

/// `2ab + 2bc + 2cd + d²`, the edge density of a blown-up path with a
/// looped end.
pub fn path_blowup_objective(a: &QSqrt2, b: &QSqrt2, c: &QSqrt2, d: &QSqrt2) -> QSqrt2 {
    let two = QSqrt2::from_int(2);
    &(&(&two * &(&(a * b) + &(b * c))) + &(&two * &(c * d))) + &(d * d)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathOptimum {
    pub point: [QSqrt2; 4],
    pub value: QSqrt2,
    /// `ab − (2 − √2)/16`; zero at the optimum.
    pub product_slack: QSqrt2,
}

/// The claimed optimum `((2−√2)/4, 1/4, 1/4, √2/4)` evaluated exactly.
pub fn path_optimum() -> PathOptimum {
    let quarter = QSqrt2::ratio(1, 4);
    let a = QSqrt2::new(rat(1, 2), rat(-1, 4));
    let d = QSqrt2::new(rat(0, 1), rat(1, 4));
    let value = path_blowup_objective(&a, &quarter, &quarter, &d);
    let bound = QSqrt2::new(rat(1, 8), rat(-1, 16));
    let product_slack = &(&a * &quarter) - &bound;
    PathOptimum { point: [a, quarter.clone(), quarter, d], value, product_slack }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSweep {
    pub steps: u32,
    /// Grid points with `ab > (2−√2)/16` and `d > 0`.
    pub feasible: u64,
    /// Best objective among them, and where (in grid units).
    pub best_value: BigRational,
    pub best_point: [u32; 4],
}

/// Evaluates the path objective on every point of `(1/steps)ℤ⁴` in the
/// simplex with `d > 0` and `ab > (2−√2)/16`, in integer arithmetic.
pub fn grid_sweep(steps: u32) -> GridSweep {
    let s = steps as i128;
    let mut feasible = 0u64;
    let mut best = (i128::MIN, [0u32; 4]);
    for i in 0..=s {
        for j in 0..=s - i {
            if !product_exceeds_bound(i * j, s) {
                continue;
            }
            for k in 0..s - i - j {
                let l = s - i - j - k;
                feasible += 1;
                let v = 2 * i * j + 2 * j * k + 2 * k * l + l * l;
                if v > best.0 {
                    best = (v, [i as u32, j as u32, k as u32, l as u32]);
                }
            }
        }
    }
    assert!(feasible > 0, "no feasible grid point at step 1/{steps}");
    GridSweep { steps, feasible, best_value: BigRational::new(best.0.into(), (s * s).into()), best_point: best.1 }
}

/// `p/s² > (2 − √2)/16`, i.e. `16p − 2s² > −√2·s²`.
fn product_exceeds_bound(p: i128, s: i128) -> bool {
    let lhs = 16 * p - 2 * s * s;
    if lhs >= 0 {
        return true;
    }
    // Both sides negative: compare squares with the inequality flipped.
    lhs * lhs < 2 * s * s * s * s
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityOptima {
    pub bipartite: BipartiteOptimum,
    pub path: PathOptimum,
    pub grid: GridSweep,
}

/// Both optima with lower end `1/200` for the bipartite interval and a
/// grid step of `1/200`.
pub fn stability_optimizers() -> StabilityOptima {
    StabilityOptima { bipartite: bipartite_optimum(&rat(1, 200)), path: path_optimum(), grid: grid_sweep(200) }
}
