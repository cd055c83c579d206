//! The integer program for part sizes: maximize `ab` over nonnegative
//! `(a, b, c, d)` summing to `n` with `ab + bc + cd + C(d,2) > n²/4`.

use super::{edge_budget, Quadruple};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QpPoint {
    pub quadruple: Quadruple,
    /// `ab + bc + cd + C(d,2) − (⌊n²/4⌋ + 1)`, never negative.
    pub margin: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QpSolution {
    pub n: usize,
    /// Optimal `ab`; `None` when no quadruple is feasible.
    pub optimum: Option<u64>,
    /// Every maximizer, sorted by `(a, b, c)`.
    pub points: Vec<QpPoint>,
}

/// Edges of the blow-up as a function of `c` when `a`, `b` and
/// `s = c + d` are fixed.
fn edges_at(a: u64, b: u64, s: u64, c: u64) -> u64 {
    let d = s - c;
    a * b + b * c + c * d + d * d.saturating_sub(1) / 2
}

/// All maximizers of the program.
///
/// For fixed `a` and `b` the edge count rises with `c` up to `c = b`, is
/// flat from `b` to `b + 1`, and falls afterwards, so a pair `(a, b)` is
/// feasible iff `c = min(b, n − a − b)` is. Only optimal pairs get a full
/// scan over `c`.
pub fn solve_nextremal_qp(n: usize) -> QpSolution {
    let budget = edge_budget(n) as u64;
    let nn = n as u64;
    let mut best: Option<u64> = None;
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    for a in 0..=nn {
        for b in 0..=nn - a {
            let s = nn - a - b;
            if edges_at(a, b, s, b.min(s)) < budget {
                continue;
            }
            let ab = a * b;
            match best {
                Some(v) if ab < v => {}
                Some(v) if ab == v => pairs.push((a, b)),
                _ => {
                    best = Some(ab);
                    pairs = vec![(a, b)];
                }
            }
        }
    }
    let mut points = Vec::new();
    for (a, b) in pairs {
        let s = nn - a - b;
        for c in 0..=s {
            let e = edges_at(a, b, s, c);
            if e >= budget {
                points.push(QpPoint { quadruple: Quadruple::new(a as usize, b as usize, c as usize, (s - c) as usize), margin: e - budget });
            }
        }
    }
    points.sort_by_key(|p| p.quadruple);
    QpSolution { n, optimum: best, points }
}

/// Cubic exhaustive search over `(a, b, c)`; the reference for
/// [`solve_nextremal_qp`].
pub fn solve_nextremal_qp_naive(n: usize) -> QpSolution {
    let budget = edge_budget(n) as u64;
    let mut best: Option<u64> = None;
    let mut points = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            for c in 0..=n - a - b {
                let q = Quadruple::new(a, b, c, n - a - b - c);
                let e = q.edge_count();
                if e < budget {
                    continue;
                }
                let ab = (a * b) as u64;
                if best.is_some_and(|v| ab < v) {
                    continue;
                }
                if best != Some(ab) {
                    best = Some(ab);
                    points.clear();
                }
                points.push(QpPoint { quadruple: q, margin: e - budget });
            }
        }
    }
    QpSolution { n, optimum: best, points }
}

/// Lexicographically first maximizer; the part sizes used for the
/// blow-up construction at a given `n`.
pub fn default_quadruple(n: usize) -> Option<Quadruple> {
    solve_nextremal_qp(n).points.first().map(|p| p.quadruple)
}
