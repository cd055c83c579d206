//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use itertools::Itertools;
use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use flagcert::certificate::{block_basis, emit_certificate, parse_certificate, verify, Problem};
use flagcert::extremal::{
    brute_force_min, construction_g2, default_quadruple, duality_check, edge_budget, f_formula, f_product, f_structural,
    f_table, g2_c5_edge_count, stability_optimizers,
};
use flagcert::field::{psd_check, rat, PsdVerdict, QSqrt2, SymMatrixQ};
use flagcert::flag::{expansion_rows, extend_level, flag_basis, graph_density, quadratic_form_expand, GraphCombo, TypeSigma};
use flagcert::graph::{cycle_edge_set, enumerate_colored_graphs, graphs_with_keys, pairs, ColoredGraph, EdgeColor, Family};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.1?}, limit {limit:?}"))
}

fn random_graph(rng: &mut StdRng, n: usize) -> ColoredGraph {
    let mut g = ColoredGraph::empty(n);
    for (i, j) in pairs(n) {
        g.set_color(i, j, EdgeColor::ALL[rng.gen_range(0..3)]);
    }
    g
}

/// Isomorphism by trying every bijection, with the first `fixed` vertices
/// of each graph pinned in order.
fn iso(a: &ColoredGraph, b: &ColoredGraph, fixed: usize) -> bool {
    let n = a.order();
    if n != b.order() || a.edge_count() != b.edge_count() || a.blue_edge_count() != b.blue_edge_count() {
        return false;
    }
    (fixed..n).permutations(n - fixed).any(|tail| {
        let p: Vec<usize> = (0..fixed).chain(tail).collect();
        pairs(n).all(|(i, j)| a.color(i, j) == b.color(p[i], p[j]))
    })
}

/// Induced `k`-vertex subgraphs of `g`, grouped into isomorphism classes.
fn brute_profile(g: &ColoredGraph, k: usize) -> Vec<(ColoredGraph, u64)> {
    let mut classes: Vec<(ColoredGraph, u64)> = Vec::new();
    for s in (0..g.order()).combinations(k) {
        let h = g.induced(&s);
        match classes.iter_mut().find(|(r, _)| iso(r, &h, 0)) {
            Some((_, c)) => *c += 1,
            None => classes.push((h, 1)),
        }
    }
    classes
}

fn brute_density(f: &ColoredGraph, profile: &[(ColoredGraph, u64)]) -> BigRational {
    let total: u64 = profile.iter().map(|(_, c)| c).sum();
    let hits: u64 = profile.iter().filter(|(h, _)| iso(f, h, 0)).map(|(_, c)| c).sum();
    BigRational::new(hits.into(), total.into())
}

fn basis_counts() -> Outcome {
    let start = Instant::now();
    let c5 = enumerate_colored_graphs(6, Family::Fc5).map_err(|e| e.to_string())?.len();
    let c7 = enumerate_colored_graphs(6, Family::Fc7).map_err(|e| e.to_string())?.len();
    ensure((c5, c7) == (756, 741), || format!("level 6: {c5} / {c7}"))?;
    for fam in [Family::Fc5, Family::Fc7] {
        let sizes: Vec<usize> = [TypeSigma::lambda(), TypeSigma::beta(), TypeSigma::rho()]
            .iter()
            .map(|s| flag_basis(s, 4, fam).map(|b| b.len()))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure(sizes == [76, 33, 43], || format!("{fam} flag bases {sizes:?}"))?;
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("756 / 741 graphs, bases 76 / 33 / 43 in {:.1?}", start.elapsed()))
}

fn chain_consistency() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(2);
    let lifted: Vec<Vec<(ColoredGraph, GraphCombo)>> = (1..=4)
        .map(|k| {
            graphs_with_keys(k, Family::Unrestricted)
                .unwrap()
                .iter()
                .map(|(_, f)| (f.clone(), extend_level(&GraphCombo::single(f), k + 1, Family::Unrestricted).unwrap()))
                .collect()
        })
        .collect();
    let mut checked = 0usize;
    for t in 0..100 {
        let g = random_graph(&mut rng, 7 + t % 2);
        for (k, level) in (1..=4).zip(&lifted) {
            let here = brute_profile(&g, k);
            let up = brute_profile(&g, k + 1);
            let up_total: u64 = up.iter().map(|(_, c)| c).sum();
            for (f, lift) in level {
                let lhs = brute_density(f, &here);
                let mut rhs = BigRational::zero();
                for (h, c) in &up {
                    rhs += brute_density(f, &brute_profile(h, k)) * BigRational::new((*c).into(), up_total.into());
                }
                ensure(lhs == rhs, || format!("chain fails for F = {f} in G = {g}"))?;
                ensure(graph_density(f, &g) == lhs, || format!("p({f}, {g}) disagrees with subset count"))?;
                let via = lift.evaluate(&g).map_err(|e| e.to_string())?;
                ensure(via == QSqrt2::from_rational(lhs), || format!("lifted {f} evaluates wrongly on {g}"))?;
                checked += 1;
            }
        }
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("{checked} (F, G) pairs exact"))
}

fn random_sym(rng: &mut StdRng, dim: usize, sparse: bool) -> SymMatrixQ {
    let upper = (0..dim * (dim + 1) / 2)
        .map(|_| {
            if sparse && rng.gen_bool(0.5) {
                return QSqrt2::zero();
            }
            QSqrt2::new(rat(rng.gen_range(-6..=6), rng.gen_range(1..=5)), rat(rng.gen_range(-3..=3), rng.gen_range(1..=4)))
        })
        .collect();
    SymMatrixQ::from_upper(dim, upper).unwrap()
}

/// Coefficient of `h` in the averaged quadratic form, straight from the
/// definition: every injective root map, every split of the free vertices,
/// basis flags matched by explicit rooted isomorphism.
fn brute_expansion(sigma: &TypeSigma, flags: &[ColoredGraph], m: usize, q: &SymMatrixQ, h: &ColoredGraph) -> QSqrt2 {
    let s = sigma.order();
    let n = h.order();
    let find = |vs: Vec<usize>| {
        let half = h.induced(&vs);
        flags.iter().position(|f| iso(f, &half, s)).expect("half is a basis flag")
    };
    let mut acc = QSqrt2::zero();
    let mut maps = 0i64;
    for theta in (0..n).permutations(s) {
        maps += 1;
        if h.induced(&theta) != *sigma.graph() {
            continue;
        }
        let free: Vec<usize> = (0..n).filter(|v| !theta.contains(v)).collect();
        let splits: Vec<Vec<usize>> = free.iter().copied().combinations(m - s).collect();
        for part in &splits {
            let rest: Vec<usize> = free.iter().copied().filter(|v| !part.contains(v)).collect();
            let i = find(theta.iter().chain(part).copied().collect());
            let j = find(theta.iter().chain(&rest).copied().collect());
            acc += q.get(i, j).mul_rational(&rat(1, splits.len() as i64));
        }
    }
    acc.mul_rational(&rat(1, maps))
}

fn expansion_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    let configs = [
        (TypeSigma::vertex(), Family::Fc5),
        (TypeSigma::lambda(), Family::Fc5),
        (TypeSigma::beta(), Family::Fc7),
        (TypeSigma::rho(), Family::Unrestricted),
        (TypeSigma::vertex(), Family::Fc7),
    ];
    let mut coeffs = 0usize;
    for t in 0..50 {
        let (sigma, fam) = &configs[t % configs.len()];
        let size = if t % 7 == 6 { 2 } else { 3 };
        let basis = flag_basis(sigma, size, *fam).map_err(|e| e.to_string())?;
        // Roots first, in type order, so the brute matcher can pin them.
        let flags: Vec<ColoredGraph> = basis
            .flags()
            .iter()
            .map(|f| {
                let order: Vec<usize> = f.roots().iter().copied().chain((0..f.order()).filter(|v| !f.roots().contains(v))).collect();
                f.graph().induced(&order)
            })
            .collect();
        let q = random_sym(&mut rng, basis.len(), t % 2 == 0);
        let got = quadratic_form_expand(sigma, &basis, &q).map_err(|e| e.to_string())?;
        for (key, h) in graphs_with_keys(got.level(), *fam).unwrap().iter() {
            let want = brute_expansion(sigma, &flags, size, &q, h);
            ensure(got.coefficient(key) == want, || format!("matrix {t}, {sigma}, H = {key}"))?;
            coeffs += 1;
        }
    }
    Ok(format!("50 matrices, {coeffs} coefficients exact"))
}

fn psd_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let (mut done, mut psd, mut skipped) = (0, 0, 0);
    while done < 200 {
        let dim = rng.gen_range(1..=12);
        let m = match done % 3 {
            // Gram matrices are PSD; the others are mostly indefinite.
            0 => {
                let k = rng.gen_range(dim..=dim + 2);
                let b = random_sym(&mut rng, k.max(dim), false);
                let mut upper = Vec::new();
                for i in 0..dim {
                    for j in i..dim {
                        let mut v = QSqrt2::zero();
                        for r in 0..b.dim() {
                            v += b.get(r, i) * b.get(r, j);
                        }
                        upper.push(v);
                    }
                }
                SymMatrixQ::from_upper(dim, upper).unwrap()
            }
            1 => random_sym(&mut rng, dim, true),
            _ => {
                let mut m = random_sym(&mut rng, dim, false);
                for i in 0..dim {
                    let v = m.get(i, i) + &QSqrt2::from_int(rng.gen_range(0..=12));
                    m.set(i, i, v);
                }
                m
            }
        };
        let f = DMatrix::from_fn(dim, dim, |i, j| m.get(i, j).to_f64());
        let eig = f.symmetric_eigen().eigenvalues;
        let lo = eig.iter().copied().fold(f64::INFINITY, f64::min);
        if lo.abs() < 1e-6 {
            skipped += 1;
            continue;
        }
        match psd_check(&m) {
            PsdVerdict::Psd { .. } => {
                ensure(lo > 0.0, || format!("called PSD with eigenvalue {lo}, dim {dim}"))?;
                psd += 1;
            }
            PsdVerdict::NotPsd { witness, value } => {
                ensure(lo < 0.0, || format!("called not PSD with smallest eigenvalue {lo}"))?;
                let exact = m.quadratic_form_rational(&witness);
                ensure(exact == value && exact.is_negative(), || format!("witness gives {exact}, reported {value}"))?;
            }
        }
        done += 1;
    }
    Ok(format!("200 matrices ({psd} PSD), {skipped} near-singular draws skipped"))
}

fn certificate_round_trip() -> Outcome {
    let mut perturbed = 0;
    for (problem, seed) in [(Problem::C5, 21), (Problem::C7, 22)] {
        let cert = common::synthetic_certificate(problem, seed);
        let text = emit_certificate(&cert);
        let back = parse_certificate(&text).map_err(|e| e.to_string())?;
        ensure(back == cert, || "parse(emit(c)) differs".into())?;
        let report = verify(&back).map_err(|e| e.to_string())?;
        ensure(report.identity_ok && report.psd_ok && report.side_conditions_ok, || format!("{problem}: {:?}", report.violations))?;

        let eps = QSqrt2::new(rat(1, 1_000_000), rat(1, 3));
        let mut variants = Vec::new();
        for (b, block) in cert.blocks.iter().enumerate() {
            let basis = block_basis(problem, &block.sigma).map_err(|e| e.to_string())?;
            let (rows, _) = expansion_rows(&basis).map_err(|e| e.to_string())?;
            let live: Vec<(u32, u32)> = rows.iter().flat_map(|r| r.counts.iter().map(|&(i, j, _)| (i.min(j), i.max(j)))).unique().collect();
            for &(i, j) in live.iter().step_by(live.len() / 6 + 1) {
                let mut bad = cert.clone();
                let v = bad.blocks[b].matrix.get(i as usize, j as usize) + &eps;
                bad.blocks[b].matrix.set(i as usize, j as usize, v);
                variants.push((format!("{} ({i}, {j})", block.sigma), bad));
            }
        }
        for (key, _) in cert.c.iter().step_by(97) {
            let mut bad = cert.clone();
            let v = &bad.c[key] + &eps;
            bad.c.insert(key.clone(), v);
            variants.push((format!("c_H {key}"), bad));
        }
        let mut bad = cert.clone();
        bad.slacks[0].coeff += &eps;
        variants.push(("slack 0".into(), bad));
        for (what, bad) in variants {
            let report = verify(&bad).map_err(|e| e.to_string())?;
            let named = report.violations.iter().any(|v| v.reason.starts_with("identity residual") && !v.subject.is_empty());
            ensure(!report.identity_ok && !report.diff.is_empty() && named, || format!("{problem}: perturbing {what} went unnoticed"))?;
            perturbed += 1;
        }
    }
    Ok(format!("C5 and C7 certificates verify; {perturbed} perturbations all caught"))
}

fn triangle_oracle() -> Outcome {
    let start = Instant::now();
    for n in 6..=8 {
        let r = brute_force_min(n, 3).map_err(|e| e.to_string())?;
        let want = 2 * (n / 2) + 1;
        ensure(r.min_cycle_edges == want, || format!("n = {n}: min {} (want {want}), witness {}", r.min_cycle_edges, r.witnesses[0]))?;
    }
    within(start, Duration::from_secs(600))?;
    Ok("n = 6, 7, 8 give 7, 7, 9".into())
}

fn duality() -> Outcome {
    let mut runs = 0;
    for n in 3..=9 {
        for len in [3, 5, 7, 9] {
            let r = brute_force_min(n, len).map_err(|e| e.to_string())?;
            ensure(duality_check(&r), || format!("n = {n}, L = {len}"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} oracle runs, both passes agree"))
}

fn formulas() -> Outcome {
    let start = Instant::now();
    for n in 1..=1_000_000u64 {
        let (a, b, c) = (f_product(n), f_table(n), f_structural(n));
        ensure(a == b && b == c, || format!("n = {n}: {a} / {b} / {c}"))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("n ≤ 10^6 agree in {:.1?}; F(1000000) = {}", start.elapsed(), f_formula(1_000_000)))
}

fn construction_asymptotics() -> Outcome {
    let n = 2000;
    let q = default_quadruple(n).ok_or("no feasible quadruple")?;
    ensure(q.edge_count() as usize >= edge_budget(n), || format!("{q} below budget"))?;
    let on = g2_c5_edge_count(q).ok_or("degenerate quadruple")?;
    let frac = on as f64 / (n * n) as f64;
    let target = (2.0 + 2f64.sqrt()) / 16.0;
    ensure((frac - target).abs() < 0.01, || format!("{q}: fraction {frac:.5} vs {target:.5}"))?;

    let small = default_quadruple(24).ok_or("no quadruple at 24")?;
    let g = construction_g2(24, small).map_err(|e| e.to_string())?;
    let closed = g2_c5_edge_count(small).ok_or("degenerate at 24")?;
    let found = cycle_edge_set(&g, 5).len() as u64;
    ensure(closed == found, || format!("n = 24 {small}: closed form {closed}, search {found}"))?;
    Ok(format!("n = 2000 {q}: {frac:.5} (target {target:.5}); n = 24 search agrees ({found})"))
}

fn stability() -> Outcome {
    let start = Instant::now();
    let opt = stability_optimizers();
    let half = BigRational::new(1.into(), 2.into());
    ensure(opt.bipartite.argmax == BigRational::new(2.into(), 3.into()) && opt.bipartite.value == half, || {
        format!("bipartite optimum {} at {}", opt.bipartite.value, opt.bipartite.argmax)
    })?;
    ensure(opt.bipartite.runner_up < half, || "bipartite maximum not unique".into())?;
    let r2 = QSqrt2::sqrt2();
    let quarter = QSqrt2::ratio(1, 4);
    let want = [(&QSqrt2::from_int(2) - &r2) * &quarter, quarter.clone(), quarter.clone(), &r2 * &quarter];
    ensure(opt.path.point == want && opt.path.value == QSqrt2::ratio(1, 2) && opt.path.product_slack.is_zero(), || {
        format!("path optimum {} at {:?}", opt.path.value, opt.path.point)
    })?;
    ensure(opt.grid.steps == 200 && opt.grid.best_value < half, || format!("grid reaches {}", opt.grid.best_value))?;
    ensure(opt.grid.feasible > 0 && opt.grid.best_value > BigRational::zero() && !opt.grid.best_value.is_one(), || "grid empty".into())?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("1/2 at a = 2/3 and at the path point; grid best {}", opt.grid.best_value))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("basis counts", basis_counts),
        ("chain consistency", chain_consistency),
        ("expansion oracle", expansion_oracle),
        ("PSD checker", psd_oracle),
        ("certificate round trip", certificate_round_trip),
        ("triangle oracle", triangle_oracle),
        ("duality", duality),
        ("formula concordance", formulas),
        ("construction asymptotics", construction_asymptotics),
        ("stability optima", stability),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{t:.1?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{t:.1?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
