//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see them on success).

use std::time::Instant;

use num_complex::Complex64 as Cx;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use sic_overlaps::clifford::{act_zauner, Generator};
use sic_overlaps::cmatrix::CMatrix;
use sic_overlaps::family::{self, deltoid_distance, family_overlaps, triple_sum, Branch};
use sic_overlaps::heisenberg::{fourier_matrix, omega_matrix, r_matrix};
use sic_overlaps::overlaps::{
    check_conditions, check_trace_powers, d2_sign_table, extract_fiducial, overlaps_from_fiducial,
    random_torus_table, reconstruct_projector, Fiducial, OverlapTable,
};
use sic_overlaps::search::{
    potential_gradient_euclidean, potential_value, sic_search, SearchConfig,
};
use sic_overlaps::symbols::{invariant_product_check, rank_one_scan, riesz_check};
use sic_overlaps::transform::{
    block, matrix_rep, t_block_closed_form, verify_l_order, verify_t_order, TransformKind,
};

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "[acceptance] {criterion}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{criterion} failed: {detail}");
}

fn random_fiducial<R: Rng>(d: usize, rng: &mut R) -> Fiducial {
    let v: Vec<Cx> = (0..d)
        .map(|_| {
            let u1: f64 = rng.random::<f64>().max(1e-300);
            let u2: f64 = rng.random();
            let r = (-2.0 * u1.ln()).sqrt();
            Cx::new(
                r * (std::f64::consts::TAU * u2).cos(),
                r * (std::f64::consts::TAU * u2).sin(),
            )
        })
        .collect();
    Fiducial::from_unnormalized(v).unwrap()
}

/// Criterion 1: the d = 2 worked example, entrywise to 1e-14, with the
/// extracted fiducial proportional to (sqrt3 + 1, 1 + i); all eight sign
/// tables certify. Under one second.
#[test]
fn criterion_1_d2_worked_example() {
    let clock = Instant::now();
    let plus = d2_sign_table(1, 1, 1);
    let tc = reconstruct_projector(&plus);
    let s = 1.0 / (2.0 * 3f64.sqrt());
    let displayed = CMatrix::from_fn(2, |j, k| match (j, k) {
        (0, 0) => Cx::new((3f64.sqrt() + 1.0) * s, 0.0),
        (0, 1) => Cx::new(s, -s),
        (1, 0) => Cx::new(s, s),
        _ => Cx::new((3f64.sqrt() - 1.0) * s, 0.0),
    });
    let matrix_gap = tc.max_abs_diff(&displayed);

    let v = extract_fiducial(&plus).unwrap();
    // proportionality to (sqrt3 + 1, 1 + i): cross-ratio must vanish
    let target = [Cx::new(3f64.sqrt() + 1.0, 0.0), Cx::new(1.0, 1.0)];
    let cross = v.coords()[0] * target[1] - v.coords()[1] * target[0];

    let mut eight_pass = true;
    for s01 in [1, -1] {
        for s10 in [1, -1] {
            for s11 in [1, -1] {
                eight_pass &= check_conditions(&d2_sign_table(s01, s10, s11), 1e-13).pass;
            }
        }
    }
    let elapsed = clock.elapsed().as_secs_f64();
    report(
        "criterion 1 (d=2 worked example)",
        matrix_gap <= 1e-14 && cross.norm() <= 1e-13 && eight_pass && elapsed < 1.0,
        &format!(
            "matrix gap {matrix_gap:.2e}, proportionality {:.2e}, eight tables {}, {elapsed:.2}s",
            cross.norm(),
            eight_pass
        ),
    );
}

/// Criterion 2: finite-order identities for d in 2..=8 at 1e-8 and the
/// block identities for d in 2..=6 at 1e-10, within 30 seconds.
#[test]
fn criterion_2_order_identities() {
    let clock = Instant::now();
    let mut worst_order = 0.0f64;
    for d in 2..=8 {
        let t = verify_t_order(d).unwrap();
        let expect_sign = if (d * (d - 1) / 2) % 2 == 0 { 1 } else { -1 };
        assert_eq!(t.sign, expect_sign);
        let l = verify_l_order(d).unwrap();
        worst_order = worst_order.max(t.residual).max(l.residual);
    }

    let mut worst_block = 0.0f64;
    for d in 2..=6 {
        let big = matrix_rep(TransformKind::T, d).unwrap();
        for j in 0..d {
            for k in 0..d {
                worst_block = worst_block
                    .max(block(&big, d, j, k).max_abs_diff(&t_block_closed_form(d, j, k).unwrap()));
            }
        }
        let cube = big.pow(3);
        for j in 0..d {
            for k in 0..d {
                if (j + k) % d != 0 {
                    worst_block = worst_block.max(block(&cube, d, j, k).max_abs());
                }
            }
        }
        let six = big.pow(6);
        let r2f2 = r_matrix(d)
            .unwrap()
            .pow(2)
            .matmul(&fourier_matrix(d).unwrap())
            .pow(2);
        let om = omega_matrix(d).unwrap();
        for j in 0..d {
            for k in 0..d {
                let blk = block(&six, d, j, k);
                if j != k {
                    worst_block = worst_block.max(blk.max_abs());
                } else {
                    let expect = om
                        .pow(j as u64)
                        .adjoint()
                        .matmul(&r2f2)
                        .matmul(&om.pow(j as u64));
                    worst_block = worst_block.max(blk.max_abs_diff(&expect));
                }
            }
        }
        worst_block = worst_block.max(verify_l_order(d).unwrap().fourth_power_residual);
    }
    let elapsed = clock.elapsed().as_secs_f64();
    report(
        "criterion 2 (finite-order identities)",
        worst_order <= 1e-8 && worst_block <= 1e-10 && elapsed < 30.0,
        &format!(
            "order residual {worst_order:.2e}, block residual {worst_block:.2e}, {elapsed:.1}s"
        ),
    );
}

/// Criterion 3: on 200 structurally exact random tables per d in 2..=6 the
/// first two trace powers equal one to 1e-11; for d >= 3 at least 99% sit
/// strictly below the quartic ceiling (at d = 2 the structural conditions
/// leave only the eight certified sign tables, so no torus table is
/// generic there; the whole fibre is checked to lie *at* the ceiling).
#[test]
fn criterion_3_eigenvalue_lemma() {
    let mut rng = ChaCha12Rng::seed_from_u64(2024);
    let mut worst_linear = 0.0f64;
    let mut d2_all_at_ceiling = true;
    let mut generic_ok = true;
    for d in 2..=6 {
        let mut below = 0usize;
        for _ in 0..200 {
            let c = random_torus_table(d, &mut rng).unwrap();
            let (t1, t2, t4) = check_trace_powers(&c).unwrap();
            worst_linear = worst_linear
                .max((t1 - Cx::new(1.0, 0.0)).norm())
                .max((t2 - Cx::new(1.0, 0.0)).norm());
            if t4.re < 1.0 - 1e-4 {
                below += 1;
            } else if d == 2 {
                d2_all_at_ceiling &= (t4 - Cx::new(1.0, 0.0)).norm() < 1e-12;
            }
        }
        if d == 2 {
            // the d = 2 torus is the eight sign tables: all rank one
            d2_all_at_ceiling &= below == 0;
        } else {
            generic_ok &= below >= 198;
        }
    }
    report(
        "criterion 3 (eigenvalue lemma + negative control)",
        worst_linear <= 1e-11 && generic_ok && d2_all_at_ceiling,
        &format!(
            "t1/t2 residual {worst_linear:.2e}, generic d>=3 below-ceiling {}, d=2 fibre at ceiling {}",
            generic_ok, d2_all_at_ceiling
        ),
    );
}

fn passes_iv(c: &OverlapTable, tol: f64) -> bool {
    let t = reconstruct_projector(c);
    (t.pow(4).trace() - Cx::new(1.0, 0.0)).norm() <= tol
}

fn passes_iv_prime(c: &OverlapTable, tol: f64) -> bool {
    // characteristic polynomial λ^d - λ^{d-1}: spectrum {1, 0, ..., 0}
    let ev = reconstruct_projector(c).hermitian_eigenvalues();
    let mut ok = (ev[0] - 1.0).abs() <= tol;
    for l in &ev[1..] {
        ok &= l.abs() <= tol;
    }
    ok
}

fn passes_iv_second(c: &OverlapTable, tol: f64) -> bool {
    let t = reconstruct_projector(c);
    let mut power = t.clone();
    let mut ok = true;
    for _ in 1..=2 * c.dim() {
        ok &= (power.trace() - Cx::new(1.0, 0.0)).norm() <= tol;
        power = power.matmul(&t);
    }
    ok
}

fn passes_rank_one(c: &OverlapTable, tol: f64) -> bool {
    rank_one_scan(c, tol).map(|r| r.pass).unwrap_or(false)
}

/// Criterion 4: the quartic trace condition, the spectral form, the trace
/// powers up to 2d and the symbol rank-one criterion agree in pass/fail on
/// a mixed corpus of certified and random tables, all at 1e-8.
#[test]
fn criterion_4_characterization_equivalence() {
    let mut corpus: Vec<OverlapTable> = Vec::new();
    // certified: the eight d = 2 tables, family tables, search outputs
    for s01 in [1, -1] {
        for s10 in [1, -1] {
            for s11 in [1, -1] {
                corpus.push(d2_sign_table(s01, s10, s11));
            }
        }
    }
    for p in family::sample_branch(10, Branch::Z1EqZ3, 404) {
        corpus.push(family_overlaps(&p));
    }
    for d in 2..=5 {
        let mut cfg = SearchConfig::new(d);
        cfg.rng_seed = 42;
        cfg.target_gap = 1e-12;
        let rep = sic_search(&cfg).unwrap();
        assert!(rep.success, "search for the corpus failed at d={d}");
        corpus.push(rep.table);
    }
    // random torus tables (non-generic only at d = 2, where they certify)
    let mut rng = ChaCha12Rng::seed_from_u64(777);
    for d in 2..=6 {
        for _ in 0..30 {
            corpus.push(random_torus_table(d, &mut rng).unwrap());
        }
    }

    let tol = 1e-8;
    let mut agree = true;
    let mut detail = String::new();
    for (i, c) in corpus.iter().enumerate() {
        let votes = [
            passes_iv(c, tol),
            passes_iv_prime(c, tol),
            passes_iv_second(c, tol),
            passes_rank_one(c, tol),
        ];
        if votes.iter().any(|&v| v != votes[0]) {
            agree = false;
            detail = format!("instance {i} (d={}) disagrees: {votes:?}", c.dim());
            break;
        }
    }
    report(
        "criterion 4 (characterization equivalence)",
        agree,
        if detail.is_empty() {
            "all instances agree across (iv), spectrum, trace powers, rank-one"
        } else {
            &detail
        },
    );
}

/// Criterion 5: 1000 sampled family points certify at 1e-9, the Riesz and
/// product-invariant residuals stay below 1e-9, and the triple sums land on
/// the deltoid to 1e-10; under 10 seconds.
#[test]
fn criterion_5_d3_family() {
    let clock = Instant::now();
    let mut points = family::sample_branch(940, Branch::Z1EqZ3, 31);
    // include the cusp fibres, where the free phase is unconstrained
    let mut rng = ChaCha12Rng::seed_from_u64(32);
    for i in 0..60 {
        let phi = [
            0.0,
            2.0 * std::f64::consts::TAU / 3.0,
            4.0 * std::f64::consts::TAU / 3.0,
        ][i % 3];
        let z = Cx::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
        points.push(family::FamilyPoint::new(phi, z, Branch::Z1EqZ3).unwrap());
    }
    assert_eq!(points.len(), 1000);

    let mut worst_check = 0.0f64;
    let mut worst_symbol = 0.0f64;
    let mut worst_boundary = 0.0f64;
    for p in &points {
        let c = family_overlaps(p);
        let rep = check_conditions(&c, 1e-9);
        worst_check = worst_check.max(rep.max_residual());
        worst_symbol = worst_symbol
            .max(riesz_check(&c))
            .max(invariant_product_check(&c));
        worst_boundary = worst_boundary.max(deltoid_distance(triple_sum(&c)));
    }
    let elapsed = clock.elapsed().as_secs_f64();
    report(
        "criterion 5 (d=3 family)",
        worst_check <= 1e-9 && worst_symbol <= 1e-9 && worst_boundary <= 1e-10 && elapsed < 10.0,
        &format!(
            "check {worst_check:.2e}, symbol {worst_symbol:.2e}, boundary {worst_boundary:.2e}, {elapsed:.1}s"
        ),
    );
}

/// Criterion 6: for every d in 2..=7 the search reaches potential gap
/// <= 1e-10 and quartic residual <= 1e-8 with the documented seed 42,
/// within five minutes per dimension.
#[test]
fn criterion_6_search_convergence() {
    let mut ok = true;
    let mut detail = String::new();
    for d in 2..=7 {
        let clock = Instant::now();
        let mut cfg = SearchConfig::new(d);
        cfg.rng_seed = 42;
        cfg.target_gap = 1e-11;
        let rep = sic_search(&cfg).unwrap();
        let elapsed = clock.elapsed().as_secs_f64();
        let good = rep.potential_gap <= 1e-10 && rep.quartic_residual <= 1e-8 && elapsed < 300.0;
        ok &= good;
        detail.push_str(&format!(
            "d={d}: gap {:.1e} quartic {:.1e} restarts {} {:.1}s; ",
            rep.potential_gap, rep.quartic_residual, rep.restarts_used, elapsed
        ));
    }
    report("criterion 6 (search convergence, seed 42)", ok, &detail);
}

/// Criterion 7: generator actions preserve certification at 1e-9 on found
/// tables, triple Zauner application is the identity to 1e-11, and the
/// action formulas agree with conjugation oracles on 50 random fiducials
/// per d <= 6 to 1e-11.
#[test]
fn criterion_7_clifford_preservation() {
    // found tables: searches at d = 2..5 plus a family point
    let mut found: Vec<OverlapTable> = Vec::new();
    for d in 2..=5 {
        let mut cfg = SearchConfig::new(d);
        cfg.rng_seed = 42;
        cfg.target_gap = 1e-12;
        let rep = sic_search(&cfg).unwrap();
        assert!(rep.success);
        found.push(rep.table);
    }
    found.push(family_overlaps(
        &family::sample_branch(1, Branch::Z1EqZ3, 8)[0],
    ));

    let mut preserved = true;
    let mut triple = 0.0f64;
    for c in &found {
        let d = c.dim() as i64;
        for g in [
            Generator::ShiftMod(1, d - 1),
            Generator::Fourier,
            Generator::Zauner,
        ] {
            preserved &= check_conditions(&g.act(c), 1e-9).pass;
        }
        triple = triple.max(act_zauner(&act_zauner(&act_zauner(c))).max_abs_diff(c));
    }

    let mut oracle_gap = 0.0f64;
    let mut rng = ChaCha12Rng::seed_from_u64(616);
    for d in 2..=6 {
        for _ in 0..50 {
            let v = random_fiducial(d, &mut rng);
            let c = overlaps_from_fiducial(&v);
            let a = rng.random_range(0..d as i64);
            let b = rng.random_range(0..d as i64);
            for g in [
                Generator::ShiftMod(a, b),
                Generator::Fourier,
                Generator::Zauner,
            ] {
                let m = g.matrix(d).unwrap();
                let image = overlaps_from_fiducial(
                    &Fiducial::from_unnormalized(m.apply(v.coords())).unwrap(),
                );
                oracle_gap = oracle_gap.max(g.act(&c).max_abs_diff(&image));
            }
        }
    }
    report(
        "criterion 7 (Clifford preservation)",
        preserved && triple <= 1e-11 && oracle_gap <= 1e-11,
        &format!("preserved {preserved}, triple-Z {triple:.2e}, oracle gap {oracle_gap:.2e}"),
    );
}

/// Criterion 8: the analytic gradient matches central finite differences
/// (h = 1e-6) to relative error 1e-5 on 100 random points per d in 2..=6.
#[test]
fn criterion_8_gradient_correctness() {
    let mut rng = ChaCha12Rng::seed_from_u64(888);
    let h = 1e-6;
    let mut worst_rel = 0.0f64;
    for d in 2..=6 {
        for _ in 0..100 {
            let v = random_fiducial(d, &mut rng).coords().to_vec();
            let g = potential_gradient_euclidean(&v);
            for i in 0..d {
                let mut vp = v.clone();
                let mut vm = v.clone();
                vp[i] += Cx::new(h, 0.0);
                vm[i] -= Cx::new(h, 0.0);
                let dre = (potential_value(&vp) - potential_value(&vm)) / (2.0 * h);
                let mut vp = v.clone();
                let mut vm = v.clone();
                vp[i] += Cx::new(0.0, h);
                vm[i] -= Cx::new(0.0, h);
                let dim_ = (potential_value(&vp) - potential_value(&vm)) / (2.0 * h);
                let fd = Cx::new(dre, dim_);
                worst_rel = worst_rel.max((g[i] - fd).norm() / fd.norm().max(1e-12));
            }
        }
    }
    report(
        "criterion 8 (gradient vs finite differences)",
        worst_rel <= 1e-5,
        &format!("worst relative error {worst_rel:.2e}"),
    );
}
