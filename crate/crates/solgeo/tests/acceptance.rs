//! Acceptance gate for the geometry toolkit.
//!
//! Each test checks one shipped guarantee end to end and prints a single
//! `acceptance <name>: PASS/FAIL (...)` line (visible with `--nocapture`).
//! Every tolerance is pinned in this file next to the check it guards.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use solgeo::curvedsl::{parse, sample_expr};
use solgeo::families::{
    beta_closed_form, family_cylinder, family_t_plane, family_umbilical, family_vertical_plane,
    family_z_plane, ode_residual, solve_beta, umbilical_profile, PlaneCurve,
};
use solgeo::hypersurface::{
    classify, induced_sectional_curvature, second_fundamental_form, GridSpec, Immersion,
    Tolerances,
};
use solgeo::oracles::{
    curvature_direct_oracle, dform_closedness_residual, dform_component, koszul_oracle,
    nabla_j_oracle, nabla_p_oracle,
};
use solgeo::solgroup::{
    curvature_invariant, curvature_table, nabla_e4, nabla_frame, nabla_j, nabla_p,
    sectional_curvature, JSign, Point, TangentVector,
};

fn verdict(name: &str, pass: bool, detail: &str) {
    println!(
        "acceptance {name}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "acceptance {name}: {detail}");
}

fn frame_leg(i: usize) -> TangentVector {
    TangentVector::frame_leg(Point::identity(), i).unwrap()
}

#[test]
fn c01_connection_oracle_matches_table() {
    let start = Instant::now();
    let mut mismatches = 0;
    for i in 0..4 {
        for j in 0..4 {
            if koszul_oracle(i, j) != nabla_frame(i, j).unwrap() {
                mismatches += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        "connection-oracle",
        mismatches == 0 && secs < 1.0,
        &format!("16 frame pairs, {mismatches} mismatches, exact equality, {secs:.3}s < 1s"),
    );
}

#[test]
fn c02_curvature_triple_agreement() {
    let start = Instant::now();
    let mut mismatches = 0;
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                let table = curvature_table(i, j, k).unwrap();
                let direct = curvature_direct_oracle(i, j, k);
                let invariant =
                    curvature_invariant(&frame_leg(i), &frame_leg(j), &frame_leg(k))
                        .unwrap()
                        .comps;
                if table != direct || table != invariant {
                    mismatches += 1;
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        "curvature-triple-agreement",
        mismatches == 0 && secs < 1.0,
        &format!("64 frame triples, {mismatches} mismatches, exact equality, {secs:.3}s < 1s"),
    );
}

#[test]
fn c03_frame_sectional_curvatures() {
    let expected = [
        (0, 1, -1.0),
        (0, 2, 2.0),
        (0, 3, -1.0),
        (1, 2, 2.0),
        (1, 3, -1.0),
        (2, 3, -4.0),
    ];
    let mut mismatches = 0;
    for &(i, j, want) in &expected {
        let got = sectional_curvature(&frame_leg(i), &frame_leg(j)).unwrap();
        if got != want {
            mismatches += 1;
        }
    }
    verdict(
        "frame-sectional-curvatures",
        mismatches == 0,
        &format!("(-1, 2, -1, 2, -1, -4) across the six frame planes, {mismatches} mismatches, exact equality"),
    );
}

#[test]
fn c04_conformal_kaehler_closedness() {
    let start = Instant::now();
    let h = 1e-5;
    let mut worst_scaled = 0.0f64;
    let n = 5;
    for sign in [JSign::Plus, JSign::Minus] {
        for ix in 0..n {
            for iy in 0..n {
                for iz in 0..n {
                    for it in 0..n {
                        let c = |k: usize| -1.0 + 2.0 * k as f64 / (n - 1) as f64;
                        let p = Point::new(c(ix), c(iy), c(iz), c(it));
                        worst_scaled = worst_scaled.max(dform_closedness_residual(sign, p, h));
                    }
                }
            }
        }
    }
    let unscaled = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
        .iter()
        .map(|&t| dform_component(JSign::Plus, Point::identity(), false, t, h).abs())
        .fold(0.0f64, f64::max);
    let secs = start.elapsed().as_secs_f64();
    verdict(
        "conformal-kaehler-closedness",
        worst_scaled < 1e-7 && unscaled > 1e-2 && secs < 5.0,
        &format!(
            "scaled-form residual {worst_scaled:.3e} < 1e-7 on a 5^4 grid at h = 1e-5, \
             unscaled residual {unscaled:.3e} > 1e-2 at the identity, {secs:.3}s < 5s"
        ),
    );
}

#[test]
fn c05_structure_tensor_derivatives() {
    let mut mismatches = 0;
    for i in 0..4 {
        for j in 0..4 {
            for sign in [JSign::Plus, JSign::Minus] {
                let closed = nabla_j(sign, &frame_leg(i), &frame_leg(j)).unwrap().comps;
                if closed != nabla_j_oracle(sign, i, j) {
                    mismatches += 1;
                }
            }
            let closed_p = nabla_p(&frame_leg(i), &frame_leg(j)).unwrap().comps;
            if closed_p != nabla_p_oracle(i, j) {
                mismatches += 1;
            }
        }
        if nabla_e4(&frame_leg(i)).comps != nabla_frame(i, 3).unwrap() {
            mismatches += 1;
        }
    }
    verdict(
        "structure-tensor-derivatives",
        mismatches == 0,
        &format!(
            "J-pair and projector derivative closed forms against the product-rule oracle, \
             16 pairs each plus 4 frame derivatives of the vertical leg, {mismatches} mismatches, exact equality"
        ),
    );
}

#[test]
fn c06_family_verdict_matrix() {
    let grid = GridSpec::default();
    let tols = Tolerances::default();
    let budget = 10.0;
    let mut lines: Vec<String> = Vec::new();
    let mut all_ok = true;
    let mut run = |ok: bool, line: String| {
        all_ok &= ok;
        lines.push(line);
    };

    let t0 = Instant::now();
    let rep = classify(&family_z_plane(0.5), &grid, &tols).unwrap();
    let secs = t0.elapsed().as_secs_f64();
    run(
        rep.totally_geodesic && rep.residual_totally_geodesic < 1e-10 && secs < budget,
        format!("z-plane h {:.2e} < 1e-10 in {secs:.2}s", rep.residual_totally_geodesic),
    );

    let t0 = Instant::now();
    let f = family_t_plane(0.3);
    let rep = classify(&f, &grid, &tols).unwrap();
    let forms = second_fundamental_form(&f, [0.2, -0.1, 0.4]).unwrap();
    let h_e3 = forms.h[(2, 2)] / forms.g[(2, 2)];
    let secs = t0.elapsed().as_secs_f64();
    run(
        rep.parallel
            && rep.residual_parallel < 1e-4
            && (h_e3 + 2.0).abs() < 1e-8
            && secs < budget,
        format!(
            "t-plane grad-h {:.2e} < 1e-4, h(E3,E3) = {h_e3:.10} = -2 ± 1e-8 in {secs:.2}s",
            rep.residual_parallel
        ),
    );

    let t0 = Instant::now();
    let f = family_vertical_plane(1.0, 2.0, 0.5).unwrap();
    let rep = classify(&f, &grid, &tols).unwrap();
    let u = [0.1, 0.2, -0.3];
    let k_vert = induced_sectional_curvature(&f, u, [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]).unwrap();
    let k_mixed = induced_sectional_curvature(&f, u, [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]).unwrap();
    let secs = t0.elapsed().as_secs_f64();
    run(
        rep.residual_totally_geodesic < 1e-8
            && (k_vert + 4.0).abs() < 1e-6
            && (k_mixed - 2.0).abs() < 1e-6
            && secs < budget,
        format!(
            "vertical plane h {:.2e} < 1e-8, sectional ({k_vert:.8}, {k_mixed:.8}) = (-4, 2) ± 1e-6 in {secs:.2}s",
            rep.residual_totally_geodesic
        ),
    );

    let t0 = Instant::now();
    let rep = classify(&family_cylinder(&PlaneCurve::circle()), &grid, &tols).unwrap();
    let secs = t0.elapsed().as_secs_f64();
    run(
        rep.codazzi
            && rep.residual_codazzi < 1e-4
            && rep.residual_parallel > 1e-2
            && secs < budget,
        format!(
            "circle cylinder codazzi {:.2e} < 1e-4, grad-h {:.2e} > 1e-2 in {secs:.2}s",
            rep.residual_codazzi, rep.residual_parallel
        ),
    );

    let t0 = Instant::now();
    let prof = umbilical_profile(std::f64::consts::FRAC_PI_4, (0.0, 0.25), 1e-3).unwrap();
    let rep = classify(&family_umbilical(&prof), &grid, &tols).unwrap();
    let lambda_err = rep
        .samples
        .iter()
        .map(|s| (s.lambda - prof.beta(s.u[2]).sin()).abs())
        .fold(0.0f64, f64::max);
    let secs = t0.elapsed().as_secs_f64();
    run(
        rep.totally_umbilical
            && rep.residual_totally_umbilical < 1e-5
            && lambda_err < 1e-5
            && secs < budget,
        format!(
            "umbilical beta0 = pi/4 deviation {:.2e} < 1e-5, |lambda - sin beta| {lambda_err:.2e} < 1e-5 in {secs:.2}s",
            rep.residual_totally_umbilical
        ),
    );

    verdict("family-verdict-matrix", all_ok, &lines.join("; "));
}

#[test]
fn c07_umbilical_profile_flow() {
    let beta0 = 0.1;
    let sol = solve_beta(beta0, (0.0, 0.5), 1e-3).unwrap();
    let mut worst_beta = 0.0f64;
    for k in 0..=100 {
        let u = 0.5 * k as f64 / 100.0;
        worst_beta = worst_beta.max((sol.beta(u).unwrap() - beta_closed_form(beta0, u)).abs());
    }
    let prof = umbilical_profile(beta0, (0.0, 0.5), 1e-3).unwrap();
    let curve = prof.curve();
    let mut worst_ode = 0.0f64;
    for k in 0..=100 {
        let u = 0.5 * k as f64 / 100.0;
        worst_ode = worst_ode.max(ode_residual(&curve, u).abs());
    }
    let flat = umbilical_profile(0.0, (0.0, 0.5), 1e-3).unwrap();
    let rep = classify(
        &family_umbilical(&flat),
        &GridSpec::default(),
        &Tolerances::default(),
    )
    .unwrap();
    verdict(
        "umbilical-profile-flow",
        worst_beta < 1e-8 && worst_ode < 1e-6 && rep.residual_totally_geodesic < 1e-10,
        &format!(
            "|beta - closed form| {worst_beta:.2e} < 1e-8 on [0, 0.5], profile equation residual \
             {worst_ode:.2e} < 1e-6, degenerate beta0 = 0 gives h {:.2e} < 1e-10",
            rep.residual_totally_geodesic
        ),
    );
}

#[test]
fn c08_isometry_congruence() {
    let a = Point::new(1.0, -2.0, 0.5, 0.3);
    let grid = GridSpec::default();
    let tols = Tolerances::default();
    let prof = umbilical_profile(std::f64::consts::FRAC_PI_4, (0.0, 0.25), 1e-3).unwrap();
    let families: Vec<(&str, Immersion)> = vec![
        ("z-plane", family_z_plane(0.5)),
        ("t-plane", family_t_plane(0.3)),
        ("vertical", family_vertical_plane(1.0, 2.0, 0.5).unwrap()),
        ("cylinder", family_cylinder(&PlaneCurve::circle())),
        ("umbilical", family_umbilical(&prof)),
    ];
    let mut worst = 0.0f64;
    let mut worst_name = "";
    for (name, f) in &families {
        let before = classify(f, &grid, &tols).unwrap();
        let after = classify(&f.left_translate(a), &grid, &tols).unwrap();
        let deltas = [
            (before.residual_totally_geodesic - after.residual_totally_geodesic).abs(),
            (before.residual_totally_umbilical - after.residual_totally_umbilical).abs(),
            (before.residual_parallel - after.residual_parallel).abs(),
            (before.residual_codazzi - after.residual_codazzi).abs(),
        ];
        let d = deltas.iter().fold(0.0f64, |m, &v| m.max(v));
        if d > worst {
            worst = d;
            worst_name = name;
        }
    }
    verdict(
        "isometry-congruence",
        worst < 1e-10,
        &format!(
            "left translation by (1, -2, 0.5, 0.3) shifts classification residuals by at most \
             {worst:.2e} < 1e-10 across five families (worst: {worst_name})"
        ),
    );
}

#[test]
fn c09_induced_sectional_curvature() {
    let mut rng = StdRng::seed_from_u64(0x09);
    let mut random_plane_value = |f: &Immersion, u: [f64; 3]| loop {
        let a = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let b = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        if let Ok(k) = induced_sectional_curvature(f, u, a, b) {
            return k;
        }
    };
    let z = family_z_plane(0.5);
    let t = family_t_plane(0.3);
    let mut worst_z = 0.0f64;
    let mut worst_t = 0.0f64;
    for _ in 0..20 {
        worst_z = worst_z.max((random_plane_value(&z, [0.2, -0.3, 0.4]) + 1.0).abs());
        worst_t = worst_t.max(random_plane_value(&t, [0.2, -0.3, 0.4]).abs());
    }
    verdict(
        "induced-sectional-curvature",
        worst_z < 1e-6 && worst_t < 1e-6,
        &format!(
            "20 random tangent planes each: z-plane |K + 1| {worst_z:.2e} < 1e-6, \
             t-plane |K| {worst_t:.2e} < 1e-6"
        ),
    );
}

#[test]
fn c10_expression_dsl() {
    // Symbolic derivative against central differences.
    let mut rng = StdRng::seed_from_u64(0x10);
    let probes = [-0.9, -0.45, 0.0, 0.45, 0.9];
    let fd_step = 1e-5;
    let mut checked = 0;
    let mut worst_rel = 0.0f64;
    let mut derivative_ok = true;
    let mut attempts = 0;
    while checked < 50 && attempts < 500 {
        attempts += 1;
        let e = sample_expr(&mut rng, 3);
        let d = e.differentiate();
        let mut valid = 0;
        for &u in &probes {
            let (fp, fm) = match (e.eval(u + fd_step), e.eval(u - fd_step)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => continue,
            };
            let central = (fp - fm) / (2.0 * fd_step);
            if !central.is_finite() || central.abs() > 1e3 {
                continue;
            }
            let sym = match d.eval(u) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let rel = (sym - central).abs() / (1.0 + central.abs());
            worst_rel = worst_rel.max(rel);
            if rel > 1e-6 {
                derivative_ok = false;
            }
            valid += 1;
        }
        if valid > 0 {
            checked += 1;
        }
    }

    // Parser error byte offsets on a fixed corpus.
    let corpus: [(&str, usize); 10] = [
        ("", 0),
        (")", 0),
        ("1/(", 3),
        ("2*^3", 2),
        ("sin u", 4),
        ("(1+2", 4),
        ("1+", 2),
        ("u^1.5", 2),
        ("1 2", 2),
        ("foo(u)", 0),
    ];
    let mut offset_misses = 0;
    for &(src, want) in &corpus {
        match parse(src) {
            Err(e) if e.offset == want => {}
            _ => offset_misses += 1,
        }
    }
    verdict(
        "expression-dsl",
        checked == 50 && derivative_ok && offset_misses == 0,
        &format!(
            "{checked}/50 expressions pass the derivative property (worst relative error \
             {worst_rel:.2e} <= 1e-6), {offset_misses}/10 parser offset mismatches"
        ),
    );
}
