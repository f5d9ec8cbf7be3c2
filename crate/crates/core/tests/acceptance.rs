//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use nucc::analysis::{
    asymptotic_equivalence_profile_over, franke_1d, order_table, smoothness_probe,
    symbol_from_mask, OrderTableRow,
};
use nucc::masks::{mask_oracle, nucc_mask, nucc_mask_alternative, MaskQuad};
use nucc::subdivision::{run, run_traced};
use nucc::{
    Boundary, LevelSequence, RatioKernelConfig, RefinementState, Scheme, SchemeConfig, ShapeParam,
    Variant, NEGLIGIBLE_EPS_SCALE,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DOMAIN: (f64, f64) = (-2.0, 8.0);
const EVAL_LEVEL: u32 = 8;

type Check = fn() -> Outcome;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn fmt_orders(rows: &[OrderTableRow]) -> String {
    rows.iter()
        .filter_map(|r| r.est_order.map(|o| format!("{}:{o:.3}", r.k0)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn orders_from(rows: &[OrderTableRow], k0_min: u32) -> Vec<f64> {
    rows.iter()
        .filter(|r| r.k0 >= k0_min)
        .filter_map(|r| r.est_order)
        .collect()
}

fn nucc_table_config() -> SchemeConfig {
    let mut cfg = SchemeConfig::new(Scheme::Nucc);
    cfg.eps_scale = NEGLIGIBLE_EPS_SCALE;
    cfg
}

fn c1_nucc_order() -> Outcome {
    let rows = order_table(franke_1d, &nucc_table_config(), 0..=7, DOMAIN, EVAL_LEVEL).unwrap();
    let o = orders_from(&rows, 3);
    let mean = o.iter().sum::<f64>() / o.len() as f64;
    let pass =
        o.len() == 5 && o.iter().all(|v| (2.7..=3.3).contains(v)) && (2.85..=3.15).contains(&mean);
    outcome(
        pass,
        format!("orders {} | mean(k0 3..7) {mean:.4}", fmt_orders(&rows)),
    )
}

fn c2_expb_order() -> Outcome {
    let cfg = SchemeConfig::new(Scheme::ExpBSpline { gamma: 0.5 });
    let rows = order_table(franke_1d, &cfg, 0..=7, DOMAIN, EVAL_LEVEL).unwrap();
    let o = orders_from(&rows, 3);
    let pass = o.len() == 5 && o.iter().all(|v| (1.8..=2.2).contains(v));
    outcome(pass, format!("orders {}", fmt_orders(&rows)))
}

fn c3_absolute_errors() -> Outcome {
    let nucc = order_table(franke_1d, &nucc_table_config(), 0..=7, DOMAIN, EVAL_LEVEL).unwrap();
    let dflt = order_table(
        franke_1d,
        &SchemeConfig::new(Scheme::Nucc),
        0..=7,
        DOMAIN,
        EVAL_LEVEL,
    )
    .unwrap();
    let errs = |rows: &[OrderTableRow]| {
        rows.iter()
            .map(|r| format!("{:.3e}", r.max_error))
            .collect::<Vec<_>>()
            .join(" ")
    };
    outcome(
        true,
        format!(
            "non-binding; negligible eps: {} | default eps: {} (orders {})",
            errs(&nucc),
            errs(&dflt),
            fmt_orders(&dflt)
        ),
    )
}

/// Max relative error after 6 levels with a fixed `λ` on samples of `f`.
fn reproduction_error(
    f: impl Fn(f64) -> f64,
    lambda_phys: f64,
    k0: u32,
    window: (i64, i64),
) -> f64 {
    let mut cfg = SchemeConfig::new(Scheme::Nucc).at_density(k0);
    cfg.clamp = false;
    cfg.fixed_lambda = Some(lambda_phys * 4f64.powi(-(k0 as i32)));
    let f0 = LevelSequence::sample(&f, window.0..=window.1, k0, Boundary::ReplicateEnd).unwrap();
    let out = run(f0, &cfg, 6).unwrap().f;
    out.iter_points()
        .map(|(_, t, v)| ((v - f(t)) / f(t)).abs())
        .fold(0.0, f64::max)
}

fn c4_exponential_reproduction() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut lines = Vec::new();
    for &mu in &[0.5, 1.0, 2.0] {
        for k0 in [2u32, 4] {
            let s = 1i64 << k0;
            let e1 = reproduction_error(|t| (mu * t).exp(), mu * mu, k0, (-2 * s, 3 * s));
            let e2 = reproduction_error(|t| (-mu * t).exp(), mu * mu, k0, (-2 * s, 3 * s));
            let e3 = reproduction_error(
                |t| (mu * t).cosh() + 0.3 * (mu * t).sinh(),
                mu * mu,
                k0,
                (-2 * s, 3 * s),
            );
            // stay inside (0, π) so relative errors are meaningful
            let lo = (0.3 / mu * s as f64 + 0.5).ceil() as i64;
            let hi = ((PI - 0.3) / mu * s as f64 + 0.5).floor() as i64;
            let e4 = reproduction_error(|t| (mu * t).sin(), -mu * mu, k0, (lo, hi));
            let e5 =
                reproduction_error(|t| (mu * t - PI / 2.0 + 0.3).cos(), -mu * mu, k0, (lo, hi));
            let m = e1.max(e2).max(e3).max(e4).max(e5);
            lines.push(format!("mu={mu},k0={k0}:{m:.1e}"));
            worst = worst.max(m);
        }
    }
    outcome(
        worst <= 1e-10,
        format!("max rel err {worst:.2e} [{}]", lines.join(" ")),
    )
}

fn c5_affine_degeneration() -> Outcome {
    let mut worst: f64 = 0.0;
    for (a, b) in [
        (0.0, 1.0),
        (2.5, -0.75),
        (-3.0, 0.125),
        (1e3, 7.0),
        (0.0, 0.0),
    ] {
        for k0 in [0u32, 3] {
            for boundary in [Boundary::ReplicateEnd, Boundary::Periodic] {
                let f = |t: f64| a + b * t;
                let (lo, hi) = if boundary == Boundary::Periodic {
                    // periodic affine data is a constant
                    (0, 15)
                } else {
                    (-5, 20)
                };
                let g = |t: f64| {
                    if boundary == Boundary::Periodic {
                        a
                    } else {
                        f(t)
                    }
                };
                let f0 = LevelSequence::sample(g, lo..=hi, k0, boundary).unwrap();
                let nucc = SchemeConfig::new(Scheme::Nucc)
                    .with_boundary(boundary)
                    .at_density(k0);
                let chaikin = SchemeConfig::new(Scheme::Chaikin).with_boundary(boundary);
                let mut s_n = RefinementState::initial(f0.clone(), &nucc).unwrap();
                let mut s_c = RefinementState::initial(f0, &chaikin).unwrap();
                for _ in 0..8 {
                    s_n = nucc::subdivision::refine_step(&s_n, &nucc).unwrap();
                    s_c = nucc::subdivision::refine_step(&s_c, &chaikin).unwrap();
                    let d = s_n
                        .f
                        .values()
                        .iter()
                        .zip(s_c.f.values())
                        .map(|(x, y)| (x - y).abs())
                        .fold(0.0, f64::max);
                    worst = worst.max(d);
                }
            }
        }
    }
    outcome(
        worst <= 1e-15,
        format!("max |nucc - chaikin| {worst:e} over 8 levels"),
    )
}

/// Even child sits at `t_j + h/4`, odd child at `t_j + 3h/4`.
fn oracle_quad(
    even_basis: impl Fn(f64) -> (f64, f64),
    odd_basis: impl Fn(f64) -> (f64, f64),
    h: f64,
) -> MaskQuad {
    let rule = |basis: &dyn Fn(f64) -> (f64, f64), offset: f64| {
        let (p0j, p1j) = basis(-offset * h);
        let (p0n, p1n) = basis((1.0 - offset) * h);
        let (at0, at1) = basis(0.0);
        mask_oracle((p0j, p0n), (p1j, p1n), at0, at1).unwrap()
    };
    let (a_0, a_m2) = rule(&even_basis, 0.25);
    let (a_1, a_m1) = rule(&odd_basis, 0.75);
    MaskQuad::new(a_m2, a_m1, a_0, a_1)
}

fn sinh_basis(lambda: f64) -> impl Fn(f64) -> (f64, f64) {
    move |x: f64| {
        if lambda > 0.0 {
            let g = lambda.sqrt();
            ((g * x).exp(), (-g * x).exp())
        } else {
            let th = (-lambda).sqrt();
            ((th * x).cos(), (th * x).sin())
        }
    }
}

fn max_coeff_gap(a: &MaskQuad, b: &MaskQuad) -> f64 {
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn c6_oracle_equivalence() -> Outcome {
    let cfg = RatioKernelConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6f72_6163);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let k = rng.gen_range(0..=10u32);
        let h = 2f64.powi(-(k as i32));
        let mut draw = |lo: f64, hi: f64| {
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            sign * rng.gen_range(lo..hi)
        };
        let (lam_e, lam_o) = (draw(0.01, 8.0), draw(0.01, 8.0));
        let m = nucc_mask(ShapeParam(lam_e), ShapeParam(lam_o), k, false, &cfg);
        let want = oracle_quad(sinh_basis(lam_e), sinh_basis(lam_o), h);
        worst = worst.max(max_coeff_gap(&m, &want));

        let (g_e, g_o) = (draw(0.05, 10.0), draw(0.05, 10.0));
        let m = nucc_mask_alternative(g_e, g_o, k, &cfg);
        let want = oracle_quad(|x| (1.0, (g_e * x).exp()), |x| (1.0, (g_o * x).exp()), h);
        worst = worst.max(max_coeff_gap(&m, &want));
    }
    outcome(
        worst <= 1e-10,
        format!("max |mask - oracle| {worst:.2e} over 1000 draws"),
    )
}

fn franke_sequence(k0: u32) -> LevelSequence {
    let s = f64::from(1u32 << k0);
    let lo = (DOMAIN.0 * s + 0.5).ceil() as i64;
    let hi = (DOMAIN.1 * s + 0.5).floor() as i64;
    LevelSequence::sample(franke_1d, lo..=hi, k0, Boundary::ReplicateEnd).unwrap()
}

fn partition_gap(m: &MaskQuad) -> f64 {
    let s = symbol_from_mask(m);
    (s.eval(1.0) - 2.0).abs().max(s.eval(-1.0).abs())
}

fn c7_partition_of_unity() -> Outcome {
    let mut cfg = SchemeConfig::new(Scheme::Nucc).at_density(2);
    cfg.variant = Variant::Alternative;
    let (_, trace) = run_traced(franke_sequence(2), &cfg, 10).unwrap();
    let mut worst = trace
        .iter()
        .flatten()
        .map(partition_gap)
        .fold(0.0, f64::max);
    let n_trace: usize = trace.iter().map(Vec::len).sum();

    let kcfg = RatioKernelConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let k = rng.gen_range(0..=12u32);
        let m = nucc_mask_alternative(
            rng.gen_range(-50.0..50.0),
            rng.gen_range(-50.0..50.0),
            k,
            &kcfg,
        );
        worst = worst.max(partition_gap(&m));
    }
    outcome(
        worst <= 1e-14,
        format!("max(|a(1)-2|, |a(-1)|) {worst:.2e} over {n_trace} traced + 1000 random masks"),
    )
}

fn ae_trace(variant: Variant) -> Vec<Vec<MaskQuad>> {
    let mut cfg = SchemeConfig::new(Scheme::Nucc).at_density(2);
    cfg.variant = variant;
    run_traced(franke_sequence(2), &cfg, 13).unwrap().1
}

fn c8_asymptotic_equivalence() -> Outcome {
    let nucc = asymptotic_equivalence_profile_over(&ae_trace(Variant::Auto), 3..=12);
    let alt = asymptotic_equivalence_profile_over(&ae_trace(Variant::Alternative), 3..=12);
    let (p, q) = (nucc.ae_decay_exponent, alt.ae_decay_exponent);
    let pass = matches!(p, Some(p) if (1.7..=2.3).contains(&p))
        && matches!(q, Some(q) if (0.8..=1.2).contains(&q));
    outcome(
        pass,
        format!("nucc exponent {p:?}, alternative exponent {q:?} (levels 3..12)"),
    )
}

fn c9_property_a() -> Outcome {
    let r = asymptotic_equivalence_profile_over(&ae_trace(Variant::Auto), 3..=12);
    let p = r.property_a_decay_exponent;
    outcome(
        matches!(p, Some(p) if p >= 1.7),
        format!("exponent {p:?} (levels 3..12)"),
    )
}

fn c10_smoothness_probe() -> Outcome {
    let mut detail = Vec::new();
    let mut pass = true;
    for (name, scheme) in [("chaikin", Scheme::Chaikin), ("nucc", Scheme::Nucc)] {
        let r = smoothness_probe(&SchemeConfig::new(scheme), 12).unwrap();
        let ratios: Vec<f64> = r.levels[6..=12].iter().map(|l| l.ratio.unwrap()).collect();
        pass &= ratios.iter().all(|v| (0.35..=0.65).contains(v));
        let (lo, hi) = ratios
            .iter()
            .fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
        detail.push(format!("{name} ratios in [{lo:.4}, {hi:.4}]"));
    }
    outcome(pass, format!("{} (levels 6..12)", detail.join(", ")))
}

fn c11_stability() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let n = rng.gen_range(4..=40);
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let boundary = if i % 2 == 0 {
            Boundary::ReplicateEnd
        } else {
            Boundary::Periodic
        };
        let cfg = SchemeConfig::new(Scheme::Nucc).with_boundary(boundary);
        let mut s =
            RefinementState::initial(LevelSequence::new(v, 0, 0, 0, boundary).unwrap(), &cfg)
                .unwrap();
        for _ in 0..10 {
            s = nucc::subdivision::refine_step(&s, &cfg).unwrap();
            worst = worst.max(s.f.max_abs());
        }
    }
    outcome(
        worst <= 5.0,
        format!("max ||f^k|| {worst:.4} over 100 inputs x 10 levels"),
    )
}

fn main() {
    let criteria: [(&str, Duration, Check); 11] = [
        (
            "1 nucc approximation order",
            Duration::from_secs(30),
            c1_nucc_order,
        ),
        (
            "2 exp. B-spline approximation order",
            Duration::from_secs(30),
            c2_expb_order,
        ),
        (
            "3 absolute error magnitudes",
            Duration::from_secs(60),
            c3_absolute_errors,
        ),
        (
            "4 exponential reproduction",
            Duration::from_secs(1),
            c4_exponential_reproduction,
        ),
        (
            "5 affine degeneration",
            Duration::from_secs(1),
            c5_affine_degeneration,
        ),
        (
            "6 oracle equivalence",
            Duration::from_secs(1),
            c6_oracle_equivalence,
        ),
        (
            "7 partition of unity",
            Duration::from_secs(1),
            c7_partition_of_unity,
        ),
        (
            "8 asymptotic equivalence decay",
            Duration::from_secs(5),
            c8_asymptotic_equivalence,
        ),
        ("9 property A decay", Duration::from_secs(5), c9_property_a),
        (
            "10 smoothness probe",
            Duration::from_secs(5),
            c10_smoothness_probe,
        ),
        ("11 stability", Duration::from_secs(10), c11_stability),
    ];
    let mut failed = 0;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let o = check();
        let took = start.elapsed();
        let status = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failed += 1;
        }
        let slow = if took > budget {
            " (over time budget)"
        } else {
            ""
        };
        println!(
            "[{status}] criterion {name}: {} [{:.2}s / {}s{slow}]",
            o.detail,
            took.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
