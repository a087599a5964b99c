// Copyright (c) The dualosc Contributors
// SPDX-License-Identifier: Apache-2.0

//! End-to-end checks with pinned figures. Prints one PASS/FAIL line per check
//! and exits non-zero if any fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use dualosc::census::{census_scaled, census_unscaled, count_states_on_curve, ScaledComparison, SweepParams};
use dualosc::codec::{decode_a, decode_b, encode_phi, geometric_phi_oracle};
use dualosc::decode::{all_words, generate_cancel_sop, generate_perm_sop, minimize, SopExpression, Term};
use dualosc::device::{
    naive_component_count, per_curve_precision, precision_percent, scaling_coefficient, FlagMemoryLayout,
};
use dualosc::flags::{mul_i, negate, summarize, FlagPair};
use dualosc::gates::{
    apply_cnot, apply_x, i_shift_table, x1_reflection_cases, GroupMap, GroupState, ReflectionCase, Target,
};
use dualosc::sim::{max_abs_diff, Circuit, PureState, TELEPORT};
use dualosc::{DeviceSpec64, Ensemble64};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

struct Check {
    ok: bool,
    detail: String,
}

type CheckFn = fn() -> Check;

fn check(ok: bool, detail: impl Into<String>) -> Check {
    Check { ok, detail: detail.into() }
}

fn unscaled_census() -> Check {
    let d = DeviceSpec64::ax7maf1();
    let r = census_unscaled(&d, SweepParams::new(0.01)).unwrap();
    let ok_total = r.total_states == 473498;
    let ok_g = (r.terminal_g - 24.96).abs() <= 0.011;
    let ok_phi = rel(r.terminal_phi, 0.9093581907426893) <= 1e-6;
    let ok_dphi = rel(r.terminal_dphi_or_domega, 2.926448341844523e-05) <= 1e-4;
    check(
        ok_total && ok_g && ok_phi && ok_dphi,
        format!(
            "total {} (want 473498) {}, g {} {}, phi {} {}, dphi {:e} {}",
            r.total_states,
            tick(ok_total),
            r.terminal_g,
            tick(ok_g),
            r.terminal_phi,
            tick(ok_phi),
            r.terminal_dphi_or_domega,
            tick(ok_dphi)
        ),
    )
}

fn tick(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}

fn scaled_census() -> Check {
    let d = DeviceSpec64::ax7maf1();
    let mut p = SweepParams::new(1e-4);
    p.keep_rows = false;
    let r = census_scaled(&d, p, ScaledComparison::Frozen).unwrap();
    let exact = r.total_states == 45452916;
    let within = rel(r.total_states as f64, 45452916.0) <= 1e-3;
    let ok_omega = (r.terminal_omega - 2100000000.05).abs() <= 1.0;
    let ok_curves = rel(r.curves_counted as f64, 240000.0) <= 0.01;
    let how = if exact {
        "exact"
    } else if within {
        "within 0.1% only"
    } else {
        "MISMATCH"
    };
    check(
        within && ok_omega && ok_curves,
        format!(
            "total {} ({how}), omega {} {}, curves {} {}",
            r.total_states,
            r.terminal_omega,
            tick(ok_omega),
            r.curves_counted,
            tick(ok_curves)
        ),
    )
}

fn scaling() -> Check {
    let c = scaling_coefficient(0.9093581907426893f64, 2.1e9).unwrap();
    check((c - 2309321037.0).abs() <= 1.0, format!("cd = {c}"))
}

fn equivalent_on_words(raw: &SopExpression, min: &SopExpression, words: &[u32]) -> bool {
    (0..raw.outputs.len()).all(|k| words.iter().all(|&w| raw.eval(k, w) == min.eval(k, w)))
}

fn sop_synthesis() -> Check {
    let words: Vec<u32> = all_words().iter().map(|w| Term::of_word(w).0).collect();
    let perm = generate_perm_sop();
    let pm = minimize(&perm);
    let cancel = generate_cancel_sop();
    let cm = minimize(&cancel);
    let p0: HashSet<String> = pm.sop.outputs[0].iter().map(|t| t.to_string()).collect();
    let p0_ok = p0 == HashSet::from(["W_3·W_6".to_string(), "W_3·W_5".to_string()]);
    let c1_ok =
        cm.sop.line(1).starts_with("C_1 = W_1·W_7 + W_1·W_6 + W_1·W_3·W_5 + W_3·W_7·W_9 + W_2·W_6·W_9");
    let eq = equivalent_on_words(&perm, &pm.sop, &words) && equivalent_on_words(&cancel, &cm.sop, &words);
    check(
        pm.removed == 1044 && p0_ok && c1_ok && eq,
        format!(
            "removed {}, P_0 {}, C_1 head {}, equivalence over {} words {}",
            pm.removed,
            tick(p0_ok),
            tick(c1_ok),
            words.len(),
            tick(eq)
        ),
    )
}

fn gate_tables() -> Check {
    let fs: [(&str, GroupMap); 4] = [
        ("x1", |g| apply_x(Target::Q1, g)),
        ("x2", |g| apply_x(Target::Q2, g)),
        ("x12", |g| apply_x(Target::Both, g)),
        ("cnot", apply_cnot),
    ];
    let mut bad = Vec::new();
    for (name, f) in fs {
        let image: HashSet<GroupState> = GroupState::all().map(f).collect();
        if image.len() != 12 || !GroupState::all().all(|g| f(f(g)) == g) {
            bad.push(name);
        }
    }
    // Rows where the x1 image keeps or changes surface with reversed order.
    let want: HashSet<ReflectionCase> =
        [(1, 1, 0, 2), (1, 1, 2, 0), (1, 2, 3, 1), (2, 3, 0, 2), (3, 3, 1, 3), (3, 3, 3, 1)]
            .into_iter()
            .map(|(os, fs, ov, fv)| ReflectionCase {
                orig_surface: os,
                final_surface: fs,
                orig_vertex: ov,
                final_vertex: fv,
            })
            .collect();
    let got: HashSet<ReflectionCase> = x1_reflection_cases().into_iter().collect();
    let refl_ok = got == want
        && got.iter().all(|c| {
            apply_x(Target::Q1, GroupState::new(c.orig_vertex, c.orig_surface).unwrap())
                == GroupState::new(c.final_vertex, c.final_surface).unwrap()
        });
    let t = i_shift_table();
    let anti = (0..16).all(|k| t[k].shift == -t[15 - k].shift);
    check(
        bad.is_empty() && refl_ok && anti,
        format!("non-involutive {bad:?}, reflections {}, shift antisymmetry {}", tick(refl_ok), tick(anti)),
    )
}

fn flag_processor() -> Check {
    let mut fold_ok = true;
    for n_i in 0..=8u64 {
        for n_neg in 0..=8u64 {
            for p in FlagPair::ALL {
                let mut q = p;
                for _ in 0..n_i {
                    q = mul_i(q);
                }
                for _ in 0..n_neg {
                    q = negate(q);
                }
                fold_ok &= summarize(n_i, n_neg, p) == q;
            }
        }
    }
    let cyc = FlagPair::ALL.iter().all(|&p| mul_i(mul_i(mul_i(mul_i(p)))) == p && negate(negate(p)) == p);
    check(fold_ok && cyc, format!("fold {}, cycles {}", tick(fold_ok), tick(cyc)))
}

fn codec() -> Check {
    let mut worst: f64 = 0.0;
    let mut compared = 0;
    for g in 1..=6 {
        for a in 1..=100u64 {
            if let Some(o) = geometric_phi_oracle(a, 0.0, g as f64).unwrap() {
                worst = worst.max((o - encode_phi(a, g as f64)).abs());
                compared += 1;
            }
        }
    }
    let d = DeviceSpec64::ax7maf1();
    let mut decoded = 0;
    let mut misses = 0;
    for g in [2.0, 3.0, 4.0, 5.0, 6.0, 24.96] {
        let c = count_states_on_curve(g, &d, false).unwrap();
        let top = c.last_a - 1;
        for a in 1..=top {
            let phi = encode_phi(a, g);
            if phi.is_nan() {
                continue;
            }
            decoded += 1;
            if decode_a(phi, g, top).unwrap() != a {
                misses += 1;
            }
        }
    }
    let mut theta_worst: f64 = 0.0;
    for k in 0..=2000 {
        let b = -1.0 + k as f64 / 1000.0;
        theta_worst = theta_worst.max((decode_b(b.asin()).unwrap() - b).abs());
    }
    check(
        worst < 1e-6 && misses == 0 && theta_worst < 1e-12,
        format!(
            "oracle gap {worst:.2e} over {compared} points, {misses}/{decoded} decode misses, theta gap {theta_worst:.1e}"
        ),
    )
}

fn simulator() -> Check {
    let c = Circuit::parse(TELEPORT).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst: f64 = 0.0;
    let mut branches_ok = true;
    for _ in 0..50 {
        let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let input = Ensemble64::new(
            vec![
                PureState::with_amplitude(Complex::new(v[0] / n, v[1] / n), "000"),
                PureState::with_amplitude(Complex::new(v[2] / n, v[3] / n), "001"),
            ],
            3,
        )
        .unwrap();
        let rho_in = input.get_density_matrix(2).unwrap();
        let mut seen = HashSet::new();
        for seed in 0..200 {
            let out = c.run_on(input.clone().with_seed(seed)).unwrap();
            worst = worst.max(max_abs_diff(&rho_in, &out.ensemble.get_density_matrix(1).unwrap()));
            seen.insert(out.outcome());
            if seen.len() == 4 {
                break;
            }
        }
        branches_ok &= seen.len() == 4;
    }

    let mut ones = 0u32;
    let mut correlated = true;
    for seed in 0..1000 {
        let mut e = Ensemble64::zero(2).unwrap().with_seed(seed);
        e.h(0).unwrap().cx(0, 1).unwrap();
        let a = e.m(0).unwrap();
        correlated &= e.m(1).unwrap() == a;
        ones += a as u32;
    }
    let freq = ones as f64 / 1000.0;

    let mut norm_worst: f64 = 0.0;
    for seed in 0..500 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = rng.gen_range(1..=5usize);
        let mut e = Ensemble64::zero(q).unwrap().with_seed(seed);
        for _ in 0..10 {
            let k = rng.gen_range(0..q);
            match rng.gen_range(0..6) {
                0 => drop(e.h(k).unwrap()),
                1 => drop(e.x(k).unwrap()),
                2 => drop(e.y(k).unwrap()),
                3 => drop(e.z(k).unwrap()),
                4 if q > 1 => drop(e.cx(k, (k + 1) % q).unwrap()),
                _ => drop(e.m(k).unwrap()),
            }
            norm_worst = norm_worst.max((e.norm_sqr() - 1.0).abs());
        }
    }
    let ok = worst < 1e-10 && branches_ok && correlated && (freq - 0.5).abs() <= 0.05 && norm_worst < 1e-10;
    check(
        ok,
        format!(
            "teleport gap {worst:.1e} (all branches {}), Bell freq {freq} correlated {}, norm drift {norm_worst:.1e}",
            tick(branches_ok),
            tick(correlated)
        ),
    )
}

fn formulas() -> Check {
    let p20: f64 = precision_percent(20).unwrap();
    let pc: f64 = per_curve_precision(189.38715).unwrap();
    let n1 = naive_component_count(1).unwrap();
    let bytes = FlagMemoryLayout::new(20).unwrap().flag_bytes();
    let ok = (p20 - 1.0).abs() < 1e-12 && (pc - 0.264).abs() <= 0.001 && n1 == 5 && bytes == 262144;
    check(ok, format!("precision(20) {p20}%, per-curve {pc:.4}%, parts(1) {n1}, flag bytes(20) {bytes}"))
}

fn main() -> ExitCode {
    let checks: [(&str, CheckFn); 9] = [
        ("unscaled census", unscaled_census),
        ("scaled census", scaled_census),
        ("scaling coefficient", scaling),
        ("sop synthesis", sop_synthesis),
        ("gate tables", gate_tables),
        ("flag processor", flag_processor),
        ("codec", codec),
        ("simulator", simulator),
        ("formula spot checks", formulas),
    ];
    let mut failed = 0;
    for (name, f) in checks {
        let t = Instant::now();
        let c = f();
        let tag = if c.ok { "PASS" } else { "FAIL" };
        println!("{tag} {name}: {} [{:.1}s]", c.detail, t.elapsed().as_secs_f64());
        failed += !c.ok as u32;
    }
    println!("{} of 9 passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
