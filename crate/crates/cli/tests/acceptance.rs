//! Exit criteria for the whole workspace. Every criterion runs, prints one
//! PASS/FAIL line, and the test fails if any criterion failed.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use partial_search_core::analysis::{
    asymptotic_query_count, canonical_schedule, lower_bound, observation_a_simulated,
    observation_b_predicted, observation_b_simulated, optimal_local_iterations, predicted_savings,
    saving_function, savings_coefficient, sweep_schedules, zeroing_ratio,
    PRIOR_SAVINGS_COEFFICIENT,
};
use partial_search_core::{max_engine_divergence, partial_search, SearchSpace, Step};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn space(n: u64, k: u64) -> SearchSpace {
    SearchSpace::new(n, k).unwrap()
}

fn full(n: u64) -> f64 {
    PI / 4.0 * (n as f64).sqrt()
}

/// Spaces with b >= 256 used by the success and zeroing criteria.
fn large_block_spaces() -> Vec<SearchSpace> {
    let mut out = Vec::new();
    for b in [256u64, 1024, 4096, 16384, 65536] {
        for k in [4u64, 16] {
            out.push(space(b * k, k));
        }
    }
    out
}

fn criterion_1_cross_engine() -> Outcome {
    const TOL: f64 = 1e-10;
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let mut runs = 0usize;
    let mut worst = 0.0f64;
    for n in [8u64, 16, 64, 256, 1024, 4096] {
        for k in [1u64, 2, 4, 8, 16] {
            if k > n || n % k != 0 {
                continue;
            }
            let b = n / k;
            for i in 0..40 {
                let s = SearchSpace::with_target(n, k, rng.gen_range(0..k), rng.gen_range(0..b))
                    .unwrap();
                let steps: Vec<Step> = if i < 20 {
                    // (j1, j2, final) schedules.
                    let schedule = partial_search_core::Schedule::new(
                        rng.gen_range(0..=100),
                        rng.gen_range(0..=99),
                        rng.gen_bool(0.5),
                    );
                    schedule.steps().collect()
                } else {
                    // Arbitrary interleavings.
                    let len = rng.gen_range(0..=200);
                    (0..len)
                        .map(|_| {
                            if rng.gen_bool(0.5) {
                                Step::Local
                            } else {
                                Step::Global
                            }
                        })
                        .collect()
                };
                worst = worst.max(max_engine_divergence(s, steps, 1 << 14).unwrap());
                runs += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= TOL && runs >= 1000 && elapsed < Duration::from_secs(60),
        format!(
            "{runs} runs, max |diff| {worst:.3e} (tol {TOL:e}), {:.1}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_2_query_formula() -> Outcome {
    // round((pi/4) sqrt N - (sqrt(3)/2 - pi/6) sqrt b), evaluated independently.
    let table: [(u64, u64, u64); 13] = [
        (256, 4, 10),
        (1024, 4, 20),
        (1024, 16, 22),
        (4096, 4, 39),
        (4096, 16, 45),
        (16384, 4, 79),
        (65536, 4, 157),
        (65536, 16, 179),
        (1 << 20, 4, 629),
        (1 << 20, 16, 717),
        (1 << 24, 64, 3042),
        (1_000_000, 100, 751),
        (12288, 3, 65),
    ];
    let mut bad = Vec::new();
    for (n, k, expected) in table {
        let s = space(n, k);
        let q = canonical_schedule(&s).unwrap().schedule.query_count();
        if q != expected || q != asymptotic_query_count(&s).round() as u64 {
            bad.push(format!("({n},{k}): {q} != {expected}"));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} pairs, mismatches: {bad:?}", table.len()),
    )
}

fn criterion_3_savings() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for (b, lo, hi) in [(256u64, 0.27, 0.41), (1024, 0.27, 0.41), (4096, 0.31, 0.37)] {
        let s = space(4 * b, 4);
        let q = canonical_schedule(&s).unwrap().schedule.query_count() as f64;
        let coef = (full(s.n_items()) - q) / (b as f64).sqrt();
        ok &= (lo..=hi).contains(&coef);
        detail.push(format!("b={b}: {coef:.4} in [{lo}, {hi}]"));
    }
    outcome(ok, detail.join("; "))
}

fn criterion_4_block_success() -> Outcome {
    let mut ok = true;
    let mut worst = 1.0f64;
    for s in large_block_spaces() {
        let p =
            partial_search(s, canonical_schedule(&s).unwrap().schedule).block_success_probability;
        let threshold = if s.block_size() >= 4096 { 0.99 } else { 0.95 };
        ok &= p >= threshold;
        worst = worst.min(p);
    }
    outcome(ok, format!("lowest block probability {worst:.6}"))
}

fn criterion_5_observation_a() -> Outcome {
    let mut ok = true;
    let mut worst = 0.0f64;
    for b in [64u64, 256, 1024] {
        let root = (b as f64).sqrt();
        for eta in [0.2 * root, 0.4 * root, PI / 6.0 * root, 0.7 * root] {
            let sim = observation_a_simulated(b, eta).unwrap().value;
            let err = (sim - root * (2.0 * eta / root).sin()).abs() / root;
            ok &= err <= 3.0 / root;
            worst = worst.max(err * root);
        }
    }
    outcome(ok, format!("largest |sim - pred| {worst:.3} (limit 3)"))
}

fn criterion_6_observation_b() -> Outcome {
    let mut ok = true;
    let mut worst_small = 0.0f64;
    let mut worst_full = 0.0f64;
    for n in [1u64 << 12, 1 << 16, 1 << 20] {
        let root = (n as f64).sqrt();
        for eta in [2.0, 4.0, 8.0] {
            let sim = observation_b_simulated(n, eta).unwrap().value;
            let small = (sim - 2.0 * eta).abs();
            let err = (sim - observation_b_predicted(n, eta)).abs() / root;
            ok &= small <= 3.0 && err <= 3.0 / root;
            worst_small = worst_small.max(small);
            worst_full = worst_full.max(err * root);
        }
    }
    outcome(
        ok,
        format!("largest |sim - 2 eta| {worst_small:.3}, |sim - pred| {worst_full:.3} (limits 3)"),
    )
}

fn criterion_7_zeroing() -> Outcome {
    let mut ok = true;
    let mut max_leak = 0.0f64;
    let (mut lo, mut hi) = (f64::MAX, f64::MIN);
    for s in large_block_spaces() {
        let trace = partial_search(s, canonical_schedule(&s).unwrap().schedule);
        let ratio = zeroing_ratio(&trace.before_final_step()).unwrap();
        ok &= trace.outside_mass <= 0.05 && (0.8..=1.2).contains(&ratio);
        max_leak = max_leak.max(trace.outside_mass);
        lo = lo.min(ratio);
        hi = hi.max(ratio);
    }
    outcome(
        ok,
        format!("max outside mass {max_leak:.2e}, ratio range [{lo:.4}, {hi:.4}]"),
    )
}

fn criterion_8_optimum() -> Outcome {
    let mut ok = true;
    let mut worst_step = 0.0f64;
    let mut worst_value = 0.0f64;
    for b in 16u64..=4096 {
        let bf = b as f64;
        let o = optimal_local_iterations(b);
        // Brute-force argmax of f over the integers, independent of the library.
        let upper = (PI / 2.0 * bf.sqrt()).ceil() as u64;
        let mut argmax = 0u64;
        for eta in 1..=upper {
            if saving_function(bf, eta as f64) > saving_function(bf, argmax as f64) {
                argmax = eta;
            }
        }
        let analytic = PI / 6.0 * bf.sqrt();
        let closed = (3f64.sqrt() / 2.0 - PI / 6.0) * bf.sqrt();
        let step = (analytic - argmax as f64).abs();
        let value = (saving_function(bf, analytic) - closed).abs();
        ok &= step <= 1.0
            && value <= 1e-12
            && o.grid_argmax == argmax
            && (o.eta_star - analytic).abs() <= 1e-12;
        worst_step = worst_step.max(step);
        worst_value = worst_value.max(value);
    }
    outcome(
        ok,
        format!("b in 16..=4096: max |eta* - argmax| {worst_step:.3}, max |f(eta*) - closed form| {worst_value:.1e}"),
    )
}

fn criterion_9_lower_bound() -> Outcome {
    let mut spaces = large_block_spaces();
    for n_exp in 2u32..=30 {
        for k_exp in 1..n_exp {
            spaces.push(space(1 << n_exp, 1 << k_exp));
        }
    }
    let mut checked = 0;
    let mut ok = true;
    for s in &spaces {
        if let Ok(c) = canonical_schedule(s) {
            ok &= c.schedule.query_count() as f64 >= lower_bound(s);
            checked += 1;
        }
    }
    let mut empirical = Vec::new();
    for (n, k) in [
        (1024u64, 4u64),
        (4096, 4),
        (1 << 16, 4),
        (1 << 20, 4),
        (1 << 16, 16),
    ] {
        let s = space(n, k);
        let c = canonical_schedule(&s).unwrap().schedule;
        let sweep = sweep_schedules(
            &s,
            c.global_iters.saturating_sub(8)..=c.global_iters + 8,
            c.local_iters.saturating_sub(8)..=c.local_iters + 8,
        )
        .unwrap();
        let cheapest = sweep.cheapest_at(0.99).expect("some schedule reaches 0.99");
        ok &= cheapest.query_count as f64 >= lower_bound(&s);
        empirical.push(format!(
            "({n},{k}): {} >= {:.2}",
            cheapest.query_count,
            lower_bound(&s)
        ));
    }
    outcome(
        ok,
        format!(
            "{checked} canonical spaces; empirical best at 0.99: {}",
            empirical.join(", ")
        ),
    )
}

fn criterion_10_comparison_constant() -> Outcome {
    let coef = savings_coefficient();
    let pinned = format!("{coef:.6}");
    let scale_free = (predicted_savings(256.0) / 16.0 - coef).abs() < 1e-15;
    outcome(
        pinned == "0.342427" && coef > PRIOR_SAVINGS_COEFFICIENT && scale_free,
        format!("coefficient {pinned} vs prior {PRIOR_SAVINGS_COEFFICIENT}"),
    )
}

fn criterion_11_determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_partial-search"))
            .args(["verify", "--n", "1048576", "--k", "4", "--format", "json"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    outcome(
        a.status.success() && b.status.success() && a.stdout == b.stdout && !a.stdout.is_empty(),
        format!(
            "{} bytes, identical: {}",
            a.stdout.len(),
            a.stdout == b.stdout
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("1 cross-engine equivalence", criterion_1_cross_engine),
        ("2 query formula reproduction", criterion_2_query_formula),
        ("3 savings claim", criterion_3_savings),
        ("4 block identification", criterion_4_block_success),
        ("5 observation (a)", criterion_5_observation_a),
        ("6 observation (b)", criterion_6_observation_b),
        ("7 observation (c)", criterion_7_zeroing),
        ("8 optimum", criterion_8_optimum),
        ("9 lower bound", criterion_9_lower_bound),
        ("10 comparison constant", criterion_10_comparison_constant),
        ("11 determinism", criterion_11_determinism),
    ];
    let mut failed = Vec::new();
    println!();
    for (name, check) in criteria {
        let o = check();
        println!(
            "[{}] {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.passed {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
