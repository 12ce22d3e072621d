//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::process::Command;
use std::time::Instant;

use qgame_core::analysis::{
    analytic_nash_bound_check, dominant_strategy, find_nash, is_pareto_optimal, maximin, nash_slack,
    threshold_gamma, verify_correspondence,
};
use qgame_core::{
    classical_mixed_oracle, entangling_gate, play, ComplexScalar as C, Game, PayoffTable, StrategyGrid,
    StrategyParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn standard(gamma: f64) -> Game {
    Game::new(gamma, PayoffTable::STANDARD).unwrap()
}

fn random_params(rng: &mut ChaCha8Rng) -> StrategyParams {
    StrategyParams::new(rng.gen_range(0.0..=PI), rng.gen_range(0.0..=FRAC_PI_2)).unwrap()
}

fn quantum_pair_payoff() -> Outcome {
    let q = StrategyParams::QUANTUM;
    let p = play(FRAC_PI_2, q, q, &PayoffTable::STANDARD).unwrap().payoffs;
    let err = (p.alice - 3.0).abs().max((p.bob - 3.0).abs());
    ensure(err <= 1e-12, format!("payoffs ({}, {}), error {err:e}", p.alice, p.bob))
}

fn analytic_bound() -> Outcome {
    let c = analytic_nash_bound_check(&StrategyGrid::new(101, 51).unwrap());
    ensure(
        c.max_deviation <= 1e-10 && c.max_payoff <= 3.0 + 1e-12,
        format!("max deviation {:e}, max payoff {}", c.max_deviation, c.max_payoff),
    )
}

fn classical_faithfulness() -> Outcome {
    let table = PayoffTable::STANDARD;
    let nodes = StrategyGrid::classical(33).unwrap().classical_nodes();
    let mut worst: f64 = 0.0;
    for gamma in [0.0, FRAC_PI_4, FRAC_PI_2] {
        let g = standard(gamma);
        for a in &nodes {
            for b in &nodes {
                let got = g.payoffs(*a, *b);
                let want =
                    classical_mixed_oracle(a.cooperation_probability(), b.cooperation_probability(), &table).unwrap();
                worst = worst.max((got.alice - want.alice).abs()).max((got.bob - want.bob).abs());
            }
        }
    }
    ensure(worst <= 1e-10, format!("max deviation from biased coins {worst:e}"))
}

fn separable_game() -> Outcome {
    let g = standard(0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (a, b) = (random_params(&mut rng), random_params(&mut rng));
        let d = g.play(a, b).distribution.as_array();
        let (ca, cb) = (a.cooperation_probability(), b.cooperation_probability());
        let want = [ca * cb, ca * (1.0 - cb), (1.0 - ca) * cb, (1.0 - ca) * (1.0 - cb)];
        for k in 0..4 {
            worst = worst.max((d[k] - want[k]).abs());
        }
    }
    let grid = StrategyGrid::default();
    let dominant = dominant_strategy(&g, &grid);
    let eq = find_nash(&g, &grid, 1e-3);
    let d = StrategyParams::DEFECT;
    let single = eq.len() == 1
        && eq[0].alice.distance(&d) < 1e-6
        && eq[0].bob.distance(&d) < 1e-6
        && (eq[0].payoffs.alice - 1.0).abs() < 1e-9
        && (eq[0].payoffs.bob - 1.0).abs() < 1e-9;
    ensure(
        worst <= 1e-10 && dominant == Some(d) && single,
        format!("factorization {worst:e}, dominant {dominant:?}, {} cluster(s)", eq.len()),
    )
}

fn entangled_game() -> Outcome {
    let epsilon = 1e-3;
    let g = standard(FRAC_PI_2);
    let grid = StrategyGrid::default();
    let d = StrategyParams::DEFECT;
    let q = StrategyParams::QUANTUM;
    let dd_slack = nash_slack(&g, (d, d), &grid);
    let eq = find_nash(&g, &grid, epsilon);
    let single = eq.len() == 1 && eq[0].alice.distance(&q) < 1e-4 && eq[0].bob.distance(&q) < 1e-4;
    let pareto = is_pareto_optimal(&g, (q, q), &grid);
    ensure(
        dd_slack > epsilon && single && pareto,
        format!("(D,D) slack {dd_slack}, {} cluster(s), (Q,Q) Pareto {pareto}", eq.len()),
    )
}

fn correlation_formula() -> Outcome {
    let g = standard(FRAC_PI_2);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (a, b) = (random_params(&mut rng), random_params(&mut rng));
        let want = ((a.phi() + b.phi()).cos() * (a.theta() / 2.0).cos() * (b.theta() / 2.0).cos()).powi(2);
        worst = worst.max((g.play(a, b).distribution.p_cc - want).abs());
    }
    ensure(worst <= 1e-10, format!("max deviation {worst:e}"))
}

fn miracle_move() -> Outcome {
    let g = standard(FRAC_PI_2);
    let (mut min_a, mut max_b) = (f64::INFINITY, f64::NEG_INFINITY);
    for k in 0..1001 {
        let bob = StrategyParams::classical(PI * k as f64 / 1000.0).unwrap();
        let p = g.payoffs(StrategyParams::MIRACLE, bob);
        min_a = min_a.min(p.alice);
        max_b = max_b.max(p.bob);
    }
    ensure(
        min_a >= 3.0 - 1e-9 && max_b <= 0.5 + 1e-9,
        format!("min Alice {min_a}, max Bob {max_b}"),
    )
}

/// Round-off allowance when comparing neighbouring values of m on its flat stretch.
const MONOTONE_SLACK: f64 = 1e-12;

fn maximin_curve() -> Outcome {
    let grid = StrategyGrid::default();
    let m: Vec<f64> = (0..65).map(|k| maximin(&standard(FRAC_PI_2 * k as f64 / 64.0), &grid).m).collect();
    let worst_drop = m.windows(2).map(|w| w[0] - w[1]).fold(0.0, f64::max);
    ensure(
        (m[0] - 1.0).abs() <= 1e-6 && (m[64] - 3.0).abs() <= 1e-6 && worst_drop <= MONOTONE_SLACK,
        format!("m(0) = {}, m(pi/2) = {}, largest drop {worst_drop:e}", m[0], m[64]),
    )
}

fn threshold() -> Outcome {
    let g = threshold_gamma(&PayoffTable::STANDARD, &StrategyGrid::default(), 1e-4).map_err(|e| e.to_string())?;
    let reference = (1.0 / 5f64.sqrt()).asin();
    ensure((g - reference).abs() <= 1e-3, format!("gamma_th {g}, reference {reference}"))
}

fn series_exponential(gamma: f64) -> [[C; 4]; 4] {
    // D⊗D is the anti-diagonal with entries (1, -1, -1, 1) reading down the rows.
    let mut x = [[C::new(0.0, 0.0); 4]; 4];
    for (i, sign) in [1.0, -1.0, -1.0, 1.0].into_iter().enumerate() {
        x[i][3 - i] = C::new(0.0, sign * gamma / 2.0);
    }
    let mut sum = [[C::new(0.0, 0.0); 4]; 4];
    let mut term = sum;
    for i in 0..4 {
        sum[i][i] = C::new(1.0, 0.0);
        term[i][i] = C::new(1.0, 0.0);
    }
    for n in 1..20 {
        let mut next = [[C::new(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    next[i][j] += term[i][k] * x[k][j];
                }
                next[i][j] /= n as f64;
            }
        }
        term = next;
        for i in 0..4 {
            for j in 0..4 {
                sum[i][j] += term[i][j];
            }
        }
    }
    sum
}

fn oracle_equivalence() -> Outcome {
    let mut gate_err: f64 = 0.0;
    let mut commutator: f64 = 0.0;
    for k in 0..50 {
        let gamma = FRAC_PI_2 * k as f64 / 49.0;
        let j = entangling_gate(gamma).unwrap();
        let s = series_exponential(gamma);
        for (row, srow) in j.entries().iter().zip(&s) {
            for (a, b) in row.iter().zip(srow) {
                gate_err = gate_err.max((a - b).norm());
            }
        }
        commutator = commutator.max(verify_correspondence(gamma).unwrap().max_commutator());
    }
    ensure(
        gate_err <= 1e-12 && commutator <= 1e-12,
        format!("series deviation {gate_err:e}, commutator residual {commutator:e}"),
    )
}

fn run_cli(args: &[&str], threads: Option<&str>) -> Result<Vec<u8>, String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qgame"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.args(["--threads", t]);
    }
    let out = cmd.output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}", out.status));
    }
    Ok(out.stdout)
}

fn cli_determinism() -> Outcome {
    let runs: [&[&str]; 8] = [
        &["play", "--alice", "0.3,1.1", "--bob", "2.0,0.4"],
        &["surface"],
        &["surface", "--gamma", "0"],
        &["maximin-curve"],
        &["miracle"],
        &["nash"],
        &["threshold"],
        &["verify"],
    ];
    for args in runs {
        let first = run_cli(args, None)?;
        for threads in [None, Some("1"), Some("4")] {
            if run_cli(args, threads)? != first {
                return Err(format!("{} differs with threads {threads:?}", args.join(" ")));
            }
        }
    }
    Ok(format!("{} invocations byte-identical over 4 runs each", runs.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("Q x Q payoff", quantum_pair_payoff),
        ("analytic Nash bound", analytic_bound),
        ("classical faithfulness", classical_faithfulness),
        ("separable game", separable_game),
        ("maximally entangled game", entangled_game),
        ("entangled correlation formula", correlation_formula),
        ("miracle move", miracle_move),
        ("maximin endpoints and shape", maximin_curve),
        ("threshold", threshold),
        ("oracle equivalence", oracle_equivalence),
        ("CLI determinism", cli_determinism),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {name}: {detail} [{secs:.1}s]");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
