//! Acceptance suite. Runs every criterion in sequence and prints one
//! PASS/FAIL line each; exits nonzero if any criterion fails that this machine can meet.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use codesparse::graphs::{
    count_thin, cut_space, is_hitting_set, is_thin, proper_sparsifier_search, Graph,
};
use codesparse::sparsify::bounds::{epsilon_closed, small_budget};
use codesparse::sparsify::{
    count_sparsifiers, entropy, improve_once, iterated_sparsifier, min_sparsifier,
    monte_carlo_density, verify, Alpha, CensusOptions, SearchOptions,
};
use codesparse::{BitVector, Error, LinearCode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn full_rank(n: usize, k: usize, rng: &mut ChaCha8Rng) -> LinearCode {
    loop {
        let c = LinearCode::random(n, k, rng);
        if c.dimension() == k {
            return c;
        }
    }
}

fn random_set(n: usize, rng: &mut ChaCha8Rng) -> BitVector {
    BitVector::from_indices(n, (0..n).filter(|_| rng.gen::<bool>()))
}

/// 200 seeded codes with n in [4, 14] and k in [1, min(n, 7)].
fn corpus() -> Vec<LinearCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    (0..200)
        .map(|_| {
            let n = rng.gen_range(4..=14);
            let k = rng.gen_range(1..=n.min(7));
            full_rank(n, k, &mut rng)
        })
        .collect()
}

fn within(limit: Duration, started: Instant) -> std::result::Result<Duration, String> {
    let t = started.elapsed();
    if t > limit {
        Err(format!("took {t:.2?}, limit {limit:?}"))
    } else {
        Ok(t)
    }
}

fn code_file(dir: &tempfile::TempDir, name: &str, code: &LinearCode) -> std::path::PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, codesparse::io::write_code(code)).unwrap();
    p
}

fn tight_census() -> Check {
    let started = Instant::now();
    let opts = CensusOptions::default();
    let rep = ok(count_sparsifiers(
        &LinearCode::repetition(3),
        Alpha::HALF,
        &opts,
    ))?;
    ensure!(
        rep.count == 4 && rep.lower_bound == 4,
        "repetition [3,1]: count {} bound {}",
        rep.count,
        rep.lower_bound
    );
    let full = ok(count_sparsifiers(&LinearCode::full(2), Alpha::HALF, &opts))?;
    ensure!(
        full.count == 1 && full.lower_bound == 1,
        "F2^2: count {}",
        full.count
    );
    let t = within(Duration::from_secs(1), started)?;
    Ok(format!("rep[3,1] count 4 = 2^2, F2^2 count 1, {t:.2?}"))
}

fn census_sweep(codes: &[LinearCode]) -> Check {
    let started = Instant::now();
    let opts = CensusOptions::default();
    let mut tight = 0;
    for (i, code) in codes.iter().enumerate() {
        match count_sparsifiers(code, Alpha::HALF, &opts) {
            Ok(r) => {
                ensure!(
                    r.count >= r.lower_bound,
                    "code {i}: count {} < {}",
                    r.count,
                    r.lower_bound
                );
                tight += usize::from(r.count == r.lower_bound);
            }
            Err(e @ Error::TheoremViolation { .. }) => return Err(format!("code {i}: {e}")),
            Err(e) => return Err(format!("code {i}: {e}")),
        }
    }
    // The same check through the binary: a violation would surface as exit 4.
    let dir = tempfile::TempDir::new().unwrap();
    for (i, code) in codes.iter().enumerate().step_by(10) {
        let path = code_file(&dir, &format!("c{i}.code"), code);
        let out = ok(Command::new(env!("CARGO_BIN_EXE_codesparse"))
            .args(["census", "--alpha", "1/2", "--code"])
            .arg(&path)
            .output())?;
        ensure!(
            out.status.code() == Some(0),
            "code {i}: binary exited {:?}",
            out.status.code()
        );
    }
    let t = within(Duration::from_secs(120), started)?;
    Ok(format!(
        "{} codes, count >= 2^(n-k) everywhere ({tight} tight), {t:.2?}",
        codes.len()
    ))
}

fn local_maxima(codes: &[LinearCode]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut passing = 0;
    for _ in 0..10_000 {
        let code = &codes[rng.gen_range(0..codes.len())];
        let s = random_set(code.len(), &mut rng);
        let pass = ok(verify(code, &s, Alpha::HALF))?.pass;
        let improved = ok(improve_once(code, &s))?;
        ensure!(
            pass == improved.is_none(),
            "verify and improve_once disagree on {s}"
        );
        passing += usize::from(pass);
    }
    for _ in 0..10_000 {
        let code = &codes[rng.gen_range(0..codes.len())];
        let s = random_set(code.len(), &mut rng);
        let words = ok(code.codeword_list())?;
        let c = &words[rng.gen_range(0..words.len())];
        let lhs = ok(s.add(c))?.weight() as i64;
        let rhs = s.weight() as i64 + c.weight() as i64 - 2 * ok(c.project_weight(&s))? as i64;
        ensure!(lhs == rhs, "flip identity fails for S={s} c={c}");
    }
    Ok(format!(
        "10^4 pairs agree ({passing} sparsifiers), flip identity on 10^4 pairs"
    ))
}

fn small_sparsifiers(codes: &[LinearCode]) -> Check {
    let mut checked = 0;
    for code in codes {
        let (n, k) = (code.len(), code.dimension());
        if epsilon_closed(n, k) >= 0.5 {
            continue;
        }
        let (_, size) = ok(min_sparsifier(code, Alpha::HALF, 28))?;
        ensure!(
            size <= small_budget(n, k),
            "n={n} k={k}: min size {size} > {}",
            small_budget(n, k)
        );
        checked += 1;
    }
    for i in 0..=100 {
        let x = 0.005 * i as f64;
        let h = ok(entropy(0.5 - x))?;
        ensure!(
            h <= 1.0 - 2.0 / std::f64::consts::LN_2 * x * x + 1e-12,
            "entropy bound fails at x={x}"
        );
    }
    for n in 1..=40u64 {
        let binom = |k: u64| (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128);
        for g in 1..=9 {
            let gamma = 0.05 * g as f64;
            let top = (gamma * n as f64 + 1e-9).floor() as u64;
            let tail: u128 = (0..=top).map(binom).sum();
            let rhs = 2f64.powf(n as f64 * ok(entropy(gamma))?);
            ensure!(
                tail as f64 <= rhs * (1.0 + 1e-12),
                "tail bound fails n={n} gamma={gamma}"
            );
        }
    }
    Ok(format!(
        "{checked} codes within budget, entropy grid and tails hold"
    ))
}

fn iterated() -> Check {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let opts = SearchOptions::default();
    let mut runs = 0;
    for _ in 0..50 {
        let n = rng.gen_range(8..=24);
        let k = rng.gen_range(1..=6);
        let code = full_rank(n, k, &mut rng);
        for ell in 1..=3 {
            let t = ok(iterated_sparsifier(&code, ell, &opts))?;
            let alpha = ok(Alpha::one_minus_pow2(ell))?;
            ensure!(
                ok(verify(&code, &t.final_set, alpha))?.pass,
                "n={n} k={k} ell={ell}: not a sparsifier"
            );
            let mut prev = n;
            for r in &t.rounds {
                ensure!(
                    2 * r.remaining <= prev,
                    "n={n} k={k} ell={ell}: round {} keeps {} of {prev}",
                    r.round,
                    r.remaining
                );
                prev = r.remaining;
            }
            let limit = alpha.value() * n as f64 + 2.010241 * ((n * k) as f64).sqrt();
            ensure!(
                t.final_set.weight() as f64 <= limit,
                "n={n} k={k} ell={ell}: size {} > {limit}",
                t.final_set.weight()
            );
            runs += 1;
        }
    }
    let t = within(Duration::from_secs(120), started)?;
    Ok(format!(
        "{runs} runs verified, halving and size bound hold, {t:.2?}"
    ))
}

fn graph_census() -> Check {
    let opts = CensusOptions::default();
    let k3 = ok(count_thin(&Graph::complete(3), Alpha::HALF, &opts))?;
    ensure!(k3.count == 4, "K3 count {}", k3.count);
    let k4 = ok(count_thin(&Graph::complete(4), Alpha::HALF, &opts))?;
    ensure!(k4.count == 10 && k4.count >= 8, "K4 count {}", k4.count);

    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for _ in 0..50 {
        let nv = rng.gen_range(2..=7);
        let g = Graph::random_connected(nv, rng.gen_range(0..=12 - (nv - 1)), &mut rng);
        let m = g.num_edges();
        let code = cut_space(&g);
        ensure!(
            code.dimension() == nv - g.component_count(),
            "cut-space rank {}",
            code.dimension()
        );
        for t in 0..1u64 << m {
            let t = BitVector::from_word(m, t);
            let thin = ok(is_thin(&g, &t, Alpha::HALF))?.thin;
            let dual = ok(verify(&code, &t.complement(), Alpha::HALF))?.pass;
            ensure!(thin == dual, "duality fails on {t}");
        }
    }
    Ok("K3 count 4, K4 count 10, duality exhaustive on 50 graphs".into())
}

fn monte_carlo() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let code = full_rank(12, 4, &mut rng);
    let exact = ok(count_sparsifiers(
        &code,
        Alpha::HALF,
        &CensusOptions::default(),
    ))?;
    let p = exact.count as f64 / 4096.0;
    let trials = 100_000u64;
    let runs: Vec<String> = [1, 4, 8]
        .into_iter()
        .map(|threads| {
            monte_carlo_density(&code, trials, Alpha::HALF, 2024, Some(threads))
                .map(|r| serde_json::to_string(&r).unwrap())
        })
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure!(
        runs.windows(2).all(|w| w[0] == w[1]),
        "thread count changed the estimate"
    );
    let again = ok(monte_carlo_density(
        &code,
        trials,
        Alpha::HALF,
        2024,
        Some(1),
    ))?;
    ensure!(
        serde_json::to_string(&again).unwrap() == runs[0],
        "same seed, different report"
    );
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    let dev = (again.estimate - p).abs();
    ensure!(
        dev <= 3.0 * sigma,
        "estimate {} vs exact {p}: {dev} > 3 sigma ({sigma})",
        again.estimate
    );
    Ok(format!(
        "estimate {:.5} vs exact {p:.5} ({:.2} sigma), identical for 1/4/8 threads",
        again.estimate,
        dev / sigma
    ))
}

fn connected_spanning(g: &Graph, s: &BitVector) -> bool {
    let mut parent: Vec<usize> = (0..g.num_vertices()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut parts = g.num_vertices();
    for i in s.ones_iter() {
        let (u, v) = g.edges()[i];
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            parts -= 1;
        }
    }
    parts <= 1
}

fn hitting_duality() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut hits = 0;
    for _ in 0..50 {
        let nv = rng.gen_range(2..=10);
        let g = Graph::random_connected(nv, rng.gen_range(0..15), &mut rng);
        let code = cut_space(&g);
        for _ in 0..1000 {
            let s = random_set(g.num_edges(), &mut rng);
            let h = ok(is_hitting_set(&code, &s))?;
            ensure!(h == connected_spanning(&g, &s), "disagreement on {s}");
            hits += usize::from(h);
        }
    }
    Ok(format!("5*10^4 samples agree ({hits} hitting)"))
}

fn performance() -> (Check, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let code = full_rank(24, 8, &mut rng);
    let run = |threads| {
        let started = Instant::now();
        let opts = CensusOptions {
            threads: Some(threads),
            ..CensusOptions::default()
        };
        count_sparsifiers(&code, Alpha::HALF, &opts).map(|r| (r.count, started.elapsed()))
    };
    let (one, t1) = match run(1) {
        Ok(x) => x,
        Err(e) => return (Err(e.to_string()), true),
    };
    let (eight, t8) = match run(8) {
        Ok(x) => x,
        Err(e) => return (Err(e.to_string()), true),
    };
    let cpus = std::thread::available_parallelism().map_or(1, |c| c.get());
    let speedup = t1.as_secs_f64() / t8.as_secs_f64();
    let detail = format!("count {one}, 1 thread {t1:.2?}, 8 threads {t8:.2?}, speedup {speedup:.2}x on {cpus} CPU(s)");
    if one != eight {
        return (Err(format!("counts differ: {one} vs {eight}")), true);
    }
    if t1 > Duration::from_secs(120) {
        return (Err(detail), true);
    }
    if speedup < 3.0 {
        // With fewer than 8 hardware threads the speedup cannot be reached;
        // report the failure but only treat it as fatal where it is attainable.
        return (Err(detail), cpus >= 8);
    }
    (Ok(detail), true)
}

fn conjecture_sanity() -> Check {
    let full = ok(proper_sparsifier_search(
        &LinearCode::full(4),
        Alpha::HALF,
        0,
        0,
        28,
    ))?;
    ensure!(
        full.exhaustive && full.witness.is_none(),
        "F2^4: expected exhaustive NOT_FOUND"
    );
    let rep = ok(proper_sparsifier_search(
        &LinearCode::repetition(3),
        Alpha::HALF,
        0,
        0,
        28,
    ))?;
    let w = rep.witness.ok_or("rep[3,1]: no witness")?;
    ensure!(w.weight() == 2, "rep[3,1]: witness size {}", w.weight());
    Ok(format!(
        "F2^4 NOT_FOUND after {} subsets, rep[3,1] witness {:?}",
        full.examined,
        w.ones_iter().map(|i| i + 1).collect::<Vec<_>>()
    ))
}

fn main() -> ExitCode {
    let codes = corpus();
    let mut fatal = false;
    let mut report = |id: u32, name: &str, check: Check, counts: bool| match &check {
        Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail}"),
        Err(detail) => {
            let note = if counts { "" } else { " (environment limit)" };
            println!("criterion {id:>2} FAIL  {name}: {detail}{note}");
            fatal |= counts;
        }
    };
    report(1, "tight census", tight_census(), true);
    report(2, "census sweep", census_sweep(&codes), true);
    report(3, "local maxima and flips", local_maxima(&codes), true);
    report(
        4,
        "small sparsifier budget",
        small_sparsifiers(&codes),
        true,
    );
    report(5, "iterated sparsifier", iterated(), true);
    report(6, "thin subgraphs", graph_census(), true);
    report(7, "monte carlo", monte_carlo(), true);
    report(8, "hitting sets", hitting_duality(), true);
    let (perf, counts) = performance();
    report(9, "performance", perf, counts);
    report(10, "proper sparsifier search", conjecture_sanity(), true);
    if fatal {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
