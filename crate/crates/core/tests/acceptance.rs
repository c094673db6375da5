//! Acceptance checks, one line per criterion. Exits nonzero if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::{
    all_states, brute_cycles, brute_edges, brute_sign, brute_steady_states, fixture, random_pds, random_probabilistic,
    read_fixture, selections, step_sequential,
};
use polydyn::cli;
use polydyn::dynamics::{
    analyze, conjunctive_analysis, functional_circuits, limit_cycles, steady_states, steady_states_probabilistic,
    wiring_diagram, AnalysisOptions, Sign, DEFAULT_CIRCUIT_CAP, DEFAULT_EDGE_CHECK_CAP,
};
use polydyn::ffpoly::{parse_polynomial, Polynomial, PrimeField};
use polydyn::model::{Pds, State, UpdateSchedule};
use polydyn::translate::{document_to_system, ModelDocument, System};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn appendix() -> Pds {
    let doc = ModelDocument::parse(&read_fixture("appendix.txt")).unwrap();
    match document_to_system(&doc).unwrap().system {
        System::Deterministic(f) => f,
        System::Probabilistic(_) => unreachable!(),
    }
}

/// `analyze --cycles 3` on the appendix model prints exactly one steady state and one
/// 3-cycle, no 2-cycles, in under 0.1 s.
fn canonical_fixture() -> Outcome {
    let path = fixture("appendix.txt");
    let args = ["polydyn", "analyze", path.to_str().unwrap(), "--cycles", "3"];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let start = Instant::now();
    let code = cli::run(args, &mut out, &mut err);
    let secs = start.elapsed().as_secs_f64();
    let text = String::from_utf8(out).unwrap();
    let expected = "steady states: 1\n000\n2-cycles: 0\n3-cycles: 1\n010 111 011\n";
    ensure(code == 0, || {
        format!("exit code {code}: {}", String::from_utf8_lossy(&err))
    })?;
    ensure(text == expected, || format!("unexpected report:\n{text}"))?;
    ensure(secs < 0.1, || format!("took {secs:.3} s"))?;
    Ok(format!("report matches, {:.2} ms", secs * 1e3))
}

/// The square of the appendix map equals the printed g1, g2, g3 term for term.
fn composition_fixture() -> Outcome {
    let g = appendix().iterate(2).map_err(|e| e.to_string())?;
    let printed = ["x1*x2+x2*x3", "x1*x2*x3+x1*x2+x1*x3+x1+x2", "x1*x2*x3+x2"];
    for (i, (gi, text)) in g.functions().iter().zip(printed).enumerate() {
        let expected = parse_polynomial(text, PrimeField::binary(), 3).unwrap();
        ensure(gi == &expected && gi.to_string() == text, || {
            format!("g{} = {gi}, expected {text}", i + 1)
        })?;
    }
    Ok("g1, g2, g3 identical in canonical form".into())
}

/// Algebraic steady states and exact-length cycles (m <= 4) equal exhaustive
/// enumeration on 500 random systems.
fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let systems = 500;
    let mut cycles_checked = 0;
    for k in 0..systems {
        let p = if k % 2 == 0 { 2 } else { 3 };
        let field = PrimeField::new(p).unwrap();
        let n = rng.gen_range(1..=8);
        let f = random_pds(&mut rng, field, n, 3);
        let brute = brute_cycles(&f);
        let steady = steady_states(&f).map_err(|e| e.to_string())?;
        ensure(steady == brute_steady_states(&f), || {
            format!("steady states differ for {f:?}")
        })?;
        for m in 2..=4 {
            let found: BTreeSet<BTreeSet<State>> = limit_cycles(&f, m)
                .map_err(|e| e.to_string())?
                .cycles
                .iter()
                .map(|c| c.states().iter().cloned().collect())
                .collect();
            let expected = brute.get(&m).cloned().unwrap_or_default();
            ensure(found == expected, || format!("{m}-cycles differ for {f:?}"))?;
            cycles_checked += found.len();
        }
    }
    Ok(format!("{systems} systems, {cycles_checked} cycles, 0 discrepancies"))
}

/// Sequential composition preserves steady states and reproduces stepwise updates.
fn schedule_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let pairs = 100;
    for _ in 0..pairs {
        let n = rng.gen_range(1..=8);
        let f = random_pds(&mut rng, PrimeField::binary(), n, 3);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let g = f
            .sequential_to_synchronous(&UpdateSchedule::sequential(order.clone(), n).unwrap())
            .map_err(|e| e.to_string())?;
        for x in all_states(f.field(), n) {
            ensure(g.step(&x).unwrap() == step_sequential(&f, &order, &x), || {
                format!("composed map differs from stepwise updates at {x}")
            })?;
        }
        let (a, b) = (
            steady_states(&f).map_err(|e| e.to_string())?,
            steady_states(&g).map_err(|e| e.to_string())?,
        );
        ensure(a == b, || format!("steady states differ under order {order:?}"))?;
    }
    Ok(format!("{pairs} (system, order) pairs identical"))
}

/// Every elementary cycle of a small graph, each listed once from its smallest node.
fn brute_circuits(edges: &BTreeSet<(usize, usize)>, n: usize) -> BTreeSet<Vec<usize>> {
    fn extend(path: &mut Vec<usize>, edges: &BTreeSet<(usize, usize)>, n: usize, out: &mut BTreeSet<Vec<usize>>) {
        let (start, last) = (path[0], *path.last().unwrap());
        for next in start..n {
            if !edges.contains(&(last, next)) {
                continue;
            }
            if next == start {
                out.insert(path.clone());
            } else if !path.contains(&next) {
                path.push(next);
                extend(path, edges, n, out);
                path.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    for s in 0..n {
        extend(&mut vec![s], edges, n, &mut out);
    }
    out
}

/// Functional edges match brute-force dependency detection, and circuit signs match
/// the product of brute-force edge signs.
fn wiring_and_circuits() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let systems = 200;
    let mut circuits_checked = 0;
    for k in 0..systems {
        let p = if k % 4 == 3 { 3 } else { 2 };
        let n = rng.gen_range(1..=8);
        let f = random_pds(&mut rng, PrimeField::new(p).unwrap(), n, 3);
        let w = wiring_diagram(&f, DEFAULT_EDGE_CHECK_CAP);
        let found: BTreeSet<(usize, usize)> = w.edges().iter().map(|e| (e.source, e.target)).collect();
        let expected = brute_edges(&f);
        ensure(found == expected, || format!("edges differ for {f:?}"))?;
        if p != 2 {
            continue;
        }
        let report = functional_circuits(&f, DEFAULT_CIRCUIT_CAP).map_err(|e| e.to_string())?;
        let listed: BTreeSet<Vec<usize>> = report.circuits.iter().map(|c| c.nodes.clone()).collect();
        ensure(report.complete && listed == brute_circuits(&expected, n), || {
            format!("circuits differ for {f:?}")
        })?;
        for c in &report.circuits {
            let mut sign = 1;
            for i in 0..c.nodes.len() {
                sign *= brute_sign(&f, c.nodes[i], c.nodes[(i + 1) % c.nodes.len()]);
            }
            let expected = match sign {
                1 => Sign::Positive,
                -1 => Sign::Negative,
                _ => Sign::Ambivalent,
            };
            ensure(c.sign == Some(expected), || format!("circuit {c} should be {expected}"))?;
            circuits_checked += 1;
        }
    }
    Ok(format!(
        "{systems} systems, {circuits_checked} circuit signs, 0 discrepancies"
    ))
}

/// Strongly connected AND networks with n <= 12, their OR duals and a few rings.
fn conjunctive_corpus() -> Vec<Pds> {
    let field = PrimeField::binary();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut corpus = Vec::new();
    let build = |regulators: &[Vec<usize>], or: bool| {
        let n = regulators.len();
        let functions = regulators
            .iter()
            .map(|regs| {
                if or {
                    // 1 + prod(1 + x_j)
                    let one = Polynomial::one(field, n);
                    let prod = regs
                        .iter()
                        .fold(one.clone(), |acc, &j| &acc * &(&Polynomial::var(field, n, j) + &one));
                    &prod + &one
                } else {
                    regs.iter().fold(Polynomial::one(field, n), |acc, &j| {
                        &acc * &Polynomial::var(field, n, j)
                    })
                }
            })
            .collect();
        Pds::new(field, functions).unwrap()
    };
    for n in 1..=12 {
        let ring: Vec<Vec<usize>> = (0..n).map(|i| vec![(i + 1) % n]).collect();
        corpus.push(build(&ring, false));
    }
    let mut tries = 0;
    while corpus.len() < 150 && tries < 100_000 {
        tries += 1;
        let n = rng.gen_range(2..=12);
        let regulators: Vec<Vec<usize>> = (0..n)
            .map(|_| {
                let k = rng.gen_range(1..=3.min(n));
                let mut r = rand::seq::index::sample(&mut rng, n, k).into_vec();
                r.sort_unstable();
                r
            })
            .collect();
        let f = build(&regulators, false);
        if wiring_diagram(&f, DEFAULT_EDGE_CHECK_CAP).is_strongly_connected() {
            corpus.push(f);
            corpus.push(build(&regulators, true));
        }
    }
    corpus
}

/// The structural summary matches enumeration on every corpus instance.
fn conjunctive_suite() -> Outcome {
    let corpus = conjunctive_corpus();
    for f in &corpus {
        let s = conjunctive_analysis(f, 1 << 12).map_err(|e| e.to_string())?;
        let brute: BTreeMap<usize, usize> = brute_cycles(f).iter().map(|(len, cs)| (*len, cs.len())).collect();
        ensure(brute.keys().all(|len| s.loop_number % len == 0), || {
            format!(
                "cycle lengths {:?} do not divide loop number {}",
                brute.keys(),
                s.loop_number
            )
        })?;
        let summary: BTreeMap<usize, usize> = s
            .cycle_counts
            .iter()
            .filter(|(_, c)| *c != 0u32.into())
            .map(|(d, c)| (*d, usize::try_from(c).unwrap()))
            .collect();
        ensure(summary == brute, || {
            format!("summary {summary:?} but enumeration {brute:?} for {f:?}")
        })?;
        ensure(s.enumeration_agrees == Some(true), || {
            "built-in enumeration check failed".into()
        })?;
    }
    Ok(format!("{} networks, counts identical", corpus.len()))
}

/// Steady-state analysis of 50 random Boolean networks, 50 to 150 nodes, mean
/// in-degree 1.68, each under 1 s.
fn performance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut worst, mut total, mut indegree) = (0.0f64, 0.0f64, 0.0f64);
    let networks = 50;
    for _ in 0..networks {
        let n = rng.gen_range(50..=150);
        let doc = cli::random_network(&mut rng, n, 1.68).map_err(|e| e.to_string())?;
        indegree += cli::mean_indegree(&doc).unwrap();
        let start = Instant::now();
        analyze(&doc, &AnalysisOptions::default()).map_err(|e| e.to_string())?;
        let secs = start.elapsed().as_secs_f64();
        worst = worst.max(secs);
        total += secs;
    }
    let mean_indegree = indegree / networks as f64;
    ensure((mean_indegree - 1.68).abs() <= 0.2, || {
        format!("mean in-degree {mean_indegree:.3}")
    })?;
    ensure(worst < 1.0, || format!("slowest network took {worst:.3} s"))?;
    Ok(format!(
        "{networks} networks, mean in-degree {mean_indegree:.3}, mean {:.1} ms, max {:.1} ms",
        total / networks as f64 * 1e3,
        worst * 1e3
    ))
}

/// Probabilistic steady states equal the intersection over all selections.
fn probabilistic_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let systems = 200;
    for _ in 0..systems {
        let n = rng.gen_range(1..=6);
        let f = random_probabilistic(&mut rng, n, 16);
        let mut expected: BTreeSet<State> = all_states(f.field(), n).collect();
        for g in selections(&f) {
            let fixed: BTreeSet<State> = brute_steady_states(&g).into_iter().collect();
            expected = &expected & &fixed;
        }
        let found: BTreeSet<State> = steady_states_probabilistic(&f)
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        ensure(found == expected, || format!("steady states differ for {f:?}"))?;
    }
    Ok(format!("{systems} systems with at most 16 selections identical"))
}

/// The two-variable logical model: q = 3, interpolant matches all 9 points, extra
/// states 20, 21, 22.
fn multivalued_translation() -> Outcome {
    let doc = ModelDocument::parse(&read_fixture("table2.txt")).map_err(|e| e.to_string())?;
    let t = document_to_system(&doc).map_err(|e| e.to_string())?;
    let System::Deterministic(f) = &t.system else {
        return Err("deterministic system expected".into());
    };
    ensure(f.field().characteristic() == 3, || {
        format!("q = {}", f.field().characteristic())
    })?;
    let table = [[0, 1, 2], [1, 2, 2], [1, 2, 2]];
    for (a, row) in table.iter().enumerate() {
        for (b, &v) in row.iter().enumerate() {
            let got = f.function(1).eval(&[a as u32, b as u32]);
            ensure(got == v, || format!("f_x2({a},{b}) = {got}, table says {v}"))?;
        }
    }
    let extra: Vec<String> = t
        .extension
        .ok_or("no extension report")?
        .extra_states(100)
        .map_err(|e| e.to_string())?
        .iter()
        .map(State::digits)
        .collect();
    ensure(extra == ["20", "21", "22"], || format!("extra states {extra:?}"))?;
    Ok(format!(
        "q = 3, f_x2 = {}, extra states {}",
        f.function(1),
        extra.join(" ")
    ))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("canonical fixture", canonical_fixture),
        ("composition fixture", composition_fixture),
        ("oracle equivalence", oracle_equivalence),
        ("schedule invariance", schedule_invariance),
        ("wiring and circuits", wiring_and_circuits),
        ("conjunctive networks", conjunctive_suite),
        ("performance", performance),
        ("probabilistic steady states", probabilistic_suite),
        ("multi-valued translation", multivalued_translation),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} ({secs:.2} s)", k + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {why} ({secs:.2} s)", k + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
