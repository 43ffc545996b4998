//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every line is printed. Set
//! `ACCEPTANCE_SLOW=1` to also run the exact 1024-vertex enumeration and the
//! 10^8-sample monochromatic estimate.

use std::time::{Duration, Instant};

use inducibility::canon::canonical_form;
use inducibility::catalog::{reproduce_table, Expected, Table};
use inducibility::exec::{map_indexed, Execution};
use inducibility::iso::iso_table;
use inducibility::montecarlo::{estimate_graph, estimate_monochromatic, Sampling};
use inducibility::nesting::{iterate_profile, nested_spectral, stationary_profile, transition_matrix};
use inducibility::profile::{induced_profile, repetitive_from_induced, repetitive_labeled, repetitive_profile};
use inducibility::scalar::{integer, ratio};
use inducibility::spectral::{convolve, inverse_fourier, pointwise_product, product_limit_density, spectral_profile};
use inducibility::{LabeledGraph, LabeledProfile, Options, QuantumGraph, Rational, Scalar, StepModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

const BASIS4: [&str; 11] = ["K4", "A4", "T4", "S4", "M4", "C4", "Q4", "V4", "D4", "E4", "P4"];

const F4_PUBLISHED: [[i64; 11]; 11] = [
    [53, 0, 16, 12, 12, 24, 24, 8, 36, 4, 16],
    [0, 53, 12, 16, 24, 12, 8, 24, 4, 36, 16],
    [112, 0, 53, 48, 32, 64, 68, 32, 88, 16, 48],
    [0, 112, 48, 53, 64, 32, 32, 68, 16, 88, 48],
    [84, 24, 48, 48, 45, 64, 60, 40, 72, 32, 52],
    [24, 84, 48, 48, 64, 45, 40, 60, 32, 72, 52],
    [192, 96, 156, 144, 144, 160, 165, 136, 176, 120, 152],
    [96, 192, 144, 156, 160, 144, 136, 165, 120, 176, 152],
    [48, 24, 48, 60, 32, 56, 56, 44, 57, 32, 48],
    [24, 48, 60, 48, 56, 32, 44, 56, 32, 57, 48],
    [96, 96, 96, 96, 96, 96, 96, 96, 96, 96, 97],
];

fn g(src: &str) -> LabeledGraph {
    match inducibility::expr::evaluate_str(src, &Default::default()).expect("valid expression") {
        inducibility::expr::Value::Graph(g) => g,
        _ => panic!("{src} is not a graph"),
    }
}

fn model(src: &str) -> StepModel {
    StepModel::from_graph(&g(src))
}

fn opts() -> Options {
    Options::default()
}

fn expect_eq(what: &str, got: &Rational, want: &Rational) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn r_labeled(src: &str, t: usize) -> LabeledProfile {
    repetitive_labeled(&model(src), t, &opts()).unwrap()
}

fn criterion_1() -> Check {
    let f = transition_matrix(&g("tensor(K3, K3)"), 4, &opts()).map_err(|e| e.to_string())?;
    if f.basis != BASIS4 {
        return Err(format!("basis order {:?}", f.basis));
    }
    for (i, row) in F4_PUBLISHED.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            expect_eq(&format!("F[{i}][{j}]"), &f.entries[i][j], &ratio(x, 729))?;
        }
    }
    Ok("121 entries equal the published matrix over 729".into())
}

fn criterion_2() -> Check {
    let q = stationary_profile(&g("tensor(K3, K3)"), 4, &opts()).map_err(|e| e.to_string())?;
    let want = [17, 17, 50, 50, 51, 51, 150, 150, 48, 48, 96];
    for (name, w) in BASIS4.iter().zip(want) {
        expect_eq(name, q.unlabeled.get(name).unwrap(), &ratio(w, 728))?;
    }
    Ok("Q4 = (17,17,50,50,51,51,150,150,48,48,96)/728".into())
}

fn criterion_3() -> Check {
    let cols = ["K4", "M4", "C4", "Q4", "V4"];
    let rows: [(&str, [Rational; 5]); 2] = [
        ("K4", [ratio(-1, 2), ratio(1, 4), ratio(1, 4), ratio(-1, 8), ratio(1, 4)]),
        ("M4", [ratio(1, 2), ratio(1, 4), ratio(1, 4), ratio(1, 8), ratio(1, 4)]),
    ];
    for (src, want) in &rows {
        let hat = spectral_profile(&model(src), 4, &opts()).map_err(|e| e.to_string())?;
        for (c, w) in cols.iter().zip(want) {
            expect_eq(&format!("r̂({c}, {src})"), hat.get(c).unwrap(), w)?;
        }
    }
    let q = nested_spectral(&g("tensor(K3, K3)"), 4, &opts()).map_err(|e| e.to_string())?;
    let want = [ratio(18, 91), ratio(0, 1), ratio(9, 91), ratio(0, 1), ratio(0, 1)];
    for (c, w) in cols.iter().zip(&want) {
        expect_eq(&format!("q̂({c})"), q.get(c).unwrap(), w)?;
    }
    Ok("K4, M4 and nested K3⊗K3 Fourier rows exact".into())
}

fn criterion_4() -> Check {
    let nested = nested_spectral(&g("tensor(K3, K3)"), 4, &opts()).map_err(|e| e.to_string())?;
    let hat = |s: &str| spectral_profile(&model(s), 4, &opts()).unwrap();
    let k4a4 = QuantumGraph::parse(4, "K4+A4").unwrap();
    let eq1 = product_limit_density(&k4a4, &[hat("M4"), hat("K4"), nested.clone()]).map_err(|e| e.to_string())?;
    expect_eq("K4+A4 limit", &eq1, &ratio(1411, 46592))?;
    let p4 = QuantumGraph::parse(4, "P4").unwrap();
    let eq2 = product_limit_density(&p4, &[hat("K4"), nested]).map_err(|e| e.to_string())?;
    expect_eq("P4 limit", &eq2, &ratio(1173, 5824))?;
    Ok("1411/46592 and 1173/5824".into())
}

fn criterion_5() -> Check {
    let q = QuantumGraph::parse(4, "K4+A4").unwrap();
    let mut conv = r_labeled("M4", 4);
    for f in ["K4", "K3", "K3"] {
        conv = convolve(&conv, &r_labeled(f, 4)).map_err(|e| e.to_string())?;
    }
    let by_convolution = q.density(&conv.to_unlabeled().unwrap()).unwrap();
    let big = g("tensor(M4, K4, K3, K3)");
    if big.order() != 144 {
        return Err(format!("product has {} vertices", big.order()));
    }
    let direct = q.density(&repetitive_profile(&StepModel::from_graph(&big), 4).unwrap()).unwrap();
    expect_eq("convolution", &by_convolution, &ratio(11411, 373248))?;
    expect_eq("direct 144-vertex enumeration", &direct, &ratio(11411, 373248))?;
    let g18 = g("compose(tensor(K3, K3), K2)");
    if g18.order() != 18 {
        return Err("G18 does not have 18 vertices".into());
    }
    let hats = [
        spectral_profile(&model("M4"), 4, &opts()).unwrap(),
        spectral_profile(&model("K4"), 4, &opts()).unwrap(),
        spectral_profile(&StepModel::from_graph(&g18), 4, &opts()).unwrap(),
    ];
    let g18_density = product_limit_density(&q, &hats).map_err(|e| e.to_string())?;
    expect_eq("M4⊗K4⊗G18", &g18_density, &ratio(3769, 124416))?;
    Ok("11411/373248 by convolution and by enumeration; 3769/124416".into())
}

fn criterion_6() -> Check {
    let cases: [(&str, usize, &str, Rational); 5] = [
        ("C5", 4, "P4", ratio(6, 31)),
        ("paley(17)", 4, "P4", ratio(60, 307)),
        ("C5", 5, "C5", ratio(1, 26)),
        ("tensor(K3, K3)", 5, "bull", ratio(813, 11111)),
        ("tensor(K3, K3, K2)", 5, "{1-2,2-3,2-4,3-4,4-5,1-5}", ratio(1968, 20995)),
    ];
    for (base, t, target, want) in cases {
        let q = stationary_profile(&g(base), t, &opts()).map_err(|e| e.to_string())?;
        let got = QuantumGraph::parse(t, target).unwrap().density(&q.unlabeled).unwrap();
        expect_eq(&format!("nest({base}) {target}"), &got, &want)?;
    }
    Ok("6/31, 60/307, 1/26, 813/11111, 1968/20995".into())
}

fn table_check(which: Table, exact_values: &[Rational], decimals: &[f64]) -> Check {
    let reports = reproduce_table(which, &opts()).map_err(|e| e.to_string())?;
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{} ({:?})", r.id, r.status))
        .collect();
    if !failed.is_empty() {
        return Err(format!("rows failed: {}", failed.join(", ")));
    }
    for v in exact_values {
        if !reports.iter().any(|r| matches!(&r.expected, Expected::Exact(e) | Expected::Approx { value: e, .. } if e == v)) {
            return Err(format!("no row for {v}"));
        }
    }
    for &d in decimals {
        if !reports.iter().any(|r| matches!(r.expected, Expected::Decimal { value, tolerance } if value == d && tolerance <= 1e-9)) {
            return Err(format!("no decimal row for {d}"));
        }
    }
    Ok(format!("{} rows pass", reports.len()))
}

fn criterion_7() -> Check {
    let values = [ratio(1, 1), ratio(1, 2), ratio(3, 8), ratio(72, 125)];
    table_check(Table::Exoo4, &values, &[])
}

fn criterion_8() -> Check {
    let exact = [
        ratio(5, 8),
        ratio(10, 27),
        ratio(5, 18),
        ratio(24, 125),
        ratio(216, 625),
        ratio(5, 12),
        ratio(5, 24),
        ratio(5, 32),
        ratio(15625, 62208),
        ratio(1, 26),
        ratio(813, 11111),
        ratio(1968, 20995),
    ];
    table_check(Table::Appendix5, &exact, &[0.5126953125, 0.133413966, 0.24, 0.2784, 0.15625])
}

fn random_graph(rng: &mut ChaCha8Rng) -> LabeledGraph {
    let n = rng.gen_range(5..=12);
    let p: f64 = rng.gen_range(0.1..0.9);
    LabeledGraph::from_fn(n, |u, v| u != v && rng.gen::<f64>() < p)
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..200 {
        let graph = random_graph(&mut rng);
        for t in [3, 4] {
            let direct = repetitive_profile(&model_of(&graph), t).unwrap();
            let via = repetitive_from_induced(&induced_profile(&graph, t).unwrap(), graph.order(), t).unwrap();
            if direct.values != via.values {
                return Err(format!("graph {i} ({} vertices) at t={t}", graph.order()));
            }
        }
    }
    let names = ["K3", "C5", "K4", "M4"];
    for (i, a) in names.iter().enumerate() {
        for b in &names[i..] {
            let conv = convolve(&r_labeled(a, 4), &r_labeled(b, 4)).unwrap();
            let direct = r_labeled(&format!("tensor({a}, {b})"), 4);
            if conv != direct {
                return Err(format!("convolution {a} * {b}"));
            }
        }
    }
    for base in ["C5", "K4"] {
        let iterated = iterate_profile(&g(base), 4, 2, &opts()).unwrap();
        let direct = r_labeled(&format!("compose({base}, {base})"), 4);
        if iterated != direct {
            return Err(format!("iterate {base}"));
        }
    }
    Ok("200 random graphs, 10 convolution pairs, 2 iterated compositions".into())
}

fn g5_profile() -> Result<inducibility::ProfileVector, String> {
    let hat = |s: &str| spectral_profile(&model(s), 4, &opts()).unwrap();
    let mut product = hat("K4");
    for _ in 0..4 {
        product = pointwise_product(&product, &hat("M4")).map_err(|e| e.to_string())?;
    }
    inverse_fourier(&product).to_unlabeled().map_err(|e| e.to_string())
}

fn criterion_10() -> Check {
    let a = canonical_form(&g("tensor(K3, K3)")).unwrap();
    let b = canonical_form(&g("paley(9)")).unwrap();
    if a != b {
        return Err("K3⊗K3 and paley(9) differ".into());
    }
    let reference = g5_profile()?;
    let cayley = g("cayley2(10; 1, 2, 5, 6, 9, 10)");
    let est = estimate_graph(&cayley, 4, 10_000_000, 20240601, Sampling::WithReplacement, Execution::default())
        .map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for (i, v) in reference.values.iter().enumerate() {
        let r = v.to_f64();
        if !est.agrees(i, r, 4.0) {
            return Err(format!("{}: sampled {} vs spectral {r}", reference.names()[i], est.frequency(i)));
        }
        let sigma = (r * (1.0 - r) / est.samples as f64).sqrt();
        if sigma > 0.0 {
            worst = worst.max((est.frequency(i) - r).abs() / sigma);
        }
    }
    Ok(format!("canonical forms equal; 10^7 samples within {worst:.2} standard errors"))
}

fn criterion_11() -> Check {
    let q = QuantumGraph::parse(3, "K3+A3").unwrap();
    for (what, m) in [("K2", model("K2")), ("bernoulli(1/2)", StepModel::bernoulli(ratio(1, 2)).unwrap())] {
        expect_eq(what, &q.density(&repetitive_profile(&m, 3).unwrap()).unwrap(), &ratio(1, 4))?;
    }
    Ok("K3+A3 = 1/4 on K2 and bernoulli(1/2)".into())
}

/// Exact `R_4` of the vertex-transitive Cayley graph: fix the first vertex.
fn slow_exact_cayley() -> Check {
    let cayley = g("cayley2(10; 1, 2, 5, 6, 9, 10)");
    let n = cayley.order();
    let table = iso_table(4).unwrap();
    let counts = map_indexed(Execution::default(), n, |v1| {
        let mut c = vec![0u64; table.len()];
        for v2 in 0..n {
            for v3 in 0..n {
                c[table.type_of(cayley.induced_mask(&[0, v1, v2, v3]))] += 1;
            }
        }
        c
    });
    let total = integer((n * n * n) as u64);
    let reference = g5_profile()?;
    for (i, want) in reference.values.iter().enumerate() {
        let got = integer(counts.iter().map(|c| c[i]).sum()) / total.clone();
        expect_eq(&reference.names()[i], &got, want)?;
    }
    Ok("exact 1024-vertex profile equals the spectral profile".into())
}

fn slow_monochromatic() -> Check {
    let cayley = g("cayley2(10; 0, 2, 5, 6, 9, 10)");
    let est = estimate_monochromatic(&cayley, 6, 100_000_000, 7, Execution::default()).map_err(|e| e.to_string())?;
    let target = 0.74444 * 2f64.powi(-14);
    let rel = (est.frequency() - target).abs() / target;
    if rel <= 0.03 {
        Ok(format!("K6+A6 mass {:.5}·2^-14, relative error {rel:.4}", est.frequency() * 2f64.powi(14)))
    } else {
        Err(format!(
            "K6+A6 mass {:.5}·2^-14 ± {:.5}, relative error {rel:.4}",
            est.frequency() * 2f64.powi(14),
            est.std_error() * 2f64.powi(14)
        ))
    }
}

fn main() {
    let slow = std::env::var("ACCEPTANCE_SLOW").is_ok_and(|v| v == "1");
    let criteria: Vec<(&str, Duration, fn() -> Check, bool)> = vec![
        ("1 transition matrix", Duration::from_secs(10), criterion_1, true),
        ("2 stationary vector", Duration::from_secs(1), criterion_2, true),
        ("3 Fourier table", Duration::from_secs(1), criterion_3, true),
        ("4 headline limits", Duration::from_secs(1), criterion_4, true),
        ("5 finite product densities", Duration::from_secs(300), criterion_5, true),
        ("6 nested benchmarks", Duration::from_secs(600), criterion_6, true),
        ("7 4-vertex table", Duration::from_secs(60), criterion_7, true),
        ("8 5-vertex table", Duration::from_secs(600), criterion_8, true),
        ("9 oracle equivalence", Duration::from_secs(600), criterion_9, true),
        ("10 structural identities", Duration::from_secs(900), criterion_10, true),
        ("11 clique and anticlique sanity", Duration::from_secs(1), criterion_11, true),
        ("10 exact 1024-vertex check (slow)", Duration::from_secs(3600), slow_exact_cayley, slow),
        ("12 K6+A6 Monte Carlo (slow)", Duration::from_secs(3600), slow_monochromatic, slow),
    ];
    let mut failures = 0;
    for (name, limit, check, enabled) in criteria {
        if !enabled {
            println!("SKIP criterion {name}: set ACCEPTANCE_SLOW=1 to run");
            continue;
        }
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) if elapsed <= limit => {
                println!("PASS criterion {name}: {detail} [{:.2?}]", elapsed);
            }
            Ok(detail) => {
                failures += 1;
                println!("FAIL criterion {name}: {detail}, but took {elapsed:.2?} > {limit:?}");
            }
            Err(reason) => {
                failures += 1;
                println!("FAIL criterion {name}: {reason} [{:.2?}]", elapsed);
            }
        }
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}

fn model_of(graph: &LabeledGraph) -> StepModel {
    StepModel::from_graph(graph)
}
