//! Acceptance suite: one PASS/FAIL line per criterion, then a single assertion.
//!
//! Run with `cargo test -p kdilate --test acceptance -- --nocapture` to see the table.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use kdilate::run;
use kdilate_core::abelian::{cokernel, kernel, FgAbelianGroup, GroupHom, Presentation};
use kdilate_core::colimit::{classify_colimit, ker_coker_one_minus, DilationProblem};
use kdilate_core::graphalg::{
    enumerate_hereditary_saturated, hereditary_saturated_closure, prim_poset, subquotient_k, Graph, VertexSet,
};
use kdilate_core::kcrossed::{pv_crossed_product, KTheoryData};
use kdilate_core::matrix::{smith_normal_form, IntMatrix};
use kdilate_core::BigInt;
use kdilate_oracle::{bracket_by_divisors, hereditary_saturated_masks, FiniteGroup};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use serde_json::Value;

/// Every criterion must finish inside this budget (debug build).
const TIME_BUDGET: Duration = Duration::from_secs(10);
/// No numeric tolerance anywhere: every comparison is integer or structural equality.
const TOLERANCE: &str = "exact";

const SNF_CASES: u32 = 500;
const SNF_MAX_DIM: usize = 8;
const SNF_MAX_ENTRY: i64 = 50;
const KER_COKER_CASES: u32 = 200;
const MAX_GROUP_ORDER: u64 = 10_000;
const CLOSURE_CASES: u32 = 100;
const CLOSURE_MAX_VERTICES: usize = 8;
const ENUMERATION_CASES: u32 = 100;
const ENUMERATION_MAX_VERTICES: usize = 12;

/// Cells where the closed form `l = k / gcd(k, m − 1)` disagrees with the
/// enumerated torsion `gcd(k, m − 1)`, over the grid of criterion 2.
const EXPECTED_L_MISMATCHES: usize = 207;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).display().to_string()
}

fn cli(args: &[&str]) -> Result<String, String> {
    let out = run(std::iter::once("kdilate").chain(args.iter().copied()));
    if out.code != 0 {
        return Err(format!("kdilate {} exited {}: {}", args.join(" "), out.code, out.stderr));
    }
    Ok(out.stdout)
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    serde_json::from_str(&cli(&full)?).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn group_of(factors: &[u64]) -> FgAbelianGroup {
    FgAbelianGroup::from_cyclic_orders(factors.iter().map(|&f| BigInt::from(f)))
}

fn cyclic_times(k: u64, m: u64) -> DilationProblem {
    let p = Presentation::new(1, IntMatrix::from_i64(&[&[k as i64]])).unwrap();
    DilationProblem::from_presentation(&p, &IntMatrix::from_i64(&[&[m as i64]])).unwrap()
}

fn grid() -> impl Iterator<Item = (u64, u64)> {
    (2u64..=30).flat_map(|n| (1u64..=10.min(n - 1)).map(move |m| (n, m)))
}

fn graph_e() -> Result<Graph, String> {
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(fixture("E.json")).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let names: Vec<String> = doc["vertices"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().into()).collect();
    let rows: Vec<Vec<i64>> = doc["adjacency"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect())
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Graph::new(names, IntMatrix::from_i64(&refs)).map_err(|e| e.to_string())
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn criterion_1() -> Check {
    for m in 2..=8u64 {
        let k0 = if m == 2 { "0".to_string() } else { format!("Z/{}", m - 1) };
        let want = format!("K0 = {k0}, K1 = 0, label = O_{m}\n");
        let got = cli(&["cuntz", "inf", &m.to_string()])?;
        ensure(got == want, || format!("cuntz inf {m}: got {got:?}, want {want:?}"))?;
    }
    let got = cli(&["cuntz", "inf", "1"])?;
    ensure(got == "K0 = Z, K1 = Z, label = B\n", || format!("cuntz inf 1: got {got:?}"))?;
    Ok("m = 1..8 via the CLI".into())
}

fn criterion_2() -> Check {
    let mut cells = 0;
    for (n, m) in grid() {
        let k = bracket_by_divisors((n - 1).gcd(&m), n - 1);
        let got = classify_colimit(&cyclic_times(n - 1, m)).map_err(|e| e.to_string())?;
        ensure(got.as_fg() == Some(&FgAbelianGroup::cyclic(k)), || format!("n={n} m={m}: {got}, want Z/{k}"))?;
        cells += 1;
    }
    Ok(format!("{cells} grid cells"))
}

fn criterion_3() -> Check {
    let mut l_mismatches = 0;
    let mut cells = 0;
    for (n, m) in grid() {
        let k = bracket_by_divisors((n - 1).gcd(&m), n - 1);
        let (ker, coker) = ker_coker_one_minus(&cyclic_times(n - 1, m)).map_err(|e| e.to_string())?;
        // the oracle works on the classified limit ℤ/k, where ×m is bijective
        let oracle = FiniteGroup::new(vec![k]);
        let (ok, oc) = oracle.ker_coker_one_minus_on_limit(&[vec![m as i64]]);
        ensure(ker.as_fg() == Some(&group_of(&ok)), || format!("n={n} m={m}: ker {ker} vs oracle {ok:?}"))?;
        ensure(coker.as_fg() == Some(&group_of(&oc)), || format!("n={n} m={m}: coker {coker} vs oracle {oc:?}"))?;

        let g = k.gcd(&(m - 1));
        let l = k / g;
        ensure(ker.as_fg() == Some(&FgAbelianGroup::cyclic(g)), || format!("n={n} m={m}: ker is not Z/{g}"))?;
        if l != g {
            l_mismatches += 1;
        }
        cells += 1;
    }
    ensure(l_mismatches == EXPECTED_L_MISMATCHES, || {
        format!("l differs from the oracle in {l_mismatches} cells, expected {EXPECTED_L_MISMATCHES}")
    })?;

    // the grid fixture through the CLI reports the same torsion
    let doc = cli_json(&["cuntz", "--input", &fixture("cuntz_grid.json")])?;
    for case in doc["cases"].as_array().unwrap().iter().filter(|c| !c["n"].is_null()) {
        let g = &case["g"];
        let order = &case["k0"]["group"]["invariant_factors"];
        let matches = if g.as_u64() == Some(1) { order.as_array().unwrap().is_empty() } else { order[0] == *g };
        ensure(matches, || format!("fixture case {case}: K0 does not have order g"))?;
    }
    Ok(format!(
        "{cells} cells match the oracle; ker = coker = Z/gcd(k, m-1); the form k/gcd(k, m-1) disagrees in {l_mismatches} cells"
    ))
}

fn criterion_4() -> Check {
    let want = ["{}", "{v4}", "{v2,v4}", "{v3,v4}", "{v2,v3,v4}", "{v1,v2,v3,v4}"];
    let got = cli(&["graph-hs", "--input", &fixture("E.json")])?;
    let lines: Vec<&str> = got.lines().collect();
    ensure(lines == want, || format!("got {lines:?}"))?;
    let g = graph_e()?;
    let adj: Vec<Vec<u64>> =
        (0..g.len()).map(|v| (0..g.len()).map(|w| u64::from(g.has_edge(v, w))).collect()).collect();
    ensure(hereditary_saturated_masks(&adj).len() == 6, || "brute force does not find six sets".into())?;
    Ok("six sets, matches brute force".into())
}

fn criterion_5() -> Check {
    let g = graph_e()?;
    let family = enumerate_hereditary_saturated(&g);
    let want = [
        ("v4", vec![5]),
        ("v3,v4", vec![5, 3]),
        ("v2,v4", vec![5, 2]),
        ("v2,v3,v4", vec![5, 3, 2]),
        ("v1,v2,v3,v4", vec![7, 5, 3, 2]),
    ];
    for (z, orders) in &want {
        let zs = g.vertex_set(z.split(',')).map_err(|e| e.to_string())?;
        ensure(family.contains(&zs), || format!("{z} is not hereditary saturated"))?;
        let (k0, k1) = subquotient_k(&g, &zs, &VertexSet::new()).map_err(|e| e.to_string())?;
        ensure(k0 == group_of(orders) && k1.is_trivial(), || format!("Z = {z}: ({k0}, {k1})"))?;
        let doc = cli_json(&["graph-k", z, "", "--input", &fixture("E.json")])?;
        ensure(doc["k0"]["text"] == k0.to_string(), || format!("CLI disagrees for {z}"))?;
    }
    Ok("Z/5, Z/15, Z/10, Z/30, Z/210 with K1 = 0".into())
}

fn criterion_6() -> Check {
    let g = graph_e()?;
    let p = prim_poset(&g).map_err(|e| e.to_string())?;
    ensure(p.elements().len() == 4, || format!("{} elements", p.elements().len()))?;
    let want: Vec<(String, String)> =
        [("v1", "v2"), ("v1", "v3"), ("v2", "v4"), ("v3", "v4")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    ensure(p.undirected_covers() == want, || format!("covers {:?}", p.undirected_covers()))?;
    let extremes: Vec<&str> =
        p.minimal().into_iter().chain(p.maximal()).map(|i| p.elements()[i].as_str()).collect();
    ensure(extremes == ["v4", "v1"], || format!("extremes {extremes:?}"))?;
    let doc = cli_json(&["graph-prim", "--input", &fixture("E.json")])?;
    ensure(doc["undirected_covers"].as_array().map(Vec::len) == Some(4), || "CLI covers".into())?;
    Ok("covers 1-2, 1-3, 2-4, 3-4; extremes v4 (bottom) and v1 (top)".into())
}

fn criterion_7() -> Check {
    let g = graph_e()?;
    let family = enumerate_hereditary_saturated(&g);
    let mut pairs = 0;
    for z in &family {
        for y in family.iter().filter(|y| y.is_subset(z)) {
            let (k0, _) = subquotient_k(&g, z, y).map_err(|e| e.to_string())?;
            let label = |s: &VertexSet| g.label(s).trim_matches(|c| c == '{' || c == '}').to_string();
            let doc = cli_json(&["graph-crossed-k", &label(z), &label(y), "--input", &fixture("E.json")])?;
            ensure(doc["status"] == "ok", || format!("{} / {} unresolved", g.label(z), g.label(y)))?;
            for key in ["k0", "k1"] {
                let text = &doc[key]["resolved"]["text"];
                ensure(*text == k0.to_string(), || format!("{} / {}: {key} = {text}", g.label(z), g.label(y)))?;
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} nested pairs give (K0, K0), resolved"))
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=SNF_MAX_DIM, 1..=SNF_MAX_DIM).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-SNF_MAX_ENTRY..=SNF_MAX_ENTRY, c), r)
    })
}

fn finite_endo_strategy() -> impl Strategy<Value = (Vec<u64>, Vec<Vec<i64>>)> {
    prop::collection::vec(1u64..=40, 1..=3)
        .prop_filter("order bound", |o| o.iter().product::<u64>() <= MAX_GROUP_ORDER)
        .prop_flat_map(|orders| {
            let k = orders.len();
            (Just(orders), prop::collection::vec(-50i64..=50, k * k)).prop_map(move |(orders, cells)| {
                let m = (0..k)
                    .map(|i| {
                        (0..k)
                            .map(|j| {
                                let step = (orders[i] / orders[i].gcd(&orders[j])) as i64;
                                (cells[i * k + j] * step).rem_euclid(orders[i] as i64)
                            })
                            .collect()
                    })
                    .collect();
                (orders, m)
            })
        })
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
    (1..=max_n).prop_flat_map(|n| {
        let cell = prop_oneof![6 => Just(0u64), 2 => Just(1u64), 1 => 2u64..=4];
        prop::collection::vec(prop::collection::vec(cell, n), n).prop_map(move |mut rows| {
            for v in 0..n {
                if rows[v].iter().all(|&c| c == 0) {
                    rows[v][(v + 1) % n] = 1;
                }
            }
            rows
        })
    })
}

fn build_graph(rows: &[Vec<u64>]) -> Graph {
    let n = rows.len();
    let data = rows.iter().flatten().map(|&c| BigInt::from(c)).collect();
    Graph::new((0..n).map(|i| format!("v{i}")).collect(), IntMatrix::new(n, n, data).unwrap()).unwrap()
}

fn criterion_8() -> Check {
    runner(SNF_CASES)
        .run(&matrix_strategy(), |rows| {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let m = IntMatrix::from_i64(&refs);
            let f = smith_normal_form(&m);
            prop_assert_eq!(&(&(&f.u * &m) * &f.v), &f.s);
            prop_assert!(f.s.is_diagonal());
            prop_assert!(f.u.determinant().unwrap().abs().is_one() && f.v.determinant().unwrap().abs().is_one());
            let d = f.diagonal();
            prop_assert!(d.iter().all(|x| !x.is_negative()));
            prop_assert!(d.windows(2).all(|w| w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0]))));
            Ok(())
        })
        .map_err(|e| format!("SNF: {e}"))?;

    runner(KER_COKER_CASES)
        .run(&finite_endo_strategy(), |(orders, m)| {
            let n = orders.len();
            let p = Presentation::new(n, IntMatrix::diagonal(n, n, orders.iter().map(|&o| BigInt::from(o)))).unwrap();
            let refs: Vec<&[i64]> = m.iter().map(Vec::as_slice).collect();
            let f = GroupHom::from_presentations(&p, &p, &IntMatrix::from_i64(&refs)).unwrap();
            let (ker, coker) = (kernel(&f).unwrap().group, cokernel(&f).unwrap().group);
            prop_assert_eq!(ker.order(), coker.order());
            let (ok, oc) = FiniteGroup::new(orders).ker_coker(&m);
            prop_assert_eq!(ker, group_of(&ok));
            prop_assert_eq!(coker, group_of(&oc));
            Ok(())
        })
        .map_err(|e| format!("ker/coker: {e}"))?;

    runner(CLOSURE_CASES)
        .run(&(graph_strategy(CLOSURE_MAX_VERTICES), any::<u64>(), any::<u64>()), |(rows, a, b)| {
            let g = build_graph(&rows);
            let all = (1u64 << g.len()) - 1;
            let set = |mask: u64| (0..g.len()).filter(|&i| mask >> i & 1 == 1).collect::<VertexSet>();
            let (s, t) = (set(a & all), set((a | b) & all));
            let cs = hereditary_saturated_closure(&g, &s).unwrap();
            prop_assert!(s.is_subset(&cs));
            prop_assert_eq!(&hereditary_saturated_closure(&g, &cs).unwrap(), &cs);
            prop_assert!(cs.is_subset(&hereditary_saturated_closure(&g, &t).unwrap()));
            Ok(())
        })
        .map_err(|e| format!("closure: {e}"))?;

    runner(ENUMERATION_CASES)
        .run(&graph_strategy(ENUMERATION_MAX_VERTICES), |rows| {
            let g = build_graph(&rows);
            let mut got: Vec<u64> =
                enumerate_hereditary_saturated(&g).iter().map(|s| s.iter().map(|v| 1u64 << v).sum()).collect();
            got.sort();
            prop_assert_eq!(got, hereditary_saturated_masks(&rows));
            Ok(())
        })
        .map_err(|e| format!("enumeration: {e}"))?;

    Ok(format!(
        "SNF x{SNF_CASES}, ker/coker x{KER_COKER_CASES}, closure x{CLOSURE_CASES}, enumeration x{ENUMERATION_CASES}"
    ))
}

fn criterion_9() -> Check {
    let z = FgAbelianGroup::free(1);
    let out = pv_crossed_product(&KTheoryData::trivial_action(&z, &FgAbelianGroup::trivial()))
        .map_err(|e| e.to_string())?;
    for piece in [&out.k0, &out.k1] {
        ensure(piece.resolved.as_ref().and_then(|d| d.as_fg()) == Some(&z), || format!("got {piece}"))?;
    }
    let text = cli(&["pv", "--input", &fixture("circle.json")])?;
    ensure(text == "K0 = Z, K1 = Z\n", || format!("CLI: {text:?}"))?;
    Ok("(Z, 0) with identity gives (Z, Z)".into())
}

#[test]
fn acceptance() {
    println!("tolerance: {TOLERANCE}, time budget per criterion: {TIME_BUDGET:?}");
    let criteria: [Criterion; 9] = [
        ("Cuntz family with n = inf", criterion_1),
        ("cyclic limit closed form", criterion_2),
        ("ker/coker of 1 - f against enumeration", criterion_3),
        ("hereditary saturated sets of E", criterion_4),
        ("subquotient K-groups of E", criterion_5),
        ("primitive ideal poset of E", criterion_6),
        ("crossed subquotient K-groups of E", criterion_7),
        ("property suites", criterion_8),
        ("trivial action on (Z, 0)", criterion_9),
    ];
    let mut failures = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > TIME_BUDGET => Err(format!("{detail}, but took {elapsed:?}")),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS {} {name}: {detail} ({:.2?})", i + 1, elapsed),
            Err(reason) => {
                println!("FAIL {} {name}: {reason}", i + 1);
                failures.push(i + 1);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
