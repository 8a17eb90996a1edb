//! Shared fixtures and property checks for the integration tests.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use perfect_crystal::{
    components, crystal_for, energy_for, level_one_dominants, AffineType, CrystalGraph, EnergyTable, Multiplicities,
    Path, PathModel, TensorSquare,
};
use perfect_crystal::tensor::{tensor_e, tensor_f, tensor_stats};

/// Everything the property checks need for one family.
pub struct Ctx {
    pub g: CrystalGraph,
    pub sq: TensorSquare,
    pub h: EnergyTable,
    pub classical: Vec<usize>,
    pub models: Vec<PathModel>,
}

pub fn sweep() -> Vec<AffineType> {
    AffineType::sweep(5, true)
}

pub fn contexts() -> &'static [Ctx] {
    static CELL: OnceLock<Vec<Ctx>> = OnceLock::new();
    CELL.get_or_init(|| {
        sweep()
            .into_iter()
            .map(|ty| {
                let g = crystal_for(ty).unwrap();
                let sq = TensorSquare::of(&g);
                let h = energy_for(&g).unwrap();
                let classical = components(&sq.arrows, true).of;
                let models = level_one_dominants(&g.datum)
                    .iter()
                    .map(|lam| PathModel::new(g.clone(), lam).unwrap())
                    .collect();
                Ctx { g, sq, h, classical, models }
            })
            .collect()
    })
}

/// `ẽ_i ∘ f̃_i = id` where defined, both ways, and `φ_i - ε_i = <h_i, wt>`.
pub fn crystal_axioms(c: &Ctx, b: usize, i: usize) -> Result<(), String> {
    let g = &c.g;
    if let Some(f) = g.f(b, i) {
        if g.e(f, i) != Some(b) {
            return Err(format!("{}: e_{i} f_{i} {} != id", g.datum.ty, g.label(b)));
        }
    }
    if let Some(e) = g.e(b, i) {
        if g.f(e, i) != Some(b) {
            return Err(format!("{}: f_{i} e_{i} {} != id", g.datum.ty, g.label(b)));
        }
    }
    let w = g.phi(b, i) as i64 - g.epsilon(b, i) as i64;
    if w != g.weight(b)[i] {
        return Err(format!("{}: weight mismatch at {}", g.datum.ty, g.label(b)));
    }
    Ok(())
}

/// The same on a pair of `B ⊗ B`, through the tensor rule directly.
pub fn tensor_axioms(c: &Ctx, l: usize, r: usize, i: usize) -> Result<(), String> {
    let g = &c.g;
    let a = &g.arrows;
    let name = || format!("{}: {} (x) {}", g.datum.ty, g.label(l), g.label(r));
    if let Some((fl, fr)) = tensor_f(a, l, r, i) {
        if tensor_e(a, fl, fr, i) != Some((l, r)) {
            return Err(format!("{} e_{i} f_{i} != id", name()));
        }
    }
    if let Some((el, er)) = tensor_e(a, l, r, i) {
        if tensor_f(a, el, er, i) != Some((l, r)) {
            return Err(format!("{} f_{i} e_{i} != id", name()));
        }
    }
    let (e, p) = tensor_stats(a, l, r, i);
    if p as i64 - e as i64 != g.weight(l)[i] + g.weight(r)[i] {
        return Err(format!("{} stats off", name()));
    }
    Ok(())
}

/// `H` is unchanged along every classical arrow, and the stored component
/// ids agree with it.
pub fn energy_constancy(c: &Ctx, l: usize, r: usize, i: usize) -> Result<(), String> {
    if i == 0 {
        return Ok(());
    }
    let a = &c.g.arrows;
    let h0 = c.h.h(l, r);
    for (nl, nr) in [tensor_f(a, l, r, i), tensor_e(a, l, r, i)].into_iter().flatten() {
        if c.h.h(nl, nr) != h0 {
            return Err(format!("{}: H changes along a {i}-arrow", c.g.datum.ty));
        }
        if c.classical[c.sq.pair(nl, nr)] != c.classical[c.sq.pair(l, r)] {
            return Err(format!("{}: component id changes along a {i}-arrow", c.g.datum.ty));
        }
    }
    Ok(())
}

/// Walks `steps` lowering operators picked from `choices` (indices taken
/// modulo the index count), skipping those that do not apply.
pub fn random_path(m: &PathModel, choices: &[usize]) -> Path {
    let n = m.g.index_count();
    let mut p = m.ground_path();
    for &c in choices {
        if let Some(q) = m.f(&p, c % n) {
            p = q;
        }
    }
    p
}

/// Path crystal axioms plus the weight-drop rule on one path and index.
pub fn path_axioms(m: &PathModel, p: &Path, i: usize) -> Result<(), String> {
    let ty = m.g.datum.ty;
    let w = m.classical_weight(p);
    let (e, f) = m.stats(p, i);
    if f as i64 - e as i64 != w[i] {
        return Err(format!("{ty}: path stats disagree with weight at {:?}", p.prefix));
    }
    if let Some(q) = m.f(p, i) {
        if m.e(&q, i).as_ref() != Some(p) {
            return Err(format!("{ty}: path e_{i} f_{i} != id at {:?}", p.prefix));
        }
        let qw = m.classical_weight(&q);
        let dropped = (0..w.len()).all(|j| w[j] - qw[j] == m.g.datum.a(j, i));
        let deg = m.degree(&q) - m.degree(p);
        if !dropped || deg != i64::from(i == 0) {
            return Err(format!("{ty}: f_{i} at {:?} moves weight wrongly (degree +{deg})", p.prefix));
        }
    }
    if let Some(q) = m.e(p, i) {
        if m.f(&q, i).as_ref() != Some(p) {
            return Err(format!("{ty}: path f_{i} e_{i} != id at {:?}", p.prefix));
        }
    }
    Ok(())
}

/// Generates all paths of degree at most `max_degree`, taking frontier
/// entries and operator indices in an order driven by `seed`.
pub fn shuffled_multiplicities(m: &PathModel, max_degree: i64, seed: u64) -> Multiplicities {
    let mut state = seed | 1;
    let mut next = move || {
        // xorshift64
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let n = m.g.index_count();
    let start = m.ground_path();
    let mut seen = HashSet::from([start.clone()]);
    let mut frontier = VecDeque::from([start]);
    let mut out = Multiplicities::new();
    while !frontier.is_empty() {
        let k = (next() % frontier.len() as u64) as usize;
        let p = frontier.swap_remove_back(k).expect("index in range");
        *out.entry((m.classical_weight(&p), m.degree(&p))).or_default() += 1;
        let offset = (next() % n as u64) as usize;
        for j in 0..n {
            let i = (j + offset) % n;
            if let Some(q) = m.f(&p, i) {
                if m.degree(&q) <= max_degree && seen.insert(q.clone()) {
                    frontier.push_back(q);
                }
            }
        }
    }
    out
}

/// Breadth-first multiplicities for one path model, computed once. Degree
/// cap 2 for finite rank up to 3, else 1.
pub fn reference_multiplicities(ctx: usize, model: usize) -> (&'static Multiplicities, i64) {
    static CELL: OnceLock<Vec<Vec<(Multiplicities, i64)>>> = OnceLock::new();
    let all = CELL.get_or_init(|| {
        contexts()
            .iter()
            .map(|c| {
                let cap = if c.g.datum.rank() <= 3 { 2 } else { 1 };
                c.models
                    .iter()
                    .map(|m| (m.multiplicities(cap, perfect_crystal::Traversal::BreadthFirst).unwrap(), cap))
                    .collect()
            })
            .collect()
    });
    let (m, cap) = &all[ctx][model];
    (m, *cap)
}
