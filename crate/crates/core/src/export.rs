//! DOT and JSON renderings of crystals, reports, energy tables and
//! characters. Output depends only on the inputs, so it is stable across runs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::affine::AffineType;
use crate::algebra::MultiplicationTable;
use crate::crystal::{CrystalElement, CrystalGraph};
use crate::energy::{maximal_of, Classifier, EnergyTable};
use crate::path::CharacterEntry;
use crate::perfect::{AxiomStatus, PerfectReport};
use crate::tensor::{components, TensorSquare};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn crystal_dot(g: &CrystalGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(&g.datum.ty.to_string()));
    let _ = writeln!(out, "  node [shape=box];");
    for b in 0..g.len() {
        let _ = writeln!(out, "  n{b} [label={}];", quote(&g.label(b)));
    }
    for (src, i, dst) in g.arrows.edges() {
        let style = if i == 0 { ", style=dashed" } else { "" };
        let _ = writeln!(out, "  n{src} -> n{dst} [label=\"{i}\"{style}];");
    }
    out.push_str("}\n");
    out
}

fn element_json(g: &CrystalGraph, b: usize) -> Value {
    let (kind, root, y) = match g.element(b) {
        CrystalElement::X(a) => ("x", Some(a.clone()), None),
        CrystalElement::Y(i) => ("y", None, Some(*i)),
        CrystalElement::Empty => ("empty", None, None),
    };
    json!({
        "index": b,
        "label": g.label(b),
        "kind": kind,
        "root": root,
        "y_index": y,
        "weight": g.weight(b),
        "epsilon": g.eps_vec(b),
        "phi": g.phi_vec(b),
    })
}

pub fn crystal_json(g: &CrystalGraph) -> Value {
    let edges: Vec<Value> = g
        .arrows
        .edges()
        .into_iter()
        .map(|(src, i, dst)| json!({"from": src, "to": dst, "index": i}))
        .collect();
    json!({
        "type": g.datum.ty,
        "cartan": g.datum.cartan,
        "marks": g.datum.marks,
        "comarks": g.datum.comarks,
        "finite_type": g.datum.finite_type.to_string(),
        "elements": (0..g.len()).map(|b| element_json(g, b)).collect::<Vec<_>>(),
        "edges": edges,
    })
}

pub fn report_json(r: &PerfectReport) -> Value {
    let axioms: Vec<Value> = r
        .axioms
        .iter()
        .map(|a| {
            json!({
                "axiom": a.axiom,
                "name": a.name,
                "status": a.status,
                "passed": a.status != AxiomStatus::Fail,
                "witness": a.witness,
            })
        })
        .collect();
    json!({
        "type": r.ty,
        "elements": r.elements,
        "passed": r.passed(),
        "axioms": axioms,
        "minimal": r.minimal,
    })
}

/// `"(left,right)" -> H` with labels as keys.
pub fn energy_map(g: &CrystalGraph, h: &EnergyTable) -> BTreeMap<String, i64> {
    let mut m = BTreeMap::new();
    for l in 0..g.len() {
        for r in 0..g.len() {
            m.insert(format!("({},{})", g.label(l), g.label(r)), h.h(l, r));
        }
    }
    m
}

/// One row per classical component of `B ⊗ B`: maximal vector, size, label.
pub fn component_report(g: &CrystalGraph, classifier: &Classifier) -> Vec<Value> {
    let sq = TensorSquare::of(g);
    components(&sq.arrows, true)
        .members
        .iter()
        .map(|comp| {
            let (l, r) = sq.split(comp[0]);
            let top = maximal_of(&g.arrows, l, r);
            let label = classifier.classify(l, r);
            json!({
                "representative_maximal_vector": sq.label(g, sq.pair(top.0, top.1)),
                "size": comp.len(),
                "label": label.to_string(),
                "energy": label.energy(),
            })
        })
        .collect()
}

pub fn multiplication_json(ty: AffineType, i: usize, t: &MultiplicationTable) -> Value {
    let rows: Vec<Value> = t
        .rows
        .iter()
        .zip(&t.cells)
        .map(|(name, cells)| {
            let products: Vec<Value> = cells
                .iter()
                .map(|c| c.as_ref().map_or(Value::from(0), |s| Value::from(s.as_str())))
                .collect();
            json!({"row": name, "products": products})
        })
        .collect();
    json!({"type": ty, "index": i, "columns": t.columns, "rows": rows})
}

pub fn character_json(entries: &[CharacterEntry]) -> Value {
    json!(entries)
}
