//! The energy function on B ⊗ B, by propagation along arrows and by the
//! component classification.

use std::collections::VecDeque;

use serde::Serialize;

use crate::algebra::{build_psi, valid_psi_indices, Psi};
use crate::crystal::{ArrowTable, CrystalElement, CrystalGraph};
use crate::error::{CrystalError, Result};
use crate::roots::{leq, RootVector};
use crate::tensor::{e_acts_left, f_acts_left, tensor_e, TensorSquare};

/// `H` on every pair `(left, right)`, stored at `left * base + right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnergyTable {
    pub base: usize,
    pub values: Vec<i64>,
}

impl EnergyTable {
    #[inline]
    pub fn h(&self, left: usize, right: usize) -> i64 {
        self.values[left * self.base + right]
    }
}

/// Change of `H` along the `i`-arrow leaving `left ⊗ right` under `f_i`.
fn f_shift(a: &ArrowTable, left: usize, right: usize, i: usize) -> i64 {
    if i != 0 {
        0
    } else if f_acts_left(a.phi(left, 0), a.epsilon(right, 0)) {
        -1
    } else {
        1
    }
}

/// Change of `H` along the `i`-arrow leaving `left ⊗ right` under `e_i`.
fn e_shift(a: &ArrowTable, left: usize, right: usize, i: usize) -> i64 {
    if i != 0 {
        0
    } else if e_acts_left(a.phi(left, 0), a.epsilon(right, 0)) {
        1
    } else {
        -1
    }
}

/// BFS from `anchor` with `H(anchor) = value`, checking every edge.
pub fn energy_propagate(a: &ArrowTable, anchor: (usize, usize), value: i64) -> Result<EnergyTable> {
    let sq = TensorSquare::new(a)?;
    let n = a.len();
    let mut h: Vec<Option<i64>> = vec![None; n * n];
    let start = sq.pair(anchor.0, anchor.1);
    h[start] = Some(value);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        let (l, r) = sq.split(t);
        let ht = h[t].expect("queued elements are assigned");
        for i in 0..a.index_count() {
            let moves = [
                (sq.arrows.f(t, i), f_shift(a, l, r, i), "f"),
                (sq.arrows.e(t, i), e_shift(a, l, r, i), "e"),
            ];
            for (target, shift, op) in moves {
                let Some(u) = target else { continue };
                let want = ht + shift;
                match h[u] {
                    None => {
                        h[u] = Some(want);
                        queue.push_back(u);
                    }
                    Some(have) if have != want => {
                        let (ul, ur) = sq.split(u);
                        return Err(CrystalError::EnergyInconsistent(format!(
                            "pair ({ul},{ur}) has H = {have}, but {op}_{i} from ({l},{r}) with H = {ht} gives {want}"
                        )));
                    }
                    _ => {}
                }
            }
        }
    }
    let values = h
        .into_iter()
        .enumerate()
        .map(|(t, v)| {
            v.ok_or_else(|| {
                CrystalError::EnergyUndetermined(format!("pair ({},{}) unreachable from the anchor", t / n, t % n))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EnergyTable { base: n, values })
}

/// `H` normalized by `H(empty ⊗ empty) = 0`.
pub fn energy_for(g: &CrystalGraph) -> Result<EnergyTable> {
    energy_propagate(&g.arrows, (g.empty(), g.empty()), 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ComponentLabel {
    EmptyEmpty,
    ThetaMinusTheta,
    LeftEmpty,
    RightEmpty,
    TwoTheta,
    ThetaComp(usize),
    /// Maximal vector `x_θ ⊗ y_j` with no `Ψ` onto its component.
    ThetaY(usize),
    /// Maximal vector `x_θ ⊗ x_{θ-α}`, `α ∈ Λ⁺`.
    Generic,
    /// Maximal vector `x_θ ⊗ x_γ` with `θ - γ` outside `Λ⁺ ∪ {0}`. Here
    /// `ε_0(x_γ) = 0`, so `ẽ_0` lands on `∅ ⊗ x_γ` and `H = 1 - 1`.
    ThetaOther(usize),
}

impl std::fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComponentLabel::ThetaComp(i) => write!(f, "ThetaComp({i})"),
            ComponentLabel::ThetaY(j) => write!(f, "ThetaY({j})"),
            ComponentLabel::ThetaOther(_) => write!(f, "ThetaOther"),
            other => write!(f, "{other:?}"),
        }
    }
}

impl ComponentLabel {
    pub fn energy(self) -> i64 {
        use ComponentLabel::*;
        match self {
            EmptyEmpty | ThetaMinusTheta | ThetaComp(_) | ThetaY(_) | ThetaOther(_) => 0,
            LeftEmpty | RightEmpty | Generic => 1,
            TwoTheta => 2,
        }
    }
}

/// The closed-form candidate for the component of `x_θ ⊗ x_θ`:
/// `x_α ⊗ x_β` with `α ≤ β`, plus `y_i ⊗ x_β` and `x_{-β} ⊗ y_i` with
/// `θ(h_i) > 0`, `β ∈ Λ⁺`, `β - α_i ∈ Λ ∪ {0}` (only the first part for
/// A_{2n}^(2)). It is exact for A_1^(1), A_2^(1) and A_{2n}^(2) only; see
/// [`two_theta_mismatch`].
pub fn in_two_theta(g: &CrystalGraph, left: usize, right: usize) -> bool {
    use CrystalElement::{X, Y};
    let n = g.datum.rank();
    let reduced = g.datum.ty.is_a2n_twisted();
    let theta = &g.lambda.theta;
    let admissible = |i: usize, beta: &RootVector| {
        theta.pairing(&g.datum, i) > 0
            && beta.is_nonneg()
            && g.lambda.contains(beta)
            && g.lambda.contains_or_zero(&(beta - &RootVector::simple(n, i)))
    };
    match (g.element(left), g.element(right)) {
        (X(a), X(b)) => leq(a, b),
        (Y(i), X(b)) if !reduced => admissible(*i, b),
        (X(a), Y(i)) if !reduced => admissible(*i, &-a),
        _ => false,
    }
}

/// Pairs the closed form accepts outside the actual component, and pairs of
/// the component it rejects, as tensor-square indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TwoThetaMismatch {
    pub component_size: usize,
    pub predicate_size: usize,
    pub extra: Vec<usize>,
    pub missing: Vec<usize>,
}

impl TwoThetaMismatch {
    pub fn is_exact(&self) -> bool {
        self.extra.is_empty() && self.missing.is_empty()
    }
}

pub fn two_theta_mismatch(g: &CrystalGraph, sq: &TensorSquare) -> TwoThetaMismatch {
    let comps = crate::tensor::components(&sq.arrows, true);
    let id = comps.of[sq.pair(g.theta(), g.theta())];
    let mut m = TwoThetaMismatch::default();
    for t in 0..sq.len() {
        let (l, r) = sq.split(t);
        let inside = comps.of[t] == id;
        let pred = in_two_theta(g, l, r);
        m.component_size += usize::from(inside);
        m.predicate_size += usize::from(pred);
        match (inside, pred) {
            (false, true) => m.extra.push(t),
            (true, false) => m.missing.push(t),
            _ => {}
        }
    }
    m
}

/// Climbs with `ẽ_k`, `k != 0`, to the maximal vector of the classical component.
pub fn maximal_of(a: &ArrowTable, mut left: usize, mut right: usize) -> (usize, usize) {
    'climb: loop {
        for k in 1..a.index_count() {
            if let Some(next) = tensor_e(a, left, right, k) {
                (left, right) = next;
                continue 'climb;
            }
        }
        return (left, right);
    }
}

/// Everything the classification needs, built once per crystal.
pub struct Classifier<'a> {
    g: &'a CrystalGraph,
    psis: Vec<Psi>,
}

impl<'a> Classifier<'a> {
    pub fn new(g: &'a CrystalGraph) -> Result<Self> {
        let psis = valid_psi_indices(g)
            .into_iter()
            .map(|i| build_psi(g, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Classifier { g, psis })
    }

    pub fn psis(&self) -> &[Psi] {
        &self.psis
    }

    /// Label of the classical component holding `left ⊗ right`.
    pub fn classify(&self, left: usize, right: usize) -> ComponentLabel {
        let g = self.g;
        let em = g.empty();
        if left == em && right == em {
            return ComponentLabel::EmptyEmpty;
        }
        if right == em {
            return ComponentLabel::LeftEmpty;
        }
        if left == em {
            return ComponentLabel::RightEmpty;
        }
        if let Some(p) = self.psis.iter().find(|p| p.preimage(left, right).is_some()) {
            return ComponentLabel::ThetaComp(p.i);
        }
        self.label_top(maximal_of(&g.arrows, left, right))
    }

    fn label_top(&self, (l, r): (usize, usize)) -> ComponentLabel {
        let g = self.g;
        debug_assert_eq!(l, g.theta(), "maximal vectors off B(0) start with x_theta");
        if r == g.theta() {
            return ComponentLabel::TwoTheta;
        }
        if r == g.neg_theta() {
            return ComponentLabel::ThetaMinusTheta;
        }
        match g.element(r) {
            CrystalElement::Y(j) => ComponentLabel::ThetaY(*j),
            CrystalElement::X(gamma) if g.lambda.contains(&(&g.lambda.theta - gamma)) => ComponentLabel::Generic,
            _ => ComponentLabel::ThetaOther(r),
        }
    }
}

pub fn classify_component(g: &CrystalGraph, left: usize, right: usize) -> Result<ComponentLabel> {
    Ok(Classifier::new(g)?.classify(left, right))
}

pub fn energy_by_classification(g: &CrystalGraph) -> Result<EnergyTable> {
    let c = Classifier::new(g)?;
    let n = g.len();
    let values = (0..n * n).map(|t| c.classify(t / n, t % n).energy()).collect();
    Ok(EnergyTable { base: n, values })
}

/// Shape name of a maximal vector `x_θ ⊗ b` beyond the five fixed ones.
pub fn top_shape(g: &CrystalGraph, right: usize) -> &'static str {
    match g.element(right) {
        CrystalElement::Y(_) => "x_theta (x) y_i",
        CrystalElement::X(gamma) if g.lambda.contains(&(&g.lambda.theta - gamma)) => "x_theta (x) x_theta-alpha",
        _ => "x_theta (x) x_gamma, theta-gamma not in Lambda+",
    }
}

/// `H` at every maximal vector of `B ⊗ B`, keyed by shape and label, fixed
/// shapes first.
pub fn maximal_vector_energies(g: &CrystalGraph, h: &EnergyTable) -> Vec<(String, String, i64)> {
    let (em, th, nt) = (g.empty(), g.theta(), g.neg_theta());
    let sq = TensorSquare::of(g);
    let fixed = [
        ("empty (x) empty", em, em),
        ("empty (x) x_theta", em, th),
        ("x_theta (x) x_-theta", th, nt),
        ("x_theta (x) empty", th, em),
        ("x_theta (x) x_theta", th, th),
    ];
    let mut out: Vec<(String, String, i64)> = fixed
        .iter()
        .map(|&(shape, l, r)| (shape.to_string(), sq.label(g, sq.pair(l, r)), h.h(l, r)))
        .collect();
    for t in crate::tensor::maximal_vectors(&sq.arrows, &[0]) {
        let (l, r) = sq.split(t);
        if fixed.iter().any(|&(_, fl, fr)| (fl, fr) == (l, r)) {
            continue;
        }
        out.push((top_shape(g, r).to_string(), sq.label(g, t), h.h(l, r)));
    }
    out
}

/// The three-element crystal with `1 -1-> 2 -2-> 3 -0-> 1`.
pub fn three_box_crystal() -> ArrowTable {
    ArrowTable::from_edges(3, 3, [(0, 1, 1), (1, 2, 2), (2, 0, 0)]).expect("valid table")
}

/// Checks `H(a ⊗ b) = 1` if `a >= b`, else 0, with `H(1 ⊗ 2) = 0` as anchor.
pub fn fixture_energy_check() -> std::result::Result<EnergyTable, Vec<String>> {
    let h = energy_propagate(&three_box_crystal(), (0, 1), 0).map_err(|e| vec![e.to_string()])?;
    let mut diffs = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            let want = i64::from(a >= b);
            if h.h(a, b) != want {
                diffs.push(format!("H({} (x) {}) = {}, expected {want}", a + 1, b + 1, h.h(a, b)));
            }
        }
    }
    if diffs.is_empty() {
        Ok(h)
    } else {
        Err(diffs)
    }
}
