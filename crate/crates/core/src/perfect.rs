//! Level-one perfectness checks and the minimal-element tables.

use num_rational::Rational64;
use serde::Serialize;

use crate::affine::{build_datum, level, level_one_dominants, AffineDatum, AffineType, AffineWeight};
use crate::crystal::{build_crystal, CrystalGraph};
use crate::error::Result;
use crate::tensor::{components, TensorSquare};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AxiomStatus {
    Pass,
    Fail,
    /// Not machine-checked (existence of the underlying module).
    Asserted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: u8,
    pub name: &'static str,
    pub status: AxiomStatus,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalEntry {
    pub weight: String,
    /// The element `b^λ` with `ε(b^λ) = λ`.
    pub upper: Option<String>,
    /// The element `b_λ` with `φ(b_λ) = λ`.
    pub lower: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerfectReport {
    #[serde(rename = "type")]
    pub ty: String,
    pub elements: usize,
    pub axioms: Vec<AxiomResult>,
    pub minimal: Vec<MinimalEntry>,
}

impl PerfectReport {
    /// True when every machine-checked axiom passes.
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(|a| a.status != AxiomStatus::Fail)
    }

    pub fn failures(&self) -> Vec<&AxiomResult> {
        self.axioms.iter().filter(|a| a.status == AxiomStatus::Fail).collect()
    }
}

fn result(axiom: u8, name: &'static str, witness: Option<String>) -> AxiomResult {
    AxiomResult {
        axiom,
        name,
        status: if witness.is_none() { AxiomStatus::Pass } else { AxiomStatus::Fail },
        witness,
    }
}

/// Solves `sum_j a_ij mu_j = w_i` for `i = 1..n`: the root coordinates of a
/// classical weight given on `h_1..h_n`.
pub fn root_coordinates(d: &AffineDatum, w: &[i64]) -> Vec<Rational64> {
    let n = d.rank();
    let zero = Rational64::from(0);
    let mut rows: Vec<Vec<Rational64>> = (1..=n)
        .map(|i| {
            let mut row: Vec<Rational64> = (1..=n).map(|j| Rational64::from(d.a(i, j))).collect();
            row.push(Rational64::from(w[i]));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| rows[r][col] != zero).expect("finite Cartan matrix is invertible");
        rows.swap(col, p);
        let pivot = rows[col][col];
        for v in rows[col].iter_mut() {
            *v /= pivot;
        }
        for r in 0..n {
            if r != col && rows[r][col] != zero {
                let factor = rows[r][col];
                let pivot_row = rows[col].clone();
                for (v, pv) in rows[r].iter_mut().zip(pivot_row) {
                    *v -= factor * pv;
                }
            }
        }
    }
    rows.into_iter().map(|r| r[n]).collect()
}

/// Minimal elements `b^λ`, `b_λ` for each level-one dominant `λ`: every
/// element whose `ε` (resp. `φ`) equals `λ`.
pub fn minimal_candidates(g: &CrystalGraph) -> Vec<(AffineWeight, Vec<usize>, Vec<usize>)> {
    level_one_dominants(&g.datum)
        .into_iter()
        .map(|lam| {
            let upper = (0..g.len()).filter(|&b| g.eps_vec(b) == lam.lambda).collect();
            let lower = (0..g.len()).filter(|&b| g.phi_vec(b) == lam.lambda).collect();
            (lam, upper, lower)
        })
        .collect()
}

/// `λ ↦ (b^λ, b_λ)` when both are unique.
pub fn minimal_elements(g: &CrystalGraph) -> Vec<(AffineWeight, Option<usize>, Option<usize>)> {
    let unique = |v: Vec<usize>| if v.len() == 1 { Some(v[0]) } else { None };
    minimal_candidates(g)
        .into_iter()
        .map(|(lam, up, low)| (lam, unique(up), unique(low)))
        .collect()
}

pub fn verify_perfect(ty: AffineType) -> Result<PerfectReport> {
    let d = build_datum(ty)?;
    Ok(verify_perfect_graph(&build_crystal(&d)))
}

/// Checks axioms (2)-(5) of a level-one perfect crystal on `g`.
pub fn verify_perfect_graph(g: &CrystalGraph) -> PerfectReport {
    let d = &g.datum;
    let mut axioms = vec![AxiomResult {
        axiom: 1,
        name: "underlying module exists",
        status: AxiomStatus::Asserted,
        witness: None,
    }];

    // (2) B ⊗ B connected
    let witness = match TensorSquare::new(&g.arrows) {
        Ok(sq) => {
            let comps = components(&sq.arrows, false);
            (comps.count() != 1).then(|| {
                let base = comps.of[sq.pair(g.empty(), g.empty())];
                let stray = (0..sq.len()).find(|&t| comps.of[t] != base).expect("more than one component");
                format!("{} components; {} unreachable from empty (x) empty", comps.count(), sq.label(g, stray))
            })
        }
        Err(e) => Some(format!("tensor square is not a crystal: {e}")),
    };
    axioms.push(result(2, "tensor square connected", witness));

    // (3) weights below θ with a one-dimensional θ-space
    let theta_lambda = g.lambda.theta.to_lambda(d);
    let d0 = Rational64::from(d.d0());
    let theta_root: Vec<Rational64> = g
        .lambda
        .theta
        .doubled()
        .iter()
        .map(|&c| Rational64::new(c, 2))
        .collect();
    let mut witness = None;
    let mut theta_count = 0;
    for b in 0..g.len() {
        let w = g.weight(b);
        if w == theta_lambda {
            theta_count += 1;
        }
        if level(&AffineWeight::classical(w.clone()), d) != 0 {
            witness = Some(format!("{} has weight of nonzero level", g.label(b)));
            break;
        }
        let mu = root_coordinates(d, &w);
        let ok = mu.iter().zip(&theta_root).all(|(m, t)| {
            let v = (t - m) * d0;
            v.is_integer() && v >= Rational64::from(0)
        });
        if !ok {
            witness = Some(format!("{} has weight {w:?} outside theta - cone", g.label(b)));
            break;
        }
    }
    if witness.is_none() && theta_count != 1 {
        witness = Some(format!("{theta_count} elements of weight theta"));
    }
    axioms.push(result(3, "weights lie below theta, theta-space one-dimensional", witness));

    // (4) <c, ε(b)> >= 1
    let witness = (0..g.len())
        .find(|&b| level(&AffineWeight::classical(g.eps_vec(b)), d) < 1)
        .map(|b| format!("<c, eps({})> = {}", g.label(b), level(&AffineWeight::classical(g.eps_vec(b)), d)));
    axioms.push(result(4, "<c, eps(b)> >= 1", witness));

    // (5) unique minimal elements
    let mut minimal = Vec::new();
    let mut witness = None;
    let labels = |v: &[usize]| v.iter().map(|&b| g.label(b)).collect::<Vec<_>>().join(", ");
    for (lam, up, low) in minimal_candidates(g) {
        let name = lam.short_name();
        if witness.is_none() && (up.len() != 1 || low.len() != 1) {
            witness = Some(format!(
                "{name}: eps-preimages [{}], phi-preimages [{}]",
                labels(&up),
                labels(&low)
            ));
        }
        minimal.push(MinimalEntry {
            weight: name,
            upper: (up.len() == 1).then(|| g.label(up[0])),
            lower: (low.len() == 1).then(|| g.label(low[0])),
        });
    }
    if witness.is_none() {
        let level_one_eps = (0..g.len())
            .filter(|&b| level(&AffineWeight::classical(g.eps_vec(b)), d) == 1)
            .count();
        if level_one_eps != minimal.len() {
            witness = Some(format!(
                "{level_one_eps} elements have level-one eps, {} level-one dominant weights",
                minimal.len()
            ));
        }
    }
    axioms.push(result(5, "unique minimal elements", witness));

    PerfectReport {
        ty: d.ty.to_string(),
        elements: g.len(),
        axioms,
        minimal,
    }
}
