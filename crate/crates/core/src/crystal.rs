//! Finite crystal graphs: a generic arrow table, and the level-one crystal
//! B = B(θ) ⊔ B(0) built from Cartan data.

use std::collections::HashMap;
use std::fmt;

use crate::affine::{build_datum, AffineDatum, AffineType, AffineWeight};
use crate::error::{CrystalError, Result};
use crate::roots::{lambda_weights, LambdaSet, RootVector};

const NONE: u32 = u32::MAX;

/// Kashiwara operators on `0..len()` with colours `0..index_count()`,
/// stored as dense `f` and `e` tables plus cached string lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowTable {
    size: usize,
    indices: usize,
    f: Vec<u32>,
    e: Vec<u32>,
    eps: Vec<u16>,
    phi: Vec<u16>,
}

impl ArrowTable {
    /// Builds the table from `(source, colour, target)` triples.
    pub fn from_edges(
        size: usize,
        indices: usize,
        edges: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        let mut f = vec![NONE; size * indices];
        let mut e = vec![NONE; size * indices];
        for (src, i, dst) in edges {
            if src >= size || dst >= size || i >= indices {
                return Err(CrystalError::Internal(format!("arrow {src} -{i}-> {dst} out of range")));
            }
            if f[i * size + src] != NONE || e[i * size + dst] != NONE {
                return Err(CrystalError::Internal(format!(
                    "arrow {src} -{i}-> {dst} clashes with an existing {i}-arrow"
                )));
            }
            f[i * size + src] = dst as u32;
            e[i * size + dst] = src as u32;
        }
        Self::finish(size, indices, f, e)
    }

    /// Builds the table from an `f` oracle; `e` is derived as its inverse.
    pub fn from_f(size: usize, indices: usize, fmap: impl Fn(usize, usize) -> Option<usize>) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..indices {
            for b in 0..size {
                if let Some(t) = fmap(b, i) {
                    edges.push((b, i, t));
                }
            }
        }
        Self::from_edges(size, indices, edges)
    }

    fn finish(size: usize, indices: usize, f: Vec<u32>, e: Vec<u32>) -> Result<Self> {
        let walk = |table: &[u32], b: usize, i: usize| -> Result<u16> {
            let mut k = 0u16;
            let mut cur = b;
            while table[i * size + cur] != NONE {
                cur = table[i * size + cur] as usize;
                k += 1;
                if k as usize > size {
                    return Err(CrystalError::Internal(format!("{i}-string through {b} is a cycle")));
                }
            }
            Ok(k)
        };
        let mut eps = vec![0; size * indices];
        let mut phi = vec![0; size * indices];
        for i in 0..indices {
            for b in 0..size {
                eps[i * size + b] = walk(&e, b, i)?;
                phi[i * size + b] = walk(&f, b, i)?;
            }
        }
        Ok(ArrowTable {
            size,
            indices,
            f,
            e,
            eps,
            phi,
        })
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn index_count(&self) -> usize {
        self.indices
    }

    #[inline]
    pub fn f(&self, b: usize, i: usize) -> Option<usize> {
        let t = self.f[i * self.size + b];
        (t != NONE).then_some(t as usize)
    }

    #[inline]
    pub fn e(&self, b: usize, i: usize) -> Option<usize> {
        let t = self.e[i * self.size + b];
        (t != NONE).then_some(t as usize)
    }

    #[inline]
    pub fn epsilon(&self, b: usize, i: usize) -> usize {
        self.eps[i * self.size + b] as usize
    }

    #[inline]
    pub fn phi(&self, b: usize, i: usize) -> usize {
        self.phi[i * self.size + b] as usize
    }

    /// All arrows as `(source, colour, target)`, colour-major.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.indices {
            for b in 0..self.size {
                if let Some(t) = self.f(b, i) {
                    out.push((b, i, t));
                }
            }
        }
        out
    }

    /// The same table with the `colour`-arrow leaving `src` removed.
    pub fn without_arrow(&self, src: usize, colour: usize) -> Result<Self> {
        let edges = self.edges().into_iter().filter(|&(b, i, _)| !(b == src && i == colour));
        Self::from_edges(self.size, self.indices, edges)
    }
}

/// A vertex of B: `x_alpha` for `alpha` in Λ, `y_i`, or the empty tableau.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrystalElement {
    X(RootVector),
    Y(usize),
    Empty,
}

impl CrystalElement {
    /// The classical weight in root coordinates.
    pub fn root_weight(&self, n: usize) -> RootVector {
        match self {
            CrystalElement::X(a) => a.clone(),
            _ => RootVector::zero(n),
        }
    }

    /// `x_alpha -> x_{-alpha}`, `y_i` and the empty element fixed.
    pub fn dual(&self) -> CrystalElement {
        match self {
            CrystalElement::X(a) => CrystalElement::X(-a),
            other => other.clone(),
        }
    }
}

impl fmt::Display for CrystalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrystalElement::X(a) => write!(f, "x{a}"),
            CrystalElement::Y(i) => write!(f, "y_{i}"),
            CrystalElement::Empty => write!(f, "empty"),
        }
    }
}

/// The level-one crystal of an affine type together with its Cartan data.
#[derive(Debug, Clone)]
pub struct CrystalGraph {
    pub datum: AffineDatum,
    pub lambda: LambdaSet,
    pub elements: Vec<CrystalElement>,
    pub arrows: ArrowTable,
    index: HashMap<CrystalElement, usize>,
}

/// Elements in canonical order: `Λ⁺`, the `y_i`, `Λ⁻` mirrored, then empty.
fn ordered_elements(lambda: &LambdaSet) -> Vec<CrystalElement> {
    let mut out: Vec<CrystalElement> = lambda.positive.iter().cloned().map(CrystalElement::X).collect();
    out.extend(lambda.has_y.iter().map(|&i| CrystalElement::Y(i)));
    out.extend(lambda.positive.iter().rev().map(|a| CrystalElement::X(-a)));
    out.push(CrystalElement::Empty);
    out
}

pub fn build_crystal(d: &AffineDatum) -> CrystalGraph {
    let lambda = lambda_weights(d);
    let elements = ordered_elements(&lambda);
    let index: HashMap<CrystalElement, usize> =
        elements.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect();
    let n = d.rank();
    let x = |v: &RootVector| index.get(&CrystalElement::X(v.clone())).copied();
    let theta = lambda.theta.clone();
    let neg_theta = -&theta;
    let empty = elements.len() - 1;
    let mut edges = Vec::new();
    for (src, el) in elements.iter().enumerate() {
        let CrystalElement::X(alpha) = el else { continue };
        for i in 1..=n {
            if let Some(dst) = x(&(alpha - &RootVector::simple(n, i))) {
                edges.push((src, i, dst));
            }
        }
        if alpha != &theta && alpha != &neg_theta {
            // alpha + θ is never ±θ here
            if let Some(dst) = x(&(alpha + &theta)) {
                edges.push((src, 0, dst));
            }
        }
    }
    for &i in &lambda.has_y {
        let yi = index[&CrystalElement::Y(i)];
        let ai = RootVector::simple(n, i);
        edges.push((x(&ai).expect("alpha_i in Λ"), i, yi));
        edges.push((yi, i, x(&-&ai).expect("-alpha_i in Λ")));
    }
    edges.push((x(&neg_theta).expect("-θ in Λ"), 0, empty));
    edges.push((empty, 0, x(&theta).expect("θ in Λ")));
    let arrows = ArrowTable::from_edges(elements.len(), d.index_count(), edges)
        .expect("arrow rules give a seminormal crystal");
    CrystalGraph {
        datum: d.clone(),
        lambda,
        elements,
        arrows,
        index,
    }
}

/// Convenience: parse, build the datum, build the crystal.
pub fn crystal_for(ty: AffineType) -> Result<CrystalGraph> {
    Ok(build_crystal(&build_datum(ty)?))
}

impl CrystalGraph {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_count(&self) -> usize {
        self.datum.index_count()
    }

    pub fn index_of(&self, el: &CrystalElement) -> Option<usize> {
        self.index.get(el).copied()
    }

    pub fn element(&self, b: usize) -> &CrystalElement {
        &self.elements[b]
    }

    /// Index of `x_v`, panicking if `v` is not in Λ.
    pub fn x(&self, v: &RootVector) -> usize {
        self.index_of(&CrystalElement::X(v.clone()))
            .unwrap_or_else(|| panic!("x{v} is not an element of B for {}", self.datum.ty))
    }

    pub fn try_x(&self, v: &RootVector) -> Option<usize> {
        self.index_of(&CrystalElement::X(v.clone()))
    }

    pub fn y(&self, i: usize) -> usize {
        self.index_of(&CrystalElement::Y(i))
            .unwrap_or_else(|| panic!("y_{i} is not an element of B for {}", self.datum.ty))
    }

    pub fn empty(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn theta(&self) -> usize {
        0
    }

    pub fn neg_theta(&self) -> usize {
        self.elements.len() - 2
    }

    pub fn f(&self, b: usize, i: usize) -> Option<usize> {
        self.arrows.f(b, i)
    }

    pub fn e(&self, b: usize, i: usize) -> Option<usize> {
        self.arrows.e(b, i)
    }

    pub fn epsilon(&self, b: usize, i: usize) -> usize {
        self.arrows.epsilon(b, i)
    }

    pub fn phi(&self, b: usize, i: usize) -> usize {
        self.arrows.phi(b, i)
    }

    /// `ε(b) = sum ε_i(b) Λ_i` as a coordinate vector.
    pub fn eps_vec(&self, b: usize) -> Vec<i64> {
        (0..self.index_count()).map(|i| self.epsilon(b, i) as i64).collect()
    }

    pub fn phi_vec(&self, b: usize) -> Vec<i64> {
        (0..self.index_count()).map(|i| self.phi(b, i) as i64).collect()
    }

    /// `wt b = φ(b) - ε(b)` in Λ-coordinates.
    pub fn weight(&self, b: usize) -> Vec<i64> {
        (0..self.index_count())
            .map(|i| self.phi(b, i) as i64 - self.epsilon(b, i) as i64)
            .collect()
    }

    pub fn weight_of(&self, b: usize) -> AffineWeight {
        AffineWeight::classical(self.weight(b))
    }

    /// Swaps in a damaged arrow table, for negative controls.
    pub fn with_arrows(&self, arrows: ArrowTable) -> CrystalGraph {
        let mut g = self.clone();
        g.arrows = arrows;
        g
    }

    /// A copy with the 0-arrow `x_{-θ} -> empty` removed, which breaks
    /// perfectness in a detectable way.
    pub fn with_injected_fault(&self) -> CrystalGraph {
        let arrows = self
            .arrows
            .without_arrow(self.neg_theta(), 0)
            .expect("removing an arrow keeps the table valid");
        self.with_arrows(arrows)
    }

    pub fn label(&self, b: usize) -> String {
        self.elements[b].to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn crystal(s: &str) -> CrystalGraph {
        crystal_for(s.parse().unwrap()).unwrap()
    }

    fn x(g: &CrystalGraph, c: &[i64]) -> usize {
        g.x(&RootVector::from_integers(c))
    }

    #[test]
    fn element_counts() {
        for (t, n) in [("A2-1", 9), ("D4-3", 8), ("C2-1", 11), ("A4-2", 5), ("A6-2", 7), ("E8-1", 249), ("G2-1", 15)] {
            assert_eq!(crystal(t).len(), n, "{t}");
        }
    }

    #[test]
    fn a2_operators() {
        let g = crystal("A2-1");
        assert_eq!(g.f(g.theta(), 1), Some(x(&g, &[0, 1])));
        assert_eq!(g.f(x(&g, &[1, 0]), 1), Some(g.y(1)));
        assert_eq!(g.f(g.empty(), 0), Some(g.theta()));
        assert_eq!(g.f(g.empty(), 1), None);
        assert_eq!(g.epsilon(g.theta(), 0), 2);
        assert_eq!(g.epsilon(g.empty(), 0), 1);
        assert_eq!((g.epsilon(g.y(1), 1), g.phi(g.y(1), 1)), (1, 1));
        assert_eq!(g.weight(g.theta()), vec![-2, 1, 1]);
        assert_eq!(g.weight(g.empty()), vec![0, 0, 0]);
        assert_eq!(g.eps_vec(g.empty()), vec![1, 0, 0]);
        assert_eq!(g.phi_vec(g.y(2)), vec![0, 0, 1]);
    }

    #[test]
    fn d43_theta_epsilon() {
        let g = crystal("D4-3");
        assert_eq!(g.eps_vec(g.theta()), vec![2, 0, 0]);
    }

    #[test]
    fn a2n_twisted_is_one_chain() {
        for t in ["A2-2", "A4-2", "A6-2", "A8-2"] {
            let g = crystal(t);
            let mut cur = g.empty();
            let mut seen = 1;
            loop {
                let next = (0..g.index_count()).filter_map(|i| g.f(cur, i)).collect::<Vec<_>>();
                assert!(next.len() <= 1);
                match next.first() {
                    Some(&b) if b != g.empty() => {
                        cur = b;
                        seen += 1;
                    }
                    _ => break,
                }
            }
            assert_eq!(seen, g.len(), "{t}");
        }
    }

    #[test]
    fn weights_agree_with_roots() {
        for ty in AffineType::sweep(5, true) {
            let g = crystal_for(ty).unwrap();
            let n = g.datum.rank();
            for b in 0..g.len() {
                assert_eq!(g.weight(b), g.element(b).root_weight(n).to_lambda(&g.datum), "{ty} {}", g.label(b));
                for i in 0..g.index_count() {
                    if let Some(t) = g.f(b, i) {
                        assert_eq!(g.e(t, i), Some(b));
                    }
                    if i != 0 && b == g.empty() {
                        assert_eq!((g.epsilon(b, i), g.phi(b, i)), (0, 0));
                    }
                }
            }
        }
    }

    #[test]
    fn labels() {
        let g = crystal("A4-2");
        let labels: Vec<String> = (0..g.len()).map(|b| g.label(b)).collect();
        assert_eq!(labels, ["x[1,1/2]", "x[0,1/2]", "x[0,-1/2]", "x[-1,-1/2]", "empty"]);
        assert_eq!(crystal("A1-1").label(1), "y_1");
    }

    #[test]
    fn fault_removes_arrow() {
        let g = crystal("A2-1");
        let bad = g.with_injected_fault();
        assert_eq!(bad.f(bad.neg_theta(), 0), None);
        assert_eq!(bad.epsilon(bad.empty(), 0), 0);
    }

    #[test]
    fn clashing_arrows_rejected() {
        assert!(ArrowTable::from_edges(3, 1, [(0, 0, 1), (0, 0, 2)]).is_err());
        assert!(ArrowTable::from_edges(2, 1, [(0, 0, 1), (1, 0, 0)]).is_err());
    }
}
