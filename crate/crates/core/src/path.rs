//! The path realization of level-one highest-weight crystals: ground
//! states, λ-paths with their crystal operators, affine weights through the
//! energy function, and truncated characters.

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_rational::Rational64;
use serde::Serialize;

use crate::affine::{level, AffineWeight};
use crate::crystal::CrystalGraph;
use crate::energy::{energy_for, EnergyTable};
use crate::error::{CrystalError, Result};
use crate::tensor::signature;

/// The ground-state path `... ⊗ b_1 ⊗ b_0` of a level-one dominant weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroundState {
    pub lambda: Vec<i64>,
    /// `b_0 .. b_{m-1}`; from `period_start` on the sequence repeats.
    pub entries: Vec<usize>,
    /// `λ_0 .. λ_m`, with `λ_m = λ_{period_start}`.
    pub weights: Vec<Vec<i64>>,
    pub period_start: usize,
}

impl GroundState {
    /// Iterates `λ_{k+1} = ε(b_{λ_k})` until a weight repeats.
    pub fn new(g: &CrystalGraph, lambda: &AffineWeight) -> Result<Self> {
        if lambda.lambda.len() != g.index_count() || lambda.lambda.iter().any(|&c| c < 0) {
            return Err(CrystalError::InvalidArgument(format!(
                "{} is not a dominant weight of {}",
                lambda.short_name(),
                g.datum.ty
            )));
        }
        if level(lambda, &g.datum) != 1 {
            return Err(CrystalError::InvalidArgument(format!(
                "{} has level {}, expected 1",
                lambda.short_name(),
                level(lambda, &g.datum)
            )));
        }
        let mut weights = vec![lambda.lambda.clone()];
        let mut entries = Vec::new();
        loop {
            let current = weights.last().expect("non-empty");
            let found: Vec<usize> = (0..g.len()).filter(|&b| &g.phi_vec(b) == current).collect();
            let [b] = found[..] else {
                return Err(CrystalError::Internal(format!(
                    "{} elements with phi = {current:?}",
                    found.len()
                )));
            };
            entries.push(b);
            let next = g.eps_vec(b);
            if let Some(start) = weights.iter().position(|w| w == &next) {
                weights.push(next);
                return Ok(GroundState {
                    lambda: lambda.lambda.clone(),
                    entries,
                    weights,
                    period_start: start,
                });
            }
            weights.push(next);
        }
    }

    pub fn period(&self) -> usize {
        self.entries.len() - self.period_start
    }

    fn slot(&self, k: usize) -> usize {
        if k < self.entries.len() {
            k
        } else {
            self.period_start + (k - self.period_start) % self.period()
        }
    }

    /// `b_k`.
    pub fn b(&self, k: usize) -> usize {
        self.entries[self.slot(k)]
    }

    /// `λ_k`, the weight of the tail `... ⊗ b_{k+1} ⊗ b_k`.
    pub fn lambda_at(&self, k: usize) -> &[i64] {
        if k < self.entries.len() {
            &self.weights[k]
        } else {
            &self.weights[self.slot(k)]
        }
    }
}

/// A λ-path by its canonical prefix `p_0 .. p_{N-1}`; `p_k = b_k` from `N` on
/// and `p_{N-1} != b_{N-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Path {
    pub prefix: Vec<u32>,
}

impl Path {
    pub fn depth(&self) -> usize {
        self.prefix.len()
    }
}

/// One entry of a truncated character.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CharacterEntry {
    pub delta_degree: i64,
    pub classical_weight: Vec<i64>,
    pub multiplicity: u64,
}

/// Multiplicities keyed by `(classical weight in Λ-coordinates, degree)`.
pub type Multiplicities = BTreeMap<(Vec<i64>, i64), u64>;

pub fn character_entries(m: &Multiplicities) -> Vec<CharacterEntry> {
    let mut out: Vec<CharacterEntry> = m
        .iter()
        .map(|((w, deg), &mult)| CharacterEntry {
            delta_degree: *deg,
            classical_weight: w.clone(),
            multiplicity: mult,
        })
        .collect();
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Traversal {
    BreadthFirst,
    DepthFirst,
}

/// Everything needed to run the path crystal of `L(λ)`.
#[derive(Debug, Clone)]
pub struct PathModel {
    pub g: CrystalGraph,
    pub energy: EnergyTable,
    pub ground: GroundState,
}

impl PathModel {
    pub fn new(g: CrystalGraph, lambda: &AffineWeight) -> Result<Self> {
        let energy = energy_for(&g)?;
        let ground = GroundState::new(&g, lambda)?;
        Ok(PathModel { g, energy, ground })
    }

    pub fn ground_path(&self) -> Path {
        Path { prefix: Vec::new() }
    }

    fn entry(&self, prefix: &[u32], k: usize) -> usize {
        prefix.get(k).map_or_else(|| self.ground.b(k), |&p| p as usize)
    }

    fn canonical(&self, mut prefix: Vec<u32>) -> Path {
        while let Some(&last) = prefix.last() {
            if last as usize != self.ground.b(prefix.len() - 1) {
                break;
            }
            prefix.pop();
        }
        Path { prefix }
    }

    /// Factor statistics left to right: the tail first, then `p_{N-1} .. p_0`.
    fn word(&self, prefix: &[u32], i: usize) -> Vec<(usize, usize)> {
        let n = prefix.len();
        let tail_phi = self.ground.lambda_at(n)[i];
        let mut word = vec![(0, tail_phi as usize)];
        word.extend(prefix.iter().rev().map(|&b| (self.g.epsilon(b as usize, i), self.g.phi(b as usize, i))));
        word
    }

    /// `(ε_i, φ_i)` of the path.
    pub fn stats(&self, p: &Path, i: usize) -> (usize, usize) {
        let s = signature(self.word(&p.prefix, i));
        (s.epsilon, s.phi)
    }

    pub fn f(&self, p: &Path, i: usize) -> Option<Path> {
        let mut prefix = p.prefix.clone();
        loop {
            let s = signature(self.word(&prefix, i));
            match s.f_slot? {
                0 => prefix.push(self.ground.b(prefix.len()) as u32),
                slot => {
                    let k = prefix.len() - slot;
                    prefix[k] = self.g.f(prefix[k] as usize, i)? as u32;
                    return Some(self.canonical(prefix));
                }
            }
        }
    }

    pub fn e(&self, p: &Path, i: usize) -> Option<Path> {
        let s = signature(self.word(&p.prefix, i));
        // the tail carries no minus signs
        let slot = s.e_slot?;
        debug_assert_ne!(slot, 0);
        let mut prefix = p.prefix.clone();
        let k = prefix.len() - slot;
        prefix[k] = self.g.e(prefix[k] as usize, i)? as u32;
        Some(self.canonical(prefix))
    }

    /// `λ + Σ_k (wt p_k - wt b_k)` in Λ-coordinates.
    pub fn classical_weight(&self, p: &Path) -> Vec<i64> {
        let mut w = self.ground.lambda.clone();
        for (k, &pk) in p.prefix.iter().enumerate() {
            let (wp, wb) = (self.g.weight(pk as usize), self.g.weight(self.ground.b(k)));
            for (c, (a, b)) in w.iter_mut().zip(wp.iter().zip(&wb)) {
                *c += a - b;
            }
        }
        w
    }

    /// `Σ_k (k+1)(H(p_{k+1} ⊗ p_k) - H(b_{k+1} ⊗ b_k))`; every term past the
    /// prefix vanishes. Rises by one along each 0-arrow.
    pub fn degree(&self, p: &Path) -> i64 {
        let h = &self.energy;
        (0..p.prefix.len())
            .map(|k| {
                let (pk, pk1) = (self.entry(&p.prefix, k), self.entry(&p.prefix, k + 1));
                let (bk, bk1) = (self.ground.b(k), self.ground.b(k + 1));
                (k as i64 + 1) * (h.h(pk1, pk) - h.h(bk1, bk))
            })
            .sum()
    }

    /// Classical part plus `-(degree / d_0) δ`.
    pub fn affine_weight(&self, p: &Path) -> AffineWeight {
        AffineWeight {
            lambda: self.classical_weight(p),
            delta: Rational64::new(-self.degree(p), self.g.datum.d0()),
        }
    }

    /// Walks `ẽ_i` greedily, lowest index first, until no operator applies.
    pub fn raise_to_top(&self, p: &Path) -> Path {
        let mut cur = p.clone();
        'up: loop {
            for i in 0..self.g.index_count() {
                if let Some(q) = self.e(&cur, i) {
                    cur = q;
                    continue 'up;
                }
            }
            return cur;
        }
    }

    /// All paths of degree at most `max_degree`, in discovery order. Every
    /// edge is checked: the classical weight drops by `α_i` and the degree
    /// rises by one exactly on 0-arrows.
    pub fn paths(&self, max_degree: i64, order: Traversal) -> Result<Vec<Path>> {
        let start = self.ground_path();
        let mut seen: HashSet<Path> = HashSet::from([start.clone()]);
        let mut frontier = VecDeque::from([(start.clone(), 0i64, self.classical_weight(&start))]);
        let mut out = vec![start];
        let d = &self.g.datum;
        while let Some((p, deg, w)) = match order {
            Traversal::BreadthFirst => frontier.pop_front(),
            Traversal::DepthFirst => frontier.pop_back(),
        } {
            for i in 0..self.g.index_count() {
                let Some(q) = self.f(&p, i) else { continue };
                let qdeg = self.degree(&q);
                let qw = self.classical_weight(&q);
                let want_deg = deg + i64::from(i == 0);
                let drop_ok = (0..w.len()).all(|j| w[j] - qw[j] == d.a(j, i));
                if qdeg != want_deg || !drop_ok {
                    return Err(CrystalError::Internal(format!(
                        "f_{i} edge {:?} -> {:?}: degree {deg} -> {qdeg}, weight {w:?} -> {qw:?}",
                        p.prefix, q.prefix
                    )));
                }
                if qdeg > max_degree || !seen.insert(q.clone()) {
                    continue;
                }
                out.push(q.clone());
                frontier.push_back((q, qdeg, qw));
            }
        }
        Ok(out)
    }

    pub fn multiplicities(&self, max_degree: i64, order: Traversal) -> Result<Multiplicities> {
        let mut m = Multiplicities::new();
        for p in self.paths(max_degree, order)? {
            *m.entry((self.classical_weight(&p), self.degree(&p))).or_default() += 1;
        }
        Ok(m)
    }

    pub fn character(&self, max_degree: i64) -> Result<Vec<CharacterEntry>> {
        Ok(character_entries(&self.multiplicities(max_degree, Traversal::BreadthFirst)?))
    }
}

/// Truncated character of `L(λ)` up to the given degree.
pub fn character(g: &CrystalGraph, lambda: &AffineWeight, max_degree: i64) -> Result<Vec<CharacterEntry>> {
    PathModel::new(g.clone(), lambda)?.character(max_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::crystal_for;
    use crate::roots::RootVector;

    fn model(s: &str, i: usize) -> PathModel {
        let g = crystal_for(s.parse().unwrap()).unwrap();
        let lam = AffineWeight::fundamental(&g.datum, i);
        PathModel::new(g, &lam).unwrap()
    }

    #[test]
    fn ground_states_are_constant_at_level_one() {
        let m = model("A2-1", 0);
        assert_eq!(m.ground.entries, vec![m.g.empty()]);
        assert_eq!(m.ground.period(), 1);
        let m = model("A2-1", 1);
        assert_eq!(m.ground.b(7), m.g.y(1));
        let m = model("D4-3", 0);
        assert_eq!(m.ground.b(3), m.g.empty());
    }

    #[test]
    fn rejects_non_level_one() {
        let g = crystal_for("C2-1".parse().unwrap()).unwrap();
        let w = AffineWeight::classical(vec![1, 1, 0]);
        assert!(GroundState::new(&g, &w).is_err());
    }

    #[test]
    fn a1_first_steps() {
        let m = model("A1-1", 0);
        let top = m.ground_path();
        for i in 0..2 {
            assert!(m.e(&top, i).is_none());
        }
        assert_eq!(m.stats(&top, 0), (0, 1));
        let p = m.f(&top, 0).unwrap();
        assert_eq!(p.prefix, vec![m.g.theta() as u32]);
        let w = m.affine_weight(&p);
        let theta = RootVector::from_integers(&[1]).to_lambda(&m.g.datum);
        let want: Vec<i64> = (0..2).map(|j| i64::from(j == 0) + theta[j]).collect();
        assert_eq!(w.lambda, want);
        assert_eq!(w.delta, Rational64::from(-1));
        assert_eq!(m.e(&p, 0), Some(top));
    }

    #[test]
    fn a1_prefix_x_alpha() {
        let m = model("A1-1", 0);
        let p = Path { prefix: vec![m.g.theta() as u32] };
        assert_eq!(m.degree(&p), 1);
    }

    #[test]
    fn a1_principal_multiplicities() {
        let m = model("A1-1", 0);
        let mult = m.multiplicities(5, Traversal::BreadthFirst).unwrap();
        let got: Vec<u64> = (1..=5).map(|n| mult.get(&(vec![1, 0], n)).copied().unwrap_or(0)).collect();
        assert_eq!(got, vec![1, 2, 3, 5, 7]);
        assert_eq!(mult[&(vec![1, 0], 0)], 1);
    }

    #[test]
    fn traversal_orders_agree() {
        for (s, i) in [("A2-1", 1), ("C2-1", 0), ("A4-2", 0), ("D4-3", 0)] {
            let m = model(s, i);
            let a = m.multiplicities(3, Traversal::BreadthFirst).unwrap();
            let b = m.multiplicities(3, Traversal::DepthFirst).unwrap();
            assert_eq!(a, b, "{s}");
        }
    }

    #[test]
    fn lattice_oracle_small() {
        for (s, deg) in [("A1-1", 5), ("A2-1", 3)] {
            let m = model(s, 0);
            let paths = m.multiplicities(deg, Traversal::BreadthFirst).unwrap();
            let oracle = crate::oracle::oracle_character(&m.g.datum, deg).unwrap();
            assert!(crate::oracle::compare(&paths, &oracle).is_empty(), "{s}");
        }
    }

    #[test]
    fn path_crystal_axioms() {
        for (s, i) in [("A2-1", 0), ("B3-1", 1), ("G2-1", 0), ("A5-2", 0)] {
            let m = model(s, i);
            for p in m.paths(2, Traversal::BreadthFirst).unwrap() {
                let w = m.classical_weight(&p);
                for k in 0..m.g.index_count() {
                    let (e, f) = m.stats(&p, k);
                    assert_eq!(f as i64 - e as i64, w[k], "{s}");
                    if let Some(q) = m.f(&p, k) {
                        assert_eq!(m.e(&q, k).as_ref(), Some(&p));
                    }
                    if let Some(q) = m.e(&p, k) {
                        assert_eq!(m.f(&q, k).as_ref(), Some(&p));
                    }
                }
                assert_eq!(m.raise_to_top(&p), m.ground_path());
            }
        }
    }
}
