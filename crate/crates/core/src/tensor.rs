//! Tensor products of crystals: the signature rule, the materialized square
//! B ⊗ B, maximal vectors and connected components.

use std::collections::VecDeque;

use serde::Serialize;

use crate::crystal::{ArrowTable, CrystalGraph};
use crate::error::Result;

/// Outcome of the signature rule on a word of factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub epsilon: usize,
    pub phi: usize,
    /// Factor `f` acts on: the one holding the leftmost unmatched `+`.
    pub f_slot: Option<usize>,
    /// Factor `e` acts on: the one holding the rightmost unmatched `-`.
    pub e_slot: Option<usize>,
}

/// Signature rule for factors listed left to right as `(ε_i, φ_i)`.
///
/// Each factor contributes `-^ε +^φ`; adjacent `+ -` pairs cancel.
pub fn signature(stats: impl IntoIterator<Item = (usize, usize)>) -> Signature {
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut minus = 0;
    let mut e_slot = None;
    for (k, (eps, phi)) in stats.into_iter().enumerate() {
        let mut m = eps;
        while m > 0 {
            match pending.last_mut() {
                Some(top) => {
                    let take = top.1.min(m);
                    top.1 -= take;
                    m -= take;
                    if top.1 == 0 {
                        pending.pop();
                    }
                }
                None => break,
            }
        }
        if m > 0 {
            minus += m;
            e_slot = Some(k);
        }
        if phi > 0 {
            pending.push((k, phi));
        }
    }
    Signature {
        epsilon: minus,
        phi: pending.iter().map(|p| p.1).sum(),
        f_slot: pending.first().map(|p| p.0),
        e_slot,
    }
}

/// Does `f_i` act on the left factor of `b1 ⊗ b2`?
#[inline]
pub fn f_acts_left(phi_left: usize, eps_right: usize) -> bool {
    phi_left > eps_right
}

/// Does `e_i` act on the left factor of `b1 ⊗ b2`?
#[inline]
pub fn e_acts_left(phi_left: usize, eps_right: usize) -> bool {
    phi_left >= eps_right
}

pub fn tensor_f(a: &ArrowTable, left: usize, right: usize, i: usize) -> Option<(usize, usize)> {
    if f_acts_left(a.phi(left, i), a.epsilon(right, i)) {
        a.f(left, i).map(|l| (l, right))
    } else {
        a.f(right, i).map(|r| (left, r))
    }
}

pub fn tensor_e(a: &ArrowTable, left: usize, right: usize, i: usize) -> Option<(usize, usize)> {
    if e_acts_left(a.phi(left, i), a.epsilon(right, i)) {
        a.e(left, i).map(|l| (l, right))
    } else {
        a.e(right, i).map(|r| (left, r))
    }
}

/// `(ε_i, φ_i)` of `left ⊗ right` from the factor statistics.
pub fn tensor_stats(a: &ArrowTable, left: usize, right: usize, i: usize) -> (usize, usize) {
    let (e1, p1) = (a.epsilon(left, i), a.phi(left, i));
    let (e2, p2) = (a.epsilon(right, i), a.phi(right, i));
    (e1 + e2.saturating_sub(p1), p2 + p1.saturating_sub(e2))
}

/// `B ⊗ B` materialized; pair `(l, r)` lives at index `l * base + r`.
#[derive(Debug, Clone)]
pub struct TensorSquare {
    pub base: usize,
    pub arrows: ArrowTable,
}

impl TensorSquare {
    pub fn new(a: &ArrowTable) -> Result<Self> {
        let n = a.len();
        let arrows = ArrowTable::from_f(n * n, a.index_count(), |t, i| {
            tensor_f(a, t / n, t % n, i).map(|(l, r)| l * n + r)
        })?;
        Ok(TensorSquare { base: n, arrows })
    }

    pub fn of(g: &CrystalGraph) -> Self {
        Self::new(&g.arrows).expect("tensor square of a valid crystal")
    }

    #[inline]
    pub fn pair(&self, left: usize, right: usize) -> usize {
        left * self.base + right
    }

    #[inline]
    pub fn split(&self, t: usize) -> (usize, usize) {
        (t / self.base, t % self.base)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn label(&self, g: &CrystalGraph, t: usize) -> String {
        let (l, r) = self.split(t);
        format!("{} (x) {}", g.label(l), g.label(r))
    }
}

/// Elements killed by every `e_i` with `i` not in `omit`.
pub fn maximal_vectors(a: &ArrowTable, omit: &[usize]) -> Vec<usize> {
    (0..a.len())
        .filter(|&t| (0..a.index_count()).filter(|i| !omit.contains(i)).all(|i| a.e(t, i).is_none()))
        .collect()
}

/// Connected components of the underlying undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Components {
    /// Component id per element; ids follow the smallest member.
    pub of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn component_of(&self, t: usize) -> &[usize] {
        &self.members[self.of[t]]
    }
}

/// BFS components using every colour, or every colour but 0.
pub fn components(a: &ArrowTable, omit_zero: bool) -> Components {
    let first = usize::from(omit_zero);
    let mut of = vec![usize::MAX; a.len()];
    let mut members = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..a.len() {
        if of[start] != usize::MAX {
            continue;
        }
        let id = members.len();
        let mut comp = vec![start];
        of[start] = id;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for i in first..a.index_count() {
                for v in [a.f(u, i), a.e(u, i)].into_iter().flatten() {
                    if of[v] == usize::MAX {
                        of[v] = id;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
        }
        comp.sort_unstable();
        members.push(comp);
    }
    Components { of, members }
}
