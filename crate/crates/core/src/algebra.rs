//! The isomorphism Ψ from B(θ) onto the classical component of `x_θ ⊗ y_i`
//! and the crystal-algebra multiplication it induces.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::affine::{Family, Series};
use crate::crystal::{CrystalElement, CrystalGraph};
use crate::error::{CrystalError, Result};
use crate::roots::{connect_support, dynkin_path, sum_of_simple, RootVector};
use crate::tensor::{components, tensor_e, tensor_f, TensorSquare};

/// Ψ as a table over the indices of B(θ) (every element but the empty one).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Psi {
    pub i: usize,
    pub images: Vec<(usize, usize)>,
    inverse: HashMap<(usize, usize), usize>,
}

impl Psi {
    fn from_images(i: usize, images: Vec<(usize, usize)>) -> Self {
        let inverse = images.iter().enumerate().map(|(b, &p)| (p, b)).collect();
        Psi { i, images, inverse }
    }

    pub fn image(&self, b: usize) -> (usize, usize) {
        self.images[b]
    }

    pub fn preimage(&self, left: usize, right: usize) -> Option<usize> {
        self.inverse.get(&(left, right)).copied()
    }

    /// A copy with the images of `a` and `b` exchanged, for negative controls.
    pub fn with_swapped(&self, a: usize, b: usize) -> Psi {
        let mut images = self.images.clone();
        images.swap(a, b);
        Psi::from_images(self.i, images)
    }
}

/// Nodes `i` adjacent to node 0 with `alpha_i` in Λ⁺.
pub fn valid_psi_indices(g: &CrystalGraph) -> Vec<usize> {
    g.datum
        .neighbors(0)
        .filter(|&i| i != 0 && g.lambda.has_y.contains(&i))
        .collect()
}

struct Builder<'a> {
    g: &'a CrystalGraph,
    n: usize,
    i: usize,
    /// Use `x_{alpha_1+..+alpha_j} (x) x_{-alpha_1-..-alpha_j}` for `y_j` in type C,
    /// as usually printed; it is off by one and fails the morphism check.
    c_printed_y: bool,
}

impl Builder<'_> {
    fn elem(&self, v: &RootVector) -> Result<usize> {
        if v.is_zero() {
            return Ok(self.g.y(self.i));
        }
        self.g.try_x(v).ok_or_else(|| {
            CrystalError::Internal(format!("Psi_{} needs x{v}, which is not in B for {}", self.i, self.g.datum.ty))
        })
    }

    fn pair(&self, left: &RootVector, right: &RootVector) -> Result<(usize, usize)> {
        Ok((self.elem(left)?, self.elem(right)?))
    }

    /// `alpha_a + ... + alpha_b`, empty when `a > b`.
    fn run(&self, a: usize, b: usize) -> RootVector {
        sum_of_simple(self.n, &(a..=b).collect::<Vec<_>>())
    }

    fn dual(&self, (l, r): (usize, usize)) -> (usize, usize) {
        let d = |b: usize| {
            self.g
                .index_of(&self.g.element(b).dual())
                .expect("Λ is closed under negation")
        };
        (d(r), d(l))
    }

    /// Completes a table given on `Λ⁺` and the `y_j` by the negative rule.
    fn finish(&self, positive: HashMap<usize, (usize, usize)>) -> Result<Psi> {
        let g = self.g;
        let mut images = vec![(usize::MAX, usize::MAX); g.empty()];
        for (b, img) in &positive {
            images[*b] = *img;
        }
        for (b, el) in g.elements.iter().enumerate() {
            if let CrystalElement::X(a) = el {
                if !a.is_nonneg() {
                    let pos = g.x(&-a);
                    images[b] = self.dual(positive[&pos]);
                }
            }
        }
        if let Some(b) = images.iter().position(|p| p.0 == usize::MAX) {
            return Err(CrystalError::Internal(format!("Psi_{} undefined on {}", self.i, g.label(b))));
        }
        Ok(Psi::from_images(self.i, images))
    }

    fn general(&self) -> Result<Psi> {
        let g = self.g;
        let (n, i) = (self.n, self.i);
        let theta = &g.lambda.theta;
        let ai = RootVector::simple(n, i);
        let mut table = HashMap::new();
        for gamma in &g.lambda.positive {
            let b = g.x(gamma);
            let img = match gamma.doubled_coeff(i) / 2 {
                2 => (g.theta(), g.y(i)),
                1 => self.pair(theta, &-&(theta - gamma))?,
                0 => {
                    let path = connect_support(&g.datum, gamma, i)?;
                    let alpha = sum_of_simple(n, &path);
                    let beta = &(theta - gamma) - &alpha;
                    self.pair(&(theta - &alpha), &-&beta)?
                }
                c => {
                    return Err(CrystalError::Internal(format!(
                        "coefficient {c} of alpha_{i} in {gamma} exceeds 2"
                    )))
                }
            };
            table.insert(b, img);
        }
        for &j in &g.lambda.has_y {
            let s = if j == i { ai.clone() } else { sum_of_simple(n, &dynkin_path(&g.datum, i, j)?) };
            table.insert(g.y(j), self.pair(&(theta - &s), &-&(theta - &s))?);
        }
        self.finish(table)
    }

    fn type_a(&self) -> Result<Psi> {
        let (n, i) = (self.n, self.i);
        let mut table = HashMap::new();
        for j in 1..=n {
            for k in j..=n {
                let root = self.run(j, k);
                let img = if i == 1 {
                    self.pair(&self.run(1, k), &-&self.run(1, j - 1))?
                } else {
                    self.pair(&self.run(j, n), &-&self.run(k + 1, n))?
                };
                table.insert(self.g.x(&root), img);
            }
            let s = if i == 1 { self.run(1, j - 1) } else { self.run(j + 1, n) };
            table.insert(self.g.y(j), self.pair(&s, &-&s)?);
        }
        self.finish(table)
    }

    fn type_c(&self) -> Result<Psi> {
        let n = self.n;
        let mut table = HashMap::new();
        // alpha_j + ... + alpha_{k-1} + 2alpha_k + ... + 2alpha_{n-1} + alpha_n
        let long = |j: usize, k: usize| &self.run(j, n) + &self.run(k, n - 1);
        for j in 1..=n {
            for k in j..=n {
                let img = self.pair(&self.run(1, k), &-&self.run(1, j - 1))?;
                table.insert(self.g.x(&self.run(j, k)), img);
                if k < n {
                    let img = self.pair(&long(1, k), &-&self.run(1, j - 1))?;
                    table.insert(self.g.x(&long(j, k)), img);
                }
            }
            let s = if self.c_printed_y && j > 1 { self.run(1, j) } else { self.run(1, j - 1) };
            table.insert(self.g.y(j), self.pair(&s, &-&s)?);
        }
        self.finish(table)
    }
}

/// Ψ from the closed-form case tables.
pub fn build_psi(g: &CrystalGraph, i: usize) -> Result<Psi> {
    let valid = valid_psi_indices(g);
    if !valid.contains(&i) {
        return Err(CrystalError::InvalidArgument(format!(
            "Psi_{i} is not defined for {}; valid choices: {valid:?}",
            g.datum.ty
        )));
    }
    let b = Builder {
        g,
        n: g.datum.rank(),
        i,
        c_printed_y: false,
    };
    match g.datum.ty.series()? {
        Series::Untwisted(Family::A, _) => b.type_a(),
        Series::Untwisted(Family::C, _) => b.type_c(),
        _ => b.general(),
    }
}

/// Ψ obtained by transporting `x_θ ↦ x_θ ⊗ y_i` along classical arrows.
pub fn psi_by_traversal(g: &CrystalGraph, i: usize) -> Result<Psi> {
    let valid = valid_psi_indices(g);
    if !valid.contains(&i) {
        return Err(CrystalError::InvalidArgument(format!(
            "Psi_{i} is not defined for {}; valid choices: {valid:?}",
            g.datum.ty
        )));
    }
    let a = &g.arrows;
    let mut images = vec![None; g.empty()];
    images[g.theta()] = Some((g.theta(), g.y(i)));
    let mut queue = VecDeque::from([g.theta()]);
    while let Some(b) = queue.pop_front() {
        let (l, r) = images[b].expect("queued elements have images");
        for k in 1..g.index_count() {
            let steps = [(g.f(b, k), tensor_f(a, l, r, k)), (g.e(b, k), tensor_e(a, l, r, k))];
            for (src, img) in steps {
                match (src, img) {
                    (Some(c), Some(p)) => match images[c] {
                        None => {
                            images[c] = Some(p);
                            queue.push_back(c);
                        }
                        Some(q) if q != p => {
                            return Err(CrystalError::Internal(format!(
                                "transport reaches {} with two images",
                                g.label(c)
                            )))
                        }
                        _ => {}
                    },
                    (None, None) => {}
                    _ => {
                        return Err(CrystalError::Internal(format!(
                            "operator {k} defined on only one side at {}",
                            g.label(b)
                        )))
                    }
                }
            }
        }
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(b, p)| p.ok_or_else(|| CrystalError::Internal(format!("{} not reached", g.label(b)))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Psi::from_images(i, images))
}

/// Morphism check; `Err` carries a witness.
pub fn verify_psi(g: &CrystalGraph, psi: &Psi) -> std::result::Result<(), String> {
    let a = &g.arrows;
    let sq = TensorSquare::of(g);
    let name = |(l, r): (usize, usize)| format!("{} (x) {}", g.label(l), g.label(r));
    let mut seen = HashMap::new();
    for b in 0..g.empty() {
        let (l, r) = psi.image(b);
        if let Some(prev) = seen.insert((l, r), b) {
            return Err(format!("not injective: {} and {} both map to {}", g.label(prev), g.label(b), name((l, r))));
        }
        let wt: Vec<i64> = g.weight(l).iter().zip(g.weight(r)).map(|(x, y)| x + y).collect();
        if wt != g.weight(b) {
            return Err(format!("weight of {} not preserved", g.label(b)));
        }
        for k in 1..g.index_count() {
            let t = sq.pair(l, r);
            if (g.epsilon(b, k), g.phi(b, k)) != (sq.arrows.epsilon(t, k), sq.arrows.phi(t, k)) {
                return Err(format!("string lengths differ at ({}, {k})", g.label(b)));
            }
            let lhs = g.f(b, k).map(|c| psi.image(c));
            let rhs = tensor_f(a, l, r, k);
            if lhs != rhs {
                return Err(format!(
                    "f_{k} does not commute at {}: Psi(f b) = {:?}, f Psi(b) = {:?}",
                    g.label(b),
                    lhs.map(name),
                    rhs.map(name)
                ));
            }
            let lhs = g.e(b, k).map(|c| psi.image(c));
            if lhs != tensor_e(a, l, r, k) {
                return Err(format!("e_{k} does not commute at {}", g.label(b)));
            }
        }
    }
    let comps = components(&sq.arrows, true);
    let target = comps.component_of(sq.pair(g.theta(), g.y(psi.i)));
    let mut image: Vec<usize> = psi.images.iter().map(|&(l, r)| sq.pair(l, r)).collect();
    image.sort_unstable();
    if image != target {
        return Err(format!(
            "image has {} elements, component of x_theta (x) y_{} has {}",
            image.len(),
            psi.i,
            target.len()
        ));
    }
    Ok(())
}

/// `m(b1, b2)`: the Ψ-preimage, or `None` off the component.
pub fn multiply(psi: &Psi, left: usize, right: usize) -> Option<usize> {
    psi.preimage(left, right)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicationTable {
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    /// `cells[r][c]` is the product label, `None` for zero.
    pub cells: Vec<Vec<Option<String>>>,
}

pub fn multiplication_table(g: &CrystalGraph, psi: &Psi, rows: &[usize], cols: &[usize]) -> MultiplicationTable {
    MultiplicationTable {
        rows: rows.iter().map(|&b| g.label(b)).collect(),
        columns: cols.iter().map(|&b| g.label(b)).collect(),
        cells: rows
            .iter()
            .map(|&l| cols.iter().map(|&r| multiply(psi, l, r).map(|b| g.label(b))).collect())
            .collect(),
    }
}

/// Every product on B(θ) ⊗ B(θ): rows and columns in element order.
pub fn full_multiplication_table(g: &CrystalGraph, psi: &Psi) -> MultiplicationTable {
    let all: Vec<usize> = (0..g.empty()).collect();
    multiplication_table(g, psi, &all, &all)
}
