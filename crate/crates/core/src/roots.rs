//! The finite root system of the attached algebra, the weight set of B(θ),
//! the dominance order and Dynkin-diagram walks.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::affine::AffineDatum;
use crate::error::{CrystalError, Result};

/// A vector in the span of the finite simple roots `alpha_1..alpha_n`.
///
/// Coefficients are stored doubled so the half-integers needed for
/// A_{2n}^(2) stay exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector {
    doubled: Vec<i64>,
}

impl RootVector {
    pub fn zero(n: usize) -> Self {
        RootVector { doubled: vec![0; n] }
    }

    /// `alpha_i` for `i` in `1..=n`.
    pub fn simple(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "simple root index {i} out of 1..={n}");
        let mut v = Self::zero(n);
        v.doubled[i - 1] = 2;
        v
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        RootVector {
            doubled: coeffs.iter().map(|c| 2 * c).collect(),
        }
    }

    pub fn from_doubled(doubled: Vec<i64>) -> Self {
        RootVector { doubled }
    }

    pub fn doubled(&self) -> &[i64] {
        &self.doubled
    }

    pub fn rank(&self) -> usize {
        self.doubled.len()
    }

    /// Twice the coefficient of `alpha_i` (1-based).
    pub fn doubled_coeff(&self, i: usize) -> i64 {
        self.doubled[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.doubled.iter().all(|&c| c == 0)
    }

    pub fn is_nonneg(&self) -> bool {
        self.doubled.iter().all(|&c| c >= 0)
    }

    pub fn is_integral(&self) -> bool {
        self.doubled.iter().all(|&c| c % 2 == 0)
    }

    /// Twice the height.
    pub fn doubled_height(&self) -> i64 {
        self.doubled.iter().sum()
    }

    /// Indices `k` (1-based) with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.doubled.len()).filter(|&k| self.doubled[k] != 0).map(|k| k + 1).collect()
    }

    /// `(numerator, denominator)` per coordinate, denominator 1 or 2.
    pub fn fractions(&self) -> Vec<(i64, i64)> {
        self.doubled
            .iter()
            .map(|&c| if c % 2 == 0 { (c / 2, 1) } else { (c, 2) })
            .collect()
    }

    /// `<h_i, self>` for any affine index `i`, from the Cartan matrix.
    pub fn pairing(&self, d: &AffineDatum, i: usize) -> i64 {
        let twice: i64 = (1..=self.rank()).map(|j| d.a(i, j) * self.doubled[j - 1]).sum();
        debug_assert!(twice % 2 == 0, "half-integral pairing");
        twice / 2
    }

    /// Λ-coordinates `(<h_0, self>, ..., <h_n, self>)`.
    pub fn to_lambda(&self, d: &AffineDatum) -> Vec<i64> {
        (0..d.index_count()).map(|i| self.pairing(d, i)).collect()
    }

    pub fn scaled(&self, k: i64) -> Self {
        RootVector {
            doubled: self.doubled.iter().map(|c| c * k).collect(),
        }
    }
}

impl Add for &RootVector {
    type Output = RootVector;
    fn add(self, o: &RootVector) -> RootVector {
        RootVector {
            doubled: self.doubled.iter().zip(&o.doubled).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RootVector {
    type Output = RootVector;
    fn sub(self, o: &RootVector) -> RootVector {
        RootVector {
            doubled: self.doubled.iter().zip(&o.doubled).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RootVector {
    type Output = RootVector;
    fn neg(self) -> RootVector {
        self.scaled(-1)
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, (num, den)) in self.fractions().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            if den == 1 {
                write!(f, "{num}")?;
            } else {
                write!(f, "{num}/{den}")?;
            }
        }
        write!(f, "]")
    }
}

impl Serialize for RootVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.fractions().serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Short,
    Long,
}

/// `(beta, beta)` under the form with `(alpha_i, alpha_j) = s_i a_ij`,
/// on doubled coordinates (so the value is four times the true one).
fn quad_norm(d: &AffineDatum, v: &RootVector) -> i64 {
    let n = v.rank();
    let mut total = 0;
    for i in 1..=n {
        for j in 1..=n {
            total += v.doubled[i - 1] * v.doubled[j - 1] * d.symmetrizers[i] * d.a(i, j);
        }
    }
    total
}

/// `(beta, beta)` in units where `(alpha_i, alpha_i) = 2 s_i`, times 4.
pub fn doubled_norm(d: &AffineDatum, v: &RootVector) -> i64 {
    quad_norm(d, v)
}

/// The root system of the finite algebra on nodes `1..=n`, positive roots
/// first in generation order, then negatives.
pub fn finite_roots(d: &AffineDatum) -> Vec<(RootVector, LengthClass)> {
    let n = d.rank();
    let mut positive: Vec<Vec<i64>> = (1..=n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i - 1] = 1;
            v
        })
        .collect();
    let mut seen: HashSet<Vec<i64>> = positive.iter().cloned().collect();
    let mut k = 0;
    while k < positive.len() {
        let beta = positive[k].clone();
        for j in 1..=n {
            // p: how far the j-string extends downward from beta
            let mut p = 0;
            let mut down = beta.clone();
            loop {
                down[j - 1] -= 1;
                if seen.contains(&down) {
                    p += 1;
                } else {
                    break;
                }
            }
            let pair: i64 = (1..=n).map(|m| d.a(j, m) * beta[m - 1]).sum();
            let q = p - pair;
            if q > 0 {
                let mut up = beta.clone();
                up[j - 1] += 1;
                if seen.insert(up.clone()) {
                    positive.push(up);
                }
            }
        }
        k += 1;
    }
    let roots: Vec<RootVector> = positive.iter().map(|c| RootVector::from_integers(c)).collect();
    let norms: Vec<i64> = roots.iter().map(|r| quad_norm(d, r)).collect();
    let max = norms.iter().copied().max().unwrap_or(0);
    let tagged: Vec<(RootVector, LengthClass)> = roots
        .into_iter()
        .zip(norms)
        .map(|(r, nr)| (r, if nr == max { LengthClass::Long } else { LengthClass::Short }))
        .collect();
    let mut out = tagged.clone();
    out.extend(tagged.into_iter().map(|(r, c)| (-&r, c)));
    out
}

/// `Λ⁺`, the distinguished weight `θ` and the indices carrying a `y_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaSet {
    /// Sorted by height descending, then coordinates descending; `θ` first.
    pub positive: Vec<RootVector>,
    pub has_y: BTreeSet<usize>,
    pub theta: RootVector,
}

impl LambdaSet {
    pub fn contains(&self, v: &RootVector) -> bool {
        if v.is_nonneg() {
            self.positive.contains(v)
        } else {
            self.positive.contains(&-v)
        }
    }

    /// `Λ ∪ {0}` membership.
    pub fn contains_or_zero(&self, v: &RootVector) -> bool {
        v.is_zero() || self.contains(v)
    }
}

/// `θ = sum d_i alpha_i`, halved for A_{2n}^(2).
pub fn theta(d: &AffineDatum) -> RootVector {
    if d.ty.is_a2n_twisted() {
        RootVector::from_doubled(d.marks[1..].to_vec())
    } else {
        RootVector::from_integers(&d.marks[1..])
    }
}

pub fn lambda_weights(d: &AffineDatum) -> LambdaSet {
    let n = d.rank();
    let mut positive: Vec<RootVector> = if d.ty.is_a2n_twisted() {
        (1..=n)
            .map(|i| {
                let mut doubled = vec![0; n];
                for c in doubled.iter_mut().take(n - 1).skip(i - 1) {
                    *c = 2;
                }
                doubled[n - 1] = 1;
                RootVector::from_doubled(doubled)
            })
            .collect()
    } else {
        let roots = finite_roots(d);
        roots
            .into_iter()
            .filter(|(r, c)| r.is_nonneg() && (d.ty.is_untwisted() || *c == LengthClass::Short))
            .map(|(r, _)| r)
            .collect()
    };
    positive.sort_by(|a, b| b.doubled_height().cmp(&a.doubled_height()).then_with(|| b.cmp(a)));
    let has_y = (1..=n).filter(|&i| positive.contains(&RootVector::simple(n, i))).collect();
    LambdaSet {
        theta: theta(d),
        positive,
        has_y,
    }
}

/// `alpha <= beta` iff `beta - alpha` is a nonnegative combination.
pub fn leq(alpha: &RootVector, beta: &RootVector) -> bool {
    (beta - alpha).is_nonneg()
}

/// BFS predecessor map over the finite diagram (nodes `1..=n`) from `start`.
fn bfs_parents(d: &AffineDatum, start: &[usize]) -> Vec<Option<usize>> {
    let n = d.rank();
    let mut parent: Vec<Option<usize>> = vec![None; n + 1];
    let mut seen = vec![false; n + 1];
    let mut queue = VecDeque::new();
    for &s in start {
        seen[s] = true;
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        for v in d.neighbors(u).filter(|&v| v != 0) {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    parent
}

/// The unique path `i = i_1, ..., i_t = j` in the finite Dynkin diagram.
pub fn dynkin_path(d: &AffineDatum, i: usize, j: usize) -> Result<Vec<usize>> {
    let n = d.rank();
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(CrystalError::InvalidArgument(format!(
            "dynkin_path({i}, {j}): indices must lie in 1..={n}"
        )));
    }
    let parent = bfs_parents(d, &[i]);
    let mut path = vec![j];
    let mut cur = j;
    while cur != i {
        cur = parent[cur].ok_or_else(|| {
            CrystalError::Internal(format!("nodes {i} and {j} are not connected"))
        })?;
        path.push(cur);
    }
    path.reverse();
    Ok(path)
}

/// The nodes leading from `supp(gamma)` to `i`, excluding the support and
/// ending at `i`.
pub fn connect_support(d: &AffineDatum, gamma: &RootVector, i: usize) -> Result<Vec<usize>> {
    let support = gamma.support();
    if support.is_empty() || support.contains(&i) {
        return Err(CrystalError::InvalidArgument(format!(
            "connect_support: {gamma} must be nonzero with no alpha_{i} component"
        )));
    }
    let parent = bfs_parents(d, &support);
    let mut path = vec![i];
    let mut cur = i;
    loop {
        let p = parent[cur]
            .ok_or_else(|| CrystalError::Internal(format!("node {i} unreachable from {gamma}")))?;
        if support.contains(&p) {
            break;
        }
        path.push(p);
        cur = p;
    }
    path.reverse();
    Ok(path)
}

/// Sum of the simple roots indexed by `nodes`.
pub fn sum_of_simple(n: usize, nodes: &[usize]) -> RootVector {
    nodes
        .iter()
        .fold(RootVector::zero(n), |acc, &k| &acc + &RootVector::simple(n, k))
}
