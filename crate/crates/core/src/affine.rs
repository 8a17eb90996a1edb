//! Affine Cartan data: the fourteen affine families, their Cartan matrices,
//! marks, comarks, symmetrizers and the attached finite algebra.
//!
//! Node 0 is always the affine node. Labels follow the Kac tables, so for
//! example node 0 of E6^(1) hangs off node 6 and node 6 hangs off node 3.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{CrystalError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// Which of the affine series a valid [`AffineType`] belongs to.
///
/// The payload is the finite rank `n` (number of non-affine nodes).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Series {
    Untwisted(Family, usize),
    /// A_{2n}^(2)
    A2nTwisted(usize),
    /// A_{2n-1}^(2)
    A2nMinus1Twisted(usize),
    /// D_{n+1}^(2)
    DTwisted(usize),
    E6Twisted,
    D4Triality,
}

/// An affine type `X_N^(r)`, written `XN-r` on the command line and in JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct AffineType {
    pub family: Family,
    /// The subscript `N` of `X_N^(r)` as written in the type name.
    pub rank_param: usize,
    pub twist: u8,
}

impl AffineType {
    /// Validates the triple against the affine classification.
    pub fn new(family: Family, rank_param: usize, twist: u8) -> Result<Self> {
        let ty = AffineType {
            family,
            rank_param,
            twist,
        };
        ty.series()?;
        Ok(ty)
    }

    pub fn series(&self) -> Result<Series> {
        use Family::*;
        let n = self.rank_param;
        let series = match (self.twist, self.family) {
            (1, A) if n >= 1 => Series::Untwisted(A, n),
            (1, B) if n >= 3 => Series::Untwisted(B, n),
            (1, C) if n >= 2 => Series::Untwisted(C, n),
            (1, D) if n >= 4 => Series::Untwisted(D, n),
            (1, E) if (6..=8).contains(&n) => Series::Untwisted(E, n),
            (1, F) if n == 4 => Series::Untwisted(F, 4),
            (1, G) if n == 2 => Series::Untwisted(G, 2),
            (2, A) if n >= 2 && n % 2 == 0 => Series::A2nTwisted(n / 2),
            (2, A) if n >= 5 && n % 2 == 1 => Series::A2nMinus1Twisted((n + 1) / 2),
            (2, D) if n >= 3 => Series::DTwisted(n - 1),
            (2, E) if n == 6 => Series::E6Twisted,
            (3, D) if n == 4 => Series::D4Triality,
            _ => {
                return Err(CrystalError::InvalidType(format!(
                    "no affine algebra {}_{}^({}) (family {}, rank {}, twist {})",
                    self.family.letter(),
                    n,
                    self.twist,
                    self.family.letter(),
                    n,
                    self.twist
                )))
            }
        };
        Ok(series)
    }

    /// Number of non-affine nodes; the index set is `0..=finite_rank()`.
    pub fn finite_rank(&self) -> usize {
        match self.series().expect("validated on construction") {
            Series::Untwisted(_, n)
            | Series::A2nTwisted(n)
            | Series::A2nMinus1Twisted(n)
            | Series::DTwisted(n) => n,
            Series::E6Twisted => 4,
            Series::D4Triality => 2,
        }
    }

    pub fn is_untwisted(&self) -> bool {
        self.twist == 1
    }

    pub fn is_a2n_twisted(&self) -> bool {
        matches!(self.series(), Ok(Series::A2nTwisted(_)))
    }

    /// Every valid type whose finite rank is at most `max_rank`, in a fixed
    /// order (untwisted families first), plus the exceptional types when
    /// `with_exceptional` is set regardless of rank.
    pub fn sweep(max_rank: usize, with_exceptional: bool) -> Vec<AffineType> {
        use Family::*;
        let mut out = Vec::new();
        let mut push = |f, n, r| {
            if let Ok(t) = AffineType::new(f, n, r) {
                let exceptional = matches!(f, E | F | G) || r == 3;
                let wanted = if exceptional {
                    with_exceptional
                } else {
                    t.finite_rank() <= max_rank
                };
                if wanted && !out.contains(&t) {
                    out.push(t);
                }
            }
        };
        for n in 1..=max_rank {
            push(A, n, 1);
        }
        for n in 3..=max_rank {
            push(B, n, 1);
        }
        for n in 2..=max_rank {
            push(C, n, 1);
        }
        for n in 4..=max_rank {
            push(D, n, 1);
        }
        for n in 6..=8 {
            push(E, n, 1);
        }
        push(F, 4, 1);
        push(G, 2, 1);
        for n in 1..=max_rank {
            push(A, 2 * n, 2);
        }
        for n in 3..=max_rank {
            push(A, 2 * n - 1, 2);
        }
        for n in 2..=max_rank {
            push(D, n + 1, 2);
        }
        push(E, 6, 2);
        push(D, 4, 3);
        out
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}-{}", self.family.letter(), self.rank_param, self.twist)
    }
}

impl FromStr for AffineType {
    type Err = CrystalError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || CrystalError::InvalidType(format!("cannot parse type name {s:?}; expected e.g. A2-1, D4-3"));
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars.next().and_then(Family::from_letter).ok_or_else(bad)?;
        let rest: &str = chars.as_str();
        let (rank, twist) = rest.split_once('-').ok_or_else(bad)?;
        let rank: usize = rank.parse().map_err(|_| bad())?;
        let twist: u8 = twist.parse().map_err(|_| bad())?;
        AffineType::new(family, rank, twist)
    }
}

impl From<AffineType> for String {
    fn from(t: AffineType) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for AffineType {
    type Error = CrystalError;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// The finite simple algebra attached to an affine type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteType {
    pub family: Family,
    pub rank: usize,
    /// `F4^t`: the F4 Cartan matrix transposed relative to F4^(1).
    pub transposed: bool,
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)?;
        if self.transposed {
            write!(f, "^t")?;
        }
        Ok(())
    }
}

/// Cartan matrix `a[i][j] = <h_i, alpha_j>` with the derived invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineDatum {
    #[serde(rename = "type")]
    pub ty: AffineType,
    pub cartan: Vec<Vec<i64>>,
    /// Null-root coefficients `d_i`.
    pub marks: Vec<i64>,
    /// Canonical central element coefficients `c_i`.
    pub comarks: Vec<i64>,
    pub symmetrizers: Vec<i64>,
    pub finite_type: FiniteType,
}

fn chain(size: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0; size]; size];
    for i in 0..size {
        a[i][i] = 2;
        if i + 1 < size {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    a
}

fn with_edges(size: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0; size]; size];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j) in edges {
        a[i][j] = -1;
        a[j][i] = -1;
    }
    a
}

fn cartan_for(series: Series) -> Vec<Vec<i64>> {
    use Family::*;
    match series {
        Series::Untwisted(A, 1) => vec![vec![2, -2], vec![-2, 2]],
        Series::Untwisted(A, n) => {
            let mut a = chain(n + 1);
            a[0][n] = -1;
            a[n][0] = -1;
            a
        }
        Series::Untwisted(B, n) => {
            let mut edges = vec![(0, 2), (1, 2)];
            edges.extend((2..n).map(|k| (k, k + 1)));
            let mut a = with_edges(n + 1, &edges);
            // alpha_n short
            a[n][n - 1] = -2;
            a
        }
        Series::Untwisted(C, n) => {
            let mut a = chain(n + 1);
            a[1][0] = -2;
            a[n - 1][n] = -2;
            a
        }
        Series::Untwisted(D, n) => {
            let mut edges = vec![(0, 2), (1, 2)];
            edges.extend((2..n - 2).map(|k| (k, k + 1)));
            edges.push((n - 2, n - 1));
            edges.push((n - 2, n));
            with_edges(n + 1, &edges)
        }
        Series::Untwisted(E, 6) => with_edges(7, &[(1, 2), (2, 3), (3, 4), (4, 5), (3, 6), (6, 0)]),
        Series::Untwisted(E, 7) => {
            with_edges(8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7)])
        }
        Series::Untwisted(E, 8) => with_edges(
            9,
            &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 0), (3, 8)],
        ),
        Series::Untwisted(F, 4) => {
            let mut a = chain(5);
            // alpha_3, alpha_4 short
            a[3][2] = -2;
            a
        }
        Series::Untwisted(G, 2) => {
            let mut a = chain(3);
            // alpha_2 short
            a[2][1] = -3;
            a
        }
        Series::Untwisted(..) => unreachable!("validated by AffineType::series"),
        Series::A2nTwisted(1) => vec![vec![2, -4], vec![-1, 2]],
        Series::A2nTwisted(n) => {
            let mut a = chain(n + 1);
            a[0][1] = -2;
            a[n - 1][n] = -2;
            a
        }
        Series::A2nMinus1Twisted(n) => {
            let mut edges = vec![(0, 2), (1, 2)];
            edges.extend((2..n).map(|k| (k, k + 1)));
            let mut a = with_edges(n + 1, &edges);
            // alpha_n long
            a[n - 1][n] = -2;
            a
        }
        Series::DTwisted(n) => {
            let mut a = chain(n + 1);
            a[0][1] = -2;
            a[n][n - 1] = -2;
            a
        }
        Series::E6Twisted => {
            let mut a = chain(5);
            a[2][3] = -2;
            a
        }
        Series::D4Triality => {
            let mut a = chain(3);
            a[1][2] = -3;
            a
        }
    }
}

fn finite_type_for(series: Series) -> FiniteType {
    let (family, rank, transposed) = match series {
        Series::Untwisted(f, n) => (f, n, false),
        Series::A2nTwisted(n) | Series::A2nMinus1Twisted(n) => (Family::C, n, false),
        Series::DTwisted(n) => (Family::B, n, false),
        Series::E6Twisted => (Family::F, 4, true),
        Series::D4Triality => (Family::G, 2, false),
    };
    FiniteType {
        family,
        rank,
        transposed,
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Primitive positive integer vector spanning the kernel of `m`, found by
/// fixing coordinate 0 to 1 and solving the remaining (invertible) block.
fn primitive_kernel(m: &[Vec<i64>]) -> Vec<i64> {
    let size = m.len();
    let k = size - 1;
    // rows 1.., unknowns x_1..x_n, rhs = -m[r][0]
    let mut rows: Vec<Vec<Rational64>> = (1..size)
        .map(|r| {
            let mut row: Vec<Rational64> = (1..size).map(|c| Rational64::from(m[r][c])).collect();
            row.push(Rational64::from(-m[r][0]));
            row
        })
        .collect();
    for col in 0..k {
        let pivot = (col..k)
            .find(|&r| rows[r][col] != Rational64::from(0))
            .expect("finite Cartan block is invertible");
        rows.swap(col, pivot);
        let p = rows[col][col];
        for v in rows[col].iter_mut() {
            *v /= p;
        }
        for r in 0..k {
            if r != col && rows[r][col] != Rational64::from(0) {
                let factor = rows[r][col];
                let pivot_row = rows[col].clone();
                for (v, pv) in rows[r].iter_mut().zip(pivot_row) {
                    *v -= factor * pv;
                }
            }
        }
    }
    let mut x = vec![Rational64::from(1)];
    x.extend(rows.iter().map(|r| r[k]));
    let lcm = x.iter().fold(1i64, |acc, v| acc / gcd(acc, *v.denom()) * *v.denom());
    let ints: Vec<i64> = x.iter().map(|v| (*v * lcm).to_integer()).collect();
    let g = ints.iter().fold(0, |acc, &v| gcd(acc, v));
    ints.iter().map(|v| v / g).collect()
}

fn transpose(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..m.len()).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

/// Positive integers `s_i` with `s_i a_ij = s_j a_ji`.
fn symmetrizers_of(a: &[Vec<i64>]) -> Vec<i64> {
    let size = a.len();
    let mut s: Vec<Option<Rational64>> = vec![None; size];
    s[0] = Some(Rational64::from(1));
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..size {
            if i != j && a[i][j] != 0 && s[j].is_none() {
                let si = s[i].unwrap();
                s[j] = Some(si * Rational64::from(a[i][j]) / Rational64::from(a[j][i]));
                stack.push(j);
            }
        }
    }
    let s: Vec<Rational64> = s.into_iter().map(|v| v.expect("connected diagram")).collect();
    let lcm = s.iter().fold(1i64, |acc, v| acc / gcd(acc, *v.denom()) * *v.denom());
    let ints: Vec<i64> = s.iter().map(|v| (*v * lcm).to_integer()).collect();
    let g = ints.iter().fold(0, |acc, &v| gcd(acc, v));
    ints.iter().map(|v| v / g).collect()
}

/// Builds the Cartan datum of `ty`.
pub fn build_datum(ty: AffineType) -> Result<AffineDatum> {
    let series = ty.series()?;
    let cartan = cartan_for(series);
    let marks = primitive_kernel(&cartan);
    let comarks = primitive_kernel(&transpose(&cartan));
    let symmetrizers = symmetrizers_of(&cartan);
    let datum = AffineDatum {
        ty,
        cartan,
        marks,
        comarks,
        symmetrizers,
        finite_type: finite_type_for(series),
    };
    datum.check_invariants()?;
    Ok(datum)
}

impl AffineDatum {
    /// Finite rank `n`; indices run over `0..=n`.
    pub fn rank(&self) -> usize {
        self.cartan.len() - 1
    }

    /// Number of indices `n + 1`.
    pub fn index_count(&self) -> usize {
        self.cartan.len()
    }

    pub fn d0(&self) -> i64 {
        self.marks[0]
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    /// Nodes `j != i` joined to `i` in the Dynkin diagram.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.index_count()).filter(move |&j| j != i && self.cartan[i][j] != 0)
    }

    /// Checks every structural invariant of the datum.
    pub fn check_invariants(&self) -> Result<()> {
        let size = self.index_count();
        let fail = |msg: String| Err(CrystalError::Internal(format!("{}: {msg}", self.ty)));
        for i in 0..size {
            if self.cartan[i][i] != 2 {
                return fail(format!("a[{i}][{i}] != 2"));
            }
            for j in 0..size {
                if i != j {
                    if self.cartan[i][j] > 0 {
                        return fail(format!("a[{i}][{j}] > 0"));
                    }
                    if (self.cartan[i][j] == 0) != (self.cartan[j][i] == 0) {
                        return fail(format!("zero pattern of a[{i}][{j}] not symmetric"));
                    }
                    if self.symmetrizers[i] * self.cartan[i][j] != self.symmetrizers[j] * self.cartan[j][i] {
                        return fail("diag(s) A not symmetric".into());
                    }
                }
            }
            let ad: i64 = (0..size).map(|j| self.cartan[i][j] * self.marks[j]).sum();
            if ad != 0 {
                return fail(format!("row {i} of A.d = {ad}"));
            }
            let ca: i64 = (0..size).map(|j| self.comarks[j] * self.cartan[j][i]).sum();
            if ca != 0 {
                return fail(format!("column {i} of c.A = {ca}"));
            }
        }
        if self.comarks[0] != 1 {
            return fail("c_0 != 1".into());
        }
        let expected_d0 = if self.ty.is_a2n_twisted() { 2 } else { 1 };
        if self.marks[0] != expected_d0 {
            return fail(format!("d_0 = {}, expected {expected_d0}", self.marks[0]));
        }
        if self.marks.iter().chain(&self.comarks).chain(&self.symmetrizers).any(|&v| v <= 0) {
            return fail("non-positive mark, comark or symmetrizer".into());
        }
        Ok(())
    }
}

/// A weight `sum_i lambda_i Lambda_i + delta * δ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeight {
    pub lambda: Vec<i64>,
    pub delta: Rational64,
}

impl AffineWeight {
    pub fn classical(lambda: Vec<i64>) -> Self {
        AffineWeight {
            lambda,
            delta: Rational64::from(0),
        }
    }

    pub fn fundamental(d: &AffineDatum, i: usize) -> Self {
        let mut lambda = vec![0; d.index_count()];
        lambda[i] = 1;
        AffineWeight::classical(lambda)
    }

    pub fn is_classical(&self) -> bool {
        self.delta == Rational64::from(0)
    }

    /// `L<i>` for a fundamental weight, otherwise the coordinate list.
    pub fn short_name(&self) -> String {
        let nonzero: Vec<usize> = (0..self.lambda.len()).filter(|&i| self.lambda[i] != 0).collect();
        if self.is_classical() && nonzero.len() == 1 && self.lambda[nonzero[0]] == 1 {
            format!("L{}", nonzero[0])
        } else {
            format!("{:?}", self.lambda)
        }
    }

    /// Parses the `L<i>` grammar used by the command line.
    pub fn parse_fundamental(d: &AffineDatum, s: &str) -> Result<Self> {
        let idx = s
            .strip_prefix('L')
            .or_else(|| s.strip_prefix('l'))
            .and_then(|r| r.parse::<usize>().ok())
            .ok_or_else(|| CrystalError::InvalidArgument(format!("weight {s:?}: expected L<i>")))?;
        if idx > d.rank() {
            return Err(CrystalError::InvalidArgument(format!(
                "weight {s:?}: index out of range 0..={} for {}",
                d.rank(),
                d.ty
            )));
        }
        Ok(AffineWeight::fundamental(d, idx))
    }
}

/// `<c, w>`: the level of a weight.
pub fn level(w: &AffineWeight, d: &AffineDatum) -> i64 {
    w.lambda.iter().zip(&d.comarks).map(|(l, c)| l * c).sum()
}

/// The level-one dominant weights `{Lambda_i : c_i = 1}` in index order.
pub fn level_one_dominants(d: &AffineDatum) -> Vec<AffineWeight> {
    (0..d.index_count())
        .filter(|&i| d.comarks[i] == 1)
        .map(|i| AffineWeight::fundamental(d, i))
        .collect()
}
