//! Independent multiplicities for the basic representation of a
//! simply-laced untwisted algebra, from the lattice construction: the
//! multiplicity of `Λ_0 + β - nδ` is the coefficient of `q^{n - (β,β)/2}` in
//! `∏_{k≥1} (1 - q^k)^{-rank}`.

use num_rational::Rational64;

use crate::affine::{AffineDatum, Family};
use crate::error::{CrystalError, Result};
use crate::path::Multiplicities;
use crate::perfect::root_coordinates;

/// Coefficients of `∏_{k≥1} (1 - q^k)^{-colours}` up to `q^max`.
pub fn partition_series(colours: usize, max: usize) -> Vec<u64> {
    let mut c = vec![0u64; max + 1];
    c[0] = 1;
    for _ in 0..colours {
        for k in 1..=max {
            for m in k..=max {
                c[m] += c[m - k];
            }
        }
    }
    c
}

fn check_supported(d: &AffineDatum) -> Result<()> {
    let simply_laced = matches!(d.ty.family, Family::A | Family::D | Family::E);
    if d.ty.is_untwisted() && simply_laced {
        Ok(())
    } else {
        Err(CrystalError::Unsupported(format!(
            "the lattice oracle needs a simply-laced untwisted type, got {}",
            d.ty
        )))
    }
}

/// `(β, β)/2` for `β` in simple-root coordinates.
fn half_norm(d: &AffineDatum, beta: &[i64]) -> i64 {
    let n = d.rank();
    let mut s = 0;
    for i in 1..=n {
        for j in 1..=n {
            s += beta[i - 1] * d.a(i, j) * beta[j - 1];
        }
    }
    debug_assert_eq!(s % 2, 0);
    s / 2
}

/// Multiplicity of `Λ_0 + β - nδ` in `L(Λ_0)`.
pub fn oracle_multiplicity(d: &AffineDatum, beta: &[i64], n: i64) -> Result<u64> {
    check_supported(d)?;
    if beta.len() != d.rank() {
        return Err(CrystalError::InvalidArgument(format!(
            "beta has {} coordinates, expected {}",
            beta.len(),
            d.rank()
        )));
    }
    let rest = n - half_norm(d, beta);
    if rest < 0 {
        return Ok(0);
    }
    Ok(partition_series(d.rank(), rest as usize)[rest as usize])
}

/// Inverse of the finite Cartan matrix, over the rationals.
fn finite_cartan_inverse(d: &AffineDatum) -> Vec<Vec<Rational64>> {
    let n = d.rank();
    (1..=n)
        .map(|i| {
            let mut w = vec![0; n + 1];
            w[i] = 1;
            root_coordinates(d, &w)
        })
        .collect()
}

/// Every weight `Λ_0 + β - nδ` with `n ≤ max_degree` and nonzero
/// multiplicity, keyed like the path-model multiplicities.
pub fn oracle_character(d: &AffineDatum, max_degree: i64) -> Result<Multiplicities> {
    check_supported(d)?;
    let n = d.rank();
    let inv = finite_cartan_inverse(d);
    // |β_i| = |(β, ω_i)| ≤ |β| |ω_i| with |ω_i|² = (A⁻¹)_ii
    let bounds: Vec<i64> = (0..n)
        .map(|i| {
            let r = (2 * max_degree) as f64 * (*inv[i][i].numer() as f64 / *inv[i][i].denom() as f64);
            r.sqrt().floor() as i64
        })
        .collect();
    let series = partition_series(n, max_degree.max(0) as usize);
    let mut out = Multiplicities::new();
    let mut beta: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        let norm = half_norm(d, &beta);
        if norm <= max_degree {
            let mut lambda = vec![0; n + 1];
            lambda[0] = 1;
            for i in 0..=n {
                for j in 1..=n {
                    lambda[i] += d.a(i, j) * beta[j - 1];
                }
            }
            for deg in norm..=max_degree {
                out.insert((lambda.clone(), deg), series[(deg - norm) as usize]);
            }
        }
        // odometer over the box
        let mut k = 0;
        loop {
            if k == n {
                return Ok(out);
            }
            if beta[k] < bounds[k] {
                beta[k] += 1;
                break;
            }
            beta[k] = -bounds[k];
            k += 1;
        }
    }
}

/// Differences between path-model and oracle multiplicities, as
/// `(weight, degree, path count, oracle count)`.
pub fn compare(paths: &Multiplicities, oracle: &Multiplicities) -> Vec<(Vec<i64>, i64, u64, u64)> {
    let mut keys: Vec<&(Vec<i64>, i64)> = paths.keys().chain(oracle.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter_map(|k| {
            let (a, b) = (paths.get(k).copied().unwrap_or(0), oracle.get(k).copied().unwrap_or(0));
            (a != b).then(|| (k.0.clone(), k.1, a, b))
        })
        .collect()
}

/// `β` in simple-root coordinates for a classical weight `Λ_0 + β`.
pub fn beta_of(d: &AffineDatum, weight: &[i64]) -> Option<Vec<i64>> {
    let mu = root_coordinates(d, weight);
    mu.iter().map(|r| r.is_integer().then(|| r.to_integer())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::build_datum;

    fn datum(s: &str) -> AffineDatum {
        build_datum(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn series_values() {
        assert_eq!(partition_series(1, 6), vec![1, 1, 2, 3, 5, 7, 11]);
        assert_eq!(partition_series(2, 3), vec![1, 2, 5, 10]);
    }

    #[test]
    fn worked_values() {
        let d = datum("A1-1");
        assert_eq!(oracle_multiplicity(&d, &[0], 4).unwrap(), 5);
        assert_eq!(oracle_multiplicity(&d, &[1], 1).unwrap(), 1);
        assert_eq!(oracle_multiplicity(&d, &[2], 3).unwrap(), 0);
    }

    #[test]
    fn unsupported_types() {
        for s in ["B3-1", "G2-1", "A4-2", "D4-3"] {
            assert!(matches!(oracle_multiplicity(&datum(s), &[0; 2], 1), Err(CrystalError::Unsupported(_))));
        }
    }

    #[test]
    fn character_counts() {
        let d = datum("A2-1");
        let ch = oracle_character(&d, 1).unwrap();
        // Λ_0 at degree 1 has multiplicity 2; six roots at degree 1
        assert_eq!(ch[&(vec![1, 0, 0], 1)], 2);
        assert_eq!(ch.iter().filter(|(k, _)| k.1 == 1).count(), 7);
        for (w, _) in ch.keys() {
            let beta = beta_of(&d, w).unwrap();
            assert_eq!(w[0] + w[1] + w[2], 1);
            assert!(half_norm(&d, &beta) <= 1);
        }
    }
}
