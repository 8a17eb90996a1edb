//! Workloads shared by the benchmarks.

use perfect_crystal::{crystal_for, AffineType, CrystalGraph, PathModel};

pub fn crystal(name: &str) -> CrystalGraph {
    let ty: AffineType = name.parse().expect("valid type name");
    crystal_for(ty).expect("supported type")
}

/// Path model of the basic representation `L(Λ_0)`.
pub fn basic_model(name: &str) -> PathModel {
    let g = crystal(name);
    let lam = perfect_crystal::AffineWeight::fundamental(&g.datum, 0);
    PathModel::new(g, &lam).expect("level-one weight")
}
