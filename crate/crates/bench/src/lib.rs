//! Shared inputs for the criterion benchmarks.

use kempf_core::reduction::PolySystem;
use kempf_core::Polynomial;

/// A small solvable system in `x_2, x_3`.
pub fn solvable_system() -> PolySystem {
    system(3, &["x_2*x_3 - 1", "x_2 - x_3"])
}

/// `x_2 = 0` and `x_2 = 1` together.
pub fn inconsistent_system() -> PolySystem {
    system(2, &["x_2", "x_2 - 1"])
}

pub fn system(r: usize, polys: &[&str]) -> PolySystem {
    let polys: Vec<Polynomial> = polys.iter().map(|s| s.parse().expect("valid polynomial")).collect();
    PolySystem::new(r, polys).expect("valid system")
}
