//! Bounded search for a hyperbolic pair orthogonal to a class.

use fourman::lattice::{
    build_standard_lattice, isotropic_vectors, search_hyperbolic_pair_with, LatticeVector,
    SearchOptions, StandardFormDescriptor,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = build_standard_lattice(&StandardFormDescriptor::Odd { n_plus: 2, n_minus: 3 });
    let kappa = LatticeVector(vec![1, 1, 1, 1, 1]);
    for parallel in [false, true] {
        let cert = search_hyperbolic_pair_with(&l, &kappa, 2, SearchOptions { parallel })?;
        println!("parallel={parallel}: {cert:?}");
    }
    let iso = isotropic_vectors(&l, &kappa, 1, SearchOptions::default())?;
    println!("{} nonzero isotropic vectors in κ^⊥ with max-norm ≤ 1", iso.len());
    for v in iso.iter().take(5) {
        println!("  {v}");
    }
    Ok(())
}
