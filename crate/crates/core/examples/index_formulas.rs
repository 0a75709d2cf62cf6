//! Characteristic numbers, spin^u constraints and index formulas on K3.

use fourman::lattice::LatticeVector;
use fourman::topology::{
    asd_indices, level_shift, reduction_indices, surface_catalog, sw_dimension, validate_spinu,
    SpinCStructure, SpinUStructure, SurfaceFamily,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k3 = surface_catalog(&SurfaceFamily::Elliptic { n: 2, p: 1, q: 1 })?.manifold;
    let n = k3.numbers();
    println!("K3: χ = {}, σ = {}, c = {}", n.chi, n.sigma, n.c);

    let zero = LatticeVector::zero(22);
    // Λ = e − 3f in the first hyperbolic block
    let mut lambda = zero.clone();
    lambda.0[16] = 1;
    lambda.0[17] = -3;

    // c₁ − w must be characteristic, i.e. even on K3
    let t = SpinUStructure::new(lambda.clone(), -6, lambda.clone());
    println!("violations: {:?}", validate_spinu(&t, &k3)?);
    println!("asd indices: {:?}", asd_indices(&t, &k3)?);
    println!("after level shift 1: {:?}", asd_indices(&level_shift(&t, 1), &k3)?);

    let s = SpinCStructure::new(zero.clone());
    println!("d_s = {}", sw_dimension(&s, &k3)?);
    let r = reduction_indices(&t, &s, &k3)?;
    println!("n′ = {}, n″ = {}, n = {}", r.ns_prime, r.ns_double_prime, r.ns);

    let bad = SpinUStructure::new(lambda, -5, zero);
    // both congruences fail here
    let v: Vec<String> = validate_spinu(&bad, &k3)?.iter().map(|v| v.to_string()).collect();
    println!("p1 = −5: {v:?}");
    Ok(())
}
