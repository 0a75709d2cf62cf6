//! Abundance verdicts: lemma-level decisions, a search fallback and the
//! `Λ_j` classes built from a certificate.

use fourman::lattice::{
    abundance_decide, build_standard_lattice, construct_lambda, lemma_verdict_hyperbolic_orthogonal,
    IntegerLattice, LatticeVector, StandardFormDescriptor,
};
use fourman::topology::{surface_catalog, FourManifold, SurfaceFamily};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k3 = surface_catalog(&SurfaceFamily::Elliptic { n: 2, p: 1, q: 1 })?;
    let f = &k3.generators[0].basic_class;
    let v = abundance_decide(&k3.manifold, f, None)?;
    println!("K3, K = f: {:?} via {:?}", v.status, v.lemma);

    let odd = build_standard_lattice(&StandardFormDescriptor::Odd { n_plus: 5, n_minus: 3 });
    let kappa = LatticeVector(vec![1; 8]);
    let v = lemma_verdict_hyperbolic_orthogonal(&odd, &kappa)?;
    println!("5⟨1⟩ ⊕ 3⟨−1⟩, κ = (1,…,1): {:?} via {:?}", v.status, v.lemma);

    // b⁺ = 4 falls outside every lemma, so the search decides.
    let l = IntegerLattice::diagonal(&[1, 1, 1, 1, -1, -1, -1, -1])?;
    let x = FourManifold::new("X", 1, 4, 4, true, false, false)?.with_gram(l.clone())?;
    let k = LatticeVector(vec![1; 8]);
    let v = abundance_decide(&x, &k, Some(2))?;
    println!("4⟨1⟩ ⊕ 4⟨−1⟩ at bound 2: {:?}", v.status);
    if let Some(cert) = &v.certificate {
        println!("  e = {}, f = {}", cert.e, cert.f);
        for j in 1..=3 {
            let lambda = construct_lambda(&l, cert, j, x.chi(), x.sigma())?;
            println!("  Λ_{j} = {lambda}, Λ² = {}", l.square(&lambda));
        }
    }
    Ok(())
}
