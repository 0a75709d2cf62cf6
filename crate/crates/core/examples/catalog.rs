//! Catalog records and their blow-ups.

use fourman::cli::ManifoldRecord;
use fourman::topology::{blow_up, surface_catalog, SurfaceFamily};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 2..=4 {
        for (p, q) in [(1, 1), (2, 3)] {
            let e = surface_catalog(&SurfaceFamily::Elliptic { n, p, q })?;
            let x = &e.manifold;
            println!(
                "E({n})_({p},{q}): b+ = {}, b- = {}, odd = {}, χ = {}, σ = {}, c = {}",
                x.b2plus, x.b2minus, x.odd_form, x.chi(), x.sigma(), x.c()
            );
        }
    }
    let gt = surface_catalog(&SurfaceFamily::GeneralType { chi: 12, sigma: -8, k2: 0, even: false });
    println!("χ = 12, σ = −8, K² = 0: {:?}", gt.err());
    let gt = surface_catalog(&SurfaceFamily::GeneralType { chi: 9, sigma: -15, k2: -27, even: false });
    println!("χ = 9, σ = −15, K² = −27: {:?}", gt.err());
    let gt = surface_catalog(&SurfaceFamily::GeneralType { chi: 46, sigma: -30, k2: 2, even: false })?;
    println!("general type b+ = {}, b- = {}", gt.manifold.b2plus, gt.manifold.b2minus);

    let k3 = surface_catalog(&SurfaceFamily::Elliptic { n: 2, p: 1, q: 1 })?;
    let b = blow_up(&k3)?;
    println!("K3#CP2bar: c = {}, classes {}", b.manifold.c(), b.generators.len());
    let rec = ManifoldRecord::from_entry(&b, None);
    println!("{}", serde_json::to_string_pretty(&rec)?.lines().take(8).collect::<Vec<_>>().join("\n"));
    Ok(())
}
