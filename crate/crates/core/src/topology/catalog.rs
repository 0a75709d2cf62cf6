//! Three generator families: elliptic surfaces `E(n)_{p,q}`, minimal
//! surfaces of general type given by `(χ, σ, K²)`, and blow-ups of either.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{FourManifold, SWDatum, TopologyError};
use crate::lattice::{
    build_standard_lattice, three_squares, LatticeVector, StandardFormDescriptor,
};

/// Label attached to blown-up basic classes whose value is copied from the
/// parent rather than derived.
pub const BLOWUP_CONVENTION: &str = "external-blowup-formula";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum SurfaceFamily {
    Elliptic { n: u32, p: u32, q: u32 },
    GeneralType { chi: i64, sigma: i64, k2: i64, even: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub manifold: FourManifold,
    pub generators: Vec<SWDatum>,
}

pub fn surface_catalog(family: &SurfaceFamily) -> Result<CatalogEntry, TopologyError> {
    match *family {
        SurfaceFamily::Elliptic { n, p, q } => elliptic(n, p, q),
        SurfaceFamily::GeneralType {
            chi,
            sigma,
            k2,
            even,
        } => general_type(chi, sigma, k2, even),
    }
}

/// `E(n)_{p,q}`: `b₂⁺ = 2n−1`, `b₂⁻ = 10n−1`. The form is even exactly when
/// `n` is even and both multiplicities are odd. Basic classes are multiples
/// of the primitive isotropic class `f_{pq}`; only that direction is stored.
fn elliptic(n: u32, p: u32, q: u32) -> Result<CatalogEntry, TopologyError> {
    if n < 2 || p == 0 || q == 0 || p.gcd(&q) != 1 {
        return Err(TopologyError::Constraint(format!(
            "E(n)_(p,q) needs n ≥ 2 and coprime p, q ≥ 1; got n={n}, p={p}, q={q}"
        )));
    }
    let even = n.is_multiple_of(2) && p % 2 == 1 && q % 2 == 1;
    let (bp, bm) = (2 * n - 1, 10 * n - 1);
    let (descriptor, f) = if even {
        let d = StandardFormDescriptor::Even {
            e8_count: -(n as i64),
            h_count: (2 * n - 1) as usize,
        };
        // isotropic vector of the first H block
        let f = LatticeVector::unit(d.rank(), 8 * n as usize);
        (d, f)
    } else {
        let d = StandardFormDescriptor::Odd {
            n_plus: bp as usize,
            n_minus: bm as usize,
        };
        // (3^n, 1^(n-1) | 1^(10n-1)): primitive, isotropic, characteristic
        let mut coeffs = vec![1i64; d.rank()];
        coeffs[..n as usize].fill(3);
        (d, LatticeVector(coeffs))
    };
    let name = if p == 1 && q == 1 {
        format!("E({n})")
    } else {
        format!("E({n})_{{{p},{q}}}")
    };
    let manifold = FourManifold::new(name, 0, bp, bm, !even, even, true)?
        .with_gram(build_standard_lattice(&descriptor))?;
    Ok(CatalogEntry {
        manifold,
        generators: vec![SWDatum::direction(f)],
    })
}

/// Simply connected minimal surface of general type with `K² = 2χ + 3σ`;
/// basic classes `±K`, values left unset.
fn general_type(chi: i64, sigma: i64, k2: i64, even: bool) -> Result<CatalogEntry, TopologyError> {
    if k2 != 2 * chi + 3 * sigma {
        return Err(TopologyError::Constraint(format!(
            "K² = {k2} differs from 2χ + 3σ = {}",
            2 * chi + 3 * sigma
        )));
    }
    if (chi + sigma).rem_euclid(4) != 0 || chi + sigma < 4 {
        return Err(TopologyError::Constraint(format!(
            "χ + σ = {} is not a positive multiple of 4",
            chi + sigma
        )));
    }
    if chi - sigma < 2 {
        return Err(TopologyError::Constraint(format!(
            "χ − σ = {} gives negative b2-",
            chi - sigma
        )));
    }
    let bp = (chi + sigma) / 2 - 1;
    let bm = (chi - sigma) / 2 - 1;
    if bp > 2 * bm {
        return Err(TopologyError::Constraint(format!(
            "b2+ = {bp} ≥ 2·b2- + 1 = {}: strict Bogomolov–Miyaoka–Yau fails",
            2 * bm + 1
        )));
    }
    let (bp_u, bm_u) = (bp as u32, bm as u32);
    let (descriptor, k) = if even {
        if sigma.rem_euclid(16) != 0 {
            return Err(TopologyError::Constraint(format!(
                "even simply connected form with σ = {sigma} ≢ 0 mod 16"
            )));
        }
        let e8 = sigma / 8;
        let h = ((bp + bm) - sigma.abs()) / 2;
        if h < 1 {
            return Err(TopologyError::Constraint("definite even form".into()));
        }
        let d = StandardFormDescriptor::Even {
            e8_count: e8,
            h_count: h as usize,
        };
        // K = 2(e + (K²/8) f) in the first H block
        let mut coeffs = vec![0i64; d.rank()];
        let off = 8 * e8.unsigned_abs() as usize;
        coeffs[off] = 2;
        coeffs[off + 1] = k2 / 4;
        (d, LatticeVector(coeffs))
    } else {
        let d = StandardFormDescriptor::Odd {
            n_plus: bp as usize,
            n_minus: bm as usize,
        };
        (d, odd_canonical(bp as usize, bm as usize, k2)?)
    };
    let manifold = FourManifold::new(
        format!("general-type(χ={chi},σ={sigma})"),
        0,
        bp_u,
        bm_u,
        !even,
        even,
        true,
    )?
    .with_gram(build_standard_lattice(&descriptor))?;
    Ok(CatalogEntry {
        manifold,
        generators: vec![SWDatum::direction(k.clone()), SWDatum::direction(k.scaled(-1))],
    })
}

/// Characteristic vector of square `k2` in `diag(1^p, (−1)^q)`: the all-ones
/// vector with positive coordinates raised to `2t+1`, each raise adding
/// `8·t(t+1)/2`. Three triangular numbers always suffice.
fn odd_canonical(p: usize, q: usize, k2: i64) -> Result<LatticeVector, TopologyError> {
    let delta = k2 - (p as i64 - q as i64);
    if delta < 0 || delta % 8 != 0 {
        return Err(TopologyError::Constraint(format!(
            "K² − σ = {delta} is not a non-negative multiple of 8"
        )));
    }
    let m = (delta / 8) as u64;
    let (x, y, z) = three_squares(8 * m + 3).expect("8m+3 is a sum of three squares");
    let bumps: Vec<i64> = [x, y, z]
        .iter()
        .map(|&a| a as i64)
        .filter(|&a| a > 1)
        .collect();
    if bumps.len() > p {
        return Err(TopologyError::Constraint(format!(
            "cannot realize K² = {k2} with b2+ = {p}"
        )));
    }
    let mut coeffs = vec![1i64; p + q];
    coeffs[..bumps.len()].copy_from_slice(&bumps);
    Ok(LatticeVector(coeffs))
}

/// `X # CP²‾`: the form gains `⟨−1⟩`, every basic class `K` becomes
/// `K ± e`, and the exceptional sphere is added to the spherical classes.
pub fn blow_up(parent: &CatalogEntry) -> Result<CatalogEntry, TopologyError> {
    let x = &parent.manifold;
    let mut child = FourManifold::new(
        format!("{}#CP2bar", x.name),
        x.b1,
        x.b2plus,
        x.b2minus + 1,
        true,
        false,
        x.simply_connected,
    )?;
    if let Some(q) = x.gram() {
        child = child.with_gram(q.extended_by(-1))?;
    }
    let b2 = x.b2() as usize;
    let mut pairings: Vec<Vec<i64>> = x
        .spherical_pairings()
        .unwrap_or(&[])
        .iter()
        .map(|p| {
            let mut p = p.clone();
            p.push(0);
            p
        })
        .collect();
    pairings.push(LatticeVector::unit(b2 + 1, b2).0);
    child = child
        .with_spherical_pairings(pairings)?
        .with_blowup_parent(x.clone());
    let generators = parent
        .generators
        .iter()
        .flat_map(|d| {
            [1, -1].map(|s| SWDatum {
                basic_class: d.basic_class.extended(s),
                sw_value: d.sw_value,
                convention: Some(BLOWUP_CONVENTION.to_string()),
            })
        })
        .collect();
    Ok(CatalogEntry {
        manifold: child,
        generators,
    })
}
