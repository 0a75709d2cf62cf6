//! Characteristic-number bookkeeping for closed oriented four-manifolds,
//! spin^c / spin^u records, and the closed-form index and dimension counts
//! built from them.
//!
//! Classes in `H²` are coefficient vectors in the basis of the manifold's
//! Gram form. The mod-2 class `w₂(𝔱)` is carried by an integral lift.

mod catalog;

pub use catalog::{blow_up, surface_catalog, CatalogEntry, SurfaceFamily, BLOWUP_CONVENTION};

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{IntegerLattice, LatticeError, LatticeVector};
use crate::rational::ratio;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("parity error: {0}")]
    Parity(String),
    #[error("inconsistent record: {0}")]
    Inconsistent(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("no intersection form attached to {0}")]
    MissingGram(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `(χ, σ, c(X), b₂)` with `c(X) = −(7χ + 11σ)/4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacteristicNumbers {
    pub chi: i64,
    pub sigma: i64,
    pub c: i64,
    pub b2: i64,
}

pub fn characteristic_numbers(
    b1: u32,
    b2plus: u32,
    b2minus: u32,
) -> Result<CharacteristicNumbers, TopologyError> {
    let (b1, bp, bm) = (b1 as i64, b2plus as i64, b2minus as i64);
    let chi = 2 - 2 * b1 + bp + bm;
    let sigma = bp - bm;
    let num = 7 * chi + 11 * sigma;
    if num.rem_euclid(4) != 0 {
        return Err(TopologyError::Parity(format!(
            "7χ + 11σ = {num} is not divisible by 4"
        )));
    }
    Ok(CharacteristicNumbers {
        chi,
        sigma,
        c: -num / 4,
        b2: bp + bm,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourManifold {
    pub name: String,
    pub b1: u32,
    pub b2plus: u32,
    pub b2minus: u32,
    pub odd_form: bool,
    pub spin: bool,
    pub simply_connected: bool,
    gram: Option<IntegerLattice>,
    spherical_pairings: Option<Vec<Vec<i64>>>,
    blowup_parent: Option<Box<FourManifold>>,
}

impl FourManifold {
    pub fn new(
        name: impl Into<String>,
        b1: u32,
        b2plus: u32,
        b2minus: u32,
        odd_form: bool,
        spin: bool,
        simply_connected: bool,
    ) -> Result<Self, TopologyError> {
        characteristic_numbers(b1, b2plus, b2minus)?;
        if simply_connected && b1 != 0 {
            return Err(TopologyError::Inconsistent(
                "simply connected but b1 ≠ 0".into(),
            ));
        }
        if spin && simply_connected && odd_form {
            return Err(TopologyError::Inconsistent(
                "simply connected spin manifold with odd form".into(),
            ));
        }
        Ok(FourManifold {
            name: name.into(),
            b1,
            b2plus,
            b2minus,
            odd_form,
            spin,
            simply_connected,
            gram: None,
            spherical_pairings: None,
            blowup_parent: None,
        })
    }

    /// Attaches `Q_X`; rank, signature and parity must match the Betti data.
    pub fn with_gram(mut self, gram: IntegerLattice) -> Result<Self, TopologyError> {
        let sig = gram.signature();
        if gram.rank() != (self.b2plus + self.b2minus) as usize
            || sig.positive != self.b2plus as usize
            || sig.negative != self.b2minus as usize
        {
            return Err(TopologyError::Inconsistent(format!(
                "gram has signature ({}, {}, {}), record says b2± = ({}, {})",
                sig.positive, sig.negative, sig.nullity, self.b2plus, self.b2minus
            )));
        }
        if gram.is_even() == self.odd_form {
            return Err(TopologyError::Inconsistent(format!(
                "gram parity is {}, record says {}",
                if gram.is_even() { "even" } else { "odd" },
                if self.odd_form { "odd" } else { "even" }
            )));
        }
        self.gram = Some(gram);
        Ok(self)
    }

    pub fn with_spherical_pairings(
        mut self,
        pairings: Vec<Vec<i64>>,
    ) -> Result<Self, TopologyError> {
        let b2 = (self.b2plus + self.b2minus) as usize;
        if let Some(bad) = pairings.iter().find(|p| p.len() != b2) {
            return Err(TopologyError::Lattice(LatticeError::Dimension {
                rank: b2,
                got: bad.len(),
            }));
        }
        self.spherical_pairings = Some(pairings);
        Ok(self)
    }

    pub fn with_blowup_parent(mut self, parent: FourManifold) -> Self {
        self.blowup_parent = Some(Box::new(parent));
        self
    }

    pub fn gram(&self) -> Option<&IntegerLattice> {
        self.gram.as_ref()
    }

    pub fn require_gram(&self) -> Result<&IntegerLattice, TopologyError> {
        self.gram
            .as_ref()
            .ok_or_else(|| TopologyError::MissingGram(self.name.clone()))
    }

    pub fn spherical_pairings(&self) -> Option<&[Vec<i64>]> {
        self.spherical_pairings.as_deref()
    }

    pub fn blowup_parent(&self) -> Option<&FourManifold> {
        self.blowup_parent.as_deref()
    }

    pub fn numbers(&self) -> CharacteristicNumbers {
        characteristic_numbers(self.b1, self.b2plus, self.b2minus)
            .expect("validated on construction")
    }

    pub fn chi(&self) -> i64 {
        self.numbers().chi
    }

    pub fn sigma(&self) -> i64 {
        self.numbers().sigma
    }

    pub fn c(&self) -> i64 {
        self.numbers().c
    }

    pub fn b2(&self) -> u32 {
        self.b2plus + self.b2minus
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinCStructure {
    pub c1: LatticeVector,
}

impl SpinCStructure {
    pub fn new(c1: impl Into<LatticeVector>) -> Self {
        SpinCStructure { c1: c1.into() }
    }

    /// `c₁(𝔰)` must reduce to `w₂(X)`.
    pub fn validate(&self, x: &FourManifold) -> Result<(), TopologyError> {
        let q = x.require_gram()?;
        q.check_dimension(&self.c1)?;
        if !q.is_characteristic(&self.c1) {
            return Err(TopologyError::Constraint(format!(
                "c1 = {} is not characteristic",
                self.c1
            )));
        }
        Ok(())
    }
}

/// `(c₁(𝔱), p₁(𝔱), w)` with `w` an integral lift of `w₂(𝔱)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinUStructure {
    pub c1: LatticeVector,
    pub p1: i64,
    pub w: LatticeVector,
}

impl SpinUStructure {
    pub fn new(c1: impl Into<LatticeVector>, p1: i64, w: impl Into<LatticeVector>) -> Self {
        SpinUStructure {
            c1: c1.into(),
            p1,
            w: w.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpinUViolation {
    /// `c₁(𝔱) − w ≢ w₂(X)`.
    FirstConstraint,
    /// `p₁(𝔱) ≢ w² (mod 4)`.
    P1Congruence,
}

impl fmt::Display for SpinUViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpinUViolation::FirstConstraint => "first constraint violated",
            SpinUViolation::P1Congruence => "p1 ≢ w² mod 4",
        })
    }
}

/// Empty iff both spin^u congruences hold. The second one is exactly the
/// integrality of `c₂(E) = −(p₁ − w²)/4` for the realizing `U(2)` bundle.
pub fn validate_spinu(
    t: &SpinUStructure,
    x: &FourManifold,
) -> Result<Vec<SpinUViolation>, TopologyError> {
    let q = x.require_gram()?;
    q.check_dimension(&t.c1)?;
    q.check_dimension(&t.w)?;
    let mut out = Vec::new();
    if !q.is_characteristic(&t.c1.sub(&t.w)) {
        out.push(SpinUViolation::FirstConstraint);
    }
    if (t.p1 - q.square(&t.w)).rem_euclid(4) != 0 {
        out.push(SpinUViolation::P1Congruence);
    }
    Ok(out)
}

/// Anti-self-dual index data `(d_a, n_a, d_a + 2n_a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsdIndices {
    pub d_a: i64,
    pub n_a: i64,
    pub dim: i64,
}

/// `d_a = −2p₁ − 3(χ+σ)/2`, `n_a = (p₁ + c₁² − σ)/4`.
pub fn asd_indices_from(
    p1: i64,
    c1_square: i64,
    chi: i64,
    sigma: i64,
) -> Result<AsdIndices, TopologyError> {
    if (chi + sigma).rem_euclid(2) != 0 {
        return Err(TopologyError::Parity(format!(
            "χ + σ = {} is odd, d_a is not integral",
            chi + sigma
        )));
    }
    let n4 = p1 + c1_square - sigma;
    if n4.rem_euclid(4) != 0 {
        return Err(TopologyError::Parity(format!(
            "p1 + c1² − σ = {n4} is not divisible by 4"
        )));
    }
    let d_a = -2 * p1 - 3 * (chi + sigma) / 2;
    let n_a = n4 / 4;
    Ok(AsdIndices {
        d_a,
        n_a,
        dim: d_a + 2 * n_a,
    })
}

pub fn asd_indices(t: &SpinUStructure, x: &FourManifold) -> Result<AsdIndices, TopologyError> {
    let violations = validate_spinu(t, x)?;
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(TopologyError::Constraint(list.join(", ")));
    }
    let q = x.require_gram()?;
    asd_indices_from(t.p1, q.square(&t.c1), x.chi(), x.sigma())
}

/// `d_s = (c₁(𝔰)² − 2χ − 3σ)/4`.
pub fn sw_dimension_from(c1_square: i64, chi: i64, sigma: i64) -> Result<i64, TopologyError> {
    let num = c1_square - 2 * chi - 3 * sigma;
    if num.rem_euclid(4) != 0 {
        return Err(TopologyError::Parity(format!(
            "c1² − 2χ − 3σ = {num} is not divisible by 4"
        )));
    }
    Ok(num / 4)
}

pub fn sw_dimension(s: &SpinCStructure, x: &FourManifold) -> Result<i64, TopologyError> {
    let q = x.require_gram()?;
    q.check_dimension(&s.c1)?;
    sw_dimension_from(q.square(&s.c1), x.chi(), x.sigma())
}

/// Complex indices of the two summands of the normal deformation operator
/// along a reducible, together with `c₁(L) = c₁(𝔱) − c₁(𝔰)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionIndices {
    pub ns_prime: i64,
    pub ns_double_prime: i64,
    pub ns: i64,
    pub c1_l: LatticeVector,
}

/// `(n′, n″)` from `c_L² = (c₁(𝔱)−c₁(𝔰))²` and `u² = (2c₁(𝔱)−c₁(𝔰))²`.
pub fn reduction_indices_from_squares(
    cl_square: i64,
    u_square: i64,
    chi: i64,
    sigma: i64,
) -> Result<(i64, i64), TopologyError> {
    if (chi + sigma).rem_euclid(2) != 0 {
        return Err(TopologyError::Parity(format!(
            "χ + σ = {} is odd, n′ is not integral",
            chi + sigma
        )));
    }
    let num = u_square - sigma;
    if num.rem_euclid(8) != 0 {
        return Err(TopologyError::Inconsistent(format!(
            "(2c1(t) − c1(s))² − σ = {num} is not divisible by 8"
        )));
    }
    Ok((-cl_square - (chi + sigma) / 2, num / 8))
}

/// `n_s` as a single quadratic polynomial in `a = c₁(𝔱)`, `b = c₁(𝔰)`:
/// `−a²/2 + (3/2)ab − (7/8)b² − χ/2 − (5/8)σ`.
pub fn ns_direct_expansion(a_sq: i64, ab: i64, b_sq: i64, chi: i64, sigma: i64) -> Rational {
    ratio(-a_sq, 2) + ratio(3 * ab, 2) - ratio(7 * b_sq, 8) - ratio(chi, 2) - ratio(5 * sigma, 8)
}

pub fn reduction_indices(
    t: &SpinUStructure,
    s: &SpinCStructure,
    x: &FourManifold,
) -> Result<ReductionIndices, TopologyError> {
    let q = x.require_gram()?;
    q.check_dimension(&t.c1)?;
    q.check_dimension(&s.c1)?;
    let c1_l = t.c1.sub(&s.c1);
    let u = t.c1.scaled(2).sub(&s.c1);
    let (ns_prime, ns_double_prime) =
        reduction_indices_from_squares(q.square(&c1_l), q.square(&u), x.chi(), x.sigma())?;
    Ok(ReductionIndices {
        ns_prime,
        ns_double_prime,
        ns: ns_prime + ns_double_prime,
        c1_l,
    })
}

/// Passes to the structure with `p₁ ↦ p₁ + 4ℓ`.
pub fn level_shift(t: &SpinUStructure, ell: u32) -> SpinUStructure {
    SpinUStructure {
        c1: t.c1.clone(),
        p1: t.p1 + 4 * ell as i64,
        w: t.w.clone(),
    }
}

/// True when some declared spherical class pairs oddly with `w`, which rules
/// out flat `SO(3)` connections with that `w₂`.
pub fn morgan_mrowka_flatness(x: &FourManifold, w: &LatticeVector) -> Result<bool, TopologyError> {
    let pairings = x.spherical_pairings().ok_or_else(|| {
        TopologyError::Indeterminate(format!("{} declares no spherical classes", x.name))
    })?;
    for p in pairings {
        if p.len() != w.len() {
            return Err(LatticeError::Dimension {
                rank: p.len(),
                got: w.len(),
            }
            .into());
        }
        let pairing: i128 = p.iter().zip(&w.0).map(|(a, b)| *a as i128 * *b as i128).sum();
        if pairing.is_odd() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A basic class with its Seiberg–Witten value when known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SWDatum {
    pub basic_class: LatticeVector,
    pub sw_value: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
}

impl SWDatum {
    pub fn new(basic_class: impl Into<LatticeVector>, sw_value: i64) -> Self {
        SWDatum {
            basic_class: basic_class.into(),
            sw_value: Some(sw_value),
            convention: None,
        }
    }

    pub fn direction(basic_class: impl Into<LatticeVector>) -> Self {
        SWDatum {
            basic_class: basic_class.into(),
            sw_value: None,
            convention: None,
        }
    }
}
