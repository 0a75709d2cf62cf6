//! Lemma-level verdicts on whether `κ^⊥` contains a copy of `H`, with a
//! bounded search as fallback and the `Λ_j` construction on top of a pair.

use serde::{Deserialize, Serialize};

use super::search::{search_hyperbolic_pair, HyperbolicCertificate};
use super::{IntegerLattice, LatticeError, LatticeVector};
use crate::topology::FourManifold;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    ProvenByLemma,
    CertifiedBySearch,
    RefutedAtBound,
    Unknown,
}

/// Which hypothesis set produced a proven verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaRef {
    /// Even, `|σ| ≤ rank − 4`: Wall transitivity puts `κ` inside `2H`.
    EvenWideSignature,
    /// Odd, `b⁺ ≥ 5`, `b⁻ ≥ 3`, `κ` characteristic.
    OddStable,
    /// Odd, `b⁺ = 3`, `b⁻ ≥ 5`, `κ` characteristic.
    OddUnstableWide,
    /// Odd, `b⁺ = 3`, `b⁻ ∈ {2, 4}`, `κ` characteristic of square `4 + 5b⁺ − b⁻`.
    OddUnstableCanonical,
    /// A blow-up of a manifold that is already abundant.
    BlowupClosure,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbundanceVerdict {
    pub status: VerdictStatus,
    pub lemma: LemmaRef,
    pub certificate: Option<HyperbolicCertificate>,
    pub search_bound: Option<u32>,
}

impl AbundanceVerdict {
    fn lemma(lemma: LemmaRef) -> Self {
        AbundanceVerdict {
            status: if lemma == LemmaRef::None {
                VerdictStatus::Unknown
            } else {
                VerdictStatus::ProvenByLemma
            },
            lemma,
            certificate: None,
            search_bound: None,
        }
    }

    pub fn is_abundant(&self) -> bool {
        matches!(
            self.status,
            VerdictStatus::ProvenByLemma | VerdictStatus::CertifiedBySearch
        )
    }
}

/// `(b⁺, b⁻)` window in which the odd-form lemmas need a characteristic `κ`.
fn odd_lemma_window(bp: usize, bm: usize) -> bool {
    (bp >= 5 && bm >= 3) || (bp == 3 && bm >= 2)
}

pub fn lemma_verdict_hyperbolic_orthogonal(
    l: &IntegerLattice,
    kappa: &LatticeVector,
) -> Result<AbundanceVerdict, LatticeError> {
    l.check_dimension(kappa)?;
    if l.is_degenerate() || !l.is_unimodular() || !l.is_indefinite() {
        return Err(LatticeError::Inapplicable(
            "form must be nondegenerate, unimodular and indefinite".into(),
        ));
    }
    let kappa = kappa.primitive_part();
    let sig = l.signature();
    let (bp, bm, rank) = (sig.positive, sig.negative, l.rank());
    if l.is_even() {
        let lemma = if sig.sigma().unsigned_abs() as usize + 4 <= rank {
            LemmaRef::EvenWideSignature
        } else {
            LemmaRef::None
        };
        return Ok(AbundanceVerdict::lemma(lemma));
    }
    if !l.is_characteristic(&kappa) {
        return Ok(AbundanceVerdict::lemma(LemmaRef::None));
    }
    let lemma = if bp >= 5 && bm >= 3 {
        LemmaRef::OddStable
    } else if bp == 3 && bm >= 5 {
        LemmaRef::OddUnstableWide
    } else if bp == 3 && (bm == 2 || bm == 4) {
        // 2χ(Q) + 3σ(Q) with χ(Q) = 2 + rank
        let target = 4 + 5 * bp as i64 - bm as i64;
        if l.square(&kappa) == target {
            LemmaRef::OddUnstableCanonical
        } else {
            LemmaRef::None
        }
    } else {
        LemmaRef::None
    };
    Ok(AbundanceVerdict::lemma(lemma))
}

/// Full decision for a manifold whose basic classes are multiples of `k`.
pub fn abundance_decide(
    x: &FourManifold,
    k: &LatticeVector,
    search_bound: Option<u32>,
) -> Result<AbundanceVerdict, LatticeError> {
    let l = x
        .gram()
        .ok_or_else(|| LatticeError::Hypothesis(format!("{} has no intersection form", x.name)))?;
    l.check_dimension(k)?;

    if let Some(parent) = x.blowup_parent() {
        if parent.gram().is_some() && k.len() == parent.b2() as usize + 1 {
            let parent_k = LatticeVector(k.0[..k.len() - 1].to_vec());
            let upstairs = abundance_decide(parent, &parent_k, search_bound)?;
            if upstairs.is_abundant() {
                let certificate = upstairs.certificate.map(|c| HyperbolicCertificate {
                    e: c.e.extended(0),
                    f: c.f.extended(0),
                });
                if let Some(c) = &certificate {
                    c.verify(l, Some(k))?;
                }
                return Ok(AbundanceVerdict {
                    status: VerdictStatus::ProvenByLemma,
                    lemma: LemmaRef::BlowupClosure,
                    certificate,
                    search_bound: upstairs.search_bound,
                });
            }
        }
    }

    let sig = l.signature();
    if !l.is_even()
        && !k.is_zero()
        && !l.is_characteristic(k)
        && odd_lemma_window(sig.positive, sig.negative)
    {
        return Err(LatticeError::Hypothesis(format!(
            "K = {k} is not characteristic in an odd form"
        )));
    }

    if x.spin && x.simply_connected {
        let sigma = l.sigma();
        if sigma.rem_euclid(16) != 0 {
            return Err(LatticeError::Rochlin(sigma));
        }
        let e8_pairs = sigma / 16;
        let hyperbolic = (l.rank() as i64 - sigma.abs()) / 2;
        if hyperbolic < 2 * e8_pairs.abs() + 1 {
            return Err(LatticeError::Furuta {
                e8_pairs,
                hyperbolic,
            });
        }
    }

    let verdict = lemma_verdict_hyperbolic_orthogonal(l, k)?;
    match (verdict.status, search_bound) {
        (VerdictStatus::Unknown, Some(bound)) => {
            let found = search_hyperbolic_pair(l, &k.primitive_part(), bound)?;
            Ok(match found {
                Some(cert) => AbundanceVerdict {
                    status: VerdictStatus::CertifiedBySearch,
                    lemma: LemmaRef::None,
                    certificate: Some(cert),
                    search_bound: Some(bound),
                },
                None => AbundanceVerdict {
                    status: VerdictStatus::RefutedAtBound,
                    lemma: LemmaRef::None,
                    certificate: None,
                    search_bound: Some(bound),
                },
            })
        }
        _ => Ok(verdict),
    }
}

/// `Λ = e + (j − t) f` with `t = (χ + σ)/2`, so `Λ² = 2j − (χ + σ)`.
pub fn construct_lambda(
    l: &IntegerLattice,
    cert: &HyperbolicCertificate,
    j: i64,
    chi: i64,
    sigma: i64,
) -> Result<LatticeVector, LatticeError> {
    if (chi + sigma).rem_euclid(2) != 0 {
        return Err(LatticeError::Parity(format!("χ + σ = {} is odd", chi + sigma)));
    }
    cert.verify(l, None)?;
    let t = (chi + sigma) / 2;
    let lambda = cert.e.add(&cert.f.scaled(j - t));
    let sq = l.square(&lambda);
    if sq != 2 * j - (chi + sigma) {
        return Err(LatticeError::Certificate(format!(
            "Λ² = {sq}, expected {}",
            2 * j - (chi + sigma)
        )));
    }
    Ok(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_standard_lattice, StandardFormDescriptor};
    use crate::topology::{blow_up, surface_catalog, SurfaceFamily};

    fn k3_form() -> IntegerLattice {
        build_standard_lattice(&StandardFormDescriptor::Even {
            e8_count: -2,
            h_count: 3,
        })
    }

    #[test]
    fn lemma_examples() {
        let v = lemma_verdict_hyperbolic_orthogonal(&k3_form(), &LatticeVector::zero(22)).unwrap();
        assert_eq!(v.lemma, LemmaRef::EvenWideSignature);
        assert_eq!(v.status, VerdictStatus::ProvenByLemma);

        // (3, 2) with κ = (3, 3, 1 | 1, 1): κ² = 9 + 9 + 1 − 2 = 17
        let odd32 = IntegerLattice::diagonal(&[1, 1, 1, -1, -1]).unwrap();
        let v = lemma_verdict_hyperbolic_orthogonal(&odd32, &vec![3, 3, 1, 1, 1].into()).unwrap();
        assert_eq!(v.lemma, LemmaRef::OddUnstableCanonical);
        let v = lemma_verdict_hyperbolic_orthogonal(&odd32, &vec![1, 1, 1, 1, 1].into()).unwrap();
        assert_eq!(v.status, VerdictStatus::Unknown);

        let odd44 = IntegerLattice::diagonal(&[1, 1, 1, 1, -1, -1, -1, -1]).unwrap();
        let v = lemma_verdict_hyperbolic_orthogonal(&odd44, &vec![1; 8].into()).unwrap();
        assert_eq!(v.status, VerdictStatus::Unknown);

        let odd33 = IntegerLattice::diagonal(&[1, 1, 1, -1, -1, -1]).unwrap();
        let v = lemma_verdict_hyperbolic_orthogonal(&odd33, &vec![3, 1, 1, 1, 1, 1].into()).unwrap();
        assert_eq!(v.status, VerdictStatus::Unknown);

        let definite = IntegerLattice::diagonal(&[1, 1]).unwrap();
        assert!(matches!(
            lemma_verdict_hyperbolic_orthogonal(&definite, &vec![1, 1].into()),
            Err(LatticeError::Inapplicable(_))
        ));
    }

    #[test]
    fn kappa_reduced_to_primitive_part() {
        // 3κ with κ characteristic is still characteristic; 2κ is not, but its
        // primitive part is.
        let l = IntegerLattice::diagonal(&[1, 1, 1, 1, 1, -1, -1, -1]).unwrap();
        let kappa: LatticeVector = vec![1; 8].into();
        let v = lemma_verdict_hyperbolic_orthogonal(&l, &kappa.scaled(2)).unwrap();
        assert_eq!(v.lemma, LemmaRef::OddStable);
    }

    #[test]
    fn decide_examples() {
        let k3 = surface_catalog(&SurfaceFamily::Elliptic { n: 2, p: 1, q: 1 }).unwrap();
        let v = abundance_decide(&k3.manifold, &LatticeVector::zero(22), None).unwrap();
        assert_eq!(v.lemma, LemmaRef::EvenWideSignature);

        let fake = FourManifold::new("sigma-8", 0, 3, 11, false, true, true)
            .unwrap()
            .with_gram(build_standard_lattice(&StandardFormDescriptor::Even {
                e8_count: -1,
                h_count: 3,
            }))
            .unwrap();
        assert_eq!(
            abundance_decide(&fake, &LatticeVector::zero(14), None),
            Err(LatticeError::Rochlin(-8))
        );

        let blown = blow_up(&k3).unwrap();
        let v = abundance_decide(&blown.manifold, &blown.generators[0].basic_class, None).unwrap();
        assert_eq!(v.lemma, LemmaRef::BlowupClosure);
        assert_eq!(v.status, VerdictStatus::ProvenByLemma);
    }

    #[test]
    fn furuta_bound_enforced() {
        // 2(−E8) ⊕ H: σ = −16, one hyperbolic summand < 2·1 + 1
        let l = build_standard_lattice(&StandardFormDescriptor::Even {
            e8_count: -2,
            h_count: 1,
        });
        let x = FourManifold::new("no", 0, 1, 17, false, true, true)
            .unwrap()
            .with_gram(l)
            .unwrap();
        assert!(matches!(
            abundance_decide(&x, &LatticeVector::zero(18), None),
            Err(LatticeError::Furuta { .. })
        ));
    }

    #[test]
    fn non_characteristic_k_rejected() {
        let l = IntegerLattice::diagonal(&[1, 1, 1, 1, 1, -1, -1, -1]).unwrap();
        let x = FourManifold::new("odd", 0, 5, 3, true, false, true)
            .unwrap()
            .with_gram(l)
            .unwrap();
        let mut k = vec![1i64; 8];
        k[0] = 2;
        assert!(matches!(
            abundance_decide(&x, &k.into(), None),
            Err(LatticeError::Hypothesis(_))
        ));
    }

    #[test]
    fn search_fallback() {
        let l = IntegerLattice::diagonal(&[1, 1, 1, 1, -1, -1, -1, -1]).unwrap();
        let x = FourManifold::new("odd44", 1, 4, 4, true, false, false)
            .unwrap()
            .with_gram(l.clone())
            .unwrap();
        let v = abundance_decide(&x, &vec![1; 8].into(), Some(1)).unwrap();
        assert_eq!(v.status, VerdictStatus::CertifiedBySearch);
        v.certificate.unwrap().verify(&l, Some(&vec![1; 8].into())).unwrap();
    }

    #[test]
    fn lambda_examples() {
        let l = k3_form();
        let mut e = vec![0; 22];
        e[16] = 1;
        let mut f = vec![0; 22];
        f[17] = 1;
        let cert = HyperbolicCertificate {
            e: e.clone().into(),
            f: f.into(),
        };
        let lam = construct_lambda(&l, &cert, 1, 24, -16).unwrap();
        assert_eq!(l.square(&lam), -6);
        assert_eq!(lam.0[16..18], [1, -3]);
        assert_eq!(construct_lambda(&l, &cert, 4, 24, -16).unwrap(), cert.e);
        assert_eq!(construct_lambda(&l, &cert, 2, 4, 0).unwrap(), cert.e);
        assert!(matches!(
            construct_lambda(&l, &cert, 1, 3, 0),
            Err(LatticeError::Parity(_))
        ));
    }
}
