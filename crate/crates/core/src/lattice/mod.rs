//! Integral symmetric bilinear forms and the hyperbolic-sublattice machinery
//! built on top of them.
//!
//! Everything here is exact: Gram entries and coefficients are `i64`, pairings
//! accumulate in `i128`, and signature/determinant go through arbitrary
//! precision rationals. Degenerate forms are allowed; unimodularity and
//! definiteness are predicates, not type constraints.

mod abundance;
mod numtheory;
mod search;
mod standard;

pub use abundance::{
    abundance_decide, construct_lambda, lemma_verdict_hyperbolic_orthogonal, AbundanceVerdict,
    LemmaRef, VerdictStatus,
};
pub use numtheory::{
    four_odd_squares, four_odd_squares_via_three, is_legendre_exception, three_squares,
};
pub use search::{
    isotropic_vectors, search_hyperbolic_pair, search_hyperbolic_pair_with, vector_order,
    HyperbolicCertificate, SearchOptions,
};
pub use standard::{
    build_standard_lattice, classify_indefinite_unimodular, e8_gram, StandardFormDescriptor,
};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("gram matrix must be square and non-empty")]
    NotSquare,
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("vector has length {got}, lattice has rank {rank}")]
    Dimension { rank: usize, got: usize },
    #[error("classification inapplicable: {0}")]
    ClassificationInapplicable(String),
    #[error("{0} is not congruent to 4 mod 8, so it is not a sum of four odd squares")]
    NotFourMod8(u64),
    #[error("lemma preconditions violated: {0}")]
    Inapplicable(String),
    #[error("parity error: {0}")]
    Parity(String),
    #[error("hypothesis error: {0}")]
    Hypothesis(String),
    #[error("Rochlin violation: spin simply connected manifold has signature {0}, not divisible by 16")]
    Rochlin(i64),
    #[error("Furuta bound violated: {hyperbolic} hyperbolic summands < 2|{e8_pairs}| + 1")]
    Furuta { e8_pairs: i64, hyperbolic: i64 },
    #[error("certificate failed verification: {0}")]
    Certificate(String),
}

/// Signature data `(p, q, r)`: positive, negative and null directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub nullity: usize,
}

impl Signature {
    pub fn sigma(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Coefficient vector in the lattice's chosen basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn gcd(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &c| g.gcd(&c))
    }

    /// `v / gcd(v)`; the zero vector is returned unchanged.
    pub fn primitive_part(&self) -> LatticeVector {
        let g = self.gcd();
        if g <= 1 {
            return self.clone();
        }
        LatticeVector(self.0.iter().map(|c| c / g).collect())
    }

    pub fn scaled(&self, k: i64) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Appends one coordinate (used when a form gains a `<±1>` summand).
    pub fn extended(&self, last: i64) -> LatticeVector {
        let mut v = self.0.clone();
        v.push(last);
        LatticeVector(v)
    }

    pub fn max_norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Result of [`vector_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorReport {
    pub square: i64,
    pub primitive: bool,
    pub characteristic: bool,
}

/// Free abelian group with a symmetric integer Gram form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    gram: Vec<Vec<i64>>,
    signature: Signature,
    determinant: BigInt,
}

impl IntegerLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let n = gram.len();
        if n == 0 || gram.iter().any(|row| row.len() != n) {
            return Err(LatticeError::NotSquare);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric(i, j));
                }
            }
        }
        let signature = congruence_signature(&gram);
        let determinant = bareiss_determinant(&gram);
        Ok(IntegerLattice {
            gram,
            signature,
            determinant,
        })
    }

    pub fn diagonal(entries: &[i64]) -> Result<Self, LatticeError> {
        let n = entries.len();
        let mut gram = vec![vec![0; n]; n];
        for (i, &d) in entries.iter().enumerate() {
            gram[i][i] = d;
        }
        IntegerLattice::new(gram)
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &IntegerLattice) -> IntegerLattice {
        let (n, m) = (self.rank(), other.rank());
        let mut gram = vec![vec![0; n + m]; n + m];
        for i in 0..n {
            gram[i][..n].copy_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            gram[n + i][n..].copy_from_slice(&other.gram[i]);
        }
        IntegerLattice::new(gram).expect("direct sum of symmetric forms is symmetric")
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn sigma(&self) -> i64 {
        self.signature.sigma()
    }

    pub fn determinant(&self) -> &BigInt {
        &self.determinant
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant.abs().is_one()
    }

    pub fn is_degenerate(&self) -> bool {
        self.signature.nullity > 0
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i] % 2 == 0)
    }

    pub fn is_indefinite(&self) -> bool {
        self.signature.positive >= 1 && self.signature.negative >= 1
    }

    pub fn check_dimension(&self, v: &LatticeVector) -> Result<(), LatticeError> {
        if v.len() != self.rank() {
            return Err(LatticeError::Dimension {
                rank: self.rank(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// `uᵀ G v`. Callers are expected to have checked dimensions.
    pub fn pairing(&self, u: &LatticeVector, v: &LatticeVector) -> i64 {
        let mut acc: i128 = 0;
        for (i, &ui) in u.0.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            let row = &self.gram[i];
            let mut inner: i128 = 0;
            for (j, &vj) in v.0.iter().enumerate() {
                inner += row[j] as i128 * vj as i128;
            }
            acc += ui as i128 * inner;
        }
        i64::try_from(acc).expect("pairing overflows i64")
    }

    pub fn square(&self, v: &LatticeVector) -> i64 {
        self.pairing(v, v)
    }

    /// `G v`, the covector `x ↦ v·x` in the dual basis.
    pub fn covector(&self, v: &LatticeVector) -> Vec<i64> {
        self.gram
            .iter()
            .map(|row| row.iter().zip(&v.0).map(|(g, c)| g * c).sum())
            .collect()
    }

    /// `v·bᵢ ≡ bᵢ·bᵢ (mod 2)` for every basis vector.
    pub fn is_characteristic(&self, v: &LatticeVector) -> bool {
        self.covector(v)
            .iter()
            .enumerate()
            .all(|(i, c)| (c - self.gram[i][i]).rem_euclid(2) == 0)
    }

    pub fn vector_report(&self, v: &LatticeVector) -> Result<VectorReport, LatticeError> {
        self.check_dimension(v)?;
        Ok(VectorReport {
            square: self.square(v),
            primitive: v.gcd() == 1,
            characteristic: self.is_characteristic(v),
        })
    }

    /// Appends a `<d>` summand.
    pub fn extended_by(&self, d: i64) -> IntegerLattice {
        self.direct_sum(&IntegerLattice::diagonal(&[d]).expect("1x1 form"))
    }
}

/// Free function form of [`IntegerLattice::vector_report`].
pub fn vector_report(l: &IntegerLattice, v: &LatticeVector) -> Result<VectorReport, LatticeError> {
    l.vector_report(v)
}

/// Symmetric Gaussian elimination over ℚ. Zero pivots are repaired by a
/// row/column swap with a nonzero diagonal entry, or by adding a row/column
/// with a nonzero off-diagonal entry; a vanishing remaining row is a null
/// direction.
fn congruence_signature(gram: &[Vec<i64>]) -> Signature {
    let n = gram.len();
    let mut a: Vec<Vec<BigRational>> = gram
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let mut sig = Signature {
        positive: 0,
        negative: 0,
        nullity: 0,
    };
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = ((k + 1)..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = ((k + 1)..n).find(|&j| !a[k][j].is_zero()) {
                // row_k += row_j, col_k += col_j
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            }
        }
        if a[k][k].is_zero() {
            sig.nullity += 1;
            continue;
        }
        if a[k][k].is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        let pivot = a[k][k].clone();
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &pivot;
            for j in k..n {
                let v = &factor * &a[k][j];
                a[i][j] -= v;
            }
        }
        for i in (k + 1)..n {
            a[k][i] = BigRational::zero();
        }
        // keep the trailing block symmetric
        for i in (k + 1)..n {
            a[i][k] = BigRational::zero();
        }
    }
    sig
}

/// Fraction-free determinant.
fn bareiss_determinant(gram: &[Vec<i64>]) -> BigInt {
    let n = gram.len();
    let mut m: Vec<Vec<BigInt>> = gram
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match ((k + 1)..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * prev
}
