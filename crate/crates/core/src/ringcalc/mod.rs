//! Bigraded exact algebra `(Λ[γ^J] ⊗ ℚ[μ]) ⊗ A(X)` over ℚ.
//!
//! The left factor is the cohomology of the configuration space: `μ` in
//! degree 2 and exterior generators `γ_i^J` in degree 1. The right factor is a
//! finite model `A(X)` of the cohomology of the four-manifold:
//!
//! | degree | basis |
//! |---|---|
//! | 0 | `1` |
//! | 1 | `γ_i` |
//! | 2 | `H²` basis vectors `e_k`; `γ_i γ_j` is identified with the class `g_ij` |
//! | 3 | `Γ_l`, dual to `γ_l` under the cup pairing |
//! | 4 | `[X]`-evaluated top class, and formal `p₁(X)`, `p₁(Λ⁺)` |
//!
//! Products in `A(X)`: `γ_iγ_j = g_ij`, `γ_i·e_k = e_k·γ_i = Σ_l Q(g_li, e_k) Γ_l`,
//! `e_a·e_b = Q_ab [X]`, `γ_j·Γ_l = δ_jl [X] = −Γ_l·γ_j`. With alternating
//! `q_ijkl = Q(g_ij, g_kl)` this is associative and graded commutative.
//!
//! Cross products follow `(a×b)(c×d) = (−1)^{|b||c|} (ac × bd)`.
//! Left-hand degree is truncated at `2·cap` (`cap` counts powers of `μ`).

mod chern;

pub use chern::{
    c_normal_closed_form, ch_index_family, ch_normal_direct, ch_normal_pipeline,
    character_from_chern, chern_from_character, closed_form_polynomial, koszul_sign,
    universal_classes, ChNormalInput,
    UniversalClasses,
};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::lattice::{IntegerLattice, LatticeError};
use crate::rational::rat;
use crate::topology::TopologyError;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("inconsistent cohomology model: {0}")]
    Inconsistent(String),
    #[error("vector has length {got}, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("exp needs a nilpotent argument; constant term is {0}")]
    Domain(String),
    #[error("degree-0 component {got} does not match rank {rank}")]
    Rank { rank: String, got: String },
    #[error("hypothesis error: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Antisymmetric cup table `γ_iγ_j ↦ g_ij`, keyed by `i < j` (0-based).
pub type CupTable = BTreeMap<(usize, usize), Vec<i64>>;

/// Monomial `μ^mu · γ^J_{i1}⋯γ^J_{ik}` with `i1 < … < ik` recorded as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct JacMonomial {
    pub mu: u32,
    pub gammas: u32,
}

impl JacMonomial {
    pub const ONE: JacMonomial = JacMonomial { mu: 0, gammas: 0 };

    pub fn mu_power(k: u32) -> Self {
        JacMonomial { mu: k, gammas: 0 }
    }

    pub fn gammas(indices: &[usize]) -> Self {
        JacMonomial {
            mu: 0,
            gammas: indices.iter().fold(0, |m, &i| m | (1 << i)),
        }
    }

    pub fn gamma_count(&self) -> u32 {
        self.gammas.count_ones()
    }

    pub fn degree(&self) -> u32 {
        2 * self.mu + self.gamma_count()
    }

    /// Product with the sign from sorting the exterior word; `None` if a
    /// generator repeats.
    pub fn mul(&self, other: &JacMonomial) -> Option<(JacMonomial, bool)> {
        if self.gammas & other.gammas != 0 {
            return None;
        }
        // each generator of `other` passes every larger generator of `self`
        let mut swaps = 0;
        let mut rest = other.gammas;
        while rest != 0 {
            let b = rest.trailing_zeros();
            swaps += (self.gammas >> b).count_ones();
            rest &= rest - 1;
        }
        Some((
            JacMonomial {
                mu: self.mu + other.mu,
                gammas: self.gammas | other.gammas,
            },
            swaps % 2 == 1,
        ))
    }
}

impl Ord for JacMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.mu.cmp(&other.mu))
            .then(self.gammas.reverse_bits().cmp(&other.gammas.reverse_bits()).reverse())
    }
}

impl PartialOrd for JacMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for JacMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.mu {
            0 => {}
            1 => parts.push("mu".to_string()),
            k => parts.push(format!("mu^{k}")),
        }
        for i in 0..32 {
            if self.gammas & (1 << i) != 0 {
                parts.push(format!("gJ{}", i + 1));
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Basis of the model `A(X)`; indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum XBasis {
    One,
    Gamma(usize),
    H2(usize),
    Gamma3(usize),
    Top,
    P1X,
    P1Lambda,
}

impl XBasis {
    pub fn degree(&self) -> u32 {
        match self {
            XBasis::One => 0,
            XBasis::Gamma(_) => 1,
            XBasis::H2(_) => 2,
            XBasis::Gamma3(_) => 3,
            XBasis::Top | XBasis::P1X | XBasis::P1Lambda => 4,
        }
    }
}

impl fmt::Display for XBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XBasis::One => write!(f, "1"),
            XBasis::Gamma(i) => write!(f, "g{}", i + 1),
            XBasis::H2(k) => write!(f, "e{}", k + 1),
            XBasis::Gamma3(l) => write!(f, "G{}", l + 1),
            XBasis::Top => write!(f, "[X]"),
            XBasis::P1X => write!(f, "p1(X)"),
            XBasis::P1Lambda => write!(f, "p1(L+)"),
        }
    }
}

/// Finite formal sum of `coefficient · (jacobian monomial × model basis)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BigradedClass {
    terms: BTreeMap<(JacMonomial, XBasis), Rational>,
}

impl BigradedClass {
    pub fn zero() -> Self {
        BigradedClass::default()
    }

    pub fn scalar(r: Rational) -> Self {
        BigradedClass::term(JacMonomial::ONE, XBasis::One, r)
    }

    pub fn one() -> Self {
        BigradedClass::scalar(Rational::one())
    }

    pub fn term(jac: JacMonomial, x: XBasis, coeff: Rational) -> Self {
        let mut c = BigradedClass::zero();
        c.add_term(jac, x, coeff);
        c
    }

    pub fn mu() -> Self {
        BigradedClass::term(JacMonomial::mu_power(1), XBasis::One, Rational::one())
    }

    /// `1 × Σ v_k e_k`.
    pub fn h2(v: &[Rational]) -> Self {
        let mut c = BigradedClass::zero();
        for (k, x) in v.iter().enumerate() {
            c.add_term(JacMonomial::ONE, XBasis::H2(k), x.clone());
        }
        c
    }

    pub fn h2_int(v: &[i64]) -> Self {
        BigradedClass::h2(&v.iter().map(|&x| rat(x)).collect::<Vec<_>>())
    }

    pub fn add_term(&mut self, jac: JacMonomial, x: XBasis, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let key = (jac, x);
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&JacMonomial, &XBasis, &Rational)> {
        self.terms.iter().map(|((j, x), c)| (j, x, c))
    }

    pub fn coeff(&self, jac: JacMonomial, x: XBasis) -> Rational {
        self.terms.get(&(jac, x)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of `jac × 1`.
    pub fn jac_coeff(&self, jac: JacMonomial) -> Rational {
        self.coeff(jac, XBasis::One)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &BigradedClass) -> BigradedClass {
        let mut out = self.clone();
        for ((j, x), c) in &other.terms {
            out.add_term(*j, *x, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &BigradedClass) -> BigradedClass {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, r: &Rational) -> BigradedClass {
        let mut out = BigradedClass::zero();
        for ((j, x), c) in &self.terms {
            out.add_term(*j, *x, c * r);
        }
        out
    }

    pub fn neg(&self) -> BigradedClass {
        self.scale(&-Rational::one())
    }

    /// Constant term `1 × 1`.
    pub fn constant(&self) -> Rational {
        self.coeff(JacMonomial::ONE, XBasis::One)
    }

    /// Homogeneous components of the total degree `jac + x`.
    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.terms
            .keys()
            .all(|(j, x)| j.degree() + x.degree() == degree)
    }

    /// Part with left-hand degree `d` and right-hand part `1`.
    pub fn jac_component(&self, d: u32) -> BigradedClass {
        let mut out = BigradedClass::zero();
        for ((j, x), c) in &self.terms {
            if *x == XBasis::One && j.degree() == d {
                out.add_term(*j, *x, c.clone());
            }
        }
        out
    }

    /// Deterministic listing `(monomial, coefficient)`, ordered by degree then
    /// monomial.
    pub fn listing(&self) -> Vec<(String, Rational)> {
        self.terms
            .iter()
            .map(|((j, x), c)| {
                let name = if *x == XBasis::One {
                    j.to_string()
                } else {
                    format!("{j}⊗{x}")
                };
                (name, c.clone())
            })
            .collect()
    }
}

impl fmt::Display for BigradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .listing()
            .into_iter()
            .map(|(m, c)| format!("({c})·{m}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `H•(X)` data: `Q` on `H²`, the cup table on `H¹`, the truncation cap, and
/// `(χ, σ)` used to resolve `p₁(X) ↦ 3σ`, `p₁(Λ⁺) ↦ 2χ + 3σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyModel {
    b1: usize,
    q: Vec<Vec<i64>>,
    /// `g[i][j]`, full antisymmetric table.
    g: Vec<Vec<Vec<i64>>>,
    /// `γ_i · e_k = Σ_l gamma_h2[i][k][l] Γ_l`
    gamma_h2: Vec<Vec<Vec<i64>>>,
    cap: u32,
    chi: i64,
    sigma: i64,
}

impl CohomologyModel {
    /// Validates symmetry of `Q`, table shape, and alternation of `q_ijkl`.
    /// `χ` and `σ` default to `2 − 2b₁ + rank` and the signature of `Q`.
    pub fn new(b1: usize, q: Vec<Vec<i64>>, cups: &CupTable, cap: u32) -> Result<Self, RingError> {
        if b1 > 32 {
            return Err(RingError::Inconsistent(format!("b1 = {b1} exceeds 32")));
        }
        let lattice = IntegerLattice::new(q.clone())?;
        let n = lattice.rank();
        let mut g = vec![vec![vec![0i64; n]; b1]; b1];
        for (&(i, j), v) in cups {
            if i >= j || j >= b1 {
                return Err(RingError::Inconsistent(format!(
                    "cup entry ({i}, {j}) needs i < j < b1"
                )));
            }
            if v.len() != n {
                return Err(RingError::Dimension {
                    expected: n,
                    got: v.len(),
                });
            }
            g[i][j] = v.clone();
            g[j][i] = v.iter().map(|x| -x).collect();
        }
        let pair = |a: &[i64], b: &[i64]| -> i64 {
            let mut s = 0;
            for (r, row) in q.iter().enumerate() {
                for (c, qrc) in row.iter().enumerate() {
                    s += a[r] * qrc * b[c];
                }
            }
            s
        };
        for i in 0..b1 {
            for j in 0..b1 {
                for k in 0..b1 {
                    for l in 0..b1 {
                        let a = pair(&g[i][j], &g[k][l]);
                        let b = pair(&g[i][k], &g[j][l]);
                        if a != -b {
                            return Err(RingError::Inconsistent(format!(
                                "q({},{},{},{}) = {a} but q({},{},{},{}) = {b}",
                                i + 1,
                                j + 1,
                                k + 1,
                                l + 1,
                                i + 1,
                                k + 1,
                                j + 1,
                                l + 1
                            )));
                        }
                    }
                }
            }
        }
        let mut gamma_h2 = vec![vec![vec![0i64; b1]; n]; b1];
        for i in 0..b1 {
            for k in 0..n {
                for l in 0..b1 {
                    // Q(g_li, e_k)
                    gamma_h2[i][k][l] = (0..n).map(|r| g[l][i][r] * q[r][k]).sum();
                }
            }
        }
        let sig = lattice.signature();
        let chi = 2 - 2 * b1 as i64 + (sig.positive + sig.negative) as i64;
        Ok(CohomologyModel {
            b1,
            q,
            g,
            gamma_h2,
            cap,
            chi,
            sigma: sig.sigma(),
        })
    }

    pub fn with_characteristic_numbers(mut self, chi: i64, sigma: i64) -> Self {
        self.chi = chi;
        self.sigma = sigma;
        self
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }

    pub fn b1(&self) -> usize {
        self.b1
    }

    pub fn h2rank(&self) -> usize {
        self.q.len()
    }

    pub fn q(&self) -> &[Vec<i64>] {
        &self.q
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn sigma(&self) -> i64 {
        self.sigma
    }

    /// `g_ij` (zero on the diagonal).
    pub fn cup(&self, i: usize, j: usize) -> &[i64] {
        &self.g[i][j]
    }

    pub fn pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (r, row) in self.q.iter().enumerate() {
            if a[r] == 0 {
                continue;
            }
            for (c, qrc) in row.iter().enumerate() {
                s += a[r] * qrc * b[c];
            }
        }
        s
    }

    /// `q_ijkl = ⟨γ_iγ_jγ_kγ_l, [X]⟩`.
    pub fn quadruple(&self, i: usize, j: usize, k: usize, l: usize) -> i64 {
        self.pairing(&self.g[i][j], &self.g[k][l])
    }

    fn x_mul(&self, a: XBasis, b: XBasis) -> Vec<(XBasis, i64)> {
        use XBasis::*;
        match (a, b) {
            (One, y) | (y, One) => vec![(y, 1)],
            (Gamma(i), Gamma(j)) => self.g[i][j]
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(k, c)| (H2(k), *c))
                .collect(),
            (Gamma(i), H2(k)) | (H2(k), Gamma(i)) => self.gamma_h2[i][k]
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(l, c)| (Gamma3(l), *c))
                .collect(),
            (Gamma(j), Gamma3(l)) if j == l => vec![(Top, 1)],
            (Gamma3(l), Gamma(j)) if j == l => vec![(Top, -1)],
            (H2(a), H2(b)) if self.q[a][b] != 0 => vec![(Top, self.q[a][b])],
            _ => vec![],
        }
    }

    fn keep(&self, j: &JacMonomial) -> bool {
        j.degree() <= 2 * self.cap
    }

    pub fn truncate(&self, a: &BigradedClass) -> BigradedClass {
        let mut out = BigradedClass::zero();
        for (j, x, c) in a.terms() {
            if self.keep(j) {
                out.add_term(*j, *x, c.clone());
            }
        }
        out
    }

    pub fn mul(&self, a: &BigradedClass, b: &BigradedClass) -> BigradedClass {
        let mut out = BigradedClass::zero();
        for ((ja, xa), ca) in &a.terms {
            for ((jb, xb), cb) in &b.terms {
                if ja.degree() + jb.degree() > 2 * self.cap {
                    continue;
                }
                let Some((j, flip)) = ja.mul(jb) else {
                    continue;
                };
                let koszul = (xa.degree() * jb.degree()) % 2 == 1;
                let products = self.x_mul(*xa, *xb);
                if products.is_empty() {
                    continue;
                }
                let base = ca * cb;
                let base = if flip ^ koszul { -base } else { base };
                for (x, k) in products {
                    out.add_term(j, x, &base * rat(k));
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &BigradedClass, k: u32) -> BigradedClass {
        (0..k).fold(BigradedClass::one(), |acc, _| self.mul(&acc, a))
    }

    /// `Σ aᵏ/k!`, which terminates because `a` is nilpotent in the model.
    pub fn exp(&self, a: &BigradedClass) -> Result<BigradedClass, RingError> {
        let c0 = a.constant();
        if !c0.is_zero() {
            return Err(RingError::Domain(c0.to_string()));
        }
        let a = self.truncate(a);
        let mut out = BigradedClass::one();
        let mut power = BigradedClass::one();
        let mut k = 0i64;
        loop {
            k += 1;
            power = self.mul(&power, &a).scale(&Rational::new(1.into(), k.into()));
            if power.is_zero() {
                return Ok(out);
            }
            out = out.add(&power);
        }
    }

    /// Left-hand class multiplying the evaluated degree-4 part, with
    /// `p₁(X) ↦ 3σ` and `p₁(Λ⁺) ↦ 2χ + 3σ`.
    pub fn slant_fundamental(&self, a: &BigradedClass) -> BigradedClass {
        let p1x = rat(3 * self.sigma);
        let p1l = rat(2 * self.chi + 3 * self.sigma);
        let mut out = BigradedClass::zero();
        for (j, x, c) in a.terms() {
            let w = match x {
                XBasis::Top => Rational::one(),
                XBasis::P1X => p1x.clone(),
                XBasis::P1Lambda => p1l.clone(),
                _ => continue,
            };
            out.add_term(*j, XBasis::One, c * w);
        }
        out
    }

    /// Slant with the point class: the part with right-hand factor `1`.
    pub fn slant_point(&self, a: &BigradedClass) -> BigradedClass {
        let mut out = BigradedClass::zero();
        for (j, x, c) in a.terms() {
            if *x == XBasis::One {
                out.add_term(*j, XBasis::One, c.clone());
            }
        }
        out
    }

    /// Slant with the 1-cycle dual to `γ_i`.
    pub fn slant_one_cycle(&self, a: &BigradedClass, i: usize) -> BigradedClass {
        let mut out = BigradedClass::zero();
        for (j, x, c) in a.terms() {
            if *x == XBasis::Gamma(i) {
                out.add_term(*j, XBasis::One, c.clone());
            }
        }
        out
    }

    pub fn gamma_x(&self, i: usize) -> BigradedClass {
        BigradedClass::term(JacMonomial::ONE, XBasis::Gamma(i), Rational::one())
    }

    pub fn gamma_j(&self, i: usize) -> BigradedClass {
        BigradedClass::term(JacMonomial::gammas(&[i]), XBasis::One, Rational::one())
    }

    pub fn p1_x() -> BigradedClass {
        BigradedClass::term(JacMonomial::ONE, XBasis::P1X, Rational::one())
    }

    pub fn p1_lambda() -> BigradedClass {
        BigradedClass::term(JacMonomial::ONE, XBasis::P1Lambda, Rational::one())
    }

    pub fn check_h2(&self, v: &[i64]) -> Result<(), RingError> {
        if v.len() != self.h2rank() {
            return Err(RingError::Dimension {
                expected: self.h2rank(),
                got: v.len(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn hh() -> Vec<Vec<i64>> {
        vec![
            vec![0, 1, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 0],
        ]
    }

    #[test]
    fn truncated_exponential_of_mu() {
        let m = CohomologyModel::new(0, vec![vec![1]], &CupTable::new(), 2).unwrap();
        let e = m.exp(&BigradedClass::mu()).unwrap();
        let mut expected = BigradedClass::one();
        expected.add_term(JacMonomial::mu_power(1), XBasis::One, rat(1));
        expected.add_term(JacMonomial::mu_power(2), XBasis::One, ratio(1, 2));
        assert_eq!(e, expected);
        assert!(matches!(
            m.exp(&BigradedClass::one()),
            Err(RingError::Domain(_))
        ));
    }

    #[test]
    fn cross_term_product_sign() {
        let mut cups = CupTable::new();
        cups.insert((0, 1), vec![1, 0, 0, 0]);
        let m = CohomologyModel::new(2, hh(), &cups, 3).unwrap();
        let c1 = m.mul(&m.gamma_j(0), &m.gamma_x(0));
        let c2 = m.mul(&m.gamma_j(1), &m.gamma_x(1));
        let prod = m.mul(&c1, &c2);
        // −(γ1^J γ2^J) × (γ1γ2) = −(γ1^J γ2^J) × e1
        let expected =
            BigradedClass::term(JacMonomial::gammas(&[0, 1]), XBasis::H2(0), rat(-1));
        assert_eq!(prod, expected);
    }

    #[test]
    fn degree_three_pairs_with_degree_one() {
        let mut cups = CupTable::new();
        cups.insert((0, 1), vec![1, 0, 0, 0]);
        let m = CohomologyModel::new(2, hh(), &cups, 3).unwrap();
        // (γ1γ2)·e2 = Q(e1, e2) [X] = 1
        let lhs = m.mul(&m.mul(&m.gamma_x(0), &m.gamma_x(1)), &BigradedClass::h2_int(&[0, 1, 0, 0]));
        let rhs = m.mul(&m.gamma_x(0), &m.mul(&m.gamma_x(1), &BigradedClass::h2_int(&[0, 1, 0, 0])));
        assert_eq!(lhs, rhs);
        assert_eq!(m.slant_fundamental(&lhs), BigradedClass::one());
    }

    #[test]
    fn rejects_non_alternating_cups() {
        // b1 = 4 with g12 = e1, g34 = f1 but nothing else: q_1234 = 1, q_1324 = 0
        let mut cups = CupTable::new();
        cups.insert((0, 1), vec![1, 0, 0, 0]);
        cups.insert((2, 3), vec![0, 1, 0, 0]);
        assert!(matches!(
            CohomologyModel::new(4, hh(), &cups, 2),
            Err(RingError::Inconsistent(_))
        ));
    }

    #[test]
    fn slant_examples() {
        let m = CohomologyModel::new(0, vec![vec![-6]], &CupTable::new(), 2)
            .unwrap()
            .with_characteristic_numbers(24, -16);
        let c = BigradedClass::h2_int(&[1]);
        assert_eq!(m.slant_fundamental(&m.mul(&c, &c)), BigradedClass::scalar(rat(-6)));
        assert!(m.slant_fundamental(&BigradedClass::mu()).is_zero());
        let mu2p1 = BigradedClass::term(JacMonomial::mu_power(2), XBasis::P1X, rat(1));
        assert_eq!(
            m.slant_fundamental(&mu2p1),
            BigradedClass::term(JacMonomial::mu_power(2), XBasis::One, rat(-48))
        );
    }

    #[test]
    fn monomial_order_and_display() {
        let a = JacMonomial::gammas(&[0, 2]);
        let b = JacMonomial::mu_power(1);
        assert_eq!(a.to_string(), "gJ1*gJ3");
        assert_eq!(b.to_string(), "mu");
        assert!(JacMonomial::ONE < JacMonomial::gammas(&[1]));
        assert!(JacMonomial::gammas(&[0]) < JacMonomial::gammas(&[1]));
        let (p, flip) = JacMonomial::gammas(&[1]).mul(&JacMonomial::gammas(&[0])).unwrap();
        assert_eq!(p, JacMonomial::gammas(&[0, 1]));
        assert!(flip);
    }
}
