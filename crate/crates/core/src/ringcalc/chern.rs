//! Chern character of the normal bundle along a reducible, computed from the
//! closed formula and, independently, by pushing the universal bundles
//! through the families index theorem.

use num_bigint::BigInt;
use num_traits::One;

use super::{BigradedClass, CohomologyModel, JacMonomial, RingError, XBasis};
use crate::rational::{binomial, factorial, rat, ratio};
use crate::topology::reduction_indices_from_squares;
use crate::Rational;

/// Inputs for the normal-bundle computations; `χ`, `σ` and the cap are read
/// from the model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChNormalInput {
    pub model: CohomologyModel,
    pub c1t: Vec<i64>,
    pub c1s: Vec<i64>,
    pub r_xi: i64,
}

impl ChNormalInput {
    pub fn new(
        model: CohomologyModel,
        c1t: Vec<i64>,
        c1s: Vec<i64>,
        r_xi: i64,
    ) -> Result<Self, RingError> {
        model.check_h2(&c1t)?;
        model.check_h2(&c1s)?;
        let input = ChNormalInput {
            model,
            c1t,
            c1s,
            r_xi,
        };
        input.indices()?;
        Ok(input)
    }

    /// `c_L = c₁(𝔱) − c₁(𝔰)`.
    pub fn c_l(&self) -> Vec<i64> {
        self.c1t.iter().zip(&self.c1s).map(|(t, s)| t - s).collect()
    }

    /// `2c₁(𝔱) − c₁(𝔰)`.
    pub fn u(&self) -> Vec<i64> {
        self.c1t.iter().zip(&self.c1s).map(|(t, s)| 2 * t - s).collect()
    }

    /// `(n′, n″)`.
    pub fn indices(&self) -> Result<(i64, i64), RingError> {
        let m = &self.model;
        let cl = self.c_l();
        let u = self.u();
        Ok(reduction_indices_from_squares(
            m.pairing(&cl, &cl),
            m.pairing(&u, &u),
            m.chi(),
            m.sigma(),
        )?)
    }
}

/// `c₁(Δ) = Σ γ_i^J × γ_i` and `c₁(𝕃) = μ × 1 + c₁(Δ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalClasses {
    pub c1_delta: BigradedClass,
    pub c1_l: BigradedClass,
}

pub fn universal_classes(model: &CohomologyModel) -> UniversalClasses {
    let mut c1_delta = BigradedClass::zero();
    for i in 0..model.b1() {
        c1_delta.add_term(JacMonomial::gammas(&[i]), XBasis::Gamma(i), Rational::one());
    }
    let c1_l = BigradedClass::mu().add(&c1_delta);
    UniversalClasses { c1_delta, c1_l }
}

fn half(v: &[i64]) -> BigradedClass {
    BigradedClass::h2(&v.iter().map(|&x| ratio(x, 2)).collect::<Vec<_>>())
}

/// `(chE · e^{c₁(W⁺)/2} · Â(X)) / [X]` with `Â(X) = 1 − p₁(X)/24`.
pub fn ch_index_family(
    model: &CohomologyModel,
    ch_e: &BigradedClass,
    c1_wplus: &[i64],
) -> Result<BigradedClass, RingError> {
    model.check_h2(c1_wplus)?;
    let twist = model.exp(&half(c1_wplus))?;
    let a_hat = BigradedClass::one().sub(&CohomologyModel::p1_x().scale(&ratio(1, 24)));
    let integrand = model.mul(&model.mul(ch_e, &twist), &a_hat);
    Ok(model.slant_fundamental(&integrand))
}

/// `r_Ξ − ch(ind D′) + ch(ind D″)` where `D″` is the Dirac operator twisted by
/// `𝕃 ⊗ L` and `D′` the one twisted by `𝕃² ⊗ L ⊗ W⁺*`.
pub fn ch_normal_pipeline(input: &ChNormalInput) -> Result<BigradedClass, RingError> {
    let m = &input.model;
    let c1_l = universal_classes(m).c1_l;
    let line = m.exp(&BigradedClass::h2_int(&input.c_l()))?;
    let c1s = BigradedClass::h2_int(&input.c1s);

    let e_double = m.mul(&m.exp(&c1_l)?, &line);
    let d_double = ch_index_family(m, &e_double, &input.c1s)?;

    let ch_w_dual = BigradedClass::scalar(rat(2))
        .sub(&c1s)
        .add(&CohomologyModel::p1_lambda().add(&m.mul(&c1s, &c1s)).scale(&ratio(1, 4)));
    let e_prime = m.mul(&m.mul(&m.exp(&c1_l.scale(&rat(2)))?, &line), &ch_w_dual);
    let d_prime = ch_index_family(m, &e_prime, &input.c1s)?;

    Ok(m.truncate(
        &BigradedClass::scalar(rat(input.r_xi))
            .sub(&d_prime)
            .add(&d_double),
    ))
}

fn exp_mu(model: &CohomologyModel, a: i64) -> Result<BigradedClass, RingError> {
    model.exp(&BigradedClass::mu().scale(&rat(a)))
}

/// Closed formula:
/// `r + n″e^μ + n′e^{2μ}
///  − 8 Σ_{i<j} Q(g_ij, c_L) e^{2μ} γ^J_iγ^J_j
///  + ½ Σ_{i<j} Q(g_ij, 2c₁(𝔱) − c₁(𝔰)) e^μ γ^J_iγ^J_j
///  + (e^μ − 32e^{2μ}) Σ_{i<j<k<l} q_ijkl γ^J_iγ^J_jγ^J_kγ^J_l`,
/// where a word `γ^J_{i₁}⋯γ^J_{i_k}` stands for `μ(γ_{i₁}⋯γ_{i_k})`, the product
/// in reversed order. In the sorted basis this is a factor [`koszul_sign`].
pub fn ch_normal_direct(input: &ChNormalInput) -> Result<BigradedClass, RingError> {
    let m = &input.model;
    let (np, npp) = input.indices()?;
    let e1 = exp_mu(m, 1)?;
    let e2 = exp_mu(m, 2)?;
    let mut out = BigradedClass::scalar(rat(input.r_xi))
        .add(&e1.scale(&rat(npp)))
        .add(&e2.scale(&rat(np)));
    let (cl, u) = (input.c_l(), input.u());
    let b1 = m.b1();
    let word = |idx: &[usize]| {
        let j = JacMonomial::gammas(idx);
        BigradedClass::term(j, XBasis::One, rat(koszul_sign(&j)))
    };
    for i in 0..b1 {
        for j in (i + 1)..b1 {
            let g = m.cup(i, j);
            let a = m.pairing(g, &cl);
            let b = m.pairing(g, &u);
            let coeff = e2.scale(&rat(-8 * a)).add(&e1.scale(&ratio(b, 2)));
            out = out.add(&m.mul(&coeff, &word(&[i, j])));
        }
    }
    let quartic = e1.sub(&e2.scale(&rat(32)));
    for i in 0..b1 {
        for j in (i + 1)..b1 {
            for k in (j + 1)..b1 {
                for l in (k + 1)..b1 {
                    let q = m.quadruple(i, j, k, l);
                    if q != 0 {
                        out = out.add(&m.mul(&quartic.scale(&rat(q)), &word(&[i, j, k, l])));
                    }
                }
            }
        }
    }
    Ok(m.truncate(&out))
}

/// `(−1)^{k(k−1)/2}` for a monomial with `k` exterior generators, the sign of
/// reversing their order.
pub fn koszul_sign(jac: &JacMonomial) -> i64 {
    let k = jac.gamma_count();
    if (k * k.saturating_sub(1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn graded_parts(a: &BigradedClass, cap: u32) -> Result<Vec<BigradedClass>, RingError> {
    let mut parts = vec![BigradedClass::zero(); cap as usize + 1];
    for (j, x, c) in a.terms() {
        if *x != XBasis::One {
            return Err(RingError::Hypothesis(
                "class has components on the four-manifold side".into(),
            ));
        }
        if j.degree() % 2 == 1 {
            return Err(RingError::Hypothesis(format!("odd-degree component {j}")));
        }
        let k = (j.degree() / 2) as usize;
        if k <= cap as usize {
            parts[k].add_term(*j, XBasis::One, c.clone());
        }
    }
    Ok(parts)
}

/// Product of classes living purely on the left-hand side, truncated at `cap`.
fn jac_mul(a: &BigradedClass, b: &BigradedClass, cap: u32) -> BigradedClass {
    let mut out = BigradedClass::zero();
    for (ja, _, ca) in a.terms() {
        for (jb, _, cb) in b.terms() {
            if ja.degree() + jb.degree() > 2 * cap {
                continue;
            }
            if let Some((j, flip)) = ja.mul(jb) {
                let c = ca * cb;
                out.add_term(j, XBasis::One, if flip { -c } else { c });
            }
        }
    }
    out
}

/// Total Chern class from the Chern character via Newton's identities
/// `c_k = (1/k) Σ_{i=1..k} (−1)^{i−1} c_{k−i} p_i`, `p_i = i!·ch_i`.
pub fn chern_from_character(
    ch: &BigradedClass,
    rank: &Rational,
    cap: u32,
) -> Result<BigradedClass, RingError> {
    let parts = graded_parts(ch, cap)?;
    let c0 = parts[0].jac_coeff(JacMonomial::ONE);
    if &c0 != rank {
        return Err(RingError::Rank {
            rank: rank.to_string(),
            got: c0.to_string(),
        });
    }
    let p: Vec<BigradedClass> = (0..=cap)
        .map(|i| parts[i as usize].scale(&Rational::from_integer(factorial(i))))
        .collect();
    let mut c = vec![BigradedClass::one()];
    for k in 1..=cap as usize {
        let mut acc = BigradedClass::zero();
        for i in 1..=k {
            let term = jac_mul(&c[k - i], &p[i], cap);
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        c.push(acc.scale(&ratio(1, k as i64)));
    }
    Ok(c.iter().fold(BigradedClass::zero(), |a, b| a.add(b)))
}

/// Inverse of [`chern_from_character`]:
/// `p_k = (−1)^{k−1} k c_k + Σ_{i=1..k−1} (−1)^{k−1+i} c_{k−i} p_i`.
pub fn character_from_chern(
    c: &BigradedClass,
    rank: &Rational,
    cap: u32,
) -> Result<BigradedClass, RingError> {
    let parts = graded_parts(c, cap)?;
    let c0 = parts[0].jac_coeff(JacMonomial::ONE);
    if !c0.is_one() {
        return Err(RingError::Rank {
            rank: "1".into(),
            got: c0.to_string(),
        });
    }
    let mut p = vec![BigradedClass::zero()];
    for k in 1..=cap as usize {
        let lead = parts[k].scale(&rat(k as i64));
        let mut acc = if k % 2 == 1 { lead } else { lead.neg() };
        for i in 1..k {
            let term = jac_mul(&parts[k - i], &p[i], cap);
            acc = if (k - 1 + i) % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        p.push(acc);
    }
    let mut ch = BigradedClass::scalar(rank.clone());
    for (k, pk) in p.iter().enumerate().skip(1) {
        ch = ch.add(&pk.scale(&Rational::new(BigInt::one(), factorial(k as u32))));
    }
    Ok(ch)
}

/// `(1 + 2μ)^{n′}(1 + μ)^{n″}` with generalized binomial coefficients.
/// Requires every cup product `γ_iγ_j` to vanish.
pub fn c_normal_closed_form(input: &ChNormalInput) -> Result<BigradedClass, RingError> {
    let m = &input.model;
    for i in 0..m.b1() {
        for j in (i + 1)..m.b1() {
            if m.cup(i, j).iter().any(|&x| x != 0) {
                return Err(RingError::Hypothesis(format!(
                    "γ{}γ{} ≠ 0",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let (np, npp) = input.indices()?;
    Ok(closed_form_polynomial(np, npp, m.cap()))
}

/// Coefficients of `(1 + 2μ)^a (1 + μ)^b` up to `μ^cap`.
pub fn closed_form_polynomial(a: i64, b: i64, cap: u32) -> BigradedClass {
    let mut out = BigradedClass::zero();
    for i in 0..=cap {
        for j in 0..=(cap - i) {
            let c = binomial(a, i) * rat(1 << i) * binomial(b, j);
            out.add_term(JacMonomial::mu_power(i + j), XBasis::One, c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringcalc::CupTable;

    fn k3_like(cap: u32) -> ChNormalInput {
        // Λ² = −6 realized in H as e − 3f; c₁(𝔰) = 0; χ = 24, σ = −16
        let q = vec![vec![0, 1], vec![1, 0]];
        let m = CohomologyModel::new(0, q, &CupTable::new(), cap)
            .unwrap()
            .with_characteristic_numbers(24, -16);
        ChNormalInput::new(m, vec![1, -3], vec![0, 0], 0).unwrap()
    }

    fn mu_poly(coeffs: &[Rational]) -> BigradedClass {
        let mut out = BigradedClass::zero();
        for (k, c) in coeffs.iter().enumerate() {
            out.add_term(JacMonomial::mu_power(k as u32), XBasis::One, c.clone());
        }
        out
    }

    #[test]
    fn k3_normal_character() {
        let input = k3_like(2);
        assert_eq!(input.indices().unwrap(), (2, -1));
        let expected = mu_poly(&[rat(1), rat(3), ratio(7, 2)]);
        assert_eq!(ch_normal_direct(&input).unwrap(), expected);
        assert_eq!(ch_normal_pipeline(&input).unwrap(), expected);
    }

    #[test]
    fn index_family_examples() {
        let m = CohomologyModel::new(0, vec![vec![1, 0], vec![0, -1]], &CupTable::new(), 2)
            .unwrap()
            .with_characteristic_numbers(4, -16);
        assert_eq!(
            ch_index_family(&m, &BigradedClass::one(), &[0, 0]).unwrap(),
            BigradedClass::scalar(rat(2))
        );
        assert!(ch_index_family(&m, &BigradedClass::zero(), &[1, 1])
            .unwrap()
            .is_zero());
        // c = (2, 1): c² = 3, c·c₁ = 1, c₁² = 0, so 3/2 + 1/2 + 0 + 2
        let c = BigradedClass::h2_int(&[2, 1]);
        let che = m.exp(&c).unwrap();
        assert_eq!(
            ch_index_family(&m, &che, &[1, 1]).unwrap(),
            BigradedClass::scalar(rat(4))
        );
    }

    #[test]
    fn pure_rank_constant() {
        // χ = 2, σ = 0, c_L = (0, −1), u = (1, −1): n′ = n″ = 0
        let trivial = ChNormalInput::new(
            CohomologyModel::new(0, vec![vec![1, 0], vec![0, -1]], &CupTable::new(), 3)
                .unwrap()
                .with_characteristic_numbers(2, 0),
            vec![1, 0],
            vec![1, 1],
            5,
        )
        .unwrap();
        assert_eq!(trivial.indices().unwrap(), (0, 0));
        assert_eq!(ch_normal_direct(&trivial).unwrap(), BigradedClass::scalar(rat(5)));
        assert_eq!(ch_normal_pipeline(&trivial).unwrap(), BigradedClass::scalar(rat(5)));
    }

    #[test]
    fn cup_orthogonal_to_classes_gives_b1_zero_answer() {
        let q = vec![
            vec![0, 1, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 0],
        ];
        let mut cups = CupTable::new();
        cups.insert((0, 1), vec![0, 0, 1, 0]);
        let m = CohomologyModel::new(2, q.clone(), &cups, 3).unwrap();
        let with = ChNormalInput::new(m.clone(), vec![1, -3, 2, 0], vec![0, 0, 2, 0], 1).unwrap();
        let bare = ChNormalInput::new(
            CohomologyModel::new(0, q, &CupTable::new(), 3)
                .unwrap()
                .with_characteristic_numbers(m.chi(), m.sigma()),
            vec![1, -3, 2, 0],
            vec![0, 0, 2, 0],
            1,
        )
        .unwrap();
        assert_eq!(ch_normal_direct(&with).unwrap(), ch_normal_direct(&bare).unwrap());
    }

    #[test]
    fn newton_identities() {
        let ch = mu_poly(&[rat(2), rat(5)]);
        let c = chern_from_character(&ch, &rat(2), 1).unwrap();
        assert_eq!(c.jac_coeff(JacMonomial::mu_power(1)), rat(5));
        assert!(matches!(
            chern_from_character(&ch, &rat(3), 1),
            Err(RingError::Rank { .. })
        ));

        let input = k3_like(4);
        let ch = ch_normal_direct(&input).unwrap();
        // rank r + n′ + n″ = 0 + 2 − 1
        let c = chern_from_character(&ch, &rat(1), 4).unwrap();
        assert_eq!(c, closed_form_polynomial(2, -1, 4));
        assert_eq!(c, c_normal_closed_form(&input).unwrap());
        assert_eq!(character_from_chern(&c, &rat(1), 4).unwrap(), ch);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            closed_form_polynomial(2, -1, 2),
            mu_poly(&[rat(1), rat(3), rat(1)])
        );
        assert_eq!(closed_form_polynomial(0, 0, 3), BigradedClass::one());
        assert_eq!(closed_form_polynomial(1, 0, 3), mu_poly(&[rat(1), rat(2)]));
    }

    #[test]
    fn universal_class_slants() {
        let mut cups = CupTable::new();
        cups.insert((0, 1), vec![0, 0]);
        let m = CohomologyModel::new(2, vec![vec![0, 1], vec![1, 0]], &cups, 2).unwrap();
        let u = universal_classes(&m);
        assert_eq!(u.c1_delta.len(), 2);
        assert_eq!(m.slant_point(&u.c1_l), BigradedClass::mu());
        assert_eq!(m.slant_one_cycle(&u.c1_l, 1), m.gamma_j(1));
        let m0 = CohomologyModel::new(0, vec![vec![1]], &CupTable::new(), 2).unwrap();
        let u0 = universal_classes(&m0);
        assert!(u0.c1_delta.is_zero());
        assert_eq!(u0.c1_l, BigradedClass::mu());
    }

    #[test]
    fn routes_agree_with_exterior_terms() {
        // H³ with γ1γ2 = e1, γ3γ4 = f1, γ1γ3 = e2, γ2γ4 = −f2, γ1γ4 = e3, γ2γ3 = f3
        let mut q = vec![vec![0i64; 6]; 6];
        for b in 0..3 {
            q[2 * b][2 * b + 1] = 1;
            q[2 * b + 1][2 * b] = 1;
        }
        let unit = |k: usize, s: i64| {
            let mut v = vec![0i64; 6];
            v[k] = s;
            v
        };
        let mut cups = CupTable::new();
        cups.insert((0, 1), unit(0, 1));
        cups.insert((2, 3), unit(1, 1));
        cups.insert((0, 2), unit(2, 1));
        cups.insert((1, 3), unit(3, -1));
        cups.insert((0, 3), unit(4, 1));
        cups.insert((1, 2), unit(5, 1));
        let m = CohomologyModel::new(4, q, &cups, 4).unwrap();
        let input = ChNormalInput::new(m, vec![1, 2, 0, -1, 3, 1], vec![2, 0, 0, 2, 0, 4], 3).unwrap();
        let direct = ch_normal_direct(&input).unwrap();
        let pipeline = ch_normal_pipeline(&input).unwrap();
        assert!(direct.terms().any(|(j, _, _)| j.gamma_count() == 4));
        assert!(direct.terms().any(|(j, _, _)| j.gamma_count() == 2));
        assert_eq!(pipeline, direct);
    }
}
