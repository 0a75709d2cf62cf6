use serde::{Deserialize, Serialize};

use super::{congruence_check, default_names, SeriesError, TruncatedSeries};
use crate::lattice::{IntegerLattice, LatticeVector};
use crate::rational::{pow2, rat, ratio};
use crate::topology::SWDatum;

/// Data entering the Seiberg-Witten and Witten series.
///
/// `h` is a point of `H₂` written in the lattice basis, so `⟨K,h⟩ = Q(K,h)` and
/// `Q(h,h)` is the form itself.
#[derive(Debug, Clone)]
pub struct SeriesContext {
    pub form: IntegerLattice,
    pub w: LatticeVector,
    pub sw_data: Vec<SWDatum>,
    pub cap: u32,
    pub c_x: i64,
}

impl SeriesContext {
    pub fn new(
        form: IntegerLattice,
        w: impl Into<LatticeVector>,
        sw_data: Vec<SWDatum>,
        cap: u32,
        c_x: i64,
    ) -> Result<Self, SeriesError> {
        let w = w.into();
        let n = form.rank();
        if w.len() != n {
            return Err(SeriesError::Dimension {
                expected: n,
                got: w.len(),
            });
        }
        for d in &sw_data {
            if d.basic_class.len() != n {
                return Err(SeriesError::Dimension {
                    expected: n,
                    got: d.basic_class.len(),
                });
            }
            if d.sw_value.is_none() {
                return Err(SeriesError::MissingValue(d.basic_class.to_string()));
            }
        }
        let ctx = SeriesContext {
            form,
            w,
            sw_data,
            cap,
            c_x,
        };
        for d in &ctx.sw_data {
            ctx.sign(&d.basic_class)?;
        }
        Ok(ctx)
    }

    pub fn vars(&self) -> Vec<String> {
        default_names(self.form.rank())
    }

    /// `(−1)^{(w² + K·w)/2}`.
    pub fn sign(&self, k: &LatticeVector) -> Result<i64, SeriesError> {
        let e = self.form.square(&self.w) + self.form.pairing(k, &self.w);
        if e.rem_euclid(2) != 0 {
            return Err(SeriesError::Parity(format!(
                "w² + K·w = {e} is odd for K = {k}"
            )));
        }
        Ok(if (e / 2).rem_euclid(2) == 0 { 1 } else { -1 })
    }

    fn pairing_form(&self, k: &LatticeVector) -> TruncatedSeries {
        let coeffs: Vec<_> = self.form.covector(k).into_iter().map(rat).collect();
        TruncatedSeries::linear_form(self.vars(), self.cap, &coeffs)
            .expect("covector length matches rank")
    }

    fn half_square(&self) -> TruncatedSeries {
        TruncatedSeries::half_quadratic_form(self.vars(), self.cap, self.form.gram())
            .expect("gram is square")
    }
}

/// `Σ_K (−1)^{(w²+K·w)/2} SW(K) exp⟨K,h⟩`.
pub fn sw_series(ctx: &SeriesContext) -> Result<TruncatedSeries, SeriesError> {
    let mut out = TruncatedSeries::zero(ctx.vars(), ctx.cap);
    for d in &ctx.sw_data {
        let value = d
            .sw_value
            .ok_or_else(|| SeriesError::MissingValue(d.basic_class.to_string()))?;
        let coeff = rat(ctx.sign(&d.basic_class)? * value);
        out = out.add(&ctx.pairing_form(&d.basic_class).exp()?.scale(&coeff))?;
    }
    Ok(out)
}

/// `2^{2−c} exp(Q(h,h)/2) · sw_series`.
pub fn witten_rhs(ctx: &SeriesContext) -> Result<TruncatedSeries, SeriesError> {
    let sw = sw_series(ctx)?;
    Ok(ctx.half_square().exp()?.mul(&sw)?.scale(&pow2(2 - ctx.c_x)))
}

/// `−d · exp(−½ℓ²) · sinh(ℓ)` with `ℓ = e·e · h_e`, `h_e` the last variable.
///
/// The result carries one more degree than `d`, which it determines exactly.
pub fn blowup_donaldson(d: &TruncatedSeries, e_self: i64) -> TruncatedSeries {
    let cap = d.cap() + 1;
    let vars = d.vars().to_vec();
    let last = vars.len() - 1;
    let ell = TruncatedSeries::variable(vars, cap, last).scale(&rat(e_self));
    let gauss = ell
        .mul(&ell)
        .and_then(|sq| sq.scale(&ratio(-1, 2)).exp())
        .expect("ℓ² has no constant term");
    let sinh = ell.sinh().expect("ℓ has no constant term");
    d.with_cap(cap)
        .mul(&gauss)
        .and_then(|x| x.mul(&sinh))
        .map(|x| x.scale(&rat(-1)))
        .expect("shared variable set")
}

/// Blown-up data: `Q ⊕ ⟨−1⟩`, classes `K ± e` with the parent value, `w + e`, `c + 1`.
pub fn blowup_context(ctx: &SeriesContext) -> Result<SeriesContext, SeriesError> {
    let mut sw_data = Vec::with_capacity(2 * ctx.sw_data.len());
    for d in &ctx.sw_data {
        for s in [1, -1] {
            sw_data.push(SWDatum {
                basic_class: d.basic_class.extended(s),
                sw_value: d.sw_value,
                convention: d.convention.clone(),
            });
        }
    }
    SeriesContext::new(
        ctx.form.extended_by(-1),
        ctx.w.extended(1),
        sw_data,
        ctx.cap + 1,
        ctx.c_x + 1,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageOutcome {
    pub holds: bool,
    /// Degree of the congruence tested.
    pub modulus: u32,
    pub first_failure: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub precondition: StageOutcome,
    pub vanishing: Option<StageOutcome>,
    pub witten: Option<StageOutcome>,
    pub passed: bool,
}

fn stage(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    modulus: u32,
) -> Result<StageOutcome, SeriesError> {
    let c = congruence_check(a, b, modulus)?;
    Ok(StageOutcome {
        holds: c.holds,
        modulus,
        first_failure: c.first_difference,
    })
}

fn modulus(m: i64) -> u32 {
    m.max(0) as u32
}

/// Checks the blow-up relations for a Donaldson series `d` known modulo `h^c`.
///
/// Stage (i) asks that the blown-up Donaldson and SW series vanish modulo
/// `h^{c−1}`; stage (ii) compares the blown-up Donaldson series with the blown-up
/// Witten side modulo `h^{c+1}`. When `d` does not match `witten_rhs` modulo `h^c`
/// the later stages are skipped. Both caps must reach `c`.
pub fn blowup_congruence_suite(
    ctx: &SeriesContext,
    d: &TruncatedSeries,
) -> Result<SuiteReport, SeriesError> {
    let c = modulus(ctx.c_x);
    if ctx.cap < c || d.cap() < c {
        return Err(SeriesError::CapTooSmall {
            cap: ctx.cap.min(d.cap()),
            needed: c,
        });
    }
    let rhs = witten_rhs(ctx)?;
    let precondition = stage(d, &rhs, c)?;
    if !precondition.holds {
        return Ok(SuiteReport {
            precondition,
            vanishing: None,
            witten: None,
            passed: false,
        });
    }
    let blown = blowup_context(ctx)?;
    let name = format!("h{}", ctx.form.rank() + 1);
    let dt = blowup_donaldson(&d.extend_vars(name), -1);
    let swt = sw_series(&blown)?;
    let zero = TruncatedSeries::zero(dt.vars().to_vec(), dt.cap());

    let lower = modulus(ctx.c_x - 1);
    let v1 = stage(&dt, &zero, lower)?;
    let v2 = stage(&swt, &zero, lower)?;
    let vanishing = if v1.holds { v2 } else { v1 };
    let witten = stage(&dt, &witten_rhs(&blown)?, c + 1)?;
    let passed = vanishing.holds && witten.holds;
    Ok(SuiteReport {
        precondition,
        vanishing: Some(vanishing),
        witten: Some(witten),
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_standard_lattice, StandardFormDescriptor};
    use crate::series::VanishingOrder;

    fn one_dim(q: i64, classes: Vec<SWDatum>, cap: u32, c_x: i64) -> SeriesContext {
        SeriesContext::new(IntegerLattice::diagonal(&[q]).unwrap(), vec![0], classes, cap, c_x)
            .unwrap()
    }

    #[test]
    fn single_class_is_an_exponential() {
        let ctx = one_dim(1, vec![SWDatum::new(vec![2], 1)], 2, 2);
        let s = sw_series(&ctx).unwrap();
        assert_eq!(s.coeff(&[0]), rat(1));
        assert_eq!(s.coeff(&[1]), rat(2));
        assert_eq!(s.coeff(&[2]), rat(2));
        assert!(sw_series(&one_dim(1, vec![], 2, 2)).unwrap().is_zero());
    }

    #[test]
    fn opposite_classes_give_even_series() {
        let ctx = one_dim(
            -1,
            vec![SWDatum::new(vec![3], 2), SWDatum::new(vec![-3], 2)],
            6,
            2,
        );
        let s = sw_series(&ctx).unwrap();
        for (idx, _) in s.sorted_terms() {
            assert_eq!(idx[0] % 2, 0);
        }
    }

    #[test]
    fn parity_error_for_noncharacteristic_data() {
        let err = SeriesContext::new(
            IntegerLattice::diagonal(&[1]).unwrap(),
            vec![1],
            vec![SWDatum::new(vec![0], 1)],
            2,
            2,
        );
        assert!(matches!(err, Err(SeriesError::Parity(_))));
        let missing = SeriesContext::new(
            IntegerLattice::diagonal(&[1]).unwrap(),
            vec![0],
            vec![SWDatum::direction(vec![1])],
            2,
            2,
        );
        assert!(matches!(missing, Err(SeriesError::MissingValue(_))));
    }

    #[test]
    fn witten_side_scales_with_c() {
        let ctx2 = one_dim(-1, vec![SWDatum::new(vec![1], 1)], 4, 2);
        let ctx3 = SeriesContext { c_x: 3, ..ctx2.clone() };
        let r2 = witten_rhs(&ctx2).unwrap();
        assert_eq!(witten_rhs(&ctx3).unwrap(), r2.scale(&ratio(1, 2)));
        let bare = one_dim(-1, vec![SWDatum::new(vec![0], 1)], 4, 2);
        let expected = TruncatedSeries::half_quadratic_form(bare.vars(), 4, bare.form.gram())
            .unwrap()
            .exp()
            .unwrap();
        assert_eq!(witten_rhs(&bare).unwrap(), expected);
    }

    #[test]
    fn blowup_raises_order_by_one() {
        let vars = default_names(2);
        assert!(blowup_donaldson(&TruncatedSeries::zero(vars.clone(), 3), -1).is_zero());
        let mut d = TruncatedSeries::zero(vars, 4);
        d.add_term(vec![1, 1], rat(3));
        d.add_term(vec![2, 1], rat(1));
        let b = blowup_donaldson(&d, -1);
        assert_eq!(b.vanishing_order(), VanishingOrder::Order(3));
        assert_eq!(b.coeff(&[1, 2]), rat(3));
        assert_eq!(b.cap(), 5);
    }

    fn k3_like(cap: u32) -> SeriesContext {
        let q = build_standard_lattice(&StandardFormDescriptor::Even {
            e8_count: 0,
            h_count: 1,
        });
        SeriesContext::new(q, vec![0, 0], vec![SWDatum::new(vec![0, 0], 1)], cap, 2).unwrap()
    }

    #[test]
    fn suite_passes_on_consistent_data() {
        let ctx = k3_like(3);
        let d = witten_rhs(&ctx).unwrap();
        let report = blowup_congruence_suite(&ctx, &d).unwrap();
        assert!(report.passed, "{report:?}");

        let empty = SeriesContext { sw_data: vec![], ..ctx.clone() };
        let zero = TruncatedSeries::zero(ctx.vars(), 3);
        assert!(blowup_congruence_suite(&empty, &zero).unwrap().passed);
    }

    #[test]
    fn suite_locates_a_perturbed_value() {
        let ctx = k3_like(3);
        let d = witten_rhs(&ctx).unwrap();
        let bad = SeriesContext {
            sw_data: vec![SWDatum::new(vec![0, 0], 2)],
            ..ctx
        };
        let report = blowup_congruence_suite(&bad, &d).unwrap();
        assert!(!report.passed);
        assert_eq!(report.precondition.first_failure, Some(vec![0, 0]));
        assert!(report.witten.is_none());
    }
}
