//! Truncated multivariate power series over ℚ.
//!
//! A series in variables `h₁…h_n` with cap `δ` stores every monomial of total
//! degree `≤ δ`; products drop anything above. Zero coefficients are never
//! stored, so structural equality is coefficient equality.

mod sw;

pub use sw::{
    blowup_congruence_suite, blowup_context, blowup_donaldson, sw_series, witten_rhs,
    SeriesContext, StageOutcome, SuiteReport,
};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{rat, ratio};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("variable sets differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("exp needs zero constant term, got {0}")]
    Domain(String),
    #[error("parity error: {0}")]
    Parity(String),
    #[error("expected length {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("cap {cap} is below the required degree {needed}")]
    CapTooSmall { cap: u32, needed: u32 },
    #[error("basic class {0} carries no Seiberg-Witten value")]
    MissingValue(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    vars: Vec<String>,
    cap: u32,
    terms: BTreeMap<Vec<u32>, Rational>,
}

/// Least total degree carrying a nonzero coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VanishingOrder {
    Order(u32),
    /// Every coefficient up to the cap vanishes.
    CapExceeded,
}

/// Outcome of comparing two series below a degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Congruence {
    pub holds: bool,
    pub first_difference: Option<Vec<u32>>,
}

fn total(idx: &[u32]) -> u32 {
    idx.iter().sum()
}

/// Default names `h1, …, hn`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("h{i}")).collect()
}

impl TruncatedSeries {
    pub fn zero(vars: Vec<String>, cap: u32) -> Self {
        TruncatedSeries {
            vars,
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn with_vars(n: usize, cap: u32) -> Self {
        TruncatedSeries::zero(default_names(n), cap)
    }

    pub fn constant(vars: Vec<String>, cap: u32, c: Rational) -> Self {
        let n = vars.len();
        let mut s = TruncatedSeries::zero(vars, cap);
        s.add_term(vec![0; n], c);
        s
    }

    pub fn one(vars: Vec<String>, cap: u32) -> Self {
        TruncatedSeries::constant(vars, cap, Rational::one())
    }

    pub fn variable(vars: Vec<String>, cap: u32, i: usize) -> Self {
        let mut idx = vec![0; vars.len()];
        idx[i] = 1;
        let mut s = TruncatedSeries::zero(vars, cap);
        s.add_term(idx, Rational::one());
        s
    }

    /// `Σ a_i h_i`.
    pub fn linear_form(vars: Vec<String>, cap: u32, a: &[Rational]) -> Result<Self, SeriesError> {
        if a.len() != vars.len() {
            return Err(SeriesError::Dimension {
                expected: vars.len(),
                got: a.len(),
            });
        }
        let n = vars.len();
        let mut s = TruncatedSeries::zero(vars, cap);
        for (i, c) in a.iter().enumerate() {
            let mut idx = vec![0; n];
            idx[i] = 1;
            s.add_term(idx, c.clone());
        }
        Ok(s)
    }

    /// `½ Σ_{i,j} Q_ij h_i h_j`.
    pub fn half_quadratic_form(
        vars: Vec<String>,
        cap: u32,
        q: &[Vec<i64>],
    ) -> Result<Self, SeriesError> {
        let n = vars.len();
        if q.len() != n || q.iter().any(|r| r.len() != n) {
            return Err(SeriesError::Dimension {
                expected: n,
                got: q.len(),
            });
        }
        let mut s = TruncatedSeries::zero(vars, cap);
        for i in 0..n {
            for j in 0..n {
                let mut idx = vec![0; n];
                idx[i] += 1;
                idx[j] += 1;
                s.add_term(idx, ratio(q[i][j], 2));
            }
        }
        Ok(s)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn add_term(&mut self, idx: Vec<u32>, c: Rational) {
        if c.is_zero() || total(&idx) > self.cap {
            return;
        }
        let entry = self.terms.entry(idx.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn coeff(&self, idx: &[u32]) -> Rational {
        self.terms.get(idx).cloned().unwrap_or_else(Rational::zero)
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

    /// Terms ordered by total degree, then lexicographically.
    pub fn sorted_terms(&self) -> Vec<(Vec<u32>, Rational)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        v.sort_by(|a, b| total(&a.0).cmp(&total(&b.0)).then_with(|| a.0.cmp(&b.0)));
        v
    }

    fn check_vars(&self, other: &TruncatedSeries) -> Result<(), SeriesError> {
        if self.vars != other.vars {
            return Err(SeriesError::VariableMismatch(
                self.vars.clone(),
                other.vars.clone(),
            ));
        }
        Ok(())
    }

    /// Result cap is the smaller of the two.
    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_vars(other)?;
        let mut out = self.with_cap(self.cap.min(other.cap));
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, r: &Rational) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.vars.clone(), self.cap);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * r);
        }
        out
    }

    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_vars(other)?;
        let cap = self.cap.min(other.cap);
        let mut out = TruncatedSeries::zero(self.vars.clone(), cap);
        for (ka, ca) in &self.terms {
            let da = total(ka);
            for (kb, cb) in &other.terms {
                if da + total(kb) > cap {
                    continue;
                }
                let idx: Vec<u32> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                out.add_term(idx, ca * cb);
            }
        }
        Ok(out)
    }

    /// Drops terms above `cap` (raising the cap adds nothing).
    pub fn with_cap(&self, cap: u32) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.vars.clone(), cap);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    /// Appends a variable on which the series does not depend.
    pub fn extend_vars(&self, name: impl Into<String>) -> TruncatedSeries {
        let mut vars = self.vars.clone();
        vars.push(name.into());
        let mut out = TruncatedSeries::zero(vars, self.cap);
        for (k, c) in &self.terms {
            let mut k = k.clone();
            k.push(0);
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars()])
    }

    pub fn exp(&self) -> Result<TruncatedSeries, SeriesError> {
        let c0 = self.constant_term();
        if !c0.is_zero() {
            return Err(SeriesError::Domain(c0.to_string()));
        }
        let mut out = TruncatedSeries::one(self.vars.clone(), self.cap);
        let mut power = out.clone();
        for k in 1..=self.cap as i64 {
            power = power.mul(self)?.scale(&ratio(1, k));
            if power.is_zero() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// Odd part of `exp`.
    pub fn sinh(&self) -> Result<TruncatedSeries, SeriesError> {
        let e = self.exp()?;
        let em = self.scale(&rat(-1)).exp()?;
        Ok(e.sub(&em)?.scale(&ratio(1, 2)))
    }

    pub fn vanishing_order(&self) -> VanishingOrder {
        self.terms
            .keys()
            .map(|k| total(k))
            .min()
            .map_or(VanishingOrder::CapExceeded, VanishingOrder::Order)
    }
}

/// `a ≡ b mod h^δ`: all coefficients of total degree `< δ` agree.
pub fn congruence_check(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    delta: u32,
) -> Result<Congruence, SeriesError> {
    a.check_vars(b)?;
    let mut keys: Vec<&Vec<u32>> = a.terms.keys().chain(b.terms.keys()).collect();
    keys.sort_by(|x, y| total(x).cmp(&total(y)).then_with(|| x.cmp(y)));
    keys.dedup();
    let first = keys
        .into_iter()
        .filter(|k| total(k) < delta)
        .find(|k| a.coeff(k) != b.coeff(k))
        .cloned();
    Ok(Congruence {
        holds: first.is_none(),
        first_difference: first,
    })
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O(h^{})", self.cap + 1);
        }
        let mut parts = Vec::new();
        for (idx, c) in self.sorted_terms() {
            let mono: Vec<String> = idx
                .iter()
                .zip(&self.vars)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if mono.is_empty() {
                parts.push(format!("{c}"));
            } else {
                parts.push(format!("({c})·{}", mono.join("·")));
            }
        }
        write!(f, "{} + O(h^{})", parts.join(" + "), self.cap + 1)
    }
}
