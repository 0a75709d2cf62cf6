//! Bounded brute-force search for hyperbolic pairs `(e, f)` with
//! `e² = f² = 0`, `e·f = 1`, `e·κ = f·κ = 0`.
//!
//! Vectors are ordered by `(max-norm, lexicographic coefficients)`; pairs by
//! `(max(|e|∞, |f|∞), e, f)`. The first pair in that order is returned, both
//! in serial and parallel mode.
//!
//! Enumeration is a depth-first walk over the coefficient box with interval
//! pruning. The quadratic form is rewritten (exactly, over ℚ) as a sum of
//! weighted squares and products of linear forms, each of which only depends
//! on coordinates fixed earlier in the walk; a branch is cut as soon as the
//! interval of attainable `v²` or `v·κ` excludes zero. On definite summands
//! this collapses the walk to the single branch that keeps the summand zero.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{IntegerLattice, LatticeError, LatticeVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { parallel: true }
    }
}

/// An explicit isotropic pair spanning a copy of `H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperbolicCertificate {
    pub e: LatticeVector,
    pub f: LatticeVector,
}

impl HyperbolicCertificate {
    /// Re-checks every Gram identity; with `kappa`, also orthogonality to it.
    pub fn verify(
        &self,
        l: &IntegerLattice,
        kappa: Option<&LatticeVector>,
    ) -> Result<(), LatticeError> {
        l.check_dimension(&self.e)?;
        l.check_dimension(&self.f)?;
        let (ee, ff, ef) = (l.square(&self.e), l.square(&self.f), l.pairing(&self.e, &self.f));
        if ee != 0 || ff != 0 || ef != 1 {
            return Err(LatticeError::Certificate(format!(
                "e²={ee}, f²={ff}, e·f={ef}"
            )));
        }
        if let Some(k) = kappa {
            l.check_dimension(k)?;
            let (ek, fk) = (l.pairing(&self.e, k), l.pairing(&self.f, k));
            if ek != 0 || fk != 0 {
                return Err(LatticeError::Certificate(format!("e·κ={ek}, f·κ={fk}")));
            }
        }
        Ok(())
    }
}

/// `(max-norm, lexicographic)` order on coefficient vectors.
pub fn vector_order(a: &LatticeVector, b: &LatticeVector) -> Ordering {
    a.max_norm().cmp(&b.max_norm()).then_with(|| a.0.cmp(&b.0))
}

pub fn search_hyperbolic_pair(
    l: &IntegerLattice,
    kappa: &LatticeVector,
    bound: u32,
) -> Result<Option<HyperbolicCertificate>, LatticeError> {
    search_hyperbolic_pair_with(l, kappa, bound, SearchOptions::default())
}

pub fn search_hyperbolic_pair_with(
    l: &IntegerLattice,
    kappa: &LatticeVector,
    bound: u32,
    opts: SearchOptions,
) -> Result<Option<HyperbolicCertificate>, LatticeError> {
    let list = isotropic_vectors(l, kappa, bound, opts)?;
    for shell in 1..=bound as i64 {
        let end = list.partition_point(|v| v.max_norm() <= shell);
        let cands = &list[..end];
        let partner = |e: &LatticeVector| -> Option<(LatticeVector, LatticeVector)> {
            let ce = l.covector(e);
            let e_on_shell = e.max_norm() == shell;
            cands
                .iter()
                .find(|f| (e_on_shell || f.max_norm() == shell) && dot(&ce, f) == 1)
                .map(|f| (e.clone(), f.clone()))
        };
        let hit = if opts.parallel {
            cands.par_iter().find_map_first(partner)
        } else {
            cands.iter().find_map(partner)
        };
        if let Some((e, f)) = hit {
            let cert = HyperbolicCertificate { e, f };
            cert.verify(l, Some(kappa))?;
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

fn dot(cov: &[i64], v: &LatticeVector) -> i128 {
    cov.iter()
        .zip(&v.0)
        .map(|(a, b)| *a as i128 * *b as i128)
        .sum()
}

/// All nonzero `v` with `|v|∞ ≤ bound`, `v² = 0`, `v·κ = 0`, sorted by
/// [`vector_order`].
pub fn isotropic_vectors(
    l: &IntegerLattice,
    kappa: &LatticeVector,
    bound: u32,
    opts: SearchOptions,
) -> Result<Vec<LatticeVector>, LatticeError> {
    l.check_dimension(kappa)?;
    let walker = Walker::new(l, kappa, bound as i64);
    let b = bound as i64;
    let mut found: Vec<LatticeVector> = if opts.parallel {
        (-b..=b)
            .into_par_iter()
            .flat_map_iter(|first| walker.walk_from(first))
            .collect()
    } else {
        (-b..=b).flat_map(|first| walker.walk_from(first)).collect()
    };
    found.sort_by(vector_order);
    Ok(found)
}

#[derive(Debug, Clone)]
enum Term {
    /// `w · (a·v)²`
    Square { w: i128, a: usize },
    /// `w · (a·v)(b·v)`
    Product { w: i128, a: usize, b: usize },
}

/// Scaled decomposition `D · v² = Σ terms(v)` with integer weights and forms.
#[derive(Debug, Clone)]
struct Decomposition {
    order: Vec<usize>,
    forms: Vec<Vec<i64>>,
    terms: Vec<Term>,
    #[cfg_attr(not(test), allow(dead_code))]
    scale: BigInt,
    usable: bool,
}

fn lcm_denoms<'a>(it: impl Iterator<Item = &'a BigRational>) -> BigInt {
    it.fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

fn integer_form(row: &[BigRational]) -> Option<(Vec<i64>, BigInt)> {
    let den = lcm_denoms(row.iter());
    let form = row
        .iter()
        .map(|r| (r * BigRational::from_integer(den.clone())).to_integer().to_i64())
        .collect::<Option<Vec<_>>>()?;
    Some((form, den))
}

fn decompose(gram: &[Vec<i64>]) -> Decomposition {
    let n = gram.len();
    let mut m: Vec<Vec<BigRational>> = gram
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let mut alive = vec![true; n];
    let mut elim = Vec::with_capacity(n);
    // (weight, forms) before integer scaling
    let mut raw: Vec<(BigRational, Vec<Vec<BigRational>>)> = Vec::new();

    while elim.len() < n {
        let live: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
        if let Some(&p) = live.iter().find(|&&p| !m[p][p].is_zero()) {
            let piv = m[p][p].clone();
            raw.push((piv.recip(), vec![m[p].clone()]));
            let row = m[p].clone();
            for &j in &live {
                for &k in &live {
                    if !row[j].is_zero() && !row[k].is_zero() {
                        let v = &row[j] * &row[k] / &piv;
                        m[j][k] -= v;
                    }
                }
            }
            alive[p] = false;
            elim.push(p);
            continue;
        }
        let pair = live
            .iter()
            .flat_map(|&p| live.iter().map(move |&q| (p, q)))
            .find(|&(p, q)| p < q && !m[p][q].is_zero());
        match pair {
            Some((p, q)) => {
                let b = m[p][q].clone();
                let (rp, rq) = (m[p].clone(), m[q].clone());
                raw.push((BigRational::from_integer(2.into()) / &b, vec![rp.clone(), rq.clone()]));
                for &j in &live {
                    for &k in &live {
                        if j == p || j == q || k == p || k == q {
                            continue;
                        }
                        let v = (&rp[j] * &rq[k] + &rq[j] * &rp[k]) / &b;
                        if !v.is_zero() {
                            m[j][k] -= v;
                        }
                    }
                }
                for &j in &live {
                    for idx in [p, q] {
                        m[j][idx] = BigRational::zero();
                        m[idx][j] = BigRational::zero();
                    }
                }
                alive[p] = false;
                alive[q] = false;
                elim.push(p);
                elim.push(q);
            }
            None => {
                // remaining block vanishes identically
                elim.extend(live);
            }
        }
    }

    let order: Vec<usize> = elim.into_iter().rev().collect();
    let mut forms = Vec::new();
    let mut weighted: Vec<(BigRational, Vec<usize>)> = Vec::new();
    let mut usable = true;
    for (w, rows) in raw {
        let mut w = w;
        let mut idx = Vec::new();
        // a square term uses its form twice
        let uses = if rows.len() == 1 { 2 } else { 1 };
        for row in rows {
            match integer_form(&row) {
                Some((form, den)) => {
                    w /= BigRational::from_integer(num_traits::pow(den, uses));
                    idx.push(forms.len());
                    forms.push(form);
                }
                None => usable = false,
            }
        }
        weighted.push((w, idx));
    }
    let d = lcm_denoms(weighted.iter().map(|(w, _)| w));
    let mut terms = Vec::new();
    for (w, idx) in weighted {
        if !usable {
            break;
        }
        let Some(wi) = (w * BigRational::from_integer(d.clone())).to_integer().to_i128() else {
            usable = false;
            break;
        };
        terms.push(match idx.as_slice() {
            [a] => Term::Square { w: wi, a: *a },
            [a, b] => Term::Product { w: wi, a: *a, b: *b },
            _ => unreachable!(),
        });
    }
    Decomposition {
        order,
        forms,
        terms,
        scale: d,
        usable,
    }
}

struct Walker<'a> {
    lattice: &'a IntegerLattice,
    kappa_cov: Vec<i64>,
    bound: i64,
    dec: Decomposition,
    /// suffix[f][d] = Σ_{t ≥ d} |forms[f][order[t]]|
    suffix: Vec<Vec<i128>>,
    kappa_suffix: Vec<i128>,
}

impl<'a> Walker<'a> {
    fn new(lattice: &'a IntegerLattice, kappa: &LatticeVector, bound: i64) -> Self {
        let dec = decompose(lattice.gram());
        let n = lattice.rank();
        let suffix_of = |coeffs: &[i64]| {
            let mut s = vec![0i128; n + 1];
            for d in (0..n).rev() {
                s[d] = s[d + 1] + (coeffs[dec.order[d]] as i128).abs();
            }
            s
        };
        let suffix = dec.forms.iter().map(|f| suffix_of(f)).collect();
        let kappa_cov = lattice.covector(kappa);
        let kappa_suffix = suffix_of(&kappa_cov);
        Walker {
            lattice,
            kappa_cov,
            bound,
            dec,
            suffix,
            kappa_suffix,
        }
    }

    fn walk_from(&self, first: i64) -> Vec<LatticeVector> {
        let n = self.lattice.rank();
        let mut state = WalkState {
            v: vec![0; n],
            partial: vec![0; self.dec.forms.len()],
            kappa_partial: 0,
            out: Vec::new(),
        };
        self.assign(&mut state, 0, first);
        if self.feasible(&state, 1) {
            self.descend(&mut state, 1);
        }
        state.out
    }

    fn assign(&self, st: &mut WalkState, depth: usize, value: i64) {
        let c = self.dec.order[depth];
        let delta = value - st.v[c];
        st.v[c] = value;
        for (p, f) in st.partial.iter_mut().zip(&self.dec.forms) {
            *p += f[c] as i128 * delta as i128;
        }
        st.kappa_partial += self.kappa_cov[c] as i128 * delta as i128;
    }

    fn descend(&self, st: &mut WalkState, depth: usize) {
        let n = self.lattice.rank();
        if depth == n {
            let v = LatticeVector(st.v.clone());
            if !v.is_zero() && self.lattice.square(&v) == 0 && st.kappa_partial == 0 {
                st.out.push(v);
            }
            return;
        }
        for value in -self.bound..=self.bound {
            self.assign(st, depth, value);
            if self.feasible(st, depth + 1) {
                self.descend(st, depth + 1);
            }
        }
        self.assign(st, depth, 0);
    }

    /// Can the coordinates `order[depth..]` still be chosen so that `v² = 0`
    /// and `v·κ = 0`?
    fn feasible(&self, st: &WalkState, depth: usize) -> bool {
        let b = self.bound as i128;
        let kr = self.kappa_suffix[depth] * b;
        if st.kappa_partial - kr > 0 || st.kappa_partial + kr < 0 {
            return false;
        }
        if !self.dec.usable {
            return true;
        }
        self.quadratic_interval(st, depth, b)
            .is_none_or(|(lo, hi)| lo <= 0 && hi >= 0)
    }

    fn quadratic_interval(&self, st: &WalkState, depth: usize, b: i128) -> Option<(i128, i128)> {
        let range = |f: usize| -> Option<(i128, i128)> {
            let r = self.suffix[f][depth].checked_mul(b)?;
            Some((st.partial[f].checked_sub(r)?, st.partial[f].checked_add(r)?))
        };
        let (mut lo, mut hi) = (0i128, 0i128);
        for term in &self.dec.terms {
            let (tlo, thi) = match *term {
                Term::Square { w, a } => {
                    let (x0, x1) = range(a)?;
                    let (s0, s1) = square_range(x0, x1)?;
                    scale_range(w, s0, s1)?
                }
                Term::Product { w, a, b: bf } => {
                    let (x0, x1) = range(a)?;
                    let (y0, y1) = range(bf)?;
                    let ps = [
                        x0.checked_mul(y0)?,
                        x0.checked_mul(y1)?,
                        x1.checked_mul(y0)?,
                        x1.checked_mul(y1)?,
                    ];
                    let (p0, p1) = (*ps.iter().min()?, *ps.iter().max()?);
                    scale_range(w, p0, p1)?
                }
            };
            lo = lo.checked_add(tlo)?;
            hi = hi.checked_add(thi)?;
        }
        Some((lo, hi))
    }
}

struct WalkState {
    v: Vec<i64>,
    partial: Vec<i128>,
    kappa_partial: i128,
    out: Vec<LatticeVector>,
}

fn square_range(x0: i128, x1: i128) -> Option<(i128, i128)> {
    let (a, b) = (x0.checked_mul(x0)?, x1.checked_mul(x1)?);
    let hi = a.max(b);
    let lo = if x0 <= 0 && x1 >= 0 { 0 } else { a.min(b) };
    Some((lo, hi))
}

fn scale_range(w: i128, lo: i128, hi: i128) -> Option<(i128, i128)> {
    let (a, b) = (w.checked_mul(lo)?, w.checked_mul(hi)?);
    Some((a.min(b), a.max(b)))
}
