//! Sparse multivariate polynomials with exact-rational or double
//! coefficients, affine forms, and symbolic expansion of elementary
//! symmetric compositions.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::symmetric::Scalar;

/// Exponent vector of a single term. Ordered graded-lexicographically:
/// lower total degree first, then lexicographically larger exponent
/// vector first within a degree (so x1^2 precedes x1*x2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// An affine form c + l.x.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineForm<C> {
    pub linear: Vec<C>,
    pub constant: C,
}

impl<C: Scalar> AffineForm<C> {
    pub fn eval(&self, x: &[C]) -> C {
        let mut acc = self.constant.clone();
        for (l, xi) in self.linear.iter().zip(x) {
            acc = acc + l.clone() * xi.clone();
        }
        acc
    }
}

impl AffineForm<num::BigRational> {
    pub fn to_f64(&self) -> AffineForm<f64> {
        use num_traits::ToPrimitive;
        AffineForm {
            linear: self.linear.iter().map(|c| c.to_f64().unwrap()).collect(),
            constant: self.constant.to_f64().unwrap(),
        }
    }
}

/// A polynomial stored as a map from exponent vectors to nonzero
/// coefficients, in canonical graded-lex order.
#[derive(Debug, Clone, PartialEq)]
pub struct SparsePoly<C> {
    pub dim: usize,
    pub terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> SparsePoly<C> {
    pub fn zero(dim: usize) -> Self {
        SparsePoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: C) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(Monomial(vec![0; dim]), c);
        p
    }

    pub fn from_affine(form: &AffineForm<C>) -> Self {
        let dim = form.linear.len();
        let mut p = Self::constant(dim, form.constant.clone());
        for (i, l) in form.linear.iter().enumerate() {
            let mut exps = vec![0; dim];
            exps[i] = 1;
            p.add_term(Monomial(exps), l.clone());
        }
        p
    }

    /// Adds `c` to the coefficient of `mono`, dropping the term if the
    /// result is zero.
    pub fn add_term(&mut self, mono: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(exps), ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Multiply by an affine form in place-friendly fashion.
    pub fn mul_affine(&self, form: &AffineForm<C>) -> Self {
        self.mul(&Self::from_affine(form))
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, coeff) in &self.terms {
            out.add_term(m.clone(), coeff.clone() * c.clone());
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Direct term-by-term evaluation.
    pub fn eval(&self, x: &[C]) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, xi) in m.0.iter().zip(x) {
                for _ in 0..*e {
                    t = t * xi.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Coefficient-wise comparison. `tol = 0` means exact equality of the
    /// canonical forms.
    pub fn approx_eq(&self, other: &Self, tol: &C) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.extend(other.terms.keys());
        keys.sort();
        keys.dedup();
        for m in keys {
            let a = self.terms.get(m).cloned().unwrap_or_else(C::zero);
            let b = other.terms.get(m).cloned().unwrap_or_else(C::zero);
            if (a - b).abs() > *tol {
                return false;
            }
        }
        true
    }
}

impl SparsePoly<f64> {
    /// Term evaluation with Kahan-compensated summation.
    pub fn eval_compensated(&self, x: &[f64]) -> f64 {
        let mut sum = 0.0;
        let mut comp = 0.0;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (e, xi) in m.0.iter().zip(x) {
                t *= xi.powi(*e as i32);
            }
            let y = t - comp;
            let s = sum + y;
            comp = (s - sum) - y;
            sum = s;
        }
        sum
    }
}

/// Default term-count cap for symbolic expansion.
pub const EXPANSION_CAP: usize = 1_000_000;

/// All expanded compositions sigma_1(q(x)), ..., sigma_l(q(x)) in one pass
/// of the prepend recurrence over polynomials.
pub fn expand_sigma_all<C: Scalar>(
    forms: &[AffineForm<C>],
    l: usize,
    cap: usize,
) -> Result<Vec<SparsePoly<C>>> {
    assert!(l >= 1 && l <= forms.len());
    let dim = forms[0].linear.len();
    let mut sigma: Vec<SparsePoly<C>> = (0..=l).map(|_| SparsePoly::zero(dim)).collect();
    sigma[0] = SparsePoly::constant(dim, C::one());
    for (idx, form) in forms.iter().enumerate() {
        let top = l.min(idx + 1);
        for j in (1..=top).rev() {
            let inc = sigma[j - 1].mul_affine(form);
            sigma[j] = sigma[j].add(&inc);
        }
        let total: usize = sigma.iter().map(SparsePoly::num_terms).sum();
        if total > cap {
            return Err(Error::ExpansionTooLarge(cap));
        }
    }
    Ok(sigma.split_off(1))
}

/// The fully expanded polynomial sigma_l(q_1(x), ..., q_m(x)).
pub fn expand_sigma_composition<C: Scalar>(
    forms: &[AffineForm<C>],
    l: usize,
    cap: usize,
) -> Result<SparsePoly<C>> {
    Ok(expand_sigma_all(forms, l, cap)?.pop().unwrap())
}

/// Render a coefficient for the serialized document: rationals as "p/q"
/// strings, doubles as JSON numbers.
pub trait CoeffJson {
    fn to_json(&self) -> serde_json::Value;
}

impl CoeffJson for f64 {
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self)
    }
}

impl CoeffJson for num::BigRational {
    fn to_json(&self) -> serde_json::Value {
        let mut s = String::new();
        write!(s, "{}", self.numer()).unwrap();
        if !num_traits::One::is_one(self.denom()) {
            write!(s, "/{}", self.denom()).unwrap();
        }
        serde_json::Value::String(s)
    }
}

impl<C: Scalar + CoeffJson> SparsePoly<C> {
    /// Canonical polynomial document: terms in graded-lex order.
    pub fn to_document(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| serde_json::json!({"exp": m.0, "coef": c.to_json()}))
            .collect();
        serde_json::json!({"dim": self.dim, "terms": terms})
    }
}
