//! The vertex-interpolating polynomial f_k, its weight system, and the
//! quantitative parameter arithmetic (epsilon thresholds and lower bounds
//! on the exponent k).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::polytope::{FacetForms, MetricParams, Polytope};

/// Accepted interpolant data: exponent k, per-vertex weights, the
/// deviation |A_k - E|_inf, and the raw-to-normalized form scales.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InterpolantParams {
    pub k: u32,
    pub y: Vec<f64>,
    pub a_deviation: f64,
    pub lambdas: Vec<f64>,
}

/// The epsilon thresholds of the quantitative lemmas, plus the covering
/// margin delta.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EpsilonParams {
    pub eps1: f64,
    pub eps2: f64,
    pub eps3: f64,
    pub delta: f64,
}

/// The four lower bounds on k. The epsilon-dependent bound is only
/// present when a target epsilon was supplied; the gamma bound is absent
/// when gamma = 0 (the bound is vacuous there).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct KBounds {
    pub gamma_bound: Option<f64>,
    pub n_bound: f64,
    pub eps_bound: Option<f64>,
    pub cone_bound: f64,
}

impl KBounds {
    /// Smallest integer k meeting every present bound.
    pub fn k(&self) -> u32 {
        let mut max = self.n_bound.max(self.cone_bound);
        if let Some(g) = self.gamma_bound {
            max = max.max(g);
        }
        if let Some(e) = self.eps_bound {
            max = max.max(e);
        }
        (max.ceil() as u32).max(1)
    }
}

/// (1 - q)^(2k) for q values that may make the base negative; the even
/// power makes the sign irrelevant. Large k runs through powf, which
/// saturates to +inf on overflow.
#[inline]
fn even_power(base: f64, two_k: f64) -> f64 {
    let b = base.abs();
    if b == 0.0 {
        return 0.0;
    }
    if b == 1.0 {
        return 1.0;
    }
    b.powf(two_k)
}

/// Facet-form values at a vertex with incident entries snapped to exactly
/// zero; the incidence list is the ground truth for where q_F vanishes.
fn q_at_vertex(p: &Polytope, forms: &FacetForms, w: usize) -> Vec<f64> {
    forms
        .forms
        .iter()
        .enumerate()
        .map(|(f_idx, form)| {
            if p.incidence[w].contains(&f_idx) {
                0.0
            } else {
                form.eval(&p.vertices[w])
            }
        })
        .collect()
}

/// The interpolation matrix A_k with entries
/// ((1/deg(v)) sum over F incident to v of (1 - q_F(w))^(2k))^(2k).
/// Diagonal entries are exactly 1.
pub fn assemble_a(p: &Polytope, forms: &FacetForms, k: u32) -> Vec<Vec<f64>> {
    let n = p.vertices.len();
    let two_k = 2.0 * k as f64;
    let q_rows: Vec<Vec<f64>> = (0..n).map(|w| q_at_vertex(p, forms, w)).collect();
    let mut a = vec![vec![0.0; n]; n];
    for w in 0..n {
        for v in 0..n {
            if w == v {
                a[w][v] = 1.0;
                continue;
            }
            let deg = p.incidence[v].len() as f64;
            let inner: f64 = p.incidence[v]
                .iter()
                .map(|&f| even_power(1.0 - q_rows[w][f], two_k))
                .sum::<f64>()
                / deg;
            a[w][v] = even_power(inner, two_k);
        }
    }
    a
}

/// Row-sum deviation |A - E|_inf.
pub fn a_deviation(a: &[Vec<f64>]) -> f64 {
    a.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &x)| if i == j { (x - 1.0).abs() } else { x.abs() })
                .sum::<f64>()
        })
        .fold(0.0, f64::max)
}

/// Solve A y = 1l by elimination with partial pivoting. Nonpositive
/// weights signal that k is too small.
pub fn solve_weights(a: &[Vec<f64>], k: u32) -> Result<Vec<f64>> {
    let ones = vec![1.0; a.len()];
    let y = linalg::solve(a, &ones, 1e-300).ok_or(Error::SingularMatrix(k))?;
    if y.iter().any(|&yi| !(yi > 0.0)) {
        return Err(Error::NotAccepted(k));
    }
    Ok(y)
}

/// f_k(x) = sum over vertices of y_v ((1/deg(v)) sum over incident F of
/// (1 - q_F(x))^(2k))^(2k). Forms must be the normalized ones.
pub fn eval_f_k(p: &Polytope, forms: &FacetForms, params: &InterpolantParams, x: &[f64]) -> f64 {
    let two_k = 2.0 * params.k as f64;
    let q: Vec<f64> = forms.eval_all(x);
    let mut acc = 0.0;
    for (v, y) in params.y.iter().enumerate() {
        let deg = p.incidence[v].len() as f64;
        let inner: f64 = p.incidence[v]
            .iter()
            .map(|&f| even_power(1.0 - q[f], two_k))
            .sum::<f64>()
            / deg;
        acc += y * even_power(inner, two_k);
    }
    acc
}

/// Analytic gradient of f_k: the chain rule over both 2k powers with
/// inner derivative u_F / diam(P) per form.
pub fn grad_f_k(
    p: &Polytope,
    forms: &FacetForms,
    params: &InterpolantParams,
    x: &[f64],
) -> Vec<f64> {
    let k = params.k as f64;
    let q: Vec<f64> = forms.eval_all(x);
    let mut grad = vec![0.0; p.dim];
    for (v, y) in params.y.iter().enumerate() {
        let deg = p.incidence[v].len() as f64;
        let inner: f64 = p.incidence[v]
            .iter()
            .map(|&f| even_power(1.0 - q[f], 2.0 * k))
            .sum::<f64>()
            / deg;
        let outer = y * even_power(inner, 2.0 * k - 1.0);
        for &f in &p.incidence[v] {
            let base = 1.0 - q[f];
            let odd = base.signum() * even_power(base, 2.0 * k - 1.0);
            let scale = 4.0 * k * k * outer * odd / (deg * p.diameter);
            for (g, u) in grad.iter_mut().zip(&p.facets[f].normal) {
                *g += scale * u;
            }
        }
    }
    grad
}

fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// The epsilon thresholds of the quantitative lemmas for a polytope with
/// m facets in dimension d.
pub fn epsilon_params(mp: &MetricParams, m: usize, d: usize) -> Result<EpsilonParams> {
    assert!(m > d);
    let one_minus_gamma = 1.0 - mp.gamma;
    let sqrt_d = (d as f64).sqrt();
    let e = m - d;

    let bound_a = (one_minus_gamma / (4.0 * (1 + d) as f64)).powi(e as i32);
    let bound_b = one_minus_gamma / (2.0 * (1 + d) as f64 * sqrt_d * mp.alpha);
    let eps1 = bound_a.min(bound_b);

    let bound_c = 5.0 * one_minus_gamma.powi(e as i32)
        / (18.0 * binom(d, d / 2) * 2f64.powi(e as i32) * (3f64.powi(e as i32) - 2f64.powi(e as i32)));
    let eps2 = eps1.min(bound_c);

    let divisor = (d - 1) as f64
        + (binom(m, d - 1) - d as f64) * (2.0 * (1 + d) as f64 / one_minus_gamma).powi(e as i32);
    let eps3 = eps2 / divisor;

    let delta = one_minus_gamma / (1 + d) as f64 - eps1 * sqrt_d * mp.alpha;
    if delta <= 0.0 {
        return Err(Error::NonpositiveDelta(delta));
    }
    Ok(EpsilonParams {
        eps1,
        eps2,
        eps3,
        delta,
    })
}

/// Lower bounds on k (binary logarithms throughout). `eps` of `None`
/// omits the approximation-accuracy bound, whose value explodes for the
/// tiny eps3 thresholds.
pub fn quantitative_k(mp: &MetricParams, d: usize, n: usize, eps: Option<f64>) -> KBounds {
    let gamma_bound = if mp.gamma > 0.0 {
        Some(1.0 / (2.0 * (1.0 / mp.gamma).log2()))
    } else {
        None
    };
    let n_bound = 2.0 * (4.0 * n as f64).log2();
    let eps_bound = eps.map(|e| {
        assert!(e > 0.0);
        (2.0 * mp.deg_p as f64).log2() / (2.0 * (1.0 + e).log2())
    });
    let cone_bound =
        3.0 * (12.0 * n as f64 * (d as f64).sqrt() * mp.alpha * mp.deg_p as f64).log2();
    KBounds {
        gamma_bound,
        n_bound,
        eps_bound,
        cone_bound,
    }
}

/// Assemble A_k, solve the weight system, and package the result.
pub fn build_params(
    p: &Polytope,
    forms: &FacetForms,
    k: u32,
    lambdas: Vec<f64>,
) -> Result<InterpolantParams> {
    let a = assemble_a(p, forms, k);
    let deviation = a_deviation(&a);
    let y = solve_weights(&a, k)?;
    Ok(InterpolantParams {
        k,
        y,
        a_deviation: deviation,
        lambdas,
    })
}

/// Brute-force search over k = 1, 2, ...: first exponent whose weight
/// solve is accepted and whose candidate representation the supplied
/// verifier approves.
pub fn find_k(
    p: &Polytope,
    forms: &FacetForms,
    lambdas: &[f64],
    k_max: u32,
    mut verifier: impl FnMut(&InterpolantParams) -> bool,
) -> Result<InterpolantParams> {
    for k in 1..=k_max {
        let params = match build_params(p, forms, k, lambdas.to_vec()) {
            Ok(params) => params,
            Err(Error::SingularMatrix(_)) | Err(Error::NotAccepted(_)) => continue,
            Err(e) => return Err(e),
        };
        if verifier(&params) {
            return Ok(params);
        }
    }
    Err(Error::ExhaustedKMax(k_max))
}
