//! Assembly of the full d-polynomial representation and its sampling
//! verification: membership equivalence, face vanishing, the sandwich
//! inclusion P subset S_k subset P_eps, and vertex-cone separation.

use num::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::interpolant::{eval_f_k, grad_f_k, InterpolantParams};
use crate::linalg;
use crate::poly::{expand_sigma_all, SparsePoly, EXPANSION_CAP};
use crate::polytope::{bounding_box, faces, facet_forms, FacetForms, FormMode, Polytope};
use crate::symmetric::elem_sym_all;

/// Expanded sigma compositions p_1 ... p_{d-1}, when the term cap allows.
#[derive(Debug, Clone)]
pub enum ExpandedPolys {
    Exact(Vec<SparsePoly<BigRational>>),
    Float(Vec<SparsePoly<f64>>),
    /// Expansion was skipped; evaluation closures remain available.
    TooLarge,
}

/// The d polynomials representing P: p_0 = 1 - f_k as an evaluation
/// closure over the interpolant parameters, p_i = sigma_{m-d+i+1} of the
/// facet forms for i >= 1.
#[derive(Debug, Clone)]
pub struct PolyRepresentation {
    pub mode: FormMode,
    /// Forms matching `mode`; drive p_1 ... p_{d-1}.
    pub forms: FacetForms,
    /// Normalized forms; drive p_0 regardless of mode.
    pub normalized_forms: FacetForms,
    pub params: InterpolantParams,
    pub expanded: ExpandedPolys,
}

impl PolyRepresentation {
    /// Value of p_i at x.
    pub fn eval(&self, p: &Polytope, i: usize, x: &[f64]) -> f64 {
        if i == 0 {
            return 1.0 - eval_f_k(p, &self.normalized_forms, &self.params, x);
        }
        let m = self.forms.forms.len();
        let d = p.dim;
        let q = self.forms.eval_all(x);
        elem_sym_all(&q).values[m - d + i + 1]
    }

    /// All of p_0 ... p_{d-1} at x, sharing one symmetric-spectrum pass.
    pub fn eval_all(&self, p: &Polytope, x: &[f64]) -> Vec<f64> {
        let m = self.forms.forms.len();
        let d = p.dim;
        let q = self.forms.eval_all(x);
        let spectrum = elem_sym_all(&q);
        let mut out = vec![1.0 - eval_f_k(p, &self.normalized_forms, &self.params, x)];
        for i in 1..d {
            out.push(spectrum.values[m - d + i + 1]);
        }
        out
    }
}

/// Build the representation. Symbolic expansion of p_1 ... p_{d-1} is
/// attempted under the term cap and falls back to closures on overflow,
/// never failing the build.
pub fn build_representation(
    p: &Polytope,
    mode: FormMode,
    params: InterpolantParams,
) -> PolyRepresentation {
    let forms = facet_forms(p, mode);
    let normalized_forms = facet_forms(p, FormMode::Normalized);
    let m = forms.forms.len();
    let d = p.dim;
    let lo = m - d + 2;
    let expanded = match mode {
        FormMode::Raw => match expand_sigma_all(&p.raw_forms, m, EXPANSION_CAP) {
            Ok(all) => ExpandedPolys::Exact(all.into_iter().skip(lo - 1).collect()),
            Err(_) => ExpandedPolys::TooLarge,
        },
        FormMode::Normalized => match expand_sigma_all(&forms.forms, m, EXPANSION_CAP) {
            Ok(all) => ExpandedPolys::Float(all.into_iter().skip(lo - 1).collect()),
            Err(_) => ExpandedPolys::TooLarge,
        },
    };
    PolyRepresentation {
        mode,
        forms,
        normalized_forms,
        params,
        expanded,
    }
}

/// One recorded failure of a verification assertion.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Violation {
    pub kind: String,
    pub point: Vec<f64>,
    pub index: usize,
    pub margin: f64,
}

/// Outcome of the sampling verification.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct VerificationReport {
    pub samples_inside: usize,
    pub samples_outside: usize,
    pub violations: Vec<Violation>,
    pub face_vanish_max: Vec<f64>,
    pub sandwich_ok: bool,
    pub cone_ok: bool,
    pub boundary_band: f64,
    pub seed: u64,
    pub k: u32,
}

impl VerificationReport {
    pub fn accepted(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Knobs for the verifiers. Seeds are fixed so runs replay exactly.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
    /// Points closer to the H-rep boundary than this (absolute distance)
    /// are excluded from the membership equivalence assertion.
    pub band: f64,
    pub cone_samples_per_vertex: usize,
}

impl VerifyConfig {
    pub fn new(samples: usize, seed: u64, diam: f64) -> Self {
        VerifyConfig {
            samples,
            seed,
            band: 1e-6 * diam,
            cone_samples_per_vertex: 1000,
        }
    }
}

fn unit_direction(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d)
            .map(|_| {
                // Box-Muller normal
                let u1: f64 = rng.gen_range(1e-12..1.0);
                let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                (-2.0 * u1.ln()).sqrt() * u2.cos()
            })
            .collect();
        let n = linalg::norm(&v);
        if n > 1e-6 {
            return v.iter().map(|c| c / n).collect();
        }
    }
}

/// Random convex combination of the given vertices (exponential weights).
fn hull_point(rng: &mut ChaCha8Rng, p: &Polytope, vertex_ids: &[usize]) -> Vec<f64> {
    let mut weights: Vec<f64> = (0..vertex_ids.len())
        .map(|_| -rng.gen_range(1e-12f64..1.0).ln())
        .collect();
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    let mut x = vec![0.0; p.dim];
    for (&v, w) in vertex_ids.iter().zip(&weights) {
        for (xi, vi) in x.iter_mut().zip(&p.vertices[v]) {
            *xi += w * vi;
        }
    }
    x
}

/// Directions in the vertex cone C_v: unit t with
/// sum of u_F.t >= (2/3) |U_v t|, rejection sampled.
fn cone_direction(rng: &mut ChaCha8Rng, p: &Polytope, v: usize) -> Vec<f64> {
    let sum_normal: Vec<f64> = {
        let mut s = vec![0.0; p.dim];
        for &f in &p.incidence[v] {
            for (si, ui) in s.iter_mut().zip(&p.facets[f].normal) {
                *si += ui;
            }
        }
        s
    };
    loop {
        let mut t = unit_direction(rng, p.dim);
        // bias toward the outward side to keep rejection cheap
        if linalg::dot(&sum_normal, &t) < 0.0 {
            for c in t.iter_mut() {
                *c = -*c;
            }
        }
        let lhs = linalg::dot(&sum_normal, &t);
        let rhs: f64 = p.incidence[v]
            .iter()
            .map(|&f| linalg::dot(&p.facets[f].normal, &t).powi(2))
            .sum::<f64>()
            .sqrt();
        if lhs >= 2.0 / 3.0 * rhs {
            return t;
        }
    }
}

/// Structured probe points: vertices, facet centroids, edge midpoints,
/// and short cone rays beyond each vertex.
fn structured_points(p: &Polytope, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_57a7);
    let mut points: Vec<Vec<f64>> = p.vertices.clone();
    for f in faces(p, p.dim - 1) {
        let mut c = vec![0.0; p.dim];
        for &v in &f {
            for (ci, vi) in c.iter_mut().zip(&p.vertices[v]) {
                *ci += vi / f.len() as f64;
            }
        }
        points.push(c);
    }
    if p.dim >= 2 {
        for (a, b) in crate::polytope::edges(p) {
            let mid: Vec<f64> = p.vertices[a]
                .iter()
                .zip(&p.vertices[b])
                .map(|(x, y)| 0.5 * (x + y))
                .collect();
            points.push(mid);
        }
    }
    for v in 0..p.vertices.len() {
        for _ in 0..8 {
            let t = cone_direction(&mut rng, p, v);
            let r = rng.gen_range(1e-3..0.25) * p.diameter;
            points.push(
                p.vertices[v]
                    .iter()
                    .zip(&t)
                    .map(|(vi, ti)| vi + r * ti)
                    .collect(),
            );
        }
    }
    points
}

/// Membership equivalence by sampling: outside a boundary band, the
/// H-rep sign test and the polynomial sign test must agree.
pub fn verify_membership(
    rep: &PolyRepresentation,
    p: &Polytope,
    eps3: f64,
    cfg: &VerifyConfig,
    report: &mut VerificationReport,
) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (lo, hi) = bounding_box(p, 2.0 * eps3 * p.diameter);
    let mut points: Vec<Vec<f64>> = (0..cfg.samples)
        .map(|_| {
            (0..p.dim)
                .map(|i| rng.gen_range(lo[i]..=hi[i]))
                .collect()
        })
        .collect();
    points.extend(structured_points(p, cfg.seed));

    for x in &points {
        let boundary_dist = p
            .facets
            .iter()
            .map(|h| h.slack(x).abs())
            .fold(f64::INFINITY, f64::min);
        if boundary_dist < cfg.band {
            continue;
        }
        let inside_h = p.facets.iter().all(|h| h.slack(x) >= 0.0);
        let values = rep.eval_all(p, x);
        let inside_p = values.iter().all(|&v| v >= 0.0);
        if inside_h {
            report.samples_inside += 1;
        } else {
            report.samples_outside += 1;
        }
        if inside_h != inside_p {
            let (index, margin) = values
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .map(|(i, &v)| (i, v))
                .unwrap();
            report.violations.push(Violation {
                kind: "membership".into(),
                point: x.clone(),
                index,
                margin,
            });
        }
    }
}

/// p_i vanishes on every i-face: sample 50 convex combinations per face.
/// Uses the normalized-scale representation values.
pub fn verify_face_vanishing(
    rep: &PolyRepresentation,
    p: &Polytope,
    cfg: &VerifyConfig,
    report: &mut VerificationReport,
) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xface);
    let normalized_rep;
    let rep_norm = if rep.mode == FormMode::Normalized {
        rep
    } else {
        normalized_rep = PolyRepresentation {
            mode: FormMode::Normalized,
            forms: rep.normalized_forms.clone(),
            normalized_forms: rep.normalized_forms.clone(),
            params: rep.params.clone(),
            expanded: ExpandedPolys::TooLarge,
        };
        &normalized_rep
    };
    report.face_vanish_max = vec![0.0; p.dim];
    for i in 0..p.dim {
        for face in faces(p, i) {
            for _ in 0..50 {
                let x = hull_point(&mut rng, p, &face);
                let value = rep_norm.eval(p, i, &x).abs();
                report.face_vanish_max[i] = report.face_vanish_max[i].max(value);
                if value > 1e-8 {
                    report.violations.push(Violation {
                        kind: "face".into(),
                        point: x,
                        index: i,
                        margin: value,
                    });
                }
            }
        }
    }
}

/// Sandwich inclusion: hull samples of P satisfy f_k <= 1; box samples
/// with f_k <= 1 satisfy every q_F >= -eps.
pub fn verify_sandwich(
    rep: &PolyRepresentation,
    p: &Polytope,
    eps: f64,
    cfg: &VerifyConfig,
    report: &mut VerificationReport,
) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5a4d);
    let all: Vec<usize> = (0..p.vertices.len()).collect();
    let mut ok = true;
    for _ in 0..cfg.samples {
        let x = hull_point(&mut rng, p, &all);
        let f = eval_f_k(p, &rep.normalized_forms, &rep.params, &x);
        if f > 1.0 + 1e-9 {
            ok = false;
            report.violations.push(Violation {
                kind: "sandwich".into(),
                point: x,
                index: 0,
                margin: f - 1.0,
            });
        }
    }
    let (lo, hi) = bounding_box(p, 0.25 * p.diameter);
    for _ in 0..cfg.samples {
        let x: Vec<f64> = (0..p.dim)
            .map(|i| rng.gen_range(lo[i]..=hi[i]))
            .collect();
        let f = eval_f_k(p, &rep.normalized_forms, &rep.params, &x);
        if f <= 1.0 {
            let q = rep.normalized_forms.eval_all(&x);
            if let Some((idx, &worst)) = q
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .filter(|(_, &v)| v < -eps - 1e-9)
            {
                ok = false;
                report.violations.push(Violation {
                    kind: "sandwich".into(),
                    point: x,
                    index: idx,
                    margin: worst,
                });
            }
        }
    }
    report.sandwich_ok = ok;
}

/// Vertex-cone separation: sampled points of C_v away from v have
/// f_k > 1, and the scaled gradient inequality at v holds.
pub fn verify_cone_separation(
    rep: &PolyRepresentation,
    p: &Polytope,
    cfg: &VerifyConfig,
    report: &mut VerificationReport,
) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xc0de);
    let k = rep.params.k as f64;
    let deg_p = p.incidence.iter().map(Vec::len).max().unwrap() as f64;
    let mut ok = true;
    for v in 0..p.vertices.len() {
        let grad_at_v = grad_f_k(p, &rep.normalized_forms, &rep.params, &p.vertices[v]);
        let scaled_grad: Vec<f64> = grad_at_v.iter().map(|g| g / (4.0 * k * k)).collect();
        for _ in 0..cfg.cone_samples_per_vertex {
            let t = cone_direction(&mut rng, p, v);
            let r = rng.gen_range(1e-9f64..1.0).max(1e-9) * 0.25 * p.diameter;
            let x: Vec<f64> = p.vertices[v]
                .iter()
                .zip(&t)
                .map(|(vi, ti)| vi + r * ti)
                .collect();
            let f = eval_f_k(p, &rep.normalized_forms, &rep.params, &x);
            if !(f > 1.0) {
                ok = false;
                report.violations.push(Violation {
                    kind: "cone".into(),
                    point: x.clone(),
                    index: v,
                    margin: f - 1.0,
                });
                continue;
            }
            // |q_v(x)| over incident facets, normalized scale
            let qv_norm: f64 = p.incidence[v]
                .iter()
                .map(|&fi| rep.normalized_forms.forms[fi].eval(&x).powi(2))
                .sum::<f64>()
                .sqrt();
            let lhs = linalg::dot(&scaled_grad, &linalg::sub(&x, &p.vertices[v]));
            let rhs = qv_norm / (3.0 * deg_p);
            if lhs < rhs - 1e-9 {
                ok = false;
                report.violations.push(Violation {
                    kind: "gradient".into(),
                    point: x,
                    index: v,
                    margin: lhs - rhs,
                });
            }
        }
    }
    report.cone_ok = ok;
}

/// Full verification pass: membership, face vanishing, sandwich at the
/// accuracy the built k supports, and cone separation.
pub fn verify_all(
    rep: &PolyRepresentation,
    p: &Polytope,
    eps3: f64,
    cfg: &VerifyConfig,
) -> VerificationReport {
    let mut report = VerificationReport {
        boundary_band: cfg.band,
        seed: cfg.seed,
        k: rep.params.k,
        ..Default::default()
    };
    verify_membership(rep, p, eps3, cfg, &mut report);
    verify_face_vanishing(rep, p, cfg, &mut report);
    // the sandwich accuracy the built exponent actually guarantees:
    // eps with k >= log2(2 deg P) / (2 log2(1 + eps)), floored at eps3
    let deg_p = p.incidence.iter().map(Vec::len).max().unwrap() as f64;
    let eps_k = ((2.0 * deg_p).log2() / (2.0 * rep.params.k as f64)).exp2() - 1.0;
    verify_sandwich(rep, p, eps_k.max(eps3), cfg, &mut report);
    verify_cone_separation(rep, p, cfg, &mut report);
    report
}

/// Result alias used by the CLI layer.
pub type BuildOutcome = Result<(PolyRepresentation, VerificationReport)>;
