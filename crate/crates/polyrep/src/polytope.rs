//! Polytope input, vertex enumeration, and metric parameters.
//!
//! The input is an H-representation (a list of affine inequalities
//! a.x <= b); vertices are recovered by solving all d-subsets of facet
//! equations, which is adequate at the intended scale (m up to ~30).

use std::collections::BTreeSet;
use std::str::FromStr;

use itertools::Itertools;
use num::{BigInt, BigRational};
use num_traits::{ToPrimitive, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::AffineForm;

/// Absolute feasibility tolerance after unit-normal scaling.
pub const FEAS_TOL: f64 = 1e-9;
/// Distance below which two enumerated vertex solutions are merged.
pub const DEDUP_TOL: f64 = 1e-8;

/// A half-space normal.x <= offset. The normal need not be unit length
/// on input; `HRep` stores the unit-scaled version.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl HalfSpace {
    /// Signed slack offset - normal.x; nonnegative inside.
    pub fn slack(&self, x: &[f64]) -> f64 {
        self.offset - linalg::dot(&self.normal, x)
    }
}

/// Parsed H-representation with unit outward normals. The raw input
/// forms b - a.x are retained exactly for the raw-forms build mode.
#[derive(Debug, Clone)]
pub struct HRep {
    pub dim: usize,
    pub halfspaces: Vec<HalfSpace>,
    pub raw_forms: Vec<AffineForm<BigRational>>,
}

/// A validated simple-polytope candidate: vertices, incidence, diameter.
#[derive(Debug, Clone)]
pub struct Polytope {
    pub dim: usize,
    pub facets: Vec<HalfSpace>,
    pub raw_forms: Vec<AffineForm<BigRational>>,
    pub vertices: Vec<Vec<f64>>,
    /// Per-vertex sorted facet indices.
    pub incidence: Vec<Vec<usize>>,
    pub diameter: f64,
}

/// Facet forms q_F as affine functions of x.
#[derive(Debug, Clone)]
pub struct FacetForms {
    pub forms: Vec<AffineForm<f64>>,
    pub normalized: bool,
}

impl FacetForms {
    pub fn eval_all(&self, x: &[f64]) -> Vec<f64> {
        self.forms.iter().map(|f| f.eval(x)).collect()
    }
}

/// Metric parameters of a simple polytope.
#[derive(Debug, Clone, Copy)]
pub struct MetricParams {
    pub gamma: f64,
    pub alpha: f64,
    pub phi: f64,
    pub deg_p: usize,
}

#[derive(Deserialize)]
struct HrepDoc {
    dim: usize,
    inequalities: Vec<IneqDoc>,
}

#[derive(Deserialize)]
struct IneqDoc {
    a: Vec<NumberLike>,
    b: NumberLike,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum NumberLike {
    Float(f64),
    Text(String),
}

impl NumberLike {
    fn to_rational(&self) -> Result<BigRational> {
        match self {
            NumberLike::Float(f) => BigRational::from_float(*f)
                .ok_or_else(|| Error::Malformed(format!("non-finite number {f}"))),
            NumberLike::Text(s) => parse_rational(s),
        }
    }
}

/// Parse "p/q", an integer, or a plain decimal string into an exact
/// rational.
fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Malformed(format!("cannot parse number {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let numer = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let denom = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if denom.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(numer, denom));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{}{}", int.trim_start_matches(['+', '-']), frac);
        let numer = BigInt::from_str(&digits).map_err(|_| bad())?;
        let numer = if s.starts_with('-') { -numer } else { numer };
        let denom = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(BigRational::new(numer, denom));
    }
    let numer = BigInt::from_str(s).map_err(|_| bad())?;
    Ok(BigRational::from(numer))
}

/// Parse an H-rep document. Normals are rescaled to unit length (with the
/// offsets rescaled accordingly); the original exact forms are retained.
pub fn parse_hrep(text: &str) -> Result<HRep> {
    let doc: HrepDoc =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    if doc.dim < 2 {
        return Err(Error::DimTooSmall(doc.dim));
    }
    let mut halfspaces = Vec::new();
    let mut raw_forms = Vec::new();
    for (idx, ineq) in doc.inequalities.iter().enumerate() {
        if ineq.a.len() != doc.dim {
            return Err(Error::Malformed(format!(
                "inequality {idx}: expected {} coefficients, got {}",
                doc.dim,
                ineq.a.len()
            )));
        }
        let a_exact: Vec<BigRational> = ineq
            .a
            .iter()
            .map(NumberLike::to_rational)
            .collect::<Result<_>>()?;
        let b_exact = ineq.b.to_rational()?;
        let a: Vec<f64> = a_exact.iter().map(|c| c.to_f64().unwrap()).collect();
        let b = b_exact.to_f64().unwrap();
        let len = linalg::norm(&a);
        if len < 1e-300 {
            return Err(Error::ZeroNormal(idx));
        }
        halfspaces.push(HalfSpace {
            normal: a.iter().map(|c| c / len).collect(),
            offset: b / len,
        });
        // q_j(x) = b - a.x
        raw_forms.push(AffineForm {
            linear: a_exact.iter().map(|c| -c.clone()).collect(),
            constant: b_exact,
        });
    }
    if halfspaces.is_empty() {
        return Err(Error::Malformed("no inequalities".into()));
    }
    Ok(HRep {
        dim: doc.dim,
        halfspaces,
        raw_forms,
    })
}

/// Enumerate vertices by solving all d-subsets of facet equations,
/// build incidence lists, and validate boundedness and irredundancy.
pub fn enumerate_vertices(hrep: &HRep) -> Result<Polytope> {
    let d = hrep.dim;
    let m = hrep.halfspaces.len();
    let normals: Vec<Vec<f64>> = hrep.halfspaces.iter().map(|h| h.normal.clone()).collect();

    if linalg::rank(&normals, 1e-9) < d {
        // recession cone contains a line
        return Err(Error::Unbounded);
    }
    // Pointed recession-cone ray check: any (d-1)-subset of full rank with
    // a null direction satisfied by every inequality gives an unbounded ray.
    for subset in (0..m).combinations(d - 1) {
        let rows: Vec<Vec<f64>> = subset.iter().map(|&i| normals[i].clone()).collect();
        if let Some(w) = linalg::null_direction(&rows, d, 1e-9) {
            for dir in [1.0, -1.0] {
                let wd: Vec<f64> = w.iter().map(|c| c * dir).collect();
                if normals.iter().all(|nrm| linalg::dot(nrm, &wd) <= FEAS_TOL) {
                    return Err(Error::Unbounded);
                }
            }
        }
    }

    let mut vertices: Vec<Vec<f64>> = Vec::new();
    for subset in (0..m).combinations(d) {
        let rows: Vec<Vec<f64>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let rhs: Vec<f64> = subset.iter().map(|&i| hrep.halfspaces[i].offset).collect();
        let Some(x) = linalg::solve(&rows, &rhs, 1e-10) else {
            continue;
        };
        if !hrep.halfspaces.iter().all(|h| h.slack(&x) >= -FEAS_TOL) {
            continue;
        }
        let nearest = vertices
            .iter()
            .map(|v| linalg::norm(&linalg::sub(v, &x)))
            .fold(f64::INFINITY, f64::min);
        if nearest <= DEDUP_TOL {
            continue;
        }
        if nearest <= 10.0 * DEDUP_TOL {
            // solutions in the ambiguous band between the dedup tolerance
            // and 10x of it cannot be merged or separated reliably
            return Err(Error::Degenerate(x));
        }
        vertices.push(x);
    }
    if vertices.is_empty() {
        return Err(Error::Empty);
    }
    vertices.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let incidence: Vec<Vec<usize>> = vertices
        .iter()
        .map(|v| {
            (0..m)
                .filter(|&i| hrep.halfspaces[i].slack(v).abs() <= FEAS_TOL)
                .collect()
        })
        .collect();
    for facet in 0..m {
        let support = incidence.iter().filter(|inc| inc.contains(&facet)).count();
        if support < d {
            return Err(Error::RedundantInequality(facet));
        }
    }

    let mut diameter = 0.0f64;
    for (i, v) in vertices.iter().enumerate() {
        for w in &vertices[i + 1..] {
            diameter = diameter.max(linalg::norm(&linalg::sub(v, w)));
        }
    }

    Ok(Polytope {
        dim: d,
        facets: hrep.halfspaces.clone(),
        raw_forms: hrep.raw_forms.clone(),
        vertices,
        incidence,
        diameter,
    })
}

/// Convenience: parse and enumerate in one step.
pub fn polytope_from_text(text: &str) -> Result<Polytope> {
    enumerate_vertices(&parse_hrep(text)?)
}

pub fn check_simple(p: &Polytope) -> bool {
    p.incidence.iter().all(|inc| inc.len() == p.dim)
}

/// Support function h(P, u) = max over vertices of u.v.
pub fn support_value(p: &Polytope, u: &[f64]) -> f64 {
    p.vertices
        .iter()
        .map(|v| linalg::dot(u, v))
        .fold(f64::NEG_INFINITY, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormMode {
    Normalized,
    Raw,
}

/// Facet forms: normalized mode gives q_F(x) = (h(P,u_F) - u_F.x)/diam(P);
/// raw mode returns the input affine forms b - a.x verbatim.
pub fn facet_forms(p: &Polytope, mode: FormMode) -> FacetForms {
    match mode {
        FormMode::Normalized => {
            let forms = p
                .facets
                .iter()
                .map(|h| {
                    let support = support_value(p, &h.normal);
                    AffineForm {
                        linear: h.normal.iter().map(|c| -c / p.diameter).collect(),
                        constant: support / p.diameter,
                    }
                })
                .collect();
            FacetForms {
                forms,
                normalized: true,
            }
        }
        FormMode::Raw => FacetForms {
            forms: p.raw_forms.iter().map(AffineForm::to_f64).collect(),
            normalized: false,
        },
    }
}

/// Scalars lambda_j with lambda_j * raw_j = normalized_j; used in the
/// vertex interpolant when the build runs in raw mode.
pub fn form_scales(p: &Polytope) -> Vec<f64> {
    p.raw_forms
        .iter()
        .map(|f| {
            let len = linalg::norm(
                &f.linear
                    .iter()
                    .map(|c| c.to_f64().unwrap())
                    .collect::<Vec<_>>(),
            );
            1.0 / (len * p.diameter)
        })
        .collect()
}

/// Edges of a simple polytope: vertex pairs sharing exactly d-1 facets.
pub fn edges(p: &Polytope) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..p.vertices.len() {
        for j in i + 1..p.vertices.len() {
            let common = p.incidence[i]
                .iter()
                .filter(|f| p.incidence[j].contains(f))
                .count();
            if common == p.dim - 1 {
                out.push((i, j));
            }
        }
    }
    out
}

/// Vertex index sets of all i-faces, found as intersections of (d-i)
/// facet subsets with the right affine dimension.
pub fn faces(p: &Polytope, i: usize) -> Vec<Vec<usize>> {
    let d = p.dim;
    assert!(i < d);
    if i == 0 {
        return (0..p.vertices.len()).map(|v| vec![v]).collect();
    }
    let m = p.facets.len();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for subset in (0..m).combinations(d - i) {
        let verts: Vec<usize> = (0..p.vertices.len())
            .filter(|&v| subset.iter().all(|f| p.incidence[v].contains(f)))
            .collect();
        if verts.is_empty() {
            continue;
        }
        let base = &p.vertices[verts[0]];
        let dirs: Vec<Vec<f64>> = verts[1..]
            .iter()
            .map(|&v| linalg::sub(&p.vertices[v], base))
            .collect();
        if linalg::rank(&dirs, 1e-7) == i {
            seen.insert(verts);
        }
    }
    seen.into_iter().collect()
}

/// Compute gamma, alpha, phi and deg(P) for a simple polytope with
/// normalized facet forms.
pub fn metric_params(p: &Polytope, forms: &FacetForms) -> Result<MetricParams> {
    assert!(forms.normalized, "metric parameters require normalized forms");

    let mut gamma = 0.0f64;
    for (v_idx, v) in p.vertices.iter().enumerate() {
        for (f_idx, form) in forms.forms.iter().enumerate() {
            if !p.incidence[v_idx].contains(&f_idx) {
                gamma = gamma.max(1.0 - form.eval(v));
            }
        }
    }

    let mut alpha = 0.0f64;
    for (v_idx, inc) in p.incidence.iter().enumerate() {
        let u: Vec<Vec<f64>> = inc.iter().map(|&f| p.facets[f].normal.clone()).collect();
        let sigma_min = linalg::smallest_singular_value(&u);
        if sigma_min < 1e-10 {
            return Err(Error::SingularNormalMatrix(v_idx));
        }
        alpha = alpha.max(1.0 / sigma_min);
    }

    let mut phi = std::f64::consts::FRAC_PI_2;
    for &(a, b) in &edges(p) {
        let mut e = linalg::sub(&p.vertices[b], &p.vertices[a]);
        let len = linalg::norm(&e);
        for c in e.iter_mut() {
            *c /= len;
        }
        for (f_idx, facet) in p.facets.iter().enumerate() {
            let endpoints_on_f = [a, b]
                .iter()
                .filter(|&&v| p.incidence[v].contains(&f_idx))
                .count();
            if endpoints_on_f == 1 {
                let s = linalg::dot(&facet.normal, &e).abs().min(1.0);
                phi = phi.min(s.asin());
            }
        }
    }

    let deg_p = p.incidence.iter().map(Vec::len).max().unwrap_or(0);
    Ok(MetricParams {
        gamma,
        alpha,
        phi,
        deg_p,
    })
}

/// Axis-aligned bounding box of the vertex set, inflated additively.
pub fn bounding_box(p: &Polytope, inflate: f64) -> (Vec<f64>, Vec<f64>) {
    let mut lo = vec![f64::INFINITY; p.dim];
    let mut hi = vec![f64::NEG_INFINITY; p.dim];
    for v in &p.vertices {
        for i in 0..p.dim {
            lo[i] = lo[i].min(v[i]);
            hi[i] = hi[i].max(v[i]);
        }
    }
    for i in 0..p.dim {
        lo[i] -= inflate;
        hi[i] += inflate;
    }
    (lo, hi)
}
