//! Point-cloud sampling of the zero set of min_{j in J} p_j over a
//! regular grid: crossing points on grid edges are refined by bisection
//! and written as CSV (2D) or an OBJ point cloud (3D).

use std::io::Write;

use crate::error::{Error, Result};
use crate::polytope::{bounding_box, Polytope};
use crate::representation::PolyRepresentation;

/// Zero-crossing points of min_{j in J} p_j on a `grid`-per-axis lattice
/// over the inflated bounding box.
pub fn surface_points(
    rep: &PolyRepresentation,
    p: &Polytope,
    indices: &[usize],
    grid: usize,
) -> Result<Vec<Vec<f64>>> {
    let d = p.dim;
    if d < 2 || d > 3 {
        return Err(Error::UnsupportedDim(d));
    }
    assert!(grid >= 2, "grid resolution must be at least 2");
    assert!(
        !indices.is_empty() && indices.iter().all(|&j| j < d),
        "face indices must be a nonempty subset of 0..d"
    );
    let value = |x: &[f64]| -> f64 {
        indices
            .iter()
            .map(|&j| rep.eval(p, j, x))
            .fold(f64::INFINITY, f64::min)
    };
    let (lo, hi) = bounding_box(p, 0.15 * p.diameter);
    let step: Vec<f64> = (0..d)
        .map(|i| (hi[i] - lo[i]) / (grid - 1) as f64)
        .collect();
    let coord = |idx: &[usize]| -> Vec<f64> {
        (0..d).map(|i| lo[i] + step[i] * idx[i] as f64).collect()
    };

    let mut points = Vec::new();
    let mut idx = vec![0usize; d];
    loop {
        let a = coord(&idx);
        let va = value(&a);
        // edges along each axis from this lattice node
        for axis in 0..d {
            if idx[axis] + 1 >= grid {
                continue;
            }
            let mut jdx = idx.clone();
            jdx[axis] += 1;
            let b = coord(&jdx);
            let vb = value(&b);
            if va == 0.0 {
                points.push(a.clone());
                continue;
            }
            if va * vb < 0.0 {
                points.push(bisect(&a, &b, va, &value));
            }
        }
        // advance the multi-index
        let mut axis = 0;
        loop {
            idx[axis] += 1;
            if idx[axis] < grid {
                break;
            }
            idx[axis] = 0;
            axis += 1;
            if axis == d {
                return Ok(points);
            }
        }
    }
}

fn bisect(a: &[f64], b: &[f64], va: f64, value: &impl Fn(&[f64]) -> f64) -> Vec<f64> {
    let mut lo = a.to_vec();
    let mut hi = b.to_vec();
    let mut vlo = va;
    for _ in 0..60 {
        let mid: Vec<f64> = lo.iter().zip(&hi).map(|(x, y)| 0.5 * (x + y)).collect();
        let vm = value(&mid);
        if vm == 0.0 {
            return mid;
        }
        if (vm > 0.0) == (vlo > 0.0) {
            lo = mid;
            vlo = vm;
        } else {
            hi = mid;
        }
    }
    lo.iter().zip(&hi).map(|(x, y)| 0.5 * (x + y)).collect()
}

/// Write points as CSV lines "x,y" (2D) or OBJ vertex lines "v x y z"
/// (3D).
pub fn write_points(out: &mut impl Write, dim: usize, points: &[Vec<f64>]) -> Result<()> {
    for pt in points {
        match dim {
            2 => writeln!(out, "{:.12e},{:.12e}", pt[0], pt[1])?,
            3 => writeln!(out, "v {:.12e} {:.12e} {:.12e}", pt[0], pt[1], pt[2])?,
            _ => return Err(Error::UnsupportedDim(dim)),
        }
    }
    Ok(())
}
