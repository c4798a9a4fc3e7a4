//! Small dense linear algebra: elimination solves, rank, and spectral
//! norms of d-by-d matrices. Everything here operates on `Vec<Vec<f64>>`
//! row-major matrices; sizes are desk scale (d <= ~6, n <= a few hundred).

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Solve `A x = b` by Gaussian elimination with partial pivoting.
/// Returns `None` when a pivot falls below `pivot_tol`.
pub fn solve(a: &[Vec<f64>], b: &[f64], pivot_tol: f64) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    for col in 0..n {
        let (piv, piv_val) = (col..n)
            .map(|r| (r, m[r][col].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if piv_val < pivot_tol {
            return None;
        }
        m.swap(col, piv);
        for r in col + 1..n {
            let factor = m[r][col] / m[col][col];
            if factor != 0.0 {
                for c in col..=n {
                    m[r][c] -= factor * m[col][c];
                }
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = m[row][n];
        for c in row + 1..n {
            s -= m[row][c] * x[c];
        }
        x[row] = s / m[row][row];
    }
    Some(x)
}

/// Numerical rank of a (possibly rectangular) matrix via row elimination.
pub fn rank(a: &[Vec<f64>], tol: f64) -> usize {
    if a.is_empty() {
        return 0;
    }
    let rows = a.len();
    let cols = a[0].len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let (piv, piv_val) = (r..rows)
            .map(|i| (i, m[i][col].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if piv_val < tol {
            continue;
        }
        m.swap(r, piv);
        for i in r + 1..rows {
            let factor = m[i][col] / m[r][col];
            if factor != 0.0 {
                for c in col..cols {
                    m[i][c] -= factor * m[r][c];
                }
            }
        }
        r += 1;
    }
    r
}

/// A unit vector spanning the null space of a rank-deficient square-ish
/// system of `rows` constraints in `dim` unknowns, or `None` if the rows
/// already have full column rank.
pub fn null_direction(rows: &[Vec<f64>], dim: usize, tol: f64) -> Option<Vec<f64>> {
    // Gram-Schmidt the rows, then find a coordinate direction with a
    // nonzero residual after projection.
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for row in rows {
        let mut v = row.clone();
        for b in &basis {
            let c = dot(&v, b);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= c * bi;
            }
        }
        let nv = norm(&v);
        if nv > tol {
            for vi in v.iter_mut() {
                *vi /= nv;
            }
            basis.push(v);
        }
    }
    if basis.len() >= dim {
        return None;
    }
    let mut best: Option<Vec<f64>> = None;
    let mut best_norm = tol;
    for i in 0..dim {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        for b in &basis {
            let c = dot(&v, b);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= c * bi;
            }
        }
        let nv = norm(&v);
        if nv > best_norm {
            best_norm = nv;
            best = Some(v.iter().map(|x| x / nv).collect());
        }
    }
    best
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn symmetric_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let mut m = a.to_vec();
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += m[i][j] * m[i][j];
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for i in 0..n {
                    let (aip, aiq) = (m[i][p], m[i][q]);
                    m[i][p] = c * aip - s * aiq;
                    m[i][q] = s * aip + c * aiq;
                }
                for i in 0..n {
                    let (api, aqi) = (m[p][i], m[q][i]);
                    m[p][i] = c * api - s * aqi;
                    m[q][i] = s * api + c * aqi;
                }
            }
        }
    }
    (0..n).map(|i| m[i][i]).collect()
}

/// Smallest singular value of a square matrix.
pub fn smallest_singular_value(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut gram = vec![vec![0.0; n]; n];
    for (i, gi) in gram.iter_mut().enumerate() {
        for (j, g) in gi.iter_mut().enumerate() {
            *g = (0..n).map(|k| a[k][i] * a[k][j]).sum();
        }
    }
    let eigs = symmetric_eigenvalues(&gram);
    eigs.into_iter()
        .fold(f64::INFINITY, f64::min)
        .max(0.0)
        .sqrt()
}

/// Spectral norm (largest singular value) of a square matrix.
pub fn spectral_norm(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut gram = vec![vec![0.0; n]; n];
    for (i, gi) in gram.iter_mut().enumerate() {
        for (j, g) in gi.iter_mut().enumerate() {
            *g = (0..n).map(|k| a[k][i] * a[k][j]).sum();
        }
    }
    let eigs = symmetric_eigenvalues(&gram);
    eigs.into_iter()
        .fold(0.0f64, f64::max)
        .max(0.0)
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_identity() {
        let a = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let x = solve(&a, &[3.0, -2.0], 1e-12).unwrap();
        assert_eq!(x, vec![3.0, -2.0]);
    }

    #[test]
    fn solve_singular_returns_none() {
        let a = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(solve(&a, &[1.0, 2.0], 1e-12).is_none());
    }

    #[test]
    fn jacobi_eigenvalues_diag() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 2.0]];
        let mut eigs = symmetric_eigenvalues(&a);
        eigs.sort_by(f64::total_cmp);
        assert!((eigs[0] - 1.0).abs() < 1e-12);
        assert!((eigs[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn singular_values_of_rotation() {
        let (c, s) = (0.6, 0.8);
        let a = vec![vec![c, -s], vec![s, c]];
        assert!((smallest_singular_value(&a) - 1.0).abs() < 1e-12);
        assert!((spectral_norm(&a) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn null_direction_of_plane() {
        let rows = vec![vec![0.0, 0.0, 1.0], vec![0.0, 1.0, 0.0]];
        let w = null_direction(&rows, 3, 1e-12).unwrap();
        assert!((w[0].abs() - 1.0).abs() < 1e-12);
        assert!(w[1].abs() < 1e-12 && w[2].abs() < 1e-12);
    }
}
