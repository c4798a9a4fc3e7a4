//! Built-in H-representation documents for common test shapes.

/// Unit cube |x_i| <= 1 in R^3.
pub fn cube_json() -> String {
    r#"{"dim":3,"inequalities":[
        {"a":[1,0,0],"b":1},{"a":[-1,0,0],"b":1},
        {"a":[0,1,0],"b":1},{"a":[0,-1,0],"b":1},
        {"a":[0,0,1],"b":1},{"a":[0,0,-1],"b":1}]}"#
        .to_string()
}

/// Regular tetrahedron with vertices (1,-1,1), (-1,1,1), (1,1,-1),
/// (-1,-1,-1), given by the four forms 1 -+ x1 -+ x2 -+ x3.
pub fn tetrahedron_json() -> String {
    r#"{"dim":3,"inequalities":[
        {"a":[-1,1,-1],"b":1},
        {"a":[1,-1,-1],"b":1},
        {"a":[-1,-1,1],"b":1},
        {"a":[1,1,1],"b":1}]}"#
        .to_string()
}

/// Square |x_i| <= 1 in R^2.
pub fn square_json() -> String {
    r#"{"dim":2,"inequalities":[
        {"a":[1,0],"b":1},{"a":[-1,0],"b":1},
        {"a":[0,1],"b":1},{"a":[0,-1],"b":1}]}"#
        .to_string()
}

/// Square pyramid in R^3; the apex lies on four facets, so this is not
/// simple.
pub fn square_pyramid_json() -> String {
    // base z >= 0, apex at (0,0,1); side facets x +- z <= 1, y +- z <= 1...
    // use slopes so the apex (0,0,1) is on all four side planes.
    r#"{"dim":3,"inequalities":[
        {"a":[0,0,-1],"b":0},
        {"a":[1,0,1],"b":1},{"a":[-1,0,1],"b":1},
        {"a":[0,1,1],"b":1},{"a":[0,-1,1],"b":1}]}"#
        .to_string()
}

/// Regular m-gon inscribed in the unit circle.
pub fn ngon_json(m: usize) -> String {
    assert!(m >= 3);
    let offset = (std::f64::consts::PI / m as f64).cos();
    let ineqs: Vec<String> = (0..m)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / m as f64;
            format!(
                r#"{{"a":[{:.17e},{:.17e}],"b":{:.17e}}}"#,
                theta.cos(),
                theta.sin(),
                offset
            )
        })
        .collect();
    format!(r#"{{"dim":2,"inequalities":[{}]}}"#, ineqs.join(","))
}

/// Product of two standard triangles: a simple 4-polytope with 6 facets
/// and 9 vertices.
pub fn triangle_product_json() -> String {
    r#"{"dim":4,"inequalities":[
        {"a":[-1,0,0,0],"b":0},{"a":[0,-1,0,0],"b":0},{"a":[1,1,0,0],"b":1},
        {"a":[0,0,-1,0],"b":0},{"a":[0,0,0,-1],"b":0},{"a":[0,0,1,1],"b":1}]}"#
        .to_string()
}
