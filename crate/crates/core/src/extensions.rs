//! Constructions around inscribed centroid triangles: the hexagon/star chain
//! showing every centrally symmetric body lies in 3 times such a triangle
//! (with the square attaining 3), the medial-triangle example attaining 4 in
//! the general convex setting, and the 3D cube/simplex configuration with
//! gauge exactly 3.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

use crate::certificate::{Certificate, Fact, Step};
use crate::geometry::{
    contains_polygon, gauge_factor, line_intersection, midpoint, ContainmentMode, ConvexPolygon,
    GeometryError, Line2, Point2, Triangle,
};
use crate::geometry3::{point3, Box3, Geometry3Error, Simplex3, simplex_gauge};
use crate::rational::{rat_int, serde_rational, Rational};

pub(crate) const CLAIM_KIND: &str = "claim_star_containment";
pub(crate) const CUBE_KIND: &str = "cube_simplex_gauge";

/// Error from the star/scan constructions.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtensionsError {
    #[error("triangle centroid {found} does not match the requested center {expected}")]
    CentroidMismatch { expected: Point2, found: Point2 },
    #[error("polygon is not centrally symmetric about its centroid")]
    NotCentrallySymmetric,
    #[error("family empty at this resolution")]
    EmptyFamily,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn step(name: impl Into<String>, fact: Fact, ok: bool) -> Step {
    Step {
        name: name.into(),
        fact,
        ok,
    }
}

/// Union of two triangles that are point reflections of each other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Star {
    pub plus: Triangle,
    pub minus: Triangle,
}

fn require_centroid(t: &Triangle, center: &Point2) -> Result<(), ExtensionsError> {
    let found = t.centroid();
    if &found != center {
        return Err(ExtensionsError::CentroidMismatch {
            expected: center.clone(),
            found,
        });
    }
    Ok(())
}

/// Convex hull of a triangle and its point reflection through its centroid:
/// an affine-regular hexagon, centrally symmetric about the center.
pub fn hexagon_hull(t: &Triangle, center: &Point2) -> Result<ConvexPolygon, ExtensionsError> {
    require_centroid(t, center)?;
    let [a, b, c] = t.vertices();
    Ok(ConvexPolygon::new(vec![
        a.clone(),
        c.reflect_through(center),
        b.clone(),
        a.reflect_through(center),
        c.clone(),
        b.reflect_through(center),
    ])?)
}

/// Star obtained by prolonging the alternating hexagon sides: the lines
/// through (a, reflected b), (b, reflected c), (c, reflected a) bound one
/// triangle; its reflection bounds the other.
pub fn star_of_triangle(t: &Triangle, center: &Point2) -> Result<Star, ExtensionsError> {
    require_centroid(t, center)?;
    let [a, b, c] = t.vertices();
    let l1 = Line2::through(a, &b.reflect_through(center))?;
    let l2 = Line2::through(b, &c.reflect_through(center))?;
    let l3 = Line2::through(c, &a.reflect_through(center))?;
    let cross = |u: &Line2, v: &Line2| {
        line_intersection(u, v).expect("prolonged sides of a nondegenerate triangle intersect")
    };
    let p12 = cross(&l1, &l2);
    let p23 = cross(&l2, &l3);
    let p31 = cross(&l3, &l1);
    let minus = Triangle::new(
        p12.reflect_through(center),
        p23.reflect_through(center),
        p31.reflect_through(center),
    )?;
    let plus = Triangle::new(p12, p23, p31)?;
    Ok(Star { plus, minus })
}

#[derive(Serialize, Deserialize)]
struct ClaimInputs {
    triangle: Triangle,
}

/// Certifies the containment chain for one triangle about its centroid g:
/// hexagon inside each star triangle, and each star triangle inside the
/// triangle scaled by 3 about g. Any centrally symmetric body in which the
/// triangle is inscribed with centroid g lies in the hexagon's star, hence
/// in the 3-scaled triangle.
pub fn claim_check(t: &Triangle) -> Certificate {
    let inputs = serde_json::to_value(ClaimInputs {
        triangle: t.clone(),
    })
    .expect("claim inputs serialize");
    let center = t.centroid();
    let star = star_of_triangle(t, &center).expect("center is the centroid");
    let hexagon = hexagon_hull(t, &center).expect("center is the centroid");
    let tripled = t
        .to_polygon()
        .homothety(&center, &rat_int(3))
        .expect("ratio 3 is positive");
    let tri_pts: Vec<Point2> = t.vertices().iter().map(|&v| v.clone()).collect();
    let mut steps = Vec::new();
    steps.push(step(
        "centroid",
        Fact::CentroidIs {
            vertices: tri_pts,
            centroid: center.clone(),
        },
        true,
    ));
    let star_centered = star.plus.centroid() == center && star.minus.centroid() == center;
    steps.push(step(
        "star_points",
        Fact::StarPoints {
            plus: star.plus.vertices().iter().map(|&v| v.clone()).collect(),
            minus: star.minus.vertices().iter().map(|&v| v.clone()).collect(),
        },
        star_centered,
    ));
    for (name, outer, inner) in [
        ("plus_in_tripled", &tripled, &star.plus.to_polygon()),
        ("minus_in_tripled", &tripled, &star.minus.to_polygon()),
        ("hexagon_in_plus", &star.plus.to_polygon(), &hexagon),
        ("hexagon_in_minus", &star.minus.to_polygon(), &hexagon),
    ] {
        let holds = contains_polygon(outer, inner, ContainmentMode::Closed);
        steps.push(step(
            name,
            Fact::ContainsPolygon {
                outer: outer.vertices().to_vec(),
                inner: inner.vertices().to_vec(),
                mode: ContainmentMode::Closed,
                holds,
            },
            holds,
        ));
    }
    Certificate::from_steps(CLAIM_KIND, inputs, steps)
}

pub(crate) fn rebuild_claim(inputs: &serde_json::Value) -> Result<Certificate, String> {
    let parsed: ClaimInputs = serde_json::from_value(inputs.clone())
        .map_err(|e| format!("claim inputs malformed: {e}"))?;
    Ok(claim_check(&parsed.triangle))
}

/// Evenly spaced boundary points: each edge sampled at fractions j/n for
/// 0 <= j < n (the missing endpoint is the next edge's first sample).
fn boundary_samples(m: &ConvexPolygon, n: usize) -> Vec<Point2> {
    let verts = m.vertices();
    let k = verts.len();
    let nq = rat_int(n as i64);
    let mut out = Vec::with_capacity(k * n);
    for i in 0..k {
        let p = &verts[i];
        let q = &verts[(i + 1) % k];
        let d = q.sub(p);
        for j in 0..n {
            out.push(p.add(&d.scale(&(rat_int(j as i64) / &nq))));
        }
    }
    out
}

fn sample_family(m: &ConvexPolygon, n: usize) -> Result<Vec<Triangle>, ExtensionsError> {
    if n == 0 {
        return Err(ExtensionsError::EmptyFamily);
    }
    let g = m.centroid();
    let g3 = g.scale(&rat_int(3));
    let samples = boundary_samples(m, n);
    let mut out = Vec::new();
    for (i, v1) in samples.iter().enumerate() {
        for v2 in samples.iter().skip(i + 1) {
            let v3 = g3.sub(v1).sub(v2);
            if !m.on_boundary(&v3) {
                continue;
            }
            if let Ok(t) = Triangle::new(v1.clone(), v2.clone(), v3) {
                out.push(t);
            }
        }
    }
    if out.is_empty() {
        return Err(ExtensionsError::EmptyFamily);
    }
    Ok(out)
}

/// Triangles with all three vertices exactly on the boundary of a centrally
/// symmetric polygon and centroid exactly at the polygon's centroid. The
/// first two vertices run over an n-per-edge boundary grid; the third is
/// forced by the centroid and kept only when it lands on the boundary.
pub fn inscribed_centroid_triangles(
    m: &ConvexPolygon,
    n: usize,
) -> Result<Vec<Triangle>, ExtensionsError> {
    let g = m.centroid();
    let vertex_set: BTreeSet<&Point2> = m.vertices().iter().collect();
    if !m
        .vertices()
        .iter()
        .all(|v| vertex_set.contains(&v.reflect_through(&g)))
    {
        return Err(ExtensionsError::NotCentrallySymmetric);
    }
    sample_family(m, n)
}

/// Outcome of a scan over an inscribed-centroid-triangle family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub samples: u64,
    #[serde(with = "serde_rational")]
    pub max_gauge: Rational,
    pub witness: Triangle,
}

fn scan_family(m: &ConvexPolygon, family: Vec<Triangle>) -> Result<ScanResult, ExtensionsError> {
    let g = m.centroid();
    let gauges: Result<Vec<Rational>, GeometryError> = family
        .par_iter()
        .map(|t| gauge_factor(m, &t.to_polygon(), &g))
        .collect();
    let gauges = gauges?;
    let mut best = 0;
    for i in 1..gauges.len() {
        if gauges[i] > gauges[best] {
            best = i;
        }
    }
    Ok(ScanResult {
        samples: family.len() as u64,
        max_gauge: gauges[best].clone(),
        witness: family[best].clone(),
    })
}

/// Largest gauge over the inscribed centroid triangles of a centrally
/// symmetric polygon; never exceeds 3, and reaches 3 for the square.
pub fn claim_scan(m: &ConvexPolygon, n: usize) -> Result<ScanResult, ExtensionsError> {
    let family = inscribed_centroid_triangles(m, n)?;
    scan_family(m, family)
}

/// Largest gauge over boundary-inscribed centroid triangles of an arbitrary
/// convex polygon; the value 4 is conjectured to be the universal bound.
pub fn conjecture_scan(c: &ConvexPolygon, n: usize) -> Result<ScanResult, ExtensionsError> {
    let family = sample_family(c, n)?;
    scan_family(c, family)
}

/// Triangle on the three edge midpoints: the image of the original under the
/// half-turn-and-halve map about the centroid, inscribed with the same
/// centroid, and needing gauge exactly 4 to cover the original.
pub fn medial_triangle(t: &Triangle) -> Triangle {
    let [a, b, c] = t.vertices();
    Triangle::new(midpoint(b, c), midpoint(c, a), midpoint(a, b))
        .expect("midpoint triangle of a nondegenerate triangle is nondegenerate")
}

#[derive(Serialize, Deserialize)]
struct CubeSimplexInputs {
    cube: Box3,
    simplex: Simplex3,
}

fn build_cube_simplex(cube: &Box3, simplex: &Simplex3) -> Result<Certificate, Geometry3Error> {
    let inputs = serde_json::to_value(CubeSimplexInputs {
        cube: cube.clone(),
        simplex: simplex.clone(),
    })
    .expect("cube/simplex inputs serialize");
    let points = simplex.vertices().to_vec();
    let center = simplex.centroid();
    let mut steps = Vec::new();
    let centered = center == point3(0, 0, 0);
    steps.push(step(
        "centroid",
        Fact::CentroidIs3 {
            points: points.clone(),
            centroid: center.clone(),
        },
        centered,
    ));
    let inside = points.iter().all(|p| cube.contains(p));
    steps.push(step(
        "simplex_in_box",
        Fact::PointsInBox {
            box_min: cube.min.clone(),
            box_max: cube.max.clone(),
            points: points.clone(),
            holds: inside,
        },
        inside,
    ));
    let value = simplex_gauge(&cube.corners(), simplex, &center)?;
    let ok = value == rat_int(3);
    steps.push(step(
        "gauge",
        Fact::SimplexGauge {
            simplex: points,
            box_min: cube.min.clone(),
            box_max: cube.max.clone(),
            center,
            value,
        },
        ok,
    ));
    Ok(Certificate::from_steps(CUBE_KIND, inputs, steps))
}

/// Certifies that the regular simplex on four alternating corners of the
/// cube [-1, 1]^3 is centered, inscribed, and covers the cube at gauge
/// exactly 3.
pub fn cube_simplex_check() -> Certificate {
    let cube = Box3::new(point3(-1, -1, -1), point3(1, 1, 1)).expect("valid box");
    let simplex = Simplex3::new([
        point3(1, 1, 1),
        point3(1, -1, -1),
        point3(-1, 1, -1),
        point3(-1, -1, 1),
    ])
    .expect("alternating corners are affinely independent");
    build_cube_simplex(&cube, &simplex).expect("canonical configuration has interior center")
}

pub(crate) fn rebuild_cube_simplex(inputs: &serde_json::Value) -> Result<Certificate, String> {
    let parsed: CubeSimplexInputs = serde_json::from_value(inputs.clone())
        .map_err(|e| format!("cube/simplex inputs malformed: {e}"))?;
    build_cube_simplex(&parsed.cube, &parsed.simplex).map_err(|e| e.to_string())
}
