//! Numeric search for the least covering product between two convex
//! polygons over centroid-pinned linear maps, and an exact brute-force grid
//! oracle for the square-vs-centered-triangle instance.
//!
//! The search objective for a linear map L is
//! F(L) = gauge(C, L(D), o) * gauge(L(D), C, o) with both bodies centered at
//! the origin; the inner homothety scale is eliminated in closed form, so
//! F(L) is exactly the best covering ratio achievable with the map L, and
//! the search minimum is an upper bound on the true distance. The search
//! trajectory runs in floating point; the returned endpoint is re-evaluated
//! in exact rational arithmetic.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{
    apply_affine, gauge_factor, point, unit_square, AffineMap2, ConvexPolygon, GeometryError,
    Point2, Triangle,
};
use crate::rational::{rat_int, serde_rational, to_f64, Rational};

/// Error from the estimator or the grid oracle.
#[derive(Debug, Error)]
pub enum EstimatorError {
    #[error("invalid search configuration: {0}")]
    BadConfig(String),
    #[error("the map is singular")]
    SingularMap,
    #[error("no valid triangle at this grid resolution")]
    NoValidTriangle,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Tuning knobs for the pattern search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Grid points per free parameter in the coarse pass.
    pub coarse_grid_steps: usize,
    /// Number of step-shrink rounds in the local refinement.
    pub refinement_rounds: usize,
    /// Step multiplier per refinement round, in (0, 1).
    #[serde(with = "serde_rational")]
    pub shrink_factor: Rational,
    /// Reported precision of the float estimate.
    pub tolerance: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            coarse_grid_steps: 24,
            refinement_rounds: 40,
            shrink_factor: Rational::new(1.into(), 2.into()),
            tolerance: 0.005,
        }
    }
}

impl SearchConfig {
    fn validate(&self) -> Result<(), EstimatorError> {
        if self.coarse_grid_steps < 1 || self.refinement_rounds < 1 {
            return Err(EstimatorError::BadConfig(
                "grid steps and refinement rounds must be at least 1".into(),
            ));
        }
        let one = rat_int(1);
        if self.shrink_factor <= Rational::new(0.into(), 1.into()) || self.shrink_factor >= one {
            return Err(EstimatorError::BadConfig(
                "shrink factor must lie strictly between 0 and 1".into(),
            ));
        }
        if !(self.tolerance > 0.0) {
            return Err(EstimatorError::BadConfig(
                "tolerance must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// The two exact gauges at a map: target against image and image against
/// target, both about the common centroid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaugePair {
    /// Least factor scaling the image so it covers the target.
    #[serde(with = "serde_rational")]
    pub target_in_image: Rational,
    /// Least factor scaling the target so it covers the image.
    #[serde(with = "serde_rational")]
    pub image_in_target: Rational,
}

/// Search outcome: the float estimate is exactly the product of the two
/// stored rational gauges, rounded to float for display.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceEstimate {
    pub lambda_hat: f64,
    pub best_map: AffineMap2,
    pub exact_gauges: GaugePair,
}

/// Exact covering product of the linear part of the map: both bodies are
/// centered, D is mapped, and the two gauges about the origin are
/// multiplied. Invariant under positive rescaling of the map.
pub fn objective(
    l: &AffineMap2,
    c: &ConvexPolygon,
    d: &ConvexPolygon,
) -> Result<Rational, EstimatorError> {
    if l.is_singular() {
        return Err(EstimatorError::SingularMap);
    }
    let c0 = c.translated_to_origin(&c.centroid());
    let d0 = d.translated_to_origin(&d.centroid());
    let lin = AffineMap2::linear(
        l.m11.clone(),
        l.m12.clone(),
        l.m21.clone(),
        l.m22.clone(),
    );
    let e = apply_affine(&lin, &d0)?;
    let o = point(0, 0);
    let g1 = gauge_factor(&c0, &e, &o)?;
    let g2 = gauge_factor(&e, &c0, &o)?;
    Ok(g1 * g2)
}

fn centered_f64(p: &ConvexPolygon) -> Vec<(f64, f64)> {
    let g = p.centroid();
    p.vertices()
        .iter()
        .map(|v| (to_f64(&(&v.x - &g.x)), to_f64(&(&v.y - &g.y))))
        .collect()
}

/// Gauge of `body` (counterclockwise, origin strictly inside) needed to
/// cover `target`, in floating point; infinite when the origin is not
/// safely interior.
fn gauge_f64(target: &[(f64, f64)], body: &[(f64, f64)]) -> f64 {
    let m = body.len();
    let mut worst = f64::NEG_INFINITY;
    for i in 0..m {
        let (px, py) = body[i];
        let (qx, qy) = body[(i + 1) % m];
        let nx = qy - py;
        let ny = px - qx;
        let h = nx * px + ny * py;
        if h <= 1e-12 * (nx.abs() + ny.abs()) {
            return f64::INFINITY;
        }
        let mut best = f64::NEG_INFINITY;
        for &(wx, wy) in target {
            let s = nx * wx + ny * wy;
            if s > best {
                best = s;
            }
        }
        let r = best / h;
        if r > worst {
            worst = r;
        }
    }
    worst
}

/// Expands one pinned-entry face and its three free parameters into the full
/// 2x2 matrix [m11, m12, m21, m22].
fn face_matrix(face: usize, sign: f64, p: &[f64; 3]) -> [f64; 4] {
    let mut m = [0.0; 4];
    let mut k = 0;
    for (i, slot) in m.iter_mut().enumerate() {
        if i == face {
            *slot = sign;
        } else {
            *slot = p[k];
            k += 1;
        }
    }
    m
}

fn objective_f64(m: &[f64; 4], c: &[(f64, f64)], d: &[(f64, f64)]) -> f64 {
    let det = m[0] * m[3] - m[1] * m[2];
    if det.abs() < 1e-12 {
        return f64::INFINITY;
    }
    let mut e: Vec<(f64, f64)> = d
        .iter()
        .map(|&(x, y)| (m[0] * x + m[1] * y, m[2] * x + m[3] * y))
        .collect();
    if det < 0.0 {
        e.reverse();
    }
    let g1 = gauge_f64(c, &e);
    if !g1.is_finite() {
        return f64::INFINITY;
    }
    let g2 = gauge_f64(&e, c);
    if !g2.is_finite() {
        return f64::INFINITY;
    }
    g1 * g2
}

/// All 26 sign patterns over three axes, used as pattern-search directions.
fn directions() -> Vec<[f64; 3]> {
    let mut out = Vec::with_capacity(26);
    for dx in [-1.0, 0.0, 1.0] {
        for dy in [-1.0, 0.0, 1.0] {
            for dz in [-1.0, 0.0, 1.0] {
                if dx != 0.0 || dy != 0.0 || dz != 0.0 {
                    out.push([dx, dy, dz]);
                }
            }
        }
    }
    out
}

fn rational_from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("search parameters are finite")
}

/// Minimizes the covering product over linear maps: the scale freedom is
/// removed by pinning the largest-magnitude matrix entry to +1 or -1 (eight
/// faces, covering both orientations), each face is scanned on a coarse
/// grid, the best cells are polished by a shrinking pattern search, and the
/// winning map is re-evaluated exactly.
pub fn estimate_distance(
    c: &ConvexPolygon,
    d: &ConvexPolygon,
    cfg: &SearchConfig,
) -> Result<DistanceEstimate, EstimatorError> {
    cfg.validate()?;
    let c_pts = centered_f64(c);
    let d_pts = centered_f64(d);
    let steps = cfg.coarse_grid_steps;
    let grid: Vec<f64> = if steps == 1 {
        vec![0.0]
    } else {
        (0..steps)
            .map(|i| -1.0 + 2.0 * i as f64 / (steps as f64 - 1.0))
            .collect()
    };
    let faces: [(usize, f64); 8] = [
        (0, 1.0),
        (0, -1.0),
        (1, 1.0),
        (1, -1.0),
        (2, 1.0),
        (2, -1.0),
        (3, 1.0),
        (3, -1.0),
    ];
    // Per face, the three best coarse cells (strict improvements only, so
    // the scan order makes the outcome deterministic).
    let coarse: Vec<(usize, f64, Vec<([f64; 3], f64)>)> = faces
        .par_iter()
        .map(|&(face, sign)| {
            let mut top: Vec<([f64; 3], f64)> = Vec::new();
            for &x in &grid {
                for &y in &grid {
                    for &z in &grid {
                        let p = [x, y, z];
                        let v = objective_f64(&face_matrix(face, sign, &p), &c_pts, &d_pts);
                        if !v.is_finite() {
                            continue;
                        }
                        let pos = top.partition_point(|(_, w)| *w <= v);
                        if pos < 3 {
                            top.insert(pos, (p, v));
                            top.truncate(3);
                        }
                    }
                }
            }
            (face, sign, top)
        })
        .collect();
    let shrink = to_f64(&cfg.shrink_factor);
    let initial_step = if steps > 1 {
        2.0 / (steps as f64 - 1.0)
    } else {
        1.0
    };
    let dirs = directions();
    let mut best: Option<(f64, usize, f64, [f64; 3])> = None;
    for (face, sign, top) in coarse {
        for (start, start_value) in top {
            let mut p = start;
            let mut v = start_value;
            let mut step = initial_step;
            for _ in 0..cfg.refinement_rounds {
                let mut moved = true;
                let mut guard = 0;
                while moved && guard < 100 {
                    moved = false;
                    for dir in &dirs {
                        let q = [
                            p[0] + dir[0] * step,
                            p[1] + dir[1] * step,
                            p[2] + dir[2] * step,
                        ];
                        let w = objective_f64(&face_matrix(face, sign, &q), &c_pts, &d_pts);
                        if w < v - 1e-15 {
                            p = q;
                            v = w;
                            moved = true;
                        }
                    }
                    guard += 1;
                }
                step *= shrink;
            }
            if best.as_ref().is_none_or(|(bv, ..)| v < *bv) {
                best = Some((v, face, sign, p));
            }
        }
    }
    let (_, face, sign, p) = best.ok_or(EstimatorError::SingularMap)?;
    let m = face_matrix(face, sign, &p);
    let lin = AffineMap2::linear(
        rational_from_f64(m[0]),
        rational_from_f64(m[1]),
        rational_from_f64(m[2]),
        rational_from_f64(m[3]),
    );
    // Exact re-evaluation at the endpoint.
    let c0 = c.translated_to_origin(&c.centroid());
    let d0 = d.translated_to_origin(&d.centroid());
    let e = apply_affine(&lin, &d0)?;
    let o = point(0, 0);
    let g1 = gauge_factor(&c0, &e, &o)?;
    let g2 = gauge_factor(&e, &c0, &o)?;
    let lambda_hat = to_f64(&(&g1 * &g2));
    let cen_c = c.centroid();
    let cen_d = d.centroid();
    let mapped_cen = lin.apply_point(&cen_d);
    let best_map = lin.with_translation(&cen_c.x - &mapped_cen.x, &cen_c.y - &mapped_cen.y);
    Ok(DistanceEstimate {
        lambda_hat,
        best_map,
        exact_gauges: GaugePair {
            target_in_image: g1,
            image_in_target: g2,
        },
    })
}

fn sorted_vertices(t: &Triangle) -> Vec<Point2> {
    let mut v: Vec<Point2> = t.vertices().iter().map(|&p| p.clone()).collect();
    v.sort();
    v
}

type OracleBest = Option<(Rational, Vec<Point2>, Triangle)>;

fn better(a: OracleBest, b: OracleBest) -> OracleBest {
    match (a, b) {
        (None, x) => x,
        (x, None) => x,
        (Some(x), Some(y)) => {
            if (&y.0, &y.1) < (&x.0, &x.1) {
                Some(y)
            } else {
                Some(x)
            }
        }
    }
}

/// Exhaustive exact minimum of the gauge over origin-centered triangles
/// with two vertices on the pitch-2/steps grid inside the square and the
/// third forced by the centroid (kept when it stays inside the square).
/// Returns the minimum and a lexicographically smallest witness.
pub fn grid_oracle_square_triangle(steps: u32) -> Result<(Rational, Triangle), EstimatorError> {
    if steps == 0 {
        return Err(EstimatorError::BadConfig("steps must be at least 1".into()));
    }
    let s = steps as i64;
    let mut pts = Vec::new();
    for i in 0..=s {
        for j in 0..=s {
            pts.push(Point2::new(
                Rational::new((2 * i - s).into(), s.into()),
                Rational::new((2 * j - s).into(), s.into()),
            ));
        }
    }
    let square = unit_square();
    let o = point(0, 0);
    let one = rat_int(1);
    let minus_one = rat_int(-1);
    let best = (0..pts.len())
        .into_par_iter()
        .map(|i| {
            let mut local: OracleBest = None;
            let v1 = &pts[i];
            for v2 in pts.iter().skip(i + 1) {
                let v3 = Point2::new(-(&v1.x + &v2.x), -(&v1.y + &v2.y));
                if v3.x < minus_one || v3.x > one || v3.y < minus_one || v3.y > one {
                    continue;
                }
                let Ok(t) = Triangle::new(v1.clone(), v2.clone(), v3) else {
                    continue;
                };
                let g = gauge_factor(&square, &t.to_polygon(), &o)
                    .expect("triangle centroid is interior");
                let key = sorted_vertices(&t);
                local = better(local, Some((g, key, t)));
            }
            local
        })
        .reduce(|| None, better);
    match best {
        Some((g, _, t)) => Ok((g, t)),
        None => Err(EstimatorError::NoValidTriangle),
    }
}
