//! Exact planar convex geometry: points, lines, convex polygons, triangles,
//! centroids, containment, homothety, affine maps, and the gauge (Minkowski
//! functional) computation deciding the minimal lambda with C in lambda D.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rational::{format_rational, parse_rational, rat_int, sign, Rational};

/// Error from planar-geometry constructors and operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertices {i}, {j}, {k} violate strict convexity")]
    NotStrictlyConvex { i: usize, j: usize, k: usize },
    #[error("degenerate triangle (collinear vertices)")]
    DegenerateTriangle,
    #[error("coincident points define no line")]
    CoincidentPoints,
    #[error("homothety ratio must be positive")]
    NonPositiveRatio,
    #[error("gauge undefined: center not interior to the gauge body")]
    GaugeUndefined,
    #[error("affine map is singular")]
    SingularMap,
}

/// Exact planar point; serializes as ["num/den", "num/den"].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn origin() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn add(&self, o: &Point2) -> Point2 {
        Point2::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Point2) -> Point2 {
        Point2::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scale(&self, k: &Rational) -> Point2 {
        Point2::new(&self.x * k, &self.y * k)
    }

    /// Point reflection through a center: 2 center - self.
    pub fn reflect_through(&self, center: &Point2) -> Point2 {
        center.scale(&rat_int(2)).sub(self)
    }
}

impl std::fmt::Display for Point2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

impl Serialize for Point2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [format_rational(&self.x), format_rational(&self.y)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        Ok(Point2::new(
            parse_rational(&x).map_err(D::Error::custom)?,
            parse_rational(&y).map_err(D::Error::custom)?,
        ))
    }
}

/// Convenience constructor from machine integers.
pub fn point(x: i64, y: i64) -> Point2 {
    Point2::new(rat_int(x), rat_int(y))
}

/// Twice the signed area of triangle (o, a, b); positive for a left turn.
pub fn cross2(o: &Point2, a: &Point2, b: &Point2) -> Rational {
    let u = a.sub(o);
    let v = b.sub(o);
    &u.x * &v.y - &u.y * &v.x
}

pub fn midpoint(p: &Point2, q: &Point2) -> Point2 {
    p.add(q).scale(&Rational::new(BigInt::one(), BigInt::from(2)))
}

/// Line a x + b y = c with integer-reduced coefficients whose first nonzero
/// of (a, b) is positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Line2 {
    #[serde(with = "crate::rational::serde_rational")]
    pub a: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub b: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub c: Rational,
}

impl Line2 {
    /// Line through two distinct points.
    pub fn through(p: &Point2, q: &Point2) -> Result<Self, GeometryError> {
        if p == q {
            return Err(GeometryError::CoincidentPoints);
        }
        let d = q.sub(p);
        let a = d.y.clone();
        let b = -d.x;
        let c = &a * &p.x + &b * &p.y;
        Ok(Self::normalized(a, b, c))
    }

    fn normalized(a: Rational, b: Rational, c: Rational) -> Self {
        let mut l = BigInt::one();
        for r in [&a, &b, &c] {
            l = l.lcm(r.denom());
        }
        let mut ia = (a.numer() * &l) / a.denom();
        let mut ib = (b.numer() * &l) / b.denom();
        let mut ic = (c.numer() * &l) / c.denom();
        let g = ia.gcd(&ib).gcd(&ic);
        if !g.is_zero() {
            ia /= &g;
            ib /= &g;
            ic /= &g;
        }
        let flip = if ia.is_zero() {
            ib.is_negative()
        } else {
            ia.is_negative()
        };
        if flip {
            ia = -ia;
            ib = -ib;
            ic = -ic;
        }
        Self {
            a: Rational::from(ia),
            b: Rational::from(ib),
            c: Rational::from(ic),
        }
    }

    /// Signed residual a x + b y - c at a point; zero on the line.
    pub fn eval(&self, p: &Point2) -> Rational {
        &self.a * &p.x + &self.b * &p.y - &self.c
    }
}

/// Exact intersection point of two lines; None when parallel or coincident.
pub fn line_intersection(l1: &Line2, l2: &Line2) -> Option<Point2> {
    let det = &l1.a * &l2.b - &l2.a * &l1.b;
    if det.is_zero() {
        return None;
    }
    let x = (&l1.c * &l2.b - &l2.c * &l1.b) / &det;
    let y = (&l1.a * &l2.c - &l2.a * &l1.c) / &det;
    Some(Point2::new(x, y))
}

/// Whether the closed segment pq meets the line (sign product test).
pub fn segment_hits_line(line: &Line2, p: &Point2, q: &Point2) -> bool {
    sign(&line.eval(p)) as i32 * sign(&line.eval(q)) as i32 <= 0
}

/// Containment test mode: closed includes the boundary, open excludes it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContainmentMode {
    Closed,
    Open,
}

/// Strictly convex polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point2>", into = "Vec<Point2>")]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

impl TryFrom<Vec<Point2>> for ConvexPolygon {
    type Error = GeometryError;
    fn try_from(v: Vec<Point2>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<ConvexPolygon> for Vec<Point2> {
    fn from(p: ConvexPolygon) -> Self {
        p.vertices
    }
}

fn signed_area2(vertices: &[Point2]) -> Rational {
    let n = vertices.len();
    let mut acc = Rational::zero();
    for i in 0..n {
        let p = &vertices[i];
        let q = &vertices[(i + 1) % n];
        acc += &p.x * &q.y - &q.x * &p.y;
    }
    acc
}

impl ConvexPolygon {
    /// Validates strict convexity and normalizes orientation to
    /// counterclockwise; rejects violations naming the offending triple.
    pub fn new(mut vertices: Vec<Point2>) -> Result<Self, GeometryError> {
        if vertices.len() < 3 {
            return Err(GeometryError::TooFewVertices(vertices.len()));
        }
        if signed_area2(&vertices).is_negative() {
            vertices.reverse();
        }
        let n = vertices.len();
        for i in 0..n {
            let j = (i + 1) % n;
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                if !cross2(&vertices[i], &vertices[j], &vertices[k]).is_positive() {
                    return Err(GeometryError::NotStrictlyConvex { i, j, k });
                }
            }
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Exact area centroid.
    pub fn centroid(&self) -> Point2 {
        let n = self.vertices.len();
        let a2 = signed_area2(&self.vertices);
        let mut cx = Rational::zero();
        let mut cy = Rational::zero();
        for i in 0..n {
            let p = &self.vertices[i];
            let q = &self.vertices[(i + 1) % n];
            let w = &p.x * &q.y - &q.x * &p.y;
            cx += (&p.x + &q.x) * &w;
            cy += (&p.y + &q.y) * &w;
        }
        let d = rat_int(3) * a2;
        Point2::new(cx / &d, cy / &d)
    }

    pub fn contains_point(&self, p: &Point2, mode: ContainmentMode) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let s = cross2(&self.vertices[i], &self.vertices[(i + 1) % n], p);
            match mode {
                ContainmentMode::Closed => !s.is_negative(),
                ContainmentMode::Open => s.is_positive(),
            }
        })
    }

    /// Whether p lies exactly on the boundary.
    pub fn on_boundary(&self, p: &Point2) -> bool {
        self.contains_point(p, ContainmentMode::Closed)
            && !self.contains_point(p, ContainmentMode::Open)
    }

    /// Scales about a center with a positive ratio.
    pub fn homothety(&self, center: &Point2, ratio: &Rational) -> Result<Self, GeometryError> {
        if !ratio.is_positive() {
            return Err(GeometryError::NonPositiveRatio);
        }
        let mapped = self
            .vertices
            .iter()
            .map(|v| center.add(&v.sub(center).scale(ratio)))
            .collect();
        Self::new(mapped)
    }

    /// Translates every vertex by -t, moving point t to the origin.
    pub fn translated_to_origin(&self, t: &Point2) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| v.sub(t)).collect(),
        }
    }
}

/// Vertex containment of inner in outer (sufficient by convexity).
pub fn contains_polygon(
    outer: &ConvexPolygon,
    inner: &ConvexPolygon,
    mode: ContainmentMode,
) -> bool {
    inner
        .vertices()
        .iter()
        .all(|v| outer.contains_point(v, mode))
}

/// Per-edge support ratios of c against the edges of d about the center: for
/// each edge of d written n.x <= h (h > 0 after centering), the maximum of
/// n.v / h over vertices v of c. The gauge is their maximum.
pub fn edge_support_ratios(
    c: &ConvexPolygon,
    d: &ConvexPolygon,
    center: &Point2,
) -> Result<Vec<Rational>, GeometryError> {
    if !d.contains_point(center, ContainmentMode::Open) {
        return Err(GeometryError::GaugeUndefined);
    }
    let dv = d.vertices();
    let n = dv.len();
    let mut ratios = Vec::with_capacity(n);
    for i in 0..n {
        let p = dv[i].sub(center);
        let q = dv[(i + 1) % n].sub(center);
        let nx = &q.y - &p.y;
        let ny = &p.x - &q.x;
        let h = &nx * &p.x + &ny * &p.y;
        debug_assert!(h.is_positive());
        let mut best: Option<Rational> = None;
        for w in c.vertices() {
            let wc = w.sub(center);
            let s = &nx * &wc.x + &ny * &wc.y;
            if best.as_ref().is_none_or(|b| &s > b) {
                best = Some(s);
            }
        }
        ratios.push(best.expect("polygon has vertices") / &h);
    }
    Ok(ratios)
}

/// Minimal lambda with c contained in the homothety of d about the center by
/// lambda (closed containment).
pub fn gauge_factor(
    c: &ConvexPolygon,
    d: &ConvexPolygon,
    center: &Point2,
) -> Result<Rational, GeometryError> {
    let ratios = edge_support_ratios(c, d, center)?;
    Ok(ratios.into_iter().max().expect("at least 3 edges"))
}

/// Positively oriented nondegenerate triangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point2>", into = "Vec<Point2>")]
pub struct Triangle {
    a: Point2,
    b: Point2,
    c: Point2,
}

impl TryFrom<Vec<Point2>> for Triangle {
    type Error = GeometryError;
    fn try_from(v: Vec<Point2>) -> Result<Self, Self::Error> {
        match <[Point2; 3]>::try_from(v) {
            Ok([a, b, c]) => Triangle::new(a, b, c),
            Err(_) => Err(GeometryError::DegenerateTriangle),
        }
    }
}

impl From<Triangle> for Vec<Point2> {
    fn from(t: Triangle) -> Self {
        vec![t.a, t.b, t.c]
    }
}

impl Triangle {
    /// Reorients to positive order; rejects collinear vertices.
    pub fn new(a: Point2, b: Point2, c: Point2) -> Result<Self, GeometryError> {
        match sign(&cross2(&a, &b, &c)) {
            0 => Err(GeometryError::DegenerateTriangle),
            1 => Ok(Self { a, b, c }),
            _ => Ok(Self { a, b: c, c: b }),
        }
    }

    pub fn vertices(&self) -> [&Point2; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn to_polygon(&self) -> ConvexPolygon {
        ConvexPolygon::new(vec![self.a.clone(), self.b.clone(), self.c.clone()])
            .expect("triangle is strictly convex")
    }

    /// Vertex average, equal to the area centroid for triangles.
    pub fn centroid(&self) -> Point2 {
        self.a
            .add(&self.b)
            .add(&self.c)
            .scale(&Rational::new(BigInt::one(), BigInt::from(3)))
    }
}

/// Triangle with two given vertices and the third forced by the centroid:
/// (v1, v2, 3 g - v1 - v2), positively oriented.
pub fn triangle_from_two_vertices(
    v1: &Point2,
    v2: &Point2,
    g: &Point2,
) -> Result<Triangle, GeometryError> {
    let v3 = g.scale(&rat_int(3)).sub(v1).sub(v2);
    Triangle::new(v1.clone(), v2.clone(), v3)
}

/// Affine map x -> M x + t.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineMap2 {
    #[serde(with = "crate::rational::serde_rational")]
    pub m11: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub m12: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub m21: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub m22: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub t1: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub t2: Rational,
}

impl AffineMap2 {
    pub fn linear(m11: Rational, m12: Rational, m21: Rational, m22: Rational) -> Self {
        Self {
            m11,
            m12,
            m21,
            m22,
            t1: Rational::zero(),
            t2: Rational::zero(),
        }
    }

    pub fn identity() -> Self {
        Self::linear(rat_int(1), Rational::zero(), Rational::zero(), rat_int(1))
    }

    pub fn with_translation(mut self, t1: Rational, t2: Rational) -> Self {
        self.t1 = t1;
        self.t2 = t2;
        self
    }

    pub fn det(&self) -> Rational {
        &self.m11 * &self.m22 - &self.m12 * &self.m21
    }

    pub fn is_singular(&self) -> bool {
        self.det().is_zero()
    }

    pub fn apply_point(&self, p: &Point2) -> Point2 {
        Point2::new(
            &self.m11 * &p.x + &self.m12 * &p.y + &self.t1,
            &self.m21 * &p.x + &self.m22 * &p.y + &self.t2,
        )
    }
}

/// Image of a polygon under a nonsingular affine map, reoriented positively.
pub fn apply_affine(a: &AffineMap2, p: &ConvexPolygon) -> Result<ConvexPolygon, GeometryError> {
    if a.is_singular() {
        return Err(GeometryError::SingularMap);
    }
    ConvexPolygon::new(p.vertices().iter().map(|v| a.apply_point(v)).collect())
}

/// The square with vertices (1, +-1) and (-1, +-1).
pub fn unit_square() -> ConvexPolygon {
    ConvexPolygon::new(vec![point(1, 1), point(-1, 1), point(-1, -1), point(1, -1)])
        .expect("square is valid")
}

/// Error from reading a polygon JSON document.
#[derive(Debug, Error)]
pub enum PolygonFileError {
    #[error("polygon JSON malformed: {0}")]
    Json(#[from] serde_json::Error),
    #[error("vertex {index}: {message}")]
    BadVertex { index: usize, message: String },
    #[error("vertices are not in counterclockwise order")]
    NotCounterClockwise,
    #[error("{0}")]
    Invalid(#[from] GeometryError),
}

#[derive(Serialize, Deserialize)]
struct PolygonDoc {
    vertices: Vec<[String; 2]>,
}

/// Serializes a polygon to the {"vertices": [["num/den","num/den"], ...]}
/// document format.
pub fn polygon_to_json(p: &ConvexPolygon) -> String {
    let doc = PolygonDoc {
        vertices: p
            .vertices()
            .iter()
            .map(|v| [format_rational(&v.x), format_rational(&v.y)])
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("polygon document serializes")
}

/// Parses and validates a polygon document; the vertex order must already be
/// counterclockwise.
pub fn polygon_from_json(s: &str) -> Result<ConvexPolygon, PolygonFileError> {
    let doc: PolygonDoc = serde_json::from_str(s)?;
    let mut vertices = Vec::with_capacity(doc.vertices.len());
    for (index, [x, y]) in doc.vertices.iter().enumerate() {
        let parse = |v: &str| {
            parse_rational(v).map_err(|e| PolygonFileError::BadVertex {
                index,
                message: e.to_string(),
            })
        };
        vertices.push(Point2::new(parse(x)?, parse(y)?));
    }
    if vertices.len() >= 3 && signed_area2(&vertices).is_negative() {
        return Err(PolygonFileError::NotCounterClockwise);
    }
    Ok(ConvexPolygon::new(vertices)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn delta0() -> Triangle {
        Triangle::new(
            Point2::new(rat_int(1), rat(1, 2)),
            Point2::new(rat_int(-1), rat(1, 2)),
            point(0, -1),
        )
        .unwrap()
    }

    #[test]
    fn centroid_examples() {
        assert_eq!(unit_square().centroid(), point(0, 0));
        assert_eq!(delta0().centroid(), point(0, 0));
        assert_eq!(delta0().to_polygon().centroid(), point(0, 0));
        let t = Triangle::new(point(0, 0), point(1, 0), point(0, 1)).unwrap();
        assert_eq!(t.centroid(), Point2::new(rat(1, 3), rat(1, 3)));
    }

    #[test]
    fn point_containment_examples() {
        let s = unit_square();
        assert!(s.contains_point(&point(0, 0), ContainmentMode::Open));
        let edge = Point2::new(rat_int(1), rat(1, 2));
        assert!(!s.contains_point(&edge, ContainmentMode::Open));
        assert!(s.contains_point(&edge, ContainmentMode::Closed));
        assert!(!s.contains_point(&point(2, 0), ContainmentMode::Closed));
    }

    #[test]
    fn polygon_containment_examples() {
        let s = unit_square();
        let d0 = delta0().to_polygon();
        assert!(contains_polygon(&s, &d0, ContainmentMode::Closed));
        let big = d0.homothety(&point(0, 0), &rat(5, 2)).unwrap();
        assert!(contains_polygon(&big, &s, ContainmentMode::Closed));
        assert!(!contains_polygon(&big, &s, ContainmentMode::Open));
    }

    #[test]
    fn homothety_examples() {
        let d0 = delta0().to_polygon();
        let scaled = d0.homothety(&point(0, 0), &rat(5, 2)).unwrap();
        assert_eq!(
            scaled.vertices(),
            &[
                Point2::new(rat(5, 2), rat(5, 4)),
                Point2::new(rat(-5, 2), rat(5, 4)),
                Point2::new(rat_int(0), rat(-5, 2)),
            ]
        );
        let s = unit_square();
        assert_eq!(s.homothety(&point(0, 0), &rat_int(1)).unwrap(), s);
        let doubled = s.homothety(&point(1, 1), &rat_int(2)).unwrap();
        assert!(doubled.vertices().contains(&point(-3, -3)));
        assert!(doubled.vertices().contains(&point(1, 1)));
        assert_eq!(
            s.homothety(&point(0, 0), &rat_int(0)),
            Err(GeometryError::NonPositiveRatio)
        );
    }

    #[test]
    fn gauge_examples() {
        let s = unit_square();
        let o = point(0, 0);
        assert_eq!(gauge_factor(&s, &delta0().to_polygon(), &o).unwrap(), rat(5, 2));
        let second = Triangle::new(
            Point2::new(rat_int(1), rat(1, 5)),
            Point2::new(rat(-4, 5), rat(4, 5)),
            Point2::new(rat(-1, 5), rat_int(-1)),
        )
        .unwrap();
        let ratios = edge_support_ratios(&s, &second.to_polygon(), &o).unwrap();
        assert_eq!(ratios, vec![rat(5, 2), rat(5, 2), rat(5, 2)]);
        let t3 = Triangle::new(point(1, 1), point(-1, 0), point(0, -1)).unwrap();
        assert_eq!(gauge_factor(&s, &t3.to_polygon(), &o).unwrap(), rat_int(3));
        assert_eq!(
            gauge_factor(&s, &s, &point(1, 1)),
            Err(GeometryError::GaugeUndefined)
        );
    }

    #[test]
    fn gauge_is_minimal() {
        let s = unit_square();
        let o = point(0, 0);
        let d0 = delta0().to_polygon();
        let lambda = gauge_factor(&s, &d0, &o).unwrap();
        let cover = d0.homothety(&o, &lambda).unwrap();
        assert!(contains_polygon(&cover, &s, ContainmentMode::Closed));
        let shy = &lambda * rat(999, 1000);
        let short = d0.homothety(&o, &shy).unwrap();
        assert!(!contains_polygon(&short, &s, ContainmentMode::Closed));
    }

    #[test]
    fn triangle_construction_examples() {
        let t = triangle_from_two_vertices(
            &Point2::new(rat_int(1), rat(1, 2)),
            &Point2::new(rat_int(-1), rat(1, 2)),
            &point(0, 0),
        )
        .unwrap();
        assert_eq!(t, delta0());
        assert_eq!(
            triangle_from_two_vertices(&point(1, 0), &point(-1, 0), &point(0, 0)),
            Err(GeometryError::DegenerateTriangle)
        );
        let t = triangle_from_two_vertices(
            &Point2::new(rat_int(1), rat(1, 4)),
            &Point2::new(rat_int(-1), rat(1, 3)),
            &point(0, 0),
        )
        .unwrap();
        assert_eq!(t.vertices()[2], &Point2::new(rat_int(0), rat(-7, 12)));
    }

    #[test]
    fn line_examples() {
        // Line through the scaled vertices b', c' at alpha = beta = 1/2 meets
        // x = -1 at y = -1.
        let b = Point2::new(rat(-5, 2), rat(5, 4));
        let c = Point2::new(rat_int(0), rat(-5, 2));
        let lbc = Line2::through(&b, &c).unwrap();
        let x_minus_1 = Line2::through(&point(-1, 1), &point(-1, -1)).unwrap();
        assert_eq!(
            line_intersection(&lbc, &x_minus_1).unwrap(),
            point(-1, -1)
        );
        let x_axis = Line2::through(&point(0, 0), &point(1, 0)).unwrap();
        let y_axis = Line2::through(&point(0, 0), &point(0, 1)).unwrap();
        assert_eq!(line_intersection(&x_axis, &y_axis).unwrap(), point(0, 0));
        let y1 = Line2::through(&point(0, 1), &point(1, 1)).unwrap();
        let ym1 = Line2::through(&point(0, -1), &point(1, -1)).unwrap();
        assert_eq!(line_intersection(&y1, &ym1), None);
        assert_eq!(
            Line2::through(&point(1, 1), &point(1, 1)),
            Err(GeometryError::CoincidentPoints)
        );
    }

    #[test]
    fn segment_hit_detection() {
        let diag = Line2::through(&point(0, 0), &point(1, 1)).unwrap();
        assert!(segment_hits_line(&diag, &point(1, 0), &point(0, 1)));
        assert!(segment_hits_line(&diag, &point(1, 0), &point(2, 2)));
        assert!(!segment_hits_line(&diag, &point(1, 0), &point(2, 1)));
    }

    #[test]
    fn affine_examples() {
        let s = unit_square();
        assert_eq!(apply_affine(&AffineMap2::identity(), &s).unwrap(), s);
        let half = AffineMap2::linear(rat(1, 2), rat_int(0), rat_int(0), rat(1, 2));
        let small = apply_affine(&half, &s).unwrap();
        assert_eq!(
            gauge_factor(&s, &small, &point(0, 0)).unwrap(),
            rat_int(2)
        );
        let mirror = AffineMap2::linear(rat_int(1), rat_int(0), rat_int(0), rat_int(-1));
        let m = apply_affine(&mirror, &delta0().to_polygon()).unwrap();
        assert!(signed_area2(m.vertices()).is_positive());
        let singular = AffineMap2::linear(rat_int(1), rat_int(1), rat_int(1), rat_int(1));
        assert_eq!(
            apply_affine(&singular, &s),
            Err(GeometryError::SingularMap)
        );
    }

    #[test]
    fn polygon_validation_diagnostics() {
        let err = ConvexPolygon::new(vec![point(0, 0), point(1, 0), point(2, 0), point(1, 1)])
            .unwrap_err();
        assert!(matches!(err, GeometryError::NotStrictlyConvex { .. }));
        assert_eq!(
            ConvexPolygon::new(vec![point(0, 0), point(1, 0)]),
            Err(GeometryError::TooFewVertices(2))
        );
        // Clockwise input is normalized by the constructor.
        let cw = ConvexPolygon::new(vec![point(0, 0), point(0, 1), point(1, 0)]).unwrap();
        assert!(signed_area2(cw.vertices()).is_positive());
    }

    #[test]
    fn polygon_json_round_trip() {
        let s = unit_square();
        let json = polygon_to_json(&s);
        let back = polygon_from_json(&json).unwrap();
        assert_eq!(s, back);
        let cw = r#"{"vertices": [["0","0"], ["0","1"], ["1","0"]]}"#;
        assert!(matches!(
            polygon_from_json(cw),
            Err(PolygonFileError::NotCounterClockwise)
        ));
        let bad = r#"{"vertices": [["0","0"], ["1/0","1"], ["1","0"]]}"#;
        assert!(matches!(
            polygon_from_json(bad),
            Err(PolygonFileError::BadVertex { index: 1, .. })
        ));
    }

    #[test]
    fn reflection_helper() {
        let p = Point2::new(rat(1, 2), rat(-1, 3));
        let r = p.reflect_through(&point(0, 0));
        assert_eq!(r, Point2::new(rat(-1, 2), rat(1, 3)));
        assert_eq!(midpoint(&p, &r), point(0, 0));
    }
}
