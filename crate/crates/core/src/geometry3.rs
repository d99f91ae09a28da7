//! Minimal exact 3D support: points, axis-aligned boxes, simplices, and the
//! gauge of a simplex needed to cover a finite point set about a center.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rational::{format_rational, parse_rational, Rational};

/// Error from 3D constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Geometry3Error {
    #[error("degenerate simplex (coplanar vertices)")]
    DegenerateSimplex,
    #[error("box has inverted or empty extent")]
    InvalidBox,
    #[error("gauge undefined: center not interior to the simplex")]
    GaugeUndefined,
}

/// Exact 3D point; serializes as ["num/den", "num/den", "num/den"].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Point3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Self { x, y, z }
    }

    pub fn add(&self, o: &Point3) -> Point3 {
        Point3::new(&self.x + &o.x, &self.y + &o.y, &self.z + &o.z)
    }

    pub fn sub(&self, o: &Point3) -> Point3 {
        Point3::new(&self.x - &o.x, &self.y - &o.y, &self.z - &o.z)
    }

    pub fn scale(&self, k: &Rational) -> Point3 {
        Point3::new(&self.x * k, &self.y * k, &self.z * k)
    }

    pub fn dot(&self, o: &Point3) -> Rational {
        &self.x * &o.x + &self.y * &o.y + &self.z * &o.z
    }

    pub fn cross(&self, o: &Point3) -> Point3 {
        Point3::new(
            &self.y * &o.z - &self.z * &o.y,
            &self.z * &o.x - &self.x * &o.z,
            &self.x * &o.y - &self.y * &o.x,
        )
    }

    pub fn neg(&self) -> Point3 {
        Point3::new(-self.x.clone(), -self.y.clone(), -self.z.clone())
    }
}

impl Serialize for Point3 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [
            format_rational(&self.x),
            format_rational(&self.y),
            format_rational(&self.z),
        ]
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point3 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y, z] = <[String; 3]>::deserialize(d)?;
        Ok(Point3::new(
            parse_rational(&x).map_err(D::Error::custom)?,
            parse_rational(&y).map_err(D::Error::custom)?,
            parse_rational(&z).map_err(D::Error::custom)?,
        ))
    }
}

/// Convenience constructor from machine integers.
pub fn point3(x: i64, y: i64, z: i64) -> Point3 {
    Point3::new(
        Rational::from(BigInt::from(x)),
        Rational::from(BigInt::from(y)),
        Rational::from(BigInt::from(z)),
    )
}

/// Average of a nonempty point set.
pub fn centroid3(points: &[Point3]) -> Point3 {
    let mut acc = point3(0, 0, 0);
    for p in points {
        acc = acc.add(p);
    }
    acc.scale(&Rational::new(BigInt::from(1), BigInt::from(points.len())))
}

/// Closed axis-aligned box [min, max] in each coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Box3 {
    pub min: Point3,
    pub max: Point3,
}

impl Box3 {
    pub fn new(min: Point3, max: Point3) -> Result<Self, Geometry3Error> {
        if min.x >= max.x || min.y >= max.y || min.z >= max.z {
            return Err(Geometry3Error::InvalidBox);
        }
        Ok(Self { min, max })
    }

    /// The eight corners, x varying fastest, then y, then z.
    pub fn corners(&self) -> Vec<Point3> {
        let mut out = Vec::with_capacity(8);
        for z in [&self.min.z, &self.max.z] {
            for y in [&self.min.y, &self.max.y] {
                for x in [&self.min.x, &self.max.x] {
                    out.push(Point3::new(x.clone(), y.clone(), z.clone()));
                }
            }
        }
        out
    }

    pub fn contains(&self, p: &Point3) -> bool {
        self.min.x <= p.x
            && p.x <= self.max.x
            && self.min.y <= p.y
            && p.y <= self.max.y
            && self.min.z <= p.z
            && p.z <= self.max.z
    }
}

/// Nondegenerate 3-simplex given by four vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point3>", into = "Vec<Point3>")]
pub struct Simplex3 {
    vertices: Vec<Point3>,
}

impl TryFrom<Vec<Point3>> for Simplex3 {
    type Error = Geometry3Error;
    fn try_from(v: Vec<Point3>) -> Result<Self, Self::Error> {
        if v.len() != 4 {
            return Err(Geometry3Error::DegenerateSimplex);
        }
        let u = v[1].sub(&v[0]);
        let w = v[2].sub(&v[0]);
        let t = v[3].sub(&v[0]);
        if u.cross(&w).dot(&t).is_zero() {
            return Err(Geometry3Error::DegenerateSimplex);
        }
        Ok(Self { vertices: v })
    }
}

impl From<Simplex3> for Vec<Point3> {
    fn from(s: Simplex3) -> Self {
        s.vertices
    }
}

impl Simplex3 {
    pub fn new(vertices: [Point3; 4]) -> Result<Self, Geometry3Error> {
        Self::try_from(vertices.to_vec())
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn centroid(&self) -> Point3 {
        centroid3(&self.vertices)
    }
}

/// Per-face support ratios of the point set against the simplex about the
/// center: each face plane is written n.x <= h with outward n and h > 0 after
/// centering; the ratio is the maximum of n.p / h over the points.
pub fn simplex_face_ratios(
    points: &[Point3],
    simplex: &Simplex3,
    center: &Point3,
) -> Result<Vec<Rational>, Geometry3Error> {
    let v = simplex.vertices();
    let mut ratios = Vec::with_capacity(4);
    for i in 0..4 {
        let others: Vec<&Point3> = (0..4).filter(|&j| j != i).map(|j| &v[j]).collect();
        let mut n = others[1].sub(others[0]).cross(&others[2].sub(others[0]));
        if n.dot(&v[i].sub(others[0])).is_positive() {
            n = n.neg();
        }
        let h = n.dot(&others[0].sub(center));
        if !h.is_positive() {
            return Err(Geometry3Error::GaugeUndefined);
        }
        let mut best: Option<Rational> = None;
        for p in points {
            let s = n.dot(&p.sub(center));
            if best.as_ref().is_none_or(|b| &s > b) {
                best = Some(s);
            }
        }
        ratios.push(best.expect("nonempty point set") / &h);
    }
    Ok(ratios)
}

/// Minimal lambda with every point inside the homothety of the simplex about
/// the center by lambda.
pub fn simplex_gauge(
    points: &[Point3],
    simplex: &Simplex3,
    center: &Point3,
) -> Result<Rational, Geometry3Error> {
    let ratios = simplex_face_ratios(points, simplex, center)?;
    Ok(ratios.into_iter().max().expect("four faces"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn alternating_simplex() -> Simplex3 {
        Simplex3::new([
            point3(1, 1, 1),
            point3(1, -1, -1),
            point3(-1, 1, -1),
            point3(-1, -1, 1),
        ])
        .unwrap()
    }

    #[test]
    fn box_corners_and_containment() {
        let b = Box3::new(point3(-1, -1, -1), point3(1, 1, 1)).unwrap();
        let corners = b.corners();
        assert_eq!(corners.len(), 8);
        assert!(corners.iter().all(|p| b.contains(p)));
        assert!(b.contains(&point3(0, 0, 0)));
        assert!(!b.contains(&point3(2, 0, 0)));
        assert!(Box3::new(point3(1, 0, 0), point3(-1, 1, 1)).is_err());
    }

    #[test]
    fn simplex_centroid_and_validation() {
        assert_eq!(alternating_simplex().centroid(), point3(0, 0, 0));
        assert_eq!(
            Simplex3::new([
                point3(0, 0, 0),
                point3(1, 0, 0),
                point3(0, 1, 0),
                point3(1, 1, 0),
            ])
            .unwrap_err(),
            Geometry3Error::DegenerateSimplex
        );
    }

    #[test]
    fn cube_needs_gauge_three() {
        let b = Box3::new(point3(-1, -1, -1), point3(1, 1, 1)).unwrap();
        let s = alternating_simplex();
        let g = simplex_gauge(&b.corners(), &s, &point3(0, 0, 0)).unwrap();
        assert_eq!(g, rat_int(3));
        let scaled: Vec<Point3> = s
            .vertices()
            .iter()
            .map(|v| v.scale(&rat_int(3)))
            .collect();
        let cover = Simplex3::try_from(scaled).unwrap();
        // Every cube corner sits inside the tripled simplex.
        let ratios = simplex_face_ratios(&b.corners(), &cover, &point3(0, 0, 0)).unwrap();
        assert!(ratios.iter().all(|r| r <= &rat_int(1)));
    }

    #[test]
    fn gauge_needs_interior_center() {
        let s = alternating_simplex();
        assert_eq!(
            simplex_gauge(&[point3(0, 0, 0)], &s, &point3(5, 5, 5)).unwrap_err(),
            Geometry3Error::GaugeUndefined
        );
        // The simplex itself has gauge exactly 1 about its centroid.
        let g = simplex_gauge(s.vertices(), &s, &point3(0, 0, 0)).unwrap();
        assert_eq!(g, rat_int(1));
    }

    #[test]
    fn point_serialization() {
        let p = Point3::new(rat(1, 2), rat_int(-1), rat(3, 4));
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"["1/2","-1/1","3/4"]"#);
        let back: Point3 = serde_json::from_str(&json).unwrap();
        assert_eq!(p, back);
    }
}
