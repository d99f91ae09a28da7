//! Exact emptiness decisions for planar regions cut out by linear
//! inequalities. The region is intersected with a bounding box and clipped by
//! the closed version of every constraint; emptiness of the clip, or a
//! nonpositive maximal slack for some strict constraint, certifies emptiness,
//! while the alternative always yields an explicit witness point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificate::{Certificate, Fact, Step};
use crate::geometry::Point2;
use crate::rational::{rat_int, Rational};

/// Error from region-emptiness queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegionError {
    #[error("region is nonempty, witness {witness}")]
    NotEmpty { witness: Point2 },
    #[error("empty constraint list is a vacuous query")]
    EmptyConstraintList,
    #[error("constraint normal vector is zero")]
    ZeroNormal,
    #[error("bounding box has inverted or empty extent")]
    InvalidBounds,
}

/// Linear form a x + b y + c over the plane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearForm {
    #[serde(with = "crate::rational::serde_rational")]
    pub a: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub b: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub c: Rational,
}

impl LinearForm {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        Self { a, b, c }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(Rational::zero(), Rational::zero(), c)
    }

    pub fn eval(&self, p: &Point2) -> Rational {
        &self.a * &p.x + &self.b * &p.y + &self.c
    }

    pub fn add(&self, o: &LinearForm) -> LinearForm {
        LinearForm::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c)
    }

    pub fn sub(&self, o: &LinearForm) -> LinearForm {
        LinearForm::new(&self.a - &o.a, &self.b - &o.b, &self.c - &o.c)
    }

    pub fn neg(&self) -> LinearForm {
        LinearForm::new(-self.a.clone(), -self.b.clone(), -self.c.clone())
    }

    pub fn scale(&self, k: &Rational) -> LinearForm {
        LinearForm::new(&self.a * k, &self.b * k, &self.c * k)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    /// Divides by the positive rational making the coefficients integers with
    /// content one; the sign pattern (hence the halfplane f <= 0) is kept.
    pub fn normalized(&self) -> LinearForm {
        let mut l = BigInt::one();
        for r in [&self.a, &self.b, &self.c] {
            l = l.lcm(r.denom());
        }
        let ia = (self.a.numer() * &l) / self.a.denom();
        let ib = (self.b.numer() * &l) / self.b.denom();
        let ic = (self.c.numer() * &l) / self.c.denom();
        let g = ia.gcd(&ib).gcd(&ic);
        if g.is_zero() {
            return LinearForm::constant(Rational::zero());
        }
        LinearForm::new(
            Rational::from(ia / &g),
            Rational::from(ib / &g),
            Rational::from(ic / &g),
        )
    }

    /// Whether the two forms agree up to a positive scalar, so they define the
    /// same inequality f <= 0 (or f < 0).
    pub fn matches(&self, other: &LinearForm) -> bool {
        self.normalized() == other.normalized()
    }

    /// Constraint f <= 0.
    pub fn le_zero(&self) -> Result<LinearConstraint2, RegionError> {
        LinearConstraint2::new(self.a.clone(), self.b.clone(), Relation::Le, -self.c.clone())
    }

    /// Constraint f < 0.
    pub fn lt_zero(&self) -> Result<LinearConstraint2, RegionError> {
        LinearConstraint2::new(self.a.clone(), self.b.clone(), Relation::Lt, -self.c.clone())
    }

    /// Constraint f >= 0.
    pub fn ge_zero(&self) -> Result<LinearConstraint2, RegionError> {
        self.neg().le_zero()
    }

    /// Constraint f > 0.
    pub fn gt_zero(&self) -> Result<LinearConstraint2, RegionError> {
        self.neg().lt_zero()
    }
}

impl std::fmt::Display for LinearForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} x + {} y + {}", self.a, self.b, self.c)
    }
}

/// Bilinear form c0 + cx x + cy y + cxy x y; affine in each variable
/// separately, so its extremes over an axis-aligned box sit at the corners.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BilinearForm {
    #[serde(with = "crate::rational::serde_rational")]
    pub c0: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub cx: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub cy: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub cxy: Rational,
}

impl BilinearForm {
    pub fn new(c0: Rational, cx: Rational, cy: Rational, cxy: Rational) -> Self {
        Self { c0, cx, cy, cxy }
    }

    pub fn eval(&self, p: &Point2) -> Rational {
        &self.c0 + &self.cx * &p.x + &self.cy * &p.y + &self.cxy * &p.x * &p.y
    }

    pub fn corner_values(&self, corners: &[Point2]) -> Vec<Rational> {
        corners.iter().map(|p| self.eval(p)).collect()
    }

    pub fn add(&self, o: &BilinearForm) -> BilinearForm {
        BilinearForm::new(
            &self.c0 + &o.c0,
            &self.cx + &o.cx,
            &self.cy + &o.cy,
            &self.cxy + &o.cxy,
        )
    }

    pub fn sub(&self, o: &BilinearForm) -> BilinearForm {
        BilinearForm::new(
            &self.c0 - &o.c0,
            &self.cx - &o.cx,
            &self.cy - &o.cy,
            &self.cxy - &o.cxy,
        )
    }

    pub fn neg(&self) -> BilinearForm {
        BilinearForm::new(
            -self.c0.clone(),
            -self.cx.clone(),
            -self.cy.clone(),
            -self.cxy.clone(),
        )
    }

    pub fn scale(&self, k: &Rational) -> BilinearForm {
        BilinearForm::new(&self.c0 * k, &self.cx * k, &self.cy * k, &self.cxy * k)
    }

    /// Product of two bilinear forms when it stays bilinear (no quadratic
    /// term in either variable appears); None otherwise.
    pub fn mul_checked(&self, o: &BilinearForm) -> Option<BilinearForm> {
        let xx = &self.cx * &o.cx;
        let yy = &self.cy * &o.cy;
        let xxy = &self.cx * &o.cxy + &self.cxy * &o.cx;
        let xyy = &self.cy * &o.cxy + &self.cxy * &o.cy;
        let xxyy = &self.cxy * &o.cxy;
        if !(xx.is_zero() && yy.is_zero() && xxy.is_zero() && xyy.is_zero() && xxyy.is_zero()) {
            return None;
        }
        Some(BilinearForm::new(
            &self.c0 * &o.c0,
            &self.c0 * &o.cx + &self.cx * &o.c0,
            &self.c0 * &o.cy + &self.cy * &o.c0,
            &self.c0 * &o.cxy + &self.cx * &o.cy + &self.cy * &o.cx + &self.cxy * &o.c0,
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.cx.is_zero() && self.cy.is_zero() && self.cxy.is_zero()
    }

    /// Divides by the positive rational making the coefficients integers with
    /// content one; the sign pattern is kept.
    pub fn normalized(&self) -> BilinearForm {
        let mut l = BigInt::one();
        for r in [&self.c0, &self.cx, &self.cy, &self.cxy] {
            l = l.lcm(r.denom());
        }
        let ints: Vec<BigInt> = [&self.c0, &self.cx, &self.cy, &self.cxy]
            .iter()
            .map(|r| (r.numer() * &l) / r.denom())
            .collect();
        let g = ints
            .iter()
            .fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if g.is_zero() {
            return BilinearForm::new(
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
            );
        }
        BilinearForm::new(
            Rational::from(&ints[0] / &g),
            Rational::from(&ints[1] / &g),
            Rational::from(&ints[2] / &g),
            Rational::from(&ints[3] / &g),
        )
    }

    /// Whether the two forms agree up to a positive scalar.
    pub fn matches(&self, other: &BilinearForm) -> bool {
        self.normalized() == other.normalized()
    }
}

/// Inequality sense of a linear constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Le,
    Lt,
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
        })
    }
}

/// Constraint a x + b y REL c with a nonzero normal (a, b).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearConstraint2 {
    #[serde(with = "crate::rational::serde_rational")]
    pub a: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub b: Rational,
    pub rel: Relation,
    #[serde(with = "crate::rational::serde_rational")]
    pub c: Rational,
}

impl LinearConstraint2 {
    pub fn new(
        a: Rational,
        b: Rational,
        rel: Relation,
        c: Rational,
    ) -> Result<Self, RegionError> {
        if a.is_zero() && b.is_zero() {
            return Err(RegionError::ZeroNormal);
        }
        Ok(Self { a, b, rel, c })
    }

    pub fn is_strict(&self) -> bool {
        self.rel == Relation::Lt
    }

    /// Slack c - (a x + b y); nonnegative exactly where the closed version
    /// holds, positive exactly where the strict version holds.
    pub fn slack(&self, p: &Point2) -> Rational {
        &self.c - (&self.a * &p.x + &self.b * &p.y)
    }

    pub fn holds_at(&self, p: &Point2) -> bool {
        let s = self.slack(p);
        match self.rel {
            Relation::Le => !s.is_negative(),
            Relation::Lt => s.is_positive(),
        }
    }
}

impl std::fmt::Display for LinearConstraint2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} x + {} y {} {}", self.a, self.b, self.rel, self.c)
    }
}

/// Axis-aligned search window for region queries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundingBox {
    #[serde(with = "crate::rational::serde_rational")]
    pub min_x: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub max_x: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub min_y: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub max_y: Rational,
}

impl BoundingBox {
    pub fn new(
        min_x: Rational,
        max_x: Rational,
        min_y: Rational,
        max_y: Rational,
    ) -> Result<Self, RegionError> {
        if min_x >= max_x || min_y >= max_y {
            return Err(RegionError::InvalidBounds);
        }
        Ok(Self {
            min_x,
            max_x,
            min_y,
            max_y,
        })
    }

    /// Corners in counterclockwise order.
    pub fn corners(&self) -> Vec<Point2> {
        vec![
            Point2::new(self.min_x.clone(), self.min_y.clone()),
            Point2::new(self.max_x.clone(), self.min_y.clone()),
            Point2::new(self.max_x.clone(), self.max_y.clone()),
            Point2::new(self.min_x.clone(), self.max_y.clone()),
        ]
    }
}

impl Default for BoundingBox {
    /// The standard query window [-10, 10] x [-10, 10].
    fn default() -> Self {
        Self::new(rat_int(-10), rat_int(10), rat_int(-10), rat_int(10))
            .expect("default bounds are valid")
    }
}

/// One halfplane clip (keep a x + b y - c <= 0) of a possibly degenerate
/// convex region given by its vertices.
fn clip_halfplane(region: &[Point2], k: &LinearConstraint2) -> Vec<Point2> {
    let n = region.len();
    if n == 0 {
        return Vec::new();
    }
    let f = |p: &Point2| -k.slack(p);
    let mut out: Vec<Point2> = Vec::new();
    for i in 0..n {
        let p = &region[i];
        let q = &region[(i + 1) % n];
        let fp = f(p);
        let fq = f(q);
        if !fp.is_positive() {
            out.push(p.clone());
        }
        if (fp.is_positive() && fq.is_negative()) || (fp.is_negative() && fq.is_positive()) {
            let s = &fp / (&fp - &fq);
            out.push(p.add(&q.sub(p).scale(&s)));
        }
    }
    out.dedup();
    while out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

pub(crate) const REGION_CERT_KIND: &str = "region_empty";

#[derive(Serialize, Deserialize)]
struct RegionInputs {
    constraints: Vec<LinearConstraint2>,
    bounds: BoundingBox,
}

/// Decides emptiness of the region satisfying every constraint inside the
/// bounding box (default [-10, 10] squared). Emptiness yields a passing
/// certificate; a nonempty region yields an error carrying an exact witness
/// point that satisfies every constraint, strict ones strictly.
pub fn region_empty(
    constraints: &[LinearConstraint2],
    bounds: Option<BoundingBox>,
) -> Result<Certificate, RegionError> {
    if constraints.is_empty() {
        return Err(RegionError::EmptyConstraintList);
    }
    if constraints.iter().any(|k| k.a.is_zero() && k.b.is_zero()) {
        return Err(RegionError::ZeroNormal);
    }
    let bounds = bounds.unwrap_or_default();
    if bounds.min_x >= bounds.max_x || bounds.min_y >= bounds.max_y {
        return Err(RegionError::InvalidBounds);
    }
    let inputs = serde_json::to_value(RegionInputs {
        constraints: constraints.to_vec(),
        bounds: bounds.clone(),
    })
    .expect("region inputs serialize");

    let mut steps = Vec::new();
    let mut region = bounds.corners();
    let mut empty_at = None;
    for (i, k) in constraints.iter().enumerate() {
        region = clip_halfplane(&region, k);
        steps.push(Step {
            name: format!("clip_{i}"),
            fact: Fact::ClipStep {
                constraint: k.clone(),
                region_after: region.clone(),
            },
            ok: true,
        });
        if region.is_empty() {
            empty_at = Some(i);
            break;
        }
    }

    let summary = |steps: &mut Vec<Step>| {
        steps.push(Step {
            name: "summary".to_string(),
            fact: Fact::RegionEmptyCheck {
                constraints: constraints.to_vec(),
                bounds: bounds.clone(),
                empty: true,
            },
            ok: true,
        });
    };

    if let Some(i) = empty_at {
        steps.push(Step {
            name: "empty_after_clip".to_string(),
            fact: Fact::EmptyAfterClip { at_step: i as u64 },
            ok: true,
        });
        summary(&mut steps);
        return Ok(Certificate::from_steps(REGION_CERT_KIND, inputs, steps));
    }

    // The closed clip is nonempty. A strict constraint whose slack is
    // nonpositive on every clip vertex is nonpositive on the whole clip
    // (the slack is affine), so the strict region is empty.
    let mut argmax_per_strict: Vec<Point2> = Vec::new();
    for k in constraints.iter().filter(|k| k.is_strict()) {
        let mut best: Option<(Rational, &Point2)> = None;
        for v in &region {
            let s = k.slack(v);
            if best.as_ref().is_none_or(|(b, _)| &s > b) {
                best = Some((s, v));
            }
        }
        let (max_slack, at) = best.expect("clip region is nonempty");
        if !max_slack.is_positive() {
            steps.push(Step {
                name: "strict_infeasible".to_string(),
                fact: Fact::StrictSlack {
                    constraint: k.clone(),
                    max_slack,
                    at: at.clone(),
                },
                ok: true,
            });
            summary(&mut steps);
            return Ok(Certificate::from_steps(REGION_CERT_KIND, inputs, steps));
        }
        argmax_per_strict.push(at.clone());
    }

    // Every strict constraint has positive slack somewhere on the clip; the
    // average of its positive-slack vertices (or of all clip vertices when no
    // constraint is strict) satisfies everything, strict ones strictly,
    // because each slack is affine and nonnegative over the clip.
    let witness_of = |pts: &[Point2]| {
        let mut acc = Point2::new(Rational::zero(), Rational::zero());
        for p in pts {
            acc = acc.add(p);
        }
        acc.scale(&Rational::new(BigInt::one(), BigInt::from(pts.len())))
    };
    let witness = if argmax_per_strict.is_empty() {
        witness_of(&region)
    } else {
        witness_of(&argmax_per_strict)
    };
    debug_assert!(constraints.iter().all(|k| k.holds_at(&witness)));
    Err(RegionError::NotEmpty { witness })
}

pub(crate) fn rebuild_region_certificate(
    inputs: &serde_json::Value,
) -> Result<Certificate, String> {
    let parsed: RegionInputs = serde_json::from_value(inputs.clone())
        .map_err(|e| format!("region inputs malformed: {e}"))?;
    region_empty(&parsed.constraints, Some(parsed.bounds)).map_err(|e| e.to_string())
}
