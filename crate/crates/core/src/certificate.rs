//! Machine-checkable certificates: structured exact-arithmetic facts plus a
//! deterministic rebuild procedure, so every stored certificate can be
//! replayed from its inputs and compared step by step.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{ContainmentMode, Point2};
use crate::geometry3::Point3;
use crate::interval::Interval;
use crate::poly::{Polynomial, SignRequirement};
use crate::rational::{serde_rational, serde_rational_vec, Rational};
use crate::region::{BilinearForm, BoundingBox, LinearConstraint2, LinearForm};

/// Outcome of a certificate or ledger.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

/// A product of two polynomials, used in expansion-identity facts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyProduct {
    pub a: Polynomial,
    pub b: Polynomial,
}

/// One exact-arithmetic fact recorded by a certificate step. Facts are pure
/// data; their meaning is fixed by the certificate kind's rebuild procedure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "fact", content = "data", rename_all = "snake_case")]
pub enum Fact {
    /// The polynomial is identically zero.
    PolyIsZero { poly: Polynomial },
    /// Sign of poly at a point.
    PolySign {
        poly: Polynomial,
        #[serde(with = "serde_rational")]
        at: Rational,
        sign: i8,
    },
    /// Number of distinct roots of poly in an interval.
    RootCount {
        poly: Polynomial,
        interval: Interval,
        count: u64,
    },
    /// The sum of the listed polynomial products equals `equals`.
    PolySum {
        terms: Vec<PolyProduct>,
        equals: Polynomial,
        holds: bool,
    },
    /// Summary of a sign certification over an interval.
    SignOnInterval {
        poly: Polynomial,
        interval: Interval,
        required: SignRequirement,
        pass: bool,
    },
    /// Value of numer/denom at a point (denominator nonzero there).
    RationalFunctionValue {
        numer: Polynomial,
        denom: Polynomial,
        #[serde(with = "serde_rational")]
        at: Rational,
        #[serde(with = "serde_rational")]
        value: Rational,
    },
    /// All listed values are equal.
    ValuesEqual {
        #[serde(with = "serde_rational_vec")]
        values: Vec<Rational>,
        equal: bool,
    },
    /// A linear form used in a query matches the independently derived one.
    FormsMatch {
        expected: LinearForm,
        used: LinearForm,
        matches: bool,
    },
    /// A bilinear form used in a query matches the independently derived one.
    BilinearFormsMatch {
        expected: BilinearForm,
        used: BilinearForm,
        matches: bool,
    },
    /// Two lines (zero sets of linear forms) meet at the recorded point.
    LinesMeet {
        first: LinearForm,
        second: LinearForm,
        at: Point2,
    },
    /// A bilinear form keeps the required sign over a box, witnessed by its
    /// values at the box corners (the form is affine in each variable).
    BilinearBox {
        form: BilinearForm,
        corners: Vec<Point2>,
        #[serde(with = "serde_rational_vec")]
        values: Vec<Rational>,
        required: SignRequirement,
        holds: bool,
    },
    /// Result of one halfplane clip in a region-emptiness run.
    ClipStep {
        constraint: LinearConstraint2,
        region_after: Vec<Point2>,
    },
    /// The clipped region became empty at the given clip index.
    EmptyAfterClip { at_step: u64 },
    /// Maximal slack of a strict constraint over the clipped region.
    StrictSlack {
        constraint: LinearConstraint2,
        #[serde(with = "serde_rational")]
        max_slack: Rational,
        at: Point2,
    },
    /// Summary of a region-emptiness query.
    RegionEmptyCheck {
        constraints: Vec<LinearConstraint2>,
        bounds: BoundingBox,
        empty: bool,
    },
    /// Outcome of an exact grid sweep.
    GridSweep {
        label: String,
        #[serde(with = "serde_rational")]
        step: Rational,
        points: u64,
        failures: u64,
    },
    /// Vertex containment of one polygon in another.
    ContainsPolygon {
        outer: Vec<Point2>,
        inner: Vec<Point2>,
        mode: ContainmentMode,
        holds: bool,
    },
    /// Area centroid of the polygon with the given vertices.
    CentroidIs {
        vertices: Vec<Point2>,
        centroid: Point2,
    },
    /// Gauge of d (about center) needed to cover c.
    GaugeIs {
        c: Vec<Point2>,
        d: Vec<Point2>,
        center: Point2,
        #[serde(with = "serde_rational")]
        value: Rational,
    },
    /// Per-edge support ratios behind a gauge value.
    EdgeSupportRatios {
        c: Vec<Point2>,
        d: Vec<Point2>,
        center: Point2,
        #[serde(with = "serde_rational_vec")]
        ratios: Vec<Rational>,
    },
    /// A one-parameter triangle family with polynomial vertex coordinates.
    FamilyVertices {
        a: Point2,
        bx: Polynomial,
        by: Polynomial,
        cx: Polynomial,
        cy: Polynomial,
        t_interval: Interval,
    },
    /// Vertices of the two star triangles in a hexagram construction.
    StarPoints {
        plus: Vec<Point2>,
        minus: Vec<Point2>,
    },
    /// Centroid of a 3D point set.
    CentroidIs3 {
        points: Vec<Point3>,
        centroid: Point3,
    },
    /// All points lie in the axis-aligned box (closed).
    PointsInBox {
        box_min: Point3,
        box_max: Point3,
        points: Vec<Point3>,
        holds: bool,
    },
    /// 3D gauge of the simplex needed to cover the box corners.
    SimplexGauge {
        simplex: Vec<Point3>,
        box_min: Point3,
        box_max: Point3,
        center: Point3,
        #[serde(with = "serde_rational")]
        value: Rational,
    },
}

/// One named step of a certificate; `ok` records whether the fact satisfies
/// the step's requirement (facts can be informational, with `ok` true).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub name: String,
    #[serde(flatten)]
    pub fact: Fact,
    pub ok: bool,
}

/// A replayable record of one proof component: rebuilding from `inputs` must
/// reproduce `steps` and `verdict` exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: String,
    pub inputs: serde_json::Value,
    pub steps: Vec<Step>,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn new(
        kind: &str,
        inputs: serde_json::Value,
        steps: Vec<Step>,
        verdict: Verdict,
    ) -> Self {
        Self {
            kind: kind.to_string(),
            inputs,
            steps,
            verdict,
        }
    }

    /// Builds a certificate whose verdict is pass iff every step is ok.
    pub fn from_steps(kind: &str, inputs: serde_json::Value, steps: Vec<Step>) -> Self {
        let verdict = if steps.iter().all(|s| s.ok) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Self::new(kind, inputs, steps, verdict)
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Name of the first step with ok = false, if any.
    pub fn first_failing_step(&self) -> Option<&str> {
        self.steps.iter().find(|s| !s.ok).map(|s| s.name.as_str())
    }
}

/// Error raised when a certificate fails to replay.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReplayError {
    #[error("unknown certificate kind {0:?}")]
    UnknownKind(String),
    #[error("certificate rebuild failed: {0}")]
    RebuildFailed(String),
    #[error("replay mismatch at {location}: {detail}")]
    Mismatch { location: String, detail: String },
}

/// Reruns the certificate kind's construction procedure on the stored inputs.
pub fn rebuild(kind: &str, inputs: &serde_json::Value) -> Result<Certificate, ReplayError> {
    let built = match kind {
        crate::poly::SIGN_CERT_KIND => crate::poly::rebuild_sign_certificate(inputs),
        crate::region::REGION_CERT_KIND => crate::region::rebuild_region_certificate(inputs),
        crate::certifier::WITNESS_KIND => crate::certifier::rebuild_witness(inputs),
        crate::certifier::CASE1_KIND => crate::certifier::rebuild_case1(inputs),
        crate::certifier::CASE2_KIND => crate::certifier::rebuild_case2(inputs),
        crate::certifier::SUBCASE_KIND => crate::certifier::rebuild_subcase(inputs),
        crate::extensions::CLAIM_KIND => crate::extensions::rebuild_claim(inputs),
        crate::extensions::CUBE_KIND => crate::extensions::rebuild_cube_simplex(inputs),
        other => return Err(ReplayError::UnknownKind(other.to_string())),
    };
    built.map_err(ReplayError::RebuildFailed)
}

/// Verifies that the certificate is reproducible: rebuilding from its inputs
/// yields the same steps and verdict. A failing-verdict certificate replays
/// successfully if it reproduces; verdict policy belongs to the caller.
pub fn replay(cert: &Certificate) -> Result<(), ReplayError> {
    let fresh = rebuild(&cert.kind, &cert.inputs)?;
    if fresh.steps.len() != cert.steps.len() {
        return Err(ReplayError::Mismatch {
            location: format!("{} step count", cert.kind),
            detail: format!("stored {}, rebuilt {}", cert.steps.len(), fresh.steps.len()),
        });
    }
    for (i, (stored, rebuilt)) in cert.steps.iter().zip(fresh.steps.iter()).enumerate() {
        if stored != rebuilt {
            return Err(ReplayError::Mismatch {
                location: format!("{} step {} ({})", cert.kind, i, stored.name),
                detail: "stored step differs from rebuilt step".to_string(),
            });
        }
    }
    if fresh.verdict != cert.verdict {
        return Err(ReplayError::Mismatch {
            location: format!("{} verdict", cert.kind),
            detail: format!("stored {:?}, rebuilt {:?}", cert.verdict, fresh.verdict),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;
    use crate::poly::{certify_sign_on_interval, SignRequirement};
    use crate::rational::{rat, rat_int};

    #[test]
    fn serde_round_trip_preserves_certificate() {
        let p = Polynomial::from_i64(&[0, -6, 30]);
        let iv = Interval::closed(rat_int(0), rat(1, 5)).unwrap();
        let cert = certify_sign_on_interval(&p, &iv, SignRequirement::NonPositive).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(cert, back);
    }

    #[test]
    fn replay_accepts_fresh_and_rejects_corrupted() {
        let p = Polynomial::from_i64(&[-1, 0, 1]);
        let iv = Interval::closed(rat_int(2), rat_int(5)).unwrap();
        let cert = certify_sign_on_interval(&p, &iv, SignRequirement::Positive).unwrap();
        assert!(cert.passed());
        replay(&cert).unwrap();

        let mut corrupted = cert.clone();
        if let Fact::PolySign { sign, .. } = &mut corrupted.steps[1].fact {
            *sign = -*sign;
        }
        let err = replay(&corrupted).unwrap_err();
        assert!(matches!(err, ReplayError::Mismatch { .. }));
    }

    #[test]
    fn unknown_kind_is_rejected() {
        let cert = Certificate::new(
            "no_such_kind",
            serde_json::Value::Null,
            vec![],
            Verdict::Pass,
        );
        assert!(matches!(
            replay(&cert),
            Err(ReplayError::UnknownKind(_))
        ));
    }
}
