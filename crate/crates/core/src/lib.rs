//! Exact rational convex geometry for centroid-pinned covering distances.
//!
//! The crate certifies, in exact arithmetic, that the least factor by which
//! a centroid-matched triangle inscribed in a parallelogram must be scaled
//! about the common centroid to cover it is exactly 5/2, and packages the
//! argument as a replayable proof ledger. Around that core it provides the
//! planar and 3D gauge machinery, sign certificates for polynomials via
//! Sturm chains, exact halfplane-region emptiness checks, star/hexagon
//! constructions for the ratio-3 bound of centrally symmetric bodies, a
//! brute-force grid oracle, a numeric estimator of the centroid
//! Banach-Mazur distance between convex polygons, and SVG figures computed
//! from the same data.

pub mod certificate;
pub mod certifier;
pub mod estimator;
pub mod extensions;
pub mod figures;
pub mod geometry;
pub mod geometry3;
pub mod interval;
pub mod poly;
pub mod rational;
pub mod region;

pub use certificate::{replay, Certificate, Fact, ReplayError, Step, Verdict};
pub use certifier::{
    case1_cover, case2_cover, certify_theorem, certify_theorem_with, extremal_ratio,
    extremal_triangle, replay_ledger, second_extremal_triangle, subcase_alpha_zero,
    witness_check, CertifierConfig, CertifierError, LedgerEntry, LedgerError, ProofLedger,
    Tamper, THEOREM_STATEMENT,
};
pub use estimator::{
    estimate_distance, grid_oracle_square_triangle, objective, DistanceEstimate, EstimatorError,
    GaugePair, SearchConfig,
};
pub use extensions::{
    claim_check, claim_scan, conjecture_scan, cube_simplex_check, hexagon_hull,
    inscribed_centroid_triangles, medial_triangle, star_of_triangle, ExtensionsError, ScanResult,
    Star,
};
pub use figures::{emit_figures, FiguresError};
pub use geometry::{
    apply_affine, contains_polygon, edge_support_ratios, gauge_factor, point, polygon_from_json,
    polygon_to_json, unit_square, AffineMap2, ContainmentMode, ConvexPolygon, GeometryError,
    Point2, Triangle,
};
pub use geometry3::{point3, Box3, Geometry3Error, Point3, Simplex3};
pub use interval::Interval;
pub use poly::{certify_sign_on_interval, sturm_root_count, Polynomial, SignRequirement};
pub use rational::{format_rational, parse_rational, rat, rat_int, Rational};
pub use region::{region_empty, BilinearForm, BoundingBox, LinearConstraint2, LinearForm, RegionError};
