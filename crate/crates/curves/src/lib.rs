//! Rational curves in projective space: evaluation and projection,
//! trisecant lines through a curve point, determinantal secant
//! hypersurfaces of normal curves, and multiplicity gaps read off from
//! random lines.

mod curve;
mod hyper;
mod trisecant;

pub use curve::{expected_trisecants, project_curve, CurvePoint, Param, Projection, RationalCurve, SpanCertificate};
pub use hyper::{
    multiplicity_gap, rnc_secant_determinant, HypersurfacePoly, LineTrial, MultiplicityReport, DIRECTION_HEIGHT,
};
pub use trisecant::{
    is_real_pair, trisecants_through, trisecants_through_capped, verify_trisecant, SecantParams, Trisecant,
    TrisecantReport, UnresolvedRoot, DEFAULT_MAX_TRISECANT_DEGREE,
};
