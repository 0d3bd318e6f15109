//! Projection distances and angles.

mod angle;
mod hull;

use alloc::vec::Vec;

use crate::error::{invalid, Error};
use crate::exactnum::ExactScalar;

pub use angle::{interior_angle_first_principles, projected_cosine, ExactCosine};
pub use hull::{hull_distance, HullDistanceResult, HullOptions, IncidentStream, PointSource};

/// Exact projection of a centroid onto `{a·x = b} ∩ {c·x = d}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionResult {
    pub distance_squared: ExactScalar,
    pub closest_point: Vec<ExactScalar>,
    pub tau: ExactScalar,
    pub a_hat: Vec<ExactScalar>,
}

fn dot(x: &[ExactScalar], y: &[ExactScalar]) -> ExactScalar {
    x.iter().zip(y).fold(ExactScalar::zero(), |acc, (a, b)| acc + a * b)
}

/// Weak centroid distance for a polytope whose affine hull is the single
/// equation `c·x = d`: the distance from `centroid` to `{a·x = b}` measured
/// inside that hull.
pub fn weak_cd(
    a: &[ExactScalar],
    b: &ExactScalar,
    c: &[ExactScalar],
    d: &ExactScalar,
    centroid: &[ExactScalar],
) -> Result<ProjectionResult, Error> {
    let m = centroid.len();
    for v in [a.len(), c.len()] {
        if v != m {
            return Err(Error::DimensionMismatch { expected: m, got: v });
        }
    }
    let s = dot(c, c);
    if s.is_zero() {
        return Err(invalid("affine hull normal is zero"));
    }
    if dot(c, centroid) != *d {
        return Err(invalid("centroid is not on the affine hull"));
    }
    let q = dot(a, a);
    let r = dot(a, c);
    let det = &q * &s - &r * &r;
    if det.is_zero() {
        return Err(Error::Degenerate("hyperplane is parallel to or contains the affine hull".into()));
    }
    let a_hat: Vec<ExactScalar> = a.iter().zip(c).map(|(ai, ci)| &s * ai - &r * ci).collect();
    let slack = b - &dot(a, centroid);
    let tau = slack.checked_div(&det)?;
    let closest_point: Vec<ExactScalar> = centroid.iter().zip(&a_hat).map(|(ci, h)| ci + &(&tau * h)).collect();
    let distance_squared = (&s * &slack * &slack).checked_div(&det)?;
    debug_assert!(dot(&a_hat, c).is_zero());
    debug_assert!(dot(a, &closest_point) == *b && dot(c, &closest_point) == *d);
    Ok(ProjectionResult { distance_squared, closest_point, tau, a_hat })
}
