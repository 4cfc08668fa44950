//! Tracked-box transforms, pose corrections, and multi-frame aggregation of
//! dynamic-object points into the box canonical frame.
//!
//! A tracked pose (R, t) is refined by a correction (dR, dt) as
//!
//! ```text
//! R' = R * dR        t' = t + dt
//! ```
//!
//! with the rotation right-multiplied and the translation added in the world
//! frame. Corrections are estimated in closed form by orthogonal Procrustes
//! over index-matched correspondences, with a reflection guard.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geom::{Mat3, PointCloud, PointLabel, Pose, Vec3};

/// Default inflation applied to box extents when testing point membership;
/// tracker boxes are tight and reconstructed points jitter.
pub const DEFAULT_BOX_INFLATION: f64 = 1.1;

/// A per-frame oriented box with track identity. The pose maps box
/// coordinates to world coordinates; `size` holds full extents (l, w, h).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackedBox {
    pub track_id: u64,
    pub frame_id: u64,
    pub pose: Pose,
    pub size: Vec3,
}

impl TrackedBox {
    pub fn new(track_id: u64, frame_id: u64, pose: Pose, size: Vec3) -> Self {
        assert!(
            size.x > 0.0 && size.y > 0.0 && size.z > 0.0,
            "box extents must be positive"
        );
        TrackedBox {
            track_id,
            frame_id,
            pose,
            size,
        }
    }

    /// Whether a box-frame point lies inside the extents scaled by
    /// `inflation`.
    pub fn contains_box_point(&self, p: Vec3, inflation: f64) -> bool {
        p.x.abs() <= self.size.x * inflation / 2.0
            && p.y.abs() <= self.size.y * inflation / 2.0
            && p.z.abs() <= self.size.z * inflation / 2.0
    }

    /// Whether a world point lies inside the inflated box.
    pub fn contains_world_point(&self, p: Vec3, inflation: f64) -> bool {
        self.contains_box_point(self.pose.invert().apply(p), inflation)
    }
}

/// A rigid refinement of a tracked pose.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoseCorrection {
    delta_rotation: Mat3,
    delta_translation: Vec3,
}

impl PoseCorrection {
    pub fn new(delta_rotation: Mat3, delta_translation: Vec3) -> Self {
        assert!(
            delta_rotation.is_rotation(crate::geom::ROTATION_TOL),
            "correction rotation must be orthonormal with det +1"
        );
        PoseCorrection {
            delta_rotation,
            delta_translation,
        }
    }

    pub fn identity() -> Self {
        PoseCorrection {
            delta_rotation: Mat3::IDENTITY,
            delta_translation: Vec3::ZERO,
        }
    }

    pub fn delta_rotation(&self) -> Mat3 {
        self.delta_rotation
    }

    pub fn delta_translation(&self) -> Vec3 {
        self.delta_translation
    }
}

/// R' = R * dR, t' = t + dt.
pub fn apply_correction(pose: &Pose, corr: &PoseCorrection) -> Pose {
    Pose::new(
        pose.rotation() * corr.delta_rotation,
        pose.translation() + corr.delta_translation,
    )
}

/// Closed-form correction between index-matched point sets: finds the
/// (dR, dt) minimizing the squared residual of mapping canonical box-frame
/// points onto world observations through the corrected pose.
///
/// Requires at least 3 non-collinear correspondences.
pub fn estimate_correction(
    observed: &PointCloud,
    canonical_in_box: &PointCloud,
    box_pose: &Pose,
) -> Result<PoseCorrection> {
    let q = observed.points();
    let p = canonical_in_box.points();
    if q.len() != p.len() {
        return Err(Error::CountMismatch {
            left: q.len(),
            right: p.len(),
        });
    }
    if p.len() < 3 {
        return Err(Error::DegenerateConfiguration(
            "need at least 3 correspondences",
        ));
    }

    let n = p.len() as f64;
    let mut p_bar = Vec3::ZERO;
    let mut q_bar = Vec3::ZERO;
    for i in 0..p.len() {
        p_bar = p_bar + p[i];
        q_bar = q_bar + q[i];
    }
    p_bar = p_bar.scale(1.0 / n);
    q_bar = q_bar.scale(1.0 / n);

    // Cross-covariance H = sum (p_i - p_bar)(q_i - q_bar)^T.
    let mut h = nalgebra::Matrix3::<f64>::zeros();
    for i in 0..p.len() {
        let pc = p[i] - p_bar;
        let qc = q[i] - q_bar;
        let pcv = nalgebra::Vector3::new(pc.x, pc.y, pc.z);
        let qcv = nalgebra::Vector3::new(qc.x, qc.y, qc.z);
        h += pcv * qcv.transpose();
    }

    let svd = h.svd(true, true);
    let u = svd.u.expect("3x3 svd yields u");
    let v_t = svd.v_t.expect("3x3 svd yields v_t");
    let sv = svd.singular_values;
    // Rank < 2 leaves a rotation axis unconstrained.
    if sv[0] <= 0.0 || sv[1] <= 1e-9 * sv[0] {
        return Err(Error::DegenerateConfiguration(
            "correspondences are collinear or coincident",
        ));
    }

    let v = v_t.transpose();
    let d = (v * u.transpose()).determinant();
    let guard = nalgebra::Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, 1.0, d.signum()));
    let s = v * guard * u.transpose();

    let fitted = Mat3::from_rows([
        [s[(0, 0)], s[(0, 1)], s[(0, 2)]],
        [s[(1, 0)], s[(1, 1)], s[(1, 2)]],
        [s[(2, 0)], s[(2, 1)], s[(2, 2)]],
    ])
    .nearest_rotation();
    let fitted_t = q_bar - fitted * p_bar;

    Ok(PoseCorrection::new(
        pose_rotation_factor(box_pose, fitted),
        fitted_t - box_pose.translation(),
    ))
}

fn pose_rotation_factor(box_pose: &Pose, fitted: Mat3) -> Mat3 {
    // dR with R * dR = fitted, projected back to a rotation to shed
    // accumulated floating-point drift.
    (box_pose.rotation().transpose() * fitted).nearest_rotation()
}

/// World to box frame: p_box = R^T (p_world - t). Labels carry through.
pub fn world_to_box(points: &PointCloud, box_: &TrackedBox) -> PointCloud {
    crate::geom::transform_points(&box_.pose.invert(), points)
}

/// Box frame to world: p_world = R p + t. Labels carry through.
pub fn box_to_world(points: &PointCloud, box_: &TrackedBox) -> PointCloud {
    crate::geom::transform_points(&box_.pose, points)
}

/// Aggregate one track's per-frame observations into the box canonical
/// frame: transform each frame's points into its own box frame, drop points
/// outside the inflated extents, and concatenate in frame order.
pub fn aggregate_track(
    per_frame_points: &BTreeMap<u64, PointCloud>,
    boxes: &BTreeMap<u64, TrackedBox>,
    inflation: f64,
) -> Result<PointCloud> {
    let mut out = PointCloud::default();
    for (frame_id, points) in per_frame_points {
        if points.is_empty() {
            continue;
        }
        let box_ = boxes
            .get(frame_id)
            .ok_or(Error::MissingBoxForFrame(*frame_id))?;
        let canonical = world_to_box(points, box_);
        for (p, label) in canonical.iter() {
            if box_.contains_box_point(p, inflation) {
                out.push(p, label);
            }
        }
    }
    Ok(out)
}
