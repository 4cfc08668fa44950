//! Core geometric types: vectors, rotations, rigid poses, labeled point clouds.
//!
//! World frame is z-up, meters. All values are immutable after construction
//! and 64-bit throughout; file formats may carry 32-bit and are widened on
//! read.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Tolerance for accepting a matrix as a rotation at construction.
pub const ROTATION_TOL: f64 = 1e-6;

/// A 3D point or vector in meters. Components are always finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    /// Panics on NaN or infinite components; non-finite values are never
    /// admitted past construction.
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        assert!(
            x.is_finite() && y.is_finite() && z.is_finite(),
            "Vec3 components must be finite, got ({x}, {y}, {z})"
        );
        Vec3 { x, y, z }
    }

    pub const ZERO: Vec3 = Vec3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3 {
            x: self.y * other.z - self.z * other.y,
            y: self.z * other.x - self.x * other.z,
            z: self.x * other.y - self.y * other.x,
        }
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn norm_xy(self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }

    pub fn distance(self, other: Vec3) -> f64 {
        (self - other).norm()
    }

    /// Chebyshev (max-component) norm.
    pub fn norm_inf(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn normalized(self) -> Vec3 {
        let n = self.norm();
        assert!(n > 0.0, "cannot normalize zero vector");
        Vec3::new(self.x / n, self.y / n, self.z / n)
    }

    pub fn scale(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// Row-major 3x3 matrix. Used for rotations; orthonormality is checked where
/// the matrix enters a `Pose`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat3 {
    pub rows: [[f64; 3]; 3],
}

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3 {
        rows: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    pub fn from_rows(rows: [[f64; 3]; 3]) -> Self {
        Mat3 { rows }
    }

    /// Rotation about the z axis by `angle` radians.
    pub fn rot_z(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Mat3::from_rows([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    }

    /// Rotation about the y axis by `angle` radians.
    pub fn rot_y(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Mat3::from_rows([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
    }

    /// Rotation about the x axis by `angle` radians.
    pub fn rot_x(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Mat3::from_rows([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])
    }

    pub fn transpose(self) -> Mat3 {
        let m = self.rows;
        Mat3::from_rows([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn det(self) -> f64 {
        let m = self.rows;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Max-abs deviation of R^T R from the identity.
    pub fn orthonormality_deviation(self) -> f64 {
        let g = self.transpose() * self;
        let mut dev: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((g.rows[i][j] - target).abs());
            }
        }
        dev
    }

    pub fn is_rotation(self, tol: f64) -> bool {
        self.orthonormality_deviation() <= tol && (self.det() - 1.0).abs() <= tol
    }

    /// Nearest rotation matrix in the Frobenius sense, via SVD with a
    /// reflection guard.
    pub fn nearest_rotation(self) -> Mat3 {
        let m = nalgebra::Matrix3::from_fn(|i, j| self.rows[i][j]);
        let svd = m.svd(true, true);
        let u = svd.u.expect("svd of 3x3 always yields u");
        let v_t = svd.v_t.expect("svd of 3x3 always yields v_t");
        let mut r = u * v_t;
        if r.determinant() < 0.0 {
            let flip = nalgebra::Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, 1.0, -1.0));
            r = u * flip * v_t;
        }
        Mat3::from_rows([
            [r[(0, 0)], r[(0, 1)], r[(0, 2)]],
            [r[(1, 0)], r[(1, 1)], r[(1, 2)]],
            [r[(2, 0)], r[(2, 1)], r[(2, 2)]],
        ])
    }
}

impl Mul<Vec3> for Mat3 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        let m = self.rows;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }
}

impl Mul<Mat3> for Mat3 {
    type Output = Mat3;
    fn mul(self, o: Mat3) -> Mat3 {
        let a = self.rows;
        let b = o.rows;
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
            }
        }
        Mat3::from_rows(out)
    }
}

/// A rigid transform: orthonormal rotation (det +1) plus translation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    rotation: Mat3,
    translation: Vec3,
}

impl Pose {
    /// Rejects rotations with |det - 1| > 1e-6 or max |R^T R - I| > 1e-6.
    pub fn new(rotation: Mat3, translation: Vec3) -> Self {
        assert!(
            rotation.is_rotation(ROTATION_TOL),
            "rotation is not orthonormal with det +1: deviation {:.3e}, det {}",
            rotation.orthonormality_deviation(),
            rotation.det()
        );
        Pose {
            rotation,
            translation,
        }
    }

    pub fn identity() -> Self {
        Pose {
            rotation: Mat3::IDENTITY,
            translation: Vec3::ZERO,
        }
    }

    pub fn rotation(&self) -> Mat3 {
        self.rotation
    }

    pub fn translation(&self) -> Vec3 {
        self.translation
    }

    /// Apply this transform to a point: R p + t.
    pub fn apply(&self, p: Vec3) -> Vec3 {
        self.rotation * p + self.translation
    }

    /// Composition: the result applies `b` first, then `a`.
    pub fn compose(a: &Pose, b: &Pose) -> Pose {
        Pose {
            rotation: a.rotation * b.rotation,
            translation: a.rotation * b.translation + a.translation,
        }
    }

    pub fn invert(&self) -> Pose {
        let rt = self.rotation.transpose();
        Pose {
            rotation: rt,
            translation: -(rt * self.translation),
        }
    }
}

/// One camera observation in a sequence. The pose maps camera coordinates to
/// world coordinates; the camera center is the pose translation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CameraFrame {
    pub frame_id: u64,
    pub pose: Pose,
}

impl CameraFrame {
    pub fn new(frame_id: u64, pose: Pose) -> Self {
        CameraFrame { frame_id, pose }
    }

    pub fn center(&self) -> Vec3 {
        self.pose.translation()
    }
}

/// Per-point semantic tag carried through the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointLabel {
    Unlabeled,
    Static,
    Ground,
    /// A point on a tracked dynamic object, keyed by its track id.
    Dynamic(u64),
    /// Sky point from upstream segmentation; culled at ingestion.
    Sky,
}

impl PointLabel {
    pub fn is_dynamic(self) -> bool {
        matches!(self, PointLabel::Dynamic(_))
    }
}

/// A point cloud with optional per-point labels. Labels, when present, run
/// parallel to the points.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PointCloud {
    points: Vec<Vec3>,
    labels: Option<Vec<PointLabel>>,
}

impl PointCloud {
    pub fn new(points: Vec<Vec3>) -> Self {
        PointCloud {
            points,
            labels: None,
        }
    }

    pub fn with_labels(points: Vec<Vec3>, labels: Vec<PointLabel>) -> Self {
        assert_eq!(
            points.len(),
            labels.len(),
            "labels must run parallel to points"
        );
        PointCloud {
            points,
            labels: Some(labels),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec3] {
        &self.points
    }

    pub fn labels(&self) -> Option<&[PointLabel]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> PointLabel {
        self.labels
            .as_ref()
            .map_or(PointLabel::Unlabeled, |l| l[i])
    }

    /// Iterate (point, label) pairs; unlabeled clouds yield `Unlabeled`.
    pub fn iter(&self) -> impl Iterator<Item = (Vec3, PointLabel)> + '_ {
        self.points
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, self.label(i)))
    }

    pub fn push(&mut self, p: Vec3, label: PointLabel) {
        if self.labels.is_none() && label != PointLabel::Unlabeled {
            self.labels = Some(vec![PointLabel::Unlabeled; self.points.len()]);
        }
        self.points.push(p);
        if let Some(labels) = &mut self.labels {
            labels.push(label);
        }
    }

    /// Keep only points whose (point, label) pair passes the predicate.
    pub fn filtered(&self, mut keep: impl FnMut(Vec3, PointLabel) -> bool) -> PointCloud {
        let mut points = Vec::new();
        let mut labels = self.labels.as_ref().map(|_| Vec::new());
        for (i, &p) in self.points.iter().enumerate() {
            let l = self.label(i);
            if keep(p, l) {
                points.push(p);
                if let Some(ls) = &mut labels {
                    ls.push(l);
                }
            }
        }
        PointCloud { points, labels }
    }

    /// Drop sky-labeled points.
    pub fn without_sky(&self) -> PointCloud {
        self.filtered(|_, l| l != PointLabel::Sky)
    }

    pub fn extend(&mut self, other: &PointCloud) {
        for (p, l) in other.iter() {
            self.push(p, l);
        }
    }
}

/// Transform every point by the pose; labels carry through unchanged.
pub fn transform_points(pose: &Pose, cloud: &PointCloud) -> PointCloud {
    let points = cloud.points().iter().map(|&p| pose.apply(p)).collect();
    PointCloud {
        points,
        labels: cloud.labels.clone(),
    }
}
