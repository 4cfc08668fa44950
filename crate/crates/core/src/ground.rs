//! Ground surfel seeding from the camera trajectory, plus the road-smoothness
//! score over neighboring surfel heights.
//!
//! Surfels are laid out on an absolute xy lattice covering the trajectory
//! footprint (union of squares of half-width `extent` around each camera's xy
//! projection). Each surfel takes its height from the nearest camera in xy
//! minus a fixed offset, and its normal from that camera's rotation applied
//! to the camera-frame up axis. Nearest ties break toward the lower frame id,
//! so the result does not depend on camera list order.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geom::{CameraFrame, Vec3};

/// An oriented disk approximating local surface geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Surfel {
    pub center: Vec3,
    /// Unit normal.
    pub normal: Vec3,
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundSeedConfig {
    /// xy sampling pitch of the surfel lattice, meters.
    pub grid_spacing: f64,
    /// Camera height above the road, meters.
    pub height_offset: f64,
    /// Lateral half-width of the corridor around the trajectory, meters.
    pub extent: f64,
}

impl GroundSeedConfig {
    pub fn new(grid_spacing: f64, height_offset: f64, extent: f64) -> Self {
        assert!(grid_spacing > 0.0 && height_offset > 0.0 && extent > 0.0);
        GroundSeedConfig {
            grid_spacing,
            height_offset,
            extent,
        }
    }
}

impl Default for GroundSeedConfig {
    fn default() -> Self {
        GroundSeedConfig {
            grid_spacing: 0.5,
            height_offset: 2.0,
            extent: 20.0,
        }
    }
}

pub fn seed_ground(cameras: &[CameraFrame], cfg: &GroundSeedConfig) -> Result<Vec<Surfel>> {
    if cameras.is_empty() {
        return Err(Error::EmptyTrajectory);
    }
    let spacing = cfg.grid_spacing;

    // Lattice index range of the dilated footprint bounding box.
    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for cam in cameras {
        let c = cam.center();
        min_x = min_x.min(c.x - cfg.extent);
        max_x = max_x.max(c.x + cfg.extent);
        min_y = min_y.min(c.y - cfg.extent);
        max_y = max_y.max(c.y + cfg.extent);
    }
    let ix_lo = (min_x / spacing).ceil() as i64;
    let ix_hi = (max_x / spacing).floor() as i64;
    let iy_lo = (min_y / spacing).ceil() as i64;
    let iy_hi = (max_y / spacing).floor() as i64;

    // Disk radius: half the lattice cell diagonal, so disks tile the plane.
    let radius = spacing * std::f64::consts::FRAC_1_SQRT_2;

    let mut surfels = Vec::new();
    for ix in ix_lo..=ix_hi {
        let x = ix as f64 * spacing;
        for iy in iy_lo..=iy_hi {
            let y = iy as f64 * spacing;
            if !cameras.iter().any(|cam| {
                let c = cam.center();
                (x - c.x).abs() <= cfg.extent && (y - c.y).abs() <= cfg.extent
            }) {
                continue;
            }
            let cam = nearest_camera_xy(cameras, x, y);
            let c = cam.center();
            let center = Vec3::new(x, y, c.z - cfg.height_offset);
            let normal = (cam.pose.rotation() * Vec3::new(0.0, 0.0, 1.0)).normalized();
            surfels.push(Surfel {
                center,
                normal,
                radius,
            });
        }
    }
    Ok(surfels)
}

fn nearest_camera_xy(cameras: &[CameraFrame], x: f64, y: f64) -> &CameraFrame {
    cameras
        .iter()
        .min_by(|a, b| {
            let da = xy_dist2(a.center(), x, y);
            let db = xy_dist2(b.center(), x, y);
            da.total_cmp(&db).then(a.frame_id.cmp(&b.frame_id))
        })
        .expect("non-empty camera list")
}

fn xy_dist2(c: Vec3, x: f64, y: f64) -> f64 {
    let dx = c.x - x;
    let dy = c.y - y;
    dx * dx + dy * dy
}

/// Mean squared height difference over all surfel pairs within
/// `neighbor_radius` in xy. Zero iff every neighboring pair shares height.
pub fn road_smoothness(surfels: &[Surfel], neighbor_radius: f64) -> Result<f64> {
    assert!(neighbor_radius > 0.0);
    // Bucket by xy cell of edge neighbor_radius; candidate pairs live in the
    // surrounding 3x3 cells. Pairs accumulate in index order.
    let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    let inv = 1.0 / neighbor_radius;
    for (i, s) in surfels.iter().enumerate() {
        let key = (
            (s.center.x * inv).floor() as i64,
            (s.center.y * inv).floor() as i64,
        );
        buckets.entry(key).or_default().push(i);
    }

    let r2 = neighbor_radius * neighbor_radius;
    let mut sum = 0.0;
    let mut pairs: u64 = 0;
    for (i, s) in surfels.iter().enumerate() {
        let cx = (s.center.x * inv).floor() as i64;
        let cy = (s.center.y * inv).floor() as i64;
        for bx in cx - 1..=cx + 1 {
            for by in cy - 1..=cy + 1 {
                let Some(bucket) = buckets.get(&(bx, by)) else {
                    continue;
                };
                for &j in bucket {
                    if j <= i {
                        continue;
                    }
                    let o = &surfels[j];
                    let dx = s.center.x - o.center.x;
                    let dy = s.center.y - o.center.y;
                    if dx * dx + dy * dy <= r2 {
                        let dz = s.center.z - o.center.z;
                        sum += dz * dz;
                        pairs += 1;
                    }
                }
            }
        }
    }
    if pairs == 0 {
        return Err(Error::NoNeighborPairs(neighbor_radius));
    }
    Ok(sum / pairs as f64)
}
