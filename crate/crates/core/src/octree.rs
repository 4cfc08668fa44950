//! Hierarchical anchor index over a point cloud.
//!
//! The level count comes from the spread of camera-to-point distances: with
//! `d_min` and `d_max` the smallest and largest Euclidean distances between
//! any camera center and any point,
//!
//! ```text
//! K = round(log2(d_max / d_min)) + 1
//! ```
//!
//! Voxel centers at level `L` quantize points to the lattice of pitch
//! `eps / 2^L`:
//!
//! ```text
//! center = round(p / (eps / 2^L)) * (eps / 2^L)
//! ```
//!
//! Both roundings are half-to-even, so results are reproducible across
//! platforms. Coarse centers land exactly on every finer lattice, which keeps
//! the levels spatially aligned.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::geom::{PointCloud, Vec3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OctreeConfig {
    /// Base voxel edge length at the coarsest level, meters.
    pub base_voxel_size: f64,
    /// Anchor budget per voxel; the first `m` points (input order) that
    /// quantize to a voxel become its anchors.
    pub anchors_per_voxel: usize,
    /// A voxel with at least this many source points spawns children.
    pub expand_threshold: usize,
    /// A childless voxel with at most this many source points is removed.
    pub contract_threshold: usize,
}

impl OctreeConfig {
    pub fn new(
        base_voxel_size: f64,
        anchors_per_voxel: usize,
        expand_threshold: usize,
        contract_threshold: usize,
    ) -> Self {
        assert!(base_voxel_size > 0.0, "base voxel size must be positive");
        assert!(anchors_per_voxel >= 1, "anchor budget must be at least 1");
        assert!(
            expand_threshold > contract_threshold,
            "expand threshold must exceed contract threshold"
        );
        OctreeConfig {
            base_voxel_size,
            anchors_per_voxel,
            expand_threshold,
            contract_threshold,
        }
    }
}

pub type LatticeKey = (i64, i64, i64);

/// One cell of the index: a lattice-centered cube holding up to `m`
/// representative points.
#[derive(Debug, Clone, PartialEq)]
pub struct AnchorVoxel {
    pub center: Vec3,
    pub level: usize,
    pub anchor_points: Vec<Vec3>,
    /// Number of input points that quantized here, counting duplicates.
    pub source_count: usize,
}

/// Lattice pitch at a level: `eps / 2^L`.
pub fn level_pitch(base_voxel_size: f64, level: usize) -> f64 {
    base_voxel_size / (1u64 << level) as f64
}

/// Quantize a point to the voxel-center lattice of the given level.
pub fn quantize_to_level(p: Vec3, base_voxel_size: f64, level: usize) -> Vec3 {
    assert!(base_voxel_size > 0.0);
    let pitch = level_pitch(base_voxel_size, level);
    Vec3::new(
        (p.x / pitch).round_ties_even() * pitch,
        (p.y / pitch).round_ties_even() * pitch,
        (p.z / pitch).round_ties_even() * pitch,
    )
}

/// Integer lattice coordinates of the voxel a point quantizes to. Keys avoid
/// float comparisons in the per-level maps.
pub fn lattice_key(p: Vec3, base_voxel_size: f64, level: usize) -> LatticeKey {
    let pitch = level_pitch(base_voxel_size, level);
    (
        (p.x / pitch).round_ties_even() as i64,
        (p.y / pitch).round_ties_even() as i64,
        (p.z / pitch).round_ties_even() as i64,
    )
}

fn center_of_key(key: LatticeKey, base_voxel_size: f64, level: usize) -> Vec3 {
    let pitch = level_pitch(base_voxel_size, level);
    Vec3::new(
        key.0 as f64 * pitch,
        key.1 as f64 * pitch,
        key.2 as f64 * pitch,
    )
}

/// Nearest coarse lattice index for a fine one, ties to even. Matches
/// quantizing the fine voxel's center one level up.
fn halve_key_component(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        k / 2
    } else {
        // Odd: the two nearest coarse indices are (k-1)/2 and (k+1)/2,
        // consecutive integers; exactly one is even.
        let lo = (k - 1).div_euclid(2);
        if lo % 2 == 0 {
            lo
        } else {
            lo + 1
        }
    }
}

fn parent_key(key: LatticeKey) -> LatticeKey {
    (
        halve_key_component(key.0),
        halve_key_component(key.1),
        halve_key_component(key.2),
    )
}

/// Number of levels from the camera-to-point distance spread.
pub fn compute_level_count(camera_centers: &[Vec3], points: &PointCloud) -> Result<usize> {
    if camera_centers.is_empty() {
        return Err(Error::EmptyInput("no camera centers"));
    }
    if points.is_empty() {
        return Err(Error::EmptyInput("no points"));
    }
    let mut d_min = f64::INFINITY;
    let mut d_max: f64 = 0.0;
    for cam in camera_centers {
        for &p in points.points() {
            let d = cam.distance(p);
            d_min = d_min.min(d);
            d_max = d_max.max(d);
        }
    }
    if d_min == 0.0 {
        return Err(Error::DegenerateDistances);
    }
    let k = (d_max / d_min).log2().round_ties_even() as i64 + 1;
    Ok(k.max(1) as usize)
}

/// The hierarchical index: K levels of lattice-keyed anchor voxels.
#[derive(Debug, Clone, PartialEq)]
pub struct OctreeIndex {
    base_voxel_size: f64,
    levels: Vec<BTreeMap<LatticeKey, AnchorVoxel>>,
}

impl OctreeIndex {
    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn base_voxel_size(&self) -> f64 {
        self.base_voxel_size
    }

    pub fn level(&self, l: usize) -> impl Iterator<Item = &AnchorVoxel> {
        self.levels[l].values()
    }

    pub fn voxel_count_at(&self, l: usize) -> usize {
        self.levels[l].len()
    }

    pub fn total_voxel_count(&self) -> usize {
        self.levels.iter().map(|m| m.len()).sum()
    }

    pub fn get(&self, level: usize, key: LatticeKey) -> Option<&AnchorVoxel> {
        self.levels.get(level).and_then(|m| m.get(&key))
    }

    /// Union of all anchor voxels at levels 0..=max_level, ordered
    /// level-major then lattice-key lexicographic.
    pub fn query_cumulative(&self, max_level: usize) -> Result<Vec<&AnchorVoxel>> {
        if max_level >= self.levels.len() {
            return Err(Error::LevelOutOfRange {
                level: max_level,
                levels: self.levels.len(),
            });
        }
        Ok(self.levels[..=max_level]
            .iter()
            .flat_map(|m| m.values())
            .collect())
    }
}

/// Build the index: K levels, every point contributing to exactly one voxel
/// per level, anchors chosen first-come in input order.
pub fn build_index(
    points: &PointCloud,
    camera_centers: &[Vec3],
    cfg: &OctreeConfig,
) -> Result<OctreeIndex> {
    let k = compute_level_count(camera_centers, points)?;
    let mut levels = Vec::with_capacity(k);
    for level in 0..k {
        let mut map: BTreeMap<LatticeKey, AnchorVoxel> = BTreeMap::new();
        for &p in points.points() {
            let key = lattice_key(p, cfg.base_voxel_size, level);
            let voxel = map.entry(key).or_insert_with(|| AnchorVoxel {
                center: center_of_key(key, cfg.base_voxel_size, level),
                level,
                anchor_points: Vec::new(),
                source_count: 0,
            });
            voxel.source_count += 1;
            if voxel.anchor_points.len() < cfg.anchors_per_voxel {
                voxel.anchor_points.push(p);
            }
        }
        levels.push(map);
    }
    Ok(OctreeIndex {
        base_voxel_size: cfg.base_voxel_size,
        levels,
    })
}

/// One adaptation pass. Dense voxels re-quantize their anchors one level
/// finer, inserting any missing child voxels; sparse childless voxels are
/// removed. Both rules are judged against the pre-adapt state (single pass,
/// no fixpoint). Child relationships follow the nearest-coarse-center rule
/// (ties to even), the same rule the quantizer itself uses.
pub fn adapt(index: &OctreeIndex, cfg: &OctreeConfig) -> OctreeIndex {
    let k = index.levels.len();
    let mut levels = index.levels.clone();

    // Expansion: spawn missing children from stored anchors.
    for level in 0..k.saturating_sub(1) {
        let mut created: BTreeSet<LatticeKey> = BTreeSet::new();
        for voxel in index.levels[level].values() {
            if voxel.source_count < cfg.expand_threshold {
                continue;
            }
            for &p in &voxel.anchor_points {
                let key = lattice_key(p, cfg.base_voxel_size, level + 1);
                if let Some(child) = levels[level + 1].get_mut(&key) {
                    // Pre-existing children already host this point; only
                    // children created in this pass accumulate anchors.
                    if created.contains(&key) && child.anchor_points.len() < cfg.anchors_per_voxel
                    {
                        child.anchor_points.push(p);
                        child.source_count += 1;
                    }
                } else {
                    created.insert(key);
                    levels[level + 1].insert(
                        key,
                        AnchorVoxel {
                            center: center_of_key(key, cfg.base_voxel_size, level + 1),
                            level: level + 1,
                            anchor_points: vec![p],
                            source_count: 1,
                        },
                    );
                }
            }
        }
    }

    // Contraction: drop sparse voxels that had no children before the pass.
    for level in 0..k {
        let occupied_parents: BTreeSet<LatticeKey> = if level + 1 < k {
            index.levels[level + 1]
                .keys()
                .map(|ck| parent_key(*ck))
                .collect()
        } else {
            BTreeSet::new()
        };
        let doomed: Vec<LatticeKey> = index.levels[level]
            .iter()
            .filter(|(key, v)| {
                v.source_count <= cfg.contract_threshold && !occupied_parents.contains(key)
            })
            .map(|(key, _)| *key)
            .collect();
        for key in doomed {
            levels[level].remove(&key);
        }
    }

    OctreeIndex {
        base_voxel_size: index.base_voxel_size,
        levels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn cloud(points: &[[f64; 3]]) -> PointCloud {
        PointCloud::new(points.iter().map(|p| Vec3::new(p[0], p[1], p[2])).collect())
    }

    fn default_cfg() -> OctreeConfig {
        OctreeConfig::new(4.0, 4, 10, 0)
    }

    #[test]
    fn level_count_equal_distances() {
        let cams = [Vec3::ZERO];
        let pts = cloud(&[[5.0, 0.0, 0.0], [0.0, 5.0, 0.0], [0.0, 0.0, -5.0]]);
        assert_eq!(compute_level_count(&cams, &pts).unwrap(), 1);
    }

    #[test]
    fn level_count_hand_cases() {
        // d_min = 2, d_max = 64: log2(32) = 5, K = 6.
        let cams = [Vec3::ZERO];
        let pts = cloud(&[[2.0, 0.0, 0.0], [64.0, 0.0, 0.0]]);
        assert_eq!(compute_level_count(&cams, &pts).unwrap(), 6);

        // d_min = 1, d_max = 3: log2(3) ~ 1.585 rounds to 2, K = 3.
        let pts = cloud(&[[1.0, 0.0, 0.0], [3.0, 0.0, 0.0]]);
        assert_eq!(compute_level_count(&cams, &pts).unwrap(), 3);
    }

    #[test]
    fn level_count_errors() {
        let pts = cloud(&[[1.0, 0.0, 0.0]]);
        assert!(matches!(
            compute_level_count(&[], &pts),
            Err(Error::EmptyInput(_))
        ));
        assert!(matches!(
            compute_level_count(&[Vec3::ZERO], &PointCloud::new(vec![])),
            Err(Error::EmptyInput(_))
        ));
        assert!(matches!(
            compute_level_count(&[Vec3::new(1.0, 0.0, 0.0)], &pts),
            Err(Error::DegenerateDistances)
        ));
    }

    #[test]
    fn quantize_hand_cases() {
        let p = Vec3::new(3.7, -1.2, 0.5);
        assert_eq!(quantize_to_level(p, 4.0, 0), Vec3::new(4.0, 0.0, 0.0));
        assert_eq!(quantize_to_level(p, 4.0, 1), Vec3::new(4.0, -2.0, 0.0));
    }

    #[test]
    fn quantize_fixed_point_on_lattice() {
        let p = Vec3::new(8.0, -4.0, 0.0);
        assert_eq!(quantize_to_level(p, 4.0, 0), p);
        assert_eq!(quantize_to_level(p, 4.0, 2), p);
    }

    #[test]
    fn quantize_is_idempotent() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..1000 {
            let p = Vec3::new(
                rng.uniform(-100.0, 100.0),
                rng.uniform(-100.0, 100.0),
                rng.uniform(-100.0, 100.0),
            );
            for level in 0..5 {
                let q = quantize_to_level(p, 3.2, level);
                assert_eq!(quantize_to_level(q, 3.2, level), q);
            }
        }
    }

    #[test]
    fn quantize_error_bound() {
        let mut rng = SplitMix64::new(12);
        let eps = 2.0;
        for _ in 0..1000 {
            let p = Vec3::new(
                rng.uniform(-50.0, 50.0),
                rng.uniform(-50.0, 50.0),
                rng.uniform(-50.0, 50.0),
            );
            for level in 0..4 {
                let q = quantize_to_level(p, eps, level);
                let bound = level_pitch(eps, level) / 2.0 + 1e-12;
                assert!((p - q).norm_inf() <= bound);
            }
        }
    }

    #[test]
    fn coarse_centers_lie_on_finer_lattices() {
        let mut rng = SplitMix64::new(13);
        let eps = 1.6;
        for _ in 0..500 {
            let p = Vec3::new(
                rng.uniform(-20.0, 20.0),
                rng.uniform(-20.0, 20.0),
                rng.uniform(-20.0, 20.0),
            );
            for level in 0..4 {
                let c = quantize_to_level(p, eps, level);
                // A lattice point maps to itself one level finer.
                assert_eq!(quantize_to_level(c, eps, level + 1), c);
            }
        }
    }

    #[test]
    fn build_minimal_input() {
        let pts = cloud(&[[3.0, 0.0, 0.0]]);
        let idx = build_index(&pts, &[Vec3::ZERO], &default_cfg()).unwrap();
        assert_eq!(idx.level_count(), 1);
        assert_eq!(idx.voxel_count_at(0), 1);
        let v = idx.level(0).next().unwrap();
        assert_eq!(v.source_count, 1);
        assert_eq!(v.anchor_points, vec![Vec3::new(3.0, 0.0, 0.0)]);
    }

    #[test]
    fn build_counts_monotone_across_levels() {
        // 8 corners of a cube of edge eps/2 around the origin, far camera so
        // K >= 2; finer levels can only split voxels.
        let eps = 4.0;
        let h = eps / 4.0;
        let corners: Vec<[f64; 3]> = (0..8)
            .map(|i| {
                [
                    if i & 1 == 0 { -h } else { h },
                    if i & 2 == 0 { -h } else { h },
                    if i & 4 == 0 { -h } else { h },
                ]
            })
            .collect();
        let pts = cloud(&corners);
        let cams = [Vec3::new(100.0, 0.0, 0.0)];
        let cfg = OctreeConfig::new(eps, 8, 100, 0);
        let idx = build_index(&pts, &cams, &cfg).unwrap();
        assert!(idx.level_count() >= 2);
        let mut prev = 0;
        for l in 0..idx.level_count() {
            let n = idx.voxel_count_at(l);
            assert!(n >= prev, "voxel count shrank at level {l}");
            prev = n;
            // Brute-force the distinct key set at this level.
            let mut keys: Vec<LatticeKey> = pts
                .points()
                .iter()
                .map(|&p| lattice_key(p, eps, l))
                .collect();
            keys.sort_unstable();
            keys.dedup();
            assert_eq!(n, keys.len());
        }
        assert_eq!(idx.voxel_count_at(0), 1);
    }

    #[test]
    fn build_respects_anchor_budget_and_duplicates() {
        let pts = cloud(&[[1.0, 1.0, 1.0]; 7]);
        let cfg = OctreeConfig::new(4.0, 3, 100, 0);
        let idx = build_index(&pts, &[Vec3::new(10.0, 0.0, 0.0)], &cfg).unwrap();
        let v = idx.level(0).next().unwrap();
        assert_eq!(v.source_count, 7);
        assert_eq!(v.anchor_points.len(), 3);
    }

    #[test]
    fn build_key_set_is_order_independent() {
        let mut rng = SplitMix64::new(21);
        let pts: Vec<Vec3> = (0..200)
            .map(|_| {
                Vec3::new(
                    rng.uniform(-30.0, 30.0),
                    rng.uniform(-30.0, 30.0),
                    rng.uniform(-5.0, 5.0),
                )
            })
            .collect();
        let mut reversed = pts.clone();
        reversed.reverse();
        let cams = [Vec3::new(0.0, 0.0, 2.0)];
        let cfg = default_cfg();
        let a = build_index(&PointCloud::new(pts), &cams, &cfg).unwrap();
        let b = build_index(&PointCloud::new(reversed), &cams, &cfg).unwrap();
        assert_eq!(a.level_count(), b.level_count());
        for l in 0..a.level_count() {
            let ka: Vec<_> = a.levels[l].keys().collect();
            let kb: Vec<_> = b.levels[l].keys().collect();
            assert_eq!(ka, kb);
        }
    }

    #[test]
    fn anchors_stay_within_their_cube() {
        let mut rng = SplitMix64::new(22);
        let pts: Vec<Vec3> = (0..500)
            .map(|_| {
                Vec3::new(
                    rng.uniform(-30.0, 30.0),
                    rng.uniform(-30.0, 30.0),
                    rng.uniform(-5.0, 5.0),
                )
            })
            .collect();
        let idx = build_index(
            &PointCloud::new(pts),
            &[Vec3::new(0.0, 0.0, 2.0)],
            &default_cfg(),
        )
        .unwrap();
        for l in 0..idx.level_count() {
            let half = level_pitch(4.0, l) / 2.0 + 1e-12;
            for v in idx.level(l) {
                for &a in &v.anchor_points {
                    assert!((a - v.center).norm_inf() <= half);
                }
            }
        }
    }

    #[test]
    fn adapt_noop_thresholds_keep_index() {
        let pts = cloud(&[[1.0, 0.0, 0.0], [2.0, 0.0, 0.0], [40.0, 0.0, 0.0]]);
        let cfg = OctreeConfig::new(4.0, 4, usize::MAX, 0);
        let idx = build_index(&pts, &[Vec3::ZERO], &cfg).unwrap();
        let adapted = adapt(&idx, &cfg);
        // Every built voxel has source points, and expansion never fires.
        assert_eq!(adapted, idx);
    }

    #[test]
    fn adapt_expands_dense_voxel_to_finer_level() {
        let pts = cloud(&[
            [0.2, 0.2, 0.0],
            [1.4, 0.1, 0.0],
            [0.1, 1.4, 0.0],
            [60.0, 0.0, 0.0],
        ]);
        let cfg = OctreeConfig::new(4.0, 8, 3, 0);
        let idx = build_index(&pts, &[Vec3::new(0.0, 0.0, 3.0)], &cfg).unwrap();
        assert!(idx.level_count() >= 2);
        let adapted = adapt(&idx, &cfg);
        // The dense level-0 voxel's anchors must each have a voxel one level
        // finer; build already placed them, adapt must preserve them.
        let dense = idx
            .level(0)
            .find(|v| v.source_count >= 3)
            .expect("dense voxel");
        for &p in &dense.anchor_points {
            let key = lattice_key(p, 4.0, 1);
            assert!(adapted.get(1, key).is_some());
        }
        // Parent is retained.
        let parent = lattice_key(Vec3::new(0.2, 0.2, 0.0), 4.0, 0);
        assert!(adapted.get(0, parent).is_some());
    }

    #[test]
    fn adapt_inserts_missing_children_after_contraction() {
        // Build, contract the fine level away, then expand again: the dense
        // voxel re-creates children from its stored anchors.
        let pts = cloud(&[
            [0.2, 0.2, 0.0],
            [1.4, 0.1, 0.0],
            [0.1, 1.4, 0.0],
            [60.0, 0.0, 0.0],
        ]);
        let cfg = OctreeConfig::new(4.0, 8, 3, 0);
        let built = build_index(&pts, &[Vec3::new(0.0, 0.0, 3.0)], &cfg).unwrap();
        let mut stripped = built.clone();
        let last = stripped.levels.len() - 1;
        for l in 1..=last {
            stripped.levels[l].clear();
        }
        let adapted = adapt(&stripped, &cfg);
        let dense = built
            .level(0)
            .find(|v| v.source_count >= 3)
            .expect("dense voxel");
        for &p in &dense.anchor_points {
            let key = lattice_key(p, 4.0, 1);
            let child = adapted.get(1, key).expect("child recreated");
            assert!(child.anchor_points.contains(&p));
        }
    }

    #[test]
    fn adapt_removes_empty_childless_voxel() {
        let pts = cloud(&[[1.0, 0.0, 0.0], [50.0, 0.0, 0.0]]);
        let cfg = OctreeConfig::new(4.0, 4, 100, 0);
        let mut idx = build_index(&pts, &[Vec3::new(0.0, 3.0, 0.0)], &cfg).unwrap();
        // Fabricate a zero-count voxel at the finest level (as left behind by
        // upstream filtering).
        let last = idx.levels.len() - 1;
        idx.levels[last].insert(
            (1000, 1000, 1000),
            AnchorVoxel {
                center: center_of_key((1000, 1000, 1000), 4.0, last),
                level: last,
                anchor_points: vec![],
                source_count: 0,
            },
        );
        let adapted = adapt(&idx, &cfg);
        assert!(adapted.get(last, (1000, 1000, 1000)).is_none());
    }

    #[test]
    fn contraction_spares_voxels_with_children() {
        let pts = cloud(&[[0.3, 0.0, 0.0], [55.0, 0.0, 0.0]]);
        let cfg = OctreeConfig::new(4.0, 4, 100, 1);
        let idx = build_index(&pts, &[Vec3::new(0.0, 2.0, 0.0)], &cfg).unwrap();
        assert!(idx.level_count() >= 2);
        // Every voxel holds exactly one point, at or below contract_threshold,
        // but coarse voxels have children on the finer levels, so only the
        // finest level empties.
        let adapted = adapt(&idx, &cfg);
        let last = idx.level_count() - 1;
        for l in 0..last {
            assert_eq!(adapted.voxel_count_at(l), idx.voxel_count_at(l));
        }
        assert_eq!(adapted.voxel_count_at(last), 0);
    }

    #[test]
    fn query_cumulative_levels() {
        let mut rng = SplitMix64::new(31);
        let pts: Vec<Vec3> = (0..100)
            .map(|_| {
                Vec3::new(
                    rng.uniform(-40.0, 40.0),
                    rng.uniform(-40.0, 40.0),
                    rng.uniform(0.0, 6.0),
                )
            })
            .collect();
        let idx = build_index(
            &PointCloud::new(pts),
            &[Vec3::new(0.0, 0.0, 2.0)],
            &default_cfg(),
        )
        .unwrap();
        let k = idx.level_count();

        let coarse = idx.query_cumulative(0).unwrap();
        assert_eq!(coarse.len(), idx.voxel_count_at(0));
        assert!(coarse.iter().all(|v| v.level == 0));

        let full = idx.query_cumulative(k - 1).unwrap();
        assert_eq!(full.len(), idx.total_voxel_count());

        let mut prev = 0;
        for l in 0..k {
            let n = idx.query_cumulative(l).unwrap().len();
            assert!(n >= prev);
            prev = n;
        }

        assert!(matches!(
            idx.query_cumulative(k),
            Err(Error::LevelOutOfRange { .. })
        ));
    }

    #[test]
    fn query_ordering_is_level_major_then_key_lex() {
        let pts = cloud(&[[9.0, 0.0, 0.0], [-7.0, 2.0, 0.0], [1.0, -5.0, 1.0]]);
        let idx = build_index(&pts, &[Vec3::new(0.0, 0.0, 30.0)], &default_cfg()).unwrap();
        let all = idx.query_cumulative(idx.level_count() - 1).unwrap();
        let keys: Vec<(usize, LatticeKey)> = all
            .iter()
            .map(|v| (v.level, lattice_key(v.center, 4.0, v.level)))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn parent_key_matches_center_quantization() {
        let eps = 4.0;
        for k in -50i64..50 {
            for level in 1..3usize {
                let key = (k, -k, 2 * k);
                let center = center_of_key(key, eps, level);
                let via_quantize = lattice_key(center, eps, level - 1);
                assert_eq!(parent_key(key), via_quantize, "k = {k}, level = {level}");
            }
        }
    }
}
