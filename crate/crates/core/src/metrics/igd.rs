//! Inverted generational distance and crowding-based front truncation.
//!
//! The indicator is computed exactly as written:
//!
//! ```text
//! IGD(A, P*) = (1 / |P*|) * sqrt( sum over x in P* of min over y in A of d(x, y)^2 )
//! ```
//!
//! with the root outside the sum — not the more common mean-of-distances
//! form — after both sets are normalized by the per-objective minimum and
//! maximum of `P*`. Values from the two conventions are not comparable.

use alloc::vec;
use alloc::vec::Vec;

use super::{FrontSet, MetricError};
use crate::math;
use crate::nsga2::crowding_distance;

/// A reference front preprocessed for repeated IGD evaluation.
#[derive(Clone, Debug)]
pub struct IgdReference {
    normalized: Vec<Vec<f64>>,
    mins: Vec<f64>,
    inv_range: Vec<f64>,
    objectives: usize,
}

impl IgdReference {
    pub fn new(pstar: &FrontSet) -> Result<Self, MetricError> {
        let m = pstar.objectives();
        let mut mins = vec![f64::INFINITY; m];
        let mut maxs = vec![f64::NEG_INFINITY; m];
        for p in pstar.points() {
            for (d, &v) in p.iter().enumerate() {
                mins[d] = mins[d].min(v);
                maxs[d] = maxs[d].max(v);
            }
        }
        let mut inv_range = Vec::with_capacity(m);
        for d in 0..m {
            let range = maxs[d] - mins[d];
            if !(range > 0.0) {
                return Err(MetricError::DegenerateReference { objective: d });
            }
            inv_range.push(1.0 / range);
        }
        let normalized = pstar
            .points()
            .iter()
            .map(|p| {
                p.iter()
                    .enumerate()
                    .map(|(d, &v)| (v - mins[d]) * inv_range[d])
                    .collect()
            })
            .collect();
        Ok(Self {
            normalized,
            mins,
            inv_range,
            objectives: m,
        })
    }

    pub fn len(&self) -> usize {
        self.normalized.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normalized.is_empty()
    }

    pub fn objectives(&self) -> usize {
        self.objectives
    }

    /// IGD of an approximation set against this reference.
    pub fn value(&self, a: &FrontSet) -> Result<f64, MetricError> {
        if a.objectives() != self.objectives {
            return Err(MetricError::ObjectiveMismatch);
        }
        let normalized: Vec<Vec<f64>> = a
            .points()
            .iter()
            .map(|p| {
                p.iter()
                    .enumerate()
                    .map(|(d, &v)| (v - self.mins[d]) * self.inv_range[d])
                    .collect()
            })
            .collect();
        Ok(self.value_normalized(&normalized))
    }

    fn value_normalized(&self, a: &[Vec<f64>]) -> f64 {
        let sum = if use_grid(self.len(), a.len()) {
            if let Some(grid) = Grid::build(a, self.objectives) {
                // Consecutive reference points are close together, so the
                // previous query's answer is an excellent starting bound.
                let mut warm = 0u32;
                self.normalized
                    .iter()
                    .map(|q| grid.min_dist_sq(q, &mut warm))
                    .sum::<f64>()
            } else {
                self.sum_brute(a)
            }
        } else {
            self.sum_brute(a)
        };
        math::sqrt(sum) / self.len() as f64
    }

    fn sum_brute(&self, a: &[Vec<f64>]) -> f64 {
        let m = self.objectives;
        let flat: Vec<f64> = a.iter().flat_map(|p| p.iter().copied()).collect();
        self.normalized
            .iter()
            .map(|q| {
                let mut best = f64::INFINITY;
                for p in flat.chunks_exact(m) {
                    let d = dist_sq(q, p);
                    if d < best {
                        best = d;
                    }
                }
                best
            })
            .sum()
    }

    /// Brute-force evaluation path, kept callable so the accelerated and
    /// plain routes can be checked against each other.
    pub fn value_brute_force(&self, a: &FrontSet) -> Result<f64, MetricError> {
        if a.objectives() != self.objectives {
            return Err(MetricError::ObjectiveMismatch);
        }
        let normalized: Vec<Vec<f64>> = a
            .points()
            .iter()
            .map(|p| {
                p.iter()
                    .enumerate()
                    .map(|(d, &v)| (v - self.mins[d]) * self.inv_range[d])
                    .collect()
            })
            .collect();
        Ok(math::sqrt(self.sum_brute(&normalized)) / self.len() as f64)
    }
}

/// One-shot IGD; see [`IgdReference`] for the hot path.
pub fn igd(a: &FrontSet, pstar: &FrontSet) -> Result<f64, MetricError> {
    IgdReference::new(pstar)?.value(a)
}

fn use_grid(pstar_len: usize, a_len: usize) -> bool {
    a_len >= 8 && (pstar_len >= 10_000 || pstar_len.saturating_mul(a_len) >= 200_000)
}

#[inline]
fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Uniform grid over the approximation set for nearest-point queries.
///
/// Points are stored flat; each cell holds a contiguous slice of point
/// indices. Queries expand Chebyshev shells of cells around the query's
/// (clamped) cell, pruning cells by box distance, until no unvisited
/// shell can beat the best squared distance found.
struct Grid {
    lo: [f64; 3],
    edge: [f64; 3],
    cells_per_dim: usize,
    dim: usize,
    min_edge: f64,
    cell_start: Vec<u32>,
    cell_points: Vec<u32>,
    flat: Vec<f64>,
}

impl Grid {
    fn build(points: &[Vec<f64>], dim: usize) -> Option<Self> {
        debug_assert!(dim == 2 || dim == 3);
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for p in points {
            for d in 0..dim {
                lo[d] = lo[d].min(p[d]);
                hi[d] = hi[d].max(p[d]);
            }
        }
        let cells_per_dim =
            (math::powf(points.len() as f64, 1.0 / dim as f64) as usize).clamp(2, 48);
        let mut edge = [1.0; 3];
        for d in 0..dim {
            let e = (hi[d] - lo[d]) / cells_per_dim as f64;
            if !e.is_finite() {
                return None;
            }
            // Degenerate spreads still get a usable cell width.
            edge[d] = if e > 1e-12 { e } else { 1e-12 };
        }
        let min_edge = edge[..dim].iter().fold(f64::INFINITY, |a, &b| a.min(b));

        let cell_count = cells_per_dim.pow(dim as u32);
        let mut counts = vec![0u32; cell_count + 1];
        let index_of = |p: &[f64]| -> usize {
            let mut idx = 0usize;
            for d in 0..dim {
                let c = (((p[d] - lo[d]) / edge[d]) as usize).min(cells_per_dim - 1);
                idx = idx * cells_per_dim + c;
            }
            idx
        };
        for p in points {
            counts[index_of(p) + 1] += 1;
        }
        for i in 0..cell_count {
            counts[i + 1] += counts[i];
        }
        let cell_start = counts.clone();
        let mut fill = counts;
        let mut cell_points = vec![0u32; points.len()];
        for (i, p) in points.iter().enumerate() {
            let cell = index_of(p);
            cell_points[fill[cell] as usize] = i as u32;
            fill[cell] += 1;
        }
        let flat: Vec<f64> = points.iter().flat_map(|p| p.iter().copied()).collect();
        Some(Self {
            lo,
            edge,
            cells_per_dim,
            dim,
            min_edge,
            cell_start,
            cell_points,
            flat,
        })
    }

    #[inline]
    fn point(&self, i: u32) -> &[f64] {
        let m = self.dim;
        &self.flat[i as usize * m..i as usize * m + m]
    }

    /// Scans one cell, updating the best squared distance and index.
    #[inline]
    fn scan_cell(&self, q: &[f64], coords: &[i64; 3], best: &mut f64, best_idx: &mut u32) {
        let mut box_d = 0.0;
        for d in 0..self.dim {
            let lo = self.lo[d] + coords[d] as f64 * self.edge[d];
            let hi = lo + self.edge[d];
            let gap = if q[d] < lo {
                lo - q[d]
            } else if q[d] > hi {
                q[d] - hi
            } else {
                0.0
            };
            box_d += gap * gap;
        }
        if box_d >= *best {
            return;
        }
        let mut idx = 0usize;
        for d in 0..self.dim {
            idx = idx * self.cells_per_dim + coords[d] as usize;
        }
        let from = self.cell_start[idx] as usize;
        let to = self.cell_start[idx + 1] as usize;
        for &i in &self.cell_points[from..to] {
            let d = dist_sq(q, self.point(i));
            if d < *best {
                *best = d;
                *best_idx = i;
            }
        }
    }

    /// Exact min squared distance from `q` to any point. `warm` is the
    /// previous query's nearest index; it seeds the bound and receives
    /// this query's answer.
    fn min_dist_sq(&self, q: &[f64], warm: &mut u32) -> f64 {
        let n = self.cells_per_dim as i64;
        let mut center = [0i64; 3];
        for d in 0..self.dim {
            let c = math::floor((q[d] - self.lo[d]) / self.edge[d]) as i64;
            center[d] = c.clamp(0, n - 1);
        }
        let mut best = dist_sq(q, self.point(*warm));
        let mut best_idx = *warm;
        let mut coords = [0i64; 3];
        for ring in 0..=n {
            if ring > 0 {
                let bound = (ring - 1) as f64 * self.min_edge;
                if bound * bound >= best {
                    break;
                }
            }
            self.for_shell(&center, ring, &mut coords, |grid, coords| {
                grid.scan_cell(q, coords, &mut best, &mut best_idx);
            });
        }
        *warm = best_idx;
        best
    }

    /// Visits exactly the cells at Chebyshev distance `ring` from
    /// `center`, clamped to the grid.
    fn for_shell(
        &self,
        center: &[i64; 3],
        ring: i64,
        coords: &mut [i64; 3],
        mut visit: impl FnMut(&Self, &[i64; 3]),
    ) {
        let n = self.cells_per_dim as i64;
        let clamp_range = |c: i64, r: i64| ((c - r).max(0), (c + r).min(n - 1));
        if ring == 0 {
            *coords = *center;
            coords[2] = if self.dim == 3 { center[2] } else { 0 };
            visit(self, coords);
            return;
        }
        if self.dim == 2 {
            coords[2] = 0;
            let (x0, x1) = clamp_range(center[0], ring);
            // Top and bottom rows of the shell.
            for &y in &[center[1] - ring, center[1] + ring] {
                if y < 0 || y >= n {
                    continue;
                }
                coords[1] = y;
                for x in x0..=x1 {
                    coords[0] = x;
                    visit(self, coords);
                }
            }
            // Left and right columns, corners excluded.
            let (y0, y1) = (
                (center[1] - ring + 1).max(0),
                (center[1] + ring - 1).min(n - 1),
            );
            for &x in &[center[0] - ring, center[0] + ring] {
                if x < 0 || x >= n {
                    continue;
                }
                coords[0] = x;
                for y in y0..=y1 {
                    coords[1] = y;
                    visit(self, coords);
                }
            }
        } else {
            // Two full faces in z, then the four side bands.
            let (x0, x1) = clamp_range(center[0], ring);
            let (y0, y1) = clamp_range(center[1], ring);
            for &z in &[center[2] - ring, center[2] + ring] {
                if z < 0 || z >= n {
                    continue;
                }
                coords[2] = z;
                for x in x0..=x1 {
                    coords[0] = x;
                    for y in y0..=y1 {
                        coords[1] = y;
                        visit(self, coords);
                    }
                }
            }
            let (z0, z1) = (
                (center[2] - ring + 1).max(0),
                (center[2] + ring - 1).min(n - 1),
            );
            for &y in &[center[1] - ring, center[1] + ring] {
                if y < 0 || y >= n {
                    continue;
                }
                coords[1] = y;
                for x in x0..=x1 {
                    coords[0] = x;
                    for z in z0..=z1 {
                        coords[2] = z;
                        visit(self, coords);
                    }
                }
            }
            let (yy0, yy1) = (
                (center[1] - ring + 1).max(0),
                (center[1] + ring - 1).min(n - 1),
            );
            for &x in &[center[0] - ring, center[0] + ring] {
                if x < 0 || x >= n {
                    continue;
                }
                coords[0] = x;
                for y in yy0..=yy1 {
                    coords[1] = y;
                    for z in z0..=z1 {
                        coords[2] = z;
                        visit(self, coords);
                    }
                }
            }
        }
    }
}

/// Caps a front at `cap` points by iteratively dropping the point with
/// the smallest crowding distance (recomputed after each removal), which
/// keeps the per-objective extremes.
pub fn truncate_front(front: &FrontSet, cap: usize) -> FrontSet {
    assert!(cap >= 2, "cap below 2 cannot keep the extremes");
    if front.len() <= cap {
        return front.clone();
    }
    let mut points = front.points().to_vec();
    while points.len() > cap {
        let crowding = crowding_distance(&points);
        let victim = crowding
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.partial_cmp(b).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        points.remove(victim);
    }
    FrontSet::new(points).expect("cap >= 2 keeps the front nonempty")
}
