//! Dense node-centered 3D grids over an axis-aligned box.
//!
//! Nodes sit at `min + i * h` per axis with `h = extent / (res - 1)`, so the
//! first and last node lie exactly on the box faces. Storage is a flat
//! x-fastest array: `index = x + res_x * (y + res_y * z)`.

use crate::math::{Aabb, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridDims {
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
}

impl GridDims {
    pub fn new(nx: usize, ny: usize, nz: usize) -> Self {
        assert!(nx >= 2 && ny >= 2 && nz >= 2, "grid needs at least 2 nodes per axis");
        Self { nx, ny, nz }
    }

    pub fn cubic(n: usize) -> Self {
        Self::new(n, n, n)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nx * self.ny * self.nz
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn index(&self, x: usize, y: usize, z: usize) -> usize {
        debug_assert!(x < self.nx && y < self.ny && z < self.nz);
        x + self.nx * (y + self.ny * z)
    }

    #[inline]
    pub fn coords(&self, index: usize) -> (usize, usize, usize) {
        let x = index % self.nx;
        let rest = index / self.nx;
        (x, rest % self.ny, rest / self.ny)
    }
}

/// Geometry of a node grid over a box: per-axis node spacing and conversions
/// between world and grid coordinates.
#[derive(Debug, Clone, Copy)]
pub struct GridGeometry {
    pub aabb: Aabb,
    pub dims: GridDims,
    pub spacing: [f64; 3],
}

impl GridGeometry {
    pub fn new(aabb: Aabb, dims: GridDims) -> Self {
        assert!(aabb.is_valid(), "grid box must have positive extent");
        let e = aabb.extent();
        let spacing = [
            e.x / (dims.nx - 1) as f64,
            e.y / (dims.ny - 1) as f64,
            e.z / (dims.nz - 1) as f64,
        ];
        Self { aabb, dims, spacing }
    }

    pub fn node_position(&self, x: usize, y: usize, z: usize) -> Vec3 {
        Vec3::new(
            self.aabb.min[0] + x as f64 * self.spacing[0],
            self.aabb.min[1] + y as f64 * self.spacing[1],
            self.aabb.min[2] + z as f64 * self.spacing[2],
        )
    }

    pub fn min_spacing(&self) -> f64 {
        self.spacing[0].min(self.spacing[1]).min(self.spacing[2])
    }

    /// Continuous grid coordinates of a world point (0 at the first node).
    #[inline]
    pub fn grid_coords(&self, p: &Vec3) -> [f64; 3] {
        [
            (p.x - self.aabb.min[0]) / self.spacing[0],
            (p.y - self.aabb.min[1]) / self.spacing[1],
            (p.z - self.aabb.min[2]) / self.spacing[2],
        ]
    }
}

/// Trilinear interpolation support: the 8 corner indices and weights of the
/// cell containing grid coordinates `g`, with coordinates clamped to the
/// valid node range.
#[derive(Debug, Clone, Copy)]
pub struct TrilinearStencil {
    pub corners: [usize; 8],
    pub weights: [f64; 8],
}

impl GridGeometry {
    #[inline]
    pub fn stencil_clamped(&self, p: &Vec3) -> TrilinearStencil {
        let g = self.grid_coords(p);
        let d = &self.dims;
        let mut i = [0usize; 3];
        let mut f = [0f64; 3];
        let n = [d.nx, d.ny, d.nz];
        for a in 0..3 {
            let max_cell = (n[a] - 2) as f64;
            let c = g[a].clamp(0.0, (n[a] - 1) as f64);
            let cell = c.floor().min(max_cell);
            i[a] = cell as usize;
            f[a] = c - cell;
        }
        let base = d.index(i[0], i[1], i[2]);
        let sx = 1;
        let sy = d.nx;
        let sz = d.nx * d.ny;
        let corners = [
            base,
            base + sx,
            base + sy,
            base + sx + sy,
            base + sz,
            base + sx + sz,
            base + sy + sz,
            base + sx + sy + sz,
        ];
        let (fx, fy, fz) = (f[0], f[1], f[2]);
        let (gx, gy, gz) = (1.0 - fx, 1.0 - fy, 1.0 - fz);
        let weights = [
            gx * gy * gz,
            fx * gy * gz,
            gx * fy * gz,
            fx * fy * gz,
            gx * gy * fz,
            fx * gy * fz,
            gx * fy * fz,
            fx * fy * fz,
        ];
        TrilinearStencil { corners, weights }
    }
}

/// Flat scalar grid.
#[derive(Debug, Clone)]
pub struct ScalarGrid {
    pub geom: GridGeometry,
    pub values: Vec<f32>,
}

impl ScalarGrid {
    pub fn zeros(aabb: Aabb, dims: GridDims) -> Self {
        let geom = GridGeometry::new(aabb, dims);
        Self {
            values: vec![0.0; dims.len()],
            geom,
        }
    }

    pub fn from_fn(aabb: Aabb, dims: GridDims, mut f: impl FnMut(&Vec3) -> f32) -> Self {
        let geom = GridGeometry::new(aabb, dims);
        let mut values = Vec::with_capacity(dims.len());
        for z in 0..dims.nz {
            for y in 0..dims.ny {
                for x in 0..dims.nx {
                    values.push(f(&geom.node_position(x, y, z)));
                }
            }
        }
        Self { geom, values }
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> f32 {
        self.values[self.geom.dims.index(x, y, z)]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, z: usize, v: f32) {
        let i = self.geom.dims.index(x, y, z);
        self.values[i] = v;
    }

    /// Trilinear sample with clamping to the box.
    #[inline]
    pub fn sample_clamped(&self, p: &Vec3) -> f64 {
        let st = self.geom.stencil_clamped(p);
        let mut acc = 0.0;
        for k in 0..8 {
            acc += st.weights[k] * self.values[st.corners[k]] as f64;
        }
        acc
    }

    /// Trilinear sample that is zero outside the box.
    #[inline]
    pub fn sample_or_zero(&self, p: &Vec3) -> f64 {
        if !self.geom.aabb.contains(p) {
            return 0.0;
        }
        self.sample_clamped(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_box() -> Aabb {
        Aabb::new(Vec3::new(0.0, 0.0, 0.0), Vec3::new(1.0, 1.0, 1.0))
    }

    #[test]
    fn node_values_reproduced_exactly() {
        let dims = GridDims::new(3, 4, 5);
        let mut g = ScalarGrid::zeros(unit_box(), dims);
        for z in 0..5 {
            for y in 0..4 {
                for x in 0..3 {
                    g.set(x, y, z, (x * 100 + y * 10 + z) as f32);
                }
            }
        }
        for z in 0..5 {
            for y in 0..4 {
                for x in 0..3 {
                    let p = g.geom.node_position(x, y, z);
                    assert_eq!(g.sample_clamped(&p), (x * 100 + y * 10 + z) as f64);
                }
            }
        }
    }

    #[test]
    fn midpoint_is_linear() {
        let dims = GridDims::cubic(2);
        let mut g = ScalarGrid::zeros(unit_box(), dims);
        g.set(0, 0, 0, 0.0);
        g.set(1, 0, 0, 2.0);
        let v = g.sample_clamped(&Vec3::new(0.5, 0.0, 0.0));
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn outside_is_zero() {
        let dims = GridDims::cubic(2);
        let mut g = ScalarGrid::zeros(unit_box(), dims);
        g.set(0, 0, 0, 5.0);
        assert_eq!(g.sample_or_zero(&Vec3::new(-0.1, 0.5, 0.5)), 0.0);
    }

    #[test]
    fn flat_index_is_x_fastest() {
        let dims = GridDims::new(4, 3, 2);
        assert_eq!(dims.index(1, 0, 0), 1);
        assert_eq!(dims.index(0, 1, 0), 4);
        assert_eq!(dims.index(0, 0, 1), 12);
        for i in 0..dims.len() {
            let (x, y, z) = dims.coords(i);
            assert_eq!(dims.index(x, y, z), i);
        }
    }
}
