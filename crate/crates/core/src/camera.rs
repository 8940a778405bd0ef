//! Pinhole cameras: OpenCV-style axes (+x right, +y down, +z forward),
//! poses stored camera-to-world.

use crate::error::{Error, Result};
use crate::math::Vec3;
use crate::pose::{PoseRecord, PoseSE3};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Intrinsics {
    pub fx: f64,
    pub fy: f64,
    pub cx: f64,
    pub cy: f64,
    pub width: u32,
    pub height: u32,
}

impl Intrinsics {
    /// Symmetric intrinsics from a full field of view along the image width.
    pub fn from_fov(width: u32, height: u32, fov_x: f64) -> Self {
        let fx = width as f64 / (2.0 * (fov_x / 2.0).tan());
        Self {
            fx,
            fy: fx,
            cx: width as f64 / 2.0,
            cy: height as f64 / 2.0,
            width,
            height,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Camera {
    pub intrinsics: Intrinsics,
    /// Camera-to-world transform.
    pub pose: PoseSE3,
    pub near: f64,
    pub far: f64,
}

impl Camera {
    pub fn new(intrinsics: Intrinsics, pose: PoseSE3, near: f64, far: f64) -> Result<Self> {
        if !(near > 0.0 && near < far) {
            return Err(Error::InvalidArgument(format!(
                "camera needs 0 < near < far, got near={near}, far={far}"
            )));
        }
        if !(intrinsics.fx > 0.0 && intrinsics.fy > 0.0) {
            return Err(Error::InvalidArgument("focal lengths must be positive".into()));
        }
        if intrinsics.width < 8 || intrinsics.height < 8 {
            return Err(Error::InvalidArgument("image must be at least 8x8 pixels".into()));
        }
        Ok(Self {
            intrinsics,
            pose,
            near,
            far,
        })
    }

    /// Camera positioned at `eye` looking at `target`, world +z treated as up.
    pub fn look_at(intrinsics: Intrinsics, eye: Vec3, target: Vec3, near: f64, far: f64) -> Result<Self> {
        let forward = (target - eye)
            .try_normalize(1e-12)
            .ok_or_else(|| Error::InvalidArgument("look_at eye and target coincide".into()))?;
        let world_up = Vec3::new(0.0, 0.0, 1.0);
        let mut right = forward.cross(&-world_up);
        if right.norm() < 1e-9 {
            // Looking straight up or down: pick an arbitrary horizontal right.
            right = Vec3::new(1.0, 0.0, 0.0);
        }
        let right = right.normalize();
        let down = forward.cross(&right).normalize();
        let rotation = nalgebra::Matrix3::from_columns(&[right, down, forward]);
        Camera::new(intrinsics, PoseSE3::new(rotation, eye), near, far)
    }

    pub fn position(&self) -> Vec3 {
        self.pose.translation
    }

    /// World-space ray through the center of pixel (col, row).
    pub fn pixel_ray(&self, col: u32, row: u32) -> (Vec3, Vec3) {
        let i = &self.intrinsics;
        let u = col as f64 + 0.5;
        let v = row as f64 + 0.5;
        let dir_cam = Vec3::new((u - i.cx) / i.fx, (v - i.cy) / i.fy, 1.0);
        let dir = self.pose.apply_dir(&dir_cam).normalize();
        (self.position(), dir)
    }

    /// Ray with sub-pixel offsets in [0, 1) within pixel (col, row).
    pub fn pixel_ray_offset(&self, col: u32, row: u32, du: f64, dv: f64) -> (Vec3, Vec3) {
        let i = &self.intrinsics;
        let u = col as f64 + du;
        let v = row as f64 + dv;
        let dir_cam = Vec3::new((u - i.cx) / i.fx, (v - i.cy) / i.fy, 1.0);
        let dir = self.pose.apply_dir(&dir_cam).normalize();
        (self.position(), dir)
    }

    /// Projects a world point; returns pixel coordinates and camera-frame
    /// depth (z), or `None` when the point is at or behind the camera plane.
    pub fn project(&self, p: &Vec3) -> Option<(f64, f64, f64)> {
        let pc = self.pose.inverse().apply(p);
        if pc.z <= 1e-12 {
            return None;
        }
        let i = &self.intrinsics;
        let u = i.fx * pc.x / pc.z + i.cx;
        let v = i.fy * pc.y / pc.z + i.cy;
        Some((u, v, pc.z))
    }

    /// True when the point projects strictly inside the image bounds and lies
    /// in front of the camera.
    pub fn sees(&self, p: &Vec3) -> bool {
        match self.project(p) {
            None => false,
            Some((u, v, _)) => {
                u >= 0.0 && u < self.intrinsics.width as f64 && v >= 0.0 && v < self.intrinsics.height as f64
            }
        }
    }
}

/// Serialized camera list (`cameras.json`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CameraFile {
    pub intrinsics: Intrinsics,
    pub near: f64,
    pub far: f64,
    /// Camera-to-world matrices, row-major.
    pub poses: Vec<PoseRecord>,
}

impl CameraFile {
    pub fn from_cameras(cameras: &[Camera]) -> Result<Self> {
        let first = cameras
            .first()
            .ok_or_else(|| Error::InvalidArgument("camera list is empty".into()))?;
        Ok(Self {
            intrinsics: first.intrinsics,
            near: first.near,
            far: first.far,
            poses: cameras.iter().map(|c| PoseRecord::from_se3(&c.pose)).collect(),
        })
    }

    pub fn to_cameras(&self) -> Result<Vec<Camera>> {
        self.poses
            .iter()
            .map(|rec| Camera::new(self.intrinsics, rec.to_se3(), self.near, self.far))
            .collect()
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn test_camera(eye: Vec3) -> Camera {
        Camera::look_at(Intrinsics::from_fov(64, 64, 0.7), eye, Vec3::zeros(), 0.1, 20.0).unwrap()
    }

    #[test]
    fn look_at_points_forward() {
        let cam = test_camera(Vec3::new(4.0, 0.0, 1.0));
        let (o, d) = cam.pixel_ray(32, 32);
        assert!((o - Vec3::new(4.0, 0.0, 1.0)).norm() < 1e-12);
        // Central-ish ray should point at the origin (half-pixel offset aside).
        let closest = o + d * o.norm();
        assert!(closest.norm() < 0.1);
    }

    #[test]
    fn rotation_is_orthonormal_even_at_pole() {
        let cam = test_camera(Vec3::new(0.0, 0.0, 4.0));
        let r = cam.pose.rotation;
        assert!((r.transpose() * r - nalgebra::Matrix3::identity()).norm() < 1e-12);
        assert!((r.determinant() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn project_center() {
        let cam = test_camera(Vec3::new(4.0, 0.0, 0.0));
        let (u, v, z) = cam.project(&Vec3::zeros()).unwrap();
        assert!((u - 32.0).abs() < 1e-9);
        assert!((v - 32.0).abs() < 1e-9);
        assert!((z - 4.0).abs() < 1e-12);
    }

    #[test]
    fn behind_camera_not_seen() {
        let cam = test_camera(Vec3::new(4.0, 0.0, 0.0));
        assert!(!cam.sees(&Vec3::new(8.0, 0.0, 0.0)));
        assert!(cam.sees(&Vec3::zeros()));
    }

    #[test]
    fn pixel_ray_is_unit() {
        let cam = test_camera(Vec3::new(2.0, -3.0, 1.5));
        for &(c, r) in &[(0u32, 0u32), (63, 0), (31, 17), (63, 63)] {
            let (_, d) = cam.pixel_ray(c, r);
            assert!((d.norm() - 1.0).abs() < 1e-12);
        }
    }
}
