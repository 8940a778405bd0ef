//! Rigid (SE3) and similarity (Sim3) transforms.
//!
//! Scenes align to the reference frame by Sim(3) because each scene's
//! reconstruction has its own unknown scale; objects within already-aligned
//! scenes move by SE(3) only.

use crate::math::Vec3;
use nalgebra::{Matrix3, Matrix4};
use serde::{Deserialize, Serialize};

/// Rigid transform: `y = R x + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoseSE3 {
    pub rotation: Matrix3<f64>,
    pub translation: Vec3,
}

/// Similarity transform: `y = s R x + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoseSim3 {
    pub scale: f64,
    pub rotation: Matrix3<f64>,
    pub translation: Vec3,
}

impl Default for PoseSE3 {
    fn default() -> Self {
        Self::identity()
    }
}

impl Default for PoseSim3 {
    fn default() -> Self {
        Self::identity()
    }
}

impl PoseSE3 {
    pub fn identity() -> Self {
        Self {
            rotation: Matrix3::identity(),
            translation: Vec3::zeros(),
        }
    }

    pub fn new(rotation: Matrix3<f64>, translation: Vec3) -> Self {
        Self { rotation, translation }
    }

    pub fn apply(&self, p: &Vec3) -> Vec3 {
        self.rotation * p + self.translation
    }

    pub fn apply_dir(&self, d: &Vec3) -> Vec3 {
        self.rotation * d
    }

    pub fn inverse(&self) -> PoseSE3 {
        let rt = self.rotation.transpose();
        PoseSE3 {
            rotation: rt,
            translation: -(rt * self.translation),
        }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &PoseSE3) -> PoseSE3 {
        PoseSE3 {
            rotation: self.rotation * other.rotation,
            translation: self.rotation * other.translation + self.translation,
        }
    }

    pub fn to_sim3(&self) -> PoseSim3 {
        PoseSim3 {
            scale: 1.0,
            rotation: self.rotation,
            translation: self.translation,
        }
    }

    pub fn matrix(&self) -> Matrix4<f64> {
        let mut m = Matrix4::identity();
        m.fixed_view_mut::<3, 3>(0, 0).copy_from(&self.rotation);
        m.fixed_view_mut::<3, 1>(0, 3).copy_from(&self.translation);
        m
    }

    /// Angle in radians between this rotation and `other`.
    pub fn rotation_angle_to(&self, other: &PoseSE3) -> f64 {
        rotation_angle(&(self.rotation.transpose() * other.rotation))
    }
}

impl PoseSim3 {
    pub fn identity() -> Self {
        Self {
            scale: 1.0,
            rotation: Matrix3::identity(),
            translation: Vec3::zeros(),
        }
    }

    pub fn new(scale: f64, rotation: Matrix3<f64>, translation: Vec3) -> Self {
        Self {
            scale,
            rotation,
            translation,
        }
    }

    pub fn apply(&self, p: &Vec3) -> Vec3 {
        self.scale * (self.rotation * p) + self.translation
    }

    /// Rotate a direction without scaling or translating it.
    pub fn apply_dir(&self, d: &Vec3) -> Vec3 {
        self.rotation * d
    }

    pub fn inverse(&self) -> PoseSim3 {
        let s = 1.0 / self.scale;
        let rt = self.rotation.transpose();
        PoseSim3 {
            scale: s,
            rotation: rt,
            translation: -s * (rt * self.translation),
        }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &PoseSim3) -> PoseSim3 {
        PoseSim3 {
            scale: self.scale * other.scale,
            rotation: self.rotation * other.rotation,
            translation: self.scale * (self.rotation * other.translation) + self.translation,
        }
    }

    pub fn rotation_angle_to(&self, other: &PoseSim3) -> f64 {
        rotation_angle(&(self.rotation.transpose() * other.rotation))
    }
}

/// Angle of a rotation matrix, clamped against round-off.
pub fn rotation_angle(r: &Matrix3<f64>) -> f64 {
    let c = ((r.trace() - 1.0) * 0.5).clamp(-1.0, 1.0);
    c.acos()
}

/// Rodrigues formula: rotation about `axis` (need not be unit) by `angle`.
pub fn rotation_about_axis(axis: &Vec3, angle: f64) -> Matrix3<f64> {
    let n = axis.norm();
    if n < 1e-300 {
        return Matrix3::identity();
    }
    let u = axis / n;
    let k = skew(&u);
    Matrix3::identity() + angle.sin() * k + (1.0 - angle.cos()) * (k * k)
}

/// Rotation from a rotation vector (axis * angle), small-angle safe.
pub fn rotation_from_vector(w: &Vec3) -> Matrix3<f64> {
    let angle = w.norm();
    if angle < 1e-12 {
        Matrix3::identity() + skew(w)
    } else {
        rotation_about_axis(w, angle)
    }
}

pub fn skew(v: &Vec3) -> Matrix3<f64> {
    Matrix3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0)
}

/// Serialized form shared by SE(3) and Sim(3): a 4x4 row-major matrix plus an
/// explicit scale (1.0 for rigid transforms).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PoseRecord {
    pub matrix: [[f64; 4]; 4],
    pub scale: f64,
}

impl PoseRecord {
    pub fn from_se3(pose: &PoseSE3) -> Self {
        Self {
            matrix: matrix_rows(&pose.rotation, &pose.translation, 1.0),
            scale: 1.0,
        }
    }

    pub fn from_sim3(pose: &PoseSim3) -> Self {
        Self {
            matrix: matrix_rows(&pose.rotation, &pose.translation, pose.scale),
            scale: pose.scale,
        }
    }

    pub fn to_se3(&self) -> PoseSE3 {
        let sim = self.to_sim3();
        PoseSE3 {
            rotation: sim.rotation,
            translation: sim.translation,
        }
    }

    pub fn to_sim3(&self) -> PoseSim3 {
        let m = &self.matrix;
        let s = self.scale;
        let rotation = Matrix3::new(
            m[0][0] / s,
            m[0][1] / s,
            m[0][2] / s,
            m[1][0] / s,
            m[1][1] / s,
            m[1][2] / s,
            m[2][0] / s,
            m[2][1] / s,
            m[2][2] / s,
        );
        PoseSim3 {
            scale: s,
            rotation,
            translation: Vec3::new(m[0][3], m[1][3], m[2][3]),
        }
    }
}

fn matrix_rows(r: &Matrix3<f64>, t: &Vec3, s: f64) -> [[f64; 4]; 4] {
    [
        [s * r[(0, 0)], s * r[(0, 1)], s * r[(0, 2)], t.x],
        [s * r[(1, 0)], s * r[(1, 1)], s * r[(1, 2)], t.y],
        [s * r[(2, 0)], s * r[(2, 1)], s * r[(2, 2)], t.z],
        [0.0, 0.0, 0.0, 1.0],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    prop_compose! {
        fn rotation_strategy()(ax in -1.0f64..1.0, ay in -1.0f64..1.0, az in -1.0f64..1.0, angle in 0.0f64..std::f64::consts::PI) -> Matrix3<f64> {
            let axis = Vec3::new(ax, ay, az + 1.5);
            rotation_about_axis(&axis, angle)
        }
    }

    prop_compose! {
        fn sim3_strategy()(r in rotation_strategy(), s in 0.5f64..2.0, tx in -3.0f64..3.0, ty in -3.0f64..3.0, tz in -3.0f64..3.0) -> PoseSim3 {
            PoseSim3::new(s, r, Vec3::new(tx, ty, tz))
        }
    }

    proptest! {
        #[test]
        fn sim3_roundtrip(pose in sim3_strategy(), px in -5.0f64..5.0, py in -5.0f64..5.0, pz in -5.0f64..5.0) {
            let p = Vec3::new(px, py, pz);
            let q = pose.apply(&pose.inverse().apply(&p));
            prop_assert!((q - p).norm() < 1e-9);
        }

        #[test]
        fn sim3_compose_matches_sequential(a in sim3_strategy(), b in sim3_strategy(), px in -2.0f64..2.0) {
            let p = Vec3::new(px, 0.3, -0.7);
            let lhs = a.compose(&b).apply(&p);
            let rhs = a.apply(&b.apply(&p));
            prop_assert!((lhs - rhs).norm() < 1e-9);
        }

        #[test]
        fn record_roundtrip(pose in sim3_strategy()) {
            let rec = PoseRecord::from_sim3(&pose);
            let back = rec.to_sim3();
            prop_assert!((back.scale - pose.scale).abs() < 1e-12);
            prop_assert!((back.rotation - pose.rotation).norm() < 1e-12);
            prop_assert!((back.translation - pose.translation).norm() < 1e-12);
        }
    }

    #[test]
    fn rotation_orthonormal() {
        let r = rotation_about_axis(&Vec3::new(1.0, 2.0, -0.5), 1.1);
        let should_be_eye = r.transpose() * r;
        assert!((should_be_eye - Matrix3::identity()).norm() < 1e-12);
        assert!((r.determinant() - 1.0).abs() < 1e-12);
    }
}
