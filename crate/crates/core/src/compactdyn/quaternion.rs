use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::group::Group;

/// Unit quaternion w + xi + yj + zk, identified with an element of SU(2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitQuaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl UnitQuaternion {
    pub const IDENTITY: UnitQuaternion = UnitQuaternion { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };

    /// Normalizes the given components; panics on the zero vector.
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        assert!(n > 0.0, "zero quaternion has no direction");
        UnitQuaternion { w: w / n, x: x / n, y: y / n, z: z / n }
    }

    /// Rotation by `angle` in SU(2) about a unit axis: cos(θ/2) + sin(θ/2)·axis.
    pub fn from_axis_angle(axis: [f64; 3], angle: f64) -> Self {
        let (s, c) = (angle / 2.0).sin_cos();
        UnitQuaternion::new(c, s * axis[0], s * axis[1], s * axis[2])
    }

    /// Haar-uniform point of S³: four standard normals, normalized.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let v: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
            let n2: f64 = v.iter().map(|c| c * c).sum();
            if n2 > 1e-300 {
                return UnitQuaternion::new(v[0], v[1], v[2], v[3]);
            }
        }
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, o: &Self) -> f64 {
        self.w * o.w + self.x * o.x + self.y * o.y + self.z * o.z
    }

    /// Hamilton product, renormalized.
    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = (self, o);
        UnitQuaternion::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }

    pub fn conj(&self) -> Self {
        UnitQuaternion { w: self.w, x: -self.x, y: -self.y, z: -self.z }
    }

    /// Trace of the corresponding SU(2) matrix, in [−2, 2].
    pub fn trace(&self) -> f64 {
        2.0 * self.w
    }

    /// Great-circle angle on S³ in [0, π]; computed from the chord for
    /// accuracy near 0 and π.
    pub fn distance(&self, o: &Self) -> f64 {
        let c = ((self.w - o.w).powi(2) + (self.x - o.x).powi(2) + (self.y - o.y).powi(2) + (self.z - o.z).powi(2))
            .sqrt();
        2.0 * (c / 2.0).min(1.0).asin()
    }

    /// Angle in SO(3) = SU(2)/{±1}: distance to the nearer of ±o.
    pub fn distance_mod_center(&self, o: &Self) -> f64 {
        let neg = UnitQuaternion { w: -o.w, x: -o.x, y: -o.y, z: -o.z };
        self.distance(o).min(self.distance(&neg))
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }
}

/// SU(2) as a [`Group`] on unit quaternions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Su2;

impl Group for Su2 {
    type Elem = UnitQuaternion;

    fn identity(&self) -> UnitQuaternion {
        UnitQuaternion::IDENTITY
    }
    fn mul(&self, a: &UnitQuaternion, b: &UnitQuaternion) -> UnitQuaternion {
        a.mul(b)
    }
    fn inv(&self, a: &UnitQuaternion) -> UnitQuaternion {
        a.conj()
    }
}

/// CDF of tr(g) for Haar-random g ∈ SU(2); the density is √(4−s²)/(2π).
pub fn haar_trace_cdf(s: f64) -> f64 {
    let w = (s / 2.0).clamp(-1.0, 1.0);
    0.5 + (w * (1.0 - w * w).sqrt() + w.asin()) / PI
}

/// Kolmogorov–Smirnov distance between a sample and a continuous CDF.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted.iter().enumerate().fold(0.0, |worst: f64, (i, &x)| {
        let f = cdf(x);
        worst.max(f - i as f64 / n).max((i + 1) as f64 / n - f)
    })
}
