//! Minimal 3-vector.

use core::ops::{Add, AddAssign, Mul, Neg, Sub};

/// A point or displacement in R³ (meters).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    /// x component.
    pub x: f64,
    /// y component.
    pub y: f64,
    /// z component.
    pub z: f64,
}

impl Vec3 {
    /// The origin.
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    /// Unit vector along x.
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    /// Unit vector along y.
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    /// Unit vector along z.
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    /// Construct from components.
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    /// Dot product.
    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Cross product.
    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    /// Euclidean norm.
    pub fn norm(self) -> f64 {
        libm::hypot(libm::hypot(self.x, self.y), self.z)
    }

    /// Distance to another point.
    pub fn distance(self, other: Vec3) -> f64 {
        (self - other).norm()
    }

    /// Unit vector in the same direction; `None` for the zero vector.
    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(self * (1.0 / n))
        } else {
            None
        }
    }

    /// Some unit vector perpendicular to `self`, which must be a unit vector.
    ///
    /// Prefers the direction of `+y` projected onto the plane orthogonal to
    /// `self`, so that for `self = +x` the result is `+y`.
    pub fn any_perpendicular(self) -> Vec3 {
        let seed = if libm::fabs(self.y) < 0.9 { Vec3::Y } else { Vec3::Z };
        let v = seed - self * seed.dot(self);
        v * (1.0 / v.norm())
    }

    /// Components as an array.
    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

/// `|x − a| − |x − b|` given both distances, computed without cancelling
/// the (possibly large) distances themselves.
pub fn distance_difference(x: Vec3, a: Vec3, b: Vec3, dist_a: f64, dist_b: f64) -> f64 {
    let sum = dist_a + dist_b;
    if sum == 0.0 {
        0.0
    } else {
        (b - a).dot((x - a) + (x - b)) / sum
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
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

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perpendicular_of_x_is_y() {
        assert_eq!(Vec3::X.any_perpendicular(), Vec3::Y);
    }

    #[test]
    fn perpendicular_is_orthonormal() {
        for v in [Vec3::Y, Vec3::Z, Vec3::new(1.0, 2.0, -3.0)] {
            let u = v.normalized().unwrap();
            let p = u.any_perpendicular();
            assert!(p.dot(u).abs() < 1e-15);
            assert!((p.norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn distance_difference_matches_direct() {
        let x = Vec3::new(3.0, -4.0, 12.0);
        let a = Vec3::new(1.0, 1.0, 1.0);
        let b = Vec3::new(-2.0, 0.5, 7.0);
        let (da, db) = (x.distance(a), x.distance(b));
        assert!((distance_difference(x, a, b, da, db) - (da - db)).abs() < 1e-14);
        assert_eq!(distance_difference(a, a, a, 0.0, 0.0), 0.0);
    }

    #[test]
    fn zero_has_no_direction() {
        assert!(Vec3::ZERO.normalized().is_none());
    }
}
