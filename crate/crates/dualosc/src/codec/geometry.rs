// Copyright (c) The dualosc Contributors
// SPDX-License-Identifier: Apache-2.0

//! Constructive evaluation of the encoding angle.
//!
//! Builds the sphere for index `a`, finds where it meets the unit parabola by
//! bisection, places the data point from the `g` parabola and measures the angle
//! between the reference and data vectors from their dot and cross products. Shares no
//! arithmetic with [`super::encode_phi`], so the two can check each other.

use std::ops::Sub;

use crate::error::Result;
use crate::scalar::Scalar;

use super::check_index;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryPoint<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> GeometryPoint<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn norm(self) -> T {
        self.dot(self).sqrt()
    }
}

impl<T: Scalar> Sub for GeometryPoint<T> {
    type Output = Self;

    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

/// Sphere centre, reference point and data point for one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleAngle<T> {
    pub center: GeometryPoint<T>,
    pub radius: T,
    pub reference: GeometryPoint<T>,
    pub data: GeometryPoint<T>,
    pub phi: T,
}

impl<T: Scalar> OracleAngle<T> {
    /// Residual of `point` against the sphere equation.
    pub fn sphere_residual(&self, point: GeometryPoint<T>) -> T {
        let d = point - self.center;
        d.dot(d) - self.radius * self.radius
    }
}

impl<T: Scalar> GeometryPoint<T> {
    pub fn cross(self, o: Self) -> Self {
        Self::new(self.y * o.z - self.z * o.y, self.z * o.x - self.x * o.z, self.x * o.y - self.y * o.x)
    }
}

/// Angle between two vectors: the normalised dot product gives the cosine,
/// the cross product the sine, and `atan2` keeps small angles accurate.
pub fn angle_between<T: Scalar>(u: GeometryPoint<T>, v: GeometryPoint<T>) -> T {
    let n = u.norm() * v.norm();
    (u.cross(v).norm() / n).atan2(u.dot(v) / n)
}

fn bisect<T: Scalar>(mut lo: T, mut hi: T, f: impl Fn(T) -> T) -> T {
    let mut flo = f(lo);
    for _ in 0..400 {
        let mid = (lo + hi) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == T::zero() {
            return mid;
        }
        if (fm < T::zero()) == (flo < T::zero()) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / T::lit(2.0)
}

/// Full construction; `None` when the sphere misses the parabola or the data
/// point falls off the sphere.
pub fn oracle_construction<T: Scalar>(a: u64, b: T, g: T) -> Result<Option<OracleAngle<T>>> {
    check_index(a, g)?;
    let af = T::lit(a as f64);
    let two = T::lit(2.0);
    let quarter = T::lit(0.25);
    let radius = af + af / (two * g);
    let height = af * af + af;
    // Meeting heights of the sphere section with the unit parabola, measured
    // from the centre height: u^2 + u + (height + 1/4 - r^2) = 0.
    let k = height + quarter - radius * radius;
    let f = |u: T| u * u + u + k;
    let vertex = -T::lit(0.5);
    if f(vertex) > T::zero() {
        return Ok(None);
    }
    let lower = bisect(vertex - radius - T::one(), vertex, f);
    let z_low = height + lower;
    // Abscissa of the g parabola at that height.
    let level = z_low - T::one() / (T::lit(4.0) * g);
    if level < T::zero() {
        return Ok(None);
    }
    let span = (level / g).max(T::one()) + T::one();
    let x_g = bisect(T::zero(), span, |x| g * x * x - level);
    let dx = (af + T::one() - x_g).abs();
    if dx > radius {
        return Ok(None);
    }
    let center = GeometryPoint::new(af, b, height + b * b + b);
    let reference = GeometryPoint::new(center.x, center.y, center.z - radius);
    let drop = (radius * radius - dx * dx).sqrt();
    let data = GeometryPoint::new(center.x - dx, center.y, center.z - drop);
    let phi = angle_between(reference - center, data - center);
    Ok(Some(OracleAngle { center, radius, reference, data, phi }))
}

/// Encoding angle by construction, `None` when unencodable.
pub fn geometric_phi_oracle<T: Scalar>(a: u64, b: T, g: T) -> Result<Option<T>> {
    Ok(oracle_construction(a, b, g)?.map(|o| o.phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::encode_phi;

    #[test]
    fn coincident_vectors() {
        let v = GeometryPoint::new(0.3f64, -1.2, 4.0);
        assert_eq!(angle_between(v, v), 0.0);
    }

    #[test]
    fn agrees_with_closed_form() {
        let mut checked = 0;
        for g in 1..=6 {
            for a in 1..=100u64 {
                let g = g as f64;
                if let Some(phi) = geometric_phi_oracle(a, 0.0, g).unwrap() {
                    assert!((phi - encode_phi(a, g)).abs() < 1e-6, "a={a} g={g}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 580);
    }

    #[test]
    fn points_lie_on_sphere() {
        for (a, g) in [(1u64, 1.0f64), (7, 2.5), (40, 6.0), (99, 1.0)] {
            let o = oracle_construction(a, 0.0, g).unwrap().unwrap();
            let rr = o.radius * o.radius;
            assert!(o.sphere_residual(o.reference).abs() <= 1e-9 * rr);
            assert!(o.sphere_residual(o.data).abs() <= 1e-9 * rr);
            let mr = (o.reference - o.center).norm();
            let md = (o.data - o.center).norm();
            assert!((mr - md).abs() < 1e-9);
        }
    }

    #[test]
    fn small_index_on_steep_curve_is_unencodable() {
        // r^2 < a^2 + a: the sphere never reaches the parabola.
        assert_eq!(geometric_phi_oracle(1, 0.0, 6.0f64).unwrap(), None);
        assert!(geometric_phi_oracle(6, 0.0, 6.0f64).unwrap().is_some());
    }
}
