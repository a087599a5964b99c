// Copyright (c) The dualosc Contributors
// SPDX-License-Identifier: Apache-2.0

//! Frequency encoding of a state index `a` on curve `g`, its inverses and the
//! worst-case amplitude error model.

pub mod geometry;

use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;

pub use geometry::{geometric_phi_oracle, GeometryPoint, OracleAngle};

/// Phase pair produced by [`encode`], or the marker for indices the curve cannot hold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Encoded<T> {
    Angles { phi: T, theta: T },
    Unencodable,
}

impl<T: Scalar> Encoded<T> {
    pub fn phi(&self) -> Option<T> {
        match *self {
            Encoded::Angles { phi, .. } => Some(phi),
            Encoded::Unencodable => None,
        }
    }
}

/// One maintained state and its phases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Encoding<T> {
    pub a: u64,
    pub b: T,
    pub g: T,
    pub phi: T,
    pub theta: T,
    /// `phi * cd` when scaled, `phi` otherwise.
    pub omega: T,
}

impl<T: Scalar> Encoding<T> {
    /// Returns `None` when `a` is unencodable on `g`.
    pub fn new(a: u64, b: T, g: T, cd: Option<T>) -> Result<Option<Self>> {
        Ok(match encode(a, b, g)? {
            Encoded::Angles { phi, theta } => {
                Some(Self { a, b, g, phi, theta, omega: cd.map_or(phi, |c| phi * c) })
            }
            Encoded::Unencodable => None,
        })
    }
}

/// Raw phase of index `a` on curve `g`. NaN marks an unencodable index.
///
/// The integer terms are formed exactly and rounded once; the float operation
/// order is fixed so census totals are bit-stable under a given libm.
#[inline]
pub fn encode_phi<T: Scalar>(a: u64, g: T) -> T {
    let ai = a as i128;
    let e = ai * ai + ai;
    let af = T::from_int(ai);
    let two = T::lit(2.0);
    let radius = af + af / (two * g);
    let e2 = T::from_int(e * e);
    let m = T::from_int(2 * e - 1);
    let m2 = T::from_int((2 * e - 1) * (2 * e - 1));
    let disc = m2 - T::lit(4.0) * (e2 + T::lit(0.25) - radius * radius);
    let s = disc.abs().sqrt();
    let dz = ((m + s) / two - (m - s) / two).abs();
    let root = (T::one() - T::lit(4.0) * g * (m - s) / two).abs().sqrt();
    let dx = (af - (-T::one() + root / (two * g))).abs();
    let c = (dx * dx + dz * dz).sqrt();
    (c * (T::PI() - (dx / c).asin()).sin() / radius).asin()
}

/// Phases of state `(a, b)` on curve `g`.
pub fn encode<T: Scalar>(a: u64, b: T, g: T) -> Result<Encoded<T>> {
    check_index(a, g)?;
    if !(b.abs() <= T::one()) {
        return domain(format!("|b| must be <= 1, got {b}"));
    }
    let phi = encode_phi(a, g);
    Ok(if phi.is_nan() { Encoded::Unencodable } else { Encoded::Angles { phi, theta: b.asin() } })
}

pub(crate) fn check_index<T: Scalar>(a: u64, g: T) -> Result<()> {
    if a < 1 {
        return domain("a must be >= 1");
    }
    if !(g > T::zero()) || !g.is_finite() {
        return domain(format!("g must be finite and > 0, got {g}"));
    }
    Ok(())
}

pub fn decode_b<T: Scalar>(theta: T) -> Result<T> {
    if !(theta.abs() <= T::FRAC_PI_2()) {
        return domain(format!("|theta| must be <= pi/2, got {theta}"));
    }
    Ok(theta.sin())
}

/// Nearest index in `1..=a_max_hint` whose phase on `g` matches `phi`.
/// Ties go to the smaller index.
pub fn decode_a<T: Scalar>(phi: T, g: T, a_max_hint: u64) -> Result<u64> {
    if !phi.is_finite() {
        return domain("phi must be finite");
    }
    check_index(1, g)?;
    let mut best: Option<(u64, T)> = None;
    for a in 1..=a_max_hint {
        let p = encode_phi(a, g);
        if p.is_nan() {
            continue;
        }
        let err = (p - phi).abs();
        if best.is_none_or(|(_, e)| err < e) {
            best = Some((a, err));
        }
    }
    best.map(|(a, _)| a).ok_or(Error::Undecodable { phi: phi.to_f64_lossy(), g: g.to_f64_lossy() })
}

/// Worst-case amplitude error for index `a` read at abscissa `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBound<T> {
    pub delta_max: T,
    pub da_max: u64,
}

pub fn error_bound<T: Scalar>(a: u64, x: T) -> Result<ErrorBound<T>> {
    if a < 1 {
        return domain("a must be >= 1");
    }
    if !(x >= T::zero()) {
        return domain(format!("x must be >= 0, got {x}"));
    }
    Ok(ErrorBound { delta_max: x + T::lit(0.5), da_max: 2 * a })
}

/// Sign in the denominator of the amplitude error expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// Amplitude error `(h - 1) m / (1 ± h)` for gain `h` and data magnitude `m`.
pub fn delta_from_gain<T: Scalar>(h: T, magnitude: T, branch: Branch) -> Result<T> {
    let den = match branch {
        Branch::Plus => T::one() + h,
        Branch::Minus => T::one() - h,
    };
    if den == T::zero() {
        if h == T::one() {
            return Ok(T::zero());
        }
        return domain("gain makes the error denominator vanish");
    }
    Ok((h - T::one()) * magnitude / den)
}
