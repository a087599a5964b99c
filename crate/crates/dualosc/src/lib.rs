// Copyright (c) The dualosc Contributors
// SPDX-License-Identifier: Apache-2.0

//! Software emulator for a dual-oscillator representation of multi-qubit states.
//!
//! Real-valued code is generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below fix it to `f64`, which is what the census figures assume.

pub mod census;
pub mod codec;
pub mod decode;
pub mod device;
pub mod error;
pub mod flags;
pub mod gates;
pub mod scalar;
pub mod sim;
pub mod simplex;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type DeviceSpec64 = device::DeviceSpec<f64>;
pub type Encoding64 = codec::Encoding<f64>;
pub type CensusReport64 = census::CensusReport<f64>;
pub type CurveLayout64 = simplex::CurveLayout<f64>;
pub type Ensemble64 = sim::Ensemble<f64>;
