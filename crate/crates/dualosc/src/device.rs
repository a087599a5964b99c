// Copyright (c) The dualosc Contributors
// SPDX-License-Identifier: Apache-2.0

//! Oscillator parameters, tolerance/scaling arithmetic, capacity formulas and
//! flag-memory addressing.

use std::path::Path;

use serde::Deserialize;

use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;

/// Bits used to record the qubit count next to the flag memory.
pub const QUBIT_COUNT_FIELD_BITS: u32 = 5;

/// Stability, ceiling frequency and phase-to-frequency scale of one oscillator part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceSpec<T> {
    pub stability_ppm: T,
    pub omega_max: T,
    pub cd: T,
}

impl<T: Scalar> DeviceSpec<T> {
    pub fn new(stability_ppm: T, omega_max: T, cd: T) -> Result<Self> {
        if !(stability_ppm >= T::zero()) || !stability_ppm.is_finite() {
            return domain(format!("stability_ppm must be finite and >= 0, got {stability_ppm}"));
        }
        if !(omega_max > T::zero()) {
            return domain(format!("omega_max must be > 0, got {omega_max}"));
        }
        if !(cd > T::zero()) {
            return domain(format!("cd must be > 0, got {cd}"));
        }
        Ok(Self { stability_ppm, omega_max, cd })
    }

    /// 2.1 GHz part rated at 50 ppm.
    pub fn ax7maf1() -> Self {
        Self { stability_ppm: T::lit(50.0), omega_max: T::lit(2.1e9), cd: T::lit(AX7MAF1_CD) }
    }

    /// 12 GHz part rated at 3.2 ppm.
    pub fn axplt12() -> Self {
        Self { stability_ppm: T::lit(3.2), omega_max: T::lit(12e9), cd: T::lit(AXPLT12_CD) }
    }

    /// Looks up a built-in profile by (case-insensitive) name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "ax7maf1" => Some(Self::ax7maf1()),
            "axplt12" => Some(Self::axplt12()),
            _ => None,
        }
    }

    /// Parses `key = value` lines (`stability_ppm`, `omega_max_hz`, `cd`).
    pub fn from_config_str(text: &str) -> Result<Self> {
        let raw: RawProfile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        Self::new(T::lit(raw.stability_ppm), T::lit(raw.omega_max_hz), T::lit(raw.cd))
    }

    pub fn from_config_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_config_str(&text)
    }

    /// Tolerance band around `omega`.
    pub fn d_omega(&self, omega: T) -> Result<T> {
        if !(omega >= T::zero()) {
            return domain(format!("omega must be >= 0, got {omega}"));
        }
        Ok(self.tolerance(omega))
    }

    /// Unchecked tolerance used by the census hot loop.
    #[inline]
    pub(crate) fn tolerance(&self, omega: T) -> T {
        self.stability_ppm * (omega / T::lit(1e6))
    }
}

/// Names of the built-in device profiles.
pub const BUILTIN_PROFILES: [&str; 2] = ["ax7maf1", "axplt12"];

/// Scale of the 2.1 GHz part: its ceiling over the terminal unscaled phase.
pub const AX7MAF1_CD: f64 = 2309321037.0;
/// Scale of the 12 GHz part: its ceiling over the terminal phase of its own
/// unscaled census at dg = 0.01 (g = 149.45).
pub const AXPLT12_CD: f64 = 12e9 / AXPLT12_TERMINAL_PHI;
const AXPLT12_TERMINAL_PHI: f64 = 1.1588163606948556;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProfile {
    stability_ppm: f64,
    omega_max_hz: f64,
    cd: f64,
}

/// Scale that stretches the terminal phase `l_b` onto `omega_max`.
pub fn scaling_coefficient<T: Scalar>(l_b: T, omega_max: T) -> Result<T> {
    if !(l_b > T::zero()) {
        return domain(format!("l_b must be > 0, got {l_b}"));
    }
    Ok(omega_max / l_b)
}

/// Discrete parts a one-to-one hardware register would need for `q` qubits.
pub fn naive_component_count(q: u32) -> Result<u128> {
    if q > 125 {
        return Err(Error::Capacity(format!("3*2^{q} - 1 overflows u128")));
    }
    Ok(3 * (1u128 << q) - 1)
}

/// Probability precision (percent) at `q` qubits, 1% at twenty qubits.
pub fn precision_percent<T: Scalar>(q: u32) -> Result<T> {
    if q < 1 {
        return domain("precision needs at least one qubit");
    }
    Ok(T::lit(2f64.powi(q as i32 - 20)))
}

/// Probability precision (percent) between two observables sharing a curve.
pub fn per_curve_precision<T: Scalar>(states_per_curve: T) -> Result<T> {
    if !(states_per_curve > T::zero()) {
        return domain(format!("states_per_curve must be > 0, got {states_per_curve}"));
    }
    Ok(T::lit(100.0) / (T::lit(2.0) * states_per_curve))
}

/// Flag memory geometry for `qubits` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlagMemoryLayout {
    pub qubits: u32,
    pub word_width: u32,
}

/// Location of a pure state's flag pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlagAddress {
    pub bit: u64,
    pub word: u64,
    pub offset: u32,
}

impl FlagMemoryLayout {
    pub fn new(qubits: u32) -> Result<Self> {
        Self::with_word_width(qubits, 16)
    }

    pub fn with_word_width(qubits: u32, word_width: u32) -> Result<Self> {
        if !(1..=62).contains(&qubits) {
            return domain(format!("qubits must be in 1..=62, got {qubits}"));
        }
        if word_width < 2 || !word_width.is_power_of_two() {
            return domain(format!("word width must be a power of two >= 2, got {word_width}"));
        }
        Ok(Self { qubits, word_width })
    }

    pub fn flag_bits(&self) -> u64 {
        1u64 << (self.qubits + 1)
    }

    pub fn flag_bytes(&self) -> u64 {
        self.flag_bits() / 8
    }

    /// Flag bits plus the qubit-count field.
    pub fn total_bits(&self) -> u64 {
        self.flag_bits() + QUBIT_COUNT_FIELD_BITS as u64
    }

    pub fn flag_addresses(&self, state_bits: u64) -> Result<FlagAddress> {
        if state_bits >> self.qubits != 0 {
            return domain(format!("state {state_bits} out of range for {} qubits", self.qubits));
        }
        let bit = state_bits << 1;
        let shift = self.word_width.trailing_zeros() - 1;
        Ok(FlagAddress { bit, word: state_bits >> shift, offset: (bit % self.word_width as u64) as u32 })
    }
}
