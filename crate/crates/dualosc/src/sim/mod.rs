// Copyright (c) The dualosc Contributors
// SPDX-License-Identifier: Apache-2.0

//! Sparse state-vector simulator: an ensemble of basis states with complex
//! amplitudes, chainable gates, projective measurement and reduced density
//! matrices.
//!
//! Qubit `k` is character `k` of a state's bit string and bit `k` of its key.

pub mod circuit;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::device::FlagMemoryLayout;
use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;

pub use circuit::{Circuit, Gate, Instruction, RunResult, TELEPORT};

/// Amplitudes smaller than this are dropped after each gate.
pub const PRUNE: f64 = 1e-12;
/// Largest register the ensemble accepts.
pub const MAX_QUBITS: usize = 24;

/// Magnitude with an imaginary and a negative flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficient<T> {
    pub magnitude: T,
    pub imaginary: bool,
    pub negative: bool,
}

impl<T: Scalar> Coefficient<T> {
    pub fn new(magnitude: T, imaginary: bool, negative: bool) -> Result<Self> {
        if !(magnitude >= T::zero()) {
            return domain(format!("magnitude must be >= 0, got {magnitude}"));
        }
        Ok(Self { magnitude, imaginary, negative })
    }

    pub fn to_complex(self) -> Complex<T> {
        let m = if self.negative { -self.magnitude } else { self.magnitude };
        if self.imaginary {
            Complex::new(T::zero(), m)
        } else {
            Complex::new(m, T::zero())
        }
    }
}

/// One basis state and its amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T> {
    pub amplitude: Complex<T>,
    pub val: String,
}

impl<T: Scalar> PureState<T> {
    pub fn new(coeff: Coefficient<T>, val: impl Into<String>) -> Self {
        Self { amplitude: coeff.to_complex(), val: val.into() }
    }

    pub fn with_amplitude(amplitude: Complex<T>, val: impl Into<String>) -> Self {
        Self { amplitude, val: val.into() }
    }
}

fn parse_bits(val: &str, qubits: usize) -> Result<u64> {
    if val.len() != qubits {
        return domain(format!("state {val:?} has {} bits, register has {qubits}", val.len()));
    }
    val.chars().enumerate().try_fold(0u64, |acc, (k, c)| match c {
        '0' => Ok(acc),
        '1' => Ok(acc | 1 << k),
        _ => domain(format!("bad bit {c:?} in {val:?}")),
    })
}

fn format_bits(key: u64, qubits: usize) -> String {
    (0..qubits).map(|k| if key >> k & 1 == 1 { '1' } else { '0' }).collect()
}

pub type Matrix2<T> = [[Complex<T>; 2]; 2];

/// Peak requirements of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResourceReport {
    pub qubits: usize,
    pub peak_states: usize,
    pub gate_counts: BTreeMap<String, u64>,
    /// Flag memory the hardware would need, `2^(Q+1)` bits.
    pub flag_bits: u64,
}

impl fmt::Display for ResourceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits: {}", self.qubits)?;
        writeln!(f, "max states: {}", self.peak_states)?;
        writeln!(f, "flag memory: {} bits", self.flag_bits)?;
        for (g, n) in &self.gate_counts {
            writeln!(f, "{g}: {n}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Ensemble<T> {
    amps: BTreeMap<u64, Complex<T>>,
    qubits: usize,
    bits: BTreeMap<String, u8>,
    rng: ChaCha8Rng,
    peak: usize,
    counts: BTreeMap<String, u64>,
}

impl<T: Scalar> Ensemble<T> {
    /// Duplicate bit strings are summed. The result must be normalised.
    pub fn new(states: Vec<PureState<T>>, num_qubits: usize) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&num_qubits) {
            return domain(format!("qubits must be in 1..={MAX_QUBITS}, got {num_qubits}"));
        }
        let mut amps = BTreeMap::new();
        for s in states {
            let k = parse_bits(&s.val, num_qubits)?;
            *amps.entry(k).or_insert_with(Complex::default) += s.amplitude;
        }
        let mut e = Self {
            amps,
            qubits: num_qubits,
            bits: BTreeMap::new(),
            rng: ChaCha8Rng::seed_from_u64(0),
            peak: 0,
            counts: BTreeMap::new(),
        };
        e.prune();
        if (e.norm_sqr() - T::one()).abs() > T::lit(1e-10) {
            return domain(format!("amplitudes square-sum to {}", e.norm_sqr()));
        }
        Ok(e)
    }

    /// `|0...0⟩`.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        let one = Coefficient::new(T::one(), false, false)?;
        Self::new(vec![PureState::new(one, "0".repeat(num_qubits))], num_qubits)
    }

    /// Reseeds the measurement generator.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.set_seed(seed);
        self
    }

    pub fn set_seed(&mut self, seed: u64) {
        self.rng = ChaCha8Rng::seed_from_u64(seed);
    }

    pub fn num_qubits(&self) -> usize {
        self.qubits
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amplitude(&self, val: &str) -> Result<Complex<T>> {
        Ok(self.amps.get(&parse_bits(val, self.qubits)?).copied().unwrap_or_default())
    }

    pub fn states(&self) -> Vec<PureState<T>> {
        self.amps.iter().map(|(&k, &a)| PureState::with_amplitude(a, format_bits(k, self.qubits))).collect()
    }

    pub fn classical_bits(&self) -> &BTreeMap<String, u8> {
        &self.bits
    }

    pub fn bit(&self, name: &str) -> Option<u8> {
        self.bits.get(name).copied()
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.values().fold(T::zero(), |s, a| s + a.norm_sqr())
    }

    fn prune(&mut self) {
        let eps = T::lit(PRUNE);
        self.amps.retain(|_, a| a.norm() >= eps);
        self.peak = self.peak.max(self.amps.len());
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.qubits {
            return domain(format!("qubit {q} out of range for {} qubits", self.qubits));
        }
        Ok(())
    }

    fn count(&mut self, gate: &str) {
        *self.counts.entry(gate.to_string()).or_default() += 1;
    }

    /// Applies `m` to qubit `q`.
    pub fn apply_single(&mut self, q: usize, m: Matrix2<T>) -> Result<&mut Self> {
        self.check_qubit(q)?;
        let bit = 1u64 << q;
        let mut out: BTreeMap<u64, Complex<T>> = BTreeMap::new();
        for (&k, &a) in &self.amps {
            let b = (k & bit != 0) as usize;
            let base = k & !bit;
            for (row, set) in [(0usize, base), (1, base | bit)] {
                let c = m[row][b];
                if c != Complex::default() {
                    *out.entry(set).or_default() += c * a;
                }
            }
        }
        self.amps = out;
        self.prune();
        Ok(self)
    }

    pub fn x(&mut self, q: usize) -> Result<&mut Self> {
        let (o, z) = (Complex::new(T::one(), T::zero()), Complex::default());
        self.count("x");
        self.apply_single(q, [[z, o], [o, z]])
    }

    pub fn y(&mut self, q: usize) -> Result<&mut Self> {
        let z = Complex::default();
        let i = Complex::new(T::zero(), T::one());
        self.count("y");
        self.apply_single(q, [[z, -i], [i, z]])
    }

    pub fn z(&mut self, q: usize) -> Result<&mut Self> {
        let (o, z) = (Complex::new(T::one(), T::zero()), Complex::default());
        self.count("z");
        self.apply_single(q, [[o, z], [z, -o]])
    }

    pub fn h(&mut self, q: usize) -> Result<&mut Self> {
        let r = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
        self.count("h");
        self.apply_single(q, [[r, r], [r, -r]])
    }

    /// Flips `target` wherever `source` is 1.
    pub fn cx(&mut self, source: usize, target: usize) -> Result<&mut Self> {
        self.check_qubit(source)?;
        self.check_qubit(target)?;
        if source == target {
            return domain("cx source and target must differ");
        }
        let (s, t) = (1u64 << source, 1u64 << target);
        self.amps = std::mem::take(&mut self.amps)
            .into_iter()
            .map(|(k, a)| (if k & s != 0 { k ^ t } else { k }, a))
            .collect();
        self.count("cx");
        self.prune();
        Ok(self)
    }

    /// Probability of reading 0 on `q`.
    pub fn p_zero(&self, q: usize) -> Result<T> {
        self.check_qubit(q)?;
        let bit = 1u64 << q;
        Ok(self.amps.iter().filter(|(k, _)| *k & bit == 0).fold(T::zero(), |s, (_, a)| s + a.norm_sqr()))
    }

    /// Projective measurement of `q`: 1 when a uniform draw exceeds `P(0)`,
    /// then the other branch is removed and the rest renormalised.
    pub fn m(&mut self, q: usize) -> Result<u8> {
        let p0 = self.p_zero(q)?;
        let u = T::lit(self.rng.gen::<f64>());
        let bit = 1u64 << q;
        let mut result = (u > p0) as u8;
        let has = |r: u8, amps: &BTreeMap<u64, Complex<T>>| amps.keys().any(|k| (k & bit != 0) == (r == 1));
        if !has(result, &self.amps) {
            result ^= 1;
        }
        self.amps.retain(|k, _| (k & bit != 0) == (result == 1));
        let scale = self.norm_sqr().sqrt();
        for a in self.amps.values_mut() {
            *a /= scale;
        }
        self.count("m");
        Ok(result)
    }

    /// Measures `q` and stores the result under `name`.
    pub fn measure_into(&mut self, q: usize, name: &str) -> Result<u8> {
        let r = self.m(q)?;
        self.bits.insert(name.to_string(), r);
        Ok(r)
    }

    /// Reduced density matrix of `q`.
    pub fn get_density_matrix(&self, q: usize) -> Result<Matrix2<T>> {
        self.check_qubit(q)?;
        let bit = 1u64 << q;
        let zero = Complex::default();
        let mut rho = [[zero; 2]; 2];
        for (&k, &a) in &self.amps {
            if k & bit == 0 {
                rho[0][0] += a * a.conj();
                if let Some(&b) = self.amps.get(&(k | bit)) {
                    rho[0][1] += a * b.conj();
                    rho[1][0] += b * a.conj();
                }
            } else {
                rho[1][1] += a * a.conj();
            }
        }
        Ok(rho)
    }

    /// `(alpha, beta)` of an unentangled qubit, with `alpha` real and non-negative.
    pub fn get_components(&self, q: usize) -> Result<(Complex<T>, Complex<T>)> {
        let rho = self.get_density_matrix(q)?;
        let purity =
            rho[0][0].re * rho[0][0].re + rho[1][1].re * rho[1][1].re + T::lit(2.0) * rho[0][1].norm_sqr();
        if (purity - T::one()).abs() > T::lit(1e-10) {
            return Err(Error::Entangled(q));
        }
        let alpha = rho[0][0].re.max(T::zero()).sqrt();
        let beta = if alpha > T::lit(1e-7) {
            rho[1][0] / alpha
        } else {
            Complex::new(rho[1][1].re.max(T::zero()).sqrt(), T::zero())
        };
        Ok((Complex::new(alpha, T::zero()), beta))
    }

    pub fn report_max_requirements(&self) -> Result<ResourceReport> {
        Ok(ResourceReport {
            qubits: self.qubits,
            peak_states: self.peak,
            gate_counts: self.counts.clone(),
            flag_bits: FlagMemoryLayout::new(self.qubits as u32)?.flag_bits(),
        })
    }
}

impl<T: Scalar> fmt::Display for Ensemble<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.states() {
            writeln!(f, "{:+.6}{:+.6}i |{}⟩", s.amplitude.re, s.amplitude.im, s.val)?;
        }
        Ok(())
    }
}

/// Largest entry-wise distance between two 2x2 matrices.
pub fn max_abs_diff<T: Scalar>(a: &Matrix2<T>, b: &Matrix2<T>) -> T {
    let mut m = T::zero();
    for i in 0..2 {
        for j in 0..2 {
            m = m.max((a[i][j] - b[i][j]).norm());
        }
    }
    m
}
