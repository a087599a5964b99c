// Copyright (c) The dualosc Contributors
// SPDX-License-Identifier: Apache-2.0

//! Imaginary/negative flag pairs kept per pure state.

use crate::device::QUBIT_COUNT_FIELD_BITS;
use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FlagPair {
    pub imaginary: bool,
    pub negative: bool,
}

impl FlagPair {
    pub const ALL: [FlagPair; 4] = [
        FlagPair::new(false, false),
        FlagPair::new(false, true),
        FlagPair::new(true, false),
        FlagPair::new(true, true),
    ];

    pub const fn new(imaginary: bool, negative: bool) -> Self {
        Self { imaginary, negative }
    }

    /// Pair as two bits, imaginary high.
    pub fn bits(self) -> u8 {
        (self.imaginary as u8) << 1 | self.negative as u8
    }

    pub fn from_bits(b: u8) -> Self {
        Self::new(b & 2 != 0, b & 1 != 0)
    }

    /// Power of `i` this pair stands for: 1, i, -1, -i.
    fn quarter_turns(self) -> u8 {
        match (self.imaginary, self.negative) {
            (false, false) => 0,
            (true, false) => 1,
            (false, true) => 2,
            (true, true) => 3,
        }
    }

    fn from_quarter_turns(k: u64) -> Self {
        match k % 4 {
            0 => Self::new(false, false),
            1 => Self::new(true, false),
            2 => Self::new(false, true),
            _ => Self::new(true, true),
        }
    }
}

/// One multiplication by `i`.
pub fn mul_i(p: FlagPair) -> FlagPair {
    match (p.imaginary, p.negative) {
        (false, false) => FlagPair::new(true, false),
        (false, true) => FlagPair::new(true, true),
        (true, false) => FlagPair::new(false, true),
        (true, true) => FlagPair::new(false, false),
    }
}

pub fn negate(p: FlagPair) -> FlagPair {
    FlagPair::new(p.imaginary, !p.negative)
}

/// Net effect of `n_i` multiplications by `i` and `n_neg` negations.
pub fn summarize(n_i: u64, n_neg: u64, start: FlagPair) -> FlagPair {
    let turns = start.quarter_turns() as u64 + n_i % 4 + 2 * (n_neg % 2);
    FlagPair::from_quarter_turns(turns)
}

/// Whether a run of `n_s` identical self-inverse gates leaves anything behind.
pub fn successive_gate_count(n_s: u64) -> u64 {
    n_s % 2
}

/// Flags of every pure state of a register, plus the stored qubit count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagStore {
    qubits: u32,
    pairs: Vec<FlagPair>,
}

/// Largest register whose flag word fits the `u64` range index.
pub const MAX_RANGE_QUBITS: u32 = 5;
const MAX_QUBITS: u32 = (1 << QUBIT_COUNT_FIELD_BITS) - 1;

impl FlagStore {
    pub fn new(qubits: u32) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&qubits) || qubits > 24 {
            return domain(format!("qubits must be in 1..=24, got {qubits}"));
        }
        Ok(Self { qubits, pairs: vec![FlagPair::default(); 1 << qubits] })
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    pub fn pairs(&self) -> &[FlagPair] {
        &self.pairs
    }

    pub fn get(&self, state: usize) -> FlagPair {
        self.pairs[state]
    }

    pub fn set(&mut self, state: usize, p: FlagPair) {
        self.pairs[state] = p;
    }

    /// Flag bits read as one number: states in ascending order from the most
    /// significant end, each contributing its imaginary then negative bit.
    pub fn phase_range(&self) -> Result<u64> {
        if self.qubits > MAX_RANGE_QUBITS {
            return domain(format!("range index needs at most {MAX_RANGE_QUBITS} qubits"));
        }
        Ok(self.pairs.iter().fold(0u64, |acc, p| acc << 2 | p.bits() as u64))
    }

    pub fn from_phase_range(qubits: u32, range: u64) -> Result<Self> {
        let mut s = Self::new(qubits)?;
        if qubits > MAX_RANGE_QUBITS {
            return domain(format!("range index needs at most {MAX_RANGE_QUBITS} qubits"));
        }
        let n = s.pairs.len();
        if n < 32 && range >> (2 * n) != 0 {
            return domain(format!("range {range} exceeds {} flag bits", 2 * n));
        }
        for (k, p) in s.pairs.iter_mut().enumerate() {
            *p = FlagPair::from_bits((range >> (2 * (n - 1 - k)) & 3) as u8);
        }
        Ok(s)
    }

    /// Bit sequence: for each state in address order its imaginary then
    /// negative bit, then the qubit count in five bits (high first), zero
    /// padded to whole hex digits.
    pub fn to_hex(&self) -> String {
        let mut bits: Vec<bool> = Vec::with_capacity(self.pairs.len() * 2 + 8);
        for p in &self.pairs {
            bits.push(p.imaginary);
            bits.push(p.negative);
        }
        for i in (0..QUBIT_COUNT_FIELD_BITS).rev() {
            bits.push(self.qubits >> i & 1 == 1);
        }
        while bits.len() % 4 != 0 {
            bits.push(false);
        }
        bits.chunks(4)
            .map(|c| {
                let v = c.iter().fold(0u32, |acc, &b| acc << 1 | b as u32);
                char::from_digit(v, 16).expect("nibble")
            })
            .collect()
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let s = s.trim();
        let qubits = (1..=24u32)
            .find(|&q| hex_len(q) == s.len())
            .ok_or_else(|| crate::Error::Domain(format!("no register size has {} hex digits", s.len())))?;
        let mut bits = Vec::with_capacity(s.len() * 4);
        for ch in s.chars() {
            let Some(d) = ch.to_digit(16) else {
                return domain(format!("bad hex digit {ch:?}"));
            };
            for i in (0..4).rev() {
                bits.push(d >> i & 1 == 1);
            }
        }
        let n = 1usize << qubits;
        let stored = bits[2 * n..2 * n + QUBIT_COUNT_FIELD_BITS as usize]
            .iter()
            .fold(0u32, |acc, &b| acc << 1 | b as u32);
        if stored != qubits {
            return domain(format!("qubit field says {stored}, length implies {qubits}"));
        }
        let mut st = Self::new(qubits)?;
        for k in 0..n {
            st.pairs[k] = FlagPair::new(bits[2 * k], bits[2 * k + 1]);
        }
        Ok(st)
    }
}

fn hex_len(q: u32) -> usize {
    ((1usize << (q + 1)) + QUBIT_COUNT_FIELD_BITS as usize).div_ceil(4)
}
