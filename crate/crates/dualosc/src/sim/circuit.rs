// Copyright (c) The dualosc Contributors
// SPDX-License-Identifier: Apache-2.0

//! Line-based circuit files.
//!
//! ```text
//! qubits 3
//! h 0
//! cx 0 1
//! m 2 -> c1
//! if c1 z 1     # applied when c1 is 1
//! ```

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::Ensemble;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    H,
    X,
    Y,
    Z,
}

impl Gate {
    fn parse(s: &str) -> Option<Gate> {
        Some(match s {
            "h" => Gate::H,
            "x" => Gate::X,
            "y" => Gate::Y,
            "z" => Gate::Z,
            _ => return None,
        })
    }

    fn apply<T: Scalar>(self, e: &mut Ensemble<T>, q: usize) -> Result<()> {
        match self {
            Gate::H => e.h(q),
            Gate::X => e.x(q),
            Gate::Y => e.y(q),
            Gate::Z => e.z(q),
        }
        .map(|_| ())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gate::H => "h",
            Gate::X => "x",
            Gate::Y => "y",
            Gate::Z => "z",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instruction {
    Gate(Gate, usize),
    Cx(usize, usize),
    Measure(usize, String),
    If(String, Gate, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    pub qubits: usize,
    pub body: Vec<Instruction>,
}

/// Three-qubit teleportation of qubit 2 onto qubit 1.
pub const TELEPORT: &str = "\
qubits 3
h 0
cx 0 1
cx 2 0
h 2
m 2 -> c1
m 0 -> c2
if c2 x 1
if c1 z 1
";

#[derive(Debug, Clone)]
pub struct RunResult<T> {
    pub ensemble: Ensemble<T>,
    /// Classical bits in the order they were first written.
    pub bits: Vec<(String, u8)>,
}

impl<T> RunResult<T> {
    /// Bits concatenated in declaration order, e.g. `"01"`.
    pub fn outcome(&self) -> String {
        self.bits.iter().map(|(_, b)| if *b == 1 { '1' } else { '0' }).collect()
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

impl Circuit {
    pub fn parse(text: &str) -> Result<Circuit> {
        let mut qubits = None;
        let mut body = Vec::new();
        let mut names = HashSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let code = raw.split('#').next().unwrap_or("").trim();
            if code.is_empty() {
                continue;
            }
            let words: Vec<&str> = code.split_whitespace().collect();
            let Some(n) = qubits else {
                match words.as_slice() {
                    ["qubits", n] => {
                        let n: usize = n.parse().map_err(|_| err(line, format!("bad qubit count {n:?}")))?;
                        if !(1..=super::MAX_QUBITS).contains(&n) {
                            return Err(err(line, format!("qubit count must be 1..={}", super::MAX_QUBITS)));
                        }
                        qubits = Some(n);
                        continue;
                    }
                    _ => return Err(err(line, "first statement must be `qubits N`")),
                }
            };
            let qubit = |s: &str| -> Result<usize> {
                let q: usize = s.parse().map_err(|_| err(line, format!("bad qubit {s:?}")))?;
                if q >= n {
                    return Err(err(line, format!("qubit {q} out of range for {n} qubits")));
                }
                Ok(q)
            };
            let ins = match words.as_slice() {
                [g, q] if Gate::parse(g).is_some() => Instruction::Gate(Gate::parse(g).unwrap(), qubit(q)?),
                ["cx", s, t] => {
                    let (s, t) = (qubit(s)?, qubit(t)?);
                    if s == t {
                        return Err(err(line, "cx source and target must differ"));
                    }
                    Instruction::Cx(s, t)
                }
                ["m", q, "->", name] => {
                    names.insert(name.to_string());
                    Instruction::Measure(qubit(q)?, name.to_string())
                }
                ["if", name, g, q] => {
                    let gate = Gate::parse(g).ok_or_else(|| err(line, format!("unknown gate {g:?}")))?;
                    if !names.contains(*name) {
                        return Err(err(line, format!("bit {name:?} is used before it is measured")));
                    }
                    Instruction::If(name.to_string(), gate, qubit(q)?)
                }
                ["qubits", ..] => return Err(err(line, "`qubits` given twice")),
                _ => return Err(err(line, format!("cannot parse {code:?}"))),
            };
            body.push(ins);
        }
        let qubits = qubits.ok_or_else(|| err(0, "missing `qubits N`"))?;
        Ok(Circuit { qubits, body })
    }

    /// Runs from `|0...0⟩` with the given measurement seed.
    pub fn run<T: Scalar>(&self, seed: u64) -> Result<RunResult<T>> {
        self.run_on(Ensemble::zero(self.qubits)?.with_seed(seed))
    }

    /// Runs on a prepared register.
    pub fn run_on<T: Scalar>(&self, mut e: Ensemble<T>) -> Result<RunResult<T>> {
        if e.num_qubits() != self.qubits {
            return crate::error::domain(format!(
                "circuit needs {} qubits, register has {}",
                self.qubits,
                e.num_qubits()
            ));
        }
        let mut bits: Vec<(String, u8)> = Vec::new();
        for ins in &self.body {
            match ins {
                Instruction::Gate(g, q) => g.apply(&mut e, *q)?,
                Instruction::Cx(s, t) => {
                    e.cx(*s, *t)?;
                }
                Instruction::Measure(q, name) => {
                    let r = e.measure_into(*q, name)?;
                    match bits.iter_mut().find(|(n, _)| n == name) {
                        Some(slot) => slot.1 = r,
                        None => bits.push((name.clone(), r)),
                    }
                }
                Instruction::If(name, g, q) => {
                    if e.bit(name) == Some(1) {
                        g.apply(&mut e, *q)?;
                    }
                }
            }
        }
        Ok(RunResult { ensemble: e, bits })
    }
}
