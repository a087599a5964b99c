// Copyright (c) The dualosc Contributors
// SPDX-License-Identifier: Apache-2.0

//! 900-bit instruction word.
//!
//! Layout, bit 0 first (most significant bit of the first hex digit):
//!
//! - bits `0..400`: op nibbles, slot `i = 5 * group + slot_in_group` at `4 * i`
//! - bits `400..900`: 5-bit qubit targets, slot `i` at `400 + 5 * i`
//!
//! Every used slot of a group repeats the group's target. Unused slots are zero.

use bitvec::prelude::*;

use super::OpNibble;
use crate::error::{domain, Result};

pub const WORD_BITS: usize = 900;
pub const GROUPS: usize = 20;
pub const SLOTS: usize = 5;
const OP_BITS: usize = 4;
const TARGET_BITS: usize = 5;
const TARGET_BASE: usize = GROUPS * SLOTS * OP_BITS;

/// Up to five operations on one qubit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub target: u8,
    pub ops: Vec<OpNibble>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct InstructionWord {
    bits: BitVec<u8, Msb0>,
}

impl std::fmt::Debug for InstructionWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "InstructionWord({})", self.to_hex())
    }
}

impl Default for InstructionWord {
    fn default() -> Self {
        Self { bits: bitvec![u8, Msb0; 0; WORD_BITS] }
    }
}

impl InstructionWord {
    pub fn bit(&self, i: usize) -> bool {
        self.bits[i]
    }

    fn field(&self, at: usize, width: usize) -> u8 {
        self.bits[at..at + width].load_be::<u8>()
    }

    fn set_field(&mut self, at: usize, width: usize, v: u8) {
        self.bits[at..at + width].store_be(v);
    }

    /// 225 hex digits.
    pub fn to_hex(&self) -> String {
        self.bits.chunks(4).map(|c| char::from_digit(c.load_be::<u32>(), 16).expect("nibble")).collect()
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() != WORD_BITS / 4 {
            return domain(format!("instruction word needs {} hex digits, got {}", WORD_BITS / 4, s.len()));
        }
        let mut w = Self::default();
        for (i, ch) in s.chars().enumerate() {
            let Some(d) = ch.to_digit(16) else {
                return domain(format!("bad hex digit {ch:?}"));
            };
            w.bits[4 * i..4 * i + 4].store_be(d as u8);
        }
        Ok(w)
    }
}

/// Splits maximal same-target runs into chunks of at most five.
pub fn group_by_qubit(stream: &[(OpNibble, u8)]) -> Vec<Group> {
    let mut out: Vec<Group> = Vec::new();
    for &(op, target) in stream {
        match out.last_mut() {
            Some(g) if g.target == target && g.ops.len() < SLOTS => g.ops.push(op),
            _ => out.push(Group { target, ops: vec![op] }),
        }
    }
    out
}

pub fn build_word(groups: &[Group]) -> Result<InstructionWord> {
    if groups.len() > GROUPS {
        return domain(format!("at most {GROUPS} groups fit, got {}", groups.len()));
    }
    let mut w = InstructionWord::default();
    for (gi, g) in groups.iter().enumerate() {
        if g.ops.is_empty() || g.ops.len() > SLOTS {
            return domain(format!("group {gi} needs 1..=5 ops, got {}", g.ops.len()));
        }
        if g.target >= 32 {
            return domain(format!("target {} does not fit 5 bits", g.target));
        }
        for (si, &op) in g.ops.iter().enumerate() {
            if op == OpNibble::Empty {
                return domain(format!("group {gi} slot {si} is empty"));
            }
            let slot = gi * SLOTS + si;
            w.set_field(slot * OP_BITS, OP_BITS, op.code());
            w.set_field(TARGET_BASE + slot * TARGET_BITS, TARGET_BITS, g.target);
        }
    }
    Ok(w)
}

pub fn parse_word(word: &InstructionWord) -> Result<Vec<Group>> {
    let mut groups = Vec::new();
    let mut ended = false;
    for gi in 0..GROUPS {
        let mut ops = Vec::new();
        let mut target = None;
        let mut tail = false;
        for si in 0..SLOTS {
            let slot = gi * SLOTS + si;
            let op = OpNibble::from_code(word.field(slot * OP_BITS, OP_BITS))?;
            let t = word.field(TARGET_BASE + slot * TARGET_BITS, TARGET_BITS);
            if op == OpNibble::Empty {
                if t != 0 {
                    return domain(format!("empty slot {slot} carries target {t}"));
                }
                tail = true;
                continue;
            }
            if tail || ended {
                return domain(format!("op after an empty slot at slot {slot}"));
            }
            match target {
                None => target = Some(t),
                Some(prev) if prev != t => {
                    return domain(format!("group {gi} mixes targets {prev} and {t}"));
                }
                _ => {}
            }
            ops.push(op);
        }
        match target {
            Some(target) => groups.push(Group { target, ops }),
            None => ended = true,
        }
    }
    Ok(groups)
}
