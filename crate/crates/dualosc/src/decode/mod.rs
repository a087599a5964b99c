// Copyright (c) The dualosc Contributors
// SPDX-License-Identifier: Apache-2.0

//! Digital decode stage: operation codes, adjacent cancellation, convolution
//! masks, sum-of-products synthesis and the 900-bit instruction word.

mod sop;
mod word;

pub use sop::{
    all_words, cancel_output_bits, generate_cancel_sop, generate_perm_sop, minimize, Minimized,
    SopExpression, Term,
};
pub use word::{build_word, group_by_qubit, parse_word, Group, InstructionWord, WORD_BITS};

use crate::error::{Error, Result};

/// Four-bit operation code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum OpNibble {
    Empty = 0,
    X = 1,
    Y = 2,
    Z = 3,
    M = 4,
    H = 5,
}

impl OpNibble {
    /// The five non-empty operations in code order.
    pub const OPS: [OpNibble; 5] = [OpNibble::X, OpNibble::Y, OpNibble::Z, OpNibble::M, OpNibble::H];

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Result<Self> {
        Ok(match code {
            0 => OpNibble::Empty,
            1 => OpNibble::X,
            2 => OpNibble::Y,
            3 => OpNibble::Z,
            4 => OpNibble::M,
            5 => OpNibble::H,
            _ => return Err(Error::Domain(format!("invalid op code {code:04b}"))),
        })
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        Some(match s.to_ascii_uppercase().as_str() {
            "X" => OpNibble::X,
            "Y" => OpNibble::Y,
            "Z" => OpNibble::Z,
            "M" => OpNibble::M,
            "H" => OpNibble::H,
            "-" | "0" => OpNibble::Empty,
            _ => return None,
        })
    }

    pub fn symbol(self) -> &'static str {
        match self {
            OpNibble::Empty => "-",
            OpNibble::X => "X",
            OpNibble::Y => "Y",
            OpNibble::Z => "Z",
            OpNibble::M => "M",
            OpNibble::H => "H",
        }
    }
}

/// Removes the leftmost adjacent equal non-empty pair, shifts left, pads with
/// empties, and repeats until no such pair remains.
pub fn cancel_adjacent(word: &[OpNibble]) -> Vec<OpNibble> {
    let mut w = word.to_vec();
    let mut n = 0;
    while n + 1 < w.len() {
        if w[n] != OpNibble::Empty && w[n] == w[n + 1] {
            w.drain(n..n + 2);
            w.extend([OpNibble::Empty; 2]);
            n = 0;
        } else {
            n += 1;
        }
    }
    w
}

/// 25 switch-select bits of one convolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PermMask(pub u32);

impl PermMask {
    pub fn bits(self) -> Vec<usize> {
        (0..25).filter(|i| self.0 >> i & 1 == 1).collect()
    }

    pub fn count(self) -> u32 {
        self.0.count_ones()
    }
}

/// Switch index for `op`, given the operation before it (`Empty` when first).
const PERM_BIT: [[u8; 6]; 6] = {
    const N: u8 = u8::MAX;
    [
        [N, N, N, N, N, N],
        // X after: first, -, Y, Z, M, H
        [0, N, 1, 2, 3, 4],
        [5, 6, N, 7, 8, 9],
        [10, 11, 12, N, 13, 14],
        [15, 16, 17, 18, N, 19],
        [20, 21, 22, 23, 24, N],
    ]
};

pub fn perm_bit_index(op: OpNibble, previous: OpNibble) -> Option<u8> {
    let v = PERM_BIT[op as usize][previous as usize];
    (v != u8::MAX).then_some(v)
}

/// Switch mask of a convolution of distinct operations.
pub fn perm_mask(seq: &[OpNibble]) -> Result<PermMask> {
    if seq.is_empty() || seq.len() > 5 {
        return Err(Error::Domain(format!("convolution length must be 1..=5, got {}", seq.len())));
    }
    let mut seen = 0u8;
    let mut mask = 0u32;
    let mut prev = OpNibble::Empty;
    for &op in seq {
        if op == OpNibble::Empty {
            return Err(Error::Domain("empty nibble inside a convolution".into()));
        }
        if seen >> op as u8 & 1 == 1 {
            return Err(Error::ModuleReuse(op));
        }
        seen |= 1 << op as u8;
        mask |= 1 << perm_bit_index(op, prev).expect("distinct ops always map");
        prev = op;
    }
    Ok(PermMask(mask))
}
