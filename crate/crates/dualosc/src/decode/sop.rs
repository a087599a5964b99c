// Copyright (c) The dualosc Contributors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use rayon::prelude::*;

use super::{cancel_adjacent, perm_mask, OpNibble};

/// Product of positive W literals, bit `j` standing for `W_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term(pub u32);

impl Term {
    /// Literals of a word laid out four bits per op, most significant bit first.
    pub fn of_word(word: &[OpNibble]) -> Self {
        let mut m = 0u32;
        for (k, op) in word.iter().enumerate() {
            for b in 0..4 {
                if op.code() >> (3 - b) & 1 == 1 {
                    m |= 1 << (4 * k + b);
                }
            }
        }
        Term(m)
    }

    pub fn literals(self) -> impl Iterator<Item = u32> {
        (0..32).filter(move |j| self.0 >> j & 1 == 1)
    }

    /// True when every literal of `self` also appears in `other`.
    pub fn divides(self, other: Term) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn eval(self, input: u32) -> bool {
        self.divides(Term(input))
    }

    fn write_with(self, f: &mut impl fmt::Write, sep: &str, latex: bool) -> fmt::Result {
        for (i, j) in self.literals().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            if latex {
                write!(f, "W_{{{j}}}")?;
            } else {
                write!(f, "W_{j}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, "·", false)
    }
}

/// Per-output sums of products, terms in first-seen order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SopExpression {
    /// Output name prefix, `P` or `C`.
    pub label: char,
    pub outputs: Vec<Vec<Term>>,
}

impl SopExpression {
    fn new(label: char, n: usize) -> Self {
        Self { label, outputs: vec![Vec::new(); n] }
    }

    fn insert(&mut self, output: usize, t: Term) {
        let terms = &mut self.outputs[output];
        if !terms.contains(&t) {
            terms.push(t);
        }
    }

    pub fn term_count(&self) -> usize {
        self.outputs.iter().map(Vec::len).sum()
    }

    pub fn contains_term(&self, output: usize, t: Term) -> bool {
        self.outputs[output].contains(&t)
    }

    /// Evaluates output `k` on the W bits in `input`.
    pub fn eval(&self, k: usize, input: u32) -> bool {
        self.outputs[k].iter().any(|t| t.eval(input))
    }

    /// Indices of outputs with at least one term.
    pub fn nonempty_outputs(&self) -> Vec<usize> {
        (0..self.outputs.len()).filter(|&k| !self.outputs[k].is_empty()).collect()
    }

    /// `P_k = W_a·W_b + ...`; an empty output reads `0`.
    pub fn line(&self, k: usize) -> String {
        let mut s = format!("{}_{} = ", self.label, k);
        self.push_terms(&mut s, k, "·", false);
        s
    }

    /// Same expression with braced subscripts and `\cdot`.
    pub fn latex_line(&self, k: usize) -> String {
        let mut s = format!("{}_{} = ", self.label, k);
        self.push_terms(&mut s, k, " \\cdot ", true);
        s
    }

    fn push_terms(&self, s: &mut String, k: usize, sep: &str, latex: bool) {
        if self.outputs[k].is_empty() {
            s.push('0');
        }
        for (i, t) in self.outputs[k].iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            t.write_with(s, sep, latex).expect("string write");
        }
    }
}

impl fmt::Display for SopExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in self.nonempty_outputs() {
            writeln!(f, "{}", self.line(k))?;
        }
        Ok(())
    }
}

/// Distinct-op sequences of length 2..=5 in lexicographic permutation order.
fn permutations(len: usize) -> Vec<Vec<OpNibble>> {
    fn rec(len: usize, cur: &mut Vec<OpNibble>, used: &mut [bool; 5], out: &mut Vec<Vec<OpNibble>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in 0..5 {
            if !used[i] {
                used[i] = true;
                cur.push(OpNibble::OPS[i]);
                rec(len, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(len, &mut Vec::new(), &mut [false; 5], &mut out);
    out
}

/// All op words of length 2..=5 with repetition, odometer order.
pub fn all_words() -> Vec<Vec<OpNibble>> {
    let mut out = Vec::new();
    for len in 2..=5u32 {
        for mut n in 0..5usize.pow(len) {
            let mut w = vec![OpNibble::Empty; len as usize];
            for slot in (0..len as usize).rev() {
                w[slot] = OpNibble::OPS[n % 5];
                n /= 5;
            }
            out.push(w);
        }
    }
    out
}

/// Raw switch-select expressions over every distinct-op convolution.
pub fn generate_perm_sop() -> SopExpression {
    let mut sop = SopExpression::new('P', 25);
    for len in 2..=5 {
        for word in permutations(len) {
            let mask = perm_mask(&word).expect("distinct ops");
            let t = Term::of_word(&word);
            for p in mask.bits() {
                sop.insert(p, t);
            }
        }
    }
    sop
}

/// Output bit positions of the cancelled word, counted as in the five-character
/// nibble text (`0001 `): nibble `k`, bit `b` lands on `5k + b`.
pub fn cancel_output_bits(word: &[OpNibble]) -> Vec<usize> {
    let mut out = cancel_adjacent(word);
    out.resize(5, OpNibble::Empty);
    let mut bits = Vec::new();
    for (k, op) in out.iter().enumerate() {
        for b in 0..4 {
            if op.code() >> (3 - b) & 1 == 1 {
                bits.push(5 * k + b);
            }
        }
    }
    bits
}

/// Raw expressions for the outputs of adjacent cancellation.
pub fn generate_cancel_sop() -> SopExpression {
    let mut sop = SopExpression::new('C', 25);
    for word in all_words() {
        let t = Term::of_word(&word);
        for c in cancel_output_bits(&word) {
            sop.insert(c, t);
        }
    }
    sop
}

/// Result of subsumption passes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimized {
    pub sop: SopExpression,
    pub removed: usize,
    /// Terms removed in each pass, the last pass removing none.
    pub passes: Vec<usize>,
}

/// One pass on one output: drops every term that strictly contains another
/// term while itself contained in no other term.
fn pass(terms: &[Term]) -> Vec<Term> {
    let n = terms.len();
    let mut has_super = vec![false; n];
    let mut has_sub = vec![false; n];
    for (i, &t) in terms.iter().enumerate() {
        for (j, &o) in terms.iter().enumerate() {
            if i != j && t.divides(o) {
                has_super[i] = true;
                has_sub[j] = true;
            }
        }
    }
    terms.iter().enumerate().filter(|&(i, _)| has_super[i] || !has_sub[i]).map(|(_, &t)| t).collect()
}

/// Repeats subsumption passes over all outputs until a pass removes nothing.
pub fn minimize(sop: &SopExpression) -> Minimized {
    let per_output: Vec<(Vec<Term>, Vec<usize>)> = sop
        .outputs
        .par_iter()
        .map(|terms| {
            let mut cur = terms.clone();
            let mut removed = Vec::new();
            loop {
                let next = pass(&cur);
                let r = cur.len() - next.len();
                removed.push(r);
                cur = next;
                if r == 0 {
                    break;
                }
            }
            (cur, removed)
        })
        .collect();
    let rounds = per_output.iter().map(|(_, r)| r.len()).max().unwrap_or(1);
    let mut passes = vec![0; rounds];
    for (_, r) in &per_output {
        for (i, v) in r.iter().enumerate() {
            passes[i] += v;
        }
    }
    let outputs: Vec<Vec<Term>> = per_output.into_iter().map(|(t, _)| t).collect();
    let removed = passes.iter().sum();
    Minimized { sop: SopExpression { label: sop.label, outputs }, removed, passes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn t(lits: &[u32]) -> Term {
        Term(lits.iter().map(|j| 1 << j).sum())
    }

    #[test]
    fn word_literals() {
        use OpNibble::*;
        assert_eq!(Term::of_word(&[X]), t(&[3]));
        assert_eq!(Term::of_word(&[X, Y]), t(&[3, 6]));
        assert_eq!(Term::of_word(&[H, Z]), t(&[1, 3, 6, 7]));
    }

    #[test]
    fn perm_enumeration_size() {
        let n: usize = (2..=5).map(|l| permutations(l).len()).sum();
        assert_eq!(n, 20 + 60 + 120 + 120);
        assert_eq!(all_words().len(), 25 + 125 + 625 + 3125);
    }

    #[test]
    fn perm_sop_raw_shape() {
        let raw = generate_perm_sop();
        assert!(!raw.outputs[0].is_empty());
        assert!(raw.outputs[0].iter().all(|t| t.0 & (1 << 3) != 0));
        // Y first: the first nibble is 0010.
        assert!(raw.outputs[5].iter().all(|t| t.0 & 0xf == 1 << 2));
        // Independent count: each word contributes one term per set mask bit,
        // and words are distinct, so no term repeats within an output.
        let mut expect = 0;
        for len in 2..=5 {
            for w in permutations(len) {
                expect += perm_mask(&w).unwrap().count() as usize;
            }
        }
        assert_eq!(raw.term_count(), expect);
    }

    #[test]
    fn perm_minimization_matches_reference_run() {
        let m = minimize(&generate_perm_sop());
        assert_eq!(m.passes, vec![492, 276, 184, 78, 14, 0]);
        assert_eq!(m.removed, 1044);
        assert_eq!(m.sop.outputs[0], vec![t(&[3, 6]), t(&[3, 5])]);
        assert_eq!(m.sop.outputs[5], vec![t(&[2, 7]), t(&[2, 5])]);
        assert_eq!(m.sop.outputs[1].len(), 11);
        assert_eq!(m.sop.line(0), "P_0 = W_3·W_6 + W_3·W_5");
        assert_eq!(m.sop.latex_line(0), "P_0 = W_{3} \\cdot W_{6} + W_{3} \\cdot W_{5}");
    }

    #[test]
    fn cancel_minimization_matches_reference_run() {
        let raw = generate_cancel_sop();
        let m = minimize(&raw);
        assert_eq!(m.passes, vec![842, 2654, 4430, 4864, 3392, 1275, 310, 58, 0]);
        let nonempty: HashSet<usize> = m.sop.nonempty_outputs().into_iter().collect();
        let want: HashSet<usize> = [1, 2, 3, 6, 7, 8, 11, 12, 13, 16, 17, 18, 21, 22, 23].into();
        assert_eq!(nonempty, want);
        let c1 = &m.sop.outputs[1];
        assert_eq!(c1.len(), 16);
        assert_eq!(
            &c1[..6],
            &[t(&[1, 7]), t(&[1, 6]), t(&[1, 3, 5]), t(&[3, 7, 9]), t(&[2, 6, 9]), t(&[1, 5, 9])]
        );
        assert!(m.sop.line(1).starts_with("C_1 = W_1·W_7 + W_1·W_6"));
    }

    #[test]
    fn minimize_is_idempotent_and_equivalent() {
        for raw in [generate_perm_sop(), generate_cancel_sop()] {
            let once = minimize(&raw);
            let twice = minimize(&once.sop);
            assert_eq!(twice.sop, once.sop);
            assert_eq!(twice.removed, 0);
            for k in 0..raw.outputs.len() {
                for term in &raw.outputs[k] {
                    assert_eq!(raw.eval(k, term.0), once.sop.eval(k, term.0));
                }
            }
        }
    }

    #[test]
    fn raw_cancel_terms_follow_cancellation() {
        let raw = generate_cancel_sop();
        for w in all_words() {
            let bits = cancel_output_bits(&w);
            let tw = Term::of_word(&w);
            for c in 0..25 {
                assert_eq!(raw.contains_term(c, tw), bits.contains(&c), "{w:?} C_{c}");
            }
        }
    }
}
