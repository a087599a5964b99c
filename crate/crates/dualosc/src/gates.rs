// Copyright (c) The dualosc Contributors
// SPDX-License-Identifier: Apache-2.0

//! Two-qubit gate behaviour on (vertex group, surface group) pairs and on
//! phase-range indices, plus the coefficient relations used when measuring.

use std::fmt;
use std::fmt::Write as _;

use crate::error::{domain, Result};
use crate::scalar::Scalar;

/// Vertex group and surface group of a two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupState {
    /// `|q1 q2⟩` as a two-bit number, q1 high.
    pub vertex: u8,
    /// 1, 2 or 3.
    pub surface: u8,
}

impl GroupState {
    pub fn new(vertex: u8, surface: u8) -> Result<Self> {
        if vertex > 3 || !(1..=3).contains(&surface) {
            return domain(format!("no group state |{vertex:02b}⟩ surface {surface}"));
        }
        Ok(Self { vertex, surface })
    }

    /// All twelve states, vertex-major.
    pub fn all() -> impl Iterator<Item = GroupState> {
        (0..4u8).flat_map(|v| (1..=3u8).map(move |s| GroupState { vertex: v, surface: s }))
    }

    fn index(self) -> usize {
        self.vertex as usize * 3 + self.surface as usize - 1
    }
}

impl fmt::Display for GroupState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{:02b}⟩/{}", self.vertex, self.surface)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    Q1,
    Q2,
    Both,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Q1 => "x1",
            Target::Q2 => "x2",
            Target::Both => "x12",
        }
    }
}

type Table = [(u8, u8); 12];

// (final vertex, final surface), indexed by vertex * 3 + surface - 1.
const X1: Table = [
    (0b10, 1),
    (0b10, 3),
    (0b10, 2),
    (0b11, 2),
    (0b11, 1),
    (0b11, 3),
    (0b00, 1),
    (0b00, 3),
    (0b00, 2),
    (0b01, 2),
    (0b01, 1),
    (0b01, 3),
];
const X2: Table = [
    (0b01, 1),
    (0b01, 2),
    (0b01, 3),
    (0b00, 1),
    (0b00, 2),
    (0b00, 3),
    (0b11, 1),
    (0b11, 2),
    (0b11, 3),
    (0b10, 1),
    (0b10, 2),
    (0b10, 3),
];
const X12: Table = [
    (0b11, 3),
    (0b11, 2),
    (0b11, 1),
    (0b10, 3),
    (0b10, 2),
    (0b10, 1),
    (0b01, 3),
    (0b01, 2),
    (0b01, 1),
    (0b00, 3),
    (0b00, 2),
    (0b00, 1),
];
const CNOT: Table = [
    (0b00, 2),
    (0b00, 1),
    (0b00, 3),
    (0b01, 2),
    (0b01, 1),
    (0b01, 3),
    (0b11, 1),
    (0b11, 2),
    (0b11, 3),
    (0b10, 1),
    (0b10, 2),
    (0b10, 3),
];

fn lookup(t: &Table, s: GroupState) -> GroupState {
    let (vertex, surface) = t[s.index()];
    GroupState { vertex, surface }
}

pub fn apply_x(target: Target, s: GroupState) -> GroupState {
    match target {
        Target::Q1 => lookup(&X1, s),
        Target::Q2 => lookup(&X2, s),
        Target::Both => lookup(&X12, s),
    }
}

/// Control q1, target q2.
pub fn apply_cnot(s: GroupState) -> GroupState {
    lookup(&CNOT, s)
}

/// Cases where `x1` also reverses position inside the final surface group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReflectionCase {
    pub orig_surface: u8,
    pub final_surface: u8,
    pub orig_vertex: u8,
    pub final_vertex: u8,
}

pub fn x1_reflection_cases() -> [ReflectionCase; 6] {
    const fn r(os: u8, fs: u8, ov: u8, fv: u8) -> ReflectionCase {
        ReflectionCase { orig_surface: os, final_surface: fs, orig_vertex: ov, final_vertex: fv }
    }
    [
        r(1, 1, 0b00, 0b10),
        r(1, 1, 0b10, 0b00),
        r(1, 2, 0b11, 0b01),
        r(2, 3, 0b00, 0b10),
        r(3, 3, 0b01, 0b11),
        r(3, 3, 0b11, 0b01),
    ]
}

/// Phase units per turn for two qubits.
pub const UNITS: u32 = 256;

/// Size of one phase unit in radians.
pub fn unit_radians<T: Scalar>() -> T {
    T::TAU() / T::lit(UNITS as f64)
}

fn check_range(r: u32) -> Result<()> {
    if r >= UNITS {
        return domain(format!("range index {r} outside 0..256"));
    }
    Ok(())
}

fn shift(r: u32, by: i32) -> u32 {
    (r as i32 + by).rem_euclid(UNITS as i32) as u32
}

/// Swaps the flag pairs of `|01⟩` and `|10⟩` in a range index.
fn swap_qubits(r: u32) -> u32 {
    let s1 = r >> 4 & 3;
    let s2 = r >> 2 & 3;
    (r & 0b1100_0011) | s2 << 4 | s1 << 2
}

pub fn apply_z(target: Target, r: u32) -> Result<u32> {
    check_range(r)?;
    Ok(match target {
        Target::Both => match r {
            0..=6 => shift(r, 40),
            7..=31 => shift(r, 24),
            32..=39 => shift(r, -24),
            _ => shift(r, -40),
        },
        Target::Q1 => z_q1(r),
        Target::Q2 => swap_qubits(z_q1(swap_qubits(r))),
    })
}

fn z_q1(r: u32) -> u32 {
    match r {
        0..=7 => shift(r, 136),
        8..=127 => shift(r, 120),
        128..=135 => shift(r, -120),
        _ => shift(r, -136),
    }
}

/// Passive part setting the size of an `i` shift. Never used in computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Component {
    CapacitanceMicroFarad(f64),
    InductanceMicroHenry(f64),
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::CapacitanceMicroFarad(v) => write!(f, "{v} uF"),
            Component::InductanceMicroHenry(v) => write!(f, "{v} uH"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseShiftRule {
    /// Value of the four negative flags, `|00⟩` high.
    pub negative_flags: u8,
    pub shift: i32,
    pub component: Component,
}

const I_SHIFTS: [i32; 16] = [85, 83, 77, 75, 53, 51, 45, 43, -43, -45, -51, -53, -75, -77, -83, -85];
const CAPS: [f64; 4] = [3.79, 3.36, 2.21, 1.85];
const INDS: [f64; 4] = [24.1, 20.2, 13.3, 11.8];

/// The sixteen `i`-shift rules, keyed on the negative flags.
pub fn i_shift_table() -> [PhaseShiftRule; 16] {
    std::array::from_fn(|k| PhaseShiftRule {
        negative_flags: k as u8,
        shift: I_SHIFTS[k],
        component: if k % 8 < 4 {
            Component::CapacitanceMicroFarad(CAPS[k % 4])
        } else {
            Component::InductanceMicroHenry(INDS[k % 4])
        },
    })
}

/// Negative flags of a two-qubit range index (the even bits), `|00⟩` high.
pub fn negative_flags(r: u32) -> u8 {
    ((r >> 6 & 1) << 3 | (r >> 4 & 1) << 2 | (r >> 2 & 1) << 1 | (r & 1)) as u8
}

pub fn apply_i(r: u32) -> Result<u32> {
    check_range(r)?;
    Ok(shift(r, I_SHIFTS[negative_flags(r) as usize]))
}

/// `i X Z`: the `i` shift, then X on the groups, then Z on the shifted range.
pub fn apply_y(target: Target, r: u32, s: GroupState) -> Result<(u32, GroupState)> {
    let r = apply_i(r)?;
    let s = apply_x(target, s);
    Ok((apply_z(target, r)?, s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    X,
    Z,
}

/// Hadamard as X and Z side by side, scaled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HComposition<T> {
    pub parallel: [GateKind; 2],
    pub scale: T,
}

pub fn apply_h<T: Scalar>() -> HComposition<T> {
    HComposition { parallel: [GateKind::X, GateKind::Z], scale: T::FRAC_1_SQRT_2() }
}

/// How a chief coefficient is read from the index voltage.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum CoefficientMap<T> {
    #[default]
    Linear,
    /// Logistic curve with steepness `c`.
    Sigmoid(T),
}

pub fn sigmoid_map<T: Scalar>(v: T, c: T) -> T {
    T::one() / (T::one() + (-c * v).exp())
}

fn check_p<T: Scalar>(p: T) -> Result<()> {
    if !(p > T::zero() && p <= T::one()) {
        return domain(format!("p must be in (0, 1], got {p}"));
    }
    Ok(())
}

/// `(c_chief, c_other)` with `c_chief^2 + 3 c_other^2 = p`.
pub fn measure_chief<T: Scalar>(a: u64, a_half_range: u64, p: T, map: CoefficientMap<T>) -> Result<(T, T)> {
    check_p(p)?;
    if a_half_range == 0 || a > a_half_range {
        return domain(format!("a = {a} outside 0..={a_half_range}"));
    }
    let half = T::lit(0.5);
    let frac = match map {
        CoefficientMap::Linear => T::lit(a as f64) / T::lit(a_half_range as f64),
        CoefficientMap::Sigmoid(c) => T::lit(2.0) * sigmoid_map(T::lit(a as f64), c) - T::one(),
    };
    let c_chief = half + (p.sqrt() - half) * frac;
    let rest = p - c_chief * c_chief;
    if rest < -T::epsilon() * T::lit(8.0) {
        return domain(format!("chief coefficient {c_chief} exceeds sqrt(p)"));
    }
    Ok((c_chief, (rest.max(T::zero()) / T::lit(3.0)).sqrt()))
}

/// `(c0, c1)` on an edge, `c0^2 + c1^2 = p`.
pub fn measure_entangled<T: Scalar>(v_g: T, p: T) -> Result<(T, T)> {
    check_p(p)?;
    if !(v_g >= T::zero() && v_g <= T::lit(50.0)) {
        return domain(format!("v_g must be in [0, 50], got {v_g}"));
    }
    let r = T::FRAC_1_SQRT_2();
    let c0 = ((T::one() - r) * v_g / T::lit(50.0) + r) * p.sqrt();
    Ok((c0, (p - c0 * c0).max(T::zero()).sqrt()))
}

/// `(c0, c1, c_other)` with `c0^2 + c1^2 + 2 c_other^2 = p`.
///
/// `c_other` runs from `sqrt(p/2)/2` to `sqrt(p/2)` with `a_frac`; the residual
/// is split between `c0` and `c1` at angle `g_ratio * pi/2`.
pub fn measure_edge_aligned<T: Scalar>(a_frac: T, g_ratio: T, p: T) -> Result<(T, T, T)> {
    check_p(p)?;
    let unit = T::zero()..=T::one();
    if !unit.contains(&a_frac) || !unit.contains(&g_ratio) {
        return domain("a_frac and g_ratio must lie in [0, 1]");
    }
    let half = T::lit(0.5);
    let c_other = (p / T::lit(2.0)).sqrt() * (half * a_frac + half);
    let residual = (p - T::lit(2.0) * c_other * c_other).max(T::zero());
    let angle = g_ratio * T::FRAC_PI_2();
    let rad = residual.sqrt();
    Ok((rad * angle.cos(), rad * angle.sin(), c_other))
}

/// Permutation of the twelve group states.
pub type GroupMap = fn(GroupState) -> GroupState;

/// `operation,operand_vertex,operand_surface,final_vertex,final_surface`.
pub fn tables_csv() -> String {
    let mut s = String::from("operation,operand_vertex,operand_surface,final_vertex,final_surface\n");
    let ops: [(&str, GroupMap); 4] = [
        ("x1", |g| apply_x(Target::Q1, g)),
        ("x2", |g| apply_x(Target::Q2, g)),
        ("x12", |g| apply_x(Target::Both, g)),
        ("cnot12", apply_cnot),
    ];
    for (name, f) in ops {
        for g in GroupState::all() {
            let o = f(g);
            writeln!(s, "{name},{:02b},{},{:02b},{}", g.vertex, g.surface, o.vertex, o.surface).unwrap();
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn gs(v: u8, s: u8) -> GroupState {
        GroupState::new(v, s).unwrap()
    }

    #[test]
    fn table_examples() {
        assert_eq!(apply_x(Target::Q1, gs(0b00, 2)), gs(0b10, 3));
        assert_eq!(apply_x(Target::Q2, gs(0b10, 3)), gs(0b11, 3));
        assert_eq!(apply_x(Target::Both, gs(0b01, 1)), gs(0b10, 3));
        assert_eq!(apply_cnot(gs(0b00, 1)), gs(0b00, 2));
        assert_eq!(apply_cnot(gs(0b10, 2)), gs(0b11, 2));
    }

    #[test]
    fn involutive_permutations() {
        let fs: [fn(GroupState) -> GroupState; 4] = [
            |g| apply_x(Target::Q1, g),
            |g| apply_x(Target::Q2, g),
            |g| apply_x(Target::Both, g),
            apply_cnot,
        ];
        for f in fs {
            let image: HashSet<GroupState> = GroupState::all().map(f).collect();
            assert_eq!(image.len(), 12);
            for g in GroupState::all() {
                assert_eq!(f(f(g)), g);
            }
        }
    }

    #[test]
    fn x12_is_not_x1_after_x2() {
        let g = gs(0b00, 1);
        assert_eq!(apply_x(Target::Both, g).surface, 3);
        assert_eq!(apply_x(Target::Q1, apply_x(Target::Q2, g)), gs(0b11, 2));
    }

    #[test]
    fn reflections_follow_x1_table() {
        let cases = x1_reflection_cases();
        let set: HashSet<_> = cases.iter().collect();
        assert_eq!(set.len(), 6);
        assert!(cases.contains(&ReflectionCase {
            orig_surface: 1,
            final_surface: 1,
            orig_vertex: 0,
            final_vertex: 2
        }));
        assert!(cases.contains(&ReflectionCase {
            orig_surface: 3,
            final_surface: 3,
            orig_vertex: 3,
            final_vertex: 1
        }));
        for c in cases {
            let out = apply_x(Target::Q1, gs(c.orig_vertex, c.orig_surface));
            assert_eq!(out, gs(c.final_vertex, c.final_surface));
        }
    }

    #[test]
    fn z_examples() {
        assert_eq!(apply_z(Target::Both, 10).unwrap(), 34);
        assert_eq!(apply_z(Target::Both, 34).unwrap(), 10);
        assert_eq!(apply_z(Target::Both, 3).unwrap(), 43);
        assert_eq!(apply_z(Target::Both, 7).unwrap(), 31);
        assert_eq!(apply_z(Target::Both, 20).unwrap(), 44);
        assert_eq!(apply_z(Target::Both, 44).unwrap(), 4);
        assert_eq!(apply_z(Target::Q1, 0).unwrap(), 136);
        assert_eq!(apply_z(Target::Q1, 200).unwrap(), 64);
        assert!(apply_z(Target::Both, 256).is_err());
        assert!((unit_radians::<f64>() - std::f64::consts::TAU / 256.0).abs() < 1e-15);
    }

    #[test]
    fn z_q2_is_conjugated_q1() {
        for r in 0..256 {
            assert_eq!(swap_qubits(swap_qubits(r)), r);
            let direct = apply_z(Target::Q2, r).unwrap();
            assert_eq!(swap_qubits(direct), apply_z(Target::Q1, swap_qubits(r)).unwrap());
        }
    }

    #[test]
    fn i_table() {
        let t = i_shift_table();
        assert_eq!(t[0].shift, 85);
        assert_eq!(t[15].shift, -85);
        assert_eq!(t[8].shift, -43);
        assert_eq!(t[0].component, Component::CapacitanceMicroFarad(3.79));
        assert_eq!(t[4].component, Component::InductanceMicroHenry(24.1));
        assert_eq!(t[12].component, Component::InductanceMicroHenry(24.1));
        for k in 0..8 {
            assert_eq!(t[k].shift, -t[15 - k].shift);
        }
        assert_eq!(apply_i(0).unwrap(), 85);
        assert_eq!(apply_i(0b0101_0101).unwrap(), (0b0101_0101 - 85) as u32);
        assert_eq!(negative_flags(0b1010_1010), 0);
    }

    #[test]
    fn y_composes_i_x_z() {
        let (r, s) = apply_y(Target::Both, 0, gs(0, 1)).unwrap();
        assert_eq!(s, gs(0b11, 3));
        assert_eq!(r, apply_z(Target::Both, 85).unwrap());
    }

    #[test]
    fn h_structure() {
        let h = apply_h::<f64>();
        assert_eq!(h.parallel, [GateKind::X, GateKind::Z]);
        assert!((h.scale - 1.0 / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn measure_examples() {
        let (c, o) = measure_chief(0, 100, 1.0f64, CoefficientMap::Linear).unwrap();
        assert_eq!((c, o), (0.5, 0.5));
        let (c, o) = measure_chief(100, 100, 1.0f64, CoefficientMap::Linear).unwrap();
        assert_eq!((c, o), (1.0, 0.0));
        let (c, o) = measure_chief(50, 100, 0.64f64, CoefficientMap::Linear).unwrap();
        assert!((c * c + 3.0 * o * o - 0.64).abs() < 1e-12);
        assert!(measure_chief(0, 100, 0.16f64, CoefficientMap::Linear).is_err());
        assert!(measure_chief(101, 100, 1.0f64, CoefficientMap::Linear).is_err());

        assert_eq!(sigmoid_map(0.0f64, 0.3), 0.5);
        assert!((sigmoid_map(1e3 / 0.3, 0.3f64) - 1.0).abs() < 1e-9);
        assert!((sigmoid_map(50.0, 0.2f64) - 0.9999546).abs() < 1e-7);

        let (c0, c1) = measure_entangled(0.0f64, 1.0).unwrap();
        assert!((c0 - c1).abs() < 1e-15 && (c0 - 0.5f64.sqrt()).abs() < 1e-15);
        let (c0, c1) = measure_entangled(50.0f64, 1.0).unwrap();
        assert!((c0 - 1.0).abs() < 1e-15 && c1.abs() < 1e-7);

        let (c0, c1, _) = measure_edge_aligned(1.0f64, 0.3, 1.0).unwrap();
        assert_eq!((c0, c1), (0.0, 0.0));
        let (c0, c1, _) = measure_edge_aligned(0.4f64, 0.5, 0.9).unwrap();
        assert!((c0 - c1).abs() < 1e-15);
    }

    #[test]
    fn csv_has_48_rows() {
        let csv = tables_csv();
        assert_eq!(csv.lines().count(), 49);
        assert!(csv.contains("x1,00,2,10,3\n"));
    }

    proptest! {
        #[test]
        fn z_stays_in_range(r in 0u32..256) {
            for t in [Target::Q1, Target::Q2, Target::Both] {
                prop_assert!(apply_z(t, r).unwrap() < 256);
            }
        }

        #[test]
        fn chief_constraint(a in 0u64..=1000, p in 0.25f64..=1.0, c in 0.01f64..1.0, sig in any::<bool>()) {
            let map = if sig { CoefficientMap::Sigmoid(c) } else { CoefficientMap::Linear };
            let (cc, co) = measure_chief(a, 1000, p, map).unwrap();
            prop_assert!(cc >= 0.0 && co >= 0.0);
            prop_assert!((cc * cc + 3.0 * co * co - p).abs() < 1e-12);
        }

        #[test]
        fn entangled_constraint(v in 0.0f64..=50.0, p in 1e-6f64..=1.0) {
            let (c0, c1) = measure_entangled(v, p).unwrap();
            prop_assert!(c0 >= 0.0 && c1 >= 0.0);
            prop_assert!((c0 * c0 + c1 * c1 - p).abs() < 1e-12);
        }

        #[test]
        fn edge_constraint(a in 0.0f64..=1.0, g in 0.0f64..=1.0, p in 1e-6f64..=1.0) {
            let (c0, c1, co) = measure_edge_aligned(a, g, p).unwrap();
            prop_assert!(c0 >= -1e-18 && c1 >= 0.0 && co >= 0.0);
            prop_assert!((c0 * c0 + c1 * c1 + 2.0 * co * co - p).abs() < 1e-12);
        }
    }
}
