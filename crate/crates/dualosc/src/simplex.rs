// Copyright (c) The dualosc Contributors
// SPDX-License-Identifier: Apache-2.0

//! Probability-simplex bookkeeping: strength of the two-qubit mixture, the
//! measurement probability of a curve point, and the assignment of `g` curves to
//! chief curves, vertex groups and surface groups.

use std::fmt::Write as _;

use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;

/// Default curve spacing of the scaled census.
pub const DEFAULT_DG: f64 = 1e-4;

/// `1 - (e0 + e1/2 - e2/2 + e3/2 - e4/2)` over the five edge distances.
pub fn hdo_strength_2q<T: Scalar>(deltas: [T; 5]) -> Result<T> {
    if deltas.iter().any(|d| !(*d >= T::zero())) {
        return domain("edge distances must be >= 0");
    }
    let h = T::lit(0.5);
    Ok(T::one() - (deltas[0] + h * deltas[1] - h * deltas[2] + h * deltas[3] - h * deltas[4]))
}

/// `(sigma - delta) / sigma`, clamped to `[0, 1]`.
pub fn p_measure<T: Scalar>(sigma: T, delta: T) -> Result<T> {
    if !(sigma > T::zero()) {
        return domain(format!("sigma must be > 0, got {sigma}"));
    }
    if !(delta >= T::zero()) {
        return domain(format!("delta must be >= 0, got {delta}"));
    }
    Ok(((sigma - delta) / sigma).max(T::zero()).min(T::one()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveClass {
    Primary,
    Secondary,
    Tertiary,
}

pub fn curve_class(a: u64) -> CurveClass {
    match a % 3 {
        0 => CurveClass::Primary,
        1 => CurveClass::Secondary,
        _ => CurveClass::Tertiary,
    }
}

/// Termination points along a surface group at `points_per_line` curves each.
pub fn termination_lines(curves_per_surface_group: u64, points_per_line: u64) -> Result<u64> {
    if points_per_line == 0 {
        return domain("points_per_line must be > 0");
    }
    Ok(curves_per_surface_group / points_per_line)
}

/// Position of a curve inside the layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    /// Pure state of the enclosing (lower) chief.
    pub vertex_group: u64,
    /// 1-based surface group within the vertex group.
    pub surface_group: u32,
    /// Curves past the start of the surface group.
    pub offset: u64,
}

/// Full simplex coordinates of one encoded value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexCoords<T> {
    pub qubits: u32,
    pub g: T,
    pub a: u64,
    pub location: Location,
    pub curve_class: CurveClass,
}

/// Partition of curve indices `n = 1..=bands * per_vertex` (curve `n` sits at
/// `g = g0 + n * dg`) into vertex and surface groups.
///
/// The `|0…0⟩` chief is realised on the first curve, so surface group 1 of
/// vertex group 0 is one curve shorter than the others.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveLayout<T> {
    pub qubits: u32,
    pub curves_total: u64,
    pub g0: T,
    pub dg: T,
    /// Chief curves in g order; with two or more qubits the last one wraps to `|0…0⟩`.
    pub chief_curves: Vec<(u64, T)>,
    pub curves_per_vertex_group: u64,
    pub curves_per_surface_group: u64,
    pub surfaces_per_vertex: u32,
}

impl<T: Scalar> CurveLayout<T> {
    /// Layout over the curves of a scaled census: starts at `g = 1` with the default step.
    pub fn build(qubits: u32, curves_total: u64) -> Result<Self> {
        Self::build_with_step(qubits, curves_total, T::one(), T::lit(DEFAULT_DG))
    }

    pub fn build_with_step(qubits: u32, curves_total: u64, g0: T, dg: T) -> Result<Self> {
        if !(1..=16).contains(&qubits) {
            return domain(format!("qubits must be in 1..=16, got {qubits}"));
        }
        if !(dg > T::zero()) {
            return domain(format!("dg must be > 0, got {dg}"));
        }
        if !(g0 >= T::zero()) {
            return domain(format!("g0 must be >= 0, got {g0}"));
        }
        let states = 1u64 << qubits;
        if curves_total < states {
            return Err(Error::Capacity(format!("{curves_total} curves cannot hold {states} chief curves")));
        }
        // One band between the two chiefs of a single qubit; otherwise one per vertex.
        let bands = if qubits == 1 { 1 } else { states };
        let surfaces = surfaces_per_vertex(qubits);
        let per_vertex = curves_total / bands;
        let per_surface = per_vertex / surfaces as u64;
        if per_surface == 0 {
            return Err(Error::Capacity(format!(
                "{curves_total} curves leave no room for {surfaces} surface groups per vertex"
            )));
        }
        let chief_curves = (0..=bands)
            .map(|k| {
                let state = if qubits == 1 { k } else { k % states };
                let n = (k * per_vertex).max(1);
                (state, g0 + T::lit(n as f64) * dg)
            })
            .collect();
        Ok(Self {
            qubits,
            curves_total,
            g0,
            dg,
            chief_curves,
            curves_per_vertex_group: per_vertex,
            curves_per_surface_group: per_surface,
            surfaces_per_vertex: surfaces,
        })
    }

    fn bands(&self) -> u64 {
        self.chief_curves.len() as u64 - 1
    }

    /// Last curve index covered by the layout.
    pub fn last_curve(&self) -> u64 {
        self.bands() * self.curves_per_vertex_group
    }

    pub fn g_range(&self) -> (T, T) {
        (self.g0 + self.dg, self.g0 + T::lit(self.last_curve() as f64) * self.dg)
    }

    pub fn locate(&self, g: T) -> Result<Location> {
        let n = ((g - self.g0) / self.dg).round();
        let last = self.last_curve();
        if !(n >= T::one()) || n > T::lit(last as f64) {
            let (lo, hi) = self.g_range();
            return domain(format!("g = {g} outside layout range [{lo}, {hi}]"));
        }
        Ok(self.locate_index(n.to_u64().expect("in range")))
    }

    /// Location of curve index `n` (`1..=last_curve()`).
    pub fn locate_index(&self, n: u64) -> Location {
        let m = self.curves_per_vertex_group;
        let k = n / m;
        if k == self.bands() {
            let (state, _) = self.chief_curves[k as usize];
            return Location { vertex_group: state, surface_group: 1, offset: 0 };
        }
        let rem = n % m;
        let s = (rem / self.curves_per_surface_group).min(self.surfaces_per_vertex as u64 - 1);
        let mut offset = rem - s * self.curves_per_surface_group;
        if k == 0 && s == 0 {
            offset -= 1;
        }
        Location { vertex_group: self.chief_curves[k as usize].0, surface_group: s as u32 + 1, offset }
    }

    pub fn coords(&self, g: T, a: u64) -> Result<SimplexCoords<T>> {
        Ok(SimplexCoords {
            qubits: self.qubits,
            g,
            a,
            location: self.locate(g)?,
            curve_class: curve_class(a),
        })
    }

    /// Triangular faces containing `vertex`, ordered by vertex sum.
    pub fn surfaces(&self, vertex: u64) -> Vec<[u64; 3]> {
        adjacent_faces(self.qubits, vertex)
    }

    /// `(vertex, surface, g_start, g_end)`, half-open in g.
    pub fn surface_bounds(&self) -> Vec<(u64, u32, T, T)> {
        let m = self.curves_per_vertex_group;
        let sz = self.curves_per_surface_group;
        let mut out = Vec::new();
        for k in 0..self.bands() {
            for s in 0..self.surfaces_per_vertex as u64 {
                let start = (k * m + s * sz).max(1);
                let end =
                    if s + 1 == self.surfaces_per_vertex as u64 { (k + 1) * m } else { k * m + (s + 1) * sz };
                out.push((
                    self.chief_curves[k as usize].0,
                    s as u32 + 1,
                    self.g0 + T::lit(start as f64) * self.dg,
                    self.g0 + T::lit(end as f64) * self.dg,
                ));
            }
        }
        out
    }

    fn state_label(&self, s: u64) -> String {
        format!("{:0width$b}", s, width = self.qubits as usize)
    }

    pub fn chiefs_csv(&self) -> String {
        let mut s = String::from("state,chief_g\n");
        for &(st, g) in &self.chief_curves {
            writeln!(s, "{},{}", self.state_label(st), g).unwrap();
        }
        s
    }

    pub fn groups_csv(&self) -> String {
        let mut s = String::from("vertex,surface,g_start,g_end\n");
        for (v, sf, a, b) in self.surface_bounds() {
            writeln!(s, "{},{},{},{}", self.state_label(v), sf, a, b).unwrap();
        }
        s
    }
}

/// Faces of the state simplex touching one vertex: `C(2^Q - 1, 2)`, or one
/// band for a single qubit.
pub fn surfaces_per_vertex(qubits: u32) -> u32 {
    if qubits == 1 {
        return 1;
    }
    let others = (1u64 << qubits) - 1;
    (others * (others - 1) / 2) as u32
}

fn adjacent_faces(qubits: u32, vertex: u64) -> Vec<[u64; 3]> {
    let n = 1u64 << qubits;
    let others: Vec<u64> = (0..n).filter(|&u| u != vertex).collect();
    let mut faces = Vec::new();
    for i in 0..others.len() {
        for j in i + 1..others.len() {
            let mut f = [vertex, others[i], others[j]];
            f.sort_unstable();
            faces.push(f);
        }
    }
    faces.sort_by_key(|f| (f.iter().sum::<u64>(), *f));
    faces
}
