// Copyright (c) The dualosc Contributors
// SPDX-License-Identifier: Apache-2.0

//! Tolerance census: how many distinguishable indices each curve holds, and
//! sweeps over `g` that add them up.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::codec::encode_phi;
use crate::device::DeviceSpec;
use crate::error::{domain, Result};
use crate::scalar::Scalar;

/// Hard stop for the index walk along a single curve.
pub const MAX_INDEX: u64 = 1 << 28;

/// Outcome of walking one curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveCount<T> {
    pub count: u64,
    /// Phase of the last index examined (the rejected one, normally).
    pub last_phi: T,
    pub last_d_omega: T,
    pub last_a: u64,
}

/// Counts indices on curve `g` whose phases stay more than one tolerance apart.
///
/// Walks `a = 1, 2, ...`, skipping unencodable indices, and stops at the first
/// index that is not below the previous accepted value by more than the tolerance.
pub fn count_states_on_curve<T: Scalar>(g: T, spec: &DeviceSpec<T>, scaled: bool) -> Result<CurveCount<T>> {
    if !(g > T::zero()) || !g.is_finite() {
        return domain(format!("g must be finite and > 0, got {g}"));
    }
    Ok(count_unchecked(g, spec, scaled))
}

fn count_unchecked<T: Scalar>(g: T, spec: &DeviceSpec<T>, scaled: bool) -> CurveCount<T> {
    let mut prev: Option<T> = None;
    let mut count = 0;
    let mut out = CurveCount { count: 0, last_phi: T::nan(), last_d_omega: T::nan(), last_a: 0 };
    for a in 1..=MAX_INDEX {
        let phi = encode_phi(a, g);
        if phi.is_nan() {
            continue;
        }
        let v = if scaled { phi * spec.cd } else { phi };
        let d = spec.tolerance(v);
        out = CurveCount { count, last_phi: phi, last_d_omega: d, last_a: a };
        match prev {
            Some(p) if !(p - v > d) => return out,
            _ => {
                prev = Some(v);
                count += 1;
                out.count = count;
            }
        }
    }
    out
}

/// One curve of a sweep, in the column order of the CSV output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CensusRow<T> {
    pub g: T,
    pub phi: T,
    pub omega: T,
    pub a_last: u64,
    pub gap_to_previous_curve: T,
    pub d_omega: T,
}

/// Why a sweep stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Terminal phases of neighbouring curves came within tolerance.
    Collapse,
    /// Frequency ceiling exceeded.
    Ceiling,
    /// `max_curves` reached first.
    CurveLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CensusReport<T> {
    pub total_states: u64,
    pub terminal_g: T,
    pub terminal_phi: T,
    pub terminal_omega: T,
    pub terminal_dphi_or_domega: T,
    pub terminal_tolerance: T,
    pub curves_counted: u64,
    /// Number of step escalations performed (scaled sweep only).
    pub escalations: u32,
    pub final_dg: T,
    pub termination: Termination,
    pub rows: Vec<CensusRow<T>>,
}

/// Starting point, step and safety limit of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepParams<T> {
    pub g0: T,
    pub dg: T,
    pub max_curves: u64,
    pub keep_rows: bool,
}

impl<T: Scalar> SweepParams<T> {
    pub fn new(dg: T) -> Self {
        Self { g0: T::one(), dg, max_curves: 50_000_000, keep_rows: true }
    }

    fn check(&self) -> Result<()> {
        if !(self.dg > T::zero()) || !self.dg.is_finite() {
            return domain(format!("dg must be finite and > 0, got {}", self.dg));
        }
        if !(self.g0 >= T::zero()) || !self.g0.is_finite() {
            return domain(format!("g0 must be finite and >= 0, got {}", self.g0));
        }
        Ok(())
    }
}

/// Which previous-curve frequency the scaled sweep compares against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScaledComparison {
    /// The comparison value stays at zero, so collapse never triggers and the
    /// sweep runs to the ceiling.
    #[default]
    Frozen,
    /// Advance the comparison value after every accepted curve and escalate
    /// the step on collapse.
    Advancing,
}

const BLOCK: usize = 256;

/// Evaluates curves in speculative parallel blocks, handing results to `step`
/// in sweep order. `step` returns false to stop; later results are dropped.
fn sweep_blocks<T: Scalar>(
    spec: &DeviceSpec<T>,
    scaled: bool,
    g: &mut T,
    dg: T,
    mut step: impl FnMut(T, CurveCount<T>) -> bool,
) {
    loop {
        let mut gs = Vec::with_capacity(BLOCK);
        let mut cursor = *g;
        for _ in 0..BLOCK {
            cursor += dg;
            gs.push(cursor);
        }
        let counts: Vec<CurveCount<T>> = gs.par_iter().map(|&gv| count_unchecked(gv, spec, scaled)).collect();
        for (gv, c) in gs.into_iter().zip(counts) {
            *g = gv;
            if !step(gv, c) {
                return;
            }
        }
    }
}

/// Unscaled sweep: stops at the first curve whose terminal phase is within
/// tolerance of the previous curve's.
pub fn census_unscaled<T: Scalar>(spec: &DeviceSpec<T>, params: SweepParams<T>) -> Result<CensusReport<T>> {
    params.check()?;
    let mut rep = empty_report(params.dg);
    let mut last = T::zero();
    let mut g = params.g0;
    sweep_blocks(spec, false, &mut g, params.dg, |g, c| {
        let gap = (last - c.last_phi).abs();
        rep.record(g, c, c.last_phi, gap, params.keep_rows);
        if gap < c.last_d_omega {
            rep.termination = Termination::Collapse;
            return false;
        }
        if c.last_phi > spec.omega_max {
            rep.termination = Termination::Ceiling;
            return false;
        }
        last = c.last_phi;
        if rep.curves_counted >= params.max_curves {
            rep.termination = Termination::CurveLimit;
            return false;
        }
        true
    });
    Ok(rep)
}

/// Scaled sweep over `omega = phi * cd`, ending when `omega` passes the ceiling.
pub fn census_scaled<T: Scalar>(
    spec: &DeviceSpec<T>,
    params: SweepParams<T>,
    comparison: ScaledComparison,
) -> Result<CensusReport<T>> {
    params.check()?;
    let mut rep = empty_report(params.dg);
    let mut last = T::zero();
    let mut g = params.g0;
    let mut dg = params.dg;
    loop {
        let mut collapsed = false;
        sweep_blocks(spec, true, &mut g, dg, |g, c| {
            let omega = c.last_phi * spec.cd;
            let gap = (last - omega).abs();
            rep.record(g, c, omega, gap, params.keep_rows);
            if gap < c.last_d_omega {
                collapsed = true;
                return false;
            }
            if omega > spec.omega_max {
                rep.termination = Termination::Ceiling;
                return false;
            }
            if comparison == ScaledComparison::Advancing {
                last = omega;
            }
            if rep.curves_counted >= params.max_curves {
                rep.termination = Termination::CurveLimit;
                return false;
            }
            true
        });
        if !collapsed {
            break;
        }
        // Widen the step until the next curve clears the tolerance. The curve
        // found this way is only used to move `g`; it is neither counted nor
        // compared against later.
        rep.escalations += 1;
        loop {
            let limit_g = g;
            let mut scaler = T::lit(2.0);
            dg *= scaler;
            g += dg;
            let c = count_unchecked(g, spec, true);
            if (last - c.last_phi * spec.cd).abs() < c.last_d_omega {
                scaler += T::one();
                dg *= scaler;
                g = limit_g + dg;
            } else {
                break;
            }
            if !g.is_finite() {
                rep.termination = Termination::CurveLimit;
                return Ok(rep);
            }
        }
    }
    rep.final_dg = dg;
    Ok(rep)
}

fn empty_report<T: Scalar>(dg: T) -> CensusReport<T> {
    CensusReport {
        total_states: 0,
        terminal_g: T::nan(),
        terminal_phi: T::nan(),
        terminal_omega: T::nan(),
        terminal_dphi_or_domega: T::nan(),
        terminal_tolerance: T::nan(),
        curves_counted: 0,
        escalations: 0,
        final_dg: dg,
        termination: Termination::CurveLimit,
        rows: Vec::new(),
    }
}

impl<T: Scalar> CensusReport<T> {
    fn record(&mut self, g: T, c: CurveCount<T>, omega: T, gap: T, keep: bool) {
        self.total_states += c.count;
        self.curves_counted += 1;
        self.terminal_g = g;
        self.terminal_phi = c.last_phi;
        self.terminal_omega = omega;
        self.terminal_dphi_or_domega = gap;
        self.terminal_tolerance = c.last_d_omega;
        if keep {
            self.rows.push(CensusRow {
                g,
                phi: c.last_phi,
                omega,
                a_last: c.last_a,
                gap_to_previous_curve: gap,
                d_omega: c.last_d_omega,
            });
        }
    }

    /// Summary block: unscaled reports the phase gap, scaled the frequency.
    pub fn summary(&self, scaled: bool, omega_max: T) -> String {
        let mut s = String::new();
        let f = |v: T| py_float(v.to_f64_lossy());
        writeln!(s, "g: {}", f(self.terminal_g)).unwrap();
        writeln!(s, "phi: {}", f(self.terminal_phi)).unwrap();
        if scaled {
            writeln!(s, "omega: {}", f(self.terminal_omega)).unwrap();
            writeln!(s, "d omega: {}", f(self.terminal_dphi_or_domega)).unwrap();
            if self.termination == Termination::Ceiling {
                writeln!(s, "omega = {} > max omega = {}", f(self.terminal_omega), f(omega_max)).unwrap();
            }
        } else {
            writeln!(s, "d omega: {}", f(self.terminal_dphi_or_domega)).unwrap();
            if self.termination == Termination::Collapse {
                writeln!(
                    s,
                    "d phi = {} < d omega = {}",
                    f(self.terminal_dphi_or_domega),
                    f(self.terminal_tolerance)
                )
                .unwrap();
            }
        }
        writeln!(s, "num states: {}", self.total_states).unwrap();
        s
    }

    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "g,phi,omega,a,dphi_or_domega,d_omega")?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                csv_float(r.g),
                csv_float(r.phi),
                csv_float(r.omega),
                r.a_last,
                csv_float(r.gap_to_previous_curve),
                csv_float(r.d_omega)
            )?;
        }
        Ok(())
    }

    pub fn emit_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let f = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(f);
        self.write_csv(&mut w)?;
        w.flush()?;
        Ok(())
    }
}

fn csv_float<T: Scalar>(v: T) -> String {
    format!("{:.16e}", v.to_f64_lossy())
}

/// Shortest round-trip rendering with the exponent switch points of the
/// common scripting-language float repr (`1e16` and `1e-4`).
pub fn py_float(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0.0".into() } else { "0.0".into() };
    }
    let sci = format!("{v:e}");
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..16).contains(&exp) {
        let s = format!("{v}");
        if s.contains('.') {
            s
        } else {
            s + ".0"
        }
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    }
}
