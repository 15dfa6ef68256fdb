//! Parameter sweeps over `J`, `B2` or `T2` and their CSV serialization.
//!
//! Grid points are evaluated on a bounded worker pool and collected in grid
//! order, so the CSV bytes do not depend on the worker count.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;

use crate::coop::{coop_from_endpoints, GeneralizedConfig};
use crate::error::{Error, Result};
use crate::local::{local_temperatures, ReducedEndpoints};
use crate::otto::{positive_work_boundaries, CycleEndpoints, EngineConfig};
use crate::quantity::Quantity;
use crate::spin::{PairOperators, SpinQuantumNumber};

pub const DEFAULT_FIG1_STEPS: usize = 200;
pub const DEFAULT_FIG3_STEPS: usize = 600;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweptParam {
    J,
    B2,
    T2,
}

impl SweptParam {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::J => "J",
            Self::B2 => "B2",
            Self::T2 => "T2",
        }
    }
}

impl fmt::Display for SweptParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweptParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "J" | "j" => Ok(Self::J),
            "B2" | "b2" => Ok(Self::B2),
            "T2" | "t2" => Ok(Self::T2),
            other => Err(Error::Parse(format!("unknown sweep parameter {other:?} (expected J, B2 or T2)"))),
        }
    }
}

/// Parameters held fixed during a sweep. `j1 == j2` is the field-driven cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseParams {
    pub j1: f64,
    pub j2: f64,
    pub b1: f64,
    pub b2: f64,
    pub t1: f64,
    pub t2: f64,
}

impl Default for BaseParams {
    fn default() -> Self {
        Self { j1: 0.0, j2: 0.0, b1: 4.0, b2: 3.0, t1: 1.0, t2: 0.5 }
    }
}

impl BaseParams {
    pub fn with(self, param: SweptParam, x: f64) -> Self {
        match param {
            SweptParam::J => Self { j1: x, j2: x, ..self },
            SweptParam::B2 => Self { b2: x, ..self },
            SweptParam::T2 => Self { t2: x, ..self },
        }
    }

    pub fn validate(&self, s: SpinQuantumNumber) -> Result<()> {
        if self.j1 == self.j2 {
            EngineConfig { s, j: self.j1, b1: self.b1, b2: self.b2, t1: self.t1, t2: self.t2 }.validate()
        } else {
            self.generalized(s).validate()
        }
    }

    pub fn generalized(&self, s: SpinQuantumNumber) -> GeneralizedConfig {
        GeneralizedConfig { s, j1: self.j1, j2: self.j2, b1: self.b1, b2: self.b2, t1: self.t1, t2: self.t2 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub param: SweptParam,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub s_list: Vec<SpinQuantumNumber>,
    pub base: BaseParams,
    pub refine_pwc: bool,
    pub workers: usize,
}

impl SweepSpec {
    /// Weak-coupling scan `J ∈ [0, 0.5]` at `B1 = 4, B2 = 3, T1 = 1, T2 = 0.5`.
    pub fn fig1() -> Self {
        Self {
            param: SweptParam::J,
            min: 0.0,
            max: 0.5,
            steps: DEFAULT_FIG1_STEPS,
            s_list: SpinQuantumNumber::studied().to_vec(),
            base: BaseParams::default(),
            refine_pwc: false,
            workers: default_workers(),
        }
    }

    /// Same parameters out to strong coupling, `J ∈ [0, 6]`.
    pub fn fig3() -> Self {
        Self { max: 6.0, steps: DEFAULT_FIG3_STEPS, ..Self::fig1() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::InvalidConfig(format!("steps must be at least 2, got {}", self.steps)));
        }
        if !(self.min < self.max) || !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::InvalidConfig(format!("need min < max, got [{}, {}]", self.min, self.max)));
        }
        if self.s_list.is_empty() {
            return Err(Error::InvalidConfig("empty spin list".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidConfig("workers must be at least 1".into()));
        }
        if self.param == SweptParam::J && self.base.j1 != self.base.j2 {
            return Err(Error::InvalidConfig("sweeping J requires J1 = J2".into()));
        }
        // Every constraint is an interval in the swept parameter, so the ends suffice.
        for &s in &self.s_list {
            self.base.with(self.param, self.min).validate(s)?;
            self.base.with(self.param, self.max).validate(s)?;
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let n = self.steps - 1;
        (0..self.steps)
            .map(|i| if i == n { self.max } else { self.min + (self.max - self.min) * i as f64 / n as f64 })
            .collect()
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Every scalar of one sweep point, flattened in CSV column order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub s: SpinQuantumNumber,
    pub x: f64,
    pub w: f64,
    pub q1: f64,
    pub q2: f64,
    pub eta: Option<f64>,
    pub eta_bound: Option<f64>,
    pub mode: &'static str,
    pub wa: f64,
    pub wb: f64,
    pub q1a: f64,
    pub q2a: f64,
    pub q1b: f64,
    pub q2b: f64,
    pub ps: f64,
    pub ta_hot: Quantity,
    pub ta_cold: Quantity,
    /// Spin B admits a single temperature at both endpoints.
    pub b_thermal: bool,
    pub w_coop: f64,
    pub ratio: Quantity,
}

pub const BOUNDARY_MODE: &str = "pwc_boundary";

pub fn csv_header(param: SweptParam) -> String {
    format!("s,{param},W,Q1,Q2,eta,eta_bound,mode,wA,wB,q1A,q2A,q1B,q2B,Ps,TA_hot,TA_cold,B_thermal_flag,w_coop,ratio")
}

impl SweepRow {
    /// The numeric columns (everything except `mode`), in order.
    pub fn numeric_fields(&self) -> Vec<f64> {
        vec![
            self.s.value(),
            self.x,
            self.w,
            self.q1,
            self.q2,
            self.eta.unwrap_or(f64::NAN),
            self.eta_bound.unwrap_or(f64::NAN),
            self.wa,
            self.wb,
            self.q1a,
            self.q2a,
            self.q1b,
            self.q2b,
            self.ps,
            self.ta_hot.to_f64(),
            self.ta_cold.to_f64(),
            if self.b_thermal { 1.0 } else { 0.0 },
            self.w_coop,
            self.ratio.to_f64(),
        ]
    }

    pub fn to_csv_line(&self) -> String {
        let f = |x: f64| format_scalar(x);
        let opt = |x: Option<f64>| x.map_or_else(|| "nan".to_string(), format_scalar);
        let q = |x: Quantity| format_scalar(x.to_f64());
        [
            self.s.value().to_string(),
            f(self.x),
            f(self.w),
            f(self.q1),
            f(self.q2),
            opt(self.eta),
            opt(self.eta_bound),
            self.mode.to_string(),
            f(self.wa),
            f(self.wb),
            f(self.q1a),
            f(self.q2a),
            f(self.q1b),
            f(self.q2b),
            f(self.ps),
            q(self.ta_hot),
            q(self.ta_cold),
            if self.b_thermal { "1" } else { "0" }.to_string(),
            f(self.w_coop),
            q(self.ratio),
        ]
        .join(",")
    }
}

/// 17 significant digits, which round-trips every finite `f64`.
pub fn format_scalar(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

/// Evaluates every analysis at one parameter point.
pub fn evaluate_point(ops: &PairOperators, params: &BaseParams, x: f64) -> Result<SweepRow> {
    let s = ops.s;
    params.validate(s)?;
    let g = params.generalized(s);
    let ends = CycleEndpoints::new(ops, g.hot(), g.cold())?;
    let red = ReducedEndpoints::new(&ends)?;
    let coop = coop_from_endpoints(ops, &ends, &red)?;
    let temps = local_temperatures(&ends, &red)?;
    let cycle = coop.cycle;
    let local = crate::local::local_from_endpoints(ops, &ends, &red);
    Ok(SweepRow {
        s,
        x,
        w: cycle.w,
        q1: cycle.q1,
        q2: cycle.q2,
        eta: cycle.eta,
        eta_bound: cycle.eta_bound,
        mode: cycle.mode.as_str(),
        wa: local.wa,
        wb: local.wb,
        q1a: local.q1a,
        q2a: local.q2a,
        q1b: local.q1b,
        q2b: local.q2b,
        ps: local.ps,
        ta_hot: temps.a_hot.temperature,
        ta_cold: temps.a_cold.temperature,
        b_thermal: temps.b_hot.is_thermal && temps.b_cold.is_thermal,
        w_coop: coop.w_coop,
        ratio: coop.ratio,
    })
}

/// Rows for every `(s, grid point)` in grid order, grouped by `s` in input
/// order, followed by positive-work boundary rows when refinement is on.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot start worker pool: {e}")))?;
    let grid = spec.grid();
    let mut rows = Vec::with_capacity(grid.len() * spec.s_list.len());
    let mut boundaries = Vec::new();

    for &s in &spec.s_list {
        let ops = PairOperators::new(s);
        let eval = |x: f64| evaluate_point(&ops, &spec.base.with(spec.param, x), x);
        let group: Vec<SweepRow> = pool.install(|| grid.par_iter().map(|&x| eval(x)).collect::<Result<_>>())?;

        if spec.refine_pwc {
            let works: Vec<f64> = group.iter().map(|r| r.w).collect();
            let roots = positive_work_boundaries(&grid, &works, |x| Ok(eval(x)?.w))?;
            for x in roots {
                let mut row = eval(x)?;
                row.mode = BOUNDARY_MODE;
                boundaries.push(row);
            }
        }
        rows.extend(group);
    }
    rows.extend(boundaries);
    Ok(rows)
}

pub fn write_csv<W: Write>(out: &mut W, param: SweptParam, rows: &[SweepRow]) -> io::Result<()> {
    writeln!(out, "{}", csv_header(param))?;
    for row in rows {
        writeln!(out, "{}", row.to_csv_line())?;
    }
    Ok(())
}
