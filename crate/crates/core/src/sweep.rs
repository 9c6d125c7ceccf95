//! Parameter sweeps over the discordant family and phase scans, written as
//! CSV with a JSON comment header echoing the resolved configuration.

use std::f64::consts::FRAC_PI_2;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{HalfWavePlate, DEFAULT_HWP_ANGLE, DEFAULT_PHI};
use crate::error::{Error, Result};
use crate::states::{make_qc, FamilyParams};
use crate::witness::{discord_t, witness_growth, witness_td};

/// Inclusive, evenly spaced grid `start..=stop` with `count >= 2` points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridAxis {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridAxis {
    pub fn new(start: f64, stop: f64, count: usize) -> Self {
        GridAxis { start, stop, count }
    }

    pub fn points(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }

    fn validate(&self, name: &str, lo: f64, hi: f64) -> Result<()> {
        if self.count < 2 {
            return Err(Error::OutOfRange(format!("{name} grid needs at least 2 points")));
        }
        let inside = |x: f64| x.is_finite() && x >= lo - 1e-12 && x <= hi + 1e-12;
        if !inside(self.start) || !inside(self.stop) {
            return Err(Error::OutOfRange(format!("{name} grid must lie in [{lo}, {hi}]")));
        }
        Ok(())
    }
}

impl std::str::FromStr for GridAxis {
    type Err = Error;

    /// `start,stop,count`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || Error::OutOfRange(format!("grid {s:?} must be start,stop,count"));
        let [start, stop, count] = parts.as_slice() else {
            return Err(bad());
        };
        Ok(GridAxis {
            start: start.parse().map_err(|_| bad())?,
            stop: stop.parse().map_err(|_| bad())?,
            count: count.parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum Quantity {
    /// Discord quantifier.
    #[serde(rename = "T")]
    #[value(name = "t")]
    T,
    /// Local discord witness after the phase gate.
    #[serde(rename = "Td")]
    #[value(name = "td")]
    Td,
    /// Correlation witness under the half-wave plate.
    #[serde(rename = "Growth")]
    #[value(name = "growth")]
    Growth,
}

/// Grid over the discordant family. Without a `quantity` every column
/// (`T`, `Td`, `growth`) is written.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSpec {
    pub lambda_grid: GridAxis,
    pub theta_grid: GridAxis,
    pub phi: f64,
    pub hwp_angle: f64,
    pub quantity: Option<Quantity>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            lambda_grid: GridAxis::new(0.0, 1.0, 50),
            theta_grid: GridAxis::new(0.0, FRAC_PI_2, 50),
            phi: DEFAULT_PHI,
            hwp_angle: DEFAULT_HWP_ANGLE,
            quantity: None,
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.lambda_grid.validate("lambda", 0.0, 1.0)?;
        self.theta_grid.validate("theta", 0.0, FRAC_PI_2)?;
        if !self.phi.is_finite() || !self.hwp_angle.is_finite() {
            return Err(Error::OutOfRange("phi and hwp_angle must be finite".into()));
        }
        Ok(())
    }
}

/// One evaluated grid point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub lambda: f64,
    pub theta: f64,
    pub phi: f64,
    pub t: f64,
    pub td: f64,
    pub growth: f64,
}

impl SweepRow {
    pub fn get(&self, q: Quantity) -> f64 {
        match q {
            Quantity::T => self.t,
            Quantity::Td => self.td,
            Quantity::Growth => self.growth,
        }
    }
}

fn evaluate(spec: &SweepSpec, lambda: f64, theta: f64) -> Result<SweepRow> {
    let rho = make_qc(lambda, theta)?;
    let needs = |q: Quantity| spec.quantity.is_none_or(|sel| sel == q);
    let v = HalfWavePlate::new(spec.hwp_angle).unitary();
    Ok(SweepRow {
        lambda,
        theta,
        phi: spec.phi,
        t: if needs(Quantity::T) {
            discord_t(&rho)?.value
        } else {
            f64::NAN
        },
        td: if needs(Quantity::Td) {
            witness_td(&rho, spec.phi)?.value
        } else {
            f64::NAN
        },
        growth: if needs(Quantity::Growth) {
            witness_growth(&rho, &v, spec.phi)?.value
        } else {
            f64::NAN
        },
    })
}

/// Evaluates the grid, lambda-major. Points run in parallel; the returned
/// order is always the grid order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let lambdas = spec.lambda_grid.points();
    let thetas = spec.theta_grid.points();
    let grid: Vec<(f64, f64)> = lambdas
        .iter()
        .flat_map(|&l| {
            thetas
                .iter()
                .map(move |&t| (l.clamp(0.0, 1.0), t.clamp(0.0, FRAC_PI_2)))
        })
        .collect();
    grid.par_iter().map(|&(l, t)| evaluate(spec, l, t)).collect()
}

// Floats are written with `{:?}`: shortest round-trip digits, exponent form
// for very small or large magnitudes.

/// Writes the resolved configuration as a `# {json}` comment line.
pub fn write_header_comment<W: Write + ?Sized, C: Serialize>(out: &mut W, config: &C) -> Result<()> {
    writeln!(out, "# {}", serde_json::to_string(config)?)?;
    Ok(())
}

pub fn write_sweep_csv<W: Write + ?Sized>(out: &mut W, spec: &SweepSpec, rows: &[SweepRow]) -> Result<()> {
    write_header_comment(out, spec)?;
    match spec.quantity {
        Some(q) => {
            writeln!(out, "lambda,theta,phi,value")?;
            for r in rows {
                writeln!(out, "{:?},{:?},{:?},{:?}", r.lambda, r.theta, r.phi, r.get(q))?;
            }
        }
        None => {
            writeln!(out, "lambda,theta,phi,T,Td,growth")?;
            for r in rows {
                writeln!(
                    out,
                    "{:?},{:?},{:?},{:?},{:?},{:?}",
                    r.lambda, r.theta, r.phi, r.t, r.td, r.growth
                )?;
            }
        }
    }
    Ok(())
}

/// Local discord witness of one family point at each phase, in input order.
pub fn phase_scan(params: &FamilyParams, phis: &[f64]) -> Result<Vec<(f64, f64)>> {
    let rho = params.build()?;
    phis.iter()
        .map(|&phi| Ok((phi, witness_td(&rho, phi)?.value)))
        .collect()
}

#[derive(Serialize)]
struct PhaseScanHeader<'a> {
    params: &'a FamilyParams,
    phis: &'a [f64],
}

pub fn write_phase_scan_csv<W: Write + ?Sized>(out: &mut W, params: &FamilyParams, rows: &[(f64, f64)]) -> Result<()> {
    let phis: Vec<f64> = rows.iter().map(|r| r.0).collect();
    write_header_comment(out, &PhaseScanHeader { params, phis: &phis })?;
    writeln!(out, "family,lambda,theta,phi,Td")?;
    for (phi, td) in rows {
        writeln!(
            out,
            "{},{:?},{:?},{:?},{:?}",
            params.family,
            params.lambda,
            params.theta_or_zero(),
            phi,
            td
        )?;
    }
    Ok(())
}
