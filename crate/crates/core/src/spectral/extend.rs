//! Extension of a potential sampled on `[0, b]` to `[-b, b]`.

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use num_complex::Complex64;
use std::io::Read;

/// Samples on the uniform grid `x_i = b i / (n - 1)` of `[0, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfGridFunction {
    pub b: f64,
    pub values: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExtensionMode {
    /// `q(-x) = q(x)`.
    Even,
    /// `q(-x) = 2 q(0) - q(x)`.
    OddShifted,
    /// Explicit samples at the nodes of `[-b, 0)`, in increasing `x`.
    User(Vec<Complex64>),
}

impl ExtensionMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(ExtensionMode::Even),
            "odd_shifted" | "odd-shifted" => Ok(ExtensionMode::OddShifted),
            _ => Err(Error::InvalidInput(format!("unknown extension mode {s}"))),
        }
    }
}

impl HalfGridFunction {
    pub fn new(b: f64, values: Vec<Complex64>) -> Result<Self> {
        if !(b > 0.0 && b.is_finite()) || values.len() < 2 {
            return Err(Error::InvalidInput("need b > 0 and at least two samples".into()));
        }
        Ok(HalfGridFunction { b, values })
    }
}

pub fn extend_potential(q: &HalfGridFunction, mode: &ExtensionMode) -> Result<GridFunction> {
    let n = q.values.len();
    let left: Vec<Complex64> = match mode {
        ExtensionMode::Even => (1..n).rev().map(|i| q.values[i]).collect(),
        ExtensionMode::OddShifted => (1..n).rev().map(|i| q.values[0] * 2.0 - q.values[i]).collect(),
        ExtensionMode::User(v) => {
            if v.len() != n - 1 {
                return Err(Error::InvalidInput(format!("expected {} samples on [-b, 0), got {}", n - 1, v.len())));
            }
            v.clone()
        }
    };
    let mut values = left;
    values.extend_from_slice(&q.values);
    GridFunction::new(q.b, values)
}

/// Reads `x,re[,im]` rows of a potential: a grid of `[0, b]` is extended with `mode`,
/// a symmetric grid of `[-b, b]` is taken as is.
pub fn read_potential_csv<R: Read>(r: R, mode: &ExtensionMode) -> Result<GridFunction> {
    let mut text = String::new();
    let mut r = r;
    r.read_to_string(&mut text)?;
    let first_x = text
        .lines()
        .filter_map(|l| l.split(',').next().and_then(|s| s.trim().parse::<f64>().ok()))
        .next()
        .ok_or_else(|| Error::InvalidInput("potential file has no numeric rows".into()))?;
    if first_x.abs() > 1e-12 {
        return GridFunction::read_csv(text.as_bytes());
    }
    // reuse the symmetric reader on the mirrored grid to validate uniformity
    let mut mirrored = String::new();
    let rows: Vec<&str> = text.lines().filter(|l| l.split(',').next().map(|s| s.trim().parse::<f64>().is_ok()).unwrap_or(false)).collect();
    for row in rows[1..].iter().rev() {
        let mut parts = row.splitn(2, ',');
        let x: f64 = parts.next().unwrap_or("0").trim().parse().unwrap_or(0.0);
        mirrored.push_str(&format!("{},{}\n", -x, parts.next().unwrap_or("")));
    }
    for row in &rows {
        mirrored.push_str(row);
        mirrored.push('\n');
    }
    let full = GridFunction::read_csv(mirrored.as_bytes())?;
    let n = rows.len();
    let half = HalfGridFunction::new(full.b, full.values[n - 1..].to_vec())?;
    extend_potential(&half, mode)
}
