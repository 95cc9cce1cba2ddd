//! CSV and JSON exchange formats for grid functions.
//!
//! CSV rows are `x,re[,im]`; the grid must be uniform and symmetric.

use super::GridFunction;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::io::{Read, Write};
use std::path::Path;

impl GridFunction {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["x", "re", "im"])?;
        for (i, v) in self.values.iter().enumerate() {
            wr.write_record([
                format!("{:.17e}", self.node(i)),
                format!("{:.17e}", v.re),
                format!("{:.17e}", v.im),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }

    /// Reads `x,re[,im]` rows; a header row is optional.
    pub fn read_csv<R: Read>(r: R) -> Result<GridFunction> {
        let mut rd = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(r);
        let mut xs = Vec::new();
        let mut vals = Vec::new();
        for (line, rec) in rd.records().enumerate() {
            let rec = rec?;
            let parsed: std::result::Result<Vec<f64>, _> = rec.iter().map(|s| s.trim().parse::<f64>()).collect();
            let nums = match parsed {
                Ok(v) => v,
                Err(_) if line == 0 => continue,
                Err(e) => return Err(Error::InvalidInput(format!("row {}: {e}", line + 1))),
            };
            match nums.len() {
                2 => vals.push(Complex64::new(nums[1], 0.0)),
                3 => vals.push(Complex64::new(nums[1], nums[2])),
                k => return Err(Error::InvalidInput(format!("row {} has {k} columns, expected 2 or 3", line + 1))),
            }
            xs.push(nums[0]);
        }
        if xs.len() < 2 {
            return Err(Error::InvalidInput("grid file has fewer than two rows".into()));
        }
        let b = xs[xs.len() - 1];
        if ((xs[0] + b).abs()) > 1e-9 * b.abs().max(1.0) {
            return Err(Error::InvalidInput("grid must be symmetric about the origin".into()));
        }
        let g = GridFunction::new(b, vals)?;
        for (i, x) in xs.iter().enumerate() {
            if (x - g.node(i)).abs() > 1e-9 * b {
                return Err(Error::InvalidInput(format!("grid is not uniform at row {}", i + 1)));
            }
        }
        Ok(g)
    }

    pub fn read_csv_file<P: AsRef<Path>>(path: P) -> Result<GridFunction> {
        Self::read_csv(std::fs::File::open(path)?)
    }

    pub fn to_json(&self) -> Result<String> {
        let env = serde_json::json!({
            "b": self.b,
            "n_points": self.n_points(),
            "values": self.values,
        });
        Ok(serde_json::to_string(&env)?)
    }

    pub fn from_json(s: &str) -> Result<GridFunction> {
        #[derive(serde::Deserialize)]
        struct Env {
            b: f64,
            n_points: usize,
            values: Vec<Complex64>,
        }
        let env: Env = serde_json::from_str(s)?;
        if env.n_points != env.values.len() {
            return Err(Error::InvalidInput("n_points does not match number of values".into()));
        }
        GridFunction::new(env.b, env.values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_roundtrip() {
        let g = GridFunction::from_fn(2.0, 11, |x| Complex64::new(x.sin(), x * x)).unwrap();
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let back = GridFunction::read_csv(&buf[..]).unwrap();
        assert_eq!(back.n_points(), 11);
        for (a, b) in g.values.iter().zip(&back.values) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn csv_rejects_nonuniform() {
        let data = "-1,0\n0.1,0\n1,0\n";
        assert!(GridFunction::read_csv(data.as_bytes()).is_err());
        let data = "-1,0\n0,0\n2,0\n";
        assert!(GridFunction::read_csv(data.as_bytes()).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let g = GridFunction::from_real_fn(1.0, 5, |x| x).unwrap();
        let s = g.to_json().unwrap();
        assert_eq!(GridFunction::from_json(&s).unwrap(), g);
        assert!(GridFunction::from_json(r#"{"b":1,"n_points":3,"values":[[0,0]]}"#).is_err());
    }
}
