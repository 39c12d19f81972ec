//! Parsers for the sweep flags.

use std::str::FromStr;

/// `min:max:count` with `count ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RangeSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl RangeSpec {
    pub fn values(&self, log: bool) -> Vec<f64> {
        if log {
            ergogap::witnesses::linspace(self.min.ln(), self.max.ln(), self.count)
                .into_iter()
                .map(f64::exp)
                .collect()
        } else {
            ergogap::witnesses::linspace(self.min, self.max, self.count)
        }
    }
}

impl FromStr for RangeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, count] = parts[..] else {
            return Err(format!("expected min:max:count, got '{s}'"));
        };
        let min: f64 = min.parse().map_err(|_| format!("bad minimum '{min}'"))?;
        let max: f64 = max.parse().map_err(|_| format!("bad maximum '{max}'"))?;
        let count: usize = count.parse().map_err(|_| format!("bad count '{count}'"))?;
        if count < 2 {
            return Err(format!("count must be at least 2, got {count}"));
        }
        if !(min.is_finite() && max.is_finite() && min <= max) {
            return Err(format!("need finite min ≤ max, got {min}:{max}"));
        }
        Ok(Self { min, max, count })
    }
}

/// `NKxNZ`, e.g. `200x200`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSize {
    pub k: usize,
    pub z: usize,
}

impl FromStr for GridSize {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (k, z) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| format!("expected NKxNZ, got '{s}'"))?;
        let k: usize = k.parse().map_err(|_| format!("bad k count '{k}'"))?;
        let z: usize = z.parse().map_err(|_| format!("bad z count '{z}'"))?;
        if k < 2 || z < 2 {
            return Err(format!("grid sizes must be at least 2, got {k}x{z}"));
        }
        Ok(Self { k, z })
    }
}

/// Comma-separated list of exactly `N` numbers.
pub fn parse_tuple<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let values: Vec<f64> = s
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| format!("bad number '{v}'")))
        .collect::<Result<_, _>>()?;
    values
        .try_into()
        .map_err(|v: Vec<f64>| format!("expected {N} comma-separated numbers, got {}", v.len()))
}
