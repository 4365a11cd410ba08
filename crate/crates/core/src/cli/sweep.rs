use std::fmt;
use std::str::FromStr;

use serde::Serialize;

/// `start:stop:count[:log]`, or a single value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sweep {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub log: bool,
}

impl Sweep {
    pub fn single(value: f64) -> Self {
        Self { start: value, stop: value, count: 1, log: false }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                let f = i as f64 / last;
                if i + 1 == self.count {
                    self.stop
                } else if self.log {
                    self.start * (self.stop / self.start).powf(f)
                } else {
                    self.start + (self.stop - self.start) * f
                }
            })
            .collect()
    }

    /// Violated constraints, empty when the sweep is usable.
    pub fn problems(&self, name: &str, allow_zero: bool) -> Vec<String> {
        let mut out = Vec::new();
        if self.count == 0 {
            out.push(format!("--{name}: count must be at least 1"));
        }
        if self.count > 1 && !(self.start < self.stop) {
            out.push(format!("--{name}: start must be below stop"));
        }
        let ok = |v: f64| if allow_zero { v >= 0.0 } else { v > 0.0 };
        if !ok(self.start) || !ok(self.stop) {
            let bound = if allow_zero { "non-negative" } else { "positive" };
            out.push(format!("--{name}: lengths must be {bound}"));
        }
        if self.log && self.start <= 0.0 {
            out.push(format!("--{name}: a log sweep needs a positive start"));
        }
        out
    }
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |p: &str| -> Result<f64, String> {
            let v: f64 = p.trim().parse().map_err(|_| format!("`{p}` is not a number"))?;
            if v.is_finite() { Ok(v) } else { Err(format!("`{p}` is not finite")) }
        };
        match parts.as_slice() {
            [v] => Ok(Self::single(num(v)?)),
            [a, b, n] | [a, b, n, _] => {
                let log = match parts.get(3).map(|t| t.trim()) {
                    None | Some("lin") => false,
                    Some("log") => true,
                    Some(t) => return Err(format!("unknown spacing `{t}` (use lin or log)")),
                };
                let count = n.trim().parse().map_err(|_| format!("`{n}` is not a point count"))?;
                Ok(Self { start: num(a)?, stop: num(b)?, count, log })
            }
            _ => Err(format!("malformed sweep `{s}`; expected start:stop:count[:log]")),
        }
    }
}

impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.count == 1 {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}:{}:{}{}", self.start, self.stop, self.count, if self.log { ":log" } else { "" })
        }
    }
}

/// Inclusive layer range `first:last[:step]`, or a single count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LayerRange {
    pub first: u32,
    pub last: u32,
    pub step: u32,
}

impl LayerRange {
    pub fn values(&self) -> Vec<u32> {
        (self.first..=self.last).step_by(self.step.max(1) as usize).collect()
    }
}

impl FromStr for LayerRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let int = |p: &str| -> Result<u32, String> { p.trim().parse().map_err(|_| format!("`{p}` is not a layer count")) };
        let parts: Vec<&str> = s.trim().split(':').collect();
        let (first, last, step) = match parts.as_slice() {
            [n] => (int(n)?, int(n)?, 1),
            [a, b] => (int(a)?, int(b)?, 1),
            [a, b, c] => (int(a)?, int(b)?, int(c)?),
            _ => return Err(format!("malformed layer range `{s}`; expected first:last[:step]")),
        };
        if last < first || step == 0 {
            return Err(format!("layer range `{s}` is empty"));
        }
        Ok(Self { first, last, step })
    }
}

impl fmt::Display for LayerRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.first, self.last, self.step)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sweeps() {
        let s: Sweep = "0.4:10:100".parse().unwrap();
        assert_eq!(s.count, 100);
        let v = s.values();
        assert_eq!((v[0], v[99]), (0.4, 10.0));
        let l: Sweep = "1:100:3:log".parse().unwrap();
        let lv = l.values();
        assert!((lv[1] - 10.0).abs() < 1e-12 && lv[2] == 100.0);
        assert_eq!("2.5".parse::<Sweep>().unwrap().values(), vec![2.5]);
        assert!("1:2".parse::<Sweep>().is_err());
        assert!("a:2:3".parse::<Sweep>().is_err());
        assert!("1:2:3:cubic".parse::<Sweep>().is_err());
        assert!(!"5:1:3".parse::<Sweep>().unwrap().problems("gap", false).is_empty());
        assert!(!"0:1:3:log".parse::<Sweep>().unwrap().problems("gap", true).is_empty());
    }

    #[test]
    fn parses_layers() {
        assert_eq!("0:12".parse::<LayerRange>().unwrap().values().len(), 13);
        assert_eq!("0:12:4".parse::<LayerRange>().unwrap().values(), vec![0, 4, 8, 12]);
        assert_eq!("3".parse::<LayerRange>().unwrap().values(), vec![3]);
        assert!("4:1".parse::<LayerRange>().is_err());
    }
}
