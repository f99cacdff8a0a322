//! Flat parameter maps with typed accessors.

use serde_json::{Map, Value};

use crate::grid::parse_grid;
use crate::{CliError, Result};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params(pub Map<String, Value>);

fn usage(msg: String) -> CliError {
    CliError::Usage(msg)
}

impl Params {
    pub fn new(map: Map<String, Value>) -> Self {
        Params(map)
    }

    /// Overlays `other`; its entries win.
    pub fn merge(&mut self, other: Params) {
        for (k, v) in other.0 {
            self.0.insert(k, v);
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.0.insert(key.to_string(), value.into());
    }

    /// Rejects keys outside `allowed`.
    pub fn allow(&self, allowed: &[&str]) -> Result<()> {
        match self.0.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(usage(format!(
                "unknown parameter `{k}` (expected one of: {})",
                allowed.join(", ")
            ))),
            None => Ok(()),
        }
    }

    fn get(&self, key: &str) -> Option<&Value> {
        self.0.get(key).filter(|v| !v.is_null())
    }

    fn missing(key: &str) -> CliError {
        usage(format!("missing parameter `{key}`"))
    }

    pub fn f64_opt(&self, key: &str) -> Result<Option<f64>> {
        let Some(v) = self.get(key) else { return Ok(None) };
        let x = match v {
            Value::Number(n) => n.as_f64(),
            Value::String(s) => s.trim().parse().ok(),
            _ => None,
        };
        match x {
            Some(x) if x.is_finite() => Ok(Some(x)),
            _ => Err(usage(format!("parameter `{key}` must be a finite number, got {v}"))),
        }
    }

    pub fn f64(&self, key: &str) -> Result<f64> {
        self.f64_opt(key)?.ok_or_else(|| Self::missing(key))
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        Ok(self.f64_opt(key)?.unwrap_or(default))
    }

    pub fn int_opt(&self, key: &str) -> Result<Option<i64>> {
        match self.f64_opt(key)? {
            None => Ok(None),
            Some(x) if x.fract() == 0.0 && x.abs() < 1e15 => Ok(Some(x as i64)),
            Some(x) => Err(usage(format!("parameter `{key}` must be an integer, got {x}"))),
        }
    }

    pub fn u32(&self, key: &str) -> Result<u32> {
        let v = self.int_opt(key)?.ok_or_else(|| Self::missing(key))?;
        u32::try_from(v).map_err(|_| usage(format!("parameter `{key}` must be a non-negative integer, got {v}")))
    }

    pub fn u32_or(&self, key: &str, default: u32) -> Result<u32> {
        if self.get(key).is_none() {
            return Ok(default);
        }
        self.u32(key)
    }

    pub fn text_opt(&self, key: &str) -> Result<Option<String>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(Value::Number(n)) => Ok(Some(n.to_string())),
            Some(v) => Err(usage(format!("parameter `{key}` must be text, got {v}"))),
        }
    }

    pub fn text_or(&self, key: &str, default: &str) -> Result<String> {
        Ok(self.text_opt(key)?.unwrap_or_else(|| default.to_string()))
    }

    pub fn bool_or(&self, key: &str, default: bool) -> Result<bool> {
        match self.get(key) {
            None => Ok(default),
            Some(Value::Bool(b)) => Ok(*b),
            Some(v) => Err(usage(format!("parameter `{key}` must be true or false, got {v}"))),
        }
    }

    /// A grid given as `a:b:count`, a comma list, a single number or a JSON
    /// array of numbers.
    pub fn grid_opt(&self, key: &str) -> Result<Option<Vec<f64>>> {
        let Some(v) = self.get(key) else { return Ok(None) };
        let g = match v {
            Value::String(s) => parse_grid(s)?,
            Value::Number(_) => vec![self.f64(key)?],
            Value::Array(a) => a
                .iter()
                .map(|x| x.as_f64().filter(|x| x.is_finite()))
                .collect::<Option<Vec<_>>>()
                .filter(|g| !g.is_empty())
                .ok_or_else(|| usage(format!("parameter `{key}` must be a non-empty list of numbers")))?,
            _ => return Err(usage(format!("parameter `{key}` is not a grid: {v}"))),
        };
        Ok(Some(g))
    }

    pub fn grid(&self, key: &str) -> Result<Vec<f64>> {
        self.grid_opt(key)?.ok_or_else(|| Self::missing(key))
    }

    pub fn grid_or(&self, key: &str, default: &str) -> Result<Vec<f64>> {
        match self.grid_opt(key)? {
            Some(g) => Ok(g),
            None => parse_grid(default),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn p(v: Value) -> Params {
        Params(v.as_object().unwrap().clone())
    }

    #[test]
    fn typed_access() {
        let mut a = p(json!({"alpha": 1.5, "n": "2", "xgrid": "-1:1:3", "ygrid": [0.5, 1], "flag": true}));
        assert_eq!(a.f64("alpha").unwrap(), 1.5);
        assert_eq!(a.u32("n").unwrap(), 2);
        assert_eq!(a.grid("xgrid").unwrap(), vec![-1.0, 0.0, 1.0]);
        assert_eq!(a.grid("ygrid").unwrap(), vec![0.5, 1.0]);
        assert!(a.bool_or("flag", false).unwrap());
        assert!(a.f64("beta").is_err());
        assert!(a.u32("alpha").is_err());
        assert!(a.allow(&["alpha", "n"]).is_err());
        a.merge(p(json!({"alpha": 1.3})));
        assert_eq!(a.f64("alpha").unwrap(), 1.3);
    }
}
