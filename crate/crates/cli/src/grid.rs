//! Grid syntax: `a:b:count` (inclusive endpoints) or a comma list.

use crate::CliError;

pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let text = text.trim();
    let bad = |why: &str| CliError::Usage(format!("bad grid `{text}`: {why}"));
    if text.is_empty() {
        return Err(bad("empty"));
    }
    let num = |s: &str| -> Result<f64, CliError> {
        let v: f64 = s.trim().parse().map_err(|_| bad(&format!("`{s}` is not a number")))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad("non-finite value"))
        }
    };
    let parts: Vec<&str> = text.split(':').collect();
    match parts.len() {
        1 => text.split(',').map(num).collect(),
        3 => {
            let (a, b) = (num(parts[0])?, num(parts[1])?);
            let count: usize = parts[2]
                .trim()
                .parse()
                .map_err(|_| bad("count must be a positive integer"))?;
            match count {
                0 => Err(bad("count must be positive")),
                1 if a == b => Ok(vec![a]),
                1 => Err(bad("a single node needs a == b")),
                _ => Ok((0..count)
                    .map(|i| {
                        if i + 1 == count {
                            b
                        } else {
                            a + (b - a) * i as f64 / (count - 1) as f64
                        }
                    })
                    .collect()),
            }
        }
        _ => Err(bad("expected `a:b:count` or a comma list")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lists() {
        let g = parse_grid("-2:2:41").unwrap();
        assert_eq!(g.len(), 41);
        assert_eq!((g[0], g[20], g[40]), (-2.0, 0.0, 2.0));
        assert_eq!(parse_grid("0.25, 0.5,1").unwrap(), vec![0.25, 0.5, 1.0]);
        assert_eq!(parse_grid("3:3:1").unwrap(), vec![3.0]);
        for bad in ["", "1:2", "1:2:0", "a,b", "1:2:3:4", "0:1:x", "inf"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }
}
