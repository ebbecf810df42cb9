//! Text syntaxes accepted on the command line.

use crate::constructions::{FillingSpec, ParamChoice, ZeroBasedBlockWeighted};
use crate::lattice::{LatticeBox, LatticePoint};

use super::CliError;

/// Parses `"1000000"`, `"1e6"` or `"2.5e5"` into an exact count.
pub fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let f: f64 = s.parse().map_err(|_| format!("not a count: {s:?}"))?;
    if f < 0.0 || f.fract() != 0.0 || f > 9.0e15 {
        return Err(format!("not an exact non-negative count: {s:?}"));
    }
    Ok(f as u64)
}

fn parse_range(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Usage(format!("expected a range like -5..5, got {s:?}"));
    let (a, b) = s.trim().split_once("..").ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

/// Box syntax: `a..b` for every axis, `a..b,c..d,...` per axis, or
/// `[lo,..]..[hi,..]`.
pub fn parse_box(s: &str, dim: usize) -> Result<LatticeBox, CliError> {
    let s = s.trim();
    let bx = if s.starts_with('[') {
        s.parse::<LatticeBox>()
            .map_err(|e| CliError::Usage(e.to_string()))?
    } else {
        let ranges = s
            .split(',')
            .map(parse_range)
            .collect::<Result<Vec<_>, _>>()?;
        let ranges = match ranges.len() {
            1 => vec![ranges[0]; dim],
            n if n == dim => ranges,
            n => {
                return Err(CliError::Usage(format!(
                    "box has {n} ranges but the lattice has dimension {dim}"
                )))
            }
        };
        let lo = ranges.iter().map(|r| r.0).collect();
        let hi = ranges.iter().map(|r| r.1).collect();
        LatticeBox::new(
            LatticePoint::new(lo).map_err(|e| CliError::Usage(e.to_string()))?,
            LatticePoint::new(hi).map_err(|e| CliError::Usage(e.to_string()))?,
        )
        .map_err(|e| CliError::Usage(e.to_string()))?
    };
    if bx.dim() != dim {
        return Err(CliError::Usage(format!(
            "box has dimension {} but the lattice has dimension {dim}",
            bx.dim()
        )));
    }
    Ok(bx)
}

pub fn parse_labels(s: &str) -> Result<Vec<u32>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad part label {t:?}")))
        })
        .collect()
}

fn key_values(body: &str) -> Result<Vec<(String, u32)>, CliError> {
    body.split(',')
        .filter(|kv| !kv.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("expected key=value, got {kv:?}")))?;
            let v = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad value in {kv:?}")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn lookup(kvs: &[(String, u32)], key: &str, default: Option<u32>) -> Result<u32, CliError> {
    kvs.iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| *v)
        .or(default)
        .ok_or_else(|| CliError::Usage(format!("missing {key}=...")))
}

/// `timestwo:n=2` or `blockweighted:m=1,n=2`, with `param` as the free function.
pub fn parse_filling(s: &str, param: Option<&ParamChoice>) -> Result<FillingSpec, CliError> {
    let (kind, body) = s.split_once(':').unwrap_or((s, ""));
    let kvs = key_values(body)?;
    let choice = param.cloned().unwrap_or(ParamChoice::ZeroShift);
    let spec = match kind.trim() {
        "timestwo" => {
            let n = lookup(&kvs, "n", None)?;
            FillingSpec::times_two(n, choice.with_codomain(n)?)?
        }
        "blockweighted" => {
            let m = lookup(&kvs, "m", None)?;
            let n = lookup(&kvs, "n", None)?;
            FillingSpec::block_weighted(m, n, choice.with_codomain(2 * n)?)?
        }
        other => return Err(CliError::Usage(format!("unknown filling family {other:?}"))),
    };
    Ok(spec)
}

/// `blockweighted0` with optional `:m=..,n=..` (defaults 1, 1).
pub fn parse_negative(s: &str) -> Result<ZeroBasedBlockWeighted, CliError> {
    let (kind, body) = s.split_once(':').unwrap_or((s, ""));
    if kind.trim() != "blockweighted0" {
        return Err(CliError::Usage(format!("unknown negative family {kind:?}")));
    }
    let kvs = key_values(body)?;
    Ok(ZeroBasedBlockWeighted::plain(
        lookup(&kvs, "m", Some(1))?,
        lookup(&kvs, "n", Some(1))?,
    )?)
}

/// A slice pattern such as `*,*,0`: exactly two free axes, the rest fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlicePattern {
    pub free: [usize; 2],
    pub fixed: Vec<Option<i64>>,
}

pub fn parse_slice(s: Option<&str>, dim: usize) -> Result<SlicePattern, CliError> {
    let entries: Vec<Option<i64>> = match s {
        None => {
            if dim < 2 {
                return Err(CliError::Usage(
                    "slices need a lattice of dimension >= 2".into(),
                ));
            }
            (0..dim)
                .map(|i| if i < 2 { None } else { Some(0) })
                .collect()
        }
        Some(s) => s
            .split(',')
            .map(|t| match t.trim() {
                "*" => Ok(None),
                v => v
                    .parse()
                    .map(Some)
                    .map_err(|_| CliError::Usage(format!("bad slice entry {v:?}"))),
            })
            .collect::<Result<_, _>>()?,
    };
    if entries.len() != dim {
        return Err(CliError::Usage(format!(
            "slice has {} entries but the lattice has dimension {dim}",
            entries.len()
        )));
    }
    let free: Vec<usize> = (0..dim).filter(|&i| entries[i].is_none()).collect();
    if free.len() != 2 {
        return Err(CliError::Usage(format!(
            "a slice needs exactly two free coordinates ('*'), found {}",
            free.len()
        )));
    }
    Ok(SlicePattern {
        free: [free[0], free[1]],
        fixed: entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(parse_count("1e6"), Ok(1_000_000));
        assert_eq!(parse_count("250000"), Ok(250_000));
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
    }

    #[test]
    fn boxes() {
        let b = parse_box("-5..5", 3).unwrap();
        assert_eq!(b.to_string(), "[-5,-5,-5]..[5,5,5]");
        let b = parse_box("0..2,-1..1", 2).unwrap();
        assert_eq!(b.to_string(), "[0,-1]..[2,1]");
        assert!(parse_box("0..2,-1..1", 3).is_err());
        assert!(parse_box("[0,0]..[1,1]", 2).is_ok());
        assert!(parse_box("3..1", 1).is_err());
    }

    #[test]
    fn fillings() {
        assert_eq!(
            parse_filling("timestwo:n=2", None).unwrap(),
            FillingSpec::times_two_plain(2).unwrap()
        );
        assert_eq!(
            parse_filling("blockweighted:m=1,n=2", None).unwrap(),
            FillingSpec::block_weighted_plain(1, 2).unwrap()
        );
        assert!(parse_filling("timestwo", None).is_err());
        assert!(parse_filling("other:n=1", None).is_err());
        assert_eq!(parse_negative("blockweighted0").unwrap().m, 1);
        assert_eq!(parse_negative("blockweighted0:m=2,n=1").unwrap().m, 2);
    }

    #[test]
    fn slices() {
        assert_eq!(parse_slice(Some("*,*,0"), 3).unwrap().free, [0, 1]);
        assert_eq!(parse_slice(Some("1,*,*"), 3).unwrap().free, [1, 2]);
        assert!(parse_slice(Some("*,0,0"), 3).is_err());
        assert!(parse_slice(Some("*,*"), 3).is_err());
        assert_eq!(
            parse_slice(None, 4).unwrap().fixed,
            vec![None, None, Some(0), Some(0)]
        );
    }
}
