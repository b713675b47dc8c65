use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use k3rm::field::{parse_rational, Q};
use k3rm::numfield::NumberField;
use k3rm::rmhodge::RMStructure;
use k3rm::serial::{parse_poly, RMStructureJson};
use k3rm::zlattice::{fixture, IntMatrix, IntegerLattice};
use serde_json::Value;

/// `"Q"`, a radicand `d` for `Q(√d)`, or a monic polynomial in `x`.
pub fn parse_field(s: &str) -> Result<NumberField> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(NumberField::rationals());
    }
    if let Ok(d) = t.parse::<i64>() {
        return Ok(NumberField::quadratic(d)?);
    }
    Ok(NumberField::new(parse_poly(t)?)?)
}

/// `e3` (1-based unit vector) or a comma-separated list of rationals.
pub fn parse_vector(s: &str, d: usize) -> Result<Vec<Q>> {
    let t = s.trim();
    if let Some(idx) = t.strip_prefix('e') {
        let i: usize = idx.parse().with_context(|| format!("bad unit vector {t:?}"))?;
        if i == 0 || i > d {
            bail!("unit vector {t} out of range for dimension {d}");
        }
        return Ok((0..d).map(|j| Q::from_integer(((j + 1 == i) as i64).into())).collect());
    }
    let v = t
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split([',', ';'])
        .map(|x| parse_rational(x.trim().trim_matches('"')).map_err(anyhow::Error::from))
        .collect::<Result<Vec<_>>>()?;
    if v.len() != d {
        bail!("vector {t:?} has length {}, expected {d}", v.len());
    }
    Ok(v)
}

pub fn read_structure(path: &Path) -> Result<RMStructure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let j: RMStructureJson = serde_json::from_str(&text).context("parsing structure JSON")?;
    Ok(j.to_structure()?)
}

/// A fixture name, a JSON integer matrix, or a path to a file holding one.
pub fn parse_int_matrix(s: &str) -> Result<IntMatrix> {
    let t = s.trim();
    let text = if t.starts_with('[') { t.to_string() } else { fs::read_to_string(t)? };
    let v: Value = serde_json::from_str(&text).context("parsing integer matrix")?;
    Ok(k3rm::serial::int_matrix_from_json(&v)?)
}

pub fn parse_lattice(s: &str) -> Result<IntegerLattice> {
    if let Some(l) = fixture(s.trim()) {
        return Ok(l);
    }
    if !s.trim().starts_with('[') && !Path::new(s.trim()).exists() {
        bail!("unknown fixture {s:?}; known: {:?}", k3rm::zlattice::FIXTURE_NAMES);
    }
    Ok(IntegerLattice::new(parse_int_matrix(s)?)?)
}

/// Splices the keys of a `--json FILE` object into the argument list as
/// `--key value` flags; keys also given explicitly are skipped so those win.
pub fn expand_json_args(args: Vec<String>) -> Result<Vec<String>> {
    let Some(pos) = args.iter().position(|a| a == "--json") else {
        return Ok(args);
    };
    let path = args.get(pos + 1).ok_or_else(|| anyhow!("--json needs a file"))?.clone();
    let mut rest: Vec<String> = args[..pos].to_vec();
    rest.extend(args[pos + 2..].iter().cloned());
    let text = fs::read_to_string(&path).with_context(|| format!("reading {path}"))?;
    let obj: Value = serde_json::from_str(&text).context("parsing --json input")?;
    let obj = obj.as_object().ok_or_else(|| anyhow!("--json input must be an object"))?;
    let mut flags = Vec::new();
    for (k, v) in obj {
        let flag = format!("--{}", k.replace('_', "-"));
        if rest.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}="))) {
            continue;
        }
        match v {
            Value::Bool(true) => flags.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::String(s) => {
                flags.push(flag);
                flags.push(s.clone());
            }
            Value::Number(n) => {
                flags.push(flag);
                flags.push(n.to_string());
            }
            Value::Array(items) if items.iter().all(|x| x.is_string() || x.is_number()) => {
                flags.push(flag);
                let parts: Vec<String> = items
                    .iter()
                    .map(|x| x.as_str().map(str::to_string).unwrap_or_else(|| x.to_string()))
                    .collect();
                flags.push(parts.join(";"));
            }
            other => {
                flags.push(flag);
                flags.push(other.to_string());
            }
        }
    }
    // after the program name, global flags and the subcommand path
    let mut at = 1;
    while at < rest.len() && (!rest[at].starts_with('-') || rest[at] == "--pretty") {
        at += 1;
    }
    rest.splice(at..at, flags);
    Ok(rest)
}
