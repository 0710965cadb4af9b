//! Set literals: `1,2,5`, `@path`, `ap:start,step,len`, `gp:start,ratio,len`.

use std::fs;

use num_rational::Ratio;
use spw_core::{FSet, Field};

use crate::error::{usage, CliError};

fn int(tok: &str) -> Result<i64, CliError> {
    tok.trim()
        .parse::<i64>()
        .map_err(|_| usage(format!("not an integer: {tok:?}")))
}

fn progression(field: &Field, body: &str, geometric: bool) -> Result<FSet, CliError> {
    let parts: Vec<&str> = body.split(',').collect();
    let [start, step, len] = parts[..] else {
        return Err(usage(format!("expected start,step,len, got {body:?}")));
    };
    let (start, step, len) = (
        field.reduce(int(start)?),
        field.reduce(int(step)?),
        int(len)?,
    );
    if len < 1 {
        return Err(usage("progression length must be positive"));
    }
    let mut x = start;
    let mut out = Vec::with_capacity(len as usize);
    for _ in 0..len {
        out.push(x);
        x = if geometric {
            field.mul(x, step)
        } else {
            field.add(x, step)
        };
    }
    Ok(FSet::from_elems(field, out))
}

fn residues<'a>(field: &Field, toks: impl Iterator<Item = &'a str>) -> Result<FSet, CliError> {
    let mut out = Vec::new();
    for t in toks.map(str::trim).filter(|t| !t.is_empty()) {
        out.push(field.reduce(int(t)?));
    }
    Ok(FSet::from_elems(field, out))
}

pub fn parse_set(field: &Field, literal: &str) -> Result<FSet, CliError> {
    let literal = literal.trim();
    let set = if let Some(path) = literal.strip_prefix('@') {
        let text = fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
        residues(
            field,
            text.lines().map(|l| l.split('#').next().unwrap_or("")),
        )?
    } else if let Some(body) = literal.strip_prefix("ap:") {
        progression(field, body, false)?
    } else if let Some(body) = literal.strip_prefix("gp:") {
        progression(field, body, true)?
    } else {
        residues(field, literal.split(','))?
    };
    if set.is_empty() {
        return Err(usage(format!("set {literal:?} is empty")));
    }
    Ok(set)
}

pub fn parse_ratio(s: &str) -> Result<Ratio<u64>, CliError> {
    let bad = || usage(format!("expected num/den, got {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let (n, d) = (
        n.parse().map_err(|_| bad())?,
        d.parse::<u64>().map_err(|_| bad())?,
    );
    if d == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(n, d))
}
