//! Exhaustive enumeration of dilation classes with resumable checkpoints.
//!
//! The lexicographically smallest dilate of an `n`-set starts with `1` when
//! `0 ∉ A` and with `0, 1` when `0 ∈ A`, so the candidates are `{0,1} ∪ S`
//! (`S` an `(n−2)`-subset of `{2..p−1}`) followed by `{1} ∪ S` (`S` an
//! `(n−1)`-subset). For `n = 1` they are `{0}` and `{1}`. Each candidate is
//! kept only if it is canonical, so every class is visited exactly once.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{exponent, is_canonical, objective, SearchMode, SearchRecord};
use crate::combin::{binomial, next_combination, unrank, Combinations};
use crate::error::{Error, Result};
use crate::field::{make_field, Elem, Field};
use crate::fset::FSet;
use crate::guards::Guards;
use crate::ops::{product_set_with, sumset_with, ProductMethod, SumsetMethod};

#[derive(Clone, Debug)]
pub struct ExhaustiveOptions {
    /// JSON checkpoint file; resumed from if it exists.
    pub cache: Option<PathBuf>,
    /// Candidates between checkpoints.
    pub checkpoint_every: u64,
    /// Stop after this many checkpoint intervals (for interrupted runs).
    pub max_chunks: Option<u64>,
    pub threads: Option<usize>,
    pub guards: Guards,
}

impl Default for ExhaustiveOptions {
    fn default() -> Self {
        ExhaustiveOptions {
            cache: None,
            checkpoint_every: 1_000_000,
            max_chunks: None,
            threads: None,
            guards: Guards::default(),
        }
    }
}

pub enum Exhaustive {
    Done(SearchRecord),
    Suspended { cursor: u64 },
}

/// On-disk checkpoint. `cursor` counts candidates already examined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheState {
    pub p: u32,
    pub n: usize,
    pub mode: SearchMode,
    pub cursor: u64,
    pub best_value: Option<usize>,
    pub witnesses: Vec<Vec<Elem>>,
    pub seed: Option<u64>,
    pub classes_visited: u64,
}

impl CacheState {
    pub fn load(path: &Path) -> Result<CacheState> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    /// Write to a sibling temporary file, then rename over `path`.
    pub fn store(&self, path: &Path) -> Result<()> {
        let dir = match path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(serde_json::to_string_pretty(self)?.as_bytes())?;
        tmp.write_all(b"\n")?;
        tmp.persist(path).map_err(|e| Error::Cache(e.to_string()))?;
        Ok(())
    }
}

struct Family {
    prefix: Vec<Elem>,
    extra: usize,
    count: u64,
}

fn families(p: u32, n: usize) -> Vec<Family> {
    let pool = (p - 2) as u64;
    let fam = |prefix: Vec<Elem>| {
        let extra = n - prefix.len();
        Family {
            count: binomial(pool, extra as u64) as u64,
            prefix,
            extra,
        }
    };
    if n == 1 {
        vec![fam(vec![0]), fam(vec![1])]
    } else {
        vec![fam(vec![0, 1]), fam(vec![1])]
    }
}

#[derive(Default)]
struct Partial {
    best: Option<usize>,
    witnesses: Vec<FSet>,
    visited: u64,
}

impl Partial {
    fn offer(&mut self, value: usize, set: FSet) {
        match self.best {
            Some(b) if value > b => {}
            Some(b) if value == b => self.witnesses.push(set),
            _ => {
                self.best = Some(value);
                self.witnesses = vec![set];
            }
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        self.visited += other.visited;
        match (self.best, other.best) {
            (_, None) => {}
            (None, _) => {
                self.best = other.best;
                self.witnesses = other.witnesses;
            }
            (Some(a), Some(b)) if b < a => {
                self.best = other.best;
                self.witnesses = other.witnesses;
            }
            (Some(a), Some(b)) if a == b => self.witnesses.extend(other.witnesses),
            _ => {}
        }
        self.witnesses.sort();
        self
    }
}

/// Candidates `[lo, hi)` of one family, examined serially.
fn scan_block(field: &Field, fam: &Family, lo: u64, hi: u64) -> Partial {
    let mut out = Partial::default();
    let pool = (field.p() - 2) as usize;
    let Some(mut idx) = unrank(pool, fam.extra, lo as u128) else {
        return out;
    };
    for _ in lo..hi {
        let set = FSet::from_elems(
            field,
            fam.prefix
                .iter()
                .copied()
                .chain(idx.iter().map(|&i| i as Elem + 2)),
        );
        if is_canonical(&set) {
            out.visited += 1;
            let value = objective(&set).expect("nonempty candidate");
            out.offer(value, set);
        }
        if !next_combination(&mut idx, pool) {
            break;
        }
    }
    out
}

const BLOCK: u64 = 4096;

/// Candidates `[lo, hi)` of the global order, in parallel blocks.
fn scan_range(field: &Field, fams: &[Family], lo: u64, hi: u64) -> Partial {
    let mut blocks = Vec::new();
    let mut base = 0;
    for fam in fams {
        let (s, e) = (lo.max(base), hi.min(base + fam.count));
        let mut b = s;
        while b < e {
            let t = (b + BLOCK).min(e);
            blocks.push((fam, b - base, t - base));
            b = t;
        }
        base += fam.count;
    }
    blocks
        .par_iter()
        .map(|&(fam, s, e)| scan_block(field, fam, s, e))
        .reduce(Partial::default, Partial::merge)
}

pub fn exhaustive_extremal(p: u64, n: usize) -> Result<SearchRecord> {
    match exhaustive_extremal_with(p, n, &ExhaustiveOptions::default())? {
        Exhaustive::Done(r) => Ok(r),
        Exhaustive::Suspended { .. } => unreachable!("no chunk limit"),
    }
}

pub fn exhaustive_extremal_with(p: u64, n: usize, opts: &ExhaustiveOptions) -> Result<Exhaustive> {
    let field = make_field(p)?;
    let p = field.p();
    if n == 0 || n > p as usize {
        return Err(Error::BadParameters(format!(
            "need 1 <= n <= p, got n = {n}"
        )));
    }
    let classes = binomial(p as u64, n as u64) / (p as u128 - 1);
    if classes > opts.guards.max_classes as u128 {
        return Err(Error::GuardExceeded(format!(
            "about {classes} dilation classes exceed the limit {}",
            opts.guards.max_classes
        )));
    }
    if opts.checkpoint_every == 0 {
        return Err(Error::BadParameters(
            "checkpoint interval must be positive".into(),
        ));
    }
    let run = || -> Result<Exhaustive> {
        let fams = families(p, n);
        let total: u64 = fams.iter().map(|f| f.count).sum();
        let mut state = CacheState {
            p,
            n,
            mode: SearchMode::Exhaustive,
            cursor: 0,
            best_value: None,
            witnesses: Vec::new(),
            seed: None,
            classes_visited: 0,
        };
        if let Some(path) = opts.cache.as_deref().filter(|p| p.exists()) {
            let saved = CacheState::load(path)?;
            if (saved.p, saved.n, saved.mode) != (p, n, SearchMode::Exhaustive) {
                return Err(Error::Cache(format!(
                    "{} holds a different search (p = {}, n = {})",
                    path.display(),
                    saved.p,
                    saved.n
                )));
            }
            state = saved;
        }
        let mut acc = Partial {
            best: state.best_value,
            witnesses: state
                .witnesses
                .iter()
                .map(|w| FSet::new(&field, w.iter().map(|&x| x as u64)))
                .collect::<Result<_>>()?,
            visited: state.classes_visited,
        };
        let mut chunks = 0;
        while state.cursor < total {
            if opts.max_chunks.is_some_and(|m| chunks >= m) {
                return Ok(Exhaustive::Suspended {
                    cursor: state.cursor,
                });
            }
            let hi = (state.cursor + opts.checkpoint_every).min(total);
            acc = acc.merge(scan_range(&field, &fams, state.cursor, hi));
            state.cursor = hi;
            state.best_value = acc.best;
            state.witnesses = acc.witnesses.iter().map(FSet::to_vec).collect();
            state.classes_visited = acc.visited;
            if let Some(path) = &opts.cache {
                state.store(path)?;
            }
            chunks += 1;
        }
        let best_value = acc.best.expect("at least one class");
        Ok(Exhaustive::Done(SearchRecord {
            p,
            n,
            mode: SearchMode::Exhaustive,
            best_value,
            witnesses: acc.witnesses,
            exponent: exponent(best_value, n),
            seed: None,
            classes_visited: acc.visited,
        }))
    };
    match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::BadParameters(e.to_string()))?
            .install(run),
        None => run(),
    }
}

/// Minimum of `max{|A+A|, |AA|}` over every `n`-subset, with the naive set
/// operations and no symmetry reduction.
pub fn naive_extremal_value(p: u64, n: usize) -> Result<usize> {
    let field = make_field(p)?;
    if n == 0 || n > field.p() as usize {
        return Err(Error::BadParameters(format!(
            "need 1 <= n <= p, got n = {n}"
        )));
    }
    let mut best = usize::MAX;
    for idx in Combinations::new(field.p() as usize, n) {
        let a = FSet::from_elems(&field, idx.iter().map(|&i| i as Elem));
        let s = sumset_with(&a, &a, crate::ops::Sign::Plus, SumsetMethod::Naive)?.len();
        let m = product_set_with(&a, &a, ProductMethod::Naive)?.len();
        best = best.min(s.max(m));
    }
    Ok(best)
}
