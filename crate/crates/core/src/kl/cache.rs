//! On-disk persistence of KL tables as JSON lines.
//!
//! The first line is `GOLDIE-KL v1 N=<n>`; each further line is a record
//! `{"x":[...],"y":[...],"p":[c0,c1,...]}` for a nonzero `P_{x,y}`. Records
//! are written in build order so that reloading reproduces the interned ids
//! exactly.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symgroup::Permutation;

use super::table::{Interner, KlTable, UniPoly};

pub const CACHE_VERSION: &str = "v1";

#[derive(Serialize, Deserialize)]
struct Record {
    x: Permutation,
    y: Permutation,
    p: UniPoly,
}

/// What [`load_or_build`] did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    /// No cache directory was configured.
    Uncached,
    Loaded(PathBuf),
    Built(PathBuf),
    /// The existing file was unusable and has been replaced.
    Rebuilt { path: PathBuf, reason: String },
}

pub fn header(n: usize) -> String {
    format!("GOLDIE-KL {CACHE_VERSION} N={n}")
}

pub fn cache_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("kl-s{n}.jsonl"))
}

/// Pairs `(x, y)` in build order: `y` by increasing length (ties by index),
/// then `x` by index.
fn build_order(table: &KlTable) -> Vec<usize> {
    let mut ys: Vec<usize> = (0..table.size()).collect();
    ys.sort_by_key(|&y| table.perms()[y].length());
    ys
}

/// Write atomically: a temporary file in the same directory, then rename.
pub fn write(table: &KlTable, dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, table.n());
    let tmp = dir.join(format!(".kl-s{}.{}.tmp", table.n(), std::process::id()));
    {
        let mut out = BufWriter::new(fs::File::create(&tmp)?);
        writeln!(out, "{}", header(table.n()))?;
        for y in build_order(table) {
            for x in 0..table.size() {
                let p = table.poly_by_index(x, y);
                if p.is_zero() {
                    continue;
                }
                let rec = Record { x: table.perms()[x].clone(), y: table.perms()[y].clone(), p: p.clone() };
                serde_json::to_writer(&mut out, &rec)?;
                out.write_all(b"\n")?;
            }
        }
        out.flush()?;
    }
    fs::rename(&tmp, &path)?;
    Ok(path)
}

/// Read a cache file. `Ok(None)` if it does not exist; a `Cache` error if it
/// exists but is unusable (wrong header, malformed or inconsistent records).
pub fn read(dir: &Path, n: usize) -> Result<Option<KlTable>> {
    let path = cache_path(dir, n);
    let file = match fs::File::open(&path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut lines = BufReader::new(file).lines();
    let first = lines.next().transpose()?.unwrap_or_default();
    if first.trim() != header(n) {
        return Err(Error::Cache(format!(
            "{} has header {:?}, expected {:?}",
            path.display(),
            first.trim(),
            header(n)
        )));
    }
    let mut table = KlTable::empty(n);
    let mut interner = Interner::new();
    for (k, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: Record = serde_json::from_str(&line)
            .map_err(|e| Error::Cache(format!("{} line {}: {e}", path.display(), k + 2)))?;
        if rec.x.n() != n || rec.y.n() != n {
            return Err(Error::Cache(format!("{} line {}: wrong N", path.display(), k + 2)));
        }
        let id = interner.intern(rec.p);
        table.set_id(rec.x.rank(), rec.y.rank(), id);
    }
    table.finish(interner.polys);
    for x in 0..table.size() {
        if table.poly_by_index(x, x) != &UniPoly::one() {
            return Err(Error::Cache(format!("{} is incomplete", path.display())));
        }
    }
    Ok(Some(table))
}

/// Load the table for `S_n` from `dir`, or build it (in parallel) and write
/// it there. Unusable files are rebuilt and replaced.
pub fn load_or_build(n: usize, dir: Option<&Path>) -> Result<(KlTable, CacheStatus)> {
    let Some(dir) = dir else {
        return Ok((KlTable::build(n)?, CacheStatus::Uncached));
    };
    match read(dir, n) {
        Ok(Some(table)) => Ok((table, CacheStatus::Loaded(cache_path(dir, n)))),
        Ok(None) => {
            let table = KlTable::build(n)?;
            let path = write(&table, dir)?;
            Ok((table, CacheStatus::Built(path)))
        }
        Err(Error::Cache(reason)) => {
            let table = KlTable::build(n)?;
            let path = write(&table, dir)?;
            Ok((table, CacheStatus::Rebuilt { path, reason }))
        }
        Err(e) => Err(e),
    }
}
