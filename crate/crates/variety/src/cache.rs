//! JSON-lines persistence for `#S_{g,t}` counts.
//!
//! One file per spec tuple, one record per line. Records carry a hash of the class representative and torus element
//! so a change in enumeration order invalidates them instead of being silently reused.

use crate::VarietyError;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub spec: [u64; 4],
    pub class: usize,
    pub t: usize,
    pub count: u64,
    pub v: u32,
    /// Hash of the representative's and torus element's digits.
    pub key: u64,
}

type Key = ([u64; 4], usize, usize);

/// Counts keyed by (spec, class, t), persisted as one append-only file per spec tuple.
pub struct CountCache {
    dir: Option<PathBuf>,
    map: HashMap<Key, (u64, u64)>,
    pub hits: u64,
    pub misses: u64,
    /// Lines that failed to parse or carried another format version.
    pub skipped: u64,
}

fn cache_err(e: impl std::fmt::Display) -> VarietyError {
    VarietyError::Cache(e.to_string())
}

fn spec_file(dir: &Path, spec: [u64; 4]) -> PathBuf {
    dir.join(format!("scounts-{}-{}-{}-{}.jsonl", spec[0], spec[1], spec[2], spec[3]))
}

impl CountCache {
    pub fn in_memory() -> CountCache {
        CountCache { dir: None, map: HashMap::new(), hits: 0, misses: 0, skipped: 0 }
    }

    /// Loads every `scounts-*.jsonl` under `dir`. Bad lines are skipped with a warning.
    pub fn open(dir: &Path) -> Result<CountCache, VarietyError> {
        fs::create_dir_all(dir).map_err(cache_err)?;
        let mut cache = CountCache { dir: Some(dir.to_path_buf()), ..CountCache::in_memory() };
        let mut files: Vec<PathBuf> = fs::read_dir(dir)
            .map_err(cache_err)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| {
                let name = p.file_name().and_then(|n| n.to_str()).unwrap_or("");
                name.starts_with("scounts-") && name.ends_with(".jsonl")
            })
            .collect();
        files.sort();
        for path in files {
            let file = fs::File::open(&path).map_err(cache_err)?;
            for (i, line) in BufReader::new(file).lines().enumerate() {
                let line = line.map_err(cache_err)?;
                match serde_json::from_str::<CountRecord>(&line) {
                    Ok(r) if r.v == FORMAT_VERSION => {
                        cache.map.insert((r.spec, r.class, r.t), (r.key, r.count));
                    }
                    _ => {
                        cache.skipped += 1;
                        eprintln!("warning: ignoring cache line {} of {}", i + 1, path.display());
                    }
                }
            }
        }
        Ok(cache)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&mut self, spec: [u64; 4], class: usize, t: usize, key: u64) -> Option<u64> {
        match self.map.get(&(spec, class, t)) {
            Some(&(k, c)) if k == key => {
                self.hits += 1;
                Some(c)
            }
            _ => {
                self.misses += 1;
                None
            }
        }
    }

    pub fn insert(&mut self, spec: [u64; 4], class: usize, t: usize, key: u64, count: u64) -> Result<(), VarietyError> {
        self.map.insert((spec, class, t), (key, count));
        if let Some(dir) = &self.dir {
            let rec = CountRecord { spec, class, t, count, v: FORMAT_VERSION, key };
            let mut f = OpenOptions::new().create(true).append(true).open(spec_file(dir, spec)).map_err(cache_err)?;
            let line = serde_json::to_string(&rec).map_err(cache_err)?;
            writeln!(f, "{line}").map_err(cache_err)?;
        }
        Ok(())
    }

    /// Rewrites each spec file from memory in sorted order, dropping duplicates and bad lines.
    pub fn compact(&self) -> Result<(), VarietyError> {
        let Some(dir) = &self.dir else { return Ok(()) };
        let mut by_spec: HashMap<[u64; 4], Vec<CountRecord>> = HashMap::new();
        for (&(spec, class, t), &(key, count)) in &self.map {
            by_spec.entry(spec).or_default().push(CountRecord { spec, class, t, count, v: FORMAT_VERSION, key });
        }
        for (spec, mut recs) in by_spec {
            recs.sort_by_key(|r| (r.class, r.t));
            let path = spec_file(dir, spec);
            let tmp = path.with_extension("jsonl.tmp");
            let mut body = String::new();
            for r in &recs {
                body.push_str(&serde_json::to_string(r).map_err(cache_err)?);
                body.push('\n');
            }
            fs::write(&tmp, body).map_err(cache_err)?;
            fs::rename(&tmp, &path).map_err(cache_err)?;
        }
        Ok(())
    }
}

/// FNV-1a over raw digit values.
pub fn digit_hash(parts: &[&[u32]]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for part in parts {
        for &v in *part {
            for b in v.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        }
        h ^= 0xff;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}
