//! The `cayley-v1` text format, JSON reports, and the plain-text cache.

use crate::cayley::CayleyTable;
use crate::error::{Error, Result};
use serde::Serialize;
use std::fs;
use std::path::PathBuf;

/// Parses the `cayley-v1` format: a line with `n`, then `n` lines of `n`
/// space-separated 0-based entries; trailing `#` comment lines allowed.
pub fn parse_table(text: &str) -> Result<CayleyTable> {
    let mut lines = text.lines().enumerate();
    let (ln, first) = lines
        .next()
        .ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let n: usize = first
        .trim()
        .parse()
        .map_err(|_| Error::Parse { line: ln + 1, msg: "expected the order n".into() })?;
    if n == 0 || n > 255 {
        return Err(Error::Parse { line: 1, msg: format!("unsupported order {n}") });
    }
    let mut cells = Vec::with_capacity(n * n);
    for _ in 0..n {
        let (ln, row) = lines
            .next()
            .ok_or(Error::Parse { line: n + 1, msg: format!("expected {n} rows") })?;
        let mut count = 0;
        for tok in row.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::Parse { line: ln + 1, msg: format!("bad entry '{tok}'") })?;
            if v >= n {
                return Err(Error::Parse {
                    line: ln + 1,
                    msg: format!("entry {v} out of range 0..{}", n - 1),
                });
            }
            cells.push(v as u8);
            count += 1;
        }
        if count != n {
            return Err(Error::Parse {
                line: ln + 1,
                msg: format!("expected {n} entries, found {count}"),
            });
        }
    }
    for (ln, rest) in lines {
        let t = rest.trim();
        if !t.is_empty() && !t.starts_with('#') {
            return Err(Error::Parse { line: ln + 1, msg: "trailing non-comment text".into() });
        }
    }
    CayleyTable::from_cells(n, cells)
}

/// Parses and additionally rejects tables that fail the group axioms.
pub fn parse_group(text: &str) -> Result<CayleyTable> {
    let t = parse_table(text)?;
    match t.verify().first() {
        None => Ok(t),
        Some(v) => Err(Error::NotAGroup(v.to_string())),
    }
}

pub fn serialize_table(t: &CayleyTable) -> String {
    let n = t.order();
    let mut out = format!("{n}\n");
    for x in 0..n {
        let row: Vec<String> = (0..n).map(|y| t.mul(x, y).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
pub struct Provenance {
    pub version: &'static str,
    pub budget: Option<u64>,
}

/// Envelope for every CLI result; `proven` is false whenever any reported
/// distance is only an incumbent.
#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: serde_json::Value,
    pub results: serde_json::Value,
    pub provenance: Provenance,
    pub proven: bool,
}

impl Report {
    pub fn new(command: &str, inputs: serde_json::Value, results: serde_json::Value, proven: bool) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            results,
            provenance: Provenance { version: env!("CARGO_PKG_VERSION"), budget: None },
            proven,
        }
    }
}

/// Plain-text cache directory holding `mu.cache` ("l v value" lines) and
/// `dist.cache` ("nameA nameB distance proven" lines). The location comes
/// from `GH_CACHE_DIR`, defaulting to `.gh-cache`; a disabled cache reads
/// and writes nothing.
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn resolve(no_cache: bool) -> Cache {
        if no_cache {
            return Cache { dir: None };
        }
        let dir = std::env::var_os("GH_CACHE_DIR")
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(".gh-cache"));
        Cache { dir: Some(dir) }
    }

    pub fn disabled() -> Cache {
        Cache { dir: None }
    }

    fn read(&self, file: &str) -> Vec<String> {
        match &self.dir {
            None => Vec::new(),
            Some(d) => fs::read_to_string(d.join(file))
                .map(|s| s.lines().map(|l| l.to_string()).collect())
                .unwrap_or_default(),
        }
    }

    fn append(&self, file: &str, line: &str) {
        if let Some(d) = &self.dir {
            if fs::create_dir_all(d).is_ok() {
                let path = d.join(file);
                let mut content = fs::read_to_string(&path).unwrap_or_default();
                content.push_str(line);
                content.push('\n');
                let _ = fs::write(path, content);
            }
        }
    }

    pub fn mu_get(&self, l: usize, v: usize) -> Option<usize> {
        self.read("mu.cache").iter().find_map(|line| {
            let mut it = line.split_whitespace();
            let (cl, cv, val) = (it.next()?, it.next()?, it.next()?);
            (cl.parse() == Ok(l) && cv.parse() == Ok(v)).then(|| val.parse().ok())?
        })
    }

    pub fn mu_put(&self, l: usize, v: usize, value: usize) {
        if self.mu_get(l, v).is_none() {
            self.append("mu.cache", &format!("{l} {v} {value}"));
        }
    }

    pub fn dist_get(&self, a: &str, b: &str) -> Option<(u32, bool)> {
        self.read("dist.cache").iter().find_map(|line| {
            let mut it = line.split_whitespace();
            let (ca, cb, d, p) = (it.next()?, it.next()?, it.next()?, it.next()?);
            (ca == a && cb == b).then(|| Some((d.parse().ok()?, p == "proven")))?
        })
    }

    pub fn dist_put(&self, a: &str, b: &str, distance: u32, proven: bool) {
        if self.dist_get(a, b).is_none() {
            let flag = if proven { "proven" } else { "unproven" };
            self.append("dist.cache", &format!("{a} {b} {distance} {flag}"));
        }
    }
}
