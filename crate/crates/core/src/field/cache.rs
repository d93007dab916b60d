//! On-disk cache of chosen extension-field moduli.
//!
//! One line per field: `p r c0,c1,...,cr`, decimal, constant term first.
//! New entries are appended. Lines that fail to parse or validate are
//! skipped with a warning.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use log::warn;

use super::{make_extension_field, FieldCtx, FieldError};

#[derive(Debug, Default)]
pub struct ModulusCache {
    path: Option<PathBuf>,
    entries: BTreeMap<(u64, u32), Vec<u64>>,
}

fn parse_line(line: &str) -> Option<((u64, u32), Vec<u64>)> {
    let mut fields = line.split_whitespace();
    let p = fields.next()?.parse().ok()?;
    let r = fields.next()?.parse().ok()?;
    let coeffs = fields
        .next()?
        .split(',')
        .map(|c| c.parse().ok())
        .collect::<Option<Vec<u64>>>()?;
    if fields.next().is_some() || coeffs.len() != r as usize + 1 {
        return None;
    }
    Some(((p, r), coeffs))
}

pub fn format_line(p: u64, r: u32, modulus: &[u64]) -> String {
    let coeffs: Vec<String> = modulus.iter().map(u64::to_string).collect();
    format!("{p} {r} {}", coeffs.join(","))
}

impl ModulusCache {
    /// An empty cache not backed by any file.
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Loads `path`; a missing file is an empty cache.
    pub fn open(path: impl AsRef<Path>) -> io::Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = BTreeMap::new();
        match fs::read_to_string(&path) {
            Ok(text) => {
                for (lineno, line) in text.lines().enumerate() {
                    if line.trim().is_empty() {
                        continue;
                    }
                    match parse_line(line) {
                        // First occurrence wins.
                        Some((key, coeffs)) => {
                            entries.entry(key).or_insert(coeffs);
                        }
                        None => warn!(
                            "{}:{}: skipping corrupt cache line {line:?}",
                            path.display(),
                            lineno + 1
                        ),
                    }
                }
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        Ok(Self {
            path: Some(path),
            entries,
        })
    }

    pub fn get(&self, p: u64, r: u32) -> Option<&[u64]> {
        self.entries.get(&(p, r)).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn insert(&mut self, p: u64, r: u32, modulus: &[u64]) -> io::Result<()> {
        self.entries.insert((p, r), modulus.to_vec());
        if let Some(path) = &self.path {
            let mut file = OpenOptions::new().create(true).append(true).open(path)?;
            writeln!(file, "{}", format_line(p, r, modulus))?;
        }
        Ok(())
    }
}

/// [`make_extension_field`] consulting and filling `cache`. A cached
/// modulus that fails validation is ignored with a warning. Failure to
/// append to the cache file is logged, not fatal.
pub fn make_extension_field_cached(
    p: u64,
    r: u32,
    cache: &mut ModulusCache,
) -> Result<Arc<FieldCtx>, FieldError> {
    if let Some(modulus) = cache.get(p, r) {
        match FieldCtx::with_modulus(p, modulus) {
            Ok(ctx) if ctx.degree() == r => return Ok(ctx),
            _ => warn!("ignoring invalid cached modulus for p={p} r={r}"),
        }
    }
    let ctx = make_extension_field(p, r)?;
    if let Err(e) = cache.insert(p, r, ctx.modulus()) {
        warn!("could not append to modulus cache: {e}");
    }
    Ok(ctx)
}
