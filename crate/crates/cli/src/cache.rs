//! On-disk copy of enumerated levels, enabled by `FLAGCERT_CACHE_DIR`.
//!
//! File layout: a header line, a `sha256` line over everything after it,
//! then one canonical encoding per line. Any mismatch means the file is
//! ignored and rewritten.

use std::fs;
use std::path::{Path, PathBuf};

use flagcert::flag::hex_digest;
use flagcert::graph::{graphs_with_keys, preload_level, ColoredGraph, Family, GraphError, Level, MAX_ENUMERATION_ORDER};

use crate::commands::CliError;

pub const ENV: &str = "FLAGCERT_CACHE_DIR";

fn header(family: Family, n: usize) -> String {
    format!("flagcert-graphs v1 {} {n}", family.name())
}

fn path(dir: &Path, family: Family, n: usize) -> PathBuf {
    dir.join(format!("graphs-{}-{n}.v1", family.name()))
}

fn load(file: &Path, family: Family, n: usize) -> Option<Vec<ColoredGraph>> {
    let text = fs::read_to_string(file).ok()?;
    let (head, rest) = text.split_once('\n')?;
    let (digest, body) = rest.split_once('\n')?;
    if head != header(family, n) || digest.strip_prefix("sha256 ")? != hex_digest(body.as_bytes()) {
        return None;
    }
    body.lines().map(|l| l.parse().ok()).collect()
}

fn store(file: &Path, family: Family, n: usize, graphs: &[ColoredGraph]) -> std::io::Result<()> {
    let body: String = graphs.iter().map(|g| format!("{g}\n")).collect();
    let text = format!("{}\nsha256 {}\n{body}", header(family, n), hex_digest(body.as_bytes()));
    let tmp = file.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, file)
}

/// The enumerated level, going through the cache directory when one is set.
/// Orders above the enumeration limit are rejected before touching disk.
pub fn level(n: usize, family: Family) -> Result<Level, CliError> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(GraphError::Capacity(n, MAX_ENUMERATION_ORDER).into());
    }
    let Some(dir) = std::env::var_os(ENV).filter(|d| !d.is_empty()) else {
        return Ok(graphs_with_keys(n, family)?);
    };
    let dir = PathBuf::from(dir);
    let file = path(&dir, family, n);
    if let Some(graphs) = load(&file, family, n) {
        // A structurally bad file is treated like a missing one.
        if preload_level(n, family, graphs).is_ok() {
            return Ok(graphs_with_keys(n, family)?);
        }
    }
    let level = graphs_with_keys(n, family)?;
    let graphs: Vec<ColoredGraph> = level.iter().map(|(_, g)| g.clone()).collect();
    fs::create_dir_all(&dir)
        .and_then(|_| store(&file, family, n, &graphs))
        .map_err(|e| CliError::Usage(format!("cannot write cache {}: {e}", file.display())))?;
    Ok(level)
}
