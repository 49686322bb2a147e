//! Content-addressed character-table cache: files are keyed by a hash of
//! (schema version, engine version, family, window), so stale entries
//! from other versions are simply never addressed. Hits are returned
//! byte-identically.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use h4::character::Window;
use h4::error::EngineError;
use h4::json as wire;
use h4::modules::ModuleSpec;

fn cache_path(dir: &Path, spec: &ModuleSpec, window: &Window) -> PathBuf {
    let key = json!({
        "engine": env!("CARGO_PKG_VERSION"),
        "schema": wire::SCHEMA_VERSION,
        "spec": wire::spec_to_json(spec),
        "window": wire::window_to_json(window),
    });
    let digest = Sha256::digest(key.to_string().as_bytes());
    let mut name = String::with_capacity(64);
    for byte in digest {
        name.push_str(&format!("{byte:02x}"));
    }
    dir.join(format!("{name}.json"))
}

pub fn lookup(
    dir: &Path,
    spec: &ModuleSpec,
    window: &Window,
) -> Result<Option<Value>, EngineError> {
    let path = cache_path(dir, spec, window);
    let Ok(text) = fs::read_to_string(&path) else {
        return Ok(None);
    };
    let Ok(value) = serde_json::from_str::<Value>(&text) else {
        return Ok(None); // unreadable entries are ignored, never migrated
    };
    match value.get("schema_version").and_then(Value::as_u64) {
        Some(v) if v == wire::SCHEMA_VERSION as u64 => Ok(Some(value)),
        _ => Ok(None),
    }
}

pub fn store(
    dir: &Path,
    spec: &ModuleSpec,
    window: &Window,
    table: &Value,
) -> Result<(), EngineError> {
    fs::create_dir_all(dir)
        .map_err(|e| EngineError::Parse(format!("cannot create cache dir: {e}")))?;
    let path = cache_path(dir, spec, window);
    fs::write(&path, table.to_string())
        .map_err(|e| EngineError::Parse(format!("cannot write cache entry: {e}")))?;
    Ok(())
}
