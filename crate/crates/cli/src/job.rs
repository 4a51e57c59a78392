use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;
use sha2::{Digest, Sha256};

use hecke_core::affweyl::{AffineWeyl, ClassMode};
use hecke_core::coeff::Rational;
use hecke_core::rootdata::{build_root_system, parse_descriptor, RootSystem};

use crate::CliError;

/// The part of a request that determines its result. Output options are not
/// included, so the same table is shared across formats.
#[derive(Clone, Debug, Serialize)]
pub struct JobSpec {
    pub command: String,
    pub system: String,
    /// Generator label to value, or empty for symbolic output.
    pub parameters: BTreeMap<String, String>,
    pub grid: i32,
    pub radius: Option<usize>,
}

impl JobSpec {
    pub fn digest(&self) -> String {
        let canon = serde_json::to_string(self).expect("job spec serializes");
        hex::encode(Sha256::digest(canon.as_bytes()))
    }
}

pub fn root_system(desc: &str) -> Result<Arc<RootSystem>, CliError> {
    let (kind, n) = parse_descriptor(desc).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Arc::new(build_root_system(kind, n).map_err(|e| CliError::Usage(e.to_string()))?))
}

/// Parse "q0=2,q1=3/2" into generator index → value.
pub fn parse_eval(s: &str) -> Result<BTreeMap<usize, Rational>, CliError> {
    let mut out = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| CliError::Usage(format!("expected k=v, got {:?}", part)))?;
        let idx: usize = k
            .trim()
            .strip_prefix('q')
            .and_then(|i| i.parse().ok())
            .ok_or_else(|| CliError::Usage(format!("parameter names are q0, q1, ...; got {:?}", k)))?;
        let val: Rational = v.trim().parse().map_err(|_| CliError::Usage(format!("bad value {:?}", v)))?;
        if !val.is_positive() {
            return Err(CliError::Usage(format!("q{} must be positive", idx)));
        }
        if out.insert(idx, val).is_some() {
            return Err(CliError::Usage(format!("q{} given twice", idx)));
        }
    }
    Ok(out)
}

/// One value per parameter class variable. Every class needs a value and
/// generators in the same class must agree.
pub fn class_values(aw: &AffineWeyl, given: &BTreeMap<usize, Rational>) -> Result<Vec<Rational>, CliError> {
    let mode = ClassMode::Extended;
    let n = aw.rank();
    if let Some(i) = given.keys().find(|&&i| i > n) {
        return Err(CliError::Usage(format!("q{} is not a generator of a rank {} system", i, n)));
    }
    let vars = aw.vars(mode);
    let mut out: Vec<Option<Rational>> = vec![None; vars.len()];
    for (&i, v) in given {
        let k = aw.var_index(i, mode);
        match &out[k] {
            Some(p) if p != v => {
                return Err(CliError::Usage(format!(
                    "q{} = {} conflicts with q{} = {} in the same parameter class",
                    i,
                    v,
                    vars.labels()[k],
                    p
                )))
            }
            _ => out[k] = Some(v.clone()),
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(k, v)| v.ok_or_else(|| CliError::Usage(format!("missing a value for q{}", vars.labels()[k]))))
        .collect()
}

pub fn cache_dir(flag: Option<&Path>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf).or_else(|| std::env::var_os("HECKE_CACHE_DIR").map(PathBuf::from))
}

pub fn cache_read(dir: &Path, key: &str) -> Option<serde_json::Value> {
    let path = dir.join(format!("{}.json", key));
    let bytes = fs::read(&path).ok()?;
    match serde_json::from_slice(&bytes) {
        Ok(v) => Some(v),
        Err(e) => {
            eprintln!("warning: ignoring corrupt cache entry {}: {}", path.display(), e);
            None
        }
    }
}

/// Write through a temporary file and rename, so readers never see a partial entry.
pub fn cache_write(dir: &Path, key: &str, value: &serde_json::Value) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Usage(format!("cache {}: {}", dir.display(), e));
    fs::create_dir_all(dir).map_err(io)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    serde_json::to_writer_pretty(&mut tmp, value).map_err(|e| CliError::Usage(e.to_string()))?;
    tmp.write_all(b"\n").map_err(io)?;
    tmp.persist(dir.join(format!("{}.json", key))).map_err(|e| io(e.error))?;
    Ok(())
}
