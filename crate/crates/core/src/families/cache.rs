use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::key::{BuildRoute, FamilyKey, FamilyValue};
use super::ladder::RationalFunction;
use crate::codec::PolyJson;
use crate::error::{Error, Result};

pub const CACHE_ENV: &str = "UMEMURA_CACHE";

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    key: String,
    route: BuildRoute,
    content_hash: String,
    num: PolyJson,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    den: Option<PolyJson>,
}

fn content_hash(num: &PolyJson, den: &Option<PolyJson>) -> String {
    let mut h = Sha256::new();
    h.update(serde_json::to_vec(num).expect("serializable"));
    if let Some(d) = den {
        h.update(b"/");
        h.update(serde_json::to_vec(d).expect("serializable"));
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub entries: usize,
    pub bytes: u64,
}

/// Content-addressed store of built family values, one JSON file per key.
#[derive(Debug, Clone)]
pub struct PolyCache {
    dir: PathBuf,
}

impl PolyCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        PolyCache { dir: dir.into() }
    }

    /// `dir` if given, else `$UMEMURA_CACHE`, else `.umemura-cache`.
    pub fn resolve(dir: Option<&Path>) -> Self {
        let dir = dir
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(".umemura-cache"));
        PolyCache::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &FamilyKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.hash_hex()))
    }

    /// `Ok(None)` on a miss; a corrupt or mismatched entry is an error.
    pub fn get(&self, key: &FamilyKey) -> Result<Option<FamilyValue>> {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let corrupt = |msg: String| Error::Decode { path: path.display().to_string(), msg };
        let entry: Entry = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
        if entry.key != key.canonical() {
            return Err(corrupt(format!("entry holds {}", entry.key)));
        }
        if entry.content_hash != content_hash(&entry.num, &entry.den) {
            return Err(corrupt("content hash mismatch".into()));
        }
        let num = entry.num.to_poly()?;
        Ok(Some(match entry.den {
            None => FamilyValue::Poly(num),
            Some(d) => FamilyValue::Rational(RationalFunction::new(num, d.to_poly()?)?),
        }))
    }

    /// Atomic: the entry is written to a unique temporary file and renamed.
    pub fn put(&self, key: &FamilyKey, value: &FamilyValue) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let (num, den) = match value {
            FamilyValue::Poly(p) => (PolyJson::from_poly(p), None),
            FamilyValue::Rational(r) => (PolyJson::from_poly(&r.num), Some(PolyJson::from_poly(&r.den))),
        };
        let entry = Entry { key: key.canonical(), route: key.route(), content_hash: content_hash(&num, &den), num, den };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&entry)?.as_bytes())?;
        tmp.write_all(b"\n")?;
        tmp.persist(self.path(key)).map_err(|e| Error::Io(e.error))?;
        Ok(())
    }

    /// Cached value, building and storing it on a miss or a corrupt entry.
    pub fn get_or_build(&self, key: &FamilyKey) -> Result<FamilyValue> {
        match self.get(key) {
            Ok(Some(v)) => return Ok(v),
            Ok(None) => {}
            Err(Error::Decode { path, msg }) => log::warn!("recomputing corrupt cache entry {path}: {msg}"),
            Err(e) => return Err(e),
        }
        let v = key.build()?;
        self.put(key, &v)?;
        Ok(v)
    }

    pub fn stats(&self) -> Result<CacheStats> {
        let mut stats = CacheStats::default();
        let rd = match fs::read_dir(&self.dir) {
            Ok(rd) => rd,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(stats),
            Err(e) => return Err(e.into()),
        };
        for e in rd {
            let e = e?;
            if e.path().extension().is_some_and(|x| x == "json") {
                stats.entries += 1;
                stats.bytes += e.metadata()?.len();
            }
        }
        Ok(stats)
    }

    /// Removes every entry; returns how many were removed.
    pub fn clear(&self) -> Result<usize> {
        let rd = match fs::read_dir(&self.dir) {
            Ok(rd) => rd,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(e.into()),
        };
        let mut n = 0;
        for e in rd {
            let p = e?.path();
            if p.extension().is_some_and(|x| x == "json") {
                fs::remove_file(p)?;
                n += 1;
            }
        }
        Ok(n)
    }
}
