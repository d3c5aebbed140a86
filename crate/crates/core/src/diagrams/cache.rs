//! On-disk JSON cache of multiplication tables.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::algebra::{AlgebraKind, DiagramAlgebra, Product};
use crate::error::{Error, Result};
use crate::superlinalg::field::{Field, FieldKind};

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "RINGEL_CACHE_DIR";

/// Bumped whenever a sign convention (periplectic composition signs, the odd
/// involution) changes, so stale tables are never reused.
pub const SIGN_FINGERPRINT: &str = "pe-interp-v1/qhat-swap-v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub algebra: AlgebraKind,
    pub field: FieldKind,
    pub delta: String,
    pub fingerprint: String,
}

impl CacheKey {
    pub fn new<F: Field>(a: &DiagramAlgebra<F>) -> CacheKey {
        CacheKey {
            algebra: a.kind(),
            field: a.field().kind(),
            delta: a.field().render(a.delta()),
            fingerprint: SIGN_FINGERPRINT.to_string(),
        }
    }

    pub fn file_name(&self) -> String {
        let raw = format!("{}_{}_d{}_{}", self.algebra, self.field, self.delta, self.fingerprint);
        let clean: String = raw.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect();
        format!("{clean}.json")
    }
}

#[derive(Serialize, Deserialize)]
struct CachedTable {
    key: CacheKey,
    dim: usize,
    /// `[coeff, index]` or `null` per basis pair, row-major.
    table: Vec<Option<(String, usize)>>,
}

pub fn path_for(dir: &Path, key: &CacheKey) -> PathBuf {
    dir.join(key.file_name())
}

pub(crate) fn load<F: Field>(a: &DiagramAlgebra<F>, dir: &Path, key: &CacheKey) -> Result<Option<Vec<Product<F::Elem>>>> {
    let path = path_for(dir, key);
    let Ok(text) = fs::read_to_string(&path) else {
        return Ok(None);
    };
    let cached: CachedTable = serde_json::from_str(&text)?;
    if cached.key != *key || cached.dim != a.dim() {
        return Err(Error::Cache(format!("{} does not match its key", path.display())));
    }
    let f = a.field();
    let table = cached
        .table
        .into_iter()
        .map(|e| e.map(|(c, z)| Ok::<_, Error>((f.parse(&c)?, z))).transpose())
        .collect::<Result<Vec<_>>>()?;
    let checked = a.clone().with_table(table)?;
    Ok(Some(checked.table().to_vec()))
}

pub(crate) fn store<F: Field>(a: &DiagramAlgebra<F>, dir: &Path, key: &CacheKey) -> Result<()> {
    fs::create_dir_all(dir)?;
    let f = a.field();
    let cached = CachedTable {
        key: key.clone(),
        dim: a.dim(),
        table: a.table().iter().map(|e| e.as_ref().map(|(c, z)| (f.render(c), *z))).collect(),
    };
    let path = path_for(dir, key);
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_vec(&cached)?)?;
    fs::rename(&tmp, &path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superlinalg::field::Rationals;

    #[test]
    fn warm_cache_gives_the_same_table() {
        let dir = std::env::temp_dir().join(format!("ringel-cache-test-{}", std::process::id()));
        let q = Rationals;
        let kind = AlgebraKind::BrauerC { r: 2 };
        let cold = DiagramAlgebra::build_cached(&q, kind, q.from_i64(-2), Some(&dir)).unwrap();
        let key = CacheKey::new(&cold);
        assert!(path_for(&dir, &key).exists());
        let warm = DiagramAlgebra::build_cached(&q, kind, q.from_i64(-2), Some(&dir)).unwrap();
        assert_eq!(cold.table(), warm.table());
        fs::remove_dir_all(&dir).unwrap();
    }
}
