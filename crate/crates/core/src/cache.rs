//! On-disk JSON cache of group enumerations and character tables.
//!
//! Files carry a format version; anything written by another version, or
//! failing its certificates on load, is treated as a miss and rebuilt.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::chartab::{character_table, CharacterTable, TableSnapshot};
use crate::error::Result;
use crate::ff::Field;
use crate::matgrp::{group_build_with_budget, GroupContext, GroupKind, GroupSnapshot};

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "REPVAR_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    version: u32,
    key: String,
    payload: T,
}

/// A cache rooted at a directory, or a pass-through when disabled.
#[derive(Debug, Clone, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Cache {
        Cache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Cache {
        Cache {
            dir: Some(dir.into()),
        }
    }

    /// Uses `explicit` if given, otherwise the `REPVAR_CACHE_DIR` variable.
    pub fn from_env(explicit: Option<PathBuf>) -> Cache {
        Cache {
            dir: explicit.or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from)),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// Cache key of a group: kind, dimension, field order and a digest of
    /// the field modulus.
    pub fn group_key(kind: GroupKind, n: usize, field: &Field) -> String {
        let mut h = Sha256::new();
        for c in field.modulus() {
            h.update(c.to_le_bytes());
        }
        let digest = h.finalize();
        let hex: String = digest[..8].iter().map(|b| format!("{b:02x}")).collect();
        format!(
            "v{CACHE_VERSION}-{kind:?}{n}-p{}m{}-{hex}",
            field.characteristic(),
            field.degree()
        )
    }

    pub fn group(
        &self,
        kind: GroupKind,
        n: usize,
        field: &Field,
        max_order: u64,
    ) -> Result<Arc<GroupContext>> {
        let key = Cache::group_key(kind, n, field);
        if let Some(snap) = self.read::<GroupSnapshot>(&format!("group-{key}"), &key) {
            if let Ok(g) = GroupContext::from_snapshot(field, snap) {
                if g.kind() == kind && g.dim() == n {
                    return Ok(Arc::new(g));
                }
            }
        }
        let g = group_build_with_budget(kind, n, field, max_order)?;
        self.write(&format!("group-{key}"), &key, &g.snapshot())?;
        Ok(Arc::new(g))
    }

    pub fn table(&self, group: &Arc<GroupContext>, seed: u64) -> Result<CharacterTable> {
        let key = format!(
            "{}-seed{seed}",
            Cache::group_key(group.kind(), group.dim(), group.field())
        );
        if let Some(snap) = self.read::<TableSnapshot>(&format!("table-{key}"), &key) {
            if snap.seed == seed {
                if let Ok(t) = CharacterTable::from_snapshot(group.clone(), snap) {
                    return Ok(t);
                }
            }
        }
        let t = character_table(group.clone(), seed)?;
        self.write(&format!("table-{key}"), &key, &t.snapshot())?;
        Ok(t)
    }

    fn read<T: DeserializeOwned>(&self, name: &str, key: &str) -> Option<T> {
        let path = self.dir.as_ref()?.join(format!("{name}.json"));
        let text = fs::read(path).ok()?;
        let env: Envelope<T> = serde_json::from_slice(&text).ok()?;
        (env.version == CACHE_VERSION && env.key == key).then_some(env.payload)
    }

    fn write<T: Serialize>(&self, name: &str, key: &str, payload: &T) -> Result<()> {
        let Some(dir) = &self.dir else {
            return Ok(());
        };
        fs::create_dir_all(dir)?;
        let env = Envelope {
            version: CACHE_VERSION,
            key: key.to_string(),
            payload,
        };
        let path = dir.join(format!("{name}.json"));
        let tmp = dir.join(format!("{name}.json.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&env)?)?;
        fs::rename(tmp, path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::field_make;

    #[test]
    fn roundtrip_and_version_invalidation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        let f = field_make(3, 1).unwrap();
        let g = cache.group(GroupKind::SL, 2, &f, 1000).unwrap();
        let t = cache.table(&g, 5).unwrap();
        let g2 = cache.group(GroupKind::SL, 2, &f, 1000).unwrap();
        let t2 = cache.table(&g2, 5).unwrap();
        assert_eq!(g2.order(), 24);
        assert_eq!(t.values(), t2.values());
        let key = Cache::group_key(GroupKind::SL, 2, &f);
        let path = dir.path().join(format!("group-{key}.json"));
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replacen("\"version\":1", "\"version\":0", 1)).unwrap();
        assert_eq!(cache.group(GroupKind::SL, 2, &f, 1000).unwrap().order(), 24);
        fs::write(&path, "garbage").unwrap();
        assert_eq!(cache.group(GroupKind::SL, 2, &f, 1000).unwrap().order(), 24);
    }

    #[test]
    fn keys_distinguish_fields() {
        let a = Cache::group_key(GroupKind::GL, 2, &field_make(2, 2).unwrap());
        let b = Cache::group_key(GroupKind::GL, 2, &field_make(2, 3).unwrap());
        let c = Cache::group_key(GroupKind::SL, 2, &field_make(2, 2).unwrap());
        assert!(a != b && a != c);
    }
}
