//! On-disk fixture store: one tour document per `(family, size)` and a
//! manifest of their checksums.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::construct::{derive_base_case, Family, Fixture};
use crate::error::{Error, Result};
use crate::search::Budget;

use super::document::{checksum, deserialize, serialize};

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub family: Family,
    pub m: i64,
    pub n: i64,
    pub file: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Manifest {
    pub fixtures: Vec<ManifestEntry>,
}

/// Every size a fixture is derived for, in a fixed order.
pub fn fixture_sizes() -> Vec<(Family, i64, i64)> {
    let mut v = Vec::new();
    for f in Family::ALL {
        for &(m, n) in f.base_sizes().iter().chain(f.standalone_sizes()) {
            if !v.contains(&(f, m, n)) {
                v.push((f, m, n));
            }
        }
    }
    v
}

pub fn file_name(family: Family, m: i64, n: i64) -> String {
    format!("{}_{m}x{n}.json", family.name())
}

pub struct FixtureStore {
    dir: PathBuf,
}

impl FixtureStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        FixtureStore { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn read_manifest(&self) -> Result<Manifest> {
        Ok(serde_json::from_slice(&fs::read(self.dir.join(MANIFEST))?)?)
    }

    fn write_manifest(&self, manifest: &Manifest) -> Result<()> {
        let mut bytes = serde_json::to_vec_pretty(manifest)?;
        bytes.push(b'\n');
        fs::write(self.dir.join(MANIFEST), bytes)?;
        Ok(())
    }

    /// Writes the fixture file and records it in the manifest.
    pub fn put(&self, fixture: &Fixture) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let file = file_name(fixture.family, fixture.m, fixture.n);
        let bytes = serialize(&fixture.tour);
        fs::write(self.dir.join(&file), &bytes)?;
        let mut manifest = self.read_manifest().unwrap_or_default();
        manifest.fixtures.retain(|e| e.file != file);
        manifest.fixtures.push(ManifestEntry {
            family: fixture.family,
            m: fixture.m,
            n: fixture.n,
            file,
            sha256: checksum(&bytes),
        });
        manifest.fixtures.sort_by_key(|e| (e.family, e.m, e.n));
        self.write_manifest(&manifest)
    }

    /// Loads a fixture, checking its bytes against the manifest.
    pub fn get(&self, family: Family, m: i64, n: i64) -> Result<Fixture> {
        let manifest = self.read_manifest()?;
        let entry = manifest
            .fixtures
            .iter()
            .find(|e| (e.family, e.m, e.n) == (family, m, n))
            .ok_or_else(|| Error::Document(format!("no fixture for {family} at {m}x{n}")))?;
        let bytes = fs::read(self.dir.join(&entry.file))?;
        if checksum(&bytes) != entry.sha256 {
            return Err(Error::Document(format!(
                "{} does not match its manifest checksum",
                entry.file
            )));
        }
        let fixture = Fixture::new(family, deserialize(&bytes)?);
        fixture.validate()?;
        Ok(fixture)
    }

    /// Loads and validates every fixture in the manifest.
    pub fn verify(&self) -> Result<usize> {
        let manifest = self.read_manifest()?;
        for e in &manifest.fixtures {
            self.get(e.family, e.m, e.n)?;
        }
        Ok(manifest.fixtures.len())
    }

    /// Re-derives every fixture and rewrites the store.
    pub fn rebuild(&self, budget: Budget) -> Result<Manifest> {
        fs::create_dir_all(&self.dir)?;
        self.write_manifest(&Manifest::default())?;
        for (f, m, n) in fixture_sizes() {
            self.put(&derive_base_case(f, m, n, budget)?)?;
        }
        self.read_manifest()
    }
}
