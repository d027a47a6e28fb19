//! Canonical JSON tour documents.
//!
//! Field order is fixed by the struct layout and only integers appear, so
//! equal tours always serialize to identical bytes.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::board::{BoardSpec, KnightPair, Square, Topology};
use crate::error::{Error, Result};
use crate::lift::{classify, HomotopyClass};
use crate::tour::Tour;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TourDocument {
    pub format_version: u32,
    pub topology: Topology,
    pub m: i64,
    pub n: i64,
    pub closed: bool,
    pub start: [i64; 2],
    pub moves: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<DeclaredClass>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum DeclaredClass {
    Cylinder { k: i64 },
    Torus { p: i64, q: i64 },
}

impl From<HomotopyClass> for DeclaredClass {
    fn from(c: HomotopyClass) -> Self {
        match c {
            HomotopyClass::Cylinder(k) => DeclaredClass::Cylinder { k },
            HomotopyClass::Torus(p, q) => DeclaredClass::Torus { p, q },
        }
    }
}

impl From<DeclaredClass> for HomotopyClass {
    fn from(c: DeclaredClass) -> Self {
        match c {
            DeclaredClass::Cylinder { k } => HomotopyClass::Cylinder(k),
            DeclaredClass::Torus { p, q } => HomotopyClass::Torus(p, q),
        }
    }
}

impl TourDocument {
    /// Closed tours on surfaces carry their class.
    pub fn from_tour(tour: &Tour) -> Self {
        let spec = tour.spec();
        let class = (tour.is_closed() && spec.topology().is_surface())
            .then(|| classify(spec, tour).expect("closed surface tour").into());
        TourDocument {
            format_version: FORMAT_VERSION,
            topology: spec.topology(),
            m: spec.m(),
            n: spec.n(),
            closed: tour.is_closed(),
            start: [tour.start().a, tour.start().b],
            moves: tour.moves().iter().map(|p| [p.x, p.y]).collect(),
            class,
        }
    }

    /// Rebuilds and validates the tour, confirming any declared class.
    pub fn to_tour(&self) -> Result<Tour> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Document(format!(
                "unsupported format_version {}",
                self.format_version
            )));
        }
        let spec = BoardSpec::new(self.topology, self.m, self.n)?;
        let moves = self
            .moves
            .iter()
            .map(|&[x, y]| {
                KnightPair::new(x, y).ok_or_else(|| Error::Document(format!("[{x},{y}] is not a knight pair")))
            })
            .collect::<Result<Vec<_>>>()?;
        let tour = Tour::from_moves(spec, Square::new(self.start[0], self.start[1]), &moves, self.closed)?;
        if let Some(declared) = self.class {
            let declared = HomotopyClass::from(declared);
            if !tour.is_closed() || !spec.topology().is_surface() {
                return Err(Error::Document("only closed tours on surfaces have a class".into()));
            }
            let actual = classify(spec, &tour)?;
            if actual != declared {
                return Err(Error::Document(format!(
                    "declared class {declared} but the tour has {actual}"
                )));
            }
        }
        Ok(tour)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("documents always serialize")
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        Ok(serde_json::from_slice(bytes)?)
    }
}

pub fn serialize(tour: &Tour) -> Vec<u8> {
    TourDocument::from_tour(tour).to_bytes()
}

pub fn deserialize(bytes: &[u8]) -> Result<Tour> {
    TourDocument::from_bytes(bytes)?.to_tour()
}

/// Lower-case hex SHA-256.
pub fn checksum(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn tour_checksum(tour: &Tour) -> String {
    checksum(&serialize(tour))
}
