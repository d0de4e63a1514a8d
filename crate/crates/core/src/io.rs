//! JSON file formats for point sets, matrices, systems, bases and subspaces.
//!
//! Coordinates are strings `"p/q"` (or `"p"`); bare JSON integers are also
//! accepted on input. Output is always canonical: sets sorted, rationals in
//! lowest terms, compact JSON.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{Basis, LinearSystem, RationalMatrix, Subspace};
use crate::point::{Point, PointSet};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Text(String),
    Int(i64),
}

impl Coord {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Coord::Text(s) => parse_rational(s),
            Coord::Int(n) => Ok(crate::rational::int(*n)),
        }
    }

    pub fn from_rational(value: &Rational) -> Self {
        Coord::Text(format_rational(value))
    }
}

fn parse_row(row: &[Coord]) -> Result<Vec<Rational>> {
    row.iter().map(Coord::to_rational).collect()
}

pub fn encode_row(row: &[Rational]) -> Vec<Coord> {
    row.iter().map(Coord::from_rational).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointSetFile {
    pub dim: usize,
    pub points: Vec<Vec<Coord>>,
}

impl PointSetFile {
    pub fn decode(&self) -> Result<PointSet> {
        let points = self
            .points
            .iter()
            .map(|row| parse_row(row).map(Point::new))
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(self.dim, points)
    }

    pub fn encode(set: &PointSet) -> Self {
        Self {
            dim: set.dim(),
            points: set.iter().map(|p| encode_row(p.coords())).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub entries: Vec<Vec<Coord>>,
}

impl MatrixFile {
    pub fn decode(&self) -> Result<RationalMatrix> {
        let rows = self.entries.iter().map(|r| parse_row(r)).collect::<Result<Vec<_>>>()?;
        let m = RationalMatrix::new(rows)?;
        check_dim(self.dim, m.dim())?;
        Ok(m)
    }

    pub fn encode(m: &RationalMatrix) -> Self {
        Self {
            dim: m.dim(),
            entries: m.entries().iter().map(|r| encode_row(r)).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisFile {
    pub dim: usize,
    pub vectors: Vec<Vec<Coord>>,
}

impl BasisFile {
    pub fn decode(&self) -> Result<Basis> {
        let vectors = self
            .vectors
            .iter()
            .map(|r| parse_row(r).map(Point::new))
            .collect::<Result<Vec<_>>>()?;
        check_dim(self.dim, vectors.len())?;
        Basis::new(vectors)
    }
}

/// `{"dim": d, "basis": [[...], ...]}`; the basis is emitted in echelon form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubspaceFile {
    pub dim: usize,
    pub basis: Vec<Vec<Coord>>,
}

impl SubspaceFile {
    pub fn decode(&self) -> Result<Subspace> {
        let vectors = self
            .basis
            .iter()
            .map(|r| parse_row(r).map(Point::new))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(self.dim, &vectors)
    }

    pub fn encode(u: &Subspace) -> Self {
        Self {
            dim: u.ambient_dim(),
            basis: u.rows().iter().map(|r| encode_row(r)).collect(),
        }
    }
}

pub fn parse_point_set(text: &str) -> Result<PointSet> {
    let file: PointSetFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.decode()
}

pub fn point_set_to_json(set: &PointSet) -> String {
    serde_json::to_string(&PointSetFile::encode(set)).expect("serializable")
}

pub fn parse_matrix(text: &str) -> Result<RationalMatrix> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.decode()
}

pub fn matrix_to_json(m: &RationalMatrix) -> String {
    serde_json::to_string(&MatrixFile::encode(m)).expect("serializable")
}

/// A system is a JSON array of matrix objects.
pub fn parse_system(text: &str) -> Result<LinearSystem> {
    let files: Vec<MatrixFile> =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let maps = files.iter().map(MatrixFile::decode).collect::<Result<Vec<_>>>()?;
    LinearSystem::new(maps)
}

pub fn system_to_json(system: &LinearSystem) -> String {
    let files: Vec<MatrixFile> = system.maps().iter().map(MatrixFile::encode).collect();
    serde_json::to_string(&files).expect("serializable")
}

pub fn parse_basis(text: &str) -> Result<Basis> {
    let file: BasisFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.decode()
}

pub fn parse_subspace(text: &str) -> Result<Subspace> {
    let file: SubspaceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.decode()
}

pub fn subspace_to_json(u: &Subspace) -> String {
    serde_json::to_string(&SubspaceFile::encode(u)).expect("serializable")
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Content digest of the canonical JSON form of a set.
pub fn digest_point_set(set: &PointSet) -> String {
    sha256_hex(point_set_to_json(set).as_bytes())
}

pub fn digest_system(system: &LinearSystem) -> String {
    sha256_hex(system_to_json(system).as_bytes())
}
