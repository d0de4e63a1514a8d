pub mod bounds;
pub mod certificate;
pub mod cli;
pub mod compression;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod interval;
pub mod io;
pub mod linalg;
pub mod point;
pub mod poly;
pub mod rational;
pub mod rng;
pub mod structure;
pub mod suite;
pub mod sumset;

pub use certificate::{Bound, Certificate, Relation, StatementId, Verdict};
pub use compression::{compress, CompressionSpec, CompressionTrace};
pub use error::{Error, Result};
pub use linalg::{Basis, LinearSystem, RationalMatrix, Subspace};
pub use point::{Point, PointSet};
pub use rational::Rational;
