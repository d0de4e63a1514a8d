//! Irreducibility of linear systems, a coprimality criterion, and
//! generalised arithmetic progressions.
//!
//! A system `(L_1, …, L_k)` is reducible when some non-trivial proper
//! `U, V ⊆ Q^d` of equal dimension satisfy `L_i(U) ⊆ V` for all `i`. Since
//! `V = L_1(U)`, this is the same as `U` being invariant under every
//! `M_j = L_1^{-1}L_j`, so everything below works with the normalised family
//! and the algebra it generates.
//!
//! # Decision procedure
//!
//! Reducibility witnesses are searched for by spinning candidate vectors
//! (standard basis vectors, kernel vectors of factors of characteristic
//! polynomials, then seeded random vectors) and taking the smallest invariant
//! subspace containing them.
//!
//! Irreducibility is certified with Norton's test. Take `θ` in the algebra,
//! an irreducible factor `p` of its characteristic polynomial and
//! `N = ker p(θ)`. If `W` is a proper invariant subspace then `p` divides the
//! characteristic polynomial of `θ` on `W` or on `Q^d / W`, so either `W`
//! meets `N` or `W^⊥` meets `ker p(θ^T)`. When `dim N = deg p`, `N` is a simple
//! `Q[θ]`-module, so every non-zero vector of `N` generates all of `N`; hence
//! if one vector of `N` spins to `Q^d` under the `M_j`, and one vector of
//! `ker p(θ^T)` spins to `Q^d` under the transposes, no proper invariant
//! subspace exists. Candidates for `θ` are the generators, their pairwise
//! products and sums, and seeded random combinations of short words.
//!
//! In dimension 2 a non-scalar generator always qualifies as `θ`, so the
//! procedure never answers [`IrreducibilityStatus::Unknown`] there. Verdicts
//! are statements over `Q`.

mod factor;
mod gap;

pub use factor::irreducible_factors;
pub use gap::{gap_contains, gap_is_proper, Gap, DEFAULT_GAP_BUDGET};

use num_traits::{Signed, One};
use serde_json::{json, Value as Json};

use crate::error::{check_dim, Error, Result};
use crate::io::SubspaceFile;
use crate::linalg::{nullspace, LinearSystem, RationalMatrix, Subspace};
use crate::point::Point;
use crate::poly::Polynomial;
use crate::rational::{int, Rational};
use crate::rng::SplitMix64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IrreducibilityStatus {
    Irreducible,
    Reducible,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityVerdict {
    pub status: IrreducibilityStatus,
    /// A common invariant subspace of the normalised family when reducible.
    pub witness: Option<Subspace>,
}

impl IrreducibilityVerdict {
    fn irreducible() -> Self {
        Self { status: IrreducibilityStatus::Irreducible, witness: None }
    }

    fn reducible(witness: Subspace) -> Self {
        Self { status: IrreducibilityStatus::Reducible, witness: Some(witness) }
    }

    pub fn to_json(&self) -> Json {
        json!({
            "status": self.status,
            "field": "Q",
            "witness": self.witness.as_ref().map(SubspaceFile::encode),
        })
    }
}

/// Whether `U` is invariant under every `L_1^{-1}L_j`.
pub fn is_reducible_witness(system: &LinearSystem, u: &Subspace) -> Result<bool> {
    check_dim(system.dim(), u.ambient_dim())?;
    if u.dim() == 0 || u.dim() >= system.dim() {
        return Err(Error::InvalidArgument("witness subspace must be non-trivial and proper".into()));
    }
    Ok(system
        .normalized()
        .maps()
        .iter()
        .all(|m| u.image(m).is_subspace_of(u)))
}

/// Smallest subspace containing `v` and invariant under `gens`.
fn spin(gens: &[RationalMatrix], v: &[Rational]) -> Subspace {
    let d = v.len();
    let mut vectors = vec![Point::new(v.to_vec())];
    let mut span = Subspace::span(d, &vectors).expect("matching dimension");
    let mut next = 0;
    while next < vectors.len() && span.dim() < d {
        let w = vectors[next].clone();
        next += 1;
        for g in gens {
            let image = g.apply(&w);
            if !span.contains(image.coords()) {
                vectors.push(image);
                span = Subspace::span(d, &vectors).expect("matching dimension");
            }
        }
    }
    span
}

fn proper(u: &Subspace) -> bool {
    u.dim() > 0 && u.dim() < u.ambient_dim()
}

struct Search<'a> {
    system: &'a LinearSystem,
    gens: Vec<RationalMatrix>,
    transposed: Vec<RationalMatrix>,
}

impl Search<'_> {
    fn witness(&self, u: Subspace) -> Option<IrreducibilityVerdict> {
        (proper(&u) && is_reducible_witness(self.system, &u).unwrap_or(false))
            .then(|| IrreducibilityVerdict::reducible(u))
    }

    fn try_vector(&self, v: &[Rational]) -> Option<IrreducibilityVerdict> {
        self.witness(spin(&self.gens, v))
    }

    /// Norton's test for one algebra element.
    fn norton(&self, theta: &RationalMatrix) -> Option<IrreducibilityVerdict> {
        let d = theta.dim();
        let charpoly = Polynomial::new(theta.characteristic_polynomial());
        for p in irreducible_factors(&charpoly) {
            let kernel = nullspace(theta.eval_polynomial(p.coeffs()).entries(), d);
            for v in &kernel {
                if let Some(found) = self.try_vector(v) {
                    return Some(found);
                }
            }
            if kernel.len() != p.degree().unwrap_or(0) {
                continue;
            }
            let dual = nullspace(theta.transpose().eval_polynomial(p.coeffs()).entries(), d);
            let Some(w) = dual.first() else { continue };
            let dual_span = spin(&self.transposed, w);
            if proper(&dual_span) {
                if let Some(found) = self.witness(dual_span.annihilator()) {
                    return Some(found);
                }
                continue;
            }
            return Some(IrreducibilityVerdict::irreducible());
        }
        None
    }
}

const RANDOM_CANDIDATES: usize = 64;
const CANDIDATE_SEED: u64 = 0x1bad_5eed;

fn algebra_elements(gens: &[RationalMatrix], rng: &mut SplitMix64) -> Vec<RationalMatrix> {
    let d = gens[0].dim();
    let mut words = vec![RationalMatrix::identity(d)];
    words.extend(gens.iter().cloned());
    for a in gens {
        for b in gens {
            words.push(a.mul(b));
        }
    }
    let mut out: Vec<RationalMatrix> = gens.to_vec();
    out.extend(words[1 + gens.len()..].iter().cloned());
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            out.push(a.add(b));
        }
    }
    for _ in 0..RANDOM_CANDIDATES {
        let mut acc = RationalMatrix::scalar(d, Rational::from_integer(0.into()));
        for w in &words {
            let c = rng.range_i64(-3, 3);
            if c != 0 {
                acc = acc.add(&w.scale(&int(c)));
            }
        }
        out.push(acc);
    }
    out
}

/// Decides whether the normalised family has a common invariant subspace
/// other than `0` and `Q^d`.
pub fn decide_irreducible(system: &LinearSystem) -> Result<IrreducibilityVerdict> {
    let d = system.dim();
    if d == 1 {
        return Ok(IrreducibilityVerdict::irreducible());
    }
    let gens: Vec<RationalMatrix> = system
        .normalized()
        .maps()
        .iter()
        .filter(|m| !m.is_identity())
        .cloned()
        .collect();
    if gens.iter().all(RationalMatrix::is_scalar) {
        let line = Subspace::span(d, &[Point::unit(d, 0)])?;
        return Ok(IrreducibilityVerdict::reducible(line));
    }
    let gens: Vec<RationalMatrix> = gens.into_iter().filter(|m| !m.is_scalar()).collect();
    let search = Search {
        system,
        transposed: gens.iter().map(RationalMatrix::transpose).collect(),
        gens,
    };
    for i in 0..d {
        if let Some(found) = search.try_vector(Point::unit(d, i).coords()) {
            return Ok(found);
        }
    }
    let mut rng = SplitMix64::new(CANDIDATE_SEED);
    for theta in algebra_elements(&search.gens, &mut rng) {
        if let Some(found) = search.norton(&theta) {
            return Ok(found);
        }
    }
    for _ in 0..RANDOM_CANDIDATES {
        let v: Vec<Rational> = (0..d).map(|_| int(rng.range_i64(-5, 5))).collect();
        if v.iter().all(num_traits::Zero::is_zero) {
            continue;
        }
        if let Some(found) = search.try_vector(&v) {
            return Ok(found);
        }
    }
    Ok(IrreducibilityVerdict { status: IrreducibilityStatus::Unknown, witness: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Coprimality {
    Coprime,
    Unknown,
}

/// `Coprime` when some map of an integral system has determinant `±1`: then
/// `P L_i R` integral forces `|det P det R| ≥ 1`.
pub fn coprime_sufficient(system: &LinearSystem) -> Result<Coprimality> {
    if !system.maps().iter().all(RationalMatrix::is_integral) {
        return Err(Error::Precondition("coprimality criterion needs integer matrices".into()));
    }
    let unimodular = system.maps().iter().any(|m| m.determinant().abs().is_one());
    Ok(if unimodular { Coprimality::Coprime } else { Coprimality::Unknown })
}
