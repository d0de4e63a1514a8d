use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::io::{encode_row, Coord};
use crate::linalg::rref;
use crate::point::{Point, PointSet};
use crate::rational::Rational;

/// Default cap on `Π L_i` for membership and properness checks.
pub const DEFAULT_GAP_BUDGET: u128 = 10_000_000;

/// `{v_0 + Σ l_i v_i : 1 ≤ l_i ≤ L_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gap {
    base: Point,
    generators: Vec<Point>,
    lengths: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct GapFile {
    base: Vec<Coord>,
    generators: Vec<Vec<Coord>>,
    lengths: Vec<u64>,
}

impl Gap {
    pub fn new(base: Point, generators: Vec<Point>, lengths: Vec<u64>) -> Result<Self> {
        if generators.len() != lengths.len() {
            return Err(Error::InvalidArgument("one length per generator is required".into()));
        }
        for g in &generators {
            check_dim(base.dim(), g.dim())?;
        }
        if lengths.contains(&0) {
            return Err(Error::InvalidArgument("lengths must be positive".into()));
        }
        Ok(Self { base, generators, lengths })
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    pub fn lengths(&self) -> &[u64] {
        &self.lengths
    }

    /// `Π L_i`.
    pub fn size(&self) -> BigInt {
        self.lengths.iter().map(|&l| BigInt::from(l)).product()
    }

    fn within_budget(&self, budget: u128) -> Result<u128> {
        let size = self.size();
        match size.to_u128() {
            Some(n) if n <= budget => Ok(n),
            other => Err(Error::BudgetExceeded { needed: other.unwrap_or(u128::MAX), budget }),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GapFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let row = |r: &[Coord]| r.iter().map(Coord::to_rational).collect::<Result<Vec<_>>>().map(Point::new);
        let generators = file.generators.iter().map(|g| row(g)).collect::<Result<Vec<_>>>()?;
        Self::new(row(&file.base)?, generators, file.lengths)
    }

    pub fn to_json(&self) -> String {
        let file = GapFile {
            base: encode_row(self.base.coords()),
            generators: self.generators.iter().map(|g| encode_row(g.coords())).collect(),
            lengths: self.lengths.clone(),
        };
        serde_json::to_string(&file).expect("serialisable")
    }

    fn contains_point(&self, x: &Point) -> bool {
        let d = self.dim();
        let n = self.generators.len();
        let target = x.sub(&self.base);
        let mut rows: Vec<Vec<Rational>> = (0..d)
            .map(|r| {
                let mut row: Vec<Rational> = self.generators.iter().map(|g| g.coords()[r].clone()).collect();
                row.push(target.coords()[r].clone());
                row
            })
            .collect();
        let pivots = rref(&mut rows);
        if pivots.contains(&n) {
            return false;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut assignment: Vec<u64> = vec![1; free.len()];
        loop {
            let mut ok = true;
            for (row, &pc) in rows.iter().zip(&pivots) {
                let mut value = row[n].clone();
                for (slot, &fc) in free.iter().enumerate() {
                    value -= &row[fc] * Rational::from_integer(BigInt::from(assignment[slot]));
                }
                let in_range = value.is_integer()
                    && value >= Rational::from_integer(BigInt::from(1))
                    && value <= Rational::from_integer(BigInt::from(self.lengths[pc]));
                if !in_range {
                    ok = false;
                    break;
                }
            }
            if ok {
                return true;
            }
            let mut slot = 0;
            loop {
                if slot == free.len() {
                    return false;
                }
                if assignment[slot] < self.lengths[free[slot]] {
                    assignment[slot] += 1;
                    break;
                }
                assignment[slot] = 1;
                slot += 1;
            }
        }
    }
}

/// Exact membership of every point of `A`.
pub fn gap_contains(p: &Gap, a: &PointSet, budget: u128) -> Result<bool> {
    check_dim(p.dim(), a.dim())?;
    p.within_budget(budget)?;
    Ok(a.iter().all(|x| p.contains_point(x)))
}

/// Whether the `Π L_i` sums are pairwise distinct.
pub fn gap_is_proper(p: &Gap, budget: u128) -> Result<bool> {
    let total = p.within_budget(budget)?;
    let mut seen: HashSet<Point> = HashSet::with_capacity(total as usize);
    let mut idx: Vec<u64> = vec![1; p.lengths.len()];
    loop {
        let mut x = p.base.clone();
        for (g, &l) in p.generators.iter().zip(&idx) {
            x = x.add(&g.scale(&Rational::from_integer(BigInt::from(l))));
        }
        if !seen.insert(x) {
            return Ok(false);
        }
        let mut slot = 0;
        loop {
            if slot == idx.len() {
                return Ok(true);
            }
            if idx[slot] < p.lengths[slot] {
                idx[slot] += 1;
                break;
            }
            idx[slot] = 1;
            slot += 1;
        }
    }
}
