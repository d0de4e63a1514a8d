//! Exact linear algebra over `Q`: square matrices, linear systems, bases and
//! subspaces kept in reduced row-echelon form.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::point::Point;
use crate::rational::{int, Rational};

/// Reduces `rows` in place to reduced row-echelon form and returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n_cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in c..n_cols {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut rows = rows.to_vec();
    rref(&mut rows).len()
}

/// Basis of `{x : rows · x = 0}`.
pub fn nullspace(rows: &[Vec<Rational>], n_cols: usize) -> Vec<Vec<Rational>> {
    let mut rows = rows.to_vec();
    let pivots = rref(&mut rows);
    let free: Vec<usize> = (0..n_cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n_cols];
            v[f] = Rational::one();
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// A `d × d` matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    dim: usize,
    entries: Vec<Vec<Rational>>,
}

impl RationalMatrix {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = entries.len();
        if dim == 0 {
            return Err(Error::InvalidArgument("matrix must be non-empty".into()));
        }
        for row in &entries {
            check_dim(dim, row.len())?;
        }
        Ok(Self { dim, entries })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, Rational::one())
    }

    pub fn scalar(dim: usize, value: Rational) -> Self {
        let mut entries = vec![vec![Rational::zero(); dim]; dim];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = value.clone();
        }
        Self { dim, entries }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Point]) -> Result<Self> {
        let dim = columns.len();
        let mut entries = vec![vec![Rational::zero(); dim]; dim];
        for (j, col) in columns.iter().enumerate() {
            check_dim(dim, col.dim())?;
            for (i, x) in col.coords().iter().enumerate() {
                entries[i][j] = x.clone();
            }
        }
        Self::new(entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row][col]
    }

    pub fn column(&self, col: usize) -> Point {
        Point::new(self.entries.iter().map(|r| r[col].clone()).collect())
    }

    pub fn apply(&self, point: &Point) -> Point {
        Point::new(
            self.entries
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(point.coords())
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    pub(crate) fn apply_vec(&self, v: &[Rational]) -> Vec<Rational> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        let d = self.dim;
        let mut entries = vec![vec![Rational::zero(); d]; d];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = Rational::zero();
                for l in 0..d {
                    acc += &self.entries[i][l] * &other.entries[l][j];
                }
                *cell = acc;
            }
        }
        RationalMatrix { dim: d, entries }
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RationalMatrix) -> RationalMatrix {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: &Rational) -> RationalMatrix {
        RationalMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|x| x * factor).collect())
                .collect(),
        }
    }

    fn zip_with(
        &self,
        other: &RationalMatrix,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> RationalMatrix {
        RationalMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
                .collect(),
        }
    }

    pub fn transpose(&self) -> RationalMatrix {
        let d = self.dim;
        let entries = (0..d)
            .map(|j| (0..d).map(|i| self.entries[i][j].clone()).collect())
            .collect();
        RationalMatrix { dim: d, entries }
    }

    pub fn determinant(&self) -> Rational {
        let d = self.dim;
        let mut m = self.entries.clone();
        let mut det = Rational::one();
        for c in 0..d {
            let Some(p) = (c..d).find(|&i| !m[i][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= &m[c][c];
            let inv = m[c][c].recip();
            for i in c + 1..d {
                if m[i][c].is_zero() {
                    continue;
                }
                let factor = &m[i][c] * &inv;
                for j in c..d {
                    let delta = &factor * &m[c][j];
                    m[i][j] -= delta;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<RationalMatrix> {
        let d = self.dim;
        let mut aug: Vec<Vec<Rational>> = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                r
            })
            .collect();
        let pivots = rref(&mut aug);
        if pivots.len() < d || pivots[d - 1] != d - 1 {
            return Err(Error::Singular);
        }
        Ok(RationalMatrix {
            dim: d,
            entries: aug.into_iter().map(|r| r[d..].to_vec()).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn is_scalar(&self) -> bool {
        *self == Self::scalar(self.dim, self.entries[0][0].clone())
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().flatten().all(Rational::is_integer)
    }

    /// Evaluates `Σ coeffs[i] · self^i`.
    pub fn eval_polynomial(&self, coeffs: &[Rational]) -> RationalMatrix {
        let mut acc = Self::scalar(self.dim, Rational::zero());
        for c in coeffs.iter().rev() {
            acc = acc.mul(self).add(&Self::scalar(self.dim, c.clone()));
        }
        acc
    }

    /// Characteristic polynomial `det(x·I − M)`, coefficients low to high
    /// (Faddeev–LeVerrier).
    pub fn characteristic_polynomial(&self) -> Vec<Rational> {
        let n = self.dim;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = Self::scalar(n, Rational::zero());
        for k in 1..=n {
            m = self.mul(&m).add(&Self::scalar(n, coeffs[n - k + 1].clone()));
            let am = self.mul(&m);
            let trace = (0..n).fold(Rational::zero(), |acc, i| acc + &am.entries[i][i]);
            coeffs[n - k] = -trace / int(k as i64);
        }
        coeffs
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.dim)
            .map(|i| {
                let cols: Vec<String> = self.entries[i]
                    .iter()
                    .map(crate::rational::format_rational)
                    .collect();
                format!("({})", cols.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// An ordered family `(L_1, …, L_k)` of invertible `d × d` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    dim: usize,
    maps: Vec<RationalMatrix>,
}

impl LinearSystem {
    pub fn new(maps: Vec<RationalMatrix>) -> Result<Self> {
        let first = maps.first().ok_or(Error::Empty("linear system"))?;
        let dim = first.dim();
        for m in &maps {
            check_dim(dim, m.dim())?;
            if m.determinant().is_zero() {
                return Err(Error::Singular);
            }
        }
        Ok(Self { dim, maps })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn maps(&self) -> &[RationalMatrix] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// The family `(I, L_1⁻¹L_2, …, L_1⁻¹L_k)`.
    pub fn normalized(&self) -> LinearSystem {
        let inv = self.maps[0]
            .inverse()
            .expect("maps are invertible by construction");
        let mut maps = vec![RationalMatrix::identity(self.dim)];
        maps.extend(self.maps[1..].iter().map(|m| inv.mul(m)));
        LinearSystem {
            dim: self.dim,
            maps,
        }
    }

    /// Simultaneous conjugation `L_i ↦ S⁻¹ L_i S`.
    pub fn conjugate(&self, s: &RationalMatrix) -> Result<LinearSystem> {
        check_dim(self.dim, s.dim())?;
        let inv = s.inverse()?;
        LinearSystem::new(self.maps.iter().map(|m| inv.mul(m).mul(s)).collect())
    }
}

/// A basis `b_1, …, b_d` of `Q^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    vectors: Vec<Point>,
    to_coords: RationalMatrix,
}

impl Basis {
    pub fn new(vectors: Vec<Point>) -> Result<Self> {
        let matrix = RationalMatrix::from_columns(&vectors)?;
        let to_coords = matrix.inverse()?;
        Ok(Self { vectors, to_coords })
    }

    pub fn standard(dim: usize) -> Self {
        Self {
            vectors: (0..dim).map(|i| Point::unit(dim, i)).collect(),
            to_coords: RationalMatrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Point] {
        &self.vectors
    }

    pub fn is_standard(&self) -> bool {
        self.to_coords.is_identity()
    }

    /// Coordinates `λ` with `point = Σ λ_i b_i`.
    pub fn coordinates(&self, point: &Point) -> Vec<Rational> {
        self.to_coords.apply(point).into_coords()
    }

    pub fn combine(&self, coords: &[Rational]) -> Point {
        let dim = self.dim();
        let mut acc = vec![Rational::zero(); dim];
        for (lambda, b) in coords.iter().zip(&self.vectors) {
            if lambda.is_zero() {
                continue;
            }
            for (slot, x) in acc.iter_mut().zip(b.coords()) {
                *slot += lambda * x;
            }
        }
        Point::new(acc)
    }
}

/// A subspace of `Q^d`, stored as the rows of its reduced row-echelon basis.
/// Two equal subspaces always have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Point]) -> Result<Self> {
        for v in vectors {
            check_dim(ambient, v.dim())?;
        }
        let rows = vectors.iter().map(|v| v.coords().to_vec()).collect();
        Ok(Self::from_rows(ambient, rows))
    }

    pub(crate) fn from_rows(ambient: usize, mut rows: Vec<Vec<Rational>>) -> Self {
        let pivots = rref(&mut rows);
        Self {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let rows: Vec<Point> = (0..ambient).map(|i| Point::unit(ambient, i)).collect();
        Self::span(ambient, &rows).expect("unit vectors have the ambient dimension")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<Point> {
        self.rows.iter().cloned().map(Point::new).collect()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Canonical representative of `v + U`: `v` with every pivot coordinate cleared.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if out[pc].is_zero() {
                continue;
            }
            let factor = out[pc].clone();
            for (slot, x) in out.iter_mut().zip(row) {
                *slot -= &factor * x;
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn image(&self, m: &RationalMatrix) -> Subspace {
        Self::from_rows(
            self.ambient,
            self.rows.iter().map(|r| m.apply_vec(r)).collect(),
        )
    }

    /// Vectors annihilating every vector of `self` (the orthogonal complement
    /// with respect to the standard pairing).
    pub fn annihilator(&self) -> Subspace {
        let null = nullspace(&self.rows, self.ambient);
        Self::from_rows(self.ambient, null)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{:?}", self.basis())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_ints(rows).unwrap()
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1], &[7, 4]]);
        assert_eq!(a.determinant(), int(1));
        let inv = a.inverse().unwrap();
        assert_eq!(inv, m(&[&[4, -1], &[-7, 2]]));
        assert!(a.mul(&inv).is_identity());
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn characteristic_polynomial_of_rotation() {
        let rot = m(&[&[0, -1], &[1, 0]]);
        assert_eq!(rot.characteristic_polynomial(), vec![int(1), int(0), int(1)]);
        let upper = m(&[&[2, 1, 0], &[0, 3, 0], &[0, 0, 5]]);
        // (x-2)(x-3)(x-5) = x^3 - 10x^2 + 31x - 30
        assert_eq!(
            upper.characteristic_polynomial(),
            vec![int(-30), int(31), int(-10), int(1)]
        );
    }

    #[test]
    fn subspace_is_canonical() {
        let a = Subspace::span(3, &[Point::from_ints(&[1, 1, 0]), Point::from_ints(&[0, 2, 0])]).unwrap();
        let b = Subspace::span(3, &[Point::from_ints(&[3, 0, 0]), Point::from_ints(&[1, -1, 0])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&[int(5), int(-7), int(0)]));
        assert!(!a.contains(&[int(0), int(0), int(1)]));
        assert_eq!(a.annihilator(), Subspace::span(3, &[Point::unit(3, 2)]).unwrap());
    }

    #[test]
    fn coset_reduction_is_constant_on_cosets() {
        let u = Subspace::span(2, &[Point::from_ints(&[1, 2])]).unwrap();
        let x = [int(3), int(1)];
        let y = [int(3) + int(4), int(1) + int(8)];
        assert_eq!(u.reduce(&x), u.reduce(&y));
        assert_ne!(u.reduce(&x), u.reduce(&[int(0), int(0)]));
    }

    #[test]
    fn basis_coordinates_round_trip() {
        let b = Basis::new(vec![Point::from_ints(&[1, 1]), Point::from_ints(&[1, -1])]).unwrap();
        let p = Point::new(vec![int(3), ratio(1, 2)]);
        let c = b.coordinates(&p);
        assert_eq!(b.combine(&c), p);
        assert!(Basis::new(vec![Point::from_ints(&[1, 1]), Point::from_ints(&[2, 2])]).is_err());
    }

    #[test]
    fn nullspace_dimension() {
        let rows = vec![vec![int(1), int(2), int(3)]];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dot = v.iter().zip(&rows[0]).fold(int(0), |acc, (a, b)| acc + a * b);
            assert!(dot.is_zero());
        }
    }
}
