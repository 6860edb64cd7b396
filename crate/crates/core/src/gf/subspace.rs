use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::rowops::{self, Row};
use super::{Endo, Field, MatrixJson};
use crate::{Error, Result};

/// A subspace of GF(p)^n, stored by its canonical reduced row-echelon basis.
///
/// Two values compare equal exactly when they denote the same subspace.
/// Dual-space subspaces use the same type; coordinates are then taken in the
/// dual basis.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct Subspace {
    field: Field,
    n: usize,
    rows: Vec<Row>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: Field, n: usize, vectors: &[Row]) -> Result<Self> {
        for v in vectors {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            for &x in v {
                field.check_entry(x)?;
            }
        }
        let (rows, pivots) = rowops::rref(field, vectors.to_vec(), n);
        Ok(Subspace {
            field,
            n,
            rows,
            pivots,
        })
    }

    pub(crate) fn span_unchecked(field: Field, n: usize, vectors: Vec<Row>) -> Self {
        let (rows, pivots) = rowops::rref(field, vectors, n);
        Subspace {
            field,
            n,
            rows,
            pivots,
        }
    }

    pub fn zero(field: Field, n: usize) -> Self {
        Subspace {
            field,
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, n: usize) -> Self {
        Subspace {
            field,
            n,
            rows: rowops::identity(n),
            pivots: (0..n).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Row] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_proper(&self) -> bool {
        self.dim() < self.n
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[u8]) -> Option<Row> {
        if v.len() != self.n {
            return None;
        }
        let c: Row = self.pivots.iter().map(|&j| v[j]).collect();
        (self.from_coords(&c) == v).then_some(c)
    }

    pub fn from_coords(&self, c: &[u8]) -> Row {
        rowops::vec_mat(self.field, c, &self.rows, self.n)
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.coords(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.dim() <= other.dim() && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let vs = self.rows.iter().chain(&other.rows).cloned().collect();
        Subspace::span_unchecked(self.field, self.n, vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        self.annihilator()
            .sum(&other.annihilator())
            .annihilator()
    }

    /// True when `self ⊕ other` is the whole space.
    pub fn is_direct_complement(&self, other: &Subspace) -> bool {
        self.dim() + other.dim() == self.n && self.intersection(other).is_zero()
    }

    /// The deterministic complement: standard basis vectors at the non-pivot
    /// columns, in increasing index order.
    pub fn complement(&self) -> Subspace {
        let vs = (0..self.n)
            .filter(|j| !self.pivots.contains(j))
            .map(|j| unit(self.n, j))
            .collect();
        Subspace::span_unchecked(self.field, self.n, vs)
    }

    /// Deterministic complement of `self` inside `outer`, computed in the
    /// coordinates of `outer`'s canonical basis.
    pub fn complement_within(&self, outer: &Subspace) -> Result<Subspace> {
        if !self.is_subspace_of(outer) {
            return Err(Error::NotSubspace("inner"));
        }
        let local: Vec<Row> = self
            .rows
            .iter()
            .map(|r| outer.coords(r).expect("contained"))
            .collect();
        let local = Subspace::span_unchecked(self.field, outer.dim(), local);
        let vs = local
            .complement()
            .rows
            .iter()
            .map(|c| outer.from_coords(c))
            .collect();
        Ok(Subspace::span_unchecked(self.field, self.n, vs))
    }

    /// `{f : f(v) = 0 for all v}` in dual coordinates, `f(v) = Σ f_i v_i`.
    /// The same operation maps dual subspaces back to their pre-annihilators.
    pub fn annihilator(&self) -> Subspace {
        let vs = rowops::null_space(self.field, &self.rows, self.n);
        Subspace::span_unchecked(self.field, self.n, vs)
    }

    /// Image `{v·M : v ∈ self}` under the right action of `m`.
    pub fn image_under(&self, m: &Endo) -> Subspace {
        let vs = self.rows.iter().map(|r| m.apply(r)).collect();
        Subspace::span_unchecked(self.field, self.n, vs)
    }

    /// Every vector of the subspace, in coordinate-lexicographic order.
    pub fn vectors(&self) -> Vec<Row> {
        let k = self.dim();
        let p = self.field.order();
        let total = p.pow(k as u32);
        (0..total)
            .map(|mut idx| {
                let mut c = vec![0u8; k];
                for slot in c.iter_mut().rev() {
                    *slot = (idx % p) as u8;
                    idx /= p;
                }
                self.from_coords(&c)
            })
            .collect()
    }
}

pub(crate) fn unit(n: usize, j: usize) -> Row {
    let mut v = vec![0u8; n];
    v[j] = 1;
    v
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.field, self.n, self.dim(), &self.rows).cmp(&(
            other.field,
            other.n,
            other.dim(),
            &other.rows,
        ))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            for x in r {
                write!(f, "{x}")?;
            }
        }
        write!(f, ">")
    }
}

impl TryFrom<MatrixJson> for Subspace {
    type Error = Error;

    fn try_from(m: MatrixJson) -> Result<Self> {
        let field = Field::new(m.p)?;
        Subspace::span(field, m.n, &m.rows)
    }
}

impl From<Subspace> for MatrixJson {
    fn from(s: Subspace) -> Self {
        MatrixJson {
            p: s.field.p(),
            n: s.n,
            rows: s.rows,
        }
    }
}
