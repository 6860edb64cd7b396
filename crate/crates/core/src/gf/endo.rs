use std::fmt;

use serde::{Deserialize, Serialize};

use super::rowops::{self, Row};
use super::{Field, MatrixJson, Subspace};
use crate::{Error, Result};

/// An n×n matrix over GF(p) acting on row vectors, `v ↦ v·M`.
///
/// `a.mul(&b)` is the matrix product `M_a·M_b`, i.e. apply `a` first.
/// Ordering is lexicographic on row-major entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct Endo {
    field: Field,
    n: usize,
    rows: Vec<Row>,
}

impl Endo {
    pub fn new(field: Field, rows: Vec<Row>) -> Result<Self> {
        let n = rows.len();
        for r in &rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
            for &x in r {
                field.check_entry(x)?;
            }
        }
        Ok(Endo { field, n, rows })
    }

    pub(crate) fn from_rows_unchecked(field: Field, rows: Vec<Row>) -> Self {
        Endo {
            field,
            n: rows.len(),
            rows,
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Endo {
            field,
            n,
            rows: rowops::identity(n),
        }
    }

    pub fn zero(field: Field, n: usize) -> Self {
        Endo {
            field,
            n,
            rows: vec![vec![0; n]; n],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        self.rows[i][j]
    }

    pub fn apply(&self, v: &[u8]) -> Row {
        rowops::vec_mat(self.field, v, &self.rows, self.n)
    }

    /// `self` then `other`.
    pub fn mul(&self, other: &Endo) -> Endo {
        debug_assert_eq!(self.n, other.n);
        Endo {
            field: self.field,
            n: self.n,
            rows: rowops::mat_mul(self.field, &self.rows, &other.rows, self.n),
        }
    }

    pub fn rank(&self) -> usize {
        rowops::rank(self.field, &self.rows, self.n)
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    pub fn is_singular(&self) -> bool {
        !self.is_invertible()
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    pub fn inverse(&self) -> Option<Endo> {
        rowops::inverse(self.field, &self.rows).map(|rows| Endo {
            field: self.field,
            n: self.n,
            rows,
        })
    }

    /// Transpose, read as the dual map on V* in dual coordinates.
    pub fn transpose(&self) -> Endo {
        Endo {
            field: self.field,
            n: self.n,
            rows: rowops::transpose(&self.rows, self.n),
        }
    }

    /// Row space `Vα`.
    pub fn image(&self) -> Subspace {
        Subspace::span_unchecked(self.field, self.n, self.rows.clone())
    }

    /// `{v : v·M = 0}`.
    pub fn kernel(&self) -> Subspace {
        let cols = rowops::transpose(&self.rows, self.n);
        Subspace::span_unchecked(
            self.field,
            self.n,
            rowops::null_space(self.field, &cols, self.n),
        )
    }

    pub fn image_and_kernel(&self) -> (Subspace, Subspace) {
        (self.image(), self.kernel())
    }

    /// `ε⁻¹·self·ε`.
    pub fn conjugate(&self, eps: &Endo) -> Result<Endo> {
        let inv = eps.inverse().ok_or(Error::NotInvertible)?;
        Ok(inv.mul(self).mul(eps))
    }

    /// The idempotent with image `onto` and kernel `along`; requires
    /// `onto ⊕ along = V`.
    pub fn projection(onto: &Subspace, along: &Subspace) -> Result<Endo> {
        if !onto.is_direct_complement(along) {
            return Err(Error::NotSubspace("direct complement"));
        }
        let field = onto.field();
        let n = onto.ambient_dim();
        let basis: Vec<Row> = onto.basis().iter().chain(along.basis()).cloned().collect();
        let inv = rowops::inverse(field, &basis).expect("direct sum basis");
        let keep: Vec<Row> = (0..n)
            .map(|i| {
                let mut r = vec![0u8; n];
                if i < onto.dim() {
                    r[i] = 1;
                }
                r
            })
            .collect();
        let m = rowops::mat_mul(field, &rowops::mat_mul(field, &inv, &keep, n), &basis, n);
        Ok(Endo { field, n, rows: m })
    }

    /// Compact label: rows of digits separated by `;`.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            for x in r {
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl TryFrom<MatrixJson> for Endo {
    type Error = Error;

    fn try_from(m: MatrixJson) -> Result<Self> {
        let field = Field::new(m.p)?;
        let e = Endo::new(field, m.rows)?;
        if e.n != m.n {
            return Err(Error::DimensionMismatch {
                expected: m.n,
                found: e.n,
            });
        }
        Ok(e)
    }
}

impl From<Endo> for MatrixJson {
    fn from(e: Endo) -> Self {
        MatrixJson {
            p: e.field.p(),
            n: e.n,
            rows: e.rows,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(rows: [[u8; 2]; 2]) -> Endo {
        Endo::new(Field::new(2).unwrap(), rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn image_and_kernel_examples() {
        let f = Field::new(2).unwrap();
        let (im, ker) = m2([[1, 0], [0, 0]]).image_and_kernel();
        assert_eq!(im, Subspace::span(f, 2, &[vec![1, 0]]).unwrap());
        assert_eq!(ker, Subspace::span(f, 2, &[vec![0, 1]]).unwrap());

        let (im, ker) = Endo::zero(f, 2).image_and_kernel();
        assert!(im.is_zero());
        assert_eq!(ker, Subspace::full(f, 2));

        // (x, y)·M = (y, 0)
        let (im, ker) = m2([[0, 0], [1, 0]]).image_and_kernel();
        assert_eq!(im, Subspace::span(f, 2, &[vec![1, 0]]).unwrap());
        assert_eq!(ker, Subspace::span(f, 2, &[vec![1, 0]]).unwrap());
    }

    #[test]
    fn transpose_examples() {
        let f = Field::new(2).unwrap();
        assert_eq!(Endo::identity(f, 2).transpose(), Endo::identity(f, 2));
        let swap = m2([[0, 1], [1, 0]]);
        assert_eq!(swap.transpose(), swap);
    }

    #[test]
    fn conjugate_by_swap() {
        let swap = m2([[0, 1], [1, 0]]);
        let a = m2([[1, 0], [0, 0]]);
        assert_eq!(a.conjugate(&swap).unwrap(), m2([[0, 0], [0, 1]]));
        assert_eq!(a.conjugate(&a), Err(Error::NotInvertible));
    }

    #[test]
    fn projection_has_requested_image_and_kernel() {
        let f = Field::new(3).unwrap();
        let onto = Subspace::span(f, 2, &[vec![1, 2]]).unwrap();
        let along = Subspace::span(f, 2, &[vec![1, 1]]).unwrap();
        let e = Endo::projection(&onto, &along).unwrap();
        assert!(e.is_idempotent());
        assert_eq!(e.image(), onto);
        assert_eq!(e.kernel(), along);
    }

    #[test]
    fn rejects_non_square() {
        let f = Field::new(2).unwrap();
        assert!(Endo::new(f, vec![vec![1, 0, 0], vec![0, 1, 0]]).is_err());
    }
}
