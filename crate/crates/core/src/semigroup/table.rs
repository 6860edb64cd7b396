use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest order for which associativity is checked exhaustively.
pub const ASSOCIATIVITY_GUARD: usize = 1500;

/// A finite semigroup given by element labels and a validated Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CayleyJson", into = "CayleyJson")]
pub struct FiniteSemigroup {
    labels: Vec<String>,
    order: usize,
    table: Vec<usize>,
}

/// `{"elements":[...],"table":[[...]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyJson {
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl FiniteSemigroup {
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let order = labels.len();
        if order == 0 {
            return Err(Error::MalformedTable("empty element list".into()));
        }
        if table.len() != order {
            return Err(Error::MalformedTable(format!(
                "{} rows for {order} elements",
                table.len()
            )));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::MalformedTable(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|&&x| x >= order) {
                return Err(Error::MalformedTable(format!(
                    "row {i} contains out-of-range index {bad}"
                )));
            }
            flat.extend_from_slice(row);
        }
        let s = FiniteSemigroup {
            labels,
            order,
            table: flat,
        };
        s.check_associative()?;
        Ok(s)
    }

    /// Builds the table from a product function on indices.
    pub fn from_fn<F>(labels: Vec<String>, product: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> usize + Sync,
    {
        let n = labels.len();
        let table: Vec<Vec<usize>> = (0..n)
            .into_par_iter()
            .map(|a| (0..n).map(|b| product(a, b)).collect())
            .collect();
        FiniteSemigroup::from_table(labels, table)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        if n > ASSOCIATIVITY_GUARD {
            return Err(Error::GuardExceeded {
                what: "associativity triples",
                size: (n as u128).pow(3),
                limit: (ASSOCIATIVITY_GUARD as u128).pow(3),
            });
        }
        let bad = (0..n).into_par_iter().find_map_first(|a| {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
            None
        });
        match bad {
            None => Ok(()),
            Some((a, b, c)) => Err(Error::NotAssociative {
                a: self.labels[a].clone(),
                b: self.labels[b].clone(),
                c: self.labels[c].clone(),
                witness: (a, b, c),
            }),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|c| c.to_vec()).collect()
    }

    /// The opposite semigroup, `a ∘op b = b ∘ a`.
    pub fn opposite(&self) -> FiniteSemigroup {
        let n = self.order;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = self.mul(b, a);
            }
        }
        FiniteSemigroup {
            labels: self.labels.clone(),
            order: n,
            table,
        }
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.order).filter(|&e| self.mul(e, e) == e).collect()
    }

    /// Some `x` with `a x a = a`, if one exists.
    pub fn inverse_witness(&self, a: usize) -> Option<usize> {
        (0..self.order).find(|&x| self.mul(self.mul(a, x), a) == a)
    }

    pub fn is_regular(&self) -> bool {
        (0..self.order)
            .into_par_iter()
            .all(|a| self.inverse_witness(a).is_some())
    }

    /// First element without an inverse witness.
    pub fn irregular_element(&self) -> Option<usize> {
        (0..self.order).find(|&a| self.inverse_witness(a).is_none())
    }

    /// The literal sets `Sa`, `aS`, `SaS` (no identity adjoined).
    pub fn principal_ideals(&self, a: usize) -> PrincipalIdeals {
        let n = self.order;
        let left: BTreeSet<usize> = (0..n).map(|x| self.mul(x, a)).collect();
        let right: BTreeSet<usize> = (0..n).map(|x| self.mul(a, x)).collect();
        let two_sided = left
            .iter()
            .flat_map(|&xa| (0..n).map(move |y| (xa, y)))
            .map(|(xa, y)| self.mul(xa, y))
            .collect();
        PrincipalIdeals {
            left,
            right,
            two_sided,
        }
    }

    /// `S¹a = Sa ∪ {a}`.
    pub fn left_ideal_s1(&self, a: usize) -> BTreeSet<usize> {
        let mut s: BTreeSet<usize> = (0..self.order).map(|x| self.mul(x, a)).collect();
        s.insert(a);
        s
    }

    /// `aS¹ = aS ∪ {a}`.
    pub fn right_ideal_s1(&self, a: usize) -> BTreeSet<usize> {
        let mut s: BTreeSet<usize> = (0..self.order).map(|x| self.mul(a, x)).collect();
        s.insert(a);
        s
    }

    pub fn to_json(&self) -> CayleyJson {
        self.clone().into()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalIdeals {
    pub left: BTreeSet<usize>,
    pub right: BTreeSet<usize>,
    pub two_sided: BTreeSet<usize>,
}

impl TryFrom<CayleyJson> for FiniteSemigroup {
    type Error = Error;

    fn try_from(j: CayleyJson) -> Result<Self> {
        FiniteSemigroup::from_table(j.elements, j.table)
    }
}

impl From<FiniteSemigroup> for CayleyJson {
    fn from(s: FiniteSemigroup) -> Self {
        CayleyJson {
            table: s.rows(),
            elements: s.labels,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn non_associative_witness() {
        // a=0, b=1: aa=b, ab=a, ba=a, bb=a
        let err = FiniteSemigroup::from_table(labels(&["a", "b"]), vec![vec![1, 0], vec![0, 0]])
            .unwrap_err();
        match err {
            Error::NotAssociative { a, b, c, witness } => {
                assert_eq!((a.as_str(), b.as_str(), c.as_str()), ("a", "a", "b"));
                assert_eq!(witness, (0, 0, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_tables() {
        assert!(FiniteSemigroup::from_table(labels(&["a"]), vec![vec![1]]).is_err());
        assert!(FiniteSemigroup::from_table(labels(&["a", "b"]), vec![vec![0, 0]]).is_err());
        assert!(FiniteSemigroup::from_table(vec![], vec![]).is_err());
    }

    #[test]
    fn cyclic_group_basics() {
        let z3 = FiniteSemigroup::from_fn(labels(&["0", "1", "2"]), |a, b| (a + b) % 3).unwrap();
        assert_eq!(z3.idempotents(), vec![0]);
        assert!(z3.is_regular());
        assert_eq!(z3.principal_ideals(1).left.len(), 3);
    }

    #[test]
    fn json_roundtrip() {
        let z2 = FiniteSemigroup::from_fn(labels(&["e", "g"]), |a, b| a ^ b).unwrap();
        let js = serde_json::to_string(&z2).unwrap();
        assert_eq!(js, r#"{"elements":["e","g"],"table":[[0,1],[1,0]]}"#);
        let back: FiniteSemigroup = serde_json::from_str(&js).unwrap();
        assert_eq!(back, z2);
    }

    #[test]
    fn opposite_reverses_products() {
        let left_zero = FiniteSemigroup::from_fn(labels(&["x", "y"]), |a, _| a).unwrap();
        let op = left_zero.opposite();
        assert_eq!(op.mul(0, 1), 1);
        assert_eq!(left_zero.mul(0, 1), 0);
    }
}
