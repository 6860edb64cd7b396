//! `Sing(V)` for `V = GF(p)^n` as a finite semigroup.

use std::collections::HashMap;
use std::sync::Arc;

use crate::gf::{enumerate_endos, Endo, Field};
use crate::semigroup::FiniteSemigroup;
use crate::{Error, Result};

/// The singular n×n matrices in lexicographic order, with their Cayley table
/// under matrix product.
#[derive(Clone, Debug)]
pub struct SingSemigroup {
    field: Field,
    n: usize,
    elements: Vec<Endo>,
    index: HashMap<Endo, usize>,
    semigroup: Arc<FiniteSemigroup>,
}

impl SingSemigroup {
    pub fn build(field: Field, n: usize) -> Result<Self> {
        let elements = enumerate_endos(field, n, true)?;
        Self::from_elements(field, n, elements)
    }

    fn from_elements(field: Field, n: usize, elements: Vec<Endo>) -> Result<Self> {
        let index: HashMap<Endo, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let labels = elements.iter().map(Endo::label).collect();
        let table: Vec<Vec<usize>> = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| {
                        index
                            .get(&a.mul(b))
                            .copied()
                            .ok_or_else(|| Error::NotClosed(format!("{a}·{b}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let semigroup = Arc::new(FiniteSemigroup::from_table(labels, table)?);
        Ok(SingSemigroup {
            field,
            n,
            elements,
            index,
            semigroup,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[Endo] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Endo {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &Endo) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn semigroup(&self) -> &Arc<FiniteSemigroup> {
        &self.semigroup
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sing_gf2_2() {
        let s = SingSemigroup::build(Field::new(2).unwrap(), 2).unwrap();
        assert_eq!(s.order(), 10);
        assert_eq!(s.semigroup().idempotents().len(), 7);
        assert!(s.semigroup().is_regular());
        let zero = s.index_of(&Endo::zero(s.field(), 2)).unwrap();
        let ideals = s.semigroup().principal_ideals(zero);
        assert_eq!(ideals.left.into_iter().collect::<Vec<_>>(), vec![zero]);
    }

    #[test]
    fn sing_of_a_line_is_trivial() {
        let s = SingSemigroup::build(Field::new(3).unwrap(), 1).unwrap();
        assert_eq!(s.order(), 1);
    }
}
