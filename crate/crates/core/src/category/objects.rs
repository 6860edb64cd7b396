use std::collections::HashMap;

use crate::gf::{enumerate_subspaces, rowops, Field, LinearMap, Subspace};
use crate::{Error, Result};

/// The category `S(V)` of proper subspaces of GF(p)^n (zero included) with
/// all linear maps as morphisms and containment as the subobject relation.
#[derive(Clone, Debug)]
pub struct SubspaceCategory {
    field: Field,
    n: usize,
    objects: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
    contained: Vec<Vec<bool>>,
}

impl SubspaceCategory {
    pub fn build(field: Field, n: usize) -> Result<Self> {
        let objects = enumerate_subspaces(field, n, true)?;
        Ok(Self::from_objects(field, n, objects))
    }

    pub(crate) fn from_objects(field: Field, n: usize, objects: Vec<Subspace>) -> Self {
        let index = objects
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let contained = objects
            .iter()
            .map(|a| objects.iter().map(|b| a.is_subspace_of(b)).collect())
            .collect();
        SubspaceCategory {
            field,
            n,
            objects,
            index,
            contained,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn objects(&self) -> &[Subspace] {
        &self.objects
    }

    pub fn object(&self, i: usize) -> &Subspace {
        &self.objects[i]
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn index_of(&self, a: &Subspace) -> Option<usize> {
        self.index.get(a).copied()
    }

    /// `objects[i] ⊆ objects[j]`.
    pub fn includes(&self, i: usize, j: usize) -> bool {
        self.contained[i][j]
    }

    /// All pairs `(i, j)` with `i ≠ j` and `objects[i] ⊆ objects[j]`.
    pub fn inclusion_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && self.contained[i][j])
            .collect()
    }

    pub fn inclusion(&self, i: usize, j: usize) -> Option<LinearMap> {
        self.includes(i, j)
            .then(|| LinearMap::inclusion(&self.objects[i], &self.objects[j]).expect("contained"))
    }

    /// For `objects[i] ⊆ objects[j]`, a retraction `q: objects[j] → objects[i]`
    /// with `inclusion · q = 1`, splitting along the deterministic complement.
    pub fn retraction(&self, i: usize, j: usize) -> Option<LinearMap> {
        if !self.includes(i, j) {
            return None;
        }
        let (a, b) = (&self.objects[i], &self.objects[j]);
        let c = a.complement_within(b).expect("contained");
        Some(retraction_along(b, a, &c).expect("complement splits"))
    }

    /// Every morphism `objects[i] → objects[j]`.
    pub fn hom(&self, i: usize, j: usize) -> Vec<LinearMap> {
        LinearMap::all(&self.objects[i], &self.objects[j])
    }

    pub(crate) fn require(&self, a: &Subspace) -> Result<usize> {
        self.index_of(a).ok_or(Error::UnknownObject)
    }
}

/// Projection of `outer` onto `onto` along `along`, where
/// `onto ⊕ along = outer`.
pub fn retraction_along(outer: &Subspace, onto: &Subspace, along: &Subspace) -> Result<LinearMap> {
    if !onto.is_subspace_of(outer) || !along.is_subspace_of(outer) {
        return Err(Error::NotSubspace("retraction factor"));
    }
    if onto.dim() + along.dim() != outer.dim() || !onto.intersection(along).is_zero() {
        return Err(Error::NotSubspace("direct complement"));
    }
    let f = outer.field();
    let basis: Vec<Vec<u8>> = onto.basis().iter().chain(along.basis()).cloned().collect();
    let images = outer
        .basis()
        .iter()
        .map(|b| {
            let c = rowops::solve_coords(f, &basis, b).expect("spans outer");
            onto.from_coords(&c[..onto.dim()])
        })
        .collect::<Vec<_>>();
    LinearMap::from_images(outer.clone(), onto.clone(), &images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn object_counts() {
        let f = Field::new(2).unwrap();
        assert_eq!(SubspaceCategory::build(f, 2).unwrap().len(), 4);
        assert_eq!(SubspaceCategory::build(f, 3).unwrap().len(), 15);
    }

    #[test]
    fn zero_is_initial_in_the_order() {
        let cat = SubspaceCategory::build(Field::new(3).unwrap(), 2).unwrap();
        let z = cat.index_of(&Subspace::zero(cat.field(), 2)).unwrap();
        assert!((0..cat.len()).all(|j| cat.includes(z, j)));
    }

    #[test]
    fn retractions_split_inclusions() {
        for (p, n) in [(2, 2), (2, 3), (3, 2)] {
            let cat = SubspaceCategory::build(Field::new(p).unwrap(), n).unwrap();
            for (i, j) in cat.inclusion_pairs() {
                let j_map = cat.inclusion(i, j).unwrap();
                let q = cat.retraction(i, j).unwrap();
                assert!(j_map.then(&q).unwrap().is_identity());
            }
        }
    }
}
