use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::FiniteSemigroup;
use crate::{Error, Result};

/// An element-index map between two finite semigroups. Multiplicativity is
/// checked by [`SemigroupMorphism::verify`], never assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupMorphism {
    source: Arc<FiniteSemigroup>,
    target: Arc<FiniteSemigroup>,
    map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismReport {
    pub is_hom: bool,
    pub is_injective: bool,
    pub is_surjective: bool,
    /// `(x, y)` with `f(xy) ≠ f(x)f(y)`.
    pub hom_witness: Option<(usize, usize)>,
    /// `(x, y)` with `x ≠ y` and `f(x) = f(y)`.
    pub injectivity_witness: Option<(usize, usize)>,
}

impl MorphismReport {
    pub fn is_monomorphism(&self) -> bool {
        self.is_hom && self.is_injective
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_hom && self.is_injective && self.is_surjective
    }
}

impl SemigroupMorphism {
    pub fn new(
        source: Arc<FiniteSemigroup>,
        target: Arc<FiniteSemigroup>,
        map: Vec<usize>,
    ) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::MalformedMorphism(format!(
                "{} images for {} source elements",
                map.len(),
                source.order()
            )));
        }
        if let Some(bad) = map.iter().find(|&&y| y >= target.order()) {
            return Err(Error::MalformedMorphism(format!(
                "image index {bad} out of range"
            )));
        }
        Ok(SemigroupMorphism {
            source,
            target,
            map,
        })
    }

    pub fn identity(s: Arc<FiniteSemigroup>) -> Self {
        let map = (0..s.order()).collect();
        SemigroupMorphism {
            source: s.clone(),
            target: s,
            map,
        }
    }

    pub fn source(&self) -> &Arc<FiniteSemigroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteSemigroup> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self` then `next`.
    pub fn then(&self, next: &SemigroupMorphism) -> Result<SemigroupMorphism> {
        if self.target != next.source {
            return Err(Error::NotComposable);
        }
        Ok(SemigroupMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&y| next.map[y]).collect(),
        })
    }

    /// Exhaustive check over all pairs.
    pub fn verify(&self) -> MorphismReport {
        let (s, t, f) = (&self.source, &self.target, &self.map);
        let n = s.order();
        let hom_witness = (0..n).into_par_iter().find_map_first(|x| {
            (0..n)
                .find(|&y| f[s.mul(x, y)] != t.mul(f[x], f[y]))
                .map(|y| (x, y))
        });
        let mut seen = vec![usize::MAX; t.order()];
        let mut injectivity_witness = None;
        for (x, &y) in f.iter().enumerate() {
            if seen[y] != usize::MAX {
                injectivity_witness = Some((seen[y], x));
                break;
            }
            seen[y] = x;
        }
        let mut hit = vec![false; t.order()];
        for &y in f {
            hit[y] = true;
        }
        MorphismReport {
            is_hom: hom_witness.is_none(),
            is_injective: injectivity_witness.is_none(),
            is_surjective: hit.iter().all(|&b| b),
            hom_witness,
            injectivity_witness,
        }
    }

    pub fn image_size(&self) -> usize {
        let mut hit = vec![false; self.target.order()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().filter(|&b| b).count()
    }
}

pub fn verify_morphism(f: &SemigroupMorphism) -> MorphismReport {
    f.verify()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn identity_and_constant_maps() {
        let z3 = Arc::new(FiniteSemigroup::from_fn(labels(3), |a, b| (a + b) % 3).unwrap());
        let id = SemigroupMorphism::identity(z3.clone()).verify();
        assert!(id.is_isomorphism());

        let e = z3.idempotents()[0];
        let c = SemigroupMorphism::new(z3.clone(), z3.clone(), vec![e; 3]).unwrap();
        let r = c.verify();
        assert!(r.is_hom);
        assert!(!r.is_injective);
        assert_eq!(r.injectivity_witness, Some((0, 1)));
    }

    #[test]
    fn non_hom_is_reported() {
        let z3 = Arc::new(FiniteSemigroup::from_fn(labels(3), |a, b| (a + b) % 3).unwrap());
        let swap01 = SemigroupMorphism::new(z3.clone(), z3, vec![1, 0, 2]).unwrap();
        let r = swap01.verify();
        assert!(!r.is_hom);
        assert!(r.hom_witness.is_some());
        assert!(r.is_injective && r.is_surjective);
    }

    #[test]
    fn composition_of_homs_is_hom() {
        let z4 = Arc::new(FiniteSemigroup::from_fn(labels(4), |a, b| (a + b) % 4).unwrap());
        let z2 = Arc::new(FiniteSemigroup::from_fn(labels(2), |a, b| (a + b) % 2).unwrap());
        let double = SemigroupMorphism::new(z4.clone(), z4.clone(), vec![0, 2, 0, 2]).unwrap();
        let parity = SemigroupMorphism::new(z4.clone(), z2, vec![0, 1, 0, 1]).unwrap();
        assert!(double.verify().is_hom && parity.verify().is_hom);
        assert!(double.then(&parity).unwrap().verify().is_hom);
        assert!(parity.then(&double).is_err());
    }

    #[test]
    fn malformed_map() {
        let z2 = Arc::new(FiniteSemigroup::from_fn(labels(2), |a, b| a ^ b).unwrap());
        assert!(SemigroupMorphism::new(z2.clone(), z2.clone(), vec![0]).is_err());
        assert!(SemigroupMorphism::new(z2.clone(), z2, vec![0, 2]).is_err());
    }
}
