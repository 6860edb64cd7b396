use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::FiniteSemigroup;
use crate::{Error, Result};

/// A principal left ideal `Se`, keyed by the smallest idempotent generating it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealObject {
    pub representative: usize,
    pub generators: Vec<usize>,
    pub elements: Vec<usize>,
}

/// A right translation `x ↦ xu` restricted to `Se`, stored extensionally:
/// `images[k]` is the image of `elements[k]` of the source object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Translation {
    pub u: usize,
    pub images: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomSet {
    pub from: usize,
    pub to: usize,
    pub translations: Vec<Translation>,
    /// Index of the inclusion in `translations` when `Se ⊆ Sf`.
    pub inclusion: Option<usize>,
}

/// The category of principal left ideals generated by idempotents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealCategoryData {
    pub objects: Vec<IdealObject>,
    /// Row-major over `(from, to)` object pairs.
    pub homs: Vec<HomSet>,
}

impl IdealCategoryData {
    pub fn hom(&self, from: usize, to: usize) -> &HomSet {
        &self.homs[from * self.objects.len() + to]
    }
}

pub fn build_left_ideal_category(s: &FiniteSemigroup) -> Result<IdealCategoryData> {
    if let Some(a) = s.irregular_element() {
        return Err(Error::NotRegular(s.label(a).to_string()));
    }
    let mut objects: Vec<IdealObject> = Vec::new();
    for e in s.idempotents() {
        let se: Vec<usize> = s.principal_ideals(e).left.into_iter().collect();
        match objects.iter_mut().find(|o| o.elements == se) {
            Some(o) => o.generators.push(e),
            None => objects.push(IdealObject {
                representative: e,
                generators: vec![e],
                elements: se,
            }),
        }
    }

    let mut homs = Vec::with_capacity(objects.len() * objects.len());
    for (i, src) in objects.iter().enumerate() {
        let e = src.representative;
        for (j, dst) in objects.iter().enumerate() {
            let f = dst.representative;
            let esf: BTreeSet<usize> = (0..s.order()).map(|x| s.mul(s.mul(e, x), f)).collect();
            let mut translations: Vec<Translation> = Vec::new();
            for u in esf {
                let images: Vec<usize> = src.elements.iter().map(|&x| s.mul(x, u)).collect();
                debug_assert!(images.iter().all(|y| dst.elements.binary_search(y).is_ok()));
                if !translations.iter().any(|t| t.images == images) {
                    translations.push(Translation { u, images });
                }
            }
            let contained = src
                .elements
                .iter()
                .all(|x| dst.elements.binary_search(x).is_ok());
            let inclusion = if contained {
                translations.iter().position(|t| t.images == src.elements)
            } else {
                None
            };
            homs.push(HomSet {
                from: i,
                to: j,
                translations,
                inclusion,
            });
        }
    }
    Ok(IdealCategoryData { objects, homs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_regular() {
        let null = FiniteSemigroup::from_fn(vec!["u".into(), "z".into()], |_, _| 1).unwrap();
        assert_eq!(
            build_left_ideal_category(&null),
            Err(Error::NotRegular("u".into()))
        );
    }

    #[test]
    fn left_zero_band() {
        // xy = x: Se = S for every e, so a single object.
        let lz = FiniteSemigroup::from_fn(vec!["a".into(), "b".into()], |a, _| a).unwrap();
        let cat = build_left_ideal_category(&lz).unwrap();
        assert_eq!(cat.objects.len(), 1);
        assert_eq!(cat.objects[0].generators, vec![0, 1]);
        let h = cat.hom(0, 0);
        assert_eq!(h.translations.len(), 1);
        assert_eq!(h.inclusion, Some(0));
    }
}
