use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{CayleyJson, FiniteSemigroup, MorphismReport, SemigroupMorphism};
use crate::{Error, Result};

/// An element tagged with the identifier of the semigroup that owns it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TaggedElement {
    pub tag: String,
    pub index: usize,
}

/// A semigroup amalgam: a core, a family of branches, and one embedding of
/// the core into each branch.
#[derive(Clone, Debug)]
pub struct Amalgam {
    pub core_tag: String,
    pub core: Arc<FiniteSemigroup>,
    pub branch_tags: Vec<String>,
    pub branches: Vec<Arc<FiniteSemigroup>>,
    pub embeddings: Vec<SemigroupMorphism>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub branch: usize,
    pub wired: bool,
    pub image_size: usize,
    #[serde(flatten)]
    pub morphism: MorphismReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmalgamReport {
    pub valid: bool,
    pub disjoint: bool,
    /// Tagged elements shared by more than one semigroup.
    pub collisions: Vec<TaggedElement>,
    pub embeddings: Vec<EmbeddingReport>,
    /// Branches whose embedding is not an injective homomorphism.
    pub failing_branches: Vec<usize>,
}

impl Amalgam {
    pub fn new(
        core_tag: impl Into<String>,
        core: Arc<FiniteSemigroup>,
        branches: Vec<(String, Arc<FiniteSemigroup>)>,
        embeddings: Vec<SemigroupMorphism>,
    ) -> Result<Self> {
        if branches.len() != embeddings.len() {
            return Err(Error::MalformedMorphism(format!(
                "{} embeddings for {} branches",
                embeddings.len(),
                branches.len()
            )));
        }
        let (branch_tags, branches) = branches.into_iter().unzip();
        Ok(Amalgam {
            core_tag: core_tag.into(),
            core,
            branch_tags,
            branches,
            embeddings,
        })
    }

    pub fn core_elements(&self) -> Vec<TaggedElement> {
        tagged(&self.core_tag, self.core.order())
    }

    pub fn branch_elements(&self, i: usize) -> Vec<TaggedElement> {
        tagged(&self.branch_tags[i], self.branches[i].order())
    }

    pub fn to_json(&self) -> AmalgamJson {
        AmalgamJson {
            core_tag: self.core_tag.clone(),
            core: self.core.to_json(),
            branch_tags: self.branch_tags.clone(),
            branches: self.branches.iter().map(|b| b.to_json()).collect(),
            embeddings: self
                .embeddings
                .iter()
                .map(|e| e.map().iter().copied().enumerate().collect())
                .collect(),
        }
    }
}

fn tagged(tag: &str, n: usize) -> Vec<TaggedElement> {
    (0..n)
        .map(|index| TaggedElement {
            tag: tag.to_string(),
            index,
        })
        .collect()
}

/// Wire form. `embeddings[i]` lists `[core_index, branch_index]` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmalgamJson {
    pub core_tag: String,
    pub core: CayleyJson,
    pub branch_tags: Vec<String>,
    pub branches: Vec<CayleyJson>,
    pub embeddings: Vec<Vec<(usize, usize)>>,
}

pub fn verify_amalgam(a: &Amalgam) -> AmalgamReport {
    let mut seen: HashSet<TaggedElement> = HashSet::new();
    let mut collisions = Vec::new();
    let all = std::iter::once(a.core_elements())
        .chain((0..a.branches.len()).map(|i| a.branch_elements(i)));
    for group in all {
        for el in group {
            if !seen.insert(el.clone()) {
                collisions.push(el);
            }
        }
    }
    collisions.sort();
    collisions.dedup();

    let embeddings: Vec<EmbeddingReport> = a
        .embeddings
        .iter()
        .enumerate()
        .map(|(i, phi)| {
            let wired = i < a.branches.len()
                && **phi.source() == *a.core
                && **phi.target() == *a.branches[i];
            EmbeddingReport {
                branch: i,
                wired,
                image_size: phi.image_size(),
                morphism: phi.verify(),
            }
        })
        .collect();
    let failing_branches: Vec<usize> = embeddings
        .iter()
        .filter(|r| !(r.wired && r.morphism.is_monomorphism()))
        .map(|r| r.branch)
        .collect();
    let disjoint = collisions.is_empty();
    AmalgamReport {
        valid: disjoint && failing_branches.is_empty() && a.embeddings.len() == a.branches.len(),
        disjoint,
        collisions,
        embeddings,
        failing_branches,
    }
}

fn null_like(names: &[&str], special: &[((usize, usize), usize)], zero: usize) -> FiniteSemigroup {
    let overrides: BTreeMap<(usize, usize), usize> = special.iter().copied().collect();
    FiniteSemigroup::from_fn(names.iter().map(|s| s.to_string()).collect(), |x, y| {
        overrides.get(&(x, y)).copied().unwrap_or(zero)
    })
    .expect("fixture tables are associative")
}

/// The four-element null semigroup `U = {u,v,w,z}` amalgamated into
/// `S₁ = U ∪ {a}` (`au = ua = v`) and `S₂ = U ∪ {b}` (`bv = vb = w`), all
/// other products `z`, with the inclusions as embeddings.
pub fn null_semigroup_fixture() -> Amalgam {
    const U: usize = 0;
    const V: usize = 1;
    const W: usize = 2;
    const Z: usize = 3;
    const EXTRA: usize = 4;
    let core = Arc::new(null_like(&["u", "v", "w", "z"], &[], Z));
    let s1 = Arc::new(null_like(
        &["u", "v", "w", "z", "a"],
        &[((EXTRA, U), V), ((U, EXTRA), V)],
        Z,
    ));
    let s2 = Arc::new(null_like(
        &["u", "v", "w", "z", "b"],
        &[((EXTRA, V), W), ((V, EXTRA), W)],
        Z,
    ));
    let inclusion = |target: &Arc<FiniteSemigroup>| {
        SemigroupMorphism::new(core.clone(), target.clone(), vec![U, V, W, Z])
            .expect("inclusion is well-typed")
    };
    let embeddings = vec![inclusion(&s1), inclusion(&s2)];
    Amalgam::new(
        "U",
        core.clone(),
        vec![("S1".into(), s1), ("S2".into(), s2)],
        embeddings,
    )
    .expect("two branches, two embeddings")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_products() {
        let a = null_semigroup_fixture();
        let s1 = &a.branches[0];
        let s2 = &a.branches[1];
        let idx = |s: &FiniteSemigroup, l: &str| s.labels().iter().position(|x| x == l).unwrap();
        let (u, v, w, z) = (0, 1, 2, 3);
        let ea = idx(s1, "a");
        assert_eq!(s1.mul(ea, u), v);
        assert_eq!(s1.mul(u, ea), v);
        assert_eq!(s1.mul(ea, ea), z);
        let eb = idx(s2, "b");
        assert_eq!(s2.mul(eb, v), w);
        assert_eq!(s2.mul(v, eb), w);
        assert_eq!(s2.mul(eb, u), z);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(a.core.mul(x, y), z);
            }
        }
    }

    #[test]
    fn fixture_verifies() {
        let r = verify_amalgam(&null_semigroup_fixture());
        assert!(r.valid, "{r:?}");
        assert!(r.embeddings.iter().all(|e| e.image_size == 4));
    }

    #[test]
    fn constant_embedding_is_flagged() {
        let mut a = null_semigroup_fixture();
        let s2 = a.branches[1].clone();
        a.embeddings[1] = SemigroupMorphism::new(a.core.clone(), s2, vec![3; 4]).unwrap();
        let r = verify_amalgam(&a);
        assert!(!r.valid);
        assert_eq!(r.failing_branches, vec![1]);
        assert!(r.embeddings[1].morphism.is_hom);
        assert!(!r.embeddings[1].morphism.is_injective);
    }

    #[test]
    fn shared_tags_collide() {
        let mut a = null_semigroup_fixture();
        a.branch_tags[1] = "U".into();
        let r = verify_amalgam(&a);
        assert!(!r.disjoint);
        assert_eq!(r.collisions.len(), 4);
    }

    #[test]
    fn json_lists_pairs() {
        let js = null_semigroup_fixture().to_json();
        assert_eq!(js.embeddings[0], vec![(0, 0), (1, 1), (2, 2), (3, 3)]);
        assert_eq!(js.branches[1].elements[4], "b");
    }
}
