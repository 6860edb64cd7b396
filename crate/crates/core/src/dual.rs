//! The annihilator category `A(V)` and the dual side of `S(V)`.
//!
//! Functionals on `GF(p)^n` are coordinate rows, so `A(V)` lives in the same
//! coordinate space as `V` and shares the subspace machinery. The dual of
//! `α` is its transpose, acting on functionals by `f ↦ f·αᵀ`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::category::{
    direct_sum_m_set, is_idempotent, principal_cone, Cone, ConeSemigroup, SubspaceCategory,
};
use crate::gf::{enumerate_subspaces, Field, LinearMap, Subspace};
use crate::semigroup::{MorphismReport, SemigroupMorphism};
use crate::sing::SingSemigroup;
use crate::{Error, Result};

/// A nonzero subspace `A ⊆ V` together with its annihilator `A° ⊆ V*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DualObjectTag {
    pub primal: Subspace,
    pub dual: Subspace,
}

impl DualObjectTag {
    pub fn of(primal: Subspace) -> Self {
        let dual = primal.annihilator();
        DualObjectTag { primal, dual }
    }
}

/// Objects `A°` for nonzero `A ⊆ V`, ordered as subspaces of `V*`, with all
/// linear maps between them.
#[derive(Clone, Debug)]
pub struct AnnihilatorCategory {
    primal: Vec<Subspace>,
    category: SubspaceCategory,
}

pub fn build_annihilator_category(field: Field, n: usize) -> Result<AnnihilatorCategory> {
    let mut tags: Vec<DualObjectTag> = enumerate_subspaces(field, n, false)?
        .into_iter()
        .filter(|a| !a.is_zero())
        .map(DualObjectTag::of)
        .collect();
    tags.sort_by(|x, y| x.dual.cmp(&y.dual));
    let (primal, duals): (Vec<_>, Vec<_>) = tags.into_iter().map(|t| (t.primal, t.dual)).unzip();
    Ok(AnnihilatorCategory {
        primal,
        category: SubspaceCategory::from_objects(field, n, duals),
    })
}

impl AnnihilatorCategory {
    pub fn field(&self) -> Field {
        self.category.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.category.ambient_dim()
    }

    pub fn len(&self) -> usize {
        self.category.len()
    }

    pub fn is_empty(&self) -> bool {
        self.category.is_empty()
    }

    /// The objects `A°`, in order.
    pub fn objects(&self) -> &[Subspace] {
        self.category.objects()
    }

    pub fn object(&self, i: usize) -> &Subspace {
        self.category.object(i)
    }

    /// The nonzero `A` with `A° = object(i)`.
    pub fn primal(&self, i: usize) -> &Subspace {
        &self.primal[i]
    }

    pub fn tag(&self, i: usize) -> DualObjectTag {
        DualObjectTag {
            primal: self.primal[i].clone(),
            dual: self.object(i).clone(),
        }
    }

    pub fn index_of(&self, y: &Subspace) -> Option<usize> {
        self.category.index_of(y)
    }

    /// The inclusion and hom structure, with the dual objects as a subspace
    /// category.
    pub fn category(&self) -> &SubspaceCategory {
        &self.category
    }

    pub fn hom(&self, i: usize, j: usize) -> Vec<LinearMap> {
        self.category.hom(i, j)
    }

    /// `A ⊆ B ⟺ B° ⊆ A°` on every pair of objects.
    pub fn order_reversed(&self) -> bool {
        (0..self.len()).all(|i| {
            (0..self.len()).all(|j| {
                self.primal[i].is_subspace_of(&self.primal[j]) == self.category.includes(j, i)
            })
        })
    }
}

/// Largest number of composable pairs checked for composition preservation.
pub const COMPOSITION_GUARD: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualIsoReport {
    pub objects: usize,
    pub dual_subspaces: usize,
    /// `A° ↦ A°` hits every proper subspace of `V*` exactly once.
    pub object_bijection: bool,
    /// `(A°)° = A` for every subspace `A`.
    pub double_annihilator: bool,
    pub order_reversal: bool,
    /// `(A∩B)° = A°+B°` and `(A+B)° = A°∩B°`.
    pub lattice_anti_isomorphism: bool,
    /// Hom-sets of `A(V)` and `S(V*)` agree on every object pair.
    pub hom_bijection: bool,
    /// Checked only when the number of composable pairs is within
    /// [`COMPOSITION_GUARD`].
    pub composition_preserved: Option<bool>,
    /// `{(N_e)° : e idempotent}` is the object set of `A(V)`.
    pub normal_dual_objects: bool,
}

impl DualIsoReport {
    pub fn passed(&self) -> bool {
        self.object_bijection
            && self.double_annihilator
            && self.order_reversal
            && self.lattice_anti_isomorphism
            && self.hom_bijection
            && self.composition_preserved != Some(false)
            && self.normal_dual_objects
    }
}

/// Compares `A(V)` with `S(V*)` built independently from the proper
/// subspaces of the dual space.
pub fn iso_to_dual_subspace_category(av: &AnnihilatorCategory) -> Result<DualIsoReport> {
    let field = av.field();
    let n = av.ambient_dim();
    let sv_dual = SubspaceCategory::build(field, n)?;
    let to_dual: Vec<Option<usize>> = av.objects().iter().map(|y| sv_dual.index_of(y)).collect();
    let hit: BTreeSet<usize> = to_dual.iter().flatten().copied().collect();
    let object_bijection = to_dual.iter().all(Option::is_some)
        && hit.len() == av.len()
        && av.len() == sv_dual.len();

    let all = enumerate_subspaces(field, n, false)?;
    let double_annihilator = all.iter().all(|a| a.annihilator().annihilator() == *a);
    let lattice_anti_isomorphism = all.iter().all(|a| {
        all.iter().all(|b| {
            a.intersection(b).annihilator() == a.annihilator().sum(&b.annihilator())
                && a.sum(b).annihilator() == a.annihilator().intersection(&b.annihilator())
        })
    });

    let hom_bijection = object_bijection
        && (0..av.len()).all(|i| {
            (0..av.len()).all(|j| {
                let here: BTreeSet<LinearMap> = av.hom(i, j).into_iter().collect();
                let there: BTreeSet<LinearMap> = sv_dual
                    .hom(to_dual[i].unwrap(), to_dual[j].unwrap())
                    .into_iter()
                    .collect();
                here == there
            })
        });

    let composition_preserved = if object_bijection {
        composition_check(av, &sv_dual, &to_dual)
    } else {
        Some(false)
    };

    let sing = SingSemigroup::build(field, n)?;
    let normal_duals: BTreeSet<Subspace> = sing
        .elements()
        .iter()
        .filter(|e| e.is_idempotent())
        .map(|e| e.kernel().annihilator())
        .collect();
    let objects: BTreeSet<Subspace> = av.objects().iter().cloned().collect();

    Ok(DualIsoReport {
        objects: av.len(),
        dual_subspaces: sv_dual.len(),
        object_bijection,
        double_annihilator,
        order_reversal: av.order_reversed(),
        lattice_anti_isomorphism,
        hom_bijection,
        composition_preserved,
        normal_dual_objects: normal_duals == objects,
    })
}

fn composition_check(
    av: &AnnihilatorCategory,
    sv_dual: &SubspaceCategory,
    to_dual: &[Option<usize>],
) -> Option<bool> {
    let k = av.len();
    let homs: Vec<Vec<Vec<LinearMap>>> = (0..k)
        .map(|i| (0..k).map(|j| av.hom(i, j)).collect())
        .collect();
    let pairs: usize = (0..k)
        .flat_map(|i| (0..k).flat_map(move |j| (0..k).map(move |l| (i, j, l))))
        .map(|(i, j, l)| homs[i][j].len() * homs[j][l].len())
        .sum();
    if pairs > COMPOSITION_GUARD {
        return None;
    }
    // The functor is the identity on coordinates; a morphism transports only
    // if it is a member of the matching hom-set of `S(V*)`.
    let there: Vec<Vec<BTreeSet<LinearMap>>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| match (to_dual[i], to_dual[j]) {
                    (Some(a), Some(b)) => sv_dual.hom(a, b).into_iter().collect(),
                    _ => BTreeSet::new(),
                })
                .collect()
        })
        .collect();
    let transport = |f: &LinearMap, i: usize, j: usize| -> Option<LinearMap> {
        there[i][j].contains(f).then(|| f.clone())
    };
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                for f in &homs[i][j] {
                    for g in &homs[j][l] {
                        let fg = f.then(g).ok()?;
                        let lhs = transport(&fg, i, l);
                        let rhs = transport(f, i, j)
                            .zip(transport(g, j, l))
                            .and_then(|(a, b)| a.then(&b).ok());
                        if lhs.is_none() || lhs != rhs {
                            return Some(false);
                        }
                    }
                }
            }
        }
    }
    Some(true)
}

/// `(N, N°)` for an idempotent normal cone, where `N` is spanned by the
/// kernels of the components (all of `V` when the vertex is zero).
pub fn normal_dual_object(cat: &SubspaceCategory, cone: &Cone) -> Result<DualObjectTag> {
    if !is_idempotent(cat, cone)? {
        return Err(Error::NotIdempotent);
    }
    let field = cat.field();
    let n = cat.ambient_dim();
    let kernel = if cone.vertex().is_zero() {
        Subspace::full(field, n)
    } else {
        cone.components()
            .iter()
            .fold(Subspace::zero(field, n), |acc, c| acc.sum(&c.kernel()))
    };
    if kernel.is_zero() {
        return Err(Error::IllFormedCone(
            "idempotent cone with injective components has no dual object".into(),
        ));
    }
    Ok(DualObjectTag::of(kernel))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MSetComparison {
    pub idempotent: String,
    pub kernel: Subspace,
    pub iso_objects: Vec<usize>,
    pub direct_sum_objects: Vec<usize>,
}

impl MSetComparison {
    pub fn agrees(&self) -> bool {
        self.iso_objects == self.direct_sum_objects
    }
}

/// For every idempotent `e` of `Sing(V)`: the objects where `ρ^e` is an
/// isomorphism, against `{A : A ⊕ N_e = V}`.
pub fn m_set_comparisons(cat: &SubspaceCategory, sing: &SingSemigroup) -> Result<Vec<MSetComparison>> {
    sing.elements()
        .iter()
        .filter(|e| e.is_idempotent())
        .map(|e| {
            let cone = principal_cone(cat, e)?;
            let tag = normal_dual_object(cat, &cone)?;
            Ok(MSetComparison {
                idempotent: e.label(),
                iso_objects: cone.iso_objects(),
                direct_sum_objects: direct_sum_m_set(cat, &tag.primal),
                kernel: tag.primal,
            })
        })
        .collect()
}

/// `TA(V)` realized as the principal cones of `Sing(V*)` over the dual
/// subspace category, with `α ↦ ρ^{α*}` checked as an isomorphism
/// `Sing(V)^op → TA(V)`.
#[derive(Clone, Debug)]
pub struct TaSemigroup {
    pub cones: ConeSemigroup,
    /// `map[i]` is the cone index of `ρ^{α_i*}`.
    pub map: Vec<usize>,
    pub anti_isomorphism: MorphismReport,
    /// `(αβ)* = β*α*` for every pair.
    pub transpose_reverses_products: bool,
    /// `(α*)* = α` for every element.
    pub transpose_involutive: bool,
}

pub fn build_ta_semigroup(field: Field, n: usize) -> Result<TaSemigroup> {
    let sing = SingSemigroup::build(field, n)?;
    let av = build_annihilator_category(field, n)?;
    let dual_cat = av.category();
    let duals: Vec<_> = sing.elements().iter().map(|a| a.transpose()).collect();
    let cones = duals
        .iter()
        .map(|d| principal_cone(dual_cat, d))
        .collect::<Result<Vec<_>>>()?;
    let mut sorted = cones.clone();
    sorted.sort();
    sorted.dedup();
    let ts = ConeSemigroup::from_cones(dual_cat, sorted, false)?;
    let map = cones
        .iter()
        .map(|c| ts.index_of(c).expect("cone was inserted"))
        .collect::<Vec<_>>();
    let opposite = Arc::new(sing.semigroup().opposite());
    let anti_isomorphism =
        SemigroupMorphism::new(opposite, ts.semigroup().clone(), map.clone())?.verify();

    let index: HashMap<_, _> = duals.iter().enumerate().map(|(i, d)| (d.clone(), i)).collect();
    let transpose_reverses_products = sing.elements().iter().enumerate().all(|(i, a)| {
        sing.elements().iter().enumerate().all(|(j, b)| {
            index.get(&a.mul(b).transpose()) == index.get(&duals[j].mul(&duals[i]))
        })
    });
    let transpose_involutive = sing
        .elements()
        .iter()
        .zip(&duals)
        .all(|(a, d)| d.transpose() == *a);

    Ok(TaSemigroup {
        cones: ts,
        map,
        anti_isomorphism,
        transpose_reverses_products,
        transpose_involutive,
    })
}
