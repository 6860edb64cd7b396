//! Cross-connections `Γ_ε` induced by automorphisms `ε` of `V`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::category::{principal_cone, Cone, SubspaceCategory};
use crate::dual::{build_annihilator_category, AnnihilatorCategory};
use crate::gf::{enumerate_endos, Endo, Field, LinearMap, Subspace};
use crate::semigroup::{FiniteSemigroup, MorphismReport, SemigroupMorphism};
use crate::sing::SingSemigroup;
use crate::{Error, Result};

/// `Γ_ε` on `A(V)`, `Y ↦ ε*(Y)`, with its companion `Γ_ε*` on `S(V)`,
/// `A ↦ Aε`.
#[derive(Clone, Debug)]
pub struct CrossConnection {
    eps: Endo,
    eps_inv: Endo,
    eps_t: Endo,
    eps_t_inv: Endo,
    sv: SubspaceCategory,
    av: AnnihilatorCategory,
}

impl CrossConnection {
    pub fn new(eps: Endo) -> Result<Self> {
        let eps_inv = eps.inverse().ok_or(Error::NotInvertible)?;
        let (field, n) = (eps.field(), eps.dim());
        Ok(CrossConnection {
            eps_t: eps.transpose(),
            eps_t_inv: eps_inv.transpose(),
            sv: SubspaceCategory::build(field, n)?,
            av: build_annihilator_category(field, n)?,
            eps,
            eps_inv,
        })
    }

    pub fn epsilon(&self) -> &Endo {
        &self.eps
    }

    pub fn field(&self) -> Field {
        self.eps.field()
    }

    pub fn dim(&self) -> usize {
        self.eps.dim()
    }

    pub fn subspace_category(&self) -> &SubspaceCategory {
        &self.sv
    }

    pub fn annihilator_category(&self) -> &AnnihilatorCategory {
        &self.av
    }

    /// `Γ_ε(Y) = ε*(Y)`.
    pub fn object_map(&self, y: &Subspace) -> Subspace {
        y.image_under(&self.eps_t)
    }

    /// `Γ_ε(g) : ε*(Y) → ε*(Z)` for `g : Y → Z`.
    pub fn morphism_map(&self, g: &LinearMap) -> Result<LinearMap> {
        let (y, z) = (g.dom(), g.cod());
        let (ey, ez) = (self.object_map(y), self.object_map(z));
        let back = LinearMap::restrict_endo(&self.eps_t_inv, &ey, y)?;
        let forth = LinearMap::restrict_endo(&self.eps_t, z, &ez)?;
        back.then(g)?.then(&forth)
    }

    /// `Γ_ε*(A) = Aε`.
    pub fn star_object_map(&self, a: &Subspace) -> Subspace {
        a.image_under(&self.eps)
    }

    /// `Γ_ε*(f) = ε⁻¹ f ε : Aε → Bε` for `f : A → B`.
    pub fn star_morphism_map(&self, f: &LinearMap) -> Result<LinearMap> {
        let (a, b) = (f.dom(), f.cod());
        let (ea, eb) = (self.star_object_map(a), self.star_object_map(b));
        let back = LinearMap::restrict_endo(&self.eps_inv, &ea, a)?;
        let forth = LinearMap::restrict_endo(&self.eps, b, &eb)?;
        back.then(f)?.then(&forth)
    }

    /// The subspace of `V` annihilated by `Γ_ε(Y)`; `M(Γ_ε(Y))` is the set
    /// of its direct complements.
    pub fn kernel_of(&self, y: &Subspace) -> Subspace {
        self.object_map(y).annihilator()
    }
}

/// `Γ_ε`; fails for singular `ε`.
pub fn gamma_eps(eps: &Endo) -> Result<CrossConnection> {
    CrossConnection::new(eps.clone())
}

/// Which functor a functoriality check runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `Γ_ε` on `A(V)`.
    Gamma,
    /// `Γ_ε*` on `S(V)`.
    GammaStar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorialityReport {
    pub side: Side,
    pub exhaustive: bool,
    pub pairs_checked: usize,
    pub identities_preserved: bool,
    pub objects_preserved: bool,
    /// First failing composable pair, as labels.
    pub witness: Option<(String, String)>,
}

impl FunctorialityReport {
    pub fn passed(&self) -> bool {
        self.identities_preserved && self.objects_preserved && self.witness.is_none()
    }
}

impl CrossConnection {
    fn side_category(&self, side: Side) -> &SubspaceCategory {
        match side {
            Side::Gamma => self.av.category(),
            Side::GammaStar => &self.sv,
        }
    }

    fn side_object(&self, side: Side, x: &Subspace) -> Subspace {
        match side {
            Side::Gamma => self.object_map(x),
            Side::GammaStar => self.star_object_map(x),
        }
    }

    fn side_morphism(&self, side: Side, f: &LinearMap) -> Result<LinearMap> {
        match side {
            Side::Gamma => self.morphism_map(f),
            Side::GammaStar => self.star_morphism_map(f),
        }
    }

    /// Identities, object targets and `F(fg) = F(f)F(g)`. Exhaustive when the
    /// number of composable pairs is at most `limit`, otherwise `limit`
    /// random pairs drawn from `seed`.
    pub fn functoriality(&self, side: Side, limit: usize, seed: u64) -> Result<FunctorialityReport> {
        let cat = self.side_category(side);
        let k = cat.len();
        let identities_preserved = cat.objects().iter().all(|x| {
            self.side_morphism(side, &LinearMap::identity(x))
                .map(|m| m.is_identity())
                .unwrap_or(false)
        });
        let objects_preserved = cat
            .objects()
            .iter()
            .all(|x| cat.index_of(&self.side_object(side, x)).is_some());

        let p = cat.field().p() as u128;
        let hom_size = |i: usize, j: usize| -> u128 {
            p.saturating_pow((cat.object(i).dim() * cat.object(j).dim()) as u32)
        };
        let total: u128 = (0..k)
            .flat_map(|i| (0..k).flat_map(move |j| (0..k).map(move |l| (i, j, l))))
            .map(|(i, j, l)| hom_size(i, j).saturating_mul(hom_size(j, l)))
            .sum();

        let check = |f: &LinearMap, g: &LinearMap| -> Result<bool> {
            let lhs = self.side_morphism(side, &f.then(g)?)?;
            let rhs = self
                .side_morphism(side, f)?
                .then(&self.side_morphism(side, g)?)?;
            Ok(lhs == rhs)
        };

        let mut witness = None;
        let mut pairs_checked = 0;
        let exhaustive = total <= limit as u128;
        if exhaustive {
            'outer: for i in 0..k {
                for j in 0..k {
                    let fs = cat.hom(i, j);
                    for l in 0..k {
                        let gs = cat.hom(j, l);
                        for f in &fs {
                            for g in &gs {
                                pairs_checked += 1;
                                if !check(f, g)? {
                                    witness = Some((format!("{f:?}"), format!("{g:?}")));
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..limit {
                let (i, j, l) = (rng.gen_range(0..k), rng.gen_range(0..k), rng.gen_range(0..k));
                let f = LinearMap::random(&mut rng, cat.object(i), cat.object(j));
                let g = LinearMap::random(&mut rng, cat.object(j), cat.object(l));
                pairs_checked += 1;
                if !check(&f, &g)? {
                    witness = Some((format!("{f:?}"), format!("{g:?}")));
                    break;
                }
            }
        }
        Ok(FunctorialityReport {
            side,
            exhaustive,
            pairs_checked,
            identities_preserved,
            objects_preserved,
            witness,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringWitness {
    pub object: Subspace,
    /// First `Y` in object order with `A ∈ M(Γ_ε(Y))`.
    pub witness: Option<Subspace>,
    /// The subspace annihilated by `Γ_ε(witness)`.
    pub kernel: Option<Subspace>,
}

/// Covering condition plus the local-isomorphism reading: `Γ_ε` preserves
/// inclusions, and is injective on every hom-set and bijective onto the
/// target hom-set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossConnectionReport {
    pub covering: Vec<CoveringWitness>,
    pub covering_holds: bool,
    pub inclusion_preserving: bool,
    pub hom_injective: bool,
    pub hom_bijective: bool,
}

impl CrossConnectionReport {
    pub fn passed(&self) -> bool {
        self.covering_holds && self.inclusion_preserving && self.hom_injective && self.hom_bijective
    }
}

pub fn verify_cross_connection(c: &CrossConnection) -> Result<CrossConnectionReport> {
    let av = &c.av;
    let kernels: Vec<Subspace> = av.objects().iter().map(|y| c.kernel_of(y)).collect();
    let covering: Vec<CoveringWitness> = c
        .sv
        .objects()
        .iter()
        .map(|a| {
            let hit = kernels.iter().position(|n| a.is_direct_complement(n));
            CoveringWitness {
                object: a.clone(),
                witness: hit.map(|i| av.object(i).clone()),
                kernel: hit.map(|i| kernels[i].clone()),
            }
        })
        .collect();
    let covering_holds = covering.iter().all(|w| w.witness.is_some());

    let images: Vec<Subspace> = av.objects().iter().map(|y| c.object_map(y)).collect();
    let inclusion_preserving = (0..av.len()).all(|i| {
        (0..av.len()).all(|j| !av.category().includes(i, j) || images[i].is_subspace_of(&images[j]))
    });

    let mut hom_injective = true;
    let mut hom_bijective = true;
    for i in 0..av.len() {
        for j in 0..av.len() {
            let homs = av.hom(i, j);
            let mapped = homs
                .iter()
                .map(|g| c.morphism_map(g))
                .collect::<Result<BTreeSet<_>>>()?;
            if mapped.len() != homs.len() {
                hom_injective = false;
            }
            let target: BTreeSet<LinearMap> = LinearMap::all(&images[i], &images[j]).into_iter().collect();
            if mapped != target {
                hom_bijective = false;
            }
        }
    }
    Ok(CrossConnectionReport {
        covering,
        covering_holds,
        inclusion_preserving,
        hom_injective,
        hom_bijective,
    })
}

/// How `(Aα)°` in the bifunctor membership predicate is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipReading {
    /// Annihilator of the image of `A` under `α`.
    #[default]
    Literal,
    /// Annihilator of the kernel of `α`.
    KernelAnnihilator,
}

impl MembershipReading {
    pub fn name(self) -> &'static str {
        match self {
            MembershipReading::Literal => "literal",
            MembershipReading::KernelAnnihilator => "kernel-annihilator",
        }
    }
}

/// `Im α ⊆ A` and the annihilator condition against `target`.
fn member(reading: MembershipReading, alpha: &Endo, a: &Subspace, target: &Subspace) -> bool {
    if !alpha.image().is_subspace_of(a) {
        return false;
    }
    let w = match reading {
        MembershipReading::Literal => a.image_under(alpha),
        MembershipReading::KernelAnnihilator => alpha.kernel(),
    };
    w.annihilator().is_subspace_of(target)
}

/// `Γ_ε(A, Y)` and `Γ_ε*(A, Y)` over all endomorphisms of `V`, each sorted.
pub fn bifunctor_sets(
    c: &CrossConnection,
    all: &[Endo],
    a: &Subspace,
    y: &Subspace,
    reading: MembershipReading,
) -> (Vec<Endo>, Vec<Endo>) {
    let ey = c.object_map(y);
    let ae = c.star_object_map(a);
    let left = all.iter().filter(|al| member(reading, al, a, &ey)).cloned().collect();
    let right = all.iter().filter(|b| member(reading, b, &ae, y)).cloned().collect();
    (left, right)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiData {
    pub object: Subspace,
    pub dual_object: Subspace,
    pub domain_size: usize,
    pub codomain_size: usize,
    pub lands_in_codomain: bool,
    pub injective: bool,
    pub surjective: bool,
    /// A member whose conjugate leaves `Γ_ε*(A, Y)`, or collides.
    pub witness: Option<Endo>,
}

impl ChiData {
    pub fn bijective(&self) -> bool {
        self.lands_in_codomain && self.injective && self.surjective
    }
}

/// `χ(A, Y) : α ↦ ε⁻¹αε` from `Γ_ε(A, Y)` to `Γ_ε*(A, Y)`.
pub fn chi(
    c: &CrossConnection,
    all: &[Endo],
    a: &Subspace,
    y: &Subspace,
    reading: MembershipReading,
) -> ChiData {
    let (dom, cod) = bifunctor_sets(c, all, a, y, reading);
    let cod_set: BTreeSet<&Endo> = cod.iter().collect();
    let mut seen = BTreeSet::new();
    let mut witness = None;
    let mut lands = true;
    let mut injective = true;
    for al in &dom {
        let image = c.eps_inv.mul(al).mul(&c.eps);
        if !cod_set.contains(&image) {
            lands = false;
            witness.get_or_insert_with(|| al.clone());
        }
        if !seen.insert(image) {
            injective = false;
            witness.get_or_insert_with(|| al.clone());
        }
    }
    let surjective = cod.iter().all(|b| seen.contains(b));
    ChiData {
        object: a.clone(),
        dual_object: y.clone(),
        domain_size: dom.len(),
        codomain_size: cod.len(),
        lands_in_codomain: lands,
        injective,
        surjective,
        witness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiReport {
    pub reading: MembershipReading,
    pub pairs: usize,
    pub bijective: bool,
    pub failures: Vec<ChiData>,
}

/// [`chi`] over every `(A, Y)` in `S(V) × A(V)`.
pub fn chi_report(c: &CrossConnection, reading: MembershipReading) -> Result<ChiReport> {
    let all: Vec<(Endo, Subspace)> = enumerate_endos(c.field(), c.dim(), false)?
        .into_iter()
        .map(|e| {
            let im = e.image();
            (e, im)
        })
        .collect();
    let objects = c.sv.objects();
    let per_object: Vec<Vec<ChiData>> = objects
        .par_iter()
        .map(|a| {
            // Only maps with image inside A or Aε can be members on either side.
            let ae = c.star_object_map(a);
            let candidates: Vec<Endo> = all
                .iter()
                .filter(|(_, im)| im.is_subspace_of(a) || im.is_subspace_of(&ae))
                .map(|(e, _)| e.clone())
                .collect();
            c.av.objects()
                .iter()
                .map(|y| chi(c, &candidates, a, y, reading))
                .filter(|d| !d.bijective())
                .collect()
        })
        .collect();
    let failures: Vec<ChiData> = per_object.into_iter().flatten().collect();
    Ok(ChiReport {
        reading,
        pairs: objects.len() * c.av.len(),
        bijective: failures.is_empty(),
        failures,
    })
}

/// The idempotent `e` with `Im e = A`, `ker e = N` where `Γ_ε(Y)` annihilates
/// `N`, and its principal cone `ρ^e`; `None` unless `A ⊕ N = V`.
pub fn linked_cone(c: &CrossConnection, a: &Subspace, y: &Subspace) -> Result<Option<(Endo, Cone)>> {
    let n = c.kernel_of(y);
    if !a.is_direct_complement(&n) {
        return Ok(None);
    }
    let e = Endo::projection(a, &n)?;
    let cone = principal_cone(&c.sv, &e)?;
    Ok(Some((e, cone)))
}

/// `(α, ε⁻¹αε)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinkedPair {
    pub first: Endo,
    pub second: Endo,
}

impl LinkedPair {
    pub fn label(&self) -> String {
        format!("({},{})", self.first, self.second)
    }
}

/// Product in `Sing(V)^op`: `x ∘ y = y·x`.
fn op_mul(x: &Endo, y: &Endo) -> Endo {
    y.mul(x)
}

/// `(α, α')(δ, δ') = (αδ, δ' ∘ α')` with the second factor in the opposite
/// semigroup.
pub fn pair_product(x: &LinkedPair, y: &LinkedPair) -> LinkedPair {
    LinkedPair {
        first: x.first.mul(&y.first),
        second: op_mul(&y.second, &x.second),
    }
}

/// `S̃Γ_ε`, ordered by first coordinate.
#[derive(Clone, Debug)]
pub struct CrossConnSemigroup {
    epsilon: Endo,
    elements: Vec<LinkedPair>,
    index: HashMap<Endo, usize>,
    semigroup: Arc<FiniteSemigroup>,
    sing: Arc<SingSemigroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossConnSemigroupJson {
    pub epsilon: Endo,
    pub elements: Vec<LinkedPair>,
    pub table: Vec<Vec<usize>>,
}

pub fn build_cross_conn_semigroup(eps: &Endo) -> Result<CrossConnSemigroup> {
    let sing = Arc::new(SingSemigroup::build(eps.field(), eps.dim())?);
    build_cross_conn_semigroup_over(eps, sing)
}

/// As [`build_cross_conn_semigroup`], reusing an already built `Sing(V)`.
pub fn build_cross_conn_semigroup_over(eps: &Endo, sing: Arc<SingSemigroup>) -> Result<CrossConnSemigroup> {
    if eps.field() != sing.field() || eps.dim() != sing.dim() {
        return Err(Error::DimensionMismatch {
            expected: sing.dim(),
            found: eps.dim(),
        });
    }
    let elements = sing
        .elements()
        .iter()
        .map(|a| {
            Ok(LinkedPair {
                first: a.clone(),
                second: a.conjugate(eps)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let index: HashMap<Endo, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.first.clone(), i))
        .collect();
    let table = elements
        .par_iter()
        .map(|x| {
            elements
                .iter()
                .map(|y| {
                    let xy = pair_product(x, y);
                    index
                        .get(&xy.first)
                        .copied()
                        .filter(|&k| elements[k] == xy)
                        .ok_or_else(|| Error::NotClosed(xy.label()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let labels = elements.iter().map(LinkedPair::label).collect();
    let semigroup = Arc::new(FiniteSemigroup::from_table(labels, table)?);
    Ok(CrossConnSemigroup {
        epsilon: eps.clone(),
        elements,
        index,
        semigroup,
        sing,
    })
}

impl CrossConnSemigroup {
    pub fn epsilon(&self) -> &Endo {
        &self.epsilon
    }

    pub fn elements(&self) -> &[LinkedPair] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn semigroup(&self) -> &Arc<FiniteSemigroup> {
        &self.semigroup
    }

    pub fn sing(&self) -> &Arc<SingSemigroup> {
        &self.sing
    }

    pub fn index_of_first(&self, first: &Endo) -> Option<usize> {
        self.index.get(first).copied()
    }

    /// `(α, ·) ↦ α` onto `Sing(V)`.
    pub fn first_projection(&self) -> Result<SemigroupMorphism> {
        let map = self
            .elements
            .iter()
            .map(|e| self.sing.index_of(&e.first).ok_or(Error::UnknownObject))
            .collect::<Result<Vec<_>>>()?;
        SemigroupMorphism::new(self.semigroup.clone(), self.sing.semigroup().clone(), map)
    }

    pub fn projection_report(&self) -> Result<MorphismReport> {
        Ok(self.first_projection()?.verify())
    }

    /// `second((α,·)(δ,·)) = ε⁻¹(αδ)ε` for every pair.
    pub fn second_coordinates_consistent(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let k = self.semigroup.mul(i, j);
                let prod = self.elements[i].first.mul(&self.elements[j].first);
                self.elements[k].first == prod
                    && prod.conjugate(&self.epsilon).ok().as_ref() == Some(&self.elements[k].second)
            })
        })
    }

    pub fn to_json(&self) -> CrossConnSemigroupJson {
        CrossConnSemigroupJson {
            epsilon: self.epsilon.clone(),
            elements: self.elements.clone(),
            table: self.semigroup.rows(),
        }
    }
}

/// Conjugation by `ε` is an automorphism of the Cayley table of `Sing(V)`.
pub fn conjugation_is_automorphism(sing: &SingSemigroup, eps: &Endo) -> Result<bool> {
    let map = sing
        .elements()
        .iter()
        .map(|a| {
            a.conjugate(eps)
                .and_then(|c| sing.index_of(&c).ok_or(Error::UnknownObject))
        })
        .collect::<Result<Vec<_>>>()?;
    let s = sing.semigroup().clone();
    Ok(SemigroupMorphism::new(s.clone(), s, map)?.verify().is_isomorphism())
}
