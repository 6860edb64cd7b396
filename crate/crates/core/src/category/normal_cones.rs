use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::{cone_compose, principal_cone, validate_cone, Cone, SubspaceCategory};
use crate::gf::{LinearMap, Subspace};
use crate::semigroup::{FiniteSemigroup, MorphismReport, SemigroupMorphism, ASSOCIATIVITY_GUARD};
use crate::sing::SingSemigroup;
use crate::{Error, Result};

/// Limit on raw vertex/component assignments for the brute-force enumeration.
pub const ASSIGNMENT_GUARD: u128 = 1_000_000;
/// Limit on search nodes for the pruned enumeration.
pub const SEARCH_GUARD: u64 = 5_000_000;

/// Every vertex/component assignment, filtered by [`validate_cone`] down to
/// the well-formed normal cones. Sorted.
pub fn brute_force_normal_cones(cat: &SubspaceCategory) -> Result<Vec<Cone>> {
    let p = cat.field().p() as u128;
    let total: u128 = cat
        .objects()
        .iter()
        .map(|v| {
            cat.objects()
                .iter()
                .map(|a| p.saturating_pow((a.dim() * v.dim()) as u32))
                .fold(1u128, |acc, x| acc.saturating_mul(x))
        })
        .sum();
    if total > ASSIGNMENT_GUARD {
        return Err(Error::GuardExceeded {
            what: "cone assignments",
            size: total,
            limit: ASSIGNMENT_GUARD,
        });
    }
    let mut out = Vec::new();
    for vertex in cat.objects() {
        let homs: Vec<Vec<LinearMap>> = cat
            .objects()
            .iter()
            .map(|a| LinearMap::all(a, vertex))
            .collect();
        let mut choice = vec![0usize; homs.len()];
        loop {
            let comps = choice.iter().zip(&homs).map(|(&k, h)| h[k].clone()).collect();
            let cone = Cone::new(vertex.clone(), comps);
            let report = validate_cone(cat, &cone);
            if report.well_formed && report.is_normal {
                out.push(cone);
            }
            // odometer
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    break;
                }
                choice[pos] += 1;
                if choice[pos] < homs[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == choice.len() {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Same set as [`brute_force_normal_cones`], found by assigning components in
/// decreasing object dimension and pruning on agreement over intersections.
pub fn search_normal_cones(cat: &SubspaceCategory) -> Result<Vec<Cone>> {
    let mut order: Vec<usize> = (0..cat.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(cat.object(i).dim()));
    let meets: Vec<Vec<Subspace>> = (0..cat.len())
        .map(|i| {
            (0..cat.len())
                .map(|j| cat.object(i).intersection(cat.object(j)))
                .collect()
        })
        .collect();

    let per_vertex: Vec<Result<Vec<Cone>>> = cat
        .objects()
        .par_iter()
        .map(|vertex| {
            let mut search = Search {
                cat,
                vertex,
                order: &order,
                meets: &meets,
                assigned: vec![None; cat.len()],
                found: Vec::new(),
                nodes: 0,
            };
            search.run(0)?;
            Ok(search.found)
        })
        .collect();
    let mut out = Vec::new();
    for r in per_vertex {
        out.extend(r?);
    }
    out.sort();
    Ok(out)
}

struct Search<'a> {
    cat: &'a SubspaceCategory,
    vertex: &'a Subspace,
    order: &'a [usize],
    meets: &'a [Vec<Subspace>],
    assigned: Vec<Option<LinearMap>>,
    found: Vec<Cone>,
    nodes: u64,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > SEARCH_GUARD {
            return Err(Error::GuardExceeded {
                what: "cone search nodes",
                size: self.nodes as u128,
                limit: SEARCH_GUARD as u128,
            });
        }
        if depth == self.order.len() {
            let comps: Vec<LinearMap> = self.assigned.iter().map(|c| c.clone().unwrap()).collect();
            let cone = Cone::new(self.vertex.clone(), comps);
            if cone.is_normal() {
                self.found.push(cone);
            }
            return Ok(());
        }
        let i = self.order[depth];
        let a = self.cat.object(i);
        let forced = self.order[..depth]
            .iter()
            .find(|&&j| self.cat.includes(i, j))
            .map(|&j| self.assigned[j].as_ref().unwrap().restrict_to(a).expect("subobject"));
        let candidates = match forced {
            Some(m) => vec![m],
            None => LinearMap::all(a, self.vertex),
        };
        for cand in candidates {
            let consistent = self.order[..depth].iter().all(|&j| {
                let meet = &self.meets[i][j];
                meet.is_zero()
                    || cand.restrict_to(meet).expect("meet ⊆ A")
                        == self.assigned[j]
                            .as_ref()
                            .unwrap()
                            .restrict_to(meet)
                            .expect("meet ⊆ B")
            });
            if consistent {
                self.assigned[i] = Some(cand);
                self.run(depth + 1)?;
                self.assigned[i] = None;
            }
        }
        Ok(())
    }
}

/// A set of normal cones closed under cone composition, with its Cayley table.
#[derive(Clone, Debug)]
pub struct ConeSemigroup {
    cones: Vec<Cone>,
    index: HashMap<Cone, usize>,
    semigroup: Arc<FiniteSemigroup>,
    exhaustive: bool,
}

impl ConeSemigroup {
    /// Builds the Cayley table under [`cone_compose`]; fails if a product
    /// leaves the set.
    pub fn from_cones(cat: &SubspaceCategory, cones: Vec<Cone>, exhaustive: bool) -> Result<Self> {
        if cones.len() > ASSOCIATIVITY_GUARD {
            return Err(Error::GuardExceeded {
                what: "cone semigroup order",
                size: cones.len() as u128,
                limit: ASSOCIATIVITY_GUARD as u128,
            });
        }
        let index: HashMap<Cone, usize> = cones
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect();
        let table = cones
            .par_iter()
            .map(|a| {
                cones
                    .iter()
                    .map(|b| {
                        let ab = cone_compose(cat, a, b)?;
                        index
                            .get(&ab)
                            .copied()
                            .ok_or_else(|| Error::NotClosed(format!("{a} · {b} = {ab}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = cones.iter().map(Cone::label).collect();
        let semigroup = Arc::new(FiniteSemigroup::from_table(labels, table)?);
        Ok(ConeSemigroup {
            cones,
            index,
            semigroup,
            exhaustive,
        })
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn index_of(&self, c: &Cone) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn semigroup(&self) -> &Arc<FiniteSemigroup> {
        &self.semigroup
    }

    pub fn order(&self) -> usize {
        self.cones.len()
    }

    /// Whether the cone set came from exhaustive enumeration rather than the
    /// principal-cone construction.
    pub fn is_exhaustive(&self) -> bool {
        self.exhaustive
    }
}

/// `{ρ^α : α ∈ Sing(V)}` in the order of `sing`.
pub fn principal_cones(cat: &SubspaceCategory, sing: &SingSemigroup) -> Result<Vec<Cone>> {
    sing.elements()
        .par_iter()
        .map(|a| principal_cone(cat, a))
        .collect()
}

/// `α ↦ ρ^α` from `Sing(V)` into a cone semigroup.
pub fn principal_morphism(
    cat: &SubspaceCategory,
    sing: &SingSemigroup,
    ts: &ConeSemigroup,
) -> Result<SemigroupMorphism> {
    let map = principal_cones(cat, sing)?
        .iter()
        .map(|c| {
            ts.index_of(c)
                .ok_or_else(|| Error::NotClosed(format!("principal cone {c} missing")))
        })
        .collect::<Result<Vec<_>>>()?;
    SemigroupMorphism::new(sing.semigroup().clone(), ts.semigroup().clone(), map)
}

/// The semigroup of normal cones of `S(V)`.
///
/// For GF(2)² every assignment is enumerated and filtered. Otherwise the
/// principal cones are built, and closure plus the isomorphism with `Sing(V)`
/// are verified.
pub fn enumerate_normal_cones(cat: &SubspaceCategory) -> Result<ConeSemigroup> {
    if cat.field().p() == 2 && cat.ambient_dim() == 2 {
        let cones = brute_force_normal_cones(cat)?;
        return ConeSemigroup::from_cones(cat, cones, true);
    }
    let sing = SingSemigroup::build(cat.field(), cat.ambient_dim())?;
    let ts = ConeSemigroup::from_cones(cat, principal_cones(cat, &sing)?, false)?;
    let report: MorphismReport = principal_morphism(cat, &sing, &ts)?.verify();
    if !report.is_isomorphism() {
        return Err(Error::NotClosed(format!(
            "principal cone map is not an isomorphism: {report:?}"
        )));
    }
    Ok(ts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    fn cat(p: u8, n: usize) -> SubspaceCategory {
        SubspaceCategory::build(Field::new(p).unwrap(), n).unwrap()
    }

    #[test]
    fn search_agrees_with_brute_force() {
        for (p, n) in [(2, 2), (3, 2), (2, 1)] {
            let c = cat(p, n);
            assert_eq!(brute_force_normal_cones(&c).unwrap(), search_normal_cones(&c).unwrap());
        }
    }

    #[test]
    fn incomparable_lines_give_independent_components() {
        // With n = 2 no two lines are comparable, so each line vertex carries
        // p^{p+1} - 1 normal cones, plus the single cone at the zero vertex.
        for p in [2u8, 3] {
            let q = p as usize;
            let expected = 1 + (q + 1) * (q.pow(q as u32 + 1) - 1);
            assert_eq!(search_normal_cones(&cat(p, 2)).unwrap().len(), expected);
        }
    }

    #[test]
    fn principal_cones_exhaust_in_dimension_three() {
        let c = cat(2, 3);
        let found = search_normal_cones(&c).unwrap();
        let sing = SingSemigroup::build(c.field(), 3).unwrap();
        let mut principal = principal_cones(&c, &sing).unwrap();
        principal.sort();
        assert_eq!(found, principal);
        assert_eq!(found.len(), 344);
    }

    #[test]
    fn principal_map_is_an_isomorphism_off_the_plane() {
        for (p, n) in [(2, 3), (3, 2)] {
            let c = cat(p, n);
            let sing = SingSemigroup::build(c.field(), n).unwrap();
            let ts = ConeSemigroup::from_cones(&c, principal_cones(&c, &sing).unwrap(), false)
                .unwrap();
            assert!(principal_morphism(&c, &sing, &ts).unwrap().verify().is_isomorphism());
        }
    }

    #[test]
    fn exhaustive_cones_at_gf2_plane() {
        let c = cat(2, 2);
        let ts = enumerate_normal_cones(&c).unwrap();
        assert!(ts.is_exhaustive());
        assert_eq!(ts.order(), 22);
        let sing = SingSemigroup::build(c.field(), 2).unwrap();
        let r = principal_morphism(&c, &sing, &ts).unwrap().verify();
        assert!(r.is_hom && r.is_injective && !r.is_surjective);
    }
}
