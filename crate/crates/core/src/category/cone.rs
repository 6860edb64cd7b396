use std::fmt;

use serde::{Deserialize, Serialize};

use super::{normal_factorization, SubspaceCategory};
use crate::gf::{Endo, LinearMap, Subspace};
use crate::{Error, Result};

/// A cone in `S(V)`: a vertex and one component `A → vertex` for every object
/// `A`, stored in the category's object order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ConeJson", into = "ConeJson")]
pub struct Cone {
    vertex: Subspace,
    components: Vec<LinearMap>,
}

impl Cone {
    /// Unvalidated; see [`validate_cone`].
    pub fn new(vertex: Subspace, components: Vec<LinearMap>) -> Self {
        Cone { vertex, components }
    }

    pub fn vertex(&self) -> &Subspace {
        &self.vertex
    }

    pub fn components(&self) -> &[LinearMap] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &LinearMap {
        &self.components[i]
    }

    pub fn with_component(mut self, i: usize, m: LinearMap) -> Self {
        self.components[i] = m;
        self
    }

    /// Some component is an isomorphism onto the vertex.
    pub fn is_normal(&self) -> bool {
        self.components.iter().any(LinearMap::is_iso)
    }

    pub fn iso_objects(&self) -> Vec<usize> {
        (0..self.components.len())
            .filter(|&i| self.components[i].is_iso())
            .collect()
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{", self.vertex)?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            for (k, row) in c.matrix().iter().enumerate() {
                if k > 0 {
                    write!(f, ";")?;
                }
                for x in row {
                    write!(f, "{x}")?;
                }
            }
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone({self})")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub object: Subspace,
    pub matrix: Vec<Vec<u8>>,
}

/// `{"vertex":…,"components":[{"object":…,"matrix":…},…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeJson {
    pub vertex: Subspace,
    pub components: Vec<ComponentJson>,
}

impl From<Cone> for ConeJson {
    fn from(c: Cone) -> Self {
        ConeJson {
            components: c
                .components
                .iter()
                .map(|m| ComponentJson {
                    object: m.dom().clone(),
                    matrix: m.matrix().to_vec(),
                })
                .collect(),
            vertex: c.vertex,
        }
    }
}

impl TryFrom<ConeJson> for Cone {
    type Error = Error;

    fn try_from(j: ConeJson) -> Result<Self> {
        let components = j
            .components
            .into_iter()
            .map(|c| LinearMap::new(c.object, j.vertex.clone(), c.matrix))
            .collect::<Result<_>>()?;
        Ok(Cone {
            vertex: j.vertex,
            components,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeReport {
    pub well_formed: bool,
    /// Objects whose component has the wrong domain or codomain.
    pub typing_errors: Vec<usize>,
    /// Inclusion pairs `(A, A')` where `j · γ(A') ≠ γ(A)`.
    pub restriction_violations: Vec<(usize, usize)>,
    pub is_normal: bool,
    pub iso_objects: Vec<usize>,
}

pub fn validate_cone(cat: &SubspaceCategory, cone: &Cone) -> ConeReport {
    let vertex_ok = cat.index_of(&cone.vertex).is_some();
    let mut typing_errors = Vec::new();
    if cone.components.len() != cat.len() {
        typing_errors.extend(cone.components.len().min(cat.len())..cat.len().max(cone.components.len()));
    }
    for (i, c) in cone.components.iter().enumerate().take(cat.len()) {
        if c.dom() != cat.object(i) || c.cod() != &cone.vertex {
            typing_errors.push(i);
        }
    }
    typing_errors.sort_unstable();
    typing_errors.dedup();

    let mut restriction_violations = Vec::new();
    if typing_errors.is_empty() {
        for (i, j) in cat.inclusion_pairs() {
            let via = cat
                .inclusion(i, j)
                .expect("pair is an inclusion")
                .then(&cone.components[j])
                .expect("typed");
            if via != cone.components[i] {
                restriction_violations.push((i, j));
            }
        }
    }
    let well_formed = vertex_ok && typing_errors.is_empty() && restriction_violations.is_empty();
    let iso_objects = if typing_errors.is_empty() {
        cone.iso_objects()
    } else {
        Vec::new()
    };
    ConeReport {
        well_formed,
        typing_errors,
        restriction_violations,
        is_normal: !iso_objects.is_empty(),
        iso_objects,
    }
}

/// `ρ^α`: vertex `Im α`, component at `A` the restriction `α|_A`.
pub fn principal_cone(cat: &SubspaceCategory, alpha: &Endo) -> Result<Cone> {
    if alpha.is_invertible() {
        return Err(Error::NotSingular);
    }
    let vertex = alpha.image();
    let components = cat
        .objects()
        .iter()
        .map(|a| LinearMap::restrict_endo(alpha, a, &vertex))
        .collect::<Result<_>>()?;
    Ok(Cone { vertex, components })
}

/// `γ * f : A ↦ γ(A) · f` for an epimorphism `f` out of the vertex.
pub fn cone_star(cone: &Cone, f: &LinearMap) -> Result<Cone> {
    if f.dom() != &cone.vertex {
        return Err(Error::NotComposable);
    }
    if !f.is_epi() {
        return Err(Error::NotEpimorphism);
    }
    let components = cone
        .components
        .iter()
        .map(|c| c.then(f))
        .collect::<Result<_>>()?;
    Ok(Cone {
        vertex: f.cod().clone(),
        components,
    })
}

/// `γ¹ · γ² = γ¹ * (γ²(c_γ¹))°`.
pub fn cone_compose(cat: &SubspaceCategory, first: &Cone, second: &Cone) -> Result<Cone> {
    if !first.is_normal() || !second.is_normal() {
        return Err(Error::NotNormal);
    }
    let at_vertex = cat.require(&first.vertex)?;
    let component = second
        .components
        .get(at_vertex)
        .ok_or_else(|| Error::IllFormedCone("missing component".into()))?;
    let epi = normal_factorization(component).epi;
    cone_star(first, &epi)
}

pub fn is_idempotent(cat: &SubspaceCategory, cone: &Cone) -> Result<bool> {
    Ok(cone_compose(cat, cone, cone)? == *cone)
}

/// Objects at which an idempotent cone's component is an isomorphism.
pub fn m_set(cat: &SubspaceCategory, cone: &Cone) -> Result<Vec<usize>> {
    if !is_idempotent(cat, cone)? {
        return Err(Error::NotIdempotent);
    }
    Ok(cone.iso_objects())
}

/// `{A : A ⊕ N = V}` among the objects of the category.
pub fn direct_sum_m_set(cat: &SubspaceCategory, kernel: &Subspace) -> Vec<usize> {
    (0..cat.len())
        .filter(|&i| cat.object(i).is_direct_complement(kernel))
        .collect()
}
