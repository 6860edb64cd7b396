//! Amalgams of cross-connection semigroups over the fibers of a vector
//! bundle.
//!
//! Each fiber `V_i = GF(p)^{d_i}` contributes the branch `S̃Γ_{ε_i}`. The core
//! is `S̃Γ_{ε_W}` on `W̃ = GF(p)^m`, embedded in every branch through the block
//! map `α ↦ [[α, 0], [0, 0]]`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::crossconn::{build_cross_conn_semigroup_over, CrossConnSemigroup};
use crate::gf::{Endo, Field};
use crate::semigroup::{verify_amalgam, Amalgam, AmalgamJson, AmalgamReport, SemigroupMorphism};
use crate::sing::SingSemigroup;
use crate::{Error, Result};

pub const CORE_TAG: &str = "W";

pub fn fiber_tag(i: usize) -> String {
    format!("V{i}")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberFamilySpec {
    pub p: Field,
    pub k: usize,
    pub dims: Vec<usize>,
    pub eps: Vec<Endo>,
}

/// Validates `1 ≤ d_i ≤ k`; `eps` defaults to identities.
pub fn fiber_family(p: Field, k: usize, dims: &[usize], eps: Option<Vec<Endo>>) -> Result<FiberFamilySpec> {
    if dims.is_empty() {
        return Err(Error::InvalidFamily("no fibers".into()));
    }
    if let Some((i, d)) = dims.iter().enumerate().find(|(_, &d)| d == 0 || d > k) {
        return Err(Error::InvalidFamily(format!(
            "fiber {i} has dimension {d}, outside 1..={k}"
        )));
    }
    let eps = match eps {
        None => dims.iter().map(|&d| Endo::identity(p, d)).collect(),
        Some(eps) => {
            if eps.len() != dims.len() {
                return Err(Error::InvalidFamily(format!(
                    "{} automorphisms for {} fibers",
                    eps.len(),
                    dims.len()
                )));
            }
            for (i, (e, &d)) in eps.iter().zip(dims).enumerate() {
                if e.field() != p || e.dim() != d {
                    return Err(Error::InvalidFamily(format!(
                        "automorphism {i} is not an endomorphism of GF({})^{d}",
                        p.p()
                    )));
                }
                if !e.is_invertible() {
                    return Err(Error::NotInvertible);
                }
            }
            eps
        }
    };
    Ok(FiberFamilySpec {
        p,
        k,
        dims: dims.to_vec(),
        eps,
    })
}

#[derive(Clone, Debug)]
pub struct CoreSpec {
    pub m: usize,
    pub tag: String,
    pub semigroup: CrossConnSemigroup,
}

/// The core on `GF(p)^m`, `m` defaulting to the smallest fiber dimension.
pub fn build_core(spec: &FiberFamilySpec, m: Option<usize>, eps_w: Option<Endo>) -> Result<CoreSpec> {
    let max = *spec.dims.iter().min().expect("nonempty family");
    let m = m.unwrap_or(max);
    if m == 0 || m > max {
        return Err(Error::CoreDimension { m, max });
    }
    let eps = eps_w.unwrap_or_else(|| Endo::identity(spec.p, m));
    if eps.field() != spec.p || eps.dim() != m {
        return Err(Error::CoreDimension { m: eps.dim(), max: m });
    }
    let sing = Arc::new(SingSemigroup::build(spec.p, m)?);
    Ok(CoreSpec {
        m,
        tag: CORE_TAG.to_string(),
        semigroup: build_cross_conn_semigroup_over(&eps, sing)?,
    })
}

/// `v ↦ ((vπ)α)ι`: `α` in the top-left block of a `d × d` zero matrix.
pub fn block_embed(alpha: &Endo, d: usize) -> Endo {
    let m = alpha.dim();
    let rows = (0..d)
        .map(|i| (0..d).map(|j| if i < m && j < m { alpha.entry(i, j) } else { 0 }).collect())
        .collect();
    Endo::new(alpha.field(), rows).expect("square block")
}

/// The lift `(α, ·) ↦ (φ(α), ε_i⁻¹φ(α)ε_i)`, verified as an injective
/// homomorphism.
pub fn build_embedding(core: &CoreSpec, branch: &CrossConnSemigroup, fiber: usize) -> Result<SemigroupMorphism> {
    let d = branch.epsilon().dim();
    let fail = |reason: String| Error::Embedding { fiber, reason };
    if core.m > d {
        return Err(fail(format!("core dimension {} exceeds fiber dimension {d}", core.m)));
    }
    let map = core
        .semigroup
        .elements()
        .iter()
        .map(|pair| {
            let phi = block_embed(&pair.first, d);
            let j = branch
                .index_of_first(&phi)
                .ok_or_else(|| fail(format!("{phi} is not singular")))?;
            let expected = phi.conjugate(branch.epsilon())?;
            if branch.elements()[j].second != expected {
                return Err(fail(format!("second coordinate of {phi} is not conjugate")));
            }
            Ok(j)
        })
        .collect::<Result<Vec<_>>>()?;
    let f = SemigroupMorphism::new(core.semigroup.semigroup().clone(), branch.semigroup().clone(), map)?;
    let report = f.verify();
    if !report.is_monomorphism() {
        return Err(fail(format!("not an injective homomorphism: {report:?}")));
    }
    Ok(f)
}

#[derive(Clone, Debug)]
pub struct BundleAmalgam {
    pub spec: FiberFamilySpec,
    pub core: CoreSpec,
    pub branches: Vec<CrossConnSemigroup>,
    pub embeddings: Vec<SemigroupMorphism>,
    pub amalgam: Amalgam,
    pub report: AmalgamReport,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BundleAmalgamJson {
    #[serde(flatten)]
    pub amalgam: AmalgamJson,
    pub p: u8,
    pub m: usize,
    pub fiber_dims: Vec<usize>,
    pub report: AmalgamReport,
}

pub fn assemble_amalgam(spec: &FiberFamilySpec, m: Option<usize>, eps_w: Option<Endo>) -> Result<BundleAmalgam> {
    let core = build_core(spec, m, eps_w)?;
    // one Sing(GF(p)^d) per distinct fiber dimension
    let sings: BTreeMap<usize, Arc<SingSemigroup>> = spec
        .dims
        .iter()
        .copied()
        .collect::<std::collections::BTreeSet<_>>()
        .into_par_iter()
        .map(|d| Ok((d, Arc::new(SingSemigroup::build(spec.p, d)?))))
        .collect::<Result<_>>()?;
    let branches = spec
        .eps
        .par_iter()
        .zip(&spec.dims)
        .map(|(e, d)| build_cross_conn_semigroup_over(e, sings[d].clone()))
        .collect::<Result<Vec<_>>>()?;
    let embeddings = branches
        .par_iter()
        .enumerate()
        .map(|(i, b)| build_embedding(&core, b, i))
        .collect::<Result<Vec<_>>>()?;
    let amalgam = Amalgam::new(
        core.tag.clone(),
        core.semigroup.semigroup().clone(),
        branches
            .iter()
            .enumerate()
            .map(|(i, b)| (fiber_tag(i), b.semigroup().clone()))
            .collect(),
        embeddings.clone(),
    )?;
    let report = verify_amalgam(&amalgam);
    Ok(BundleAmalgam {
        spec: spec.clone(),
        core,
        branches,
        embeddings,
        amalgam,
        report,
    })
}

impl BundleAmalgam {
    pub fn to_json(&self) -> BundleAmalgamJson {
        BundleAmalgamJson {
            amalgam: self.amalgam.to_json(),
            p: self.spec.p.p(),
            m: self.core.m,
            fiber_dims: self.spec.dims.clone(),
            report: self.report.clone(),
        }
    }

    /// Core and branches as nodes, embeddings as labelled arrows.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph amalgam {\n  rankdir=LR;\n  node [shape=box];\n");
        let _ = writeln!(
            s,
            "  \"{}\" [label=\"{} = S(GF({})^{}), order {}\"];",
            self.core.tag,
            self.core.tag,
            self.spec.p.p(),
            self.core.m,
            self.core.semigroup.order()
        );
        for (i, b) in self.branches.iter().enumerate() {
            let tag = fiber_tag(i);
            let _ = writeln!(
                s,
                "  \"{tag}\" [label=\"{tag} = S(GF({})^{}), order {}\"];",
                self.spec.p.p(),
                self.spec.dims[i],
                b.order()
            );
        }
        for (i, e) in self.report.embeddings.iter().enumerate() {
            let ok = e.morphism.is_hom && e.morphism.is_injective;
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"phi{i}{}\"];",
                self.core.tag,
                fiber_tag(i),
                if ok { "" } else { " (fails)" }
            );
        }
        s.push_str("}\n");
        s
    }
}
