use std::fmt;

use serde::{Deserialize, Serialize};

use super::rowops::{self, Row};
use super::{Endo, Subspace};
use crate::{Error, Result};

/// A linear map between two subspaces of the same ambient space.
///
/// `matrix` has `dim(dom)` rows and `dim(cod)` columns; row `i` holds the
/// `cod`-coordinates of the image of the `i`-th canonical basis vector of `dom`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinearMap {
    dom: Subspace,
    cod: Subspace,
    matrix: Vec<Row>,
}

impl LinearMap {
    pub fn new(dom: Subspace, cod: Subspace, matrix: Vec<Row>) -> Result<Self> {
        if dom.field() != cod.field() {
            return Err(Error::FieldMismatch(dom.field().p(), cod.field().p()));
        }
        if dom.ambient_dim() != cod.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: dom.ambient_dim(),
                found: cod.ambient_dim(),
            });
        }
        if matrix.len() != dom.dim() {
            return Err(Error::DimensionMismatch {
                expected: dom.dim(),
                found: matrix.len(),
            });
        }
        for r in &matrix {
            if r.len() != cod.dim() {
                return Err(Error::DimensionMismatch {
                    expected: cod.dim(),
                    found: r.len(),
                });
            }
            for &x in r {
                dom.field().check_entry(x)?;
            }
        }
        Ok(LinearMap { dom, cod, matrix })
    }

    /// Map sending the canonical basis of `dom` to the given ambient vectors.
    pub fn from_images(dom: Subspace, cod: Subspace, images: &[Row]) -> Result<Self> {
        if images.len() != dom.dim() {
            return Err(Error::DimensionMismatch {
                expected: dom.dim(),
                found: images.len(),
            });
        }
        let matrix = images
            .iter()
            .map(|v| cod.coords(v).ok_or(Error::NotInSubspace))
            .collect::<Result<Vec<_>>>()?;
        Ok(LinearMap { dom, cod, matrix })
    }

    /// `α|_dom : dom → cod`; fails unless `dom·α ⊆ cod`.
    pub fn restrict_endo(alpha: &Endo, dom: &Subspace, cod: &Subspace) -> Result<Self> {
        let images: Vec<Row> = dom.basis().iter().map(|b| alpha.apply(b)).collect();
        LinearMap::from_images(dom.clone(), cod.clone(), &images)
    }

    pub fn identity(a: &Subspace) -> Self {
        LinearMap {
            dom: a.clone(),
            cod: a.clone(),
            matrix: rowops::identity(a.dim()),
        }
    }

    pub fn inclusion(a: &Subspace, b: &Subspace) -> Result<Self> {
        LinearMap::from_images(a.clone(), b.clone(), a.basis())
    }

    /// A uniformly random map `dom → cod`.
    pub fn random<R: rand::Rng>(rng: &mut R, dom: &Subspace, cod: &Subspace) -> Self {
        let p = dom.field().p();
        let matrix = (0..dom.dim())
            .map(|_| (0..cod.dim()).map(|_| rng.gen_range(0..p)).collect())
            .collect();
        LinearMap {
            dom: dom.clone(),
            cod: cod.clone(),
            matrix,
        }
    }

    pub fn zero(dom: &Subspace, cod: &Subspace) -> Self {
        LinearMap {
            dom: dom.clone(),
            cod: cod.clone(),
            matrix: vec![vec![0; cod.dim()]; dom.dim()],
        }
    }

    pub fn dom(&self) -> &Subspace {
        &self.dom
    }

    pub fn cod(&self) -> &Subspace {
        &self.cod
    }

    pub fn matrix(&self) -> &[Row] {
        &self.matrix
    }

    /// Apply to an ambient vector of `dom`.
    pub fn apply(&self, v: &[u8]) -> Result<Row> {
        let c = self.dom.coords(v).ok_or(Error::NotInSubspace)?;
        let d = rowops::vec_mat(self.dom.field(), &c, &self.matrix, self.cod.dim());
        Ok(self.cod.from_coords(&d))
    }

    /// Diagrammatic composition: `self` first, then `next`.
    pub fn then(&self, next: &LinearMap) -> Result<LinearMap> {
        if self.cod != next.dom {
            return Err(Error::NotComposable);
        }
        Ok(LinearMap {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            matrix: rowops::mat_mul(self.dom.field(), &self.matrix, &next.matrix, next.cod.dim()),
        })
    }

    /// Restriction to a subspace of the domain.
    pub fn restrict_to(&self, sub: &Subspace) -> Result<LinearMap> {
        LinearMap::inclusion(sub, &self.dom)?.then(self)
    }

    /// Same map with a different codomain that still contains the image.
    pub fn corestrict(&self, cod: &Subspace) -> Result<LinearMap> {
        LinearMap::from_images(self.dom.clone(), cod.clone(), &self.image_vectors())
    }

    fn image_vectors(&self) -> Vec<Row> {
        self.matrix.iter().map(|r| self.cod.from_coords(r)).collect()
    }

    pub fn rank(&self) -> usize {
        rowops::rank(self.dom.field(), &self.matrix, self.cod.dim())
    }

    pub fn image(&self) -> Subspace {
        Subspace::span_unchecked(self.dom.field(), self.dom.ambient_dim(), self.image_vectors())
    }

    /// Kernel as a subspace of the ambient space (inside `dom`).
    pub fn kernel(&self) -> Subspace {
        let f = self.dom.field();
        let cols = rowops::transpose(&self.matrix, self.cod.dim());
        let local = rowops::null_space(f, &cols, self.dom.dim());
        let vs = local.iter().map(|c| self.dom.from_coords(c)).collect();
        Subspace::span_unchecked(f, self.dom.ambient_dim(), vs)
    }

    pub fn is_iso(&self) -> bool {
        self.dom.dim() == self.cod.dim() && self.rank() == self.dom.dim()
    }

    pub fn is_epi(&self) -> bool {
        self.rank() == self.cod.dim()
    }

    pub fn is_mono(&self) -> bool {
        self.rank() == self.dom.dim()
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.matrix == rowops::identity(self.dom.dim())
    }

    pub fn inverse(&self) -> Option<LinearMap> {
        if !self.is_iso() {
            return None;
        }
        let inv = rowops::inverse(self.dom.field(), &self.matrix)?;
        Some(LinearMap {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            matrix: inv,
        })
    }

    /// All `p^(dim dom · dim cod)` maps `dom → cod`, in entry-lexicographic order.
    pub fn all(dom: &Subspace, cod: &Subspace) -> Vec<LinearMap> {
        let (r, c) = (dom.dim(), cod.dim());
        let p = dom.field().order();
        let cells = r * c;
        let total = p.pow(cells as u32);
        (0..total)
            .map(|mut idx| {
                let mut flat = vec![0u8; cells];
                for slot in flat.iter_mut().rev() {
                    *slot = (idx % p) as u8;
                    idx /= p;
                }
                LinearMap {
                    dom: dom.clone(),
                    cod: cod.clone(),
                    matrix: if c == 0 {
                        vec![Vec::new(); r]
                    } else {
                        flat.chunks(c).map(|ch| ch.to_vec()).collect()
                    },
                }
            })
            .collect()
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{} {:?}", self.dom, self.cod, self.matrix)
    }
}
