use serde::{Deserialize, Serialize};

use super::objects::retraction_along;
use crate::gf::LinearMap;

/// `f = q · u · j` (diagrammatic): a retraction onto a complement of the
/// kernel, an isomorphism onto the image, and the inclusion of the image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFactorization {
    pub retraction: LinearMap,
    pub iso: LinearMap,
    pub inclusion: LinearMap,
    /// The epimorphic component `q · u`.
    pub epi: LinearMap,
}

impl NormalFactorization {
    pub fn recompose(&self) -> LinearMap {
        self.epi
            .then(&self.inclusion)
            .expect("factors are composable")
    }
}

pub fn normal_factorization(f: &LinearMap) -> NormalFactorization {
    let dom = f.dom();
    let ker = f.kernel();
    let coimage = ker.complement_within(dom).expect("kernel lies in domain");
    let retraction = retraction_along(dom, &coimage, &ker).expect("complement splits domain");
    let image = f.image();
    let iso = f
        .restrict_to(&coimage)
        .and_then(|g| g.corestrict(&image))
        .expect("restriction lands in image");
    let inclusion = LinearMap::inclusion(&image, f.cod()).expect("image lies in codomain");
    let epi = retraction.then(&iso).expect("composable");
    NormalFactorization {
        retraction,
        iso,
        inclusion,
        epi,
    }
}
