//! Simplicial maps between finite simplicial sets.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Error;
use crate::sset::space::{SimplexId, SimplexRef, Space};

/// A simplicial map, stored as the image reference of every nondegenerate
/// domain simplex and extended to degenerate simplices by the word calculus.
#[derive(Clone, Debug)]
pub struct SMap {
    domain: Arc<Space>,
    codomain: Arc<Space>,
    images: Vec<Vec<SimplexRef>>,
    pointed: bool,
}

impl PartialEq for SMap {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.codomain == other.codomain && self.images == other.images
    }
}
impl Eq for SMap {}

impl SMap {
    /// Build and validate a map from its nondegenerate images.
    pub fn new(
        domain: Arc<Space>,
        codomain: Arc<Space>,
        images: Vec<Vec<SimplexRef>>,
        pointed: bool,
    ) -> Result<SMap, Error> {
        let f = SMap { domain, codomain, images, pointed };
        f.validate()?;
        Ok(f)
    }

    /// Build a map from an assignment function on nondegenerate simplices.
    pub fn from_fn(
        domain: Arc<Space>,
        codomain: Arc<Space>,
        pointed: bool,
        mut assign: impl FnMut(SimplexId) -> Result<SimplexRef, Error>,
    ) -> Result<SMap, Error> {
        let mut images = Vec::new();
        for dim in 0..=domain.top_dim() {
            let mut row = Vec::with_capacity(domain.rank(dim));
            for id in domain.ids(dim) {
                row.push(assign(id)?);
            }
            images.push(row);
        }
        SMap::new(domain, codomain, images, pointed)
    }

    pub fn identity(space: Arc<Space>) -> SMap {
        let images = (0..=space.top_dim())
            .map(|dim| space.ids(dim).map(SimplexRef::nondeg).collect())
            .collect();
        SMap { domain: space.clone(), codomain: space, images, pointed: false }
    }

    /// The identity table, flagged pointed.
    pub fn identity_pointed(space: Arc<Space>) -> Result<SMap, Error> {
        if !space.is_pointed() {
            return Err(Error::NotPointed);
        }
        let mut f = SMap::identity(space);
        f.pointed = true;
        Ok(f)
    }

    /// Constant map at a vertex of the codomain.
    pub fn constant(domain: Arc<Space>, codomain: Arc<Space>, v: SimplexId) -> Result<SMap, Error> {
        if v.dim != 0 || !codomain.contains(v) {
            return Err(Error::BadBasepoint);
        }
        SMap::from_fn(domain, codomain, false, |id| {
            Ok(SimplexRef { base: v, word: crate::sset::word::Word::vertex_to_dim(id.dim) })
        })
    }

    pub fn domain(&self) -> &Arc<Space> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Space> {
        &self.codomain
    }

    pub fn is_pointed_flagged(&self) -> bool {
        self.pointed
    }

    pub fn image_of(&self, id: SimplexId) -> &SimplexRef {
        &self.images[id.dim][id.idx]
    }

    /// Evaluate on any reference.
    pub fn eval(&self, s: &SimplexRef) -> SimplexRef {
        self.image_of(s.base).under_word(&s.word)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.images.len() < self.domain.top_dim() + 1 && self.domain.total_nondegenerate() > 0 {
            return Err(Error::Validation("map images table too short".into()));
        }
        for dim in 0..=self.domain.top_dim() {
            for id in self.domain.ids(dim) {
                let img = self.image_of(id);
                if img.dim() != dim || !self.codomain.contains(img.base) {
                    return Err(Error::Validation(format!(
                        "image of {} has wrong dimension or dangling base",
                        self.domain.name(id)
                    )));
                }
                let r = SimplexRef::nondeg(id);
                for i in 0..=dim as u32 {
                    if dim == 0 {
                        break;
                    }
                    let lhs = self.codomain.face(i, &self.eval(&r))?;
                    let rhs = self.eval(&self.domain.face(i, &r)?);
                    if lhs != rhs {
                        return Err(Error::MapFaceMismatch {
                            simplex: self.domain.name(id).to_string(),
                            i,
                        });
                    }
                }
            }
        }
        if self.pointed {
            let (Some(a), Some(b)) = (self.domain.basepoint(), self.codomain.basepoint()) else {
                return Err(Error::NotPointed);
            };
            if self.image_of(a) != &SimplexRef::nondeg(b) {
                return Err(Error::MapNotPointed);
            }
        }
        Ok(())
    }

    /// Composite `g ∘ self`.
    pub fn then(&self, g: &SMap) -> Result<SMap, Error> {
        if self.codomain.as_ref() != g.domain.as_ref() {
            return Err(Error::SpaceMismatch { context: "composition" });
        }
        let images = (0..=self.domain.top_dim())
            .map(|dim| self.domain.ids(dim).map(|id| g.eval(self.image_of(id))).collect())
            .collect();
        Ok(SMap {
            domain: self.domain.clone(),
            codomain: g.codomain.clone(),
            images,
            pointed: self.pointed && g.pointed,
        })
    }

    /// Same nondegenerate image table?
    pub fn same_images(&self, other: &SMap) -> bool {
        self.images == other.images
    }

    pub fn is_identity_table(&self) -> bool {
        self.domain.as_ref() == self.codomain.as_ref()
            && (0..=self.domain.top_dim()).all(|dim| {
                self.domain.ids(dim).all(|id| self.image_of(id) == &SimplexRef::nondeg(id))
            })
    }

    /// Degreewise injectivity on all simplices, degenerate included, up to the
    /// domain's top dimension (injectivity above is then automatic).
    pub fn is_mono(&self) -> bool {
        for n in 0..=self.domain.top_dim() {
            let refs = self.domain.all_refs(n);
            let mut seen: HashMap<SimplexRef, ()> = HashMap::with_capacity(refs.len());
            for r in refs {
                if seen.insert(self.eval(&r), ()).is_some() {
                    return false;
                }
            }
        }
        true
    }

    /// Degreewise bijectivity (an isomorphism of simplicial sets when valid).
    pub fn is_iso(&self) -> bool {
        if !self.is_mono() {
            return false;
        }
        (0..=self.domain.top_dim().max(self.codomain.top_dim()))
            .all(|n| self.domain.count_all(n) == self.codomain.count_all(n))
    }

    /// Flag this map pointed after checking basepoints.
    pub fn into_pointed(mut self) -> Result<SMap, Error> {
        self.pointed = true;
        self.validate()?;
        Ok(self)
    }

    /// Swap in a domain with the same table (typically a re-pointed copy).
    pub fn repoint_domain(&self, domain: Arc<Space>) -> Result<SMap, Error> {
        if !domain.same_table(self.domain()) {
            return Err(Error::SpaceMismatch { context: "repoint domain table" });
        }
        Ok(SMap { domain, ..self.clone() })
    }

    /// Swap in a codomain with the same table.
    pub fn repoint_codomain(&self, codomain: Arc<Space>) -> Result<SMap, Error> {
        if !codomain.same_table(self.codomain()) {
            return Err(Error::SpaceMismatch { context: "repoint codomain table" });
        }
        Ok(SMap { codomain, ..self.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::space::{standard, Standard};

    #[test]
    fn identity_validates() {
        let s1 = standard(Standard::Sphere(1)).unwrap();
        let id = SMap::identity(s1);
        id.validate().unwrap();
        assert!(id.is_mono());
        assert!(id.is_iso());
    }

    #[test]
    fn collapse_not_mono() {
        let s1 = standard(Standard::Sphere(1)).unwrap();
        let pt = standard(Standard::Point).unwrap();
        let v = SimplexId { dim: 0, idx: 0 };
        let f = SMap::from_fn(s1, pt, false, |id| {
            Ok(SimplexRef { base: v, word: crate::sset::word::Word::vertex_to_dim(id.dim) })
        })
        .unwrap();
        assert!(!f.is_mono());
    }

    #[test]
    fn boundary_inclusion_mono() {
        let b = standard(Standard::Boundary(2)).unwrap();
        let d2 = standard(Standard::Simplex(2)).unwrap();
        // Tables are aligned: the first rows of Delta[2] list the same subsets.
        let inc = SMap::from_fn(b.clone(), d2, false, |id| Ok(SimplexRef::nondeg(id))).unwrap();
        assert!(inc.is_mono());
        assert!(!inc.is_iso());
    }

    #[test]
    fn bad_map_rejected() {
        let s1 = standard(Standard::Sphere(1)).unwrap();
        let d1 = standard(Standard::Simplex(1)).unwrap();
        // Send the loop of S^1 to the edge of Delta[1]: endpoints differ, so
        // face commutation must fail.
        let err = SMap::from_fn(s1, d1, false, |id| {
            Ok(SimplexRef::nondeg(SimplexId { dim: id.dim, idx: 0 }))
        });
        assert!(err.is_err());
    }
}
