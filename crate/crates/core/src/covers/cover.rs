//! Universal covers of connected simplicial sets with finite fundamental
//! group, realized as twisted cartesian products along the edge-class
//! cocycle, plus the twisted-homology equivalence predicate.

use std::sync::Arc;

use crate::comodule::{pullback_comod, pullback_comod_map, ComodMap};
use crate::covers::coset::{coset_enumeration, MulTable};
use crate::covers::presentation::{fundamental_group, EdgePathData};
use crate::error::Error;
use crate::homology::{is_hz_equivalence, HzCertificate};
use crate::retractive::{pullback_ret, pullback_ret_map, RetMap};
use crate::sset::{SMap, SimplexId, SimplexRef, Space, SpaceBuilder};

/// A universal cover: the total space, the covering projection, the deck
/// group table, and the edge-class function that twists the zeroth face.
pub struct CoverData {
    pub base: Arc<Space>,
    pub total: Arc<Space>,
    pub projection: SMap,
    pub table: MulTable,
    pub edge_path: EdgePathData,
    /// Group element of each nondegenerate edge of the base.
    pub edge_class: Vec<usize>,
}

impl CoverData {
    pub fn order(&self) -> usize {
        self.table.order
    }

    fn lift_id(&self, x: SimplexId, g: usize) -> SimplexId {
        SimplexId { dim: x.dim, idx: x.idx * self.table.order + g }
    }

    /// Group element of an arbitrary edge reference (degenerate edges are
    /// trivial).
    pub fn class_of_edge(&self, e: &SimplexRef) -> usize {
        if e.word.is_empty() {
            self.edge_class[e.base.idx]
        } else {
            self.table.identity()
        }
    }

    /// The leading edge `d_2 d_3 ... d_n` of a simplex reference.
    pub fn leading_edge(&self, s: &SimplexRef) -> Result<SimplexRef, Error> {
        let mut cur = s.clone();
        while cur.dim() > 1 {
            let top = cur.dim() as u32;
            cur = self.base.face(top, &cur)?;
        }
        Ok(cur)
    }

    /// Deck transformation by left multiplication with a group element.
    pub fn deck(&self, h: usize) -> Result<SMap, Error> {
        let order = self.table.order;
        SMap::from_fn(self.total.clone(), self.total.clone(), false, |id| {
            let (x_idx, g) = (id.idx / order, id.idx % order);
            Ok(SimplexRef::nondeg(SimplexId {
                dim: id.dim,
                idx: x_idx * order + self.table.product(h, g),
            }))
        })
    }

    /// Check every covering-space invariant; returns the list of named checks.
    pub fn verify(&self, coset_bound: usize) -> Result<Vec<(&'static str, bool)>, Error> {
        let mut out = Vec::new();
        let order = self.order();
        // Fiber sizes: |G| lifts of every simplex, in every degree.
        let mut fibers_ok = true;
        for dim in 0..=self.base.top_dim() {
            if self.total.rank(dim) != order * self.base.rank(dim) {
                fibers_ok = false;
            }
        }
        out.push(("fiber size equals group order", fibers_ok));
        // Unique lifts through the zeroth vertex.
        let mut lifts_ok = true;
        for dim in 0..=self.base.top_dim() {
            for xid in self.base.ids(dim) {
                for g in 0..order {
                    let lift = SimplexRef::nondeg(self.lift_id(xid, g));
                    let v = self.total.vertex_of(&lift, 0)?;
                    // The zeroth vertex determines the lift.
                    for h in 0..order {
                        if h != g {
                            let other = SimplexRef::nondeg(self.lift_id(xid, h));
                            if self.total.vertex_of(&other, 0)? == v {
                                lifts_ok = false;
                            }
                        }
                    }
                }
            }
        }
        out.push(("lifts determined by vertex lifts", lifts_ok));
        out.push(("total space connected", self.total.is_connected()));
        // Simply connected: edge-path group enumerates to the trivial group.
        let bp = SimplexId { dim: 0, idx: 0 };
        let ep = fundamental_group(&self.total, bp)?;
        let simply = match coset_enumeration(&ep.presentation, coset_bound) {
            Ok(t) => t.order == 1,
            Err(_) => false,
        };
        out.push(("total space simply connected", simply));
        // Deck action: simplicial automorphisms over the base, free and
        // transitive on fibers.
        let mut deck_ok = true;
        for h in 0..order {
            let d = self.deck(h)?;
            if !d.is_iso() || !d.then(&self.projection)?.same_images(&self.projection) {
                deck_ok = false;
            }
        }
        for xid in self.base.ids(0) {
            for g in 0..order {
                // Transitivity and freeness on the fiber over xid.
                let seen: std::collections::HashSet<usize> =
                    (0..order).map(|h| self.table.product(h, g)).collect();
                if seen.len() != order {
                    deck_ok = false;
                }
                let _ = xid;
            }
        }
        out.push(("deck action free and transitive", deck_ok));
        // Cocycle law on every nondegenerate 2-simplex.
        let mut cocycle_ok = true;
        for t in self.base.ids(2) {
            let rec = self.base.record(t);
            let w01 = self.class_of_edge(&rec.faces[2]);
            let w12 = self.class_of_edge(&rec.faces[0]);
            let w02 = self.class_of_edge(&rec.faces[1]);
            if self.table.product(w01, w12) != w02 {
                cocycle_ok = false;
            }
        }
        out.push(("edge cocycle law", cocycle_ok));
        Ok(out)
    }
}

/// Build the universal cover of a connected space whose fundamental group
/// enumerates within `bound` cosets.
pub fn universal_cover(x: &Arc<Space>, bound: usize) -> Result<CoverData, Error> {
    let bp = SimplexId { dim: 0, idx: 0 };
    if x.rank(0) == 0 {
        return Err(Error::Validation("cannot cover the empty space".into()));
    }
    let edge_path = fundamental_group(x, bp)?;
    let table = coset_enumeration(&edge_path.presentation, bound)?;
    let order = table.order;
    let edge_class: Vec<usize> = (0..x.rank(1))
        .map(|i| match edge_path.generator_of_edge[i] {
            Some(g) => table.gen_elt[g],
            None => table.identity(),
        })
        .collect();
    let class_of = |e: &SimplexRef| -> usize {
        if e.word.is_empty() {
            edge_class[e.base.idx]
        } else {
            table.identity()
        }
    };
    let leading_edge = |s: SimplexId| -> Result<SimplexRef, Error> {
        let mut cur = SimplexRef::nondeg(s);
        while cur.dim() > 1 {
            let top = cur.dim() as u32;
            cur = x.face(top, &cur)?;
        }
        Ok(cur)
    };
    // Build the twisted product table. Faces other than the zeroth keep the
    // fiber coordinate; the zeroth multiplies the leading-edge class on the
    // right, so the simplicial identities reduce to the cocycle law and left
    // deck multiplication commutes with every face.
    let mut builder = SpaceBuilder::new();
    for dim in 0..=x.top_dim() {
        for xid in x.ids(dim) {
            let rec = x.record(xid);
            for g in 0..order {
                let name = format!("{}@{}", rec.name, g);
                let faces = if dim == 0 {
                    Vec::new()
                } else {
                    let lead = leading_edge(xid)?;
                    let twisted = table.product(g, class_of(&lead));
                    rec.faces
                        .iter()
                        .enumerate()
                        .map(|(i, f)| {
                            let fiber = if i == 0 { twisted } else { g };
                            SimplexRef {
                                base: SimplexId {
                                    dim: f.base.dim,
                                    idx: f.base.idx * order + fiber,
                                },
                                word: f.word.clone(),
                            }
                        })
                        .collect()
                };
                builder.add(dim, name, faces);
            }
        }
    }
    let total = builder.build()?;
    let projection = SMap::from_fn(total.clone(), x.clone(), false, |id| {
        Ok(SimplexRef::nondeg(SimplexId { dim: id.dim, idx: id.idx / order }))
    })?;
    Ok(CoverData { base: x.clone(), total, projection, table, edge_path, edge_class })
}

/// Twisted-homology verdict for a retractive map: pull back along the cover
/// and test integral homology there.
pub fn is_hq_equivalence_ret(f: &RetMap, cover: &CoverData) -> Result<HzCertificate, Error> {
    let src = pullback_ret(&cover.projection, &f.source)?;
    let dst = pullback_ret(&cover.projection, &f.target)?;
    let lifted = pullback_ret_map(f, &src, &dst)?;
    is_hz_equivalence(&lifted.map)
}

/// Twisted-homology verdict for a comodule map.
pub fn is_hq_equivalence_comod(f: &ComodMap, cover: &CoverData) -> Result<HzCertificate, Error> {
    let src = pullback_comod(&cover.projection, &f.source)?;
    let dst = pullback_comod(&cover.projection, &f.target)?;
    let lifted = pullback_comod_map(f, &src, &dst)?;
    is_hz_equivalence(&lifted.map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{space_homology, AbGroup};
    use crate::retractive::{ret_functor, RetractiveSpace};
    use crate::sset::{projective_plane, standard, Standard};

    #[test]
    fn simplex_cover_is_identity() {
        let d2 = standard(Standard::Simplex(2)).unwrap();
        let c = universal_cover(&d2, 1000).unwrap();
        assert_eq!(c.order(), 1);
        assert!(c.projection.is_iso());
        for (name, ok) in c.verify(1000).unwrap() {
            assert!(ok, "{name}");
        }
    }

    #[test]
    fn circle_cover_exceeds() {
        let s1 = standard(Standard::Sphere(1)).unwrap();
        assert!(matches!(universal_cover(&s1, 200), Err(Error::Exceeded { .. })));
    }

    #[test]
    fn projective_plane_cover_is_a_sphere() {
        let rp2 = projective_plane().unwrap();
        let c = universal_cover(&rp2, 10_000).unwrap();
        assert_eq!(c.order(), 2);
        assert_eq!(c.total.counts(), vec![12, 30, 20]);
        let h = space_homology(&c.total);
        assert_eq!(h.groups, vec![AbGroup::free(1), AbGroup::default(), AbGroup::free(1)]);
        for (name, ok) in c.verify(10_000).unwrap() {
            assert!(ok, "cover invariant failed: {name}");
        }
    }

    #[test]
    fn pullback_multiplies_counts() {
        // |(B x_X X~)_n| = |B_n| * |G| for retractive spaces over RP^2.
        let rp2 = projective_plane().unwrap();
        let cover = universal_cover(&rp2, 10_000).unwrap();
        let (obj, _) = ret_functor(&standard(Standard::Sphere(0)).unwrap(), &rp2).unwrap();
        let (lifted, _) = pullback_ret(&cover.projection, &obj).unwrap();
        for n in 0..=obj.total.top_dim() {
            assert_eq!(lifted.total.count_all(n), obj.total.count_all(n) * cover.order());
        }
    }

    #[test]
    fn hq_equivalence_on_identity_over_rp2() {
        let rp2 = projective_plane().unwrap();
        let cover = universal_cover(&rp2, 10_000).unwrap();
        let z = RetractiveSpace::zero(rp2.clone());
        let idm = RetMap::identity(&z);
        let cert = is_hq_equivalence_ret(&idm, &cover).unwrap();
        assert!(cert.pass);
    }

    #[test]
    fn hq_matches_hz_over_simply_connected() {
        let d2 = standard(Standard::Simplex(2)).unwrap();
        let cover = universal_cover(&d2, 1000).unwrap();
        let (obj, _) = ret_functor(&standard(Standard::Sphere(1)).unwrap(), &d2).unwrap();
        let z = RetractiveSpace::zero(d2.clone());
        let fold = RetMap::new(obj.clone(), z.clone(), obj.retr.clone()).unwrap();
        let hz = is_hz_equivalence(&fold.map).unwrap();
        let hq = is_hq_equivalence_ret(&fold, &cover).unwrap();
        assert_eq!(hz.pass, hq.pass);
    }

    #[test]
    fn torsion_detection_differs_over_rp2() {
        // The fold Ret_RP2(S^0) -> zero is not an HZ-equivalence (H_0 ranks
        // differ), and its lift is not one either.
        let rp2 = projective_plane().unwrap();
        let cover = universal_cover(&rp2, 10_000).unwrap();
        let (obj, _) = ret_functor(&standard(Standard::Sphere(0)).unwrap(), &rp2).unwrap();
        let z = RetractiveSpace::zero(rp2.clone());
        let fold = RetMap::new(obj.clone(), z.clone(), obj.retr.clone()).unwrap();
        let hz = is_hz_equivalence(&fold.map).unwrap();
        let hq = is_hq_equivalence_ret(&fold, &cover).unwrap();
        assert!(!hz.pass);
        assert!(!hq.pass);
    }

    #[test]
    fn identity_on_base_vs_nontrivial_element() {
        let rp2 = projective_plane().unwrap();
        let c = universal_cover(&rp2, 10_000).unwrap();
        let d1 = c.deck(1).unwrap();
        assert!(d1.is_iso());
        // The nontrivial deck transformation is fixed-point free on vertices.
        for v in c.total.ids(0) {
            assert_ne!(d1.image_of(v), &SimplexRef::nondeg(v));
        }
    }
}
