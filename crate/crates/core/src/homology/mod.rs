//! Exact integral homology via Smith normal form: the verification oracle for
//! every homology-equivalence claim in the library.

pub mod chain;
pub mod matrix;
pub mod smith;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use chain::{
    chain_map, compose_chain_maps, identity_chain_map, mapping_cone, normalized_chains, ChainComplex,
    ChainMap,
};
pub use matrix::IntMat;
pub use smith::{rank, smith, Smith};

use crate::error::Error;
use crate::sset::{SMap, Space};

/// A finitely generated abelian group: free rank plus invariant factors
/// (each > 1, each dividing the next).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AbGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbGroup {
    pub fn free(rank: usize) -> Self {
        AbGroup { rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Multiset of prime-power summands, for direct-sum comparisons.
    pub fn prime_powers(&self) -> BTreeMap<(BigInt, u32), usize> {
        let mut out = BTreeMap::new();
        for t in &self.torsion {
            let mut n = t.clone();
            let mut p = BigInt::from(2);
            while &p * &p <= n {
                if (&n % &p).is_zero() {
                    let mut e = 0u32;
                    while (&n % &p).is_zero() {
                        n /= &p;
                        e += 1;
                    }
                    *out.entry((p.clone(), e)).or_insert(0) += 1;
                }
                p += 1;
            }
            if n > BigInt::one() {
                *out.entry((n, 1)).or_insert(0) += 1;
            }
        }
        out
    }

    /// Isomorphic as abstract groups to the direct sum of `a` and `b`?
    pub fn is_direct_sum_of(&self, a: &AbGroup, b: &AbGroup) -> bool {
        if self.rank != a.rank + b.rank {
            return false;
        }
        let mut sum = a.prime_powers();
        for (k, v) in b.prime_powers() {
            *sum.entry(k).or_insert(0) += v;
        }
        self.prime_powers() == sum
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Homology groups per degree. Trailing trivial groups are trimmed so that
/// summaries compare degreewise.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HomologySummary {
    pub groups: Vec<AbGroup>,
}

impl HomologySummary {
    pub fn group(&self, n: usize) -> AbGroup {
        self.groups.get(n).cloned().unwrap_or_default()
    }

    pub fn is_trivial(&self) -> bool {
        self.groups.iter().all(|g| g.is_trivial())
    }

    fn trim(mut self) -> Self {
        while self.groups.last().is_some_and(|g| g.is_trivial()) {
            self.groups.pop();
        }
        self
    }
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.groups.iter().enumerate().map(|(n, g)| format!("H{n}={g}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// `H_n = ker ∂_n / im ∂_{n+1}`, computed degreewise by Smith normal form.
pub fn homology(c: &ChainComplex) -> HomologySummary {
    let top = c.top();
    let mut groups = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let dn = &c.boundary[n];
        let rank_dn = smith(dn).rank;
        let (rank_dn1, torsion) = if n + 1 <= top {
            let s = smith(&c.boundary[n + 1]);
            let t = s
                .factors
                .iter()
                .filter(|f| !f.is_one())
                .cloned()
                .collect::<Vec<_>>();
            (s.rank, t)
        } else {
            (0, Vec::new())
        };
        let rank = c.rank(n) - rank_dn - rank_dn1;
        groups.push(AbGroup { rank, torsion });
    }
    HomologySummary { groups }.trim()
}

/// Unreduced homology of a space.
pub fn space_homology(x: &Space) -> HomologySummary {
    homology(&normalized_chains(x, false))
}

/// Reduced homology of a (nonempty) space.
pub fn reduced_homology(x: &Space) -> HomologySummary {
    homology(&normalized_chains(x, true))
}

/// Degreewise equality of (rank, invariant factors).
pub fn groups_isomorphic(a: &HomologySummary, b: &HomologySummary) -> bool {
    a == b
}

/// Certificate for a homology-equivalence verdict: the homology of the
/// mapping cone of the augmented chain map. The map is an integral homology
/// equivalence exactly when the cone is acyclic; a nonzero group in cone
/// degree `n+1` witnesses a defect around `H_n`.
#[derive(Clone, Debug)]
pub struct HzCertificate {
    pub pass: bool,
    pub cone_homology: HomologySummary,
}

impl fmt::Display for HzCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            write!(f, "HZ-equivalence (cone acyclic)")
        } else {
            write!(f, "not an HZ-equivalence; cone homology: {}", self.cone_homology)
        }
    }
}

/// Decide whether a simplicial map induces an isomorphism on integral
/// homology, for any (hence every) choice of basepoint.
pub fn is_hz_equivalence(f: &SMap) -> Result<HzCertificate, Error> {
    let phi = chain_map(f, true)?;
    let cone = mapping_cone(&phi);
    let cone_homology = homology(&cone);
    Ok(HzCertificate { pass: cone_homology.is_trivial(), cone_homology })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{
        projective_plane, pullback, smash, standard, Product, SMap, SimplexId, SimplexRef,
        Standard, Subcomplex,
    };

    fn free(rank: usize) -> AbGroup {
        AbGroup::free(rank)
    }

    #[test]
    fn sphere_homology() {
        let s2 = standard(Standard::Sphere(2)).unwrap();
        let h = reduced_homology(&s2);
        assert_eq!(h.groups, vec![free(0), free(0), free(1)]);
    }

    #[test]
    fn torus_homology() {
        let s1 = standard(Standard::Sphere(1)).unwrap();
        let t = Product::new(&s1, &s1).unwrap();
        let h = space_homology(&t.space);
        assert_eq!(h.groups, vec![free(1), free(2), free(1)]);
    }

    #[test]
    fn projective_plane_homology() {
        let rp2 = projective_plane().unwrap();
        let h = space_homology(&rp2);
        assert_eq!(
            h.groups,
            vec![free(1), AbGroup { rank: 0, torsion: vec![BigInt::from(2)] }]
        );
    }

    #[test]
    fn smash_of_circles_is_a_2_sphere() {
        let s1 = standard(Standard::Sphere(1)).unwrap();
        let sm = smash(&s1, &s1).unwrap();
        let h = reduced_homology(&sm.space);
        assert_eq!(h.groups, vec![free(0), free(0), free(1)]);
    }

    #[test]
    fn point_homology() {
        let pt = standard(Standard::Point).unwrap();
        assert_eq!(space_homology(&pt).groups, vec![free(1)]);
        assert!(reduced_homology(&pt).is_trivial());
    }

    #[test]
    fn cone_of_identity_acyclic() {
        let s1 = standard(Standard::Sphere(1)).unwrap();
        let cert = is_hz_equivalence(&SMap::identity(s1)).unwrap();
        assert!(cert.pass);
    }

    #[test]
    fn collapse_circle_not_equivalence() {
        let s1 = standard(Standard::Sphere(1)).unwrap();
        let pt = standard(Standard::Point).unwrap();
        let f = SMap::constant(s1, pt, SimplexId { dim: 0, idx: 0 }).unwrap();
        let cert = is_hz_equivalence(&f).unwrap();
        assert!(!cert.pass);
        // The H_1 defect shows up one degree up in the cone.
        assert_eq!(cert.cone_homology.group(2), free(1));
        assert!(cert.cone_homology.group(0).is_trivial());
        assert!(cert.cone_homology.group(1).is_trivial());
    }

    #[test]
    fn cone_of_boundary_inclusion_is_relative_homology() {
        let d2 = standard(Standard::Simplex(2)).unwrap();
        let b = Subcomplex::new(&d2, |id| id.dim < 2).unwrap();
        let phi = chain_map(&b.incl, false).unwrap();
        let cone = mapping_cone(&phi);
        let h = homology(&cone);
        assert_eq!(h.groups, vec![free(0), free(0), free(1)]);
    }

    #[test]
    fn cone_of_zero_map_augmented() {
        // Augmented cone of S^1 -> point: homology Z in degree 2 only,
        // cross-checked by hand on the long exact sequence.
        let s1 = standard(Standard::Sphere(1)).unwrap();
        let pt = standard(Standard::Point).unwrap();
        let f = SMap::constant(s1, pt, SimplexId { dim: 0, idx: 0 }).unwrap();
        let phi = chain_map(&f, true).unwrap();
        let cone = mapping_cone(&phi);
        cone.validate().unwrap();
        assert_eq!(homology(&cone).groups, vec![free(0), free(0), free(1)]);
    }

    #[test]
    fn functoriality_of_chain_maps() {
        // chains(g ∘ f) = chains(g) · chains(f) on a composite.
        let d2 = standard(Standard::Simplex(2)).unwrap();
        let b = Subcomplex::new(&d2, |id| id.dim < 2).unwrap();
        let pt = standard(Standard::Point).unwrap();
        let g = SMap::constant(d2.clone(), pt, SimplexId { dim: 0, idx: 0 }).unwrap();
        let gf = b.incl.then(&g).unwrap();
        let lhs = chain_map(&gf, true).unwrap();
        let rhs = compose_chain_maps(
            &chain_map(&b.incl, true).unwrap(),
            &chain_map(&g, true).unwrap(),
        );
        for n in 0..=lhs.source.top() {
            assert_eq!(lhs.mats[n], rhs.mats[n]);
        }
    }

    #[test]
    fn double_cover_degree_two_on_h1() {
        // The connected double cover of S^1 (two vertices, two edges) maps to
        // S^1 by winding; H_1 image is multiplication by 2.
        use crate::sset::SpaceBuilder;
        let mut builder = SpaceBuilder::new();
        let a = builder.vertex("a");
        let b = builder.vertex("b");
        builder.add(1, "e0", vec![SimplexRef::nondeg(b), SimplexRef::nondeg(a)]);
        builder.add(1, "e1", vec![SimplexRef::nondeg(a), SimplexRef::nondeg(b)]);
        let cover = builder.build().unwrap();
        let s1 = standard(Standard::Sphere(1)).unwrap();
        let v = SimplexId { dim: 0, idx: 0 };
        let e = SimplexId { dim: 1, idx: 0 };
        let wind = SMap::from_fn(cover.clone(), s1, false, |id| {
            Ok(if id.dim == 0 { SimplexRef::nondeg(v) } else { SimplexRef::nondeg(e) })
        })
        .unwrap();
        let phi = chain_map(&wind, false).unwrap();
        // H_1 of the cover is generated by e0 + e1, mapping to 2e.
        let m = &phi.mats[1];
        let sum: BigInt = m.get(0, 0) + m.get(0, 1);
        assert_eq!(sum, BigInt::from(2));
        let cert = is_hz_equivalence(&wind).unwrap();
        assert!(!cert.pass);
    }

    #[test]
    fn homotopy_invariance_smoke() {
        // X and X x Delta[1] have the same homology.
        let d1 = standard(Standard::Simplex(1)).unwrap();
        for x in [
            standard(Standard::Sphere(1)).unwrap(),
            standard(Standard::Sphere(2)).unwrap(),
            projective_plane().unwrap(),
        ] {
            let cyl = Product::new(&x, &d1).unwrap();
            assert_eq!(space_homology(&x), space_homology(&cyl.space));
        }
    }

    #[test]
    fn disjoint_basepoint_reduced_matches_unreduced() {
        let rp2 = projective_plane().unwrap();
        let plus = crate::sset::Plus::new(&rp2).unwrap();
        assert_eq!(reduced_homology(&plus.space), space_homology(&rp2));
    }

    #[test]
    fn direct_sum_comparison() {
        let z4 = AbGroup { rank: 0, torsion: vec![BigInt::from(4)] };
        let z2z2 = AbGroup { rank: 0, torsion: vec![BigInt::from(2), BigInt::from(2)] };
        assert_ne!(z4, z2z2);
        assert!(!z4.is_direct_sum_of(&z2z2, &AbGroup::default()));
        // Z/6 = Z/2 + Z/3 as a direct sum.
        let z6 = AbGroup { rank: 0, torsion: vec![BigInt::from(6)] };
        let z2 = AbGroup { rank: 0, torsion: vec![BigInt::from(2)] };
        let z3 = AbGroup { rank: 0, torsion: vec![BigInt::from(3)] };
        assert!(z6.is_direct_sum_of(&z2, &z3));
    }

    #[test]
    fn pullback_keeps_homology_of_product_fiber() {
        // Fiber product over the point is the product.
        let s1 = standard(Standard::Sphere(1)).unwrap();
        let pt = standard(Standard::Point).unwrap();
        let c = SMap::constant(s1.clone(), pt.clone(), SimplexId { dim: 0, idx: 0 }).unwrap();
        let pb = pullback(&c, &c).unwrap();
        let h = space_homology(&pb.space);
        assert_eq!(h.groups, vec![free(1), free(2), free(1)]);
    }
}
