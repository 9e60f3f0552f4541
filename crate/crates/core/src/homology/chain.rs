//! Normalized chain complexes of finite simplicial sets, chain maps, and
//! mapping cones.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Error;
use crate::homology::matrix::IntMat;
use crate::sset::{SMap, SimplexRef, Space};

/// A bounded nonnegatively graded complex of free abelian groups.
/// `boundary[n]` maps degree `n` to degree `n-1`; `boundary[0]` is the
/// augmentation row when `augmented`, otherwise a `0 x rank` matrix.
#[derive(Clone)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    pub boundary: Vec<IntMat>,
    pub augmented: bool,
}

impl ChainComplex {
    pub fn top(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    pub fn boundary_or_zero(&self, n: usize) -> IntMat {
        match self.boundary.get(n) {
            Some(m) => m.clone(),
            None => IntMat::zero(self.rank(n.wrapping_sub(1).min(self.top())), 0),
        }
    }

    /// `∂∂ = 0`, including through the augmentation row.
    pub fn validate(&self) -> Result<(), Error> {
        for n in 1..self.boundary.len() {
            let comp = self.boundary[n - 1].mul(&self.boundary[n]);
            if !comp.is_zero() {
                return Err(Error::Validation(format!(
                    "boundary squared nonzero in degree {n}"
                )));
            }
        }
        Ok(())
    }
}

/// Normalized chains: basis the nondegenerate simplices, degenerate faces
/// contributing zero.
pub fn normalized_chains(x: &Space, augmented: bool) -> ChainComplex {
    let top = x.top_dim();
    let ranks: Vec<usize> = (0..=top).map(|n| x.rank(n)).collect();
    let mut boundary = Vec::with_capacity(top + 1);
    let aug_rows = if augmented { 1 } else { 0 };
    let mut b0 = IntMat::zero(aug_rows, ranks[0]);
    if augmented {
        for j in 0..ranks[0] {
            b0.set(0, j, BigInt::one());
        }
    }
    boundary.push(b0);
    for n in 1..=top {
        let mut m = IntMat::zero(ranks[n - 1], ranks[n]);
        for id in x.ids(n) {
            let rec = x.record(id);
            for (i, f) in rec.faces.iter().enumerate() {
                if f.word.is_empty() {
                    let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    m.add_to(f.base.idx, id.idx, &sign);
                }
            }
        }
        boundary.push(m);
    }
    let c = ChainComplex { ranks, boundary, augmented };
    debug_assert!(c.validate().is_ok());
    c
}

/// A chain map: one matrix per degree, commuting with the boundaries.
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub mats: Vec<IntMat>,
}

impl ChainMap {
    pub fn validate(&self) -> Result<(), Error> {
        let top = self.source.top();
        for n in 0..=top {
            let f_n = &self.mats[n];
            // target.boundary[n] * f_n = f_{n-1} * source.boundary[n]
            let lhs = self.target.boundary_at(n, f_n.rows).mul(f_n);
            let rhs = if n == 0 {
                // Against the augmentation (or the empty matrix).
                self.source.boundary[0].clone()
            } else {
                self.mats[n - 1].mul(&self.source.boundary[n])
            };
            let rhs = if n == 0 {
                if self.source.augmented {
                    rhs
                } else {
                    IntMat::zero(0, self.source.rank(0))
                }
            } else {
                rhs
            };
            if lhs != rhs {
                return Err(Error::ChainMapMismatch { degree: n });
            }
        }
        Ok(())
    }
}

impl ChainComplex {
    /// boundary out of degree n, supplying a zero matrix of the right shape
    /// when the degree is above the top.
    fn boundary_at(&self, n: usize, cols: usize) -> IntMat {
        if n < self.boundary.len() {
            self.boundary[n].clone()
        } else {
            let rows = if n == 0 { 0 } else { self.rank(n - 1) };
            IntMat::zero(rows, cols)
        }
    }
}

/// Chains of a simplicial map: image when nondegenerate, zero otherwise.
pub fn chain_map(f: &SMap, augmented: bool) -> Result<ChainMap, Error> {
    let source = normalized_chains(f.domain(), augmented);
    let target = normalized_chains(f.codomain(), augmented);
    let top = source.top();
    let mut mats = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut m = IntMat::zero(target.rank(n), source.rank(n));
        for id in f.domain().ids(n) {
            let img: &SimplexRef = f.image_of(id);
            if img.word.is_empty() {
                m.add_to(img.base.idx, id.idx, &BigInt::one());
            }
        }
        mats.push(m);
    }
    let cm = ChainMap { source, target, mats };
    cm.validate()?;
    Ok(cm)
}

/// Mapping cone: `cone_n = A_{n-1} ⊕ B_n` with `∂(a, b) = (−∂a, φa + ∂b)`.
/// For augmented complexes the implicit integers in degree −1 fold into
/// degree 0 (so `cone_0 = Z ⊕ B_0`) and the cone keeps an augmentation row;
/// the cone is then acyclic in every degree exactly when φ is a reduced
/// quasi-isomorphism.
pub fn mapping_cone(phi: &ChainMap) -> ChainComplex {
    let a = &phi.source;
    let b = &phi.target;
    let aug = a.augmented;
    assert_eq!(aug, b.augmented, "cone of mixed augmentation");
    let a_extra = if aug { 1 } else { 0 }; // rank of A_{-1}
    let top = (a.top() + 1).max(b.top());
    let rank_a = |n: isize| -> usize {
        if n == -1 {
            a_extra
        } else if n >= 0 {
            a.rank(n as usize)
        } else {
            0
        }
    };
    let ranks: Vec<usize> = (0..=top).map(|n| rank_a(n as isize - 1) + b.rank(n)).collect();
    let mut boundary = Vec::with_capacity(top + 1);
    // Degree 0 row: the cone's augmentation [id | ε_B] when augmented.
    let mut b0 = IntMat::zero(if aug { 1 } else { 0 }, ranks[0]);
    if aug {
        b0.set(0, 0, BigInt::one());
        for j in 0..b.rank(0) {
            b0.set(0, 1 + j, b.boundary[0].get(0, j).clone());
        }
    }
    boundary.push(b0);
    for n in 1..=top {
        let ra_top = rank_a(n as isize - 1); // A part of degree n
        let ra_bot = rank_a(n as isize - 2); // A part of degree n-1
        let rb_top = b.rank(n);
        let rb_bot = b.rank(n - 1);
        let mut m = IntMat::zero(ra_bot + rb_bot, ra_top + rb_top);
        // -∂_A block (degree n-1 of A into degree n-2 of A).
        if ra_top > 0 && ra_bot > 0 {
            let da = if n as isize - 1 == 0 {
                // into A_{-1}: the augmentation row of A
                a.boundary[0].clone()
            } else {
                a.boundary_at(n - 1, ra_top)
            };
            for i in 0..ra_bot {
                for j in 0..ra_top {
                    m.set(i, j, -da.get(i, j).clone());
                }
            }
        }
        // φ block (degree n-1 of A into degree n-1 of B).
        if ra_top > 0 && rb_bot > 0 {
            let f = if n as isize - 1 == -1 {
                unreachable!()
            } else {
                &phi.mats[n - 1]
            };
            for i in 0..rb_bot {
                for j in 0..ra_top {
                    m.set(ra_bot + i, j, f.get(i, j).clone());
                }
            }
        }
        // ∂_B block.
        if rb_top > 0 && rb_bot > 0 {
            let db = b.boundary_at(n, rb_top);
            for i in 0..rb_bot {
                for j in 0..rb_top {
                    m.set(ra_bot + i, ra_top + j, db.get(i, j).clone());
                }
            }
        }
        boundary.push(m);
    }
    let c = ChainComplex { ranks, boundary, augmented: aug };
    debug_assert!(c.validate().is_ok(), "cone boundary squared nonzero");
    c
}

/// Identity chain map on a complex.
pub fn identity_chain_map(c: &ChainComplex) -> ChainMap {
    let mats = c.ranks.iter().map(|&r| IntMat::identity(r)).collect();
    ChainMap { source: c.clone(), target: c.clone(), mats }
}

/// Compose chain maps degreewise (`g ∘ f`).
pub fn compose_chain_maps(f: &ChainMap, g: &ChainMap) -> ChainMap {
    let mats = (0..=f.source.top())
        .map(|n| {
            let fm = &f.mats[n];
            let gm = if n < g.mats.len() {
                g.mats[n].clone()
            } else {
                IntMat::zero(g.target.rank(n), fm.rows)
            };
            gm.mul(fm)
        })
        .collect();
    ChainMap { source: f.source.clone(), target: g.target.clone(), mats }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{standard, Standard};

    #[test]
    fn point_chains() {
        let pt = standard(Standard::Point).unwrap();
        let c = normalized_chains(&pt, false);
        assert_eq!(c.ranks, vec![1]);
        assert!(c.boundary[0].is_zero());
    }

    #[test]
    fn circle_boundary_vanishes() {
        let s1 = standard(Standard::Sphere(1)).unwrap();
        let c = normalized_chains(&s1, false);
        assert_eq!(c.ranks, vec![1, 1]);
        assert!(c.boundary[1].is_zero());
    }

    #[test]
    fn delta2_dd_zero() {
        let d2 = standard(Standard::Simplex(2)).unwrap();
        for aug in [false, true] {
            normalized_chains(&d2, aug).validate().unwrap();
        }
    }

    #[test]
    fn identity_chain_map_validates() {
        let s1 = standard(Standard::Sphere(1)).unwrap();
        let f = SMap::identity(s1.clone());
        let cm = chain_map(&f, true).unwrap();
        for m in &cm.mats {
            assert!(m.is_unimodular());
        }
    }
}
