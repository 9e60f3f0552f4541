//! Edge-path group presentations of connected simplicial sets.

use std::sync::Arc;

use crate::error::Error;
use crate::homology::{smith, AbGroup, IntMat};
use crate::sset::{SimplexId, Space};

/// A finite group presentation. Relator letters are (generator, exponent).
#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<(usize, i8)>>,
}

impl Presentation {
    /// Abelianization as a finitely generated abelian group, via the Smith
    /// normal form of the exponent matrix.
    pub fn abelianization(&self) -> AbGroup {
        let g = self.generators.len();
        let r = self.relators.len();
        let mut m = IntMat::zero(g, r);
        for (j, rel) in self.relators.iter().enumerate() {
            for (gen, exp) in rel {
                m.add_to(*gen, j, &num_bigint::BigInt::from(*exp as i64));
            }
        }
        let s = smith(&m);
        let torsion = s
            .factors
            .iter()
            .filter(|f| **f > num_bigint::BigInt::from(1))
            .cloned()
            .collect::<Vec<_>>();
        AbGroup { rank: g - s.rank, torsion }
    }
}

/// Spanning-tree data for the edge-path presentation: which nondegenerate
/// edges are tree edges, and the generator index of each non-tree edge.
pub struct EdgePathData {
    pub presentation: Presentation,
    pub tree_edge: Vec<bool>,
    pub generator_of_edge: Vec<Option<usize>>,
}

/// Edge-path presentation of the fundamental group at a basepoint vertex.
/// The spanning tree is grown by breadth-first search from the basepoint,
/// scanning edges in table order, so the presentation is reproducible.
pub fn fundamental_group(x: &Arc<Space>, basepoint: SimplexId) -> Result<EdgePathData, Error> {
    if !x.is_connected() {
        return Err(Error::Disconnected);
    }
    if basepoint.dim != 0 || !x.contains(basepoint) {
        return Err(Error::BadBasepoint);
    }
    let nv = x.rank(0);
    let ne = x.rank(1);
    let endpoints: Vec<(usize, usize)> = (0..ne)
        .map(|i| {
            let rec = x.record(SimplexId { dim: 1, idx: i });
            // d_1 is the initial vertex, d_0 the final one.
            (rec.faces[1].base.idx, rec.faces[0].base.idx)
        })
        .collect();
    let mut tree_edge = vec![false; ne];
    let mut visited = vec![false; nv];
    visited[basepoint.idx] = true;
    let mut queue = std::collections::VecDeque::from([basepoint.idx]);
    while let Some(v) = queue.pop_front() {
        for (i, &(a, b)) in endpoints.iter().enumerate() {
            let other = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !visited[other] {
                visited[other] = true;
                tree_edge[i] = true;
                queue.push_back(other);
            }
        }
    }
    let mut generator_of_edge = vec![None; ne];
    let mut generators = Vec::new();
    for i in 0..ne {
        if !tree_edge[i] {
            generator_of_edge[i] = Some(generators.len());
            generators.push(x.name(SimplexId { dim: 1, idx: i }).to_string());
        }
    }
    // One relator per nondegenerate 2-simplex: g(d2) g(d0) g(d1)^{-1}, with
    // tree and degenerate edges contributing nothing.
    let letter = |f: &crate::sset::SimplexRef, exp: i8| -> Option<(usize, i8)> {
        if !f.word.is_empty() {
            return None;
        }
        generator_of_edge[f.base.idx].map(|g| (g, exp))
    };
    let mut relators = Vec::new();
    for t in 0..x.rank(2) {
        let rec = x.record(SimplexId { dim: 2, idx: t });
        let mut word = Vec::new();
        word.extend(letter(&rec.faces[2], 1));
        word.extend(letter(&rec.faces[0], 1));
        word.extend(letter(&rec.faces[1], -1));
        relators.push(word);
    }
    Ok(EdgePathData {
        presentation: Presentation { generators, relators },
        tree_edge,
        generator_of_edge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::space_homology;
    use crate::sset::{projective_plane, standard, Standard};

    #[test]
    fn simplex_is_simply_connected() {
        for n in 1..=3 {
            let d = standard(Standard::Simplex(n)).unwrap();
            let ep = fundamental_group(&d, SimplexId { dim: 0, idx: 0 }).unwrap();
            // All presentations abelianize to zero.
            assert_eq!(ep.presentation.abelianization(), AbGroup::default());
        }
    }

    #[test]
    fn circle_is_free_on_one() {
        let s1 = standard(Standard::Sphere(1)).unwrap();
        let ep = fundamental_group(&s1, SimplexId { dim: 0, idx: 0 }).unwrap();
        assert_eq!(ep.presentation.generators.len(), 1);
        assert!(ep.presentation.relators.iter().all(|r| r.is_empty()));
        assert_eq!(ep.presentation.abelianization(), AbGroup::free(1));
    }

    #[test]
    fn projective_plane_abelianization_matches_h1() {
        let rp2 = projective_plane().unwrap();
        let ep = fundamental_group(&rp2, SimplexId { dim: 0, idx: 0 }).unwrap();
        let ab = ep.presentation.abelianization();
        let h1 = space_homology(&rp2).group(1);
        assert_eq!(ab, h1);
        assert_eq!(ab.torsion, vec![num_bigint::BigInt::from(2)]);
    }

    #[test]
    fn disconnected_rejected() {
        let two = standard(Standard::Discrete(2)).unwrap();
        assert!(fundamental_group(&two, SimplexId { dim: 0, idx: 0 }).is_err());
    }
}
